#include "donorspin/species.hpp"

#include <cmath>
#include <fstream>
#include <sstream>
#include <stdexcept>

#include <json.hpp>

#include "donorspin/units.hpp"

namespace donorspin {

void SpeciesParams::validate() const {
  if (two_I < 1) throw std::invalid_argument("species '" + name + "': 2I must be a positive integer");
  if (!(hyperfine > 0)) throw std::invalid_argument("species '" + name + "': hyperfine A must be > 0");
  if (!(delta >= 0) || delta >= 1)
    throw std::invalid_argument("species '" + name + "': delta must satisfy 0 <= delta << 1");
  if (!(gamma_e > 0)) throw std::invalid_argument("species '" + name + "': gamma_e must be > 0");
}

double default_gamma_e() { return ghz_to_angular(27.997); }

int parse_two_i(const std::string& text) {
  const auto slash = text.find('/');
  try {
    if (slash != std::string::npos) {
      const long num = std::stol(text.substr(0, slash));
      const long den = std::stol(text.substr(slash + 1));
      if (den != 2) throw std::invalid_argument("");
      return static_cast<int>(num);
    }
    const double value = std::stod(text);
    const double doubled = 2.0 * value;
    const double rounded = std::round(doubled);
    if (std::abs(doubled - rounded) > 1e-9 || rounded < 1)
      throw std::invalid_argument("");
    return static_cast<int>(rounded);
  } catch (const std::exception&) {
    throw std::invalid_argument("invalid nuclear spin '" + text + "' (expected e.g. \"9/2\" or \"4.5\")");
  }
}

SpeciesParams make_species(const std::string& name, const std::string& nuclear_spin,
                           double a_mhz, double delta, double gamma_e_ghz_per_t) {
  SpeciesParams sp;
  sp.name = name;
  sp.two_I = parse_two_i(nuclear_spin);
  sp.hyperfine = mhz_to_angular(a_mhz);
  sp.delta = delta;
  sp.gamma_e = ghz_to_angular(gamma_e_ghz_per_t);
  sp.validate();
  return sp;
}

SpeciesParams bismuth() {
  return make_species("Bi", "9/2", 1475.4, 2.488e-4, 27.997);
}

SpeciesParams load_species_json_text(const std::string& text) {
  nlohmann::json j;
  try {
    j = nlohmann::json::parse(text);
  } catch (const std::exception& e) {
    throw std::invalid_argument(std::string("species file is not valid JSON: ") + e.what());
  }
  for (const char* key : {"name", "I", "A_MHz", "delta"})
    if (!j.contains(key)) throw std::invalid_argument(std::string("species file missing key '") + key + "'");

  const std::string spin = j["I"].is_string() ? j["I"].get<std::string>()
                                              : std::to_string(j["I"].get<double>());
  const double gamma = j.contains("gamma_e_GHz_per_T") ? j["gamma_e_GHz_per_T"].get<double>()
                                                       : 27.997;
  return make_species(j["name"].get<std::string>(), spin, j["A_MHz"].get<double>(),
                      j["delta"].get<double>(), gamma);
}

SpeciesParams load_species_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::invalid_argument("cannot open species file '" + path + "'");
  std::stringstream buf;
  buf << in.rdbuf();
  return load_species_json_text(buf.str());
}

}  // namespace donorspin
