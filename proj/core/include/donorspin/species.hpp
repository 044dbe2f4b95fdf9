#pragma once

#include <string>

namespace donorspin {

// Parameters of one donor species: electron spin 1/2 coupled to a host
// nucleus of spin I through an isotropic hyperfine constant.
struct SpeciesParams {
  std::string name;
  int two_I = 1;         // 2I; positive integer
  double hyperfine = 0;  // A, rad/s
  double delta = 0;      // ratio of nuclear to electronic gyromagnetic ratios
  double gamma_e = 0;    // electronic gyromagnetic ratio, rad/s per Tesla

  double spin() const { return 0.5 * two_I; }
  // Hilbert-space dimension (2I+1)(2s+1) with s = 1/2.
  int dim() const { return 2 * (two_I + 1); }

  // Throws std::invalid_argument if any constraint is violated.
  void validate() const;
};

// Builds a species from user-facing units (MHz, GHz/T). `nuclear_spin` accepts
// "9/2", "1/2" or a decimal like "4.5".
SpeciesParams make_species(const std::string& name, const std::string& nuclear_spin,
                           double a_mhz, double delta, double gamma_e_ghz_per_t);

// Si:Bi constants: A/2pi = 1475.4 MHz, I = 9/2, delta = 2.488e-4.
// gamma_e defaults to 2pi * 27.997 GHz/T (g ~ 2); override per species file
// when a sample-calibrated value is available.
SpeciesParams bismuth();

// Default electronic gyromagnetic ratio, rad/s per Tesla.
double default_gamma_e();

// Parses a half-integer spin string ("9/2", "4.5") into 2I.
int parse_two_i(const std::string& text);

// Loads a species from a JSON document with keys
// {name, I, A_MHz, delta, gamma_e_GHz_per_T}; gamma_e_GHz_per_T is optional.
SpeciesParams load_species_file(const std::string& path);
SpeciesParams load_species_json_text(const std::string& text);

}  // namespace donorspin
