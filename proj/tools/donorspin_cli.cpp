// Command-line front end: level diagrams, transition tables, working-point
// and refocusing-point searches, two-donor echo traces, and Monte-Carlo
// coherence decays, all emitted as bit-stable CSV.

#include <CLI11.hpp>
#include <json.hpp>

#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>

#include "donorspin/csv.hpp"
#include "donorspin/decoherence.hpp"
#include "donorspin/donor_spin.hpp"
#include "donorspin/echo_sim.hpp"
#include "donorspin/errors.hpp"
#include "donorspin/magic_fields.hpp"
#include "donorspin/transitions.hpp"
#include "donorspin/units.hpp"

using namespace donorspin;

namespace {

constexpr int kExitOk = 0;
constexpr int kExitError = 1;
constexpr int kExitUnknownTransition = 2;
constexpr int kExitNumeric = 3;

struct FieldGrid {
  double lo = 0, hi = 0;
  int n = 1;
};

FieldGrid parse_grid(const std::string& text) {
  FieldGrid g;
  const auto c1 = text.find(':');
  if (c1 == std::string::npos) {
    g.lo = g.hi = std::stod(text);
    g.n = 1;
    return g;
  }
  const auto c2 = text.find(':', c1 + 1);
  g.lo = std::stod(text.substr(0, c1));
  if (c2 == std::string::npos) {
    g.hi = std::stod(text.substr(c1 + 1));
    g.n = 2;
  } else {
    g.hi = std::stod(text.substr(c1 + 1, c2 - c1 - 1));
    g.n = std::stoi(text.substr(c2 + 1));
  }
  if (g.hi < g.lo || g.n < 1) throw CLI::ValidationError("range must be lo:hi:n with lo <= hi");
  return g;
}

// Shared per-subcommand state.
struct Common {
  std::string species_name = "Bi";
  std::string species_file;
  std::string config_path;
  std::string out_path;
  nlohmann::json config;

  SpeciesParams species() const {
    if (!species_file.empty()) return load_species_file(species_file);
    if (species_name == "Bi") return bismuth();
    throw std::invalid_argument("unknown species '" + species_name +
                                "' (built-in: Bi; use --species-file for others)");
  }
};

void add_common(CLI::App* cmd, Common& c) {
  cmd->add_option("--species", c.species_name, "Built-in species name (Bi)");
  cmd->add_option("--species-file", c.species_file, "JSON species parameter file");
  cmd->add_option("--config", c.config_path, "JSON config file; explicit flags win");
  cmd->add_option("-o,--out", c.out_path, "CSV output path (default: stdout)");
}

// Loads --config if present, then fills any option the user did not pass
// from the JSON key of the same name.
void merge_config(CLI::App* cmd, Common& c) {
  if (c.config_path.empty()) return;
  std::ifstream in(c.config_path);
  if (!in) throw std::invalid_argument("cannot open config file '" + c.config_path + "'");
  try {
    in >> c.config;
  } catch (const std::exception& e) {
    throw std::invalid_argument(std::string("config file is not valid JSON: ") + e.what());
  }
  for (const auto& [key, value] : c.config.items()) {
    const std::string flag = "--" + key;
    CLI::Option* opt = nullptr;
    try {
      opt = cmd->get_option(flag);
    } catch (const CLI::OptionNotFound&) {
      continue;  // unknown keys are allowed (shared config across subcommands)
    }
    if (opt->count() > 0) continue;  // flags win
    std::string text = value.is_string() ? value.get<std::string>() : value.dump();
    opt->add_result(text);
    opt->run_callback();
  }
}

// Presence check that runs after the config merge, so a value may come from
// either a flag or the config file.
void require_opt(CLI::App* cmd, const std::string& flag) {
  if (cmd->get_option(flag)->count() == 0)
    throw std::invalid_argument("missing required " + flag + " (flag or config key)");
}

std::ostream& open_output(const Common& c, std::ofstream& file) {
  if (c.out_path.empty()) return std::cout;
  file.open(c.out_path, std::ios::binary);  // LF endings regardless of platform
  if (!file) throw std::invalid_argument("cannot open output file '" + c.out_path + "'");
  return file;
}

std::vector<double> time_grid(double t_max, int steps) {
  if (!(t_max > 0) || steps < 2) throw std::invalid_argument("need t_max > 0 and steps >= 2");
  std::vector<double> t(steps);
  for (int k = 0; k < steps; ++k) t[k] = t_max * k / (steps - 1);
  t[0] = 0.0;
  return t;
}

// --- subcommands -----------------------------------------------------------

int run_levels(const Common& c, const std::string& range_text) {
  const auto sp = c.species();
  const FieldGrid g = parse_grid(range_text);

  std::ofstream file;
  std::ostream& os = open_output(c, file);
  CsvWriter w(os);
  std::vector<std::string> cols{"B0_T"};
  for (int i = 1; i <= sp.dim(); ++i) cols.push_back("E" + std::to_string(i) + "_MHz");
  w.header(cols);

  for (int k = 0; k < g.n; ++k) {
    const double b = g.n == 1 ? g.lo : g.lo + k * (g.hi - g.lo) / (g.n - 1);
    const auto levels = analytic_levels(sp, b);
    w.begin_row();
    w.field(b);
    for (const auto& s : levels) w.field(angular_to_mhz(s.energy));
    w.end_row();
  }

  std::cerr << sp.name << ": " << sp.dim() << " levels, " << g.n << " field point(s)\n";
  return kExitOk;
}

int run_transitions(const Common& c, const std::string& range_text) {
  const auto sp = c.species();
  const FieldGrid g = parse_grid(range_text);

  std::ofstream file;
  std::ostream& os = open_output(c, file);
  bool header = true;
  int allowed = 0, forbidden = 0, dark = 0;
  for (int k = 0; k < g.n; ++k) {
    const double b = g.n == 1 ? g.lo : g.lo + k * (g.hi - g.lo) / (g.n - 1);
    const auto es = eigensystem_numeric(sp, b);
    const auto ts = enumerate_transitions(es);
    write_transitions_csv(os, es, ts, header);
    header = false;
    for (const auto& t : ts) {
      if (t.cls == TransitionClass::allowed)
        ++allowed;
      else if (t.cls == TransitionClass::dark)
        ++dark;
      else
        ++forbidden;
    }
  }
  std::cerr << "transitions: " << allowed << " allowed, " << forbidden << " forbidden, " << dark
            << " dark (" << g.n << " field point(s))\n";
  return kExitOk;
}

int run_magic(const Common& c, const std::string& selector, const std::string& range_text,
              int grid_n, const std::string& roots_path, const std::string& kind) {
  const auto sp = c.species();
  const FieldGrid g = parse_grid(range_text);
  if (g.n == 1) throw std::invalid_argument("magic needs a field range lo:hi");
  const double b_ref = 0.5 * (g.lo + g.hi);
  const auto spec = resolve_transition(sp, selector, b_ref);
  const auto [iu, id] = transition_indices(sp, spec, b_ref);

  std::vector<FieldRoot> roots;
  if (kind != "owp")
    for (auto& r : find_drps(sp, spec, g.lo, g.hi, grid_n)) roots.push_back(r);
  if (kind != "drp")
    for (auto& r : find_owps(sp, spec, g.lo, g.hi, grid_n)) roots.push_back(r);

  std::cout << "transition " << iu << "->" << id << "  " << spec_label(spec) << "  over ["
            << format_double(g.lo) << ", " << format_double(g.hi) << "] T\n";
  int n_drp = 0, n_owp = 0;
  for (const auto& r : roots) {
    std::cout << "  " << to_string(r.kind) << " at B = " << format_double(r.b)
              << " T  (residual " << format_double(r.residual) << ")\n";
    if (r.kind == RootKind::drp) ++n_drp;
    if (r.kind == RootKind::owp) ++n_owp;
  }
  if (kind != "owp" && n_drp == 0) std::cout << "  no DRP\n";
  if (kind != "drp" && n_owp == 0) std::cout << "  no OWP\n";

  if (!c.out_path.empty()) {
    std::ofstream file;
    std::ostream& os = open_output(c, file);
    write_scan_csv(os, scan_transition(sp, spec, g.lo, g.hi, grid_n));
  }
  if (!roots_path.empty()) {
    std::ofstream rf(roots_path, std::ios::binary);
    if (!rf) throw std::invalid_argument("cannot open roots file '" + roots_path + "'");
    write_roots_csv(rf, roots);
  }
  return kExitOk;
}

int run_echo(const Common& c, const std::string& selector, double b0, double j, double tau,
             int steps, const std::string& axis_text) {
  const auto sp = c.species();
  const auto spec = resolve_transition(sp, selector, b0);
  const Axis axis = axis_text == "x" ? Axis::x : Axis::y;
  if (axis_text != "x" && axis_text != "y")
    throw std::invalid_argument("--axis must be x or y");

  const double fid = refocus_fidelity(sp, spec, b0, j, tau, axis);
  const auto [iu, id] = transition_indices(sp, spec, b0);
  std::cout << "transition " << iu << "->" << id << "  B0 = " << format_double(b0)
            << " T  J = " << format_double(j) << " rad/s  tau = " << format_double(tau)
            << " s\n";
  std::cout << "  echo fidelity = " << format_double(fid) << "\n";

  if (!c.out_path.empty()) {
    const auto h = pair_hamiltonian(sp, spec, b0, j);
    std::ofstream file;
    std::ostream& os = open_output(c, file);
    CsvWriter w(os);
    w.header({"t_s", "population_ud", "population_du", "concurrence", "fidelity"});
    for (const double t : time_grid(2.0 * tau, steps)) {
      const auto s = evolve(PairState::ud(), h, t);
      w.begin_row();
      w.field(t);
      w.field(std::norm(s.amps[1]));
      w.field(std::norm(s.amps[2]));
      w.field(concurrence(s));
      w.field(t > 0 ? refocus_fidelity(sp, spec, b0, j, 0.5 * t, axis) : 1.0);
      w.end_row();
    }
  }
  return kExitOk;
}

int run_decay(const Common& c, const std::string& selector, double b0, const std::string& mode,
              double density, double radius, double r_min, int n_realizations,
              std::uint64_t seed, double t_max, int t_steps, const std::string& central,
              int polarized_state) {
  const auto sp = c.species();

  AverageConfig cfg;
  cfg.transition = resolve_transition(sp, selector, b0);
  cfg.b0 = b0;
  cfg.mode = decay_mode_from_string(mode);
  cfg.bath.density = density;
  cfg.bath.radius = radius;
  cfg.bath.r_min = r_min;
  cfg.n_realizations = n_realizations;
  cfg.seed = seed;
  cfg.times = time_grid(t_max, t_steps);
  if (central != "u" && central != "d")
    throw std::invalid_argument("--central must be u or d");
  cfg.central_state_u = central == "u";
  if (polarized_state > 0) {
    cfg.bath.init = BathInit::polarized;
    cfg.bath.polarized_state = polarized_state;
  }

  const auto curve = average_decay(sp, cfg);

  const auto [iu, id] = transition_indices(sp, cfg.transition, b0);
  std::cout << "transition " << iu << "->" << id << "  B0 = " << format_double(b0) << " T  mode "
            << mode << "  " << n_realizations << " realization(s)\n";
  if (curve.t2.has_value())
    std::cout << "  t2 = " << format_double(*curve.t2) << " s\n";
  else
    std::cout << "  t2 not reached within " << format_double(t_max) << " s\n";

  std::ofstream file;
  std::ostream& os = open_output(c, file);
  write_decay_csv(os, curve);
  return kExitOk;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Hyperfine-mixed donor spins: levels, transitions, refocusing/working points,"
               " pair echoes, dipolar coherence decays"};
  app.require_subcommand(1);

  // levels
  Common c_levels;
  std::string levels_range = "0:0.6:240";
  auto* cmd_levels = app.add_subcommand("levels", "Eigenenergies vs magnetic field (CSV)");
  add_common(cmd_levels, c_levels);
  cmd_levels->add_option("--B", levels_range, "Field or range, Tesla (lo:hi:n)");

  // transitions
  Common c_trans;
  std::string trans_range = "0.1";
  auto* cmd_trans = app.add_subcommand("transitions", "Transition table with classes (CSV)");
  add_common(cmd_trans, c_trans);
  cmd_trans->add_option("--B", trans_range, "Field or range, Tesla");

  // magic
  Common c_magic;
  std::string magic_sel, magic_range = "0.005:0.3", magic_kind = "both", magic_roots;
  int magic_grid = kDefaultGridN;
  auto* cmd_magic =
      app.add_subcommand("magic", "Locate refocusing (DRP) and working (OWP) fields");
  add_common(cmd_magic, c_magic);
  cmd_magic->add_option("--transition", magic_sel, "Selector: 'IDX,IDX' or '(p,m)/(p,m)'");
  cmd_magic->add_option("--range", magic_range, "Scan range, Tesla (lo:hi)");
  cmd_magic->add_option("--grid", magic_grid, "Scan grid points (>= 100)");
  cmd_magic->add_option("--kind", magic_kind, "drp, owp, or both");
  cmd_magic->add_option("--roots-out", magic_roots, "Roots CSV path");

  // echo
  Common c_echo;
  std::string echo_sel, echo_axis = "y";
  double echo_b = 0, echo_j = 0, echo_tau = 0;
  int echo_steps = 200;
  auto* cmd_echo = app.add_subcommand("echo", "Two-donor Hahn echo simulation");
  add_common(cmd_echo, c_echo);
  cmd_echo->add_option("--transition", echo_sel, "Selector");
  cmd_echo->add_option("--B", echo_b, "Field, Tesla");
  cmd_echo->add_option("--J", echo_j, "Dipolar coupling, rad/s");
  cmd_echo->add_option("--tau", echo_tau, "Pulse spacing tau, seconds");
  cmd_echo->add_option("--steps", echo_steps, "CSV time steps over [0, 2 tau]");
  cmd_echo->add_option("--axis", echo_axis, "Refocusing pulse axis: x or y");

  // decay
  Common c_decay;
  std::string decay_sel, decay_mode = "full", decay_central = "u";
  double decay_b = 0, decay_density = 0, decay_radius = 0, decay_rmin = 5e-9, decay_tmax = 0;
  int decay_n = 1, decay_steps = 201, decay_polarized = 0;
  std::uint64_t decay_seed = 0;
  auto* cmd_decay = app.add_subcommand("decay", "Monte-Carlo pair-product coherence decay");
  add_common(cmd_decay, c_decay);
  cmd_decay->add_option("--transition", decay_sel, "Selector");
  cmd_decay->add_option("--B0_T,--B", decay_b, "Field, Tesla");
  cmd_decay->add_option("--mode", decay_mode, "full, id_only, or dff_only");
  cmd_decay->add_option("--density_per_m3,--density", decay_density, "Donor density, m^-3");
  cmd_decay->add_option("--radius_m,--radius", decay_radius, "Bath sphere radius, m");
  cmd_decay->add_option("--r_min_m,--r-min", decay_rmin, "Closest neighbor distance, m");
  cmd_decay->add_option("--n_realizations,-n", decay_n, "Bath realizations to average");
  cmd_decay->add_option("--seed", decay_seed, "Random seed (required for reproducibility)");
  cmd_decay->add_option("--t-max", decay_tmax, "Last echo time, seconds");
  cmd_decay->add_option("--t-steps", decay_steps, "Time grid points");
  cmd_decay->add_option("--central", decay_central, "Central spin initial state: u or d");
  cmd_decay->add_option("--polarized", decay_polarized,
                        "Initialize every bath spin in this state index (0 = thermal)");

  CLI11_PARSE(app, argc, argv);

  try {
    if (cmd_levels->parsed()) {
      merge_config(cmd_levels, c_levels);
      return run_levels(c_levels, levels_range);
    }
    if (cmd_trans->parsed()) {
      merge_config(cmd_trans, c_trans);
      return run_transitions(c_trans, trans_range);
    }
    if (cmd_magic->parsed()) {
      merge_config(cmd_magic, c_magic);
      require_opt(cmd_magic, "--transition");
      return run_magic(c_magic, magic_sel, magic_range, magic_grid, magic_roots, magic_kind);
    }
    if (cmd_echo->parsed()) {
      merge_config(cmd_echo, c_echo);
      for (const char* f : {"--transition", "--B", "--J", "--tau"}) require_opt(cmd_echo, f);
      return run_echo(c_echo, echo_sel, echo_b, echo_j, echo_tau, echo_steps, echo_axis);
    }
    if (cmd_decay->parsed()) {
      merge_config(cmd_decay, c_decay);
      for (const char* f : {"--transition", "--B0_T", "--density_per_m3", "--radius_m",
                            "--seed", "--t-max"})
        require_opt(cmd_decay, f);
      return run_decay(c_decay, decay_sel, decay_b, decay_mode, decay_density, decay_radius,
                       decay_rmin, decay_n, decay_seed, decay_tmax, decay_steps, decay_central,
                       decay_polarized);
    }
  } catch (const unknown_transition_error& e) {
    std::cerr << "error: " << e.what() << "\nvalid transitions at the reference field:\n"
              << e.valid_list();
    return kExitUnknownTransition;
  } catch (const numeric_error& e) {
    std::cerr << "numeric error at B = " << e.field_tesla() << " T: " << e.what() << "\n";
    return kExitNumeric;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitError;
  }
  return kExitError;
}
