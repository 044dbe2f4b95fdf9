#pragma once

#include <Eigen/Dense>
#include <cstdint>
#include <iosfwd>
#include <optional>
#include <vector>

#include "donorspin/transitions.hpp"

namespace donorspin {

// Which dipolar channels enter each pair factor.
enum class DecayMode { full, id_only, dff_only };

DecayMode decay_mode_from_string(const std::string& s);
std::string to_string(DecayMode m);

// Initial bath-state assignment.
enum class BathInit { unpolarized, polarized };

// Sampled neighborhood of the central donor (at the origin).
struct BathRealization {
  std::vector<Eigen::Vector3d> positions;  // m
  std::vector<double> couplings;           // J_k, rad/s (signed)
  std::vector<int> states;                 // ascending-energy index 1..d
  std::vector<bool> resonant;              // state in {u, d}
  std::uint64_t seed = 0;

  std::size_t size() const { return positions.size(); }
};

struct BathConfig {
  double density = 0;    // donors per m^3
  double radius = 0;     // sampling sphere radius, m
  double r_min = 5e-9;   // closest allowed neighbor; keeps J << A (dipolar regime)
  BathInit init = BathInit::unpolarized;
  int polarized_state = 0;  // 1..d when init == polarized
  Eigen::Vector3d b_axis = Eigen::Vector3d::UnitZ();
};

// Largest expected neighbor count before sample_bath refuses.
inline constexpr double kMaxExpectedNeighbors = 1e5;

// Secular dipolar prefactor D = mu0 gamma_e^2 hbar / (4 pi), rad/s m^3.
double dipolar_prefactor(double gamma_e);

// J(r) = D (1 - 3 cos^2 theta)/r^3 with theta measured from b_axis.
// Throws std::domain_error if |r| < r_min.
double pair_coupling(const Eigen::Vector3d& r, const Eigen::Vector3d& b_axis, double gamma_e,
                     double r_min = 5e-9);

// Poisson-count neighbors placed uniformly in the sphere (positions closer
// than r_min are redrawn), states assigned per cfg.init, resonant flags set
// against the transition's ascending-energy indices (idx_u, idx_d).
// Deterministic in `seed`. Throws resource_error when the expected count
// exceeds kMaxExpectedNeighbors.
BathRealization sample_bath(const BathConfig& cfg, const SpeciesParams& sp, int idx_u, int idx_d,
                            std::uint64_t seed);

// --- pair factors ----------------------------------------------------------
//
// Echo-time convention: t below is the total echo time 2 tau. The exact
// two-spin propagator accumulates these phase arguments at half this rate;
// see the unitary-oracle tests, which apply that single factor consistently.

// Both spins resonant:  cos( (J t/4) [ (P_u - P_d)^2 +/- 2 rho ] ),
// '+' when the neighbor starts in the same state as the central spin.
double pair_decay_resonant(double j, double p_u, double p_d, double rho, double t,
                           bool same_state);

// Neighbor off resonance; rho_pair is the state-exchange amplitude with
// whichever of u, d it m-conserves with:  cos( (J t/2) rho_pair ).
double pair_decay_nonresonant(double j, double rho_pair, double t);

// Instantaneous-diffusion channel alone:  cos( (J t/4) (P_u - P_d)^2 ).
double id_only_decay(double j, double p_u, double p_d, double t);

// Per-pair phase rates (rad/s); the full-mode argument is id +/- dff.
struct PairRates {
  double id = 0;   // (J/4)(P_u - P_d)^2            (resonant pairs only)
  double dff = 0;  // (J/2) rho                     (resonant or exchange)
  bool same_state = false;
  bool resonant = false;
};

// Rates for one neighbor of the central (u, d) transition. central_state_u
// selects which transition state the central spin nominally starts in (the
// sign branch of the resonant factor).
PairRates pair_rates(const DoubletState& u, const DoubletState& d, const DoubletState& neighbor,
                     double j, bool neighbor_resonant_u, bool neighbor_resonant_d,
                     bool central_state_u);

// Exchange amplitude of a non-resonant neighbor: the unique m-conserving
// flip-flop partner among {u, d} if one exists, else 0.
double nonresonant_rho_pair(const DoubletState& u, const DoubletState& d,
                            const DoubletState& neighbor);

// --- curves ----------------------------------------------------------------

struct DecayCurve {
  std::vector<double> times;   // s, ascending from 0
  std::vector<double> value;   // L(t), product of pair factors, in [-1, 1]
  std::vector<double> stderr_; // standard error per point (averaged curves)
  int n_realizations = 1;
  std::optional<double> t2;    // first |L| <= 1/e, linearly interpolated
};

// First time |L| crosses 1/e, by linear interpolation between samples.
std::optional<double> extract_t2(const std::vector<double>& times,
                                 const std::vector<double>& value);

// L(t) = prod_k L_k(t) over the realization, factors dispatched on the
// resonance flags and mode.
DecayCurve ensemble_decay(const SpeciesParams& sp, const TransitionSpec& t, double b0,
                          const BathRealization& bath, const std::vector<double>& times,
                          DecayMode mode, bool central_state_u = true);

struct AverageConfig {
  BathConfig bath;
  TransitionSpec transition;
  double b0 = 0;
  std::vector<double> times;
  DecayMode mode = DecayMode::full;
  int n_realizations = 1;
  std::uint64_t seed = 0;
  bool central_state_u = true;
};

// Mean of per-realization L(t) over independent baths (realization k uses
// seed + k); standard error per time point; t2 from the mean curve.
DecayCurve average_decay(const SpeciesParams& sp, const AverageConfig& cfg);

// CSV "t_s,L_mean,L_stderr,n_realizations".
void write_decay_csv(std::ostream& os, const DecayCurve& c, bool header = true);

}  // namespace donorspin
