#include "donorspin/decoherence.hpp"

#include <cmath>
#include <ostream>
#include <random>
#include <stdexcept>

#include "donorspin/csv.hpp"
#include "donorspin/errors.hpp"
#include "donorspin/units.hpp"

namespace donorspin {

DecayMode decay_mode_from_string(const std::string& s) {
  if (s == "full") return DecayMode::full;
  if (s == "id_only") return DecayMode::id_only;
  if (s == "dff_only") return DecayMode::dff_only;
  throw std::invalid_argument("unknown decay mode '" + s + "' (full, id_only, dff_only)");
}

std::string to_string(DecayMode m) {
  switch (m) {
    case DecayMode::full: return "full";
    case DecayMode::id_only: return "id_only";
    default: return "dff_only";
  }
}

double dipolar_prefactor(double gamma_e) { return kMu0Over4Pi * gamma_e * gamma_e * kHbar; }

double pair_coupling(const Eigen::Vector3d& r, const Eigen::Vector3d& b_axis, double gamma_e,
                     double r_min) {
  const double dist = r.norm();
  if (dist < r_min) throw std::domain_error("pair_coupling: neighbor closer than r_min");
  const double cos_theta = r.dot(b_axis) / (dist * b_axis.norm());
  return dipolar_prefactor(gamma_e) * (1.0 - 3.0 * cos_theta * cos_theta) / (dist * dist * dist);
}

BathRealization sample_bath(const BathConfig& cfg, const SpeciesParams& sp, int idx_u, int idx_d,
                            std::uint64_t seed) {
  sp.validate();
  if (!(cfg.density > 0)) throw std::invalid_argument("sample_bath: density must be > 0");
  if (!(cfg.radius >= 0)) throw std::invalid_argument("sample_bath: radius must be >= 0");
  if (cfg.init == BathInit::polarized &&
      (cfg.polarized_state < 1 || cfg.polarized_state > sp.dim()))
    throw std::invalid_argument("sample_bath: polarized state index out of range");

  const double volume = (4.0 / 3.0) * kPi * cfg.radius * cfg.radius * cfg.radius;
  const double expected = cfg.density * volume;
  if (expected > kMaxExpectedNeighbors)
    throw resource_error("sample_bath: expected neighbor count " + std::to_string(expected) +
                         " exceeds " + std::to_string(kMaxExpectedNeighbors));

  std::mt19937_64 rng(seed);
  std::poisson_distribution<int> count_dist(expected);
  std::uniform_real_distribution<double> unit(0.0, 1.0);
  std::uniform_int_distribution<int> state_dist(1, sp.dim());

  BathRealization bath;
  bath.seed = seed;
  const int count = expected > 0 ? count_dist(rng) : 0;
  bath.positions.reserve(count);
  bath.couplings.reserve(count);
  bath.states.reserve(count);
  bath.resonant.reserve(count);

  for (int k = 0; k < count; ++k) {
    Eigen::Vector3d pos;
    do {
      // Uniform in the ball: direction from (cos theta, phi), radius ~ U^(1/3).
      const double z = 2.0 * unit(rng) - 1.0;
      const double phi = kTwoPi * unit(rng);
      const double s = std::sqrt(std::max(0.0, 1.0 - z * z));
      const double radius = cfg.radius * std::cbrt(unit(rng));
      pos = radius * Eigen::Vector3d(s * std::cos(phi), s * std::sin(phi), z);
    } while (pos.norm() < cfg.r_min);

    const int state = cfg.init == BathInit::polarized ? cfg.polarized_state : state_dist(rng);
    bath.positions.push_back(pos);
    bath.couplings.push_back(pair_coupling(pos, cfg.b_axis, sp.gamma_e, cfg.r_min));
    bath.states.push_back(state);
    bath.resonant.push_back(state == idx_u || state == idx_d);
  }
  return bath;
}

double pair_decay_resonant(double j, double p_u, double p_d, double rho, double t,
                           bool same_state) {
  if (!(t >= 0)) throw std::invalid_argument("pair_decay_resonant: t must be >= 0");
  const double dp = p_u - p_d;
  const double arg = 0.25 * j * t * (dp * dp + (same_state ? 2.0 : -2.0) * rho);
  return std::cos(arg);
}

double pair_decay_nonresonant(double j, double rho_pair, double t) {
  if (!(t >= 0)) throw std::invalid_argument("pair_decay_nonresonant: t must be >= 0");
  return std::cos(0.5 * j * t * rho_pair);
}

double id_only_decay(double j, double p_u, double p_d, double t) {
  if (!(t >= 0)) throw std::invalid_argument("id_only_decay: t must be >= 0");
  const double dp = p_u - p_d;
  return std::cos(0.25 * j * t * dp * dp);
}

double nonresonant_rho_pair(const DoubletState& u, const DoubletState& d,
                            const DoubletState& neighbor) {
  // State exchange with the central spin is m-conserving (and degenerate)
  // only against a transition state one unit of m away; with m_u = m_d + 1
  // at most one of the two channels is open.
  const long dm_u = std::lround(2.0 * (neighbor.m - u.m));
  if (dm_u == 2 || dm_u == -2) return exchange_amplitude(neighbor, u);
  const long dm_d = std::lround(2.0 * (neighbor.m - d.m));
  if (dm_d == 2 || dm_d == -2) return exchange_amplitude(neighbor, d);
  return 0.0;
}

PairRates pair_rates(const DoubletState& u, const DoubletState& d, const DoubletState& neighbor,
                     double j, bool neighbor_resonant_u, bool neighbor_resonant_d,
                     bool central_state_u) {
  PairRates r;
  if (neighbor_resonant_u || neighbor_resonant_d) {
    const double dp = u.P - d.P;
    const double rho = exchange_amplitude(u, d);
    r.resonant = true;
    r.same_state = neighbor_resonant_u == central_state_u;
    r.id = 0.25 * j * dp * dp;
    r.dff = 0.5 * j * rho;
  } else {
    r.resonant = false;
    r.dff = 0.5 * j * nonresonant_rho_pair(u, d, neighbor);
  }
  return r;
}

std::optional<double> extract_t2(const std::vector<double>& times,
                                 const std::vector<double>& value) {
  const double threshold = std::exp(-1.0);
  for (std::size_t k = 0; k < times.size(); ++k) {
    const double mag = std::abs(value[k]);
    if (mag > threshold) continue;
    if (k == 0) return times[0];
    const double prev = std::abs(value[k - 1]);
    const double frac = (prev - threshold) / (prev - mag);
    return times[k - 1] + frac * (times[k] - times[k - 1]);
  }
  return std::nullopt;
}

DecayCurve ensemble_decay(const SpeciesParams& sp, const TransitionSpec& t, double b0,
                          const BathRealization& bath, const std::vector<double>& times,
                          DecayMode mode, bool central_state_u) {
  if (times.empty() || times.front() != 0.0)
    throw std::invalid_argument("ensemble_decay: times must ascend from 0");
  for (std::size_t k = 1; k < times.size(); ++k)
    if (!(times[k] > times[k - 1]))
      throw std::invalid_argument("ensemble_decay: times must be strictly ascending");

  const auto levels = analytic_levels(sp, b0);
  const auto [idx_u, idx_d] = transition_indices(sp, t, b0);
  const DoubletState& u = levels.at(idx_u - 1);
  const DoubletState& d = levels.at(idx_d - 1);

  // Per-neighbor phase rate of the cosine factor, fixed over the curve.
  std::vector<double> rates;
  rates.reserve(bath.size());
  for (std::size_t k = 0; k < bath.size(); ++k) {
    const DoubletState& nb = levels.at(bath.states[k] - 1);
    const PairRates pr = pair_rates(u, d, nb, bath.couplings[k], bath.states[k] == idx_u,
                                    bath.states[k] == idx_d, central_state_u);
    double rate = 0;
    switch (mode) {
      case DecayMode::full:
        rate = pr.resonant ? (pr.same_state ? pr.id + pr.dff : pr.id - pr.dff) : pr.dff;
        break;
      case DecayMode::id_only:
        rate = pr.resonant ? pr.id : 0.0;
        break;
      case DecayMode::dff_only:
        rate = pr.dff;
        break;
    }
    if (rate != 0.0) rates.push_back(rate);
  }

  DecayCurve curve;
  curve.times = times;
  curve.value.resize(times.size());
  for (std::size_t i = 0; i < times.size(); ++i) {
    double l = 1.0;
    for (const double rate : rates) l *= std::cos(rate * times[i]);
    curve.value[i] = l;
  }
  curve.t2 = extract_t2(curve.times, curve.value);
  return curve;
}

DecayCurve average_decay(const SpeciesParams& sp, const AverageConfig& cfg) {
  if (cfg.n_realizations < 1)
    throw std::invalid_argument("average_decay: n_realizations must be >= 1");

  const auto [idx_u, idx_d] = transition_indices(sp, cfg.transition, cfg.b0);
  const std::size_t nt = cfg.times.size();
  std::vector<double> sum(nt, 0.0), sum_sq(nt, 0.0);

  for (int k = 0; k < cfg.n_realizations; ++k) {
    const BathRealization bath =
        sample_bath(cfg.bath, sp, idx_u, idx_d, cfg.seed + static_cast<std::uint64_t>(k));
    const DecayCurve one = ensemble_decay(sp, cfg.transition, cfg.b0, bath, cfg.times, cfg.mode,
                                          cfg.central_state_u);
    for (std::size_t i = 0; i < nt; ++i) {
      sum[i] += one.value[i];
      sum_sq[i] += one.value[i] * one.value[i];
    }
  }

  DecayCurve curve;
  curve.times = cfg.times;
  curve.value.resize(nt);
  curve.stderr_.assign(nt, 0.0);
  curve.n_realizations = cfg.n_realizations;
  const double n = cfg.n_realizations;
  for (std::size_t i = 0; i < nt; ++i) {
    curve.value[i] = sum[i] / n;
    if (cfg.n_realizations > 1) {
      const double var = std::max(0.0, (sum_sq[i] - n * curve.value[i] * curve.value[i]) / (n - 1.0));
      curve.stderr_[i] = std::sqrt(var / n);
    }
  }
  curve.t2 = extract_t2(curve.times, curve.value);
  return curve;
}

void write_decay_csv(std::ostream& os, const DecayCurve& c, bool header) {
  CsvWriter w(os);
  if (header) w.header({"t_s", "L_mean", "L_stderr", "n_realizations"});
  for (std::size_t i = 0; i < c.times.size(); ++i) {
    w.begin_row();
    w.field(c.times[i]);
    w.field(c.value[i]);
    w.field(c.stderr_.empty() ? 0.0 : c.stderr_[i]);
    w.field(c.n_realizations);
    w.end_row();
  }
}

}  // namespace donorspin
