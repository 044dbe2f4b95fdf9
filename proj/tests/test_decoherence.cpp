#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <complex>
#include <set>
#include <sstream>

#include "donorspin/decoherence.hpp"
#include "donorspin/errors.hpp"
#include "donorspin/magic_fields.hpp"
#include "donorspin/units.hpp"
#include "test_helpers.hpp"

using namespace donorspin;
using cd = std::complex<double>;

namespace {

const TransitionSpec k147{-1.0, Branch::plus, -2.0, Branch::minus};
const TransitionSpec k1110{-4.0, Branch::plus, -5.0, Branch::unmixed};

// ---------------------------------------------------------------------------
// Exact few-spin echo oracle.
//
// Central spin + up to a few neighbors, each spin truncated to the state list
// {u, d} + (distinct off-resonant bath states). The Hamiltonian is the sum of
// the central-neighbor secular dipolar pairs (all matrix elements the
// truncated spaces support), pulses rotate the {u, d} block of every spin,
// and the echo coherence is read out on the central spin at 2 tau and
// normalized by the zero-coupling run.
//
// The pair-product formulas quote phase arguments at twice the rate of this
// propagator, so they are compared at half the echo time throughout.

struct OracleSpin {
  int state = 0;  // index into the state list; central starts in `u`
};

class FewSpinEcho {
 public:
  FewSpinEcho(const SpeciesParams& sp, const TransitionSpec& t, double b0,
              const std::vector<int>& bath_state_indices, const std::vector<double>& couplings)
      : couplings_(couplings) {
    const auto levels = analytic_levels(sp, b0);
    const auto [iu, id] = transition_indices(sp, t, b0);
    states_.push_back(levels[iu - 1]);  // 0 -> u
    states_.push_back(levels[id - 1]);  // 1 -> d
    for (int idx : bath_state_indices) {
      int found = -1;
      for (std::size_t s = 0; s < states_.size(); ++s)
        if (states_[s].index == idx) found = static_cast<int>(s);
      if (found < 0) {
        states_.push_back(levels[idx - 1]);
        found = static_cast<int>(states_.size()) - 1;
      }
      bath_states_.push_back(found);
    }
    n_spins_ = 1 + static_cast<int>(bath_states_.size());
    n_local_ = static_cast<int>(states_.size());
    dim_ = 1;
    for (int s = 0; s < n_spins_; ++s) dim_ *= n_local_;
  }

  // |L(2 tau)| of the central spin.
  double echo_coherence(double tau, bool couplings_on) const {
    const Eigen::VectorXcd psi = run(tau, couplings_on);
    const Eigen::VectorXcd psi0 = run(tau, false);
    return std::abs(coherence(psi)) / std::abs(coherence(psi0));
  }

 private:
  double sp_elem(const DoubletState& x, const DoubletState& y) const {  // <x|S+|y>
    if (std::lround(2.0 * (x.m - y.m)) != 2) return 0.0;
    return zeeman_amplitudes(x).up * zeeman_amplitudes(y).down;
  }
  double sz_elem(const DoubletState& x, const DoubletState& y) const {
    if (std::lround(2.0 * (x.m - y.m)) != 0) return 0.0;
    const auto zx = zeeman_amplitudes(x), zy = zeeman_amplitudes(y);
    return 0.5 * zx.up * zy.up - 0.5 * zx.down * zy.down;
  }

  Eigen::MatrixXd hamiltonian(bool couplings_on) const {
    Eigen::MatrixXd h = Eigen::MatrixXd::Zero(dim_, dim_);
    for (int row = 0; row < dim_; ++row) {
      const auto cfg = decode(row);
      double e0 = 0;
      for (int s = 0; s < n_spins_; ++s) e0 += states_[cfg[s]].energy;
      h(row, row) += e0;
    }
    if (!couplings_on) return h;

    for (int nb = 1; nb < n_spins_; ++nb) {
      const double j = couplings_[nb - 1];
      for (int row = 0; row < dim_; ++row) {
        const auto cfg = decode(row);
        for (int a2 = 0; a2 < n_local_; ++a2) {
          for (int b2 = 0; b2 < n_local_; ++b2) {
            auto cfg2 = cfg;
            cfg2[0] = a2;
            cfg2[nb] = b2;
            const int col = encode(cfg2);
            if (col < row) continue;  // fill upper triangle, mirror below
            const DoubletState &a1 = states_[cfg[0]], &b1 = states_[cfg[nb]];
            const DoubletState &a2s = states_[a2], &b2s = states_[b2];
            double v = j * sz_elem(a2s, a1) * sz_elem(b2s, b1);
            v -= 0.25 * j *
                 (sp_elem(a2s, a1) * sp_elem(b1, b2s) + sp_elem(a1, a2s) * sp_elem(b2s, b1));
            if (v != 0.0) {
              h(row, col) += v;
              if (col != row) h(col, row) += v;
            }
          }
        }
      }
    }
    return h;
  }

  Eigen::VectorXcd run(double tau, bool couplings_on) const {
    // Initial configuration: central in u, neighbors in their bath states.
    std::vector<int> cfg(n_spins_, 0);
    for (int nb = 1; nb < n_spins_; ++nb) cfg[nb] = bath_states_[nb - 1];
    Eigen::VectorXcd psi = Eigen::VectorXcd::Zero(dim_);
    psi[encode(cfg)] = 1.0;

    const Eigen::MatrixXd h = hamiltonian(couplings_on);
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(h);
    const auto propagate = [&](const Eigen::VectorXcd& v) {
      Eigen::VectorXcd w = es.eigenvectors().transpose() * v;
      for (int i = 0; i < dim_; ++i) w[i] *= std::polar(1.0, -es.eigenvalues()[i] * tau);
      return (es.eigenvectors() * w).eval();
    };

    psi = pulse(psi, 0.5 * kPi);
    psi = propagate(psi);
    psi = pulse_pi_y(psi);
    psi = propagate(psi);
    return psi;
  }

  // Collective y rotation on the {u, d} block of every spin.
  Eigen::VectorXcd pulse(const Eigen::VectorXcd& v, double angle) const {
    Eigen::MatrixXcd r = Eigen::MatrixXcd::Identity(n_local_, n_local_);
    const double ch = std::cos(0.5 * angle), sh = std::sin(0.5 * angle);
    r(0, 0) = ch;
    r(0, 1) = sh;
    r(1, 0) = -sh;
    r(1, 1) = ch;
    Eigen::VectorXcd out = v;
    for (int s = 0; s < n_spins_; ++s) out = apply_single(out, r, s);
    return out;
  }
  Eigen::VectorXcd pulse_pi_y(const Eigen::VectorXcd& v) const {
    Eigen::MatrixXcd r = Eigen::MatrixXcd::Identity(n_local_, n_local_);
    r(0, 0) = 0;
    r(0, 1) = 1;
    r(1, 0) = -1;
    r(1, 1) = 0;
    Eigen::VectorXcd out = v;
    for (int s = 0; s < n_spins_; ++s) out = apply_single(out, r, s);
    return out;
  }

  Eigen::VectorXcd apply_single(const Eigen::VectorXcd& v, const Eigen::MatrixXcd& r,
                                int spin) const {
    Eigen::VectorXcd out = Eigen::VectorXcd::Zero(dim_);
    for (int row = 0; row < dim_; ++row) {
      auto cfg = decode(row);
      const int from = cfg[spin];
      for (int to = 0; to < n_local_; ++to) {
        if (r(to, from) == cd(0)) continue;
        cfg[spin] = to;
        out[encode(cfg)] += r(to, from) * v[row];
      }
    }
    return out;
  }

  cd coherence(const Eigen::VectorXcd& psi) const {
    // <d| rho_central |u>: sum over bath configurations.
    cd c = 0;
    for (int row = 0; row < dim_; ++row) {
      const auto cfg = decode(row);
      if (cfg[0] != 0) continue;
      auto cfg_d = cfg;
      cfg_d[0] = 1;
      c += psi[row] * std::conj(psi[encode(cfg_d)]);
    }
    return c;
  }

  std::vector<int> decode(int row) const {
    std::vector<int> cfg(n_spins_);
    for (int s = n_spins_ - 1; s >= 0; --s) {
      cfg[s] = row % n_local_;
      row /= n_local_;
    }
    return cfg;
  }
  int encode(const std::vector<int>& cfg) const {
    int row = 0;
    for (int s = 0; s < n_spins_; ++s) row = row * n_local_ + cfg[s];
    return row;
  }

  std::vector<DoubletState> states_;
  std::vector<int> bath_states_;
  std::vector<double> couplings_;
  int n_spins_ = 1, n_local_ = 2, dim_ = 2;
};

std::vector<double> linspace_times(double t_max, int n) {
  std::vector<double> t(n);
  for (int k = 0; k < n; ++k) t[k] = t_max * k / (n - 1);
  return t;
}

}  // namespace

TEST_CASE("pair coupling: magic angle, cube law, pinned value") {
  const auto sp = bismuth();
  const Eigen::Vector3d z = Eigen::Vector3d::UnitZ();

  const double magic_cos = std::sqrt(1.0 / 3.0);
  const Eigen::Vector3d magic(std::sqrt(1.0 - magic_cos * magic_cos), 0.0, magic_cos);
  CHECK(std::abs(pair_coupling(100e-9 * magic, z, sp.gamma_e)) < 1e-9);

  const Eigen::Vector3d r1(0, 0, 150e-9), r2(0, 0, 300e-9);
  CHECK(pair_coupling(r1, z, sp.gamma_e) / pair_coupling(r2, z, sp.gamma_e) ==
        doctest::Approx(8.0).epsilon(1e-12));

  // Pinned against D = mu0 gamma_e^2 hbar / 4 pi with the Bi default gamma_e.
  CHECK(pair_coupling(r1, z, sp.gamma_e) == doctest::Approx(-193.381582830896).epsilon(1e-9));

  CHECK_THROWS_AS(pair_coupling(Eigen::Vector3d(0, 0, 1e-9), z, sp.gamma_e), std::domain_error);
}

TEST_CASE("bath sampling: determinism, geometry, resource cap") {
  const auto sp = bismuth();
  BathConfig cfg;
  cfg.density = 5.04e19;  // mean nearest-neighbor spacing ~150 nm
  cfg.radius = 1.2e-6;

  const auto a = sample_bath(cfg, sp, 14, 7, 42);
  const auto b = sample_bath(cfg, sp, 14, 7, 42);
  REQUIRE(a.size() == b.size());
  for (std::size_t k = 0; k < a.size(); ++k) {
    CHECK(a.positions[k] == b.positions[k]);  // bit-identical
    CHECK(a.couplings[k] == b.couplings[k]);
    CHECK(a.states[k] == b.states[k]);
    CHECK(a.resonant[k] == (a.states[k] == 14 || a.states[k] == 7));
    CHECK(a.positions[k].norm() >= cfg.r_min);
    CHECK(a.positions[k].norm() <= cfg.radius);
    CHECK(a.states[k] >= 1);
    CHECK(a.states[k] <= 20);
  }
  CHECK(sample_bath(cfg, sp, 14, 7, 43).positions != a.positions);

  // Mean nearest-neighbor distance lands in the 100-200 nm band.
  double sum_nn = 0;
  const int realizations = 400;
  for (int k = 0; k < realizations; ++k) {
    const auto bath = sample_bath(cfg, sp, 14, 7, 1000 + k);
    double nn = cfg.radius;
    for (const auto& p : bath.positions) nn = std::min(nn, p.norm());
    sum_nn += nn;
  }
  const double mean_nn = sum_nn / realizations;
  CHECK(mean_nn > 100e-9);
  CHECK(mean_nn < 200e-9);

  // Empty bath at vanishing radius.
  BathConfig tiny = cfg;
  tiny.radius = 0.0;
  CHECK(sample_bath(tiny, sp, 14, 7, 1).size() == 0);

  BathConfig huge = cfg;
  huge.radius = 1.0;
  CHECK_THROWS_AS(sample_bath(huge, sp, 14, 7, 1), resource_error);

  BathConfig bad = cfg;
  bad.init = BathInit::polarized;
  bad.polarized_state = 99;
  CHECK_THROWS_AS(sample_bath(bad, sp, 14, 7, 1), std::invalid_argument);

  BathConfig pol = cfg;
  pol.init = BathInit::polarized;
  pol.polarized_state = 10;
  const auto pb = sample_bath(pol, sp, 14, 7, 7);
  for (std::size_t k = 0; k < pb.size(); ++k) CHECK(pb.states[k] == 10);
}

TEST_CASE("pair factor formulas") {
  // Matched polarizations, no flip-flop: no decay ever.
  CHECK(pair_decay_resonant(1e4, 0.3, 0.3, 0.0, 12.3, false) == 1.0);
  // Refocusing condition kills the opposite-state branch.
  CHECK(pair_decay_resonant(1e4, 0.0, -1.0, 0.5, 7.7, false) == doctest::Approx(1.0));
  // Forced arithmetic: P_u = 1, P_d = -1, J t = pi.
  CHECK(id_only_decay(kPi, 1.0, -1.0, 1.0) == doctest::Approx(-1.0));
  // Working point: no instantaneous-diffusion dephasing.
  CHECK(id_only_decay(3e3, 0.42, 0.42, 5.0) == 1.0);
  // Quadratic suppression: halving the polarization gap quarters the phase.
  const double arg1 = std::acos(id_only_decay(1e2, 0.2, 0.0, 1e-3));
  const double arg2 = std::acos(id_only_decay(1e2, 0.1, 0.0, 1e-3));
  CHECK(arg1 / arg2 == doctest::Approx(4.0).epsilon(1e-6));

  CHECK(pair_decay_nonresonant(1e4, 0.0, 3.3) == 1.0);
  CHECK(pair_decay_nonresonant(2.0, 0.5, kPi) == doctest::Approx(std::cos(0.5 * kPi)));

  CHECK_THROWS_AS(pair_decay_resonant(1, 0, 0, 0, -1.0, true), std::invalid_argument);
}

TEST_CASE("off-resonant exchange partners for the 14->7 line") {
  const auto sp = bismuth();
  const auto levels = analytic_levels(sp, 0.05);
  const auto& u = levels[13];
  const auto& d = levels[6];

  const std::set<int> expected{5, 6, 8, 12, 13, 15};
  for (int i = 1; i <= 20; ++i) {
    if (i == 14 || i == 7) continue;
    const double rp = nonresonant_rho_pair(u, d, levels[i - 1]);
    if (expected.count(i))
      CHECK(rp > 1e-3);
    else
      CHECK(rp == 0.0);
  }

  // The aligned |m| = I + 1/2 state has no m-conserving partner here.
  CHECK(nonresonant_rho_pair(u, d, levels[9]) == 0.0);
  CHECK(nonresonant_rho_pair(u, d, levels[19]) == 0.0);
}

TEST_CASE("ensemble product: empty bath, single factor, mode decomposition") {
  const auto sp = bismuth();
  const auto times = linspace_times(2.0, 41);

  BathRealization empty;
  const auto flat = ensemble_decay(sp, k147, 0.1, empty, times, DecayMode::full);
  for (double v : flat.value) CHECK(v == 1.0);
  CHECK(!flat.t2.has_value());

  // One resonant neighbor reproduces the bare cosine.
  BathRealization one;
  one.positions = {Eigen::Vector3d(0, 0, 120e-9)};
  one.couplings = {pair_coupling(one.positions[0], Eigen::Vector3d::UnitZ(), sp.gamma_e)};
  one.states = {7};  // the central transition's lower state: opposite branch
  one.resonant = {true};
  const auto curve = ensemble_decay(sp, k147, 0.1, one, times, DecayMode::full);
  const auto pt = transition_at(sp, k147, 0.1);
  for (std::size_t i = 0; i < times.size(); ++i)
    CHECK(curve.value[i] == doctest::Approx(pair_decay_resonant(one.couplings[0], pt.u.P, pt.d.P,
                                                                pt.rho, times[i], false))
                                .epsilon(1e-12));

  // full = id +/- dff per pair, exactly.
  const auto levels = analytic_levels(sp, 0.1);
  for (int state : {14, 7, 5, 12, 3}) {
    const auto pr = pair_rates(levels[13], levels[6], levels[state - 1], 250.0, state == 14,
                               state == 7, true);
    if (pr.resonant) {
      CHECK(pr.id == doctest::Approx(0.25 * 250.0 * std::pow(levels[13].P - levels[6].P, 2)));
      CHECK(pr.dff == doctest::Approx(0.5 * 250.0 * pt.rho));
    } else {
      CHECK(pr.id == 0.0);
    }
  }
}

TEST_CASE("product of cosines stays bounded and starts at 1") {
  const auto sp = bismuth();
  BathConfig cfg;
  cfg.density = 5.04e19;
  cfg.radius = 1.2e-6;
  const auto times = linspace_times(300.0, 61);
  for (std::uint64_t seed : {1u, 2u, 3u}) {
    const auto bath = sample_bath(cfg, sp, 14, 7, seed);
    for (DecayMode mode : {DecayMode::full, DecayMode::id_only, DecayMode::dff_only}) {
      const auto c = ensemble_decay(sp, k147, 0.1, bath, times, mode);
      CHECK(c.value.front() == 1.0);
      for (double v : c.value) CHECK(std::abs(v) <= 1.0);
    }
  }
}

TEST_CASE("refocusing-field interference: opposite-state neighbors freeze, same-state do not") {
  const auto sp = bismuth();
  const double b_drp = find_drps(sp, k1110, 0.01, 0.3, 400).at(0).b;
  const auto times = linspace_times(2e-3, 51);

  BathRealization bath;
  bath.positions = {Eigen::Vector3d(0, 0, 130e-9)};
  bath.couplings = {4.2e4};
  bath.states = {10};  // opposite state (central starts in u = 11)
  bath.resonant = {true};

  const auto frozen = ensemble_decay(sp, k1110, b_drp, bath, times, DecayMode::full);
  for (double v : frozen.value) CHECK(std::abs(v - 1.0) < 1e-10);

  bath.states = {11};  // same state: the 2 rho branch survives
  const auto moving = ensemble_decay(sp, k1110, b_drp, bath, times, DecayMode::full);
  double min_v = 1.0;
  for (double v : moving.value) min_v = std::min(min_v, v);
  CHECK(min_v < 0.9);
}

TEST_CASE("t2 extraction by linear interpolation") {
  std::vector<double> times{0.0, 1.0, 2.0, 3.0};
  std::vector<double> vals{1.0, 0.8, 0.2, 0.1};
  const double th = std::exp(-1.0);
  const auto t2 = extract_t2(times, vals);
  REQUIRE(t2.has_value());
  CHECK(*t2 == doctest::Approx(1.0 + (0.8 - th) / 0.6));

  CHECK(!extract_t2(times, {1.0, 0.9, 0.8, 0.7}).has_value());
  // |L| is what crosses: sign flips count.
  CHECK(extract_t2(times, {1.0, -0.9, -0.1, 0.05}).has_value());
}

TEST_CASE("unitary few-spin oracle: resonant pairs, exact at half time") {
  const auto sp = bismuth();
  auto rng = testutil::make_rng(101);

  for (int k = 0; k < 12; ++k) {
    const double b0 = testutil::uniform(rng, 0.03, 0.28);
    const bool same = k % 2;
    const double j = testutil::log_uniform(rng, 1e2, 1e4);
    const double tau = testutil::log_uniform(rng, 1e-6, 1e-4) * (1e3 / j);

    const auto pt = transition_at(sp, k147, b0);
    const auto [iu, id] = transition_indices(sp, k147, b0);
    FewSpinEcho oracle(sp, k147, b0, {same ? iu : id}, {j});
    const double unitary = oracle.echo_coherence(tau, true);

    // Product formula at half the echo time 2 tau.
    const double formula = pair_decay_resonant(j, pt.u.P, pt.d.P, pt.rho, tau, same);
    CHECK(std::abs(unitary - std::abs(formula)) < 1e-6);
  }
}

TEST_CASE("unitary few-spin oracle: off-resonant neighbor and mixed baths") {
  const auto sp = bismuth();
  const double b0 = 0.05;
  const auto pt = transition_at(sp, k147, b0);
  const auto levels = analytic_levels(sp, b0);

  // Single off-resonant neighbor (state 12 exchanges with d).
  {
    const double j = 900.0, tau = 1.5e-6;
    FewSpinEcho oracle(sp, k147, b0, {12}, {j});
    const double unitary = oracle.echo_coherence(tau, true);
    const double rho_pair = nonresonant_rho_pair(pt.u, pt.d, levels[11]);
    const double formula = pair_decay_nonresonant(j, rho_pair, tau);
    CHECK(std::abs(unitary - std::abs(formula)) < 1e-6);
  }

  // Two and three neighbors, mixed resonance: the product structure holds to
  // first order in J tau.
  auto rng = testutil::make_rng(103);
  for (int k = 0; k < 6; ++k) {
    const int n_nb = 2 + (k % 2);
    std::vector<int> states;
    std::vector<double> js;
    for (int nb = 0; nb < n_nb; ++nb) {
      const int pick[] = {14, 7, 12, 5, 15};
      states.push_back(pick[std::uniform_int_distribution<int>(0, 4)(rng)]);
      js.push_back(testutil::uniform(rng, 200.0, 900.0));
    }
    const double tau = 1.2e-6;

    FewSpinEcho oracle(sp, k147, b0, states, js);
    const double unitary = oracle.echo_coherence(tau, true);

    double product = 1.0;
    for (int nb = 0; nb < n_nb; ++nb) {
      if (states[nb] == 14 || states[nb] == 7) {
        product *= pair_decay_resonant(js[nb], pt.u.P, pt.d.P, pt.rho, tau, states[nb] == 14);
      } else {
        product *= pair_decay_nonresonant(
            js[nb], nonresonant_rho_pair(pt.u, pt.d, levels[states[nb] - 1]), tau);
      }
    }
    CHECK(std::abs(unitary - std::abs(product)) < 1e-6);
  }
}

TEST_CASE("averaging: n=1 reduction, reproducibility, error shrinkage") {
  const auto sp = bismuth();
  AverageConfig cfg;
  cfg.bath.density = 5.04e19;
  cfg.bath.radius = 1.5e-6;
  cfg.transition = k147;
  cfg.b0 = 0.1;
  cfg.times = linspace_times(240.0, 81);
  cfg.mode = DecayMode::id_only;
  cfg.n_realizations = 1;
  cfg.seed = 9001;

  const auto single = average_decay(sp, cfg);
  const auto [iu, id] = transition_indices(sp, k147, cfg.b0);
  const auto bath = sample_bath(cfg.bath, sp, iu, id, cfg.seed);
  const auto direct = ensemble_decay(sp, k147, cfg.b0, bath, cfg.times, cfg.mode);
  for (std::size_t i = 0; i < cfg.times.size(); ++i)
    CHECK(single.value[i] == direct.value[i]);
  for (double se : single.stderr_) CHECK(se == 0.0);

  cfg.n_realizations = 100;
  const auto a100 = average_decay(sp, cfg);
  const auto b100 = average_decay(sp, cfg);
  for (std::size_t i = 0; i < cfg.times.size(); ++i) CHECK(a100.value[i] == b100.value[i]);

  cfg.n_realizations = 400;
  const auto a400 = average_decay(sp, cfg);

  // Standard error shrinks like 1/sqrt(n): ratio 2 +/- 0.5 at a point with
  // meaningful spread.
  std::size_t probe = 0;
  for (std::size_t i = 0; i < cfg.times.size(); ++i)
    if (a400.stderr_[i] > a400.stderr_[probe]) probe = i;
  const double ratio = a100.stderr_[probe] / a400.stderr_[probe];
  CHECK(ratio > 1.5);
  CHECK(ratio < 2.5);
}

TEST_CASE("working point suppresses instantaneous diffusion in the ensemble") {
  const auto sp = bismuth();
  const double b_owp = find_owps(sp, k147, 0.01, 0.3, 400).at(0).b;

  AverageConfig cfg;
  cfg.bath.density = 5.04e19;
  cfg.bath.radius = 1.5e-6;
  cfg.transition = k147;
  cfg.times = linspace_times(240.0, 81);
  cfg.mode = DecayMode::id_only;
  cfg.n_realizations = 60;
  cfg.seed = 77;

  cfg.b0 = 0.1;
  const auto generic = average_decay(sp, cfg);
  REQUIRE(generic.t2.has_value());

  cfg.b0 = b_owp;
  const auto at_owp = average_decay(sp, cfg);
  if (at_owp.t2.has_value())
    CHECK(*at_owp.t2 > *generic.t2);
  else
    CHECK(std::abs(at_owp.value.back()) > std::exp(-1.0));
}

TEST_CASE("decay CSV format") {
  DecayCurve c;
  c.times = {0.0, 1.0};
  c.value = {1.0, 0.5};
  c.stderr_ = {0.0, 0.01};
  c.n_realizations = 3;
  std::ostringstream os;
  write_decay_csv(os, c);
  CHECK(os.str() == "t_s,L_mean,L_stderr,n_realizations\n0,1,0,3\n1,0.5,0.01,3\n");
}

TEST_CASE("input validation") {
  const auto sp = bismuth();
  BathRealization empty;
  CHECK_THROWS_AS(ensemble_decay(sp, k147, 0.1, empty, {0.1, 0.2}, DecayMode::full),
                  std::invalid_argument);
  CHECK_THROWS_AS(ensemble_decay(sp, k147, 0.1, empty, {0.0, 0.0}, DecayMode::full),
                  std::invalid_argument);
  CHECK_THROWS_AS(decay_mode_from_string("bogus"), std::invalid_argument);
  CHECK(decay_mode_from_string("id_only") == DecayMode::id_only);
}
