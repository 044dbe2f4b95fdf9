#include "donorspin/donor_spin.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "donorspin/errors.hpp"
#include "donorspin/units.hpp"

namespace donorspin {

namespace {

// Row layout: m_s = +1/2 block first, m_I ascending (-I..I) inside a block.
int basis_row(int two_ms, int two_mi, int two_i) {
  const int k = (two_mi + two_i) / 2;
  return (two_ms > 0 ? 0 : two_i + 1) + k;
}

double ladder_factor(double j, double m_from) {
  // <j, m+1| J+ |j, m>
  return std::sqrt(j * (j + 1.0) - m_from * (m_from + 1.0));
}

}  // namespace

char branch_char(Branch b) {
  switch (b) {
    case Branch::plus: return '+';
    case Branch::minus: return '-';
    default: return 'u';
  }
}

ZeemanAmplitudes zeeman_amplitudes(const DoubletState& s) {
  switch (s.parity) {
    case Branch::plus: return {std::cos(0.5 * s.beta), std::sin(0.5 * s.beta)};
    case Branch::minus: return {-std::sin(0.5 * s.beta), std::cos(0.5 * s.beta)};
    default: return s.m > 0 ? ZeemanAmplitudes{1.0, 0.0} : ZeemanAmplitudes{0.0, 1.0};
  }
}

std::vector<ZeemanBasisState> zeeman_basis(const SpeciesParams& sp) {
  std::vector<ZeemanBasisState> basis(sp.dim());
  for (int two_ms : {+1, -1})
    for (int two_mi = -sp.two_I; two_mi <= sp.two_I; two_mi += 2)
      basis[basis_row(two_ms, two_mi, sp.two_I)] = {two_ms, two_mi};
  return basis;
}

Eigen::MatrixXd electron_sz(const SpeciesParams& sp) {
  const auto basis = zeeman_basis(sp);
  Eigen::MatrixXd m = Eigen::MatrixXd::Zero(sp.dim(), sp.dim());
  for (int i = 0; i < sp.dim(); ++i) m(i, i) = 0.5 * basis[i].two_ms;
  return m;
}

Eigen::MatrixXd electron_splus(const SpeciesParams& sp) {
  // S+ flips m_s -1/2 -> +1/2 with unit amplitude, leaving m_I alone.
  Eigen::MatrixXd m = Eigen::MatrixXd::Zero(sp.dim(), sp.dim());
  for (int two_mi = -sp.two_I; two_mi <= sp.two_I; two_mi += 2)
    m(basis_row(+1, two_mi, sp.two_I), basis_row(-1, two_mi, sp.two_I)) = 1.0;
  return m;
}

Eigen::MatrixXd electron_sx(const SpeciesParams& sp) {
  const Eigen::MatrixXd sp_ = electron_splus(sp);
  return 0.5 * (sp_ + sp_.transpose());
}

Eigen::MatrixXd build_hamiltonian(const SpeciesParams& sp, double b0) {
  sp.validate();
  if (!(b0 >= 0)) throw std::invalid_argument("build_hamiltonian: B0 must be >= 0");

  const int d = sp.dim();
  const int two_i = sp.two_I;
  const double i_spin = sp.spin();
  const double w0 = b0 * sp.gamma_e;
  const double a = sp.hyperfine;

  Eigen::MatrixXd h = Eigen::MatrixXd::Zero(d, d);
  for (const auto& b : zeeman_basis(sp)) {
    const double ms = 0.5 * b.two_ms;
    const double mi = 0.5 * b.two_mi;
    h(basis_row(b.two_ms, b.two_mi, two_i), basis_row(b.two_ms, b.two_mi, two_i)) =
        w0 * (ms - sp.delta * mi) + a * ms * mi;
  }
  // (A/2)(S+ I- + S- I+): couples |+1/2, m_I> with |-1/2, m_I + 1>.
  for (int two_mi = -two_i; two_mi <= two_i - 2; two_mi += 2) {
    const double mi = 0.5 * two_mi;
    const int up = basis_row(+1, two_mi, two_i);
    const int dn = basis_row(-1, two_mi + 2, two_i);
    const double v = 0.5 * a * ladder_factor(i_spin, mi);
    h(up, dn) = v;
    h(dn, up) = v;
  }
  return h;
}

DoubletState doublet_analytic(const SpeciesParams& sp, double b0, double m, Branch parity) {
  sp.validate();
  if (!(b0 >= 0)) throw std::invalid_argument("doublet_analytic: B0 must be >= 0");

  const double i_spin = sp.spin();
  const double two_m = 2.0 * m;
  const long two_m_int = std::lround(two_m);
  // m runs over the m_s + m_I lattice: 2m has the parity of 2I + 1.
  if (std::abs(two_m - static_cast<double>(two_m_int)) > 1e-9 ||
      ((two_m_int - (sp.two_I + 1)) % 2) != 0)
    throw std::domain_error("doublet_analytic: m is not a valid total projection");
  if (std::abs(m) > i_spin + 0.5 + 1e-12)
    throw std::domain_error("doublet_analytic: |m| exceeds I + 1/2");

  const double w0 = b0 * sp.gamma_e;
  const double a = sp.hyperfine;

  DoubletState st;
  st.m = 0.5 * static_cast<double>(two_m_int);

  if (std::lround(std::abs(two_m)) == sp.two_I + 1) {
    // Pure Zeeman state |m_s = sgn(m)/2, m_I = sgn(m) I>.
    const double sgn = m > 0 ? 1.0 : -1.0;
    st.parity = Branch::unmixed;
    st.beta = 0.0;
    st.P = sgn;
    st.energy = sgn * w0 * (0.5 - sp.delta * i_spin) + 0.5 * a * i_spin;
    return st;
  }

  if (parity == Branch::unmixed)
    throw std::domain_error("doublet_analytic: |m| < I + 1/2 states carry a +/- branch");

  const double x = i_spin * (i_spin + 1.0) - st.m * st.m + 0.25;
  const double z = st.m + (w0 / a) * (1.0 + sp.delta);
  const double r = std::sqrt(z * z + x);
  const double sign = parity == Branch::plus ? 1.0 : -1.0;

  st.parity = parity;
  st.beta = std::atan2(std::sqrt(x), z);
  st.energy = a * (-0.25 + sign * 0.5 * r) - sp.delta * w0 * st.m;
  st.P = sign * std::cos(st.beta);
  return st;
}

std::vector<DoubletState> analytic_levels(const SpeciesParams& sp, double b0) {
  std::vector<DoubletState> states;
  states.reserve(sp.dim());
  const double i_spin = sp.spin();
  states.push_back(doublet_analytic(sp, b0, -(i_spin + 0.5), Branch::unmixed));
  states.push_back(doublet_analytic(sp, b0, i_spin + 0.5, Branch::unmixed));
  for (int two_m = -(sp.two_I - 1); two_m <= sp.two_I - 1; two_m += 2) {
    states.push_back(doublet_analytic(sp, b0, 0.5 * two_m, Branch::plus));
    states.push_back(doublet_analytic(sp, b0, 0.5 * two_m, Branch::minus));
  }
  std::sort(states.begin(), states.end(),
            [](const DoubletState& a, const DoubletState& b) { return a.energy < b.energy; });
  for (int i = 0; i < static_cast<int>(states.size()); ++i) states[i].index = i + 1;
  return states;
}

double polarization(const DoubletState& s) { return s.P; }

Eigensystem eigensystem_numeric(const Eigen::MatrixXd& h, const SpeciesParams& sp, double b0) {
  sp.validate();
  if (h.rows() != sp.dim() || h.cols() != sp.dim())
    throw std::invalid_argument("eigensystem_numeric: matrix dimension mismatch");

  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> solver(h);
  if (solver.info() != Eigen::Success)
    throw numeric_error("eigensolver failed to converge", b0);

  Eigensystem es;
  es.species = sp;
  es.b0 = b0;
  es.basis = zeeman_basis(sp);
  es.vectors = solver.eigenvectors();

  const int d = sp.dim();
  const double support_tol = 1e-10;
  es.states.resize(d);
  for (int i = 0; i < d; ++i) {
    Eigen::VectorXd v = es.vectors.col(i);

    // Dominant component fixes m; with the conserved-m block structure the
    // vector has at most two nonzero components, |+1/2, m-1/2> and
    // |-1/2, m+1/2>.
    int dominant = 0;
    v.cwiseAbs().maxCoeff(&dominant);
    const double m = es.basis[dominant].m();

    double up = 0, down = 0;
    for (int r = 0; r < d; ++r) {
      if (std::abs(v[r]) <= support_tol) continue;
      if (es.basis[r].two_ms > 0)
        up = v[r];
      else
        down = v[r];
    }

    // P = 2 <S_z>, straight from the amplitudes.
    double p_direct = 0;
    for (int r = 0; r < d; ++r) p_direct += v[r] * v[r] * es.basis[r].two_ms;

    DoubletState st;
    st.m = m;
    st.energy = solver.eigenvalues()[i];
    st.index = i + 1;
    st.P = p_direct;

    if (up == 0.0 || down == 0.0) {
      const bool electron_up = up != 0.0;
      // Single-component state: unmixed when |m| = I + 1/2, otherwise a
      // doublet branch pinned at beta = 0 numerically.
      st.parity = (std::lround(2.0 * std::abs(m)) == sp.two_I + 1)
                      ? Branch::unmixed
                      : (electron_up ? Branch::plus : Branch::minus);
      st.beta = 0.0;
      if ((electron_up ? up : down) < 0) v = -v;
    } else {
      // Canonical sign: plus branch (cos, sin) has both components positive;
      // minus branch (-sin, cos) has the down component positive.
      const bool plus = up * down > 0;
      st.parity = plus ? Branch::plus : Branch::minus;
      if ((plus && up < 0) || (!plus && down < 0)) {
        v = -v;
        up = -up;
        down = -down;
      }
      st.beta = plus ? 2.0 * std::atan2(down, up) : 2.0 * std::atan2(-up, down);
    }
    es.vectors.col(i) = v;
    es.states[i] = st;
  }
  return es;
}

Eigensystem eigensystem_numeric(const SpeciesParams& sp, double b0) {
  return eigensystem_numeric(build_hamiltonian(sp, b0), sp, b0);
}

}  // namespace donorspin
