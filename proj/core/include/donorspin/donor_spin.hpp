#pragma once

#include <Eigen/Dense>
#include <vector>

#include "donorspin/species.hpp"

namespace donorspin {

// Eigenstate branch within a constant-m doublet. States with |m| = I + 1/2
// have a single Zeeman component and carry no branch label.
enum class Branch { plus, minus, unmixed };

char branch_char(Branch b);  // '+', '-', 'u'

// One eigenstate of the single-donor Hamiltonian.
//
// Conventions: `beta` is the doublet rotation angle in [0, pi] shared by the
// two branches of a doublet (and 0 exactly for the unmixed states). The
// polarization is signed per branch: P = +cos(beta) on `plus`, -cos(beta) on
// `minus`, and +/-1 on the unmixed states. P = 2<S_z> always.
struct DoubletState {
  double m = 0;  // total projection m_s + m_I (conserved)
  Branch parity = Branch::unmixed;
  double beta = 0;    // rad
  double energy = 0;  // rad/s
  double P = 0;       // dimensionless, in [-1, 1]
  int index = 0;      // 1..d by ascending energy; 0 when unassigned
};

// Amplitudes of a state over its Zeeman pair (|+1/2, m-1/2>, |-1/2, m+1/2>).
// Unmixed states have a single component.
struct ZeemanAmplitudes {
  double up = 0;    // coefficient of |m_s=+1/2, m_I=m-1/2>
  double down = 0;  // coefficient of |m_s=-1/2, m_I=m+1/2>
};
ZeemanAmplitudes zeeman_amplitudes(const DoubletState& s);

// Product-basis label |m_s, m_I> stored as doubled integers.
struct ZeemanBasisState {
  int two_ms = 0;
  int two_mi = 0;
  double m() const { return 0.5 * (two_ms + two_mi); }
};

// Zeeman product basis in the row order used by build_hamiltonian:
// m_s = +1/2 block first, m_I ascending within each block.
std::vector<ZeemanBasisState> zeeman_basis(const SpeciesParams& sp);

// d x d electron-spin operator matrices in that basis (S_z, S_x).
Eigen::MatrixXd electron_sz(const SpeciesParams& sp);
Eigen::MatrixXd electron_sx(const SpeciesParams& sp);
Eigen::MatrixXd electron_splus(const SpeciesParams& sp);

// Single-donor Hamiltonian at field B0 (Tesla):
//   H = w0 (S_z - delta I_z) + A I.S,   w0 = B0 gamma_e,
// real symmetric and block diagonal in m = m_s + m_I (blocks of size <= 2).
Eigen::MatrixXd build_hamiltonian(const SpeciesParams& sp, double b0);

// Full mixed eigenstructure at one field.
struct Eigensystem {
  SpeciesParams species;
  double b0 = 0;
  std::vector<DoubletState> states;  // ascending energy, index 1..d
  Eigen::MatrixXd vectors;           // column i-1 = amplitudes of state i
  std::vector<ZeemanBasisState> basis;

  const DoubletState& state(int index1) const { return states.at(index1 - 1); }
  int dim() const { return static_cast<int>(states.size()); }
};

// Dense orthonormal eigendecomposition of H. States are sorted ascending in
// energy, annotated with (m, branch, beta, P) recovered from the eigenvector
// amplitudes. Throws numeric_error if the solver fails. Exactly at B0 = 0 the
// zero-field manifolds are degenerate and the solver may mix m labels within
// a manifold; energies and orthonormality are unaffected.
Eigensystem eigensystem_numeric(const Eigen::MatrixXd& h, const SpeciesParams& sp, double b0);

// Convenience: build + diagonalize.
Eigensystem eigensystem_numeric(const SpeciesParams& sp, double b0);

// Closed-form eigenstate of the constant-m doublet structure.
//
// For |m| <= I - 1/2 the two branches are rotations of the Zeeman pair by
//   beta_m = atan2(sqrt(X_m), Z_m),
//   X_m = I(I+1) - m^2 + 1/4,   Z_m = m + (w0/A)(1 + delta),
// with energies  -A/4 - delta w0 m +/- (A/2) sqrt(Z_m^2 + X_m).
// For |m| = I + 1/2 the state is a pure Zeeman state (beta = 0).
// Throws std::domain_error for |m| > I + 1/2 or an m not matching the
// species' projection lattice.
DoubletState doublet_analytic(const SpeciesParams& sp, double b0, double m, Branch parity);

// All d analytic states at one field, sorted ascending in energy with
// indices 1..d assigned.
std::vector<DoubletState> analytic_levels(const SpeciesParams& sp, double b0);

// P = 2<S_z> = cos(beta) with the branch sign.
double polarization(const DoubletState& s);

}  // namespace donorspin
