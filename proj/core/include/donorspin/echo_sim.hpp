#pragma once

#include <Eigen/Dense>
#include <complex>

#include "donorspin/transitions.hpp"

namespace donorspin {

// Pure state of two resonantly driven donors restricted to the pseudo-spin
// pair space, amplitudes over the ordered basis (|uu>, |ud>, |du>, |dd>).
struct PairState {
  Eigen::Vector4cd amps = Eigen::Vector4cd::Zero();

  double norm() const { return amps.norm(); }

  static PairState uu();
  static PairState ud();
  static PairState du();
  static PairState dd();
  // Normalized triplet/singlet combinations of the pseudo-spin pair.
  static PairState triplet_plus();   // |uu>
  static PairState triplet_zero();   // (|ud> + |du>)/sqrt2
  static PairState triplet_minus();  // |dd>
  static PairState singlet_zero();   // (|ud> - |du>)/sqrt2
};

// H0 + dipolar coupling of the pair, in the (uu, ud, du, dd) basis:
//   diag( 2E_u + (J/4)P_u^2,
//         E_u + E_d + (J/4)P_u P_d,
//         E_u + E_d + (J/4)P_u P_d,
//         2E_d + (J/4)P_d^2 )
// with off-diagonal -(J/4) rho between |ud> and |du>. The sign of the
// off-diagonal element only swaps which of the S0/T0 combinations shifts up;
// every observable below is even in it.
struct PairHamiltonian {
  double j = 0;  // dipolar coupling strength, rad/s
  double p_u = 0;
  double p_d = 0;
  double rho = 0;
  double e_u = 0;  // rad/s
  double e_d = 0;

  Eigen::Matrix4cd matrix() const;
};

// Pair Hamiltonian for a transition at a field, with rho from its class form.
PairHamiltonian pair_hamiltonian(const SpeciesParams& sp, const TransitionSpec& t, double b0,
                                 double j);

enum class Axis { x, y };

// exp(-iHt) applied through the closed-form block structure: |uu> and |dd>
// are stationary phases, the ud/du block is a rotation at rate (J/4) rho.
// The common phase exp(-i(E_u+E_d)t) is applied as one factor so that the
// relative phases inside the triplet/singlet manifold never pass through a
// large-argument cancellation.
PairState evolve(const PairState& s, const PairHamiltonian& h, double t);

// Ideal instantaneous collective rotation R(axis, angle) x R(axis, angle)
// acting in each donor's {u, d} pseudo-spin space. angle must be pi/2 or pi
// (std::domain_error otherwise). Convention: R_y(pi/2)|u> = (|u>-|d>)/sqrt2,
// R_y(pi/2)|d> = (|u>+|d>)/sqrt2; pi pulses are exact sign/swap maps.
PairState apply_pulse(const PairState& s, Axis axis, double angle);

// (pi/2)_y - tau - (pi)_axis - tau - (pi/2)_y applied to `initial`.
PairState hahn_echo(const PairState& initial, const PairHamiltonian& h, double tau,
                    Axis pi_axis = Axis::y);

// |<ud| hahn_echo(|ud>) |^2 for the pair built from a transition at b0.
double refocus_fidelity(const SpeciesParams& sp, const TransitionSpec& t, double b0, double j,
                        double tau, Axis pi_axis = Axis::y);

// Entanglement monotone 2|ad - bc| of a normalized pure pair state.
double concurrence(const PairState& s);

}  // namespace donorspin
