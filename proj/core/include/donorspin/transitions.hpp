#pragma once

#include <iosfwd>
#include <string>
#include <vector>

#include "donorspin/donor_spin.hpp"

namespace donorspin {

// Microwave transition classes. `allowed` lines keep their strength at all
// fields; the two forbidden classes gain strength only through hyperfine
// mixing: one becomes a pure nuclear (NMR) transition at high field, the
// other vanishes entirely there. `dark` marks pairs whose driving matrix
// element is numerically zero at the evaluated field.
enum class TransitionClass { allowed, nmr_type_forbidden, fully_forbidden, dark };

std::string to_string(TransitionClass c);

// Ordered state pair with E_u > E_d.
struct Transition {
  DoubletState u;
  DoubletState d;
  TransitionClass cls = TransitionClass::dark;
  double freq = 0;      // E_u - E_d, rad/s
  double rho = 0;       // flip-flop amplitude, dimensionless >= 0
  double strength = 0;  // squared ESR (S_x) matrix element
};

// Field-independent identity of a transition, by (m, branch) of both states.
struct TransitionSpec {
  double m_u = 0;
  Branch p_u = Branch::unmixed;
  double m_d = 0;
  Branch p_d = Branch::unmixed;
};

// Squared matrix-element threshold below which a pair is reported dark.
inline constexpr double kDarkStrengthThreshold = 1e-12;

// All ordered pairs with |m_u - m_d| = 1 (the only pairs whose Zeeman
// components can satisfy the ESR selection rules m_s' - m_s = +/-1,
// m_I' = m_I), annotated with class, strength from the raw eigenvectors,
// frequency, and the class-form flip-flop amplitude.
std::vector<Transition> enumerate_transitions(const Eigensystem& es);

// E_u - E_d; throws std::domain_error unless E_u > E_d.
double transition_frequency(const DoubletState& u, const DoubletState& d);

// Class-dispatched flip-flop amplitude rho = <ud|S1+ S2- + S1- S2+|du>:
//   allowed            cos^2(beta_u/2) cos^2(beta_d/2)
//   nmr_type_forbidden cos^2(beta_u/2) sin^2(beta_d/2)
//   fully_forbidden    sin^2(beta_u/2) sin^2(beta_d/2)
// Throws std::domain_error for dark transitions.
double flip_flop_amplitude(const Transition& t);

// General two-donor exchange amplitude <ab|S1+ S2- + S1- S2+|ba> for any
// state pair, from the Zeeman amplitudes; zero unless |m_a - m_b| = 1.
double exchange_amplitude(const DoubletState& a, const DoubletState& b);

// Classification from the (m, branch) pattern of an energy-ordered pair.
// Requires |m_u - m_d| = 1.
TransitionClass classify_pair(const DoubletState& u, const DoubletState& d);

// --- analytic path (no dense solve), used by field scans ------------------

// The same transition evaluated from the closed-form doublets at B0.
struct TransitionPoint {
  DoubletState u;
  DoubletState d;
  TransitionClass cls = TransitionClass::dark;
  double freq = 0;
  double rho = 0;
  double strength = 0;  // from the closed-form amplitudes
};

TransitionPoint transition_at(const SpeciesParams& sp, const TransitionSpec& spec, double b0);

// Resolves a CLI selector to a TransitionSpec using the ascending-energy
// labels at the reference field. Accepts "14,7" (indices) or
// "(+,-1)/(-,-2)" (branch and m; branch in {+,-,u}, m as "-1" or "-9/2").
// Throws unknown_transition_error with the list of valid transitions.
TransitionSpec resolve_transition(const SpeciesParams& sp, const std::string& selector,
                                  double b_ref);

// Ascending-energy indices of the two states at the given field.
std::pair<int, int> transition_indices(const SpeciesParams& sp, const TransitionSpec& spec,
                                       double b0);

// "(+,-1)" style label for one state.
std::string state_label(const DoubletState& s);
std::string spec_label(const TransitionSpec& spec);

// One line per valid transition at the field ("12->9 class=... f=... MHz").
std::string valid_transition_list(const SpeciesParams& sp, double b0);

// CSV rows "B0_T,idx_u,idx_d,m_u,m_d,class,freq_MHz,P_u,P_d,rho,strength".
void write_transitions_csv(std::ostream& os, const Eigensystem& es,
                           const std::vector<Transition>& ts, bool header = true);

}  // namespace donorspin
