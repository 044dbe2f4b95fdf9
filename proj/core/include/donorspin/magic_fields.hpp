#pragma once

#include <functional>
#include <iosfwd>
#include <optional>
#include <utility>
#include <vector>

#include "donorspin/transitions.hpp"

namespace donorspin {

enum class RootKind { drp, owp, grazing };

std::string to_string(RootKind k);

// A located working point of a transition.
struct FieldRoot {
  double b = 0;  // Tesla
  RootKind kind = RootKind::drp;
  TransitionSpec transition;
  std::pair<int, int> indices{0, 0};  // ascending-energy labels at b
  double residual = 0;                // objective value at b
  std::pair<double, double> bracket{0, 0};
};

// Refocusing objective  phi = (P_u - P_d)^2 - 2 rho  (class-form rho).
// A Hahn echo cancels the full pair dipolar evolution where phi = 0.
// Throws std::domain_error if the transition is dark at b0.
double drp_objective(const SpeciesParams& sp, const TransitionSpec& t, double b0);

// Working-point objective  P_u - P_d  (zero where diagonal dephasing dies).
double owp_objective(const SpeciesParams& sp, const TransitionSpec& t, double b0);

// Pure form of the refocusing objective.
inline double drp_phi(double p_u, double p_d, double rho) {
  const double dp = p_u - p_d;
  return dp * dp - 2.0 * rho;
}

// Residual tolerance every reported root satisfies.
inline constexpr double kRootResidualTol = 1e-10;
// Field resolution of the refined bracket.
inline constexpr double kRootFieldTol = 1e-7;
// |phi| at a sign-preserving grid minimum below which a grazing contact is
// reported (two roots of a transition can merge as parameters vary).
inline constexpr double kGrazingTol = 1e-12;

// Default scan range (Tesla): below ~5 mT the lines leave the microwave
// regime of interest, above ~0.3 T the mixing is weak.
inline constexpr double kDefaultScanLo = 0.005;
inline constexpr double kDefaultScanHi = 0.3;
inline constexpr int kDefaultGridN = 400;

// Scans the objective on a uniform grid of grid_n points (>= 100), brackets
// every sign change, and refines each bracket by bisection finished with
// secant steps until |objective| < 1e-10 and the bracket is narrower than
// 1e-7 T. Roots return sorted ascending in B; an empty result means no sign
// change. Grid minima with |phi| < 1e-12 and no sign change are reported
// with kind = grazing.
std::vector<FieldRoot> find_drps(const SpeciesParams& sp, const TransitionSpec& t,
                                 double b_lo, double b_hi, int grid_n = kDefaultGridN);

std::vector<FieldRoot> find_owps(const SpeciesParams& sp, const TransitionSpec& t,
                                 double b_lo, double b_hi, int grid_n = kDefaultGridN);

// The scan/bracket/refine engine underneath find_drps and find_owps, usable
// with any scalar objective of the field. Returned roots carry no transition
// identity.
std::vector<FieldRoot> scan_for_roots(const std::function<double(double)>& objective,
                                      double b_lo, double b_hi, int grid_n, RootKind kind);

// One grid point of a scan, as exported to CSV.
struct ScanPoint {
  double b = 0;
  double phi = 0;
  double p_u_minus_p_d = 0;
  double rho = 0;
};

std::vector<ScanPoint> scan_transition(const SpeciesParams& sp, const TransitionSpec& t,
                                       double b_lo, double b_hi, int grid_n);

// CSV "B0_T,phi,Pu_minus_Pd,rho".
void write_scan_csv(std::ostream& os, const std::vector<ScanPoint>& pts, bool header = true);
// CSV "transition,kind,B_T,residual".
void write_roots_csv(std::ostream& os, const std::vector<FieldRoot>& roots, bool header = true);

// Generic bracketed scalar root refinement (bisection + secant polish).
// Requires f(lo) and f(hi) of opposite sign. Returns the abscissa; fills
// residual and the final bracket if requested.
double refine_bracketed_root(const std::function<double(double)>& f, double lo, double hi,
                             double f_lo, double f_hi, double x_tol,
                             double* residual = nullptr,
                             std::pair<double, double>* bracket = nullptr);

}  // namespace donorspin
