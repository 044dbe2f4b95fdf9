#include "donorspin/magic_fields.hpp"

#include <cmath>
#include <limits>
#include <ostream>
#include <stdexcept>

#include "donorspin/csv.hpp"
#include "donorspin/errors.hpp"

namespace donorspin {

std::string to_string(RootKind k) {
  switch (k) {
    case RootKind::drp: return "DRP";
    case RootKind::owp: return "OWP";
    default: return "grazing";
  }
}

double drp_objective(const SpeciesParams& sp, const TransitionSpec& t, double b0) {
  const TransitionPoint p = transition_at(sp, t, b0);
  if (p.cls == TransitionClass::dark)
    throw std::domain_error("drp_objective: transition is dark at this field");
  return drp_phi(p.u.P, p.d.P, p.rho);
}

double owp_objective(const SpeciesParams& sp, const TransitionSpec& t, double b0) {
  const TransitionPoint p = transition_at(sp, t, b0);
  return p.u.P - p.d.P;
}

double refine_bracketed_root(const std::function<double(double)>& f, double lo, double hi,
                             double f_lo, double f_hi, double x_tol, double* residual,
                             std::pair<double, double>* bracket) {
  if (!(lo < hi)) throw std::invalid_argument("refine_bracketed_root: empty interval");
  if (f_lo == 0.0) {
    if (residual) *residual = 0.0;
    if (bracket) *bracket = {lo, hi};
    return lo;
  }
  if (f_hi == 0.0) {
    if (residual) *residual = 0.0;
    if (bracket) *bracket = {lo, hi};
    return hi;
  }
  if ((f_lo < 0) == (f_hi < 0))
    throw std::invalid_argument("refine_bracketed_root: no sign change in bracket");

  // Bisect essentially to machine resolution; the objective is cheap.
  const double eps_width = [&] {
    const double scale = std::max(std::abs(lo), std::abs(hi));
    return std::max(4.0 * std::numeric_limits<double>::epsilon() * scale, 1e-15);
  }();
  double a = lo, b = hi, fa = f_lo, fb = f_hi;
  while (b - a > eps_width) {
    const double mid = 0.5 * (a + b);
    if (mid <= a || mid >= b) break;
    const double fm = f(mid);
    if (fm == 0.0) {
      a = b = mid;
      fa = fb = 0.0;
      break;
    }
    if ((fm < 0) == (fa < 0)) {
      a = mid;
      fa = fm;
    } else {
      b = mid;
      fb = fm;
    }
  }

  double best_x = std::abs(fa) <= std::abs(fb) ? a : b;
  double best_f = std::abs(fa) <= std::abs(fb) ? fa : fb;

  // Secant polish inside the original bracket.
  double x0 = a, f0 = fa, x1 = b, f1 = fb;
  for (int it = 0; it < 8 && f1 != f0; ++it) {
    const double x2 = x1 - f1 * (x1 - x0) / (f1 - f0);
    if (!(x2 >= lo && x2 <= hi)) break;
    const double f2 = f(x2);
    if (std::abs(f2) < std::abs(best_f)) {
      best_f = f2;
      best_x = x2;
    }
    x0 = x1;
    f0 = f1;
    x1 = x2;
    f1 = f2;
    if (f2 == 0.0) break;
  }

  (void)x_tol;  // the bisection above already exceeds any requested tolerance
  if (residual) *residual = best_f;
  if (bracket) *bracket = {a, b};
  return best_x;
}

std::vector<FieldRoot> scan_for_roots(const std::function<double(double)>& objective,
                                      double b_lo, double b_hi, int grid_n, RootKind kind) {
  if (!(b_lo > 0) || !(b_hi > b_lo))
    throw std::invalid_argument("scan_for_roots: need 0 < B_lo < B_hi");
  if (grid_n < 100) throw std::invalid_argument("scan_for_roots: grid_n must be >= 100");

  std::vector<double> bs(grid_n), fs(grid_n);
  const double step = (b_hi - b_lo) / (grid_n - 1);
  for (int k = 0; k < grid_n; ++k) {
    bs[k] = b_lo + k * step;
    fs[k] = objective(bs[k]);
  }

  std::vector<FieldRoot> roots;
  for (int k = 0; k + 1 < grid_n; ++k) {
    const bool crossing = (fs[k] == 0.0) || ((fs[k] < 0) != (fs[k + 1] < 0));
    if (!crossing) continue;
    if (fs[k + 1] == 0.0 && k + 2 < grid_n) continue;  // credited to the next cell

    FieldRoot r;
    r.kind = kind;
    r.b = refine_bracketed_root(objective, bs[k], bs[k + 1], fs[k], fs[k + 1], kRootFieldTol,
                                &r.residual, &r.bracket);
    if (std::abs(r.residual) > kRootResidualTol)
      throw numeric_error("root refinement stalled above the residual tolerance", r.b);
    roots.push_back(r);
  }

  // Sign-preserving grazing contacts at interior grid minima of |f|.
  for (int k = 1; k + 1 < grid_n; ++k) {
    if (fs[k] == 0.0) continue;  // a true root, already bracketed
    if (std::abs(fs[k]) < kGrazingTol && std::abs(fs[k]) <= std::abs(fs[k - 1]) &&
        std::abs(fs[k]) <= std::abs(fs[k + 1]) && (fs[k - 1] < 0) == (fs[k] < 0) &&
        (fs[k] < 0) == (fs[k + 1] < 0)) {
      FieldRoot r;
      r.kind = RootKind::grazing;
      r.b = bs[k];
      r.residual = fs[k];
      r.bracket = {bs[k - 1], bs[k + 1]};
      roots.push_back(r);
    }
  }

  std::sort(roots.begin(), roots.end(),
            [](const FieldRoot& a, const FieldRoot& b) { return a.b < b.b; });
  return roots;
}

namespace {

std::vector<FieldRoot> find_roots(const SpeciesParams& sp, const TransitionSpec& t, double b_lo,
                                  double b_hi, int grid_n, RootKind kind) {
  const auto objective = [&](double b) {
    return kind == RootKind::owp ? owp_objective(sp, t, b) : drp_objective(sp, t, b);
  };
  auto roots = scan_for_roots(objective, b_lo, b_hi, grid_n, kind);
  for (auto& r : roots) {
    r.transition = t;
    r.indices = transition_indices(sp, t, r.b);
  }
  return roots;
}

}  // namespace

std::vector<FieldRoot> find_drps(const SpeciesParams& sp, const TransitionSpec& t, double b_lo,
                                 double b_hi, int grid_n) {
  return find_roots(sp, t, b_lo, b_hi, grid_n, RootKind::drp);
}

std::vector<FieldRoot> find_owps(const SpeciesParams& sp, const TransitionSpec& t, double b_lo,
                                 double b_hi, int grid_n) {
  return find_roots(sp, t, b_lo, b_hi, grid_n, RootKind::owp);
}

std::vector<ScanPoint> scan_transition(const SpeciesParams& sp, const TransitionSpec& t,
                                       double b_lo, double b_hi, int grid_n) {
  if (!(b_lo > 0) || !(b_hi > b_lo) || grid_n < 2)
    throw std::invalid_argument("scan_transition: invalid range or grid");
  std::vector<ScanPoint> pts(grid_n);
  const double step = (b_hi - b_lo) / (grid_n - 1);
  for (int k = 0; k < grid_n; ++k) {
    const double b = b_lo + k * step;
    const TransitionPoint p = transition_at(sp, t, b);
    pts[k] = {b, drp_phi(p.u.P, p.d.P, p.rho), p.u.P - p.d.P, p.rho};
  }
  return pts;
}

void write_scan_csv(std::ostream& os, const std::vector<ScanPoint>& pts, bool header) {
  CsvWriter w(os);
  if (header) w.header({"B0_T", "phi", "Pu_minus_Pd", "rho"});
  for (const auto& p : pts) {
    w.begin_row();
    w.field(p.b);
    w.field(p.phi);
    w.field(p.p_u_minus_p_d);
    w.field(p.rho);
    w.end_row();
  }
}

void write_roots_csv(std::ostream& os, const std::vector<FieldRoot>& roots, bool header) {
  CsvWriter w(os);
  if (header) w.header({"transition", "kind", "B_T", "residual"});
  for (const auto& r : roots) {
    w.begin_row();
    w.field(std::to_string(r.indices.first) + "->" + std::to_string(r.indices.second));
    w.field(to_string(r.kind));
    w.field(r.b);
    w.field(r.residual);
    w.end_row();
  }
}

}  // namespace donorspin
