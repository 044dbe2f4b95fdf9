#include "donorspin/transitions.hpp"

#include <cmath>
#include <ostream>
#include <sstream>
#include <stdexcept>

#include "donorspin/csv.hpp"
#include "donorspin/errors.hpp"
#include "donorspin/units.hpp"

namespace donorspin {

namespace {

// Branch for classification purposes; the unmixed states behave like the
// +/- branch matching the sign of their electron projection.
Branch effective_branch(const DoubletState& s) {
  if (s.parity != Branch::unmixed) return s.parity;
  return s.m > 0 ? Branch::plus : Branch::minus;
}

long two_m(const DoubletState& s) { return std::lround(2.0 * s.m); }

std::string format_m(double m) {
  const long tm = std::lround(2.0 * m);
  std::ostringstream os;
  if (tm % 2 == 0)
    os << tm / 2;
  else
    os << tm << "/2";
  return os.str();
}

}  // namespace

std::string to_string(TransitionClass c) {
  switch (c) {
    case TransitionClass::allowed: return "allowed";
    case TransitionClass::nmr_type_forbidden: return "nmr_type_forbidden";
    case TransitionClass::fully_forbidden: return "fully_forbidden";
    default: return "dark";
  }
}

double transition_frequency(const DoubletState& u, const DoubletState& d) {
  if (!(u.energy > d.energy))
    throw std::domain_error("transition_frequency: states must be ordered E_u > E_d");
  return u.energy - d.energy;
}

double exchange_amplitude(const DoubletState& a, const DoubletState& b) {
  const long dm = two_m(a) - two_m(b);
  if (dm != 2 && dm != -2) return 0.0;
  const auto za = zeeman_amplitudes(a);
  const auto zb = zeeman_amplitudes(b);
  // One of <a|S+|b>, <a|S-|b> survives; its value is an up/down amplitude
  // product on the shared m_I component.
  const double elem = dm == 2 ? za.up * zb.down : za.down * zb.up;
  return elem * elem;
}

TransitionClass classify_pair(const DoubletState& u, const DoubletState& d) {
  const long dm = two_m(u) - two_m(d);
  if (dm != 2 && dm != -2)
    throw std::domain_error("classify_pair: |m_u - m_d| must be 1");
  const Branch bu = effective_branch(u);
  const Branch bd = effective_branch(d);
  if (bu == bd) return TransitionClass::nmr_type_forbidden;
  if (bu == Branch::plus && dm == 2) return TransitionClass::allowed;
  if (bu == Branch::plus && dm == -2) return TransitionClass::fully_forbidden;
  // A minus state above a plus state does not occur in the hyperfine-dominated
  // regime this library targets.
  throw std::domain_error("classify_pair: unexpected branch ordering (minus above plus)");
}

double flip_flop_amplitude(const Transition& t) {
  const double cu = std::cos(0.5 * t.u.beta), su = std::sin(0.5 * t.u.beta);
  const double cd = std::cos(0.5 * t.d.beta), sd = std::sin(0.5 * t.d.beta);
  switch (t.cls) {
    case TransitionClass::allowed: return cu * cu * cd * cd;
    case TransitionClass::nmr_type_forbidden: return cu * cu * sd * sd;
    case TransitionClass::fully_forbidden: return su * su * sd * sd;
    default: throw std::domain_error("flip_flop_amplitude: dark transition");
  }
}

std::vector<Transition> enumerate_transitions(const Eigensystem& es) {
  const Eigen::MatrixXd sx = electron_sx(es.species);
  std::vector<Transition> out;
  const int d = es.dim();
  out.reserve(4 * d);
  for (int lo = 0; lo < d; ++lo) {
    for (int hi = lo + 1; hi < d; ++hi) {
      const DoubletState& su = es.states[hi];
      const DoubletState& sd = es.states[lo];
      const long dm = two_m(su) - two_m(sd);
      if (dm != 2 && dm != -2) continue;

      Transition t;
      t.u = su;
      t.d = sd;
      t.freq = su.energy - sd.energy;
      const double elem = es.vectors.col(hi).dot(sx * es.vectors.col(lo));
      t.strength = elem * elem;
      if (t.strength < kDarkStrengthThreshold) {
        t.cls = TransitionClass::dark;
        t.rho = 0.0;
      } else {
        t.cls = classify_pair(su, sd);
        t.rho = flip_flop_amplitude(t);
      }
      out.push_back(t);
    }
  }
  return out;
}

TransitionPoint transition_at(const SpeciesParams& sp, const TransitionSpec& spec, double b0) {
  TransitionPoint p;
  p.u = doublet_analytic(sp, b0, spec.m_u, spec.p_u);
  p.d = doublet_analytic(sp, b0, spec.m_d, spec.p_d);
  if (!(p.u.energy > p.d.energy))
    throw std::domain_error("transition_at: selected pair is not energy ordered at this field");
  p.freq = p.u.energy - p.d.energy;

  const auto za = zeeman_amplitudes(p.u);
  const auto zb = zeeman_amplitudes(p.d);
  const long dm = two_m(p.u) - two_m(p.d);
  const double elem = dm == 2 ? 0.5 * za.up * zb.down : (dm == -2 ? 0.5 * za.down * zb.up : 0.0);
  p.strength = elem * elem;
  if (p.strength < kDarkStrengthThreshold) {
    p.cls = TransitionClass::dark;
    p.rho = 0.0;
  } else {
    p.cls = classify_pair(p.u, p.d);
    Transition t;
    t.u = p.u;
    t.d = p.d;
    t.cls = p.cls;
    p.rho = flip_flop_amplitude(t);
  }
  return p;
}

std::string state_label(const DoubletState& s) {
  std::ostringstream os;
  os << '(' << branch_char(s.parity) << ',' << format_m(s.m) << ')';
  return os.str();
}

std::string spec_label(const TransitionSpec& spec) {
  DoubletState u, d;
  u.parity = spec.p_u;
  u.m = spec.m_u;
  d.parity = spec.p_d;
  d.m = spec.m_d;
  return state_label(u) + "/" + state_label(d);
}

std::pair<int, int> transition_indices(const SpeciesParams& sp, const TransitionSpec& spec,
                                       double b0) {
  const auto levels = analytic_levels(sp, b0);
  int iu = 0, id = 0;
  for (const auto& st : levels) {
    if (two_m(st) == std::lround(2.0 * spec.m_u) && st.parity == spec.p_u) iu = st.index;
    if (two_m(st) == std::lround(2.0 * spec.m_d) && st.parity == spec.p_d) id = st.index;
  }
  return {iu, id};
}

std::string valid_transition_list(const SpeciesParams& sp, double b0) {
  const auto es = eigensystem_numeric(sp, b0);
  const auto ts = enumerate_transitions(es);
  std::ostringstream os;
  for (const auto& t : ts) {
    os << "  " << t.u.index << "," << t.d.index << "  " << state_label(t.u) << "->"
       << state_label(t.d) << "  class=" << to_string(t.cls)
       << "  f_MHz=" << angular_to_mhz(t.freq) << "\n";
  }
  return os.str();
}

namespace {

Branch parse_branch(char c) {
  switch (c) {
    case '+': return Branch::plus;
    case '-': return Branch::minus;
    case 'u': case 'U': case '0': return Branch::unmixed;
    default: throw std::invalid_argument(std::string("invalid branch character '") + c + "'");
  }
}

double parse_m(const std::string& text) {
  const auto slash = text.find('/');
  if (slash != std::string::npos)
    return std::stod(text.substr(0, slash)) / std::stod(text.substr(slash + 1));
  return std::stod(text);
}

// "(+,-1)" -> (branch, m)
std::pair<Branch, double> parse_state_token(std::string tok) {
  if (tok.size() < 5 || tok.front() != '(' || tok.back() != ')')
    throw std::invalid_argument("invalid state token '" + tok + "'");
  tok = tok.substr(1, tok.size() - 2);
  const auto comma = tok.find(',');
  if (comma == std::string::npos || comma == 0)
    throw std::invalid_argument("invalid state token");
  const Branch b = parse_branch(tok[0]);
  return {b, parse_m(tok.substr(comma + 1))};
}

}  // namespace

TransitionSpec resolve_transition(const SpeciesParams& sp, const std::string& selector,
                                  double b_ref) {
  const auto fail = [&](const std::string& why) {
    throw unknown_transition_error("unknown transition selector '" + selector + "': " + why,
                                   valid_transition_list(sp, b_ref));
  };

  const auto levels = analytic_levels(sp, b_ref);
  DoubletState a, b;
  try {
    if (selector.find('(') != std::string::npos) {
      const auto sep = selector.find('/');
      if (sep == std::string::npos) throw std::invalid_argument("expected '(..)/(..)'");
      auto [pa, ma] = parse_state_token(selector.substr(0, sep));
      auto [pb, mb] = parse_state_token(selector.substr(sep + 1));
      // The unmixed states are unambiguous in m; accept any branch token.
      auto find_state = [&](Branch p, double m) -> DoubletState {
        for (const auto& st : levels) {
          if (std::lround(2.0 * st.m) != std::lround(2.0 * m)) continue;
          if (st.parity == p || st.parity == Branch::unmixed) return st;
        }
        throw std::invalid_argument("no state (" + std::string(1, branch_char(p)) + "," +
                                    format_m(m) + ")");
      };
      a = find_state(pa, ma);
      b = find_state(pb, mb);
    } else {
      const auto comma = selector.find(',');
      if (comma == std::string::npos) throw std::invalid_argument("expected 'IDX,IDX'");
      const int ia = std::stoi(selector.substr(0, comma));
      const int ib = std::stoi(selector.substr(comma + 1));
      if (ia < 1 || ia > sp.dim() || ib < 1 || ib > sp.dim() || ia == ib)
        throw std::invalid_argument("indices must be distinct and in 1..d");
      a = levels[ia - 1];
      b = levels[ib - 1];
    }
  } catch (const std::exception& e) {
    fail(e.what());
  }

  if (a.energy < b.energy) std::swap(a, b);
  if (std::abs(two_m(a) - two_m(b)) != 2)
    fail("states differ by |m_u - m_d| != 1, no driving matrix element");

  return TransitionSpec{a.m, a.parity, b.m, b.parity};
}

void write_transitions_csv(std::ostream& os, const Eigensystem& es,
                           const std::vector<Transition>& ts, bool header) {
  CsvWriter w(os);
  if (header)
    w.header({"B0_T", "idx_u", "idx_d", "m_u", "m_d", "class", "freq_MHz", "P_u", "P_d", "rho",
              "strength"});
  for (const auto& t : ts) {
    w.begin_row();
    w.field(es.b0);
    w.field(t.u.index);
    w.field(t.d.index);
    w.field(t.u.m);
    w.field(t.d.m);
    w.field(to_string(t.cls));
    w.field(angular_to_mhz(t.freq));
    w.field(t.u.P);
    w.field(t.d.P);
    w.field(t.rho);
    w.field(t.strength);
    w.end_row();
  }
}

}  // namespace donorspin
