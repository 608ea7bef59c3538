#include "driftkit/theorems.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <sstream>

#include "driftkit/error.hpp"
#include "driftkit/oracle.hpp"
#include "driftkit/special.hpp"

namespace driftkit {

namespace {

constexpr double kSlack = 1e-12;

std::string fmt(double v) {
  std::ostringstream os;
  os.precision(12);
  os << v;
  return os.str();
}

bool geq(double a, double b) { return a >= b - kSlack * std::max(std::abs(a), std::abs(b)); }
bool leq(double a, double b) { return geq(b, a); }

std::string state_witness(const MarkovChain& chain, std::size_t s) {
  return "state " + std::to_string(s) + " (label " + fmt(chain.label(s)) + ")";
}

void require_positive(double v, const char* name) {
  if (!(v > 0.0) || !std::isfinite(v)) throw ParameterError(std::string(name) + " must be positive and finite");
}

// Targets are exactly the label-0 states; non-target labels lie in [x_min, x_max].
void check_layout(const MarkovChain& chain, double x_min, double x_max) {
  for (std::size_t s = 0; s < chain.size(); ++s) {
    const double x = chain.label(s);
    if (chain.is_target(s)) {
      if (x != 0.0) throw PreconditionError("target states must have label 0", state_witness(chain, s));
    } else if (x < x_min || x > x_max) {
      throw PreconditionError("non-target label outside [" + fmt(x_min) + ", " + fmt(x_max) + "]",
                              state_witness(chain, s));
    }
  }
}

void check_monotone_h(const HSpec& h, bool asserted) {
  if (asserted) return;
  if (auto w = h.monotonicity_violation()) {
    throw PreconditionError("h is not monotone increasing", "h(" + fmt(w->first) + ") > h(" + fmt(w->second) + ")");
  }
}

void check_no_upward(const MarkovChain& chain) {
  for (std::size_t s = 0; s < chain.size(); ++s) {
    if (chain.is_target(s)) continue;
    for (const auto& t : chain.row(s)) {
      if (chain.label(t.to) > chain.label(s)) {
        throw PreconditionError("process moves upward", state_witness(chain, s) + " -> " + state_witness(chain, t.to));
      }
    }
  }
}

double g_at(const PotentialFunction& g, double x0) {
  if (x0 < 0.0) throw ParameterError("X0 must be non-negative");
  return g(x0);
}

// Levels of a monotone chain: level 1 holds the largest non-target label.
struct Levels {
  int m = 0;
  std::vector<int> of_state;                  // 1-based level per state
  std::vector<std::vector<double>> max_prob;  // [i-1][j-1] = max_{x in A_i} P(x -> A_j)
  std::vector<double> min_leave;              // [i-1] = min_{x in A_i} P(x leaves A_i upward)
};

Levels levels_of(const MarkovChain& chain) {
  check_layout(chain, 0.0, std::numeric_limits<double>::infinity());
  check_no_upward(chain);
  std::vector<double> distinct;
  for (std::size_t s = 0; s < chain.size(); ++s) {
    if (!chain.is_target(s)) distinct.push_back(chain.label(s));
  }
  std::sort(distinct.begin(), distinct.end(), std::greater<>());
  distinct.erase(std::unique(distinct.begin(), distinct.end()), distinct.end());
  Levels lv;
  lv.m = static_cast<int>(distinct.size()) + 1;
  lv.of_state.resize(chain.size());
  for (std::size_t s = 0; s < chain.size(); ++s) {
    if (chain.is_target(s)) {
      lv.of_state[s] = lv.m;
    } else {
      const auto it = std::lower_bound(distinct.begin(), distinct.end(), chain.label(s), std::greater<>());
      lv.of_state[s] = static_cast<int>(it - distinct.begin()) + 1;
    }
  }
  const auto m = static_cast<std::size_t>(lv.m);
  lv.max_prob.assign(m - 1, std::vector<double>(m, 0.0));
  lv.min_leave.assign(m - 1, std::numeric_limits<double>::infinity());
  std::vector<double> to_level(m);
  for (std::size_t s = 0; s < chain.size(); ++s) {
    if (chain.is_target(s)) continue;
    const int i = lv.of_state[s];
    std::fill(to_level.begin(), to_level.end(), 0.0);
    for (const auto& t : chain.row(s)) to_level[static_cast<std::size_t>(lv.of_state[t.to] - 1)] += t.prob;
    CompensatedSum leave;
    for (std::size_t j = static_cast<std::size_t>(i); j < m; ++j) {
      leave += to_level[j];
      auto& mp = lv.max_prob[static_cast<std::size_t>(i - 1)][j];
      mp = std::max(mp, to_level[j]);
    }
    auto& ml = lv.min_leave[static_cast<std::size_t>(i - 1)];
    ml = std::min(ml, leave.value());
  }
  return lv;
}

void validate_partition_basics(const FitnessPartition& fp) {
  if (fp.m < 2) throw ParameterError("fitness partition needs m >= 2 levels");
}

}  // namespace

const char* to_string(Direction d) noexcept { return d == Direction::Upper ? "upper" : "lower"; }

const char* to_string(PreconditionStatus s) noexcept {
  return s == PreconditionStatus::VerifiedByOracle ? "verified-by-oracle" : "asserted-by-user";
}

BoundResult additive_upper(double delta_u, double x0, const MarkovChain* chain) {
  require_positive(delta_u, "delta_u");
  if (x0 < 0.0) throw ParameterError("X0 must be non-negative");
  BoundResult r{x0 / delta_u, Direction::Upper, "additive-upper", {{"delta_u", delta_u}, {"X0", x0}}, {}, {}};
  if (chain) {
    check_layout(*chain, 0.0, std::numeric_limits<double>::infinity());
    const auto d = exact_drift(*chain);
    for (std::size_t s = 0; s < chain->size(); ++s) {
      if (!chain->is_target(s) && !geq(d[s], delta_u)) {
        throw PreconditionError("drift " + fmt(d[s]) + " below delta_u", state_witness(*chain, s));
      }
    }
    r.status = PreconditionStatus::VerifiedByOracle;
  }
  return r;
}

BoundResult additive_lower(double delta_l, double x0, const MarkovChain* chain) {
  require_positive(delta_l, "delta_l");
  if (x0 < 0.0) throw ParameterError("X0 must be non-negative");
  BoundResult r{x0 / delta_l, Direction::Lower, "additive-lower", {{"delta_l", delta_l}, {"X0", x0}}, {}, {}};
  if (chain) {
    check_layout(*chain, 0.0, std::numeric_limits<double>::infinity());
    const auto d = exact_drift(*chain);
    for (std::size_t s = 0; s < chain->size(); ++s) {
      if (!chain->is_target(s) && !leq(d[s], delta_l)) {
        throw PreconditionError("drift " + fmt(d[s]) + " above delta_l", state_witness(*chain, s));
      }
    }
    r.status = PreconditionStatus::VerifiedByOracle;
  }
  return r;
}

BoundResult general_expected_bound(const PotentialFunction& g, double alpha, double x0, Direction direction,
                                   const MarkovChain* chain) {
  require_positive(alpha, "alpha");
  const bool upper = direction == Direction::Upper;
  BoundResult r{g_at(g, x0) / alpha,
                direction,
                upper ? "general-upper" : "general-lower",
                {{upper ? "alpha_u" : "alpha_l", alpha}, {"x_min", g.h().x_min()}, {"X0", x0}},
                {},
                {}};
  if (chain) {
    const HSpec& h = g.h();
    check_layout(*chain, h.x_min(), h.x_max());
    const auto prof = exact_drift_profile(*chain, g, 0.0, 1);
    for (std::size_t s = 0; s < chain->size(); ++s) {
      if (chain->is_target(s)) continue;
      const double hx = h(chain->label(s));
      const bool drift_ok = upper ? geq(prof.drift[s], hx) : leq(prof.drift[s], hx);
      if (!drift_ok) {
        throw PreconditionError("drift " + fmt(prof.drift[s]) + (upper ? " below" : " above") + " h = " + fmt(hx),
                                state_witness(*chain, s));
      }
      const double gd = prof.potential_drift[s];
      const bool g_ok = upper ? geq(gd, alpha) : leq(gd, alpha);
      if (!g_ok) {
        throw PreconditionError("g-drift " + fmt(gd) + (upper ? " below alpha_u" : " above alpha_l"),
                                state_witness(*chain, s));
      }
    }
    r.status = PreconditionStatus::VerifiedByOracle;
  }
  return r;
}

BoundResult variable_upper(const HSpec& h, double x0, const MarkovChain* chain, bool monotone_asserted) {
  check_monotone_h(h, monotone_asserted);
  PotentialFunction g(h);
  BoundResult r{g_at(g, x0),
                Direction::Upper,
                "variable-upper",
                {{"x_min", h.x_min()}, {"x_max", h.x_max()}, {"X0", x0}},
                {},
                {}};
  if (chain) {
    check_layout(*chain, h.x_min(), h.x_max());
    const auto d = exact_drift(*chain);
    for (std::size_t s = 0; s < chain->size(); ++s) {
      if (chain->is_target(s)) continue;
      const double hx = h(chain->label(s));
      if (!geq(d[s], hx)) {
        throw PreconditionError("drift " + fmt(d[s]) + " below h = " + fmt(hx), state_witness(*chain, s));
      }
    }
    r.status = PreconditionStatus::VerifiedByOracle;
  }
  return r;
}

BoundResult fitness_levels_upper(const FitnessPartition& fp, int start_level, const MarkovChain* chain) {
  validate_partition_basics(fp);
  if (fp.p.size() != static_cast<std::size_t>(fp.m - 1)) throw ParameterError("need m-1 values p_i");
  if (start_level < 1 || start_level > fp.m) throw ParameterError("start level must lie in [1, m]");
  for (std::size_t i = 0; i < fp.p.size(); ++i) {
    if (!(fp.p[i] > 0.0 && fp.p[i] <= 1.0)) {
      throw ParameterError("p_" + std::to_string(i + 1) + " = " + fmt(fp.p[i]) + " outside (0, 1]");
    }
  }
  CompensatedSum sum;
  for (int i = fp.m - 1; i >= start_level; --i) sum += 1.0 / fp.p[static_cast<std::size_t>(i - 1)];
  BoundResult r{sum.value(),
                Direction::Upper,
                "fitness-levels-upper",
                {{"m", static_cast<double>(fp.m)}, {"start_level", static_cast<double>(start_level)}},
                {},
                {}};
  if (chain) {
    const Levels lv = levels_of(*chain);
    if (lv.m != fp.m) throw PreconditionError("chain has a different number of levels", std::to_string(lv.m));
    for (int i = 1; i < fp.m; ++i) {
      const double ml = lv.min_leave[static_cast<std::size_t>(i - 1)];
      if (!leq(fp.p[static_cast<std::size_t>(i - 1)], ml)) {
        throw PreconditionError("p_i exceeds the smallest leave probability " + fmt(ml), "level " + std::to_string(i));
      }
    }
    r.status = PreconditionStatus::VerifiedByOracle;
  }
  return r;
}

double max_feasible_chi(const FitnessPartition& fp) {
  double chi = 1.0;
  for (int i = 1; i < fp.m; ++i) {
    const auto& row = fp.gamma.at(static_cast<std::size_t>(i - 1));
    double tail = 0.0;
    for (int j = fp.m; j > i; --j) {
      const double gij = row.at(static_cast<std::size_t>(j - 1));
      tail += gij;
      if (tail > 0.0) chi = std::min(chi, gij / tail);
    }
  }
  return std::max(0.0, chi);
}

BoundResult fitness_levels_lower(const FitnessPartition& fp, const MarkovChain* chain) {
  validate_partition_basics(fp);
  const auto levels = static_cast<std::size_t>(fp.m - 1);
  if (fp.u.size() != levels || fp.gamma.size() != levels || fp.start.size() != levels) {
    throw ParameterError("need m-1 values each of u_i, gamma rows and start weights");
  }
  if (!(fp.chi >= 0.0 && fp.chi <= 1.0)) throw ParameterError("chi must lie in [0, 1]");
  CompensatedSum start_total;
  for (std::size_t i = 0; i < levels; ++i) {
    if (!(fp.u[i] > 0.0) || !std::isfinite(fp.u[i])) throw ParameterError("u_" + std::to_string(i + 1) + " must be positive");
    if (!(fp.start[i] >= 0.0)) throw ParameterError("start weights must be non-negative");
    start_total += fp.start[i];
    if (fp.gamma[i].size() != static_cast<std::size_t>(fp.m)) throw ParameterError("gamma rows need m entries");
  }
  if (start_total.value() > 1.0 + kSlack) throw ParameterError("start weights sum to more than 1");

  for (int i = 1; i < fp.m; ++i) {
    const auto& row = fp.gamma[static_cast<std::size_t>(i - 1)];
    CompensatedSum rs;
    for (int j = i + 1; j <= fp.m; ++j) {
      if (!(row[static_cast<std::size_t>(j - 1)] >= 0.0)) throw ParameterError("gamma entries must be non-negative");
      rs += row[static_cast<std::size_t>(j - 1)];
    }
    if (std::abs(rs.value() - 1.0) > kSlack) {
      throw ParameterError("gamma row " + std::to_string(i) + " sums to " + fmt(rs.value()));
    }
    double tail = 0.0;
    for (int j = fp.m; j > i; --j) {
      const double gij = row[static_cast<std::size_t>(j - 1)];
      tail += gij;
      if (!geq(gij, fp.chi * tail)) {
        throw PreconditionError("gamma_{i,j} < chi * sum_{k>=j} gamma_{i,k}",
                                "(" + std::to_string(i) + ", " + std::to_string(j) + ")");
      }
    }
  }

  // suffix[i-1] = sum_{j=i}^{m-1} 1/u_j, accumulated from the top level down.
  std::vector<double> suffix(levels + 1, 0.0);
  {
    CompensatedSum acc;
    for (std::size_t k = levels; k-- > 0;) {
      acc += 1.0 / fp.u[k];
      suffix[k] = acc.value();
    }
  }
  CompensatedSum bound, weaker;
  for (std::size_t i = 0; i < levels; ++i) {
    if (fp.start[i] == 0.0) continue;
    bound += fp.start[i] * (1.0 / fp.u[i] + fp.chi * suffix[i + 1]);
    weaker += fp.start[i] * fp.chi * suffix[i];
  }
  BoundResult r{bound.value(),
                Direction::Lower,
                "fitness-levels-lower",
                {{"m", static_cast<double>(fp.m)}, {"chi", fp.chi}},
                {},
                {{"weaker_bound", weaker.value()}}};
  if (chain) {
    const Levels lv = levels_of(*chain);
    if (lv.m != fp.m) throw PreconditionError("chain has a different number of levels", std::to_string(lv.m));
    for (int i = 1; i < fp.m; ++i) {
      for (int j = i + 1; j <= fp.m; ++j) {
        const double actual = lv.max_prob[static_cast<std::size_t>(i - 1)][static_cast<std::size_t>(j - 1)];
        const double allowed = fp.u[static_cast<std::size_t>(i - 1)] * fp.gamma[static_cast<std::size_t>(i - 1)][static_cast<std::size_t>(j - 1)];
        if (!leq(actual, allowed)) {
          throw PreconditionError("transition probability " + fmt(actual) + " exceeds u_i gamma_{i,j}",
                                  "(" + std::to_string(i) + ", " + std::to_string(j) + ")");
        }
      }
    }
    r.status = PreconditionStatus::VerifiedByOracle;
  }
  return r;
}

FitnessPartition partition_from_chain(const MarkovChain& chain, const std::vector<double>* start_distribution) {
  const Levels lv = levels_of(chain);
  FitnessPartition fp;
  fp.m = lv.m;
  const auto levels = static_cast<std::size_t>(lv.m - 1);
  fp.p = lv.min_leave;
  fp.u.resize(levels);
  fp.gamma.assign(levels, std::vector<double>(static_cast<std::size_t>(lv.m), 0.0));
  for (std::size_t i = 0; i < levels; ++i) {
    CompensatedSum u;
    for (std::size_t j = i + 1; j < static_cast<std::size_t>(lv.m); ++j) u += lv.max_prob[i][j];
    fp.u[i] = u.value();
    if (!(fp.u[i] > 0.0)) throw StructuralError("level " + std::to_string(i + 1) + " is never left");
    for (std::size_t j = i + 1; j < static_cast<std::size_t>(lv.m); ++j) fp.gamma[i][j] = lv.max_prob[i][j] / fp.u[i];
  }
  fp.start.assign(levels, 0.0);
  if (start_distribution) {
    if (start_distribution->size() != chain.size()) throw ParameterError("start distribution length differs");
    for (std::size_t s = 0; s < chain.size(); ++s) {
      const int i = lv.of_state[s];
      if (i < lv.m) fp.start[static_cast<std::size_t>(i - 1)] += (*start_distribution)[s];
    }
  }
  fp.chi = max_feasible_chi(fp);
  return fp;
}

namespace {

struct RatioWitness {
  double ratio = 1.0;
  std::size_t state = 0;
  double y = 0.0;
};

// Largest sampled ratio needed by the h-ratio condition around every non-target state,
// with d(x) the largest jump out of x.
RatioWitness condition4_ratio(const HSpec& h, const MarkovChain& chain) {
  RatioWitness best;
  std::vector<double> labels;
  for (std::size_t s = 0; s < chain.size(); ++s) labels.push_back(chain.label(s));
  std::sort(labels.begin(), labels.end());
  for (std::size_t s = 0; s < chain.size(); ++s) {
    if (chain.is_target(s)) continue;
    const double x = chain.label(s);
    double d = 0.0;
    for (const auto& t : chain.row(s)) d = std::max(d, std::abs(chain.label(t.to) - x));
    const double lo = std::max(h.x_min(), x - d);
    const double hi = std::min(h.x_max(), x + d);
    std::vector<double> ys;
    for (double y : labels) {
      if (y >= lo && y <= hi) ys.push_back(y);
    }
    constexpr int kGrid = 64;
    for (int k = 0; k <= kGrid; ++k) ys.push_back(lo + (hi - lo) * k / kGrid);
    for (const auto& [key, value] : h.table_values()) {
      const auto y = static_cast<double>(key);
      if (y >= lo && y <= hi) ys.push_back(y);
    }
    const double hx = h(x);
    for (double y : ys) {
      const double ratio = y < x ? h(y) / hx : (y > x ? hx / h(y) : 1.0);
      if (ratio > best.ratio) best = {ratio, s, y};
    }
  }
  return best;
}

struct UpDown {
  double up = 0.0;
  double down = 0.0;
};

UpDown up_down(const MarkovChain& chain, std::size_t s) {
  CompensatedSum up, down;
  const double x = chain.label(s);
  for (const auto& t : chain.row(s)) {
    const double y = chain.label(t.to);
    if (y > x) up += t.prob * (y - x);
    if (y < x) down += t.prob * (x - y);
  }
  return {up.value(), down.value()};
}

}  // namespace

BoundResult nonmonotone_variable_upper(const HSpec& h, double c, double x0, const MarkovChain* chain) {
  if (!(c >= 1.0) || !std::isfinite(c)) throw ParameterError("c must be at least 1");
  PotentialFunction g(h);
  BoundResult r{2.0 * c * g_at(g, x0),
                Direction::Upper,
                "nonmonotone-variable-upper",
                {{"c", c}, {"x_min", h.x_min()}, {"X0", x0}},
                {},
                {}};
  if (chain) {
    check_layout(*chain, h.x_min(), h.x_max());
    const auto d = exact_drift(*chain);
    const double ratio_cap = 1.0 / (2.0 * c * c);
    for (std::size_t s = 0; s < chain->size(); ++s) {
      if (chain->is_target(s)) continue;
      const double hx = h(chain->label(s));
      if (!geq(d[s], hx)) {
        throw PreconditionError("condition (1): drift " + fmt(d[s]) + " below h = " + fmt(hx),
                                state_witness(*chain, s));
      }
      const UpDown ud = up_down(*chain, s);
      if (ud.down == 0.0 || !leq(ud.up / ud.down, ratio_cap)) {
        throw PreconditionError("jump-balance condition: upward/downward ratio exceeds 1/(2c^2)", state_witness(*chain, s));
      }
    }
    const RatioWitness w = condition4_ratio(h, *chain);
    if (!leq(w.ratio, c)) {
      throw PreconditionError("h-ratio condition: h ratio " + fmt(w.ratio) + " exceeds c",
                              state_witness(*chain, w.state) + ", y = " + fmt(w.y));
    }
    r.status = PreconditionStatus::VerifiedByOracle;
  }
  return r;
}

std::optional<double> minimal_nonmonotone_c(const HSpec& h, const MarkovChain& chain) {
  check_layout(chain, h.x_min(), h.x_max());
  const double c = std::max(1.0, condition4_ratio(h, chain).ratio);
  const double cap = 1.0 / (2.0 * c * c);
  for (std::size_t s = 0; s < chain.size(); ++s) {
    if (chain.is_target(s)) continue;
    const UpDown ud = up_down(chain, s);
    if (ud.down == 0.0 || !leq(ud.up / ud.down, cap)) return std::nullopt;
  }
  return c;
}

BoundResult variable_lower(const HSpec& h, const StateMap& c_map, double x0, const MarkovChain* chain,
                           bool monotone_asserted) {
  check_monotone_h(h, monotone_asserted);
  if (!c_map) throw ParameterError("variable_lower needs a map c(x)");
  PotentialFunction g(h);
  BoundResult r{g_at(g, x0),
                Direction::Lower,
                "variable-lower",
                {{"x_min", h.x_min()}, {"x_max", h.x_max()}, {"X0", x0}},
                {},
                {}};
  if (chain) {
    check_layout(*chain, h.x_min(), h.x_max());
    check_no_upward(*chain);
    const auto d = exact_drift(*chain);
    std::vector<std::size_t> order;
    for (std::size_t s = 0; s < chain->size(); ++s) {
      if (!chain->is_target(s)) order.push_back(s);
    }
    std::sort(order.begin(), order.end(), [&](auto a, auto b) { return chain->label(a) < chain->label(b); });
    double prev_c = -std::numeric_limits<double>::infinity();
    for (std::size_t s : order) {
      const double x = chain->label(s);
      const double cx = c_map(x);
      if (!(cx <= x)) throw PreconditionError("c(x) exceeds x", state_witness(*chain, s));
      if (cx < prev_c) throw PreconditionError("c is not monotone", state_witness(*chain, s));
      prev_c = cx;
      for (const auto& t : chain->row(s)) {
        if (chain->label(t.to) < cx) {
          throw PreconditionError("step below c(x) = " + fmt(cx),
                                  state_witness(*chain, s) + " -> " + state_witness(*chain, t.to));
        }
      }
      const double hc = h(std::max(cx, h.x_min()));
      if (!leq(d[s], hc)) {
        throw PreconditionError("drift " + fmt(d[s]) + " above h(c(x)) = " + fmt(hc), state_witness(*chain, s));
      }
    }
    r.status = PreconditionStatus::VerifiedByOracle;
  }
  return r;
}

BoundResult multiplicative_upper(double delta, double x_min, double x0, const MarkovChain* chain) {
  if (!(delta > 0.0 && delta < 1.0)) throw ParameterError("delta must lie in (0, 1)");
  require_positive(x_min, "x_min");
  if (x0 < x_min) throw ParameterError("X0 must be at least x_min");
  BoundResult r{(std::log(x0 / x_min) + 1.0) / delta,
                Direction::Upper,
                "multiplicative-upper",
                {{"delta", delta}, {"x_min", x_min}, {"X0", x0}},
                {},
                {}};
  if (chain) {
    check_layout(*chain, x_min, std::numeric_limits<double>::infinity());
    const auto d = exact_drift(*chain);
    for (std::size_t s = 0; s < chain->size(); ++s) {
      if (chain->is_target(s)) continue;
      if (!geq(d[s], delta * chain->label(s))) {
        throw PreconditionError("drift " + fmt(d[s]) + " below delta * x", state_witness(*chain, s));
      }
    }
    r.status = PreconditionStatus::VerifiedByOracle;
  }
  return r;
}

namespace {

double jump_probability(const MarkovChain& chain, std::size_t s, double beta) {
  const double x = chain.label(s);
  CompensatedSum p;
  for (const auto& t : chain.row(s)) {
    if (x - chain.label(t.to) >= beta * x) p += t.prob;
  }
  return p.value();
}

bool jump_condition_holds(const MarkovChain& chain, double delta, double beta, double x_min,
                          std::size_t* witness = nullptr) {
  for (std::size_t s = 0; s < chain.size(); ++s) {
    if (chain.is_target(s)) continue;
    const double x = chain.label(s);
    const double allowed = beta * delta / (1.0 + std::log(x / x_min));
    if (!leq(jump_probability(chain, s, beta), allowed)) {
      if (witness) *witness = s;
      return false;
    }
  }
  return true;
}

}  // namespace

BoundResult multiplicative_lower(double delta, double beta, double x_min, double x0, const MarkovChain* chain) {
  if (!(delta > 0.0 && delta <= 1.0)) throw ParameterError("delta must lie in (0, 1]");
  if (!(beta > 0.0 && beta <= 1.0)) throw ParameterError("beta must lie in (0, 1]");
  require_positive(x_min, "x_min");
  if (x0 < x_min) throw ParameterError("X0 must be at least x_min");
  BoundResult r{(1.0 + std::log(x0 / x_min)) / delta * (1.0 - beta) / (1.0 + beta),
                Direction::Lower,
                "multiplicative-lower",
                {{"delta", delta}, {"beta", beta}, {"x_min", x_min}, {"X0", x0}},
                {},
                {}};
  if (chain) {
    check_layout(*chain, x_min, std::numeric_limits<double>::infinity());
    check_no_upward(*chain);
    const auto d = exact_drift(*chain);
    for (std::size_t s = 0; s < chain->size(); ++s) {
      if (chain->is_target(s)) continue;
      if (!leq(d[s], delta * chain->label(s))) {
        throw PreconditionError("drift " + fmt(d[s]) + " above delta * x", state_witness(*chain, s));
      }
    }
    std::size_t w = 0;
    if (!jump_condition_holds(*chain, delta, beta, x_min, &w)) {
      throw PreconditionError("P(X_t - X_{t+1} >= beta X_t) exceeds beta delta / (1 + ln(X_t / x_min))",
                              state_witness(*chain, w));
    }
    r.status = PreconditionStatus::VerifiedByOracle;
  }
  return r;
}

std::optional<std::pair<double, double>> fit_multiplicative_lower(const MarkovChain& chain, double x_min) {
  check_layout(chain, x_min, std::numeric_limits<double>::infinity());
  const auto d = exact_drift(chain);
  double delta = 0.0;
  for (std::size_t s = 0; s < chain.size(); ++s) {
    if (!chain.is_target(s)) delta = std::max(delta, d[s] / chain.label(s));
  }
  if (!(delta > 0.0) || delta > 1.0) return std::nullopt;
  if (!jump_condition_holds(chain, delta, 1.0, x_min)) return std::nullopt;
  double lo = 0.0, hi = 1.0;
  for (int it = 0; it < 80; ++it) {
    const double mid = 0.5 * (lo + hi);
    if (jump_condition_holds(chain, delta, mid, x_min)) {
      hi = mid;
    } else {
      lo = mid;
    }
  }
  return std::make_pair(delta, hi);
}

}  // namespace driftkit
