#include "driftkit_cli/suites.hpp"

#include <algorithm>
#include <cmath>
#include <exception>
#include <functional>
#include <limits>
#include <map>
#include <memory>
#include <numbers>
#include <optional>
#include <thread>

#include "driftkit/error.hpp"
#include "driftkit/montecarlo.hpp"
#include "driftkit/oracle.hpp"
#include "driftkit/potential.hpp"
#include "driftkit/processes.hpp"
#include "driftkit/rng.hpp"
#include "driftkit/tails.hpp"
#include "driftkit/theorems.hpp"

namespace driftkit::cli {

using nlohmann::json;

namespace {

constexpr double kE = std::numbers::e;
// Relative tolerance for bound-versus-oracle comparisons; the oracle's own
// residual guarantee is 1e-9 (1 + |E|).
constexpr double kCompareSlack = 1e-9;

bool dominates(double bound, double exact, bool upper) {
  const double tol = kCompareSlack * std::max(1.0, std::abs(exact));
  return upper ? bound >= exact - tol : bound <= exact + tol;
}

struct ChainResult {
  std::size_t states = 0;
  std::vector<SweepCheck> checks;
  std::map<std::string, std::size_t> applied;
  std::map<std::string, std::size_t> not_applicable;
};

template <class Fn>
void run_parallel(std::size_t count, unsigned workers, Fn&& fn) {
  workers = static_cast<unsigned>(std::max<std::size_t>(1, std::min<std::size_t>(workers, count)));
  if (workers == 1) {
    for (std::size_t i = 0; i < count; ++i) fn(i);
    return;
  }
  std::vector<std::thread> pool;
  std::vector<std::exception_ptr> errors(workers);
  for (unsigned w = 0; w < workers; ++w) {
    pool.emplace_back([&, w] {
      try {
        for (std::size_t i = w; i < count; i += workers) fn(i);
      } catch (...) {
        errors[w] = std::current_exception();
      }
    });
  }
  for (auto& t : pool) t.join();
  for (auto& e : errors) {
    if (e) std::rethrow_exception(e);
  }
}

std::map<long, double> table_of(const std::vector<double>& by_label, std::size_t top) {
  std::map<long, double> m;
  for (std::size_t k = 1; k <= top; ++k) m[static_cast<long>(k)] = by_label[k];
  return m;
}

ChainResult sweep_chain(std::size_t idx, const SweepOptions& o) {
  const std::uint64_t seed = trial_seed(o.seed, idx);
  const std::size_t n_states = 3 + static_cast<std::size_t>(seed % (o.max_states - 2));
  const ChainFamily family = idx % 2 == 0 ? ChainFamily::Monotone : ChainFamily::General;
  const MarkovChain chain = random_absorbing_chain(seed, n_states, family);
  const std::size_t top = n_states - 1;
  const double x0 = chain.label(top);
  const double x_max = x0;

  ChainResult out;
  out.states = n_states;
  const auto times = expected_hitting_times(chain);
  const double e0 = times[top];
  const auto d = exact_drift(chain);

  auto attempt = [&](const std::string& id, const std::function<void()>& fn) {
    try {
      fn();
      ++out.applied[id];
    } catch (const PreconditionError&) {
      ++out.not_applicable[id];
    } catch (const ParameterError&) {
      ++out.not_applicable[id];
    }
  };
  auto expectation = [&](const BoundResult& r) {
    SweepCheck c{idx, r.theorem, "E[T]", 0.0, r.bound, e0, r.direction == Direction::Upper, false};
    c.violated = !dominates(c.bound, c.exact, c.upper);
    out.checks.push_back(c);
  };

  double d_min = std::numeric_limits<double>::infinity();
  double d_max = -std::numeric_limits<double>::infinity();
  double mult = std::numeric_limits<double>::infinity();
  for (std::size_t s = 1; s <= top; ++s) {
    d_min = std::min(d_min, d[s]);
    d_max = std::max(d_max, d[s]);
    mult = std::min(mult, d[s] / chain.label(s));
  }
  // Monotone envelopes of the drift: below it from above, above it from below.
  std::vector<double> env_lo(n_states, 0.0), env_hi(n_states, 0.0);
  env_lo[top] = d[top];
  for (std::size_t k = top; k-- > 1;) env_lo[k] = std::min(d[k], env_lo[k + 1]);
  env_hi[1] = d[1];
  for (std::size_t k = 2; k <= top; ++k) env_hi[k] = std::max(d[k], env_hi[k - 1]);

  attempt("additive-upper", [&] { expectation(additive_upper(d_min, x0, &chain)); });
  attempt("additive-lower", [&] { expectation(additive_lower(d_max, x0, &chain)); });
  attempt("variable-upper", [&] {
    expectation(variable_upper(HSpec::table(table_of(env_lo, top), 1.0, x_max), x0, &chain));
  });
  attempt("general-upper", [&] {
    const PotentialFunction g(HSpec::table(table_of(d, top), 1.0, x_max));
    const auto prof = exact_drift_profile(chain, g, 0.0, 1);
    const double alpha = *std::min_element(prof.potential_drift.begin() + 1, prof.potential_drift.end());
    expectation(general_expected_bound(g, alpha, x0, Direction::Upper, &chain));
  });
  attempt("general-lower", [&] {
    const PotentialFunction g(HSpec::table(table_of(d, top), 1.0, x_max));
    const auto prof = exact_drift_profile(chain, g, 0.0, 1);
    const double alpha = *std::max_element(prof.potential_drift.begin() + 1, prof.potential_drift.end());
    expectation(general_expected_bound(g, alpha, x0, Direction::Lower, &chain));
  });
  const auto start = point_start(chain, top);
  attempt("fitness-levels-upper", [&] {
    const FitnessPartition fp = partition_from_chain(chain, &start);
    expectation(fitness_levels_upper(fp, 1, &chain));
  });
  attempt("fitness-levels-lower", [&] {
    const FitnessPartition fp = partition_from_chain(chain, &start);
    expectation(fitness_levels_lower(fp, &chain));
  });
  attempt("nonmonotone-variable-upper", [&] {
    const HSpec h = HSpec::table(table_of(d, top), 1.0, x_max);
    const auto c = minimal_nonmonotone_c(h, chain);
    if (!c) throw PreconditionError("no admissible c", "chain " + std::to_string(idx));
    expectation(nonmonotone_variable_upper(h, *c, x0, &chain));
  });
  attempt("variable-lower", [&] {
    // c(x): running minimum, from above, of the lowest label reachable in one step.
    std::vector<double> c_env(n_states, 0.0);
    for (std::size_t k = top + 1; k-- > 1;) {
      double lowest = chain.label(k);
      for (const auto& t : chain.row(k)) lowest = std::min(lowest, chain.label(t.to));
      c_env[k] = k == top ? lowest : std::min(lowest, c_env[k + 1]);
    }
    std::vector<double> h_vals(n_states, 0.0);
    for (std::size_t k = 1; k <= top; ++k) {
      double v = 0.0;
      for (std::size_t x = 1; x <= top; ++x) {
        if (std::max(c_env[x], 1.0) <= static_cast<double>(k)) v = std::max(v, d[x]);
      }
      h_vals[k] = v;
    }
    const HSpec h = HSpec::table(table_of(h_vals, top), 1.0, x_max);
    const StateMap c_map = [c_env, top](double x) {
      const auto k = static_cast<std::size_t>(std::clamp(std::floor(x), 1.0, static_cast<double>(top)));
      return c_env[k];
    };
    expectation(variable_lower(h, c_map, x0, &chain));
  });
  attempt("multiplicative-upper", [&] { expectation(multiplicative_upper(mult, 1.0, x0, &chain)); });
  attempt("multiplicative-lower", [&] {
    const auto fit = fit_multiplicative_lower(chain, 1.0);
    if (!fit) throw PreconditionError("no admissible (delta, beta)", "chain " + std::to_string(idx));
    expectation(multiplicative_lower(fit->first, fit->second, 1.0, x0, &chain));
  });

  // Tail bounds against the survival curve.
  std::vector<long> horizons;
  for (int k = 1; k <= 10; ++k) horizons.push_back(std::max(1L, static_cast<long>(std::ceil(e0 * k / 4.0))));
  const std::vector<double> mult_r = {0.5, 1.0, 2.0, 4.0};
  long t_max = horizons.back();
  if (mult > 0.0 && mult < 1.0) {
    for (double r : mult_r) t_max = std::max(t_max, static_cast<long>(std::ceil((std::log(x0) + r) / mult)) + 1);
  }
  const SurvivalCurve curve = exact_tail(chain, top, static_cast<std::size_t>(t_max));
  auto surv = [&](double t) {
    const double ct = std::ceil(t);
    if (ct <= 0.0) return 1.0;
    const auto i = static_cast<std::size_t>(ct);
    return i < curve.survival.size() ? curve.survival[i] : 0.0;
  };
  auto tail_check = [&](const TailResult& r, double t) {
    const bool up = r.side == TailSide::Upper;
    SweepCheck c{idx, r.theorem + (up ? "-upper" : "-lower"), up ? "P(T>=t)" : "P(T<t)", t, r.probability,
                 up ? surv(t) : 1.0 - surv(t), true, false};
    c.violated = !dominates(c.bound, c.exact, true);
    out.checks.push_back(c);
  };

  struct Candidate {
    std::string name;
    std::optional<HSpec> h;
  };
  std::vector<Candidate> potentials;
  potentials.push_back({"identity", HSpec::constant(1.0, 1.0, x_max)});
  if (env_lo[1] > 0.0) potentials.push_back({"envelope", HSpec::table(table_of(env_lo, top), 1.0, x_max)});
  for (const auto& cand : potentials) {
    const PotentialFunction g(*cand.h);
    for (double lambda : {0.05, 0.25, 1.0}) {
      attempt("general-tail-upper", [&] {
        const auto prof = exact_drift_profile(chain, g, lambda, -1);
        const double beta = *std::max_element(prof.mgf.begin() + 1, prof.mgf.end());
        for (long t : horizons) {
          TailParams p{lambda, beta, 0.0, t, true};
          tail_check(general_tail_upper(g, p, x0), static_cast<double>(t));
        }
      });
      attempt("general-tail-lower", [&] {
        const auto prof = exact_drift_profile(chain, g, lambda, 1);
        const double beta = *std::max_element(prof.mgf.begin() + 1, prof.mgf.end());
        for (long t : horizons) {
          TailParams p{lambda, beta, 0.0, t, true};
          tail_check(general_tail_lower(g, p, x0), static_cast<double>(t));
        }
      });
    }
  }

  attempt("multiplicative-tail", [&] {
    for (double r : mult_r) {
      const TailResult res = multiplicative_tail(mult, 1.0, x0, r);
      double t = 0.0;
      for (const auto& [k, v] : res.details) {
        if (k == "t_event") t = v;
      }
      tail_check(res, t);
    }
  });

  // Simplified tails need h with g-drift at least 1 (upper) or at most 1 (lower).
  auto simplified = [&](const std::vector<double>& hv, TailSide side) {
    const HSpec h = HSpec::table(table_of(hv, top), 1.0, x_max);
    const PotentialFunction g(h);
    const auto prof = exact_drift_profile(chain, g, 0.0, 1);
    double z = 1.0;
    for (std::size_t s = 1; s <= top; ++s) {
      const double pd = prof.potential_drift[s];
      const bool ok = side == TailSide::Upper ? pd >= 1.0 - 1e-12 : pd <= 1.0 + 1e-12;
      if (!ok) throw PreconditionError("g-drift condition fails", "state " + std::to_string(s));
      for (const auto& t : chain.row(s)) z = std::max(z, std::abs(g(chain.label(s)) - g(chain.label(t.to))));
    }
    for (double lambda : {0.25, 1.0}) {
      const SimplifiedTailParams sp{std::exp(lambda * z), lambda, 0.5};
      for (long t : horizons) {
        tail_check(simplified_tail(h, sp, x0, static_cast<double>(t), side, true), static_cast<double>(t));
        if (side == TailSide::Lower) {
          tail_check(simplified_tail(h, sp, x0, static_cast<double>(t), side, false), static_cast<double>(t));
        }
      }
    }
  };
  attempt("simplified-tail-upper", [&] { simplified(env_lo, TailSide::Upper); });
  attempt("simplified-tail-lower", [&] { simplified(env_hi, TailSide::Lower); });
  return out;
}

json interval_json(const Interval& iv) { return json::array({iv.lo, iv.hi}); }

json stats_json(const EmpiricalStats& st) {
  json q = json::object();
  for (std::size_t i = 0; i < st.quantiles.size(); ++i) q["p" + std::to_string(kQuantileLevels[i])] = st.quantiles[i];
  return {{"trials", st.trials},   {"mean", st.mean},         {"variance", st.variance},
          {"standard_error", st.standard_error}, {"quantiles", q}, {"capped", st.capped},
          {"moments_valid", st.moments_valid},   {"step_cap", st.step_cap}};
}

json claims_json(const ConcentrationReport& rep) {
  json arr = json::array();
  for (const auto& r : rep.records) {
    json j = {{"id", r.id},
              {"t", r.t},
              {"side", to_string(r.side)},
              {"bound", r.bound},
              {"estimate", r.estimate},
              {"ci99", interval_json(r.ci99)},
              {"ci999", interval_json(r.ci999)},
              {"verdict", to_string(r.verdict)}};
    j["exact"] = r.exact ? json(*r.exact) : json(nullptr);
    arr.push_back(j);
  }
  return arr;
}

// Deterministic check: the relation either holds or it is a violation.
json exact_check(const std::string& id, double value, const std::string& relation, double lo, double hi, bool& bad) {
  const bool ok = value >= lo && value <= hi;
  if (!ok) bad = true;
  return {{"id", id}, {"value", value}, {"relation", relation}, {"range", json::array({lo, hi})},
          {"verdict", ok ? "consistent" : "violation"}};
}

std::uint64_t trials_or(const SuiteOptions& o, std::uint64_t def) { return o.trials_set ? o.trials : def; }

SuiteOutcome onemax_expectation(const SuiteOptions& o) {
  const int n = o.n > 0 ? o.n : 100;
  SuiteOutcome out;
  bool bad = false;
  const MarkovChain chain = build_onemax_chain(n);
  const double exact = exact_expectation(chain, binomial_start(n));
  const double ln_n = std::log(static_cast<double>(n));
  const auto br = onemax_expected_bounds(n);
  json checks = json::array();
  checks.push_back(exact_check("expectation-bracket", exact, "within [lower - 50 ln n, upper + 50 ln n]",
                               br.lower - 50.0 * ln_n, br.upper + 50.0 * ln_n, bad));
  const auto drift = exact_drift(chain);
  double worst = 0.0;
  for (int x = 1; x <= n; ++x) {
    const auto db = onemax_drift_bounds(n, x);
    const double dx = drift[static_cast<std::size_t>(x)];
    const double tol = 1e-12 * std::max(1.0, dx);
    worst = std::max({worst, db.lower - dx - tol, dx - db.upper - tol});
  }
  checks.push_back(exact_check("drift-sandwich", worst, "max excess over [lower, upper] is <= 0",
                               -std::numeric_limits<double>::infinity(), 0.0, bad));
  json j = {{"suite", "onemax-expectation"},
            {"n", n},
            {"exact_expectation", exact},
            {"predicted", {{"lower", br.lower}, {"upper", br.upper}}}};
  const std::uint64_t trials = trials_or(o, 0);
  if (trials > 0) {
    const EmpiricalStats st = run_trials(ProcessSpec::onemax(n), {trials, o.seed, 0, o.workers, 0});
    j["empirical"] = stats_json(st);
    checks.push_back(exact_check("empirical-mean", st.mean, "within 4 SE of the exact expectation",
                                 exact - 4.0 * st.standard_error, exact + 4.0 * st.standard_error, bad));
  }
  j["checks"] = checks;
  out.report = j;
  out.violation = bad;
  return out;
}

SuiteOutcome onemax_tails(const SuiteOptions& o) {
  const int n = o.n > 0 ? o.n : 100;
  const double nn = n;
  SuiteOutcome out;
  bool bad = false;
  const MarkovChain chain = build_onemax_chain(n);
  const auto start = binomial_start(n);
  const double exact = exact_expectation(chain, start);
  const double en = kE * nn;

  std::vector<TailClaim> claims;
  std::size_t t_max = 0;
  for (double r : {1.0, 2.0, 3.0}) {
    const auto pred = onemax_tail_predictions(nn, r, 0.0);
    claims.push_back({"upper-r" + std::to_string(static_cast<int>(r)), std::ceil(pred.upper_t), pred.upper_prob,
                      ClaimSide::UpperTail, std::nullopt});
    t_max = std::max(t_max, static_cast<std::size_t>(std::ceil(pred.upper_t)));
  }
  for (double r : {4.0, 6.0, 8.0}) {
    const double t = exact - r * en;
    claims.push_back({"lower-r" + std::to_string(static_cast<int>(r)), t, std::exp(-r / 2.0 + 3.0),
                      ClaimSide::LowerTail, std::nullopt});
  }
  const SurvivalCurve curve = exact_tail(chain, start, t_max);
  for (auto& c : claims) {
    const double ct = std::ceil(c.t);
    const double s = ct <= 0.0 ? 1.0
                     : static_cast<std::size_t>(ct) < curve.survival.size() ? curve.survival[static_cast<std::size_t>(ct)]
                                                                            : 0.0;
    c.exact = c.side == ClaimSide::UpperTail ? s : 1.0 - s;
  }
  json checks = json::array();
  for (const auto& c : claims) {
    checks.push_back(exact_check("exact-" + c.id, *c.exact, "exact probability <= bound", 0.0, c.bound, bad));
  }
  json j = {{"suite", "onemax-tails"}, {"n", n}, {"exact_expectation", exact}};
  const std::uint64_t trials = trials_or(o, 100000);
  if (trials > 0) {
    const EmpiricalStats st = run_trials(ProcessSpec::onemax(n), {trials, o.seed, 0, o.workers, 0});
    const ConcentrationReport rep = concentration_check(st, claims);
    if (rep.any_violation()) bad = true;
    j["empirical"] = stats_json(st);
    j["claims"] = claims_json(rep);
    checks.push_back(exact_check("quantile-1", st.quantiles.front(), "empirical 1% quantile > E[T] - 8en",
                                 exact - 8.0 * en, std::numeric_limits<double>::infinity(), bad));
  }
  j["checks"] = checks;
  out.report = j;
  out.violation = bad;
  return out;
}

SuiteOutcome leadingones_expectation(const SuiteOptions& o) {
  const int n = o.n > 0 ? o.n : 8;
  const int a = o.a >= 0 ? o.a : n;
  SuiteOutcome out;
  bool bad = false;
  const double formula = leadingones_expected(n, a);
  const double tol = 1e-9 * std::max(1.0, formula);
  json checks = json::array();
  json j = {{"suite", "leadingones-expectation"}, {"n", n}, {"a", a}, {"formula", formula}};
  if (n <= 12) {
    const double full = exact_expectation(build_leadingones_chain(n, a), uniform_bitstring_start(n));
    j["full_chain"] = full;
    checks.push_back(exact_check("full-chain", full, "equals the closed form within 1e-9", formula - tol, formula + tol, bad));
  }
  const double lumped = exact_expectation(build_leadingones_level_chain(n, a), leadingones_level_start(n));
  j["level_chain"] = lumped;
  checks.push_back(exact_check("level-chain", lumped, "equals the closed form within 1e-9", formula - tol, formula + tol, bad));
  const std::uint64_t trials = trials_or(o, 0);
  if (trials > 0) {
    const EmpiricalStats st = run_trials(ProcessSpec::leadingones(n, a), {trials, o.seed, 0, o.workers, 0});
    j["empirical"] = stats_json(st);
    checks.push_back(exact_check("empirical-mean", st.mean, "within 4 SE of the closed form",
                                 formula - 4.0 * st.standard_error, formula + 4.0 * st.standard_error, bad));
  }
  j["checks"] = checks;
  out.report = j;
  out.violation = bad;
  return out;
}

SuiteOutcome leadingones_tails(const SuiteOptions& o) {
  const int n = o.n > 0 ? o.n : 100;
  const int a = o.a >= 0 ? o.a : 90;
  const double r = 2.0 * std::pow(static_cast<double>(n), 1.5);
  SuiteOutcome out;
  bool bad = false;
  const auto pred = leadingones_tail_predictions(n, a, r);
  // Constant that the tail argument actually supports: eta = C' n^{-3/2}.
  const double corrected = 1.0 / (4.0 * kE * (8.0 * kE - 1.0));
  const double corrected_prob = std::exp(-corrected * r * std::pow(static_cast<double>(n), -1.5));

  std::vector<TailClaim> claims = {
      {"upper", pred.upper_t, pred.upper_prob, ClaimSide::UpperTail, std::nullopt},
      {"lower", pred.lower_t, pred.lower_prob, ClaimSide::LowerTail, std::nullopt},
      {"upper-corrected-constant", pred.upper_t, corrected_prob, ClaimSide::UpperTail, std::nullopt},
      {"lower-corrected-constant", pred.lower_t, corrected_prob, ClaimSide::LowerTail, std::nullopt},
  };
  const MarkovChain chain = build_leadingones_level_chain(n, a);
  const auto start = leadingones_level_start(n);
  const SurvivalCurve curve = exact_tail(chain, start, static_cast<std::size_t>(std::ceil(pred.upper_t)) + 1);
  for (auto& c : claims) {
    const double ct = std::ceil(c.t);
    const double s = ct <= 0.0 ? 1.0
                     : static_cast<std::size_t>(ct) < curve.survival.size() ? curve.survival[static_cast<std::size_t>(ct)]
                                                                            : 0.0;
    c.exact = c.side == ClaimSide::UpperTail ? s : 1.0 - s;
  }
  json j = {{"suite", "leadingones-tails"},
            {"n", n},
            {"a", a},
            {"r", r},
            {"constant", pred.constant},
            {"corrected_constant", corrected},
            {"expected", leadingones_expected(n, a)}};
  json checks = json::array();
  for (const auto& c : claims) {
    checks.push_back(exact_check("exact-" + c.id, *c.exact, "exact probability <= bound", 0.0, c.bound, bad));
  }
  const std::uint64_t trials = trials_or(o, 100000);
  if (trials > 0) {
    ProcessSpec spec = ProcessSpec::leadingones(n, a);
    const EmpiricalStats st = run_trials(spec, {trials, o.seed, 0, o.workers, 0});
    const ConcentrationReport rep = concentration_check(st, claims);
    if (rep.any_violation()) bad = true;
    j["empirical"] = stats_json(st);
    j["claims"] = claims_json(rep);
  }
  j["checks"] = checks;
  out.report = j;
  out.violation = bad;
  return out;
}

SuiteOutcome soundness(const SuiteOptions& o) {
  SweepOptions so;
  so.chains = o.chains;
  so.seed = o.seed;
  so.max_states = o.max_states;
  so.workers = o.workers;
  const SweepReport rep = run_soundness_sweep(so);
  SuiteOutcome out;
  out.report = to_json(rep, false);
  out.report["suite"] = "soundness-sweep";
  out.report["seed"] = o.seed;
  out.violation = rep.violations() > 0;
  return out;
}

}  // namespace

std::size_t SweepReport::violations() const {
  return static_cast<std::size_t>(std::count_if(checks.begin(), checks.end(), [](const SweepCheck& c) { return c.violated; }));
}

SweepReport run_soundness_sweep(const SweepOptions& opts) {
  if (opts.chains < 1) throw ParameterError("sweep needs at least one chain");
  if (opts.max_states < 3) throw ParameterError("sweep chains need at least 3 states");
  std::vector<ChainResult> results(opts.chains);
  run_parallel(opts.chains, opts.workers, [&](std::size_t i) { results[i] = sweep_chain(i, opts); });
  SweepReport rep;
  rep.chains = opts.chains;
  for (auto& r : results) {
    rep.states += r.states;
    rep.checks.insert(rep.checks.end(), r.checks.begin(), r.checks.end());
    for (const auto& [k, v] : r.applied) rep.applied[k] += v;
    for (const auto& [k, v] : r.not_applicable) rep.not_applicable[k] += v;
  }
  return rep;
}

json to_json(const SweepReport& r, bool include_checks) {
  json j = {{"chains", r.chains},
            {"states", r.states},
            {"checks", r.checks.size()},
            {"violations", r.violations()},
            {"applied", r.applied},
            {"not_applicable", r.not_applicable}};
  json bad = json::array();
  json all = json::array();
  for (const auto& c : r.checks) {
    json e = {{"chain", c.chain},   {"theorem", c.theorem}, {"quantity", c.quantity}, {"horizon", c.horizon},
              {"bound", c.bound},   {"exact", c.exact},     {"direction", c.upper ? "upper" : "lower"}};
    if (c.violated) bad.push_back(e);
    if (include_checks) all.push_back(e);
  }
  j["violation_records"] = bad;
  if (include_checks) j["records"] = all;
  j["verdict"] = r.violations() == 0 ? "consistent" : "violation";
  return j;
}

const std::vector<std::string>& suite_names() {
  static const std::vector<std::string> names = {"onemax-expectation", "onemax-tails", "leadingones-expectation",
                                                 "leadingones-tails", "soundness-sweep"};
  return names;
}

SuiteOutcome run_suite(const SuiteOptions& o) {
  if (o.suite == "onemax-expectation") return onemax_expectation(o);
  if (o.suite == "onemax-tails") return onemax_tails(o);
  if (o.suite == "leadingones-expectation") return leadingones_expectation(o);
  if (o.suite == "leadingones-tails") return leadingones_tails(o);
  if (o.suite == "soundness-sweep") return soundness(o);
  throw ParameterError("unknown suite '" + o.suite + "'");
}

}  // namespace driftkit::cli
