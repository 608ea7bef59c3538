#include "driftkit/montecarlo.hpp"

#include <algorithm>
#include <cmath>
#include <exception>
#include <numbers>
#include <thread>

#include "driftkit/error.hpp"
#include "driftkit/rng.hpp"
#include "driftkit/special.hpp"

namespace driftkit {

std::uint64_t default_step_cap(const ProcessSpec& spec) {
  if (spec.family == Family::ExplicitChain) return 10'000'000;
  const double n = std::max(2, spec.n);
  const double cap = 100.0 * std::numbers::e * n * std::log(n);
  return std::max<std::uint64_t>(1000, static_cast<std::uint64_t>(std::ceil(cap)));
}

namespace {

double type7_quantile(const std::vector<std::uint64_t>& sorted, double p) {
  const double h = (static_cast<double>(sorted.size()) - 1.0) * p;
  const auto lo = static_cast<std::size_t>(std::floor(h));
  const std::size_t hi = std::min(lo + 1, sorted.size() - 1);
  const double a = static_cast<double>(sorted[lo]);
  const double b = static_cast<double>(sorted[hi]);
  return a + (h - static_cast<double>(lo)) * (b - a);
}

}  // namespace

EmpiricalStats run_trials(const ProcessSpec& spec, const TrialOptions& opts) {
  if (opts.trials < 1) throw ParameterError("need at least one trial");
  const std::uint64_t cap = opts.step_cap == 0 ? default_step_cap(spec) : opts.step_cap;
  const Simulator sim(spec);
  const std::uint64_t n = opts.trials;

  EmpiricalStats st;
  st.records.resize(n);
  const unsigned workers = std::max(1u, static_cast<unsigned>(std::min<std::uint64_t>(opts.workers, n)));
  auto work = [&](std::uint64_t begin, std::uint64_t end) {
    for (std::uint64_t i = begin; i < end; ++i) {
      Rng rng = Rng::for_trial(opts.master_seed, i);
      ProcessState s = sim.initial_state(rng);
      const std::uint64_t t = sim.run(s, rng, cap);
      st.records[i] = {t, !sim.at_target(s)};
    }
  };
  if (workers == 1) {
    work(0, n);
  } else {
    std::vector<std::thread> pool;
    std::vector<std::exception_ptr> errors(workers);
    for (unsigned w = 0; w < workers; ++w) {
      const std::uint64_t b = n * w / workers;
      const std::uint64_t e = n * (w + 1) / workers;
      pool.emplace_back([&, w, b, e] {
        try {
          work(b, e);
        } catch (...) {
          errors[w] = std::current_exception();
        }
      });
    }
    for (auto& th : pool) th.join();
    for (auto& e : errors) {
      if (e) std::rethrow_exception(e);
    }
  }

  st.trials = n;
  st.master_seed = opts.master_seed;
  st.step_cap = cap;
  st.generator = kGeneratorId;
  CompensatedSum sum;
  st.sorted_times.reserve(n);
  for (const auto& r : st.records) {
    if (r.capped) ++st.capped;
    sum += static_cast<double>(r.time);
    st.sorted_times.push_back(r.time);
  }
  if (st.capped == n) throw EstimationError("all " + std::to_string(n) + " trials hit the step cap");
  st.moments_valid = st.capped == 0;
  st.mean = sum.value() / static_cast<double>(n);
  CompensatedSum sq;
  for (const auto& r : st.records) {
    const double d = static_cast<double>(r.time) - st.mean;
    sq += d * d;
  }
  st.variance = n > 1 ? sq.value() / static_cast<double>(n - 1) : 0.0;
  st.standard_error = std::sqrt(st.variance / static_cast<double>(n));
  std::sort(st.sorted_times.begin(), st.sorted_times.end());
  for (int q : kQuantileLevels) st.quantiles.push_back(type7_quantile(st.sorted_times, q / 100.0));

  const std::uint64_t tmin = st.sorted_times.front();
  const std::uint64_t tmax = st.sorted_times.back();
  st.bucket_width = opts.bucket_width != 0 ? opts.bucket_width : std::max<std::uint64_t>(1, (tmax - tmin) / 50 + 1);
  const std::uint64_t base = tmin / st.bucket_width * st.bucket_width;
  for (std::uint64_t t : st.sorted_times) {
    const std::uint64_t lo = base + (t - base) / st.bucket_width * st.bucket_width;
    if (st.histogram.empty() || st.histogram.back().lo != lo) st.histogram.push_back({lo, 0});
    ++st.histogram.back().count;
  }
  return st;
}

Interval wilson_interval(std::uint64_t k, std::uint64_t n, double z) {
  if (n == 0) return {0.0, 1.0};
  const double nn = static_cast<double>(n);
  const double p = static_cast<double>(k) / nn;
  const double z2 = z * z;
  const double denom = 1.0 + z2 / nn;
  const double centre = (p + z2 / (2.0 * nn)) / denom;
  const double half = z * std::sqrt(p * (1.0 - p) / nn + z2 / (4.0 * nn * nn)) / denom;
  Interval iv{std::max(0.0, centre - half), std::min(1.0, centre + half)};
  if (k == 0) iv.lo = 0.0;
  if (k == n) iv.hi = 1.0;
  return iv;
}

TailEstimate empirical_tail(const EmpiricalStats& stats, std::uint64_t t) {
  const auto& v = stats.sorted_times;
  const auto k = static_cast<std::uint64_t>(v.end() - std::lower_bound(v.begin(), v.end(), t));
  const std::uint64_t n = v.size();
  return {n == 0 ? 0.0 : static_cast<double>(k) / static_cast<double>(n), wilson_interval(k, n, kZ99)};
}

const char* to_string(ClaimSide s) noexcept { return s == ClaimSide::UpperTail ? "upper" : "lower"; }

const char* to_string(Verdict v) noexcept {
  switch (v) {
    case Verdict::Consistent:
      return "consistent";
    case Verdict::Violation:
      return "violation";
    case Verdict::Inconclusive:
      return "inconclusive";
  }
  return "unknown";
}

bool ConcentrationReport::any_violation() const {
  return std::any_of(records.begin(), records.end(), [](const ClaimRecord& r) { return r.verdict == Verdict::Violation; });
}

ConcentrationReport concentration_check(const EmpiricalStats& stats, const std::vector<TailClaim>& claims) {
  if (stats.capped != 0) throw EstimationError("concentration checks need uncapped trials");
  const auto& v = stats.sorted_times;
  const std::uint64_t n = v.size();
  ConcentrationReport rep;
  for (const auto& c : claims) {
    ClaimRecord r;
    r.id = c.id;
    r.t = c.t;
    r.side = c.side;
    r.bound = c.bound;
    r.exact = c.exact;
    // T is integral, so T >= t iff T >= ceil(t).
    const double ct = std::ceil(c.t);
    std::uint64_t at_least = 0;
    if (ct <= 0.0) {
      at_least = n;
    } else if (ct < 1.8e19) {
      const auto tt = static_cast<std::uint64_t>(ct);
      at_least = static_cast<std::uint64_t>(v.end() - std::lower_bound(v.begin(), v.end(), tt));
    }
    const std::uint64_t k = c.side == ClaimSide::UpperTail ? at_least : n - at_least;
    r.estimate = static_cast<double>(k) / static_cast<double>(n);
    r.ci99 = wilson_interval(k, n, kZ99);
    r.ci999 = wilson_interval(k, n, kZ999);
    if (c.bound < r.ci999.lo) {
      r.verdict = Verdict::Violation;
    } else if (c.bound >= 1.0 || r.estimate <= c.bound) {
      r.verdict = Verdict::Consistent;
    } else {
      r.verdict = Verdict::Inconclusive;
    }
    rep.records.push_back(std::move(r));
  }
  return rep;
}

void write_trials_csv(std::ostream& os, const EmpiricalStats& stats) {
  os << "trial,T,capped\n";
  for (std::size_t i = 0; i < stats.records.size(); ++i) {
    os << i << ',' << stats.records[i].time << ',' << (stats.records[i].capped ? 1 : 0) << '\n';
  }
}

}  // namespace driftkit
