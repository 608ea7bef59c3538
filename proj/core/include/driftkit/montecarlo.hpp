#pragma once

#include <cstdint>
#include <optional>
#include <ostream>
#include <string>
#include <vector>

#include "driftkit/processes.hpp"

namespace driftkit {

struct HitRecord {
  std::uint64_t time = 0;
  bool capped = false;
};

struct HistogramBucket {
  std::uint64_t lo = 0;  // bucket covers [lo, lo + width)
  std::uint64_t count = 0;
};

// Probabilities of the reported quantiles, in percent.
inline constexpr int kQuantileLevels[] = {1, 5, 25, 50, 75, 95, 99};

struct EmpiricalStats {
  std::uint64_t trials = 0;
  double mean = 0.0;
  double variance = 0.0;  // unbiased
  double standard_error = 0.0;
  std::vector<double> quantiles;  // one per kQuantileLevels entry
  std::uint64_t bucket_width = 1;
  std::vector<HistogramBucket> histogram;
  std::uint64_t capped = 0;
  std::uint64_t master_seed = 0;
  std::uint64_t step_cap = 0;
  std::string generator;
  // Mean and variance describe the full distribution only when nothing was capped.
  bool moments_valid = true;
  std::vector<HitRecord> records;  // in trial-index order
  std::vector<std::uint64_t> sorted_times;
};

struct TrialOptions {
  std::uint64_t trials = 1;
  std::uint64_t master_seed = 0;
  std::uint64_t step_cap = 0;  // 0 selects default_step_cap
  unsigned workers = 1;
  std::uint64_t bucket_width = 0;  // 0 picks a width giving about 50 buckets
};

// 100 * e n ln n (at least 1000); for explicit chains 10^7.
std::uint64_t default_step_cap(const ProcessSpec& spec);

EmpiricalStats run_trials(const ProcessSpec& spec, const TrialOptions& opts);

// Wilson score interval for k successes in n trials at normal quantile z.
struct Interval {
  double lo = 0.0;
  double hi = 1.0;
};
Interval wilson_interval(std::uint64_t k, std::uint64_t n, double z);

inline constexpr double kZ99 = 2.5758293035489004;
inline constexpr double kZ999 = 3.2905267314918945;

struct TailEstimate {
  double fraction = 0.0;
  Interval ci99;
};

// Fraction of trials with T >= t and its Wilson 99% interval.
TailEstimate empirical_tail(const EmpiricalStats& stats, std::uint64_t t);

enum class ClaimSide { UpperTail, LowerTail };  // P(T >= t) <= p or P(T < t) <= p
enum class Verdict { Consistent, Violation, Inconclusive };
const char* to_string(ClaimSide s) noexcept;
const char* to_string(Verdict v) noexcept;

struct TailClaim {
  std::string id;
  double t = 0.0;
  double bound = 1.0;
  ClaimSide side = ClaimSide::UpperTail;
  std::optional<double> exact;  // oracle value of the same probability, if known
};

struct ClaimRecord {
  std::string id;
  double t = 0.0;
  ClaimSide side = ClaimSide::UpperTail;
  double bound = 1.0;
  double estimate = 0.0;
  Interval ci99;
  Interval ci999;
  std::optional<double> exact;
  Verdict verdict = Verdict::Inconclusive;
};

struct ConcentrationReport {
  std::vector<ClaimRecord> records;
  bool any_violation() const;
};

// Violation when the bound lies below the 99.9% interval; consistent when the
// bound is vacuous or the point estimate does not exceed it.
ConcentrationReport concentration_check(const EmpiricalStats& stats, const std::vector<TailClaim>& claims);

// "trial,T,capped" rows in trial order.
void write_trials_csv(std::ostream& os, const EmpiricalStats& stats);

}  // namespace driftkit
