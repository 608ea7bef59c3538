#pragma once

#include <cstddef>
#include <cstdint>
#include <map>
#include <string>
#include <vector>

#include <nlohmann/json.hpp>

namespace driftkit::cli {

struct SweepOptions {
  std::size_t chains = 50;
  std::uint64_t seed = 7;
  std::size_t max_states = 40;
  unsigned workers = 1;
};

// One bound compared against the oracle. `quantity` is "E[T]", "P(T>=t)" or "P(T<t)".
struct SweepCheck {
  std::size_t chain = 0;
  std::string theorem;
  std::string quantity;
  double horizon = 0.0;
  double bound = 0.0;
  double exact = 0.0;
  bool upper = true;  // bound should dominate the exact value
  bool violated = false;
};

struct SweepReport {
  std::size_t chains = 0;
  std::size_t states = 0;
  std::vector<SweepCheck> checks;
  std::map<std::string, std::size_t> applied;
  std::map<std::string, std::size_t> not_applicable;
  std::size_t violations() const;
};

// Random absorbing chains, alternating monotone and general families, with
// every theorem instantiated from exact drift data and checked by the oracle.
SweepReport run_soundness_sweep(const SweepOptions& opts);

nlohmann::json to_json(const SweepReport& r, bool include_checks);

struct SuiteOptions {
  std::string suite;
  int n = 0;   // 0 picks the suite default
  int a = -1;  // -1 picks the suite default
  std::uint64_t trials = 0;
  bool trials_set = false;
  std::uint64_t seed = 1;
  std::size_t chains = 50;
  std::size_t max_states = 40;
  unsigned workers = 1;
};

struct SuiteOutcome {
  nlohmann::json report;
  bool violation = false;
};

// Suites: onemax-expectation, onemax-tails, leadingones-expectation,
// leadingones-tails, soundness-sweep.
SuiteOutcome run_suite(const SuiteOptions& opts);

const std::vector<std::string>& suite_names();

}  // namespace driftkit::cli
