#pragma once

#include <functional>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "driftkit/hspec.hpp"
#include "driftkit/markov_chain.hpp"
#include "driftkit/potential.hpp"

namespace driftkit {

enum class Direction { Upper, Lower };
enum class PreconditionStatus { AssertedByUser, VerifiedByOracle };

const char* to_string(Direction d) noexcept;
const char* to_string(PreconditionStatus s) noexcept;

using ParamList = std::vector<std::pair<std::string, double>>;

struct BoundResult {
  double bound = 0.0;  // expected steps
  Direction direction = Direction::Upper;
  std::string theorem;
  ParamList params;
  PreconditionStatus status = PreconditionStatus::AssertedByUser;
  ParamList details;  // secondary values, e.g. the weaker fitness-level form
};

// Every function below takes an optional chain. When given, each hypothesis
// of the theorem is checked exactly per non-target state and a failure throws
// PreconditionError naming the state; the result is then marked
// VerifiedByOracle. The chain's targets must be exactly its label-0 states.

BoundResult additive_upper(double delta_u, double x0, const MarkovChain* chain = nullptr);
BoundResult additive_lower(double delta_l, double x0, const MarkovChain* chain = nullptr);

// g(X0)/alpha. Upper: drift >= h and g-drift >= alpha; lower: both <=.
BoundResult general_expected_bound(const PotentialFunction& g, double alpha, double x0, Direction direction,
                                   const MarkovChain* chain = nullptr);

// h must be monotone increasing; sampled unless `monotone_asserted`.
BoundResult variable_upper(const HSpec& h, double x0, const MarkovChain* chain = nullptr,
                           bool monotone_asserted = false);

// Levels are 1-based: p[i-1] = p_i, u[i-1] = u_i, gamma[i-1][j-1] = gamma_{i,j}
// for j = i+1..m, start[i-1] = P(start in A_i).
struct FitnessPartition {
  int m = 0;
  std::vector<double> p;
  std::vector<double> u;
  std::vector<std::vector<double>> gamma;
  double chi = 0.0;
  std::vector<double> start;
};

// With a chain, level i is the i-th largest distinct non-target label and
// level m holds the targets.
BoundResult fitness_levels_upper(const FitnessPartition& partition, int start_level,
                                 const MarkovChain* chain = nullptr);
BoundResult fitness_levels_lower(const FitnessPartition& partition, const MarkovChain* chain = nullptr);

// Exact level data of a monotone chain: p_i = min leave probability, u_i and
// gamma from the per-level maximal transition probabilities, chi maximal
// feasible, start from `start_distribution` if given.
FitnessPartition partition_from_chain(const MarkovChain& chain,
                                      const std::vector<double>* start_distribution = nullptr);

// Largest chi in [0, 1] with gamma_{i,j} >= chi sum_{k>=j} gamma_{i,k}.
double max_feasible_chi(const FitnessPartition& partition);

BoundResult nonmonotone_variable_upper(const HSpec& h, double c, double x0, const MarkovChain* chain = nullptr);

// Smallest c >= 1 meeting the h-ratio condition for the chain's jump sizes (sampled),
// or nullopt if the jump-balance condition then fails somewhere.
std::optional<double> minimal_nonmonotone_c(const HSpec& h, const MarkovChain& chain);

using StateMap = std::function<double(double)>;

BoundResult variable_lower(const HSpec& h, const StateMap& c_map, double x0, const MarkovChain* chain = nullptr,
                           bool monotone_asserted = false);

BoundResult multiplicative_upper(double delta, double x_min, double x0, const MarkovChain* chain = nullptr);
BoundResult multiplicative_lower(double delta, double beta, double x_min, double x0,
                                 const MarkovChain* chain = nullptr);

// delta = max drift(x)/x and the smallest beta in (0, 1] meeting the jump
// condition; nullopt when no beta works.
std::optional<std::pair<double, double>> fit_multiplicative_lower(const MarkovChain& chain, double x_min);

}  // namespace driftkit
