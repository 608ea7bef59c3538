#pragma once

#include <cstdint>
#include <memory>
#include <utility>
#include <vector>

#include "driftkit/markov_chain.hpp"
#include "driftkit/rng.hpp"

namespace driftkit {

enum class Family { OneMax, Linear, LeadingOnes, ExplicitChain };
enum class InitMode { Uniform, FixedBits, FixedDistance, ChainStart };

const char* to_string(Family f) noexcept;

// A benchmark process. The tracked distance is the number of bits differing
// from the optimum (OneMax, linear) or max{0, a - LO(x)} (LeadingOnes); the
// target is distance <= a for OneMax/linear and distance 0 for LeadingOnes.
struct ProcessSpec {
  Family family = Family::OneMax;
  int n = 0;
  std::vector<double> weights;  // linear only
  int a = 0;
  InitMode init = InitMode::Uniform;
  std::vector<std::uint8_t> init_bits;
  int init_distance = 0;
  std::shared_ptr<const MarkovChain> chain;  // explicit chain only
  std::vector<double> chain_start;           // distribution over chain states

  static ProcessSpec onemax(int n);
  static ProcessSpec linear(std::vector<double> weights);
  static ProcessSpec leadingones(int n, int a);
  static ProcessSpec explicit_chain(std::shared_ptr<const MarkovChain> chain, std::vector<double> start);

  ProcessSpec& with_fixed_bits(std::vector<std::uint8_t> bits);
  ProcessSpec& with_fixed_distance(int d);

  // Throws ParameterError on inconsistent fields.
  void validate() const;
};

struct ProcessState {
  std::vector<std::uint8_t> bits;
  long distance = 0;     // zeros w.r.t. the optimum, or LO distance
  long leading_ones = 0;  // LeadingOnes only
  std::uint32_t chain_state = 0;
  std::uint64_t steps = 0;
};

// Precomputes the flip-count distribution; shareable across threads.
class Simulator {
 public:
  explicit Simulator(ProcessSpec spec);

  const ProcessSpec& spec() const noexcept { return spec_; }
  ProcessState initial_state(Rng& rng) const;
  ProcessState state_from_bits(std::vector<std::uint8_t> bits) const;
  bool at_target(const ProcessState& s) const;
  double distance(const ProcessState& s) const;

  // One generation of the (1+1) EA (or one chain transition).
  void step(ProcessState& s, Rng& rng) const;

  // Steps until the target or `cap` steps; returns the step count.
  std::uint64_t run(ProcessState& s, Rng& rng, std::uint64_t cap) const;

  // Distance recomputed from scratch.
  long recompute_distance(const ProcessState& s) const;

 private:
  int sample_flip_count(Rng& rng) const;
  void sample_positions(int k, Rng& rng, std::vector<std::uint32_t>& out) const;

  ProcessSpec spec_;
  std::vector<double> flip_cdf_;
  std::vector<std::uint8_t> optimum_;  // linear: preferred bit per position
};

// Convenience wrapper that builds a Simulator per call.
ProcessState step(const ProcessSpec& spec, ProcessState state, Rng& rng);

struct DriftBounds {
  double lower = 0.0;
  double upper = 0.0;
};

// (1-1/n)^{n-x} x/n and ((1-1/n)(1+x/(n-1)^2))^{n-x} x/n.
DriftBounds onemax_drift_bounds(int n, int x);

// en ln n - 5.9338 n and en ln n - 0.1369 n (O-terms dropped).
DriftBounds onemax_expected_bounds(double n);

// (2 - 2^{-n+a-i+1}) (1-1/n)^{a-i} / n for 1 <= i <= a <= n: the expected
// LeadingOnes gain at distance i, free riders included. It is the drift of
// max(0, a - LO) only for a = n; for a < n that drift is smaller.
double leadingones_exact_drift(int n, int a, int i);

// (n^2-n)/2 ((1 + 1/(n-1))^a - 1).
double leadingones_expected(int n, int a);

// Constant of the LeadingOnes tail exponent, (8e-1)/(4e).
double leadingones_tail_constant();

struct LeadingOnesTailPrediction {
  double upper_t = 0.0;
  double upper_prob = 1.0;  // bound on P(T(a) > upper_t)
  double lower_t = 0.0;
  double lower_prob = 1.0;  // bound on P(T(a) < lower_t), up to an e^{-Omega(log^2 n)} term
  double constant = 0.0;
};

// log means log base 2. Requires 0 < a <= n - log n and log^2 n - 1 <= a <= n.
LeadingOnesTailPrediction leadingones_tail_predictions(int n, int a, double r);

struct OneMaxTailPrediction {
  double lower_t = 0.0;
  double lower_prob = 1.0;  // e^{-r/2}
  double upper_t = 0.0;
  double upper_prob = 1.0;  // e^{-r}
};

OneMaxTailPrediction onemax_tail_predictions(double n, double r, double c_lower);

}  // namespace driftkit
