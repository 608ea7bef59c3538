#pragma once

#include <cstdint>
#include <vector>

#include "driftkit/markov_chain.hpp"
#include "driftkit/potential.hpp"

namespace driftkit {

// Zero-count chain of the (1+1) EA on OneMax: state i has i zeros, targets
// are the states with at most `a` zeros. Binomial terms are evaluated in log
// space and dropped once they underflow; rejected offspring and the
// equal-fitness moves fold into the diagonal. 1 <= n <= 5000.
MarkovChain build_onemax_chain(int n, double a = 0.0);

// Full 2^n chain of the (1+1) EA on LeadingOnes (n <= 12). Bit k of the state
// index is position k of the string; the label is max(0, a - LO(x)).
MarkovChain build_leadingones_chain(int n, int a);

// The same process lumped by LO value: state k is LO value k, label
// max(0, a - k). Exact because the bits behind the first zero stay uniform.
MarkovChain build_leadingones_level_chain(int n, int a);

// Start distributions (dense, one weight per state).
std::vector<double> point_start(const MarkovChain& chain, std::size_t state);
std::vector<double> binomial_start(int n);                  // for build_onemax_chain(n)
std::vector<double> uniform_bitstring_start(int n);         // for build_leadingones_chain(n, .)
std::vector<double> leadingones_level_start(int n);         // for build_leadingones_level_chain(n, .)

enum class SolveMethod { Auto, BackSubstitution, Dense };

// E[T | X_0 = s] for every state s (0 on targets). Monotone chains are solved
// by back-substitution over groups of equal label, others by a dense LU with
// iterative refinement. Either way the residual is checked against
// 1e-9 (1 + |E|).
std::vector<double> expected_hitting_times(const MarkovChain& chain, SolveMethod method = SolveMethod::Auto);

double exact_expectation(const MarkovChain& chain, std::size_t start, SolveMethod method = SolveMethod::Auto);
double exact_expectation(const MarkovChain& chain, const std::vector<double>& start,
                         SolveMethod method = SolveMethod::Auto);

struct SurvivalCurve {
  std::vector<double> survival;  // survival[t] = P(T >= t)
  bool truncated = false;        // stopped early because the mass underflowed
};

SurvivalCurve exact_tail(const MarkovChain& chain, const std::vector<double>& start, std::size_t t_max);
SurvivalCurve exact_tail(const MarkovChain& chain, std::size_t start, std::size_t t_max);

struct DriftProfile {
  std::vector<double> drift;            // E(X_t - X_{t+1} | x)
  std::vector<double> potential_drift;  // E(g(X_t) - g(X_{t+1}) | x)
  std::vector<double> mgf;              // E(exp(sign * lambda * (g(X_t) - g(X_{t+1}))) | x)
  double lambda = 0.0;
  int sign = 1;
};

// Plain drift per state, 0 on targets.
std::vector<double> exact_drift(const MarkovChain& chain);

// Throws StructuralError if a label reached by the chain lies in (0, x_min).
DriftProfile exact_drift_profile(const MarkovChain& chain, const PotentialFunction& g, double lambda, int sign);

enum class ChainFamily { Monotone, General };

// Random chain on labels 0..states-1 with target {0} absorbing and
// P(x -> x-1) > 0 for every x >= 1. Monotone chains never move up.
MarkovChain random_absorbing_chain(std::uint64_t seed, std::size_t states, ChainFamily family);

}  // namespace driftkit
