#include "driftkit/processes.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <stdexcept>
#include <string>

#include "driftkit/error.hpp"
#include "driftkit/special.hpp"

namespace driftkit {

namespace {

constexpr double kE = std::numbers::e;

long count_distance(const std::vector<std::uint8_t>& bits, const std::vector<std::uint8_t>& optimum) {
  long d = 0;
  for (std::size_t i = 0; i < bits.size(); ++i) d += bits[i] != optimum[i] ? 1 : 0;
  return d;
}

long count_leading_ones(const std::vector<std::uint8_t>& bits) {
  long k = 0;
  while (k < static_cast<long>(bits.size()) && bits[static_cast<std::size_t>(k)] == 1) ++k;
  return k;
}

void fill_uniform(std::vector<std::uint8_t>& bits, std::size_t from, Rng& rng) {
  std::uint64_t word = 0;
  int left = 0;
  for (std::size_t i = from; i < bits.size(); ++i) {
    if (left == 0) {
      word = rng.next();
      left = 64;
    }
    bits[i] = static_cast<std::uint8_t>(word & 1u);
    word >>= 1;
    --left;
  }
}

}  // namespace

const char* to_string(Family f) noexcept {
  switch (f) {
    case Family::OneMax:
      return "onemax";
    case Family::Linear:
      return "linear";
    case Family::LeadingOnes:
      return "leadingones";
    case Family::ExplicitChain:
      return "chain";
  }
  return "unknown";
}

ProcessSpec ProcessSpec::onemax(int n) {
  ProcessSpec s;
  s.family = Family::OneMax;
  s.n = n;
  s.validate();
  return s;
}

ProcessSpec ProcessSpec::linear(std::vector<double> weights) {
  ProcessSpec s;
  s.family = Family::Linear;
  s.n = static_cast<int>(weights.size());
  s.weights = std::move(weights);
  s.validate();
  return s;
}

ProcessSpec ProcessSpec::leadingones(int n, int a) {
  ProcessSpec s;
  s.family = Family::LeadingOnes;
  s.n = n;
  s.a = a;
  s.validate();
  return s;
}

ProcessSpec ProcessSpec::explicit_chain(std::shared_ptr<const MarkovChain> chain, std::vector<double> start) {
  ProcessSpec s;
  s.family = Family::ExplicitChain;
  s.chain = std::move(chain);
  s.chain_start = std::move(start);
  s.init = InitMode::ChainStart;
  s.validate();
  return s;
}

ProcessSpec& ProcessSpec::with_fixed_bits(std::vector<std::uint8_t> bits) {
  init = InitMode::FixedBits;
  init_bits = std::move(bits);
  validate();
  return *this;
}

ProcessSpec& ProcessSpec::with_fixed_distance(int d) {
  init = InitMode::FixedDistance;
  init_distance = d;
  validate();
  return *this;
}

void ProcessSpec::validate() const {
  if (family == Family::ExplicitChain) {
    if (!chain) throw ParameterError("explicit-chain process needs a chain");
    if (chain_start.size() != chain->size()) throw ParameterError("chain start distribution has the wrong length");
    CompensatedSum total;
    for (double w : chain_start) {
      if (!(w >= 0.0)) throw ParameterError("chain start weights must be non-negative");
      total += w;
    }
    if (std::abs(total.value() - 1.0) > 1e-9) throw ParameterError("chain start weights must sum to 1");
    return;
  }
  if (n < 1) throw ParameterError("bit length n must be at least 1");
  if (family == Family::Linear) {
    if (weights.size() != static_cast<std::size_t>(n)) throw ParameterError("need one weight per bit");
    for (double w : weights) {
      if (w == 0.0 || !std::isfinite(w)) throw ParameterError("linear weights must be non-zero and finite");
    }
  }
  if (a < 0 || a > n) throw ParameterError("threshold a must lie in [0, n]");
  if (init == InitMode::FixedBits) {
    if (init_bits.size() != static_cast<std::size_t>(n)) throw ParameterError("fixed start needs n bits");
    for (auto b : init_bits) {
      if (b > 1) throw ParameterError("bits must be 0 or 1");
    }
  }
  if (init == InitMode::FixedDistance) {
    const int hi = family == Family::LeadingOnes ? a : n;
    if (init_distance < 0 || init_distance > hi) throw ParameterError("fixed start distance out of range");
  }
  if (init == InitMode::ChainStart) throw ParameterError("chain start applies to explicit chains only");
}

Simulator::Simulator(ProcessSpec spec) : spec_(std::move(spec)) {
  spec_.validate();
  if (spec_.family == Family::ExplicitChain) return;
  const int n = spec_.n;
  optimum_.assign(static_cast<std::size_t>(n), 1);
  if (spec_.family == Family::Linear) {
    for (int i = 0; i < n; ++i) optimum_[static_cast<std::size_t>(i)] = spec_.weights[static_cast<std::size_t>(i)] > 0 ? 1 : 0;
  }
  // CDF of Bin(n, 1/n), truncated once the pmf underflows.
  const double p = 1.0 / n;
  CompensatedSum cdf;
  for (int k = 0; k <= n; ++k) {
    double pmf;
    if (n == 1) {
      pmf = k == 1 ? 1.0 : 0.0;
    } else {
      const double lchoose = std::lgamma(n + 1.0) - std::lgamma(k + 1.0) - std::lgamma(n - k + 1.0);
      pmf = std::exp(lchoose + k * std::log(p) + (n - k) * std::log1p(-p));
    }
    cdf += pmf;
    flip_cdf_.push_back(cdf.value());
    if (k > 1 && pmf < 1e-300) break;
  }
  flip_cdf_.back() = 1.0;
}

int Simulator::sample_flip_count(Rng& rng) const {
  const double u = rng.uniform01();
  const auto it = std::upper_bound(flip_cdf_.begin(), flip_cdf_.end(), u);
  return static_cast<int>(std::min<std::ptrdiff_t>(it - flip_cdf_.begin(),
                                                   static_cast<std::ptrdiff_t>(flip_cdf_.size()) - 1));
}

void Simulator::sample_positions(int k, Rng& rng, std::vector<std::uint32_t>& out) const {
  out.clear();
  const auto n = static_cast<std::uint64_t>(spec_.n);
  while (static_cast<int>(out.size()) < k) {
    const auto pos = static_cast<std::uint32_t>(rng.below(n));
    if (std::find(out.begin(), out.end(), pos) == out.end()) out.push_back(pos);
  }
}

ProcessState Simulator::state_from_bits(std::vector<std::uint8_t> bits) const {
  if (spec_.family == Family::ExplicitChain) throw ParameterError("chain processes have no bit strings");
  if (bits.size() != static_cast<std::size_t>(spec_.n)) throw ParameterError("state needs n bits");
  ProcessState s;
  s.bits = std::move(bits);
  if (spec_.family == Family::LeadingOnes) {
    s.leading_ones = count_leading_ones(s.bits);
    s.distance = std::max(0L, spec_.a - s.leading_ones);
  } else {
    s.distance = count_distance(s.bits, optimum_);
  }
  return s;
}

ProcessState Simulator::initial_state(Rng& rng) const {
  if (spec_.family == Family::ExplicitChain) {
    ProcessState s;
    const double u = rng.uniform01();
    double cum = 0.0;
    std::size_t idx = spec_.chain_start.size() - 1;
    for (std::size_t i = 0; i < spec_.chain_start.size(); ++i) {
      cum += spec_.chain_start[i];
      if (u < cum) {
        idx = i;
        break;
      }
    }
    while (spec_.chain_start[idx] == 0.0 && idx > 0) --idx;
    s.chain_state = static_cast<std::uint32_t>(idx);
    return s;
  }
  const auto n = static_cast<std::size_t>(spec_.n);
  std::vector<std::uint8_t> bits(n);
  switch (spec_.init) {
    case InitMode::Uniform:
      fill_uniform(bits, 0, rng);
      break;
    case InitMode::FixedBits:
      bits = spec_.init_bits;
      break;
    case InitMode::FixedDistance:
      if (spec_.family == Family::LeadingOnes) {
        const auto lo = static_cast<std::size_t>(spec_.a - spec_.init_distance);
        std::fill(bits.begin(), bits.begin() + static_cast<std::ptrdiff_t>(lo), 1);
        if (lo < n) {
          bits[lo] = 0;
          fill_uniform(bits, lo + 1, rng);
        }
      } else {
        bits = optimum_;
        for (int i = 0; i < spec_.init_distance; ++i) bits[static_cast<std::size_t>(i)] ^= 1u;
      }
      break;
    case InitMode::ChainStart:
      break;
  }
  return state_from_bits(std::move(bits));
}

bool Simulator::at_target(const ProcessState& s) const {
  switch (spec_.family) {
    case Family::ExplicitChain:
      return spec_.chain->is_target(s.chain_state);
    case Family::LeadingOnes:
      return s.leading_ones >= spec_.a;
    default:
      return s.distance <= spec_.a;
  }
}

double Simulator::distance(const ProcessState& s) const {
  if (spec_.family == Family::ExplicitChain) return spec_.chain->label(s.chain_state);
  return static_cast<double>(s.distance);
}

long Simulator::recompute_distance(const ProcessState& s) const {
  if (spec_.family == Family::LeadingOnes) return std::max(0L, spec_.a - count_leading_ones(s.bits));
  if (spec_.family == Family::ExplicitChain) return static_cast<long>(spec_.chain->label(s.chain_state));
  return count_distance(s.bits, optimum_);
}

void Simulator::step(ProcessState& s, Rng& rng) const {
  ++s.steps;
  if (spec_.family == Family::ExplicitChain) {
    const double u = rng.uniform01();
    double cum = 0.0;
    const auto row = spec_.chain->row(s.chain_state);
    std::uint32_t next = row.back().to;
    for (const auto& t : row) {
      cum += t.prob;
      if (u < cum) {
        next = t.to;
        break;
      }
    }
    s.chain_state = next;
    return;
  }
  const int k = sample_flip_count(rng);
  if (k == 0) return;
  thread_local std::vector<std::uint32_t> pos;
  sample_positions(k, rng, pos);

  switch (spec_.family) {
    case Family::OneMax: {
      int zeros = 0;
      for (auto i : pos) zeros += s.bits[i] == 0 ? 1 : 0;
      const int ones = k - zeros;
      if (zeros < ones) return;
      for (auto i : pos) s.bits[i] ^= 1u;
      s.distance -= zeros - ones;
      return;
    }
    case Family::Linear: {
      double gain = 0.0;
      long change = 0;
      for (auto i : pos) {
        gain += s.bits[i] ? -spec_.weights[i] : spec_.weights[i];
        change += s.bits[i] == optimum_[i] ? 1 : -1;
      }
      if (gain < 0.0) return;
      for (auto i : pos) s.bits[i] ^= 1u;
      s.distance += change;
      return;
    }
    case Family::LeadingOnes: {
      const auto lo = static_cast<std::uint32_t>(s.leading_ones);
      bool improves = false;
      for (auto i : pos) {
        if (i < lo) return;
        if (i == lo) improves = true;
      }
      for (auto i : pos) s.bits[i] ^= 1u;
      if (improves) {
        long j = s.leading_ones + 1;
        while (j < spec_.n && s.bits[static_cast<std::size_t>(j)] == 1) ++j;
        s.leading_ones = j;
        s.distance = std::max(0L, spec_.a - j);
      }
      return;
    }
    case Family::ExplicitChain:
      return;
  }
}

std::uint64_t Simulator::run(ProcessState& s, Rng& rng, std::uint64_t cap) const {
  const std::uint64_t start = s.steps;
  while (!at_target(s) && s.steps - start < cap) {
    step(s, rng);
#ifndef NDEBUG
    if ((s.steps & 0xFFFFu) == 0 && spec_.family != Family::ExplicitChain && recompute_distance(s) != s.distance) {
      throw std::logic_error("cached distance diverged from the bit string");
    }
#endif
  }
  return s.steps - start;
}

ProcessState step(const ProcessSpec& spec, ProcessState state, Rng& rng) {
  Simulator sim(spec);
  sim.step(state, rng);
  return state;
}

DriftBounds onemax_drift_bounds(int n, int x) {
  if (n < 1 || x < 1 || x > n) throw ParameterError("need 1 <= x <= n");
  const double nn = n;
  const double q = 1.0 - 1.0 / nn;
  const double lower = std::pow(q, n - x) * x / nn;
  const double base = n == 1 ? 0.0 : q * (1.0 + x / ((nn - 1.0) * (nn - 1.0)));
  const double upper = n - x == 0 ? x / nn : std::pow(base, n - x) * x / nn;
  return {lower, upper};
}

DriftBounds onemax_expected_bounds(double n) {
  if (n < 2) throw ParameterError("need n >= 2");
  const double lead = kE * n * std::log(n);
  return {lead - 5.9338 * n, lead - 0.1369 * n};
}

double leadingones_exact_drift(int n, int a, int i) {
  if (!(1 <= i && i <= a && a <= n)) throw ParameterError("need 1 <= i <= a <= n");
  const double nn = n;
  return (2.0 - std::ldexp(1.0, -n + a - i + 1)) * std::pow(1.0 - 1.0 / nn, a - i) / nn;
}

double leadingones_expected(int n, int a) {
  if (n < 2) throw ParameterError("need n >= 2");
  if (a < 0 || a > n) throw ParameterError("need 0 <= a <= n");
  const double nn = n;
  return (nn * nn - nn) / 2.0 * std::expm1(a * std::log1p(1.0 / (nn - 1.0)));
}

double leadingones_tail_constant() { return (8.0 * kE - 1.0) / (4.0 * kE); }

LeadingOnesTailPrediction leadingones_tail_predictions(int n, int a, double r) {
  if (n < 2) throw ParameterError("need n >= 2");
  if (r < 0.0) throw ParameterError("r must be non-negative");
  const double nn = n;
  const double lg = std::log2(nn);
  if (!(a > 0 && a <= nn - lg)) {
    throw ParameterError("upper tail needs 0 < a <= n - log n; got a = " + std::to_string(a));
  }
  if (!(a >= lg * lg - 1.0 && a <= n)) {
    throw ParameterError("lower tail needs log^2 n - 1 <= a <= n; got a = " + std::to_string(a));
  }
  const double growth = std::expm1(a * std::log1p(1.0 / (nn - 1.0)));
  LeadingOnesTailPrediction out;
  out.constant = leadingones_tail_constant();
  out.upper_t = nn * nn / 2.0 * growth + r;
  out.lower_t = (nn * nn - nn) / 2.0 * (growth - 2.0 * lg * lg / nn) - r;
  out.upper_prob = std::exp(-out.constant * r * std::pow(nn, -1.5));
  out.lower_prob = out.upper_prob;
  return out;
}

OneMaxTailPrediction onemax_tail_predictions(double n, double r, double c_lower) {
  if (n < 2) throw ParameterError("need n >= 2");
  if (r < 0.0) throw ParameterError("r must be non-negative");
  const double lead = kE * n * std::log(n);
  return {lead - c_lower * n - r * kE * n, std::exp(-r / 2.0), lead + r * kE * n, std::exp(-r)};
}

}  // namespace driftkit
