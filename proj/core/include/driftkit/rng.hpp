#pragma once

#include <cstdint>
#include <random>

namespace driftkit {

// Identifier embedded in every simulation output.
inline constexpr const char* kGeneratorId = "mt19937_64+splitmix64-stream/1";

// SplitMix64 output function.
constexpr std::uint64_t splitmix64(std::uint64_t z) noexcept {
  z += 0x9E3779B97F4A7C15ull;
  z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ull;
  z = (z ^ (z >> 27)) * 0x94D049BB133111EBull;
  return z ^ (z >> 31);
}

// Seed of trial i: splitmix64(splitmix64(master) ^ i).
constexpr std::uint64_t trial_seed(std::uint64_t master, std::uint64_t trial) noexcept {
  return splitmix64(splitmix64(master) ^ trial);
}

class Rng {
 public:
  explicit Rng(std::uint64_t seed) : gen_(seed) {}
  static Rng for_trial(std::uint64_t master, std::uint64_t trial) { return Rng(trial_seed(master, trial)); }

  std::uint64_t next() { return gen_(); }
  // Uniform in [0, 1) with 53 random bits.
  double uniform01() { return static_cast<double>(gen_() >> 11) * 0x1.0p-53; }
  // Uniform in [0, bound) by Lemire's multiply-and-reject method.
  std::uint64_t below(std::uint64_t bound);

 private:
  std::mt19937_64 gen_;
};

}  // namespace driftkit
