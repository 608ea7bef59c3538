#include <gtest/gtest.h>

#include <cmath>
#include <sstream>

#include "driftkit/chain_io.hpp"
#include "driftkit/error.hpp"
#include "driftkit/montecarlo.hpp"
#include "driftkit/oracle.hpp"
#include "driftkit/processes.hpp"
#include "driftkit/rng.hpp"
#include "reference.hpp"

namespace dk = driftkit;

namespace {
constexpr double kE = 2.718281828459045;
}

TEST(Rng, StreamsAreStable) {
  EXPECT_EQ(dk::trial_seed(1, 0), dk::splitmix64(dk::splitmix64(1)));
  EXPECT_NE(dk::trial_seed(1, 0), dk::trial_seed(1, 1));
  dk::Rng r(5);
  for (int i = 0; i < 10000; ++i) EXPECT_LT(r.below(7), 7u);
  dk::Rng a = dk::Rng::for_trial(9, 3), b(dk::trial_seed(9, 3));
  EXPECT_EQ(a.next(), b.next());
}

TEST(Spec, Validation) {
  EXPECT_THROW(dk::ProcessSpec::onemax(0).validate(), dk::ParameterError);
  EXPECT_THROW(dk::ProcessSpec::linear({1.0, 0.0}).validate(), dk::ParameterError);
  EXPECT_THROW(dk::ProcessSpec::leadingones(5, 6).validate(), dk::ParameterError);
  EXPECT_THROW(dk::ProcessSpec::onemax(4).with_fixed_bits({1, 0}), dk::ParameterError);
}

TEST(Step, SingleBitAlwaysHits) {
  dk::Simulator sim(dk::ProcessSpec::onemax(1).with_fixed_bits({0}));
  dk::Rng rng(1);
  for (int i = 0; i < 100; ++i) {
    auto s = sim.initial_state(rng);
    EXPECT_EQ(s.distance, 1);
    sim.step(s, rng);
    EXPECT_TRUE(sim.at_target(s));
  }
}

TEST(Step, OneMaxEmpiricalDrift) {
  const int n = 10;
  const auto chain = dk::build_onemax_chain(n);
  const auto exact = dk::exact_drift(chain);
  dk::Rng rng(42);
  for (int x : {1, 5, 10}) {
    dk::Simulator sim(dk::ProcessSpec::onemax(n).with_fixed_distance(x));
    const int samples = 1'000'000;
    double sum = 0, sq = 0;
    for (int k = 0; k < samples; ++k) {
      auto s = sim.initial_state(rng);
      sim.step(s, rng);
      const double d = static_cast<double>(x - s.distance);
      sum += d;
      sq += d * d;
    }
    const double mean = sum / samples;
    const double se = std::sqrt((sq / samples - mean * mean) / samples);
    EXPECT_NEAR(mean, exact[static_cast<std::size_t>(x)], 3 * se + 1e-12) << x;
  }
}

TEST(Step, LeadingOnesNeverDecreases) {
  const int n = 30;
  dk::Simulator sim(dk::ProcessSpec::leadingones(n, n));
  dk::Rng rng(7);
  auto s = sim.initial_state(rng);
  long violations = 0;
  for (int k = 0; k < 1'000'000; ++k) {
    if (sim.at_target(s)) s = sim.initial_state(rng);
    const long before = s.leading_ones;
    sim.step(s, rng);
    if (s.leading_ones < before) ++violations;
    if (s.distance != sim.recompute_distance(s)) ++violations;
  }
  EXPECT_EQ(violations, 0);
}

TEST(Step, LinearTracksDistance) {
  dk::Simulator sim(dk::ProcessSpec::linear({3.0, -1.0, 0.5, 2.0, -4.0, 1.0}));
  dk::Rng rng(3);
  auto s = sim.initial_state(rng);
  while (!sim.at_target(s)) {
    sim.step(s, rng);
    ASSERT_EQ(s.distance, sim.recompute_distance(s));
  }
  EXPECT_EQ(s.bits, (std::vector<std::uint8_t>{1, 0, 1, 1, 0, 1}));
}

TEST(Formulas, DriftBounds) {
  const auto b = dk::onemax_drift_bounds(7, 7);
  EXPECT_DOUBLE_EQ(b.lower, 1.0);
  EXPECT_DOUBLE_EQ(b.upper, 1.0);
  EXPECT_DOUBLE_EQ(dk::onemax_drift_bounds(2, 1).lower, 0.25);
  EXPECT_THROW(dk::onemax_drift_bounds(5, 0), dk::ParameterError);
  EXPECT_THROW(dk::onemax_drift_bounds(5, 6), dk::ParameterError);
}

TEST(Formulas, ExpectedBounds) {
  const auto b = dk::onemax_expected_bounds(1000);
  EXPECT_NEAR(b.lower, 12843.4, 0.1);
  EXPECT_NEAR(b.upper, 18640.4, 0.1);
  for (double n = 2; n <= 1e6; n *= 1.7) EXPECT_LT(dk::onemax_expected_bounds(n).lower, dk::onemax_expected_bounds(n).upper);
  // Relative gaps are 5.9338/(e ln n) and 0.1369/(e ln n).
  const double n = 1e6, lead = kE * n * std::log(n);
  EXPECT_LT(std::abs(dk::onemax_expected_bounds(n).upper / lead - 1), 0.006);
  EXPECT_NEAR(1 - dk::onemax_expected_bounds(n).lower / lead, 5.9338 / (kE * std::log(n)), 1e-12);
  const auto gap = [](double m) { return 1 - dk::onemax_expected_bounds(m).lower / (kE * m * std::log(m)); };
  EXPECT_LT(gap(1e12), gap(1e6));
}

TEST(Formulas, LeadingOnesDrift) {
  EXPECT_DOUBLE_EQ(dk::leadingones_exact_drift(2, 2, 2), 0.75);
  EXPECT_DOUBLE_EQ(dk::leadingones_exact_drift(9, 5, 5), (2 - std::ldexp(1.0, -8)) / 9);
  for (int a = 1; a <= 10; ++a) {
    for (int i = 1; i <= a; ++i) {
      const double formula = dk::leadingones_exact_drift(10, a, i);
      EXPECT_NEAR(formula, dk::reference::leadingones_drift_by_suffixes(10, a, i, false), 1e-12);
      // Free riders past a are lost once the distance is capped at 0.
      const double capped = dk::reference::leadingones_drift_by_suffixes(10, a, i, true);
      if (a == 10) {
        EXPECT_NEAR(formula, capped, 1e-12);
      } else {
        EXPECT_LT(capped, formula);
      }
    }
  }
  EXPECT_THROW(dk::leadingones_exact_drift(5, 3, 4), dk::ParameterError);
}

TEST(Formulas, LeadingOnesExpected) {
  EXPECT_EQ(dk::leadingones_expected(10, 0), 0.0);
  EXPECT_NEAR(dk::leadingones_expected(2, 2), 3.0, 1e-14);
  EXPECT_THROW(dk::leadingones_expected(1, 1), dk::ParameterError);
}

TEST(Formulas, LeadingOnesTails) {
  const auto z = dk::leadingones_tail_predictions(100, 90, 0);
  EXPECT_EQ(z.upper_prob, 1.0);
  const auto p = dk::leadingones_tail_predictions(100, 90, 2000);
  EXPECT_NEAR(p.constant, (8 * kE - 1) / (4 * kE), 1e-15);
  EXPECT_NEAR(p.upper_prob, std::exp(-2 * p.constant), 1e-12);
  EXPECT_NEAR(std::log(p.upper_prob), -3.816, 1e-3);
  try {
    dk::leadingones_tail_predictions(100, 99, 1);
    FAIL();
  } catch (const dk::ParameterError& e) {
    EXPECT_NE(std::string(e.what()).find("upper tail"), std::string::npos);
  }
  EXPECT_THROW(dk::leadingones_tail_predictions(100, 10, 1), dk::ParameterError);
}

TEST(Formulas, OneMaxTails) {
  const auto z = dk::onemax_tail_predictions(100, 0, 6);
  EXPECT_NEAR(z.upper_t, kE * 100 * std::log(100.0), 1e-9);
  EXPECT_EQ(z.upper_prob, 1.0);
  const auto p = dk::onemax_tail_predictions(100, 3, 6);
  EXPECT_NEAR(p.upper_prob, 0.0498, 1e-4);
  EXPECT_NEAR(p.lower_prob, std::exp(-1.5), 1e-15);

  const auto chain = dk::build_onemax_chain(100);
  const auto s = dk::exact_tail(chain, dk::binomial_start(100), 10);
  const double t = std::max(0.0, std::ceil(p.lower_t));
  const double below = t <= 0 ? 0.0 : 1.0 - s.survival[std::min<std::size_t>(10, static_cast<std::size_t>(t))];
  EXPECT_LE(below, p.lower_prob);
}

TEST(Simulator, LinearDominatesOneMaxOnAverage) {
  const int n = 50;
  const std::uint64_t trials = 100000;
  dk::TrialOptions o;
  o.trials = trials;
  o.master_seed = 17;
  const auto om = dk::run_trials(dk::ProcessSpec::onemax(n), o);
  std::vector<double> w(n);
  dk::Rng wr(99);
  for (auto& v : w) v = 1.0 + wr.uniform01() * 9.0;
  const auto lin = dk::run_trials(dk::ProcessSpec::linear(w), o);
  EXPECT_LE(om.mean, lin.mean + 3 * std::hypot(om.standard_error, lin.standard_error));
}
