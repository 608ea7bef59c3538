#include <gtest/gtest.h>

#include <cmath>
#include <sstream>

#include "driftkit/chain_io.hpp"
#include "driftkit/error.hpp"
#include "driftkit/oracle.hpp"
#include "driftkit/potential.hpp"
#include "driftkit/processes.hpp"
#include "reference.hpp"

namespace dk = driftkit;

namespace {

constexpr double kE = 2.718281828459045;

std::vector<std::vector<double>> dense(const dk::MarkovChain& c) {
  std::vector<std::vector<double>> p(c.size(), std::vector<double>(c.size(), 0.0));
  for (std::size_t i = 0; i < c.size(); ++i) {
    for (const auto& t : c.row(i)) p[i][t.to] += t.prob;
  }
  return p;
}

std::vector<char> targets(const dk::MarkovChain& c) {
  std::vector<char> t(c.size());
  for (std::size_t i = 0; i < c.size(); ++i) t[i] = c.is_target(i);
  return t;
}

double prob(const dk::MarkovChain& c, std::size_t from, std::size_t to) {
  for (const auto& t : c.row(from)) {
    if (t.to == to) return t.prob;
  }
  return 0.0;
}

dk::MarkovChain geometric(double p) { return dk::parse_chain_text("0 1\n1 0 0:" + std::to_string(p) + " 1:" + std::to_string(1 - p) + "\n"); }

dk::MarkovChain countdown(int len) {
  std::ostringstream os;
  os << "0 1\n";
  for (int x = 1; x <= len; ++x) os << x << " 0 " << x - 1 << ":1\n";
  return dk::parse_chain_text(os.str());
}

}  // namespace

TEST(ChainIo, ParseAndRoundTrip) {
  const auto c = dk::parse_chain_text("# two states\n0 T\n1 F 0:0.25 1:0.75\n");
  ASSERT_EQ(c.size(), 2u);
  EXPECT_TRUE(c.is_target(0));
  EXPECT_TRUE(c.targets_absorbing());
  std::ostringstream os;
  dk::write_chain(os, c);
  const auto d = dk::parse_chain_text(os.str());
  EXPECT_EQ(d.size(), 2u);
  EXPECT_DOUBLE_EQ(prob(d, 1, 0), 0.25);
}

TEST(ChainIo, Errors) {
  EXPECT_THROW(dk::parse_chain_text("0 1\n1 0 0:0.5\n"), dk::StructuralError);
  EXPECT_THROW(dk::parse_chain_text("0 1\n1 0 5:1\n"), dk::StructuralError);
  EXPECT_THROW(dk::parse_chain_text("0 1\n1 0 1:1\n"), dk::StructuralError);
  try {
    dk::parse_chain_text("0 1\n1 x 0:1\n");
    FAIL();
  } catch (const dk::ParseError& e) {
    EXPECT_EQ(e.position(), 6u);
  }
}

TEST(OneMaxChain, SmallCases) {
  const auto c1 = dk::build_onemax_chain(1);
  EXPECT_DOUBLE_EQ(prob(c1, 1, 0), 1.0);
  const auto c2 = dk::build_onemax_chain(2);
  EXPECT_NEAR(prob(c2, 2, 0), 0.25, 1e-15);
  EXPECT_NEAR(prob(c2, 2, 1), 0.5, 1e-15);
  EXPECT_NEAR(prob(c2, 2, 2), 0.25, 1e-15);
}

TEST(OneMaxChain, MatchesMaskEnumeration) {
  for (int n = 1; n <= 10; ++n) {
    const auto c = dk::build_onemax_chain(n);
    for (int i = 0; i <= n; ++i) {
      if (c.is_target(static_cast<std::size_t>(i))) continue;
      const auto ref = dk::reference::onemax_row_by_masks(n, i);
      for (int j = 0; j <= n; ++j) {
        EXPECT_NEAR(prob(c, static_cast<std::size_t>(i), static_cast<std::size_t>(j)), ref[static_cast<std::size_t>(j)],
                    1e-14)
            << n << ' ' << i << ' ' << j;
      }
    }
  }
}

TEST(OneMaxChain, DriftSandwich) {
  for (int n : {2, 3, 10, 57, 100, 200}) {
    const auto c = dk::build_onemax_chain(n);
    const auto d = dk::exact_drift(c);
    for (int x = 1; x <= n; ++x) {
      const auto b = dk::onemax_drift_bounds(n, x);
      const double v = d[static_cast<std::size_t>(x)];
      EXPECT_GE(v, b.lower * (1 - 1e-12)) << n << ' ' << x;
      EXPECT_LE(v, b.upper * (1 + 1e-12)) << n << ' ' << x;
    }
  }
}

TEST(LeadingOnesChain, Basics) {
  const auto c1 = dk::build_leadingones_chain(1, 1);
  EXPECT_EQ(c1.size(), 2u);
  EXPECT_DOUBLE_EQ(prob(c1, 0, 1), 1.0);
  for (int n = 1; n <= 10; ++n) {
    const auto c = dk::build_leadingones_chain(n, n);
    for (std::size_t i = 0; i < c.size(); ++i) {
      double s = 0;
      for (const auto& t : c.row(i)) s += t.prob;
      EXPECT_NEAR(s, 1.0, 1e-12);
    }
  }
  EXPECT_THROW(dk::build_leadingones_chain(13, 13), dk::CapacityError);
}

TEST(LeadingOnesChain, ExpectationMatchesFormula) {
  const auto c = dk::build_leadingones_chain(8, 8);
  const double e = dk::exact_expectation(c, dk::uniform_bitstring_start(8));
  EXPECT_NEAR(e, dk::leadingones_expected(8, 8), 1e-9);
  for (int a = 1; a <= 8; ++a) {
    const auto l = dk::build_leadingones_level_chain(8, a);
    EXPECT_NEAR(dk::exact_expectation(l, dk::leadingones_level_start(8)), dk::leadingones_expected(8, a),
                1e-9 * dk::leadingones_expected(8, a));
  }
}

TEST(Expectation, SimpleChains) {
  EXPECT_NEAR(dk::exact_expectation(geometric(0.25), 1), 4.0, 1e-12);
  EXPECT_NEAR(dk::exact_expectation(countdown(10), 10), 10.0, 1e-12);
}

TEST(Expectation, SolversAgree) {
  for (std::uint64_t seed = 1; seed <= 20; ++seed) {
    const auto c = dk::random_absorbing_chain(seed, 3 + seed % 25, dk::ChainFamily::Monotone);
    const auto back = dk::expected_hitting_times(c, dk::SolveMethod::BackSubstitution);
    const auto lu = dk::expected_hitting_times(c, dk::SolveMethod::Dense);
    const auto it = dk::reference::hitting_times_by_iteration(dense(c), targets(c));
    for (std::size_t i = 0; i < c.size(); ++i) {
      EXPECT_NEAR(back[i], lu[i], 1e-9 * (1 + std::abs(back[i])));
      EXPECT_NEAR(back[i], it[i], 1e-8 * (1 + std::abs(back[i])));
    }
  }
  for (std::uint64_t seed = 1; seed <= 20; ++seed) {
    const auto c = dk::random_absorbing_chain(seed, 3 + seed % 25, dk::ChainFamily::General);
    const auto lu = dk::expected_hitting_times(c);
    const auto it = dk::reference::hitting_times_by_iteration(dense(c), targets(c));
    for (std::size_t i = 0; i < c.size(); ++i) EXPECT_NEAR(lu[i], it[i], 1e-8 * (1 + std::abs(lu[i])));
  }
}

TEST(Expectation, OneMaxAgainstIteration) {
  const auto c = dk::build_onemax_chain(30);
  const auto e = dk::expected_hitting_times(c);
  const auto it = dk::reference::hitting_times_by_iteration(dense(c), targets(c));
  for (std::size_t i = 0; i < c.size(); ++i) EXPECT_NEAR(e[i], it[i], 1e-9 * (1 + e[i]));
}

TEST(Expectation, Errors) {
  EXPECT_THROW(dk::parse_chain_text("0 1\n1 0 1:1\n2 0 0:1\n"), dk::StructuralError);
  EXPECT_THROW(dk::build_onemax_chain(5001), dk::CapacityError);
}

TEST(Tail, SimpleChains) {
  const auto g = dk::exact_tail(geometric(0.25), 1, 30);
  EXPECT_EQ(g.survival[0], 1.0);
  for (std::size_t t = 1; t <= 30; ++t) EXPECT_NEAR(g.survival[t], std::pow(0.75, t - 1.0), 1e-14);
  const auto d = dk::exact_tail(countdown(10), 10, 20);
  EXPECT_EQ(d.survival[10], 1.0);
  EXPECT_EQ(d.survival[11], 0.0);
}

TEST(Tail, OneMaxConsistency) {
  const auto c = dk::build_onemax_chain(100);
  const auto start = dk::binomial_start(100);
  const auto s = dk::exact_tail(c, start, 20000);
  double sum = 0;
  for (std::size_t t = 1; t < s.survival.size(); ++t) {
    sum += s.survival[t];
    EXPECT_LE(s.survival[t], s.survival[t - 1]);
  }
  EXPECT_NEAR(sum, dk::exact_expectation(c, start), 1e-6);
  const auto ref = dk::reference::survival_by_propagation(dense(c), targets(c), start, 2000);
  for (std::size_t t = 0; t <= 2000; ++t) EXPECT_NEAR(s.survival[t], ref[t], 1e-12);
}

TEST(DriftProfile, TwoState) {
  const double p = 0.3, lambda = 0.7;
  const dk::PotentialFunction g(dk::HSpec::constant(0.5, 1, 1));
  const auto prof = dk::exact_drift_profile(geometric(p), g, lambda, -1);
  EXPECT_NEAR(prof.drift[1], p, 1e-15);
  EXPECT_NEAR(prof.mgf[1], (1 - p) + p * std::exp(-lambda * g(1)), 1e-15);
}

TEST(DriftProfile, OneMaxMultiplicativeStep) {
  const int n = 100;
  const double delta = 1.0 / (kE * n);
  const auto c = dk::build_onemax_chain(n);
  const dk::PotentialFunction g(dk::HSpec::multiplicative(delta, 1, n));
  const auto prof = dk::exact_drift_profile(c, g, delta, -1);
  for (int x = 1; x <= n; ++x) {
    const auto i = static_cast<std::size_t>(x);
    EXPECT_LE(1.0 - prof.drift[i] / x, 1 - delta + 1e-15) << x;
    if (x >= 2) EXPECT_LE(prof.mgf[i], 1 - delta + 1e-15) << x;
  }
  // From x_min the jump to 0 contributes e^{-delta g(1)} = 1/e instead of
  // X_{t+1}/X_t = 0, so the mgf exceeds 1 - delta there.
  EXPECT_GT(prof.mgf[1], 1 - delta);
  const double p = (1.0 / n) * std::pow(1.0 - 1.0 / n, n - 1);
  EXPECT_NEAR(prof.mgf[1], 1 - p + p / kE, 1e-15);
}

TEST(DriftProfile, OneMaxTableMgf) {
  // h(i) = e^{-1+2i/n} (i/n) (1 + c/n) with the smallest c making h an upper
  // bound on the drift bound h*.
  const int n = 100;
  const double lambda = 1.0 / (kE * n);
  double cstar = 0.0;
  for (int i = 1; i <= n; ++i) {
    const double base = std::exp(-1.0 + 2.0 * i / n) * i / n;
    cstar = std::max(cstar, n * (dk::onemax_drift_bounds(n, i).upper / base - 1.0));
  }
  std::map<long, double> t;
  for (int i = 1; i <= n; ++i) t[i] = std::exp(-1.0 + 2.0 * i / n) * i / n * (1.0 + cstar / n);
  const auto c = dk::build_onemax_chain(n);
  const auto drift = dk::exact_drift(c);
  for (int i = 1; i <= n; ++i) EXPECT_LE(drift[static_cast<std::size_t>(i)], t[i] * (1 + 1e-12));
  const dk::PotentialFunction g(dk::HSpec::table(t, 1, n));
  const auto prof = dk::exact_drift_profile(c, g, lambda, +1);
  for (int i = 1; i <= n; ++i) {
    EXPECT_LE(prof.mgf[static_cast<std::size_t>(i)], 1 + lambda + 2 * lambda / i + 0.01 * lambda) << i;
  }
}

TEST(DriftProfile, GapIsStructuralError) {
  const auto c = dk::parse_chain_text("0 1\n1 0 0:1\n3 0 1:1\n");
  const dk::PotentialFunction g(dk::HSpec::constant(1, 2, 3));
  EXPECT_THROW(dk::exact_drift_profile(c, g, 0.1, 1), dk::StructuralError);
}

TEST(RandomChains, AreValid) {
  for (std::uint64_t seed = 0; seed < 200; ++seed) {
    for (auto fam : {dk::ChainFamily::Monotone, dk::ChainFamily::General}) {
      const auto c = dk::random_absorbing_chain(seed, 2 + seed % 39, fam);
      EXPECT_TRUE(c.is_target(0));
      if (fam == dk::ChainFamily::Monotone) EXPECT_TRUE(c.is_monotone());
      for (std::size_t i = 1; i < c.size(); ++i) EXPECT_GT(prob(c, i, i - 1), 0.0);
    }
  }
}
