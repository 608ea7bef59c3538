#include <gtest/gtest.h>

#include <cmath>
#include <random>

#include "driftkit/error.hpp"
#include "driftkit/expr.hpp"
#include "driftkit/hspec.hpp"
#include "driftkit/potential.hpp"
#include "driftkit/special.hpp"
#include "reference.hpp"

namespace dk = driftkit;

TEST(Expr, PrecedenceAndFunctions) {
  EXPECT_DOUBLE_EQ(dk::Expr::parse("1 + 2 * 3").evaluate(0), 7.0);
  EXPECT_DOUBLE_EQ(dk::Expr::parse("2^3^2").evaluate(0), 512.0);
  EXPECT_DOUBLE_EQ(dk::Expr::parse("-2^2").evaluate(0), -4.0);
  EXPECT_DOUBLE_EQ(dk::Expr::parse("min(x, n) + max(x, n)").evaluate(3, 5), 8.0);
  EXPECT_DOUBLE_EQ(dk::Expr::parse("ceil(x / 2)").evaluate(3), 2.0);
  EXPECT_DOUBLE_EQ(dk::Expr::parse(".5e1 + 2e-1").evaluate(0), 5.2);
  EXPECT_NEAR(dk::Expr::parse("exp(-1+2*x/n)*x/n").evaluate(10, 20), std::exp(0.0) * 0.5, 1e-15);
  EXPECT_FALSE(dk::Expr::parse("ln(2) * n").depends_on_x());
  EXPECT_TRUE(dk::Expr::parse("x").depends_on_x());
}

TEST(Expr, Errors) {
  try {
    dk::Expr::parse("1 + * 2");
    FAIL();
  } catch (const dk::ParseError& e) {
    EXPECT_EQ(e.position(), 4u);
  }
  EXPECT_THROW(dk::Expr::parse("y + 1"), dk::ParseError);
  EXPECT_THROW(dk::Expr::parse("min(1)"), dk::ParseError);
  EXPECT_THROW(dk::Expr::parse("(1 + 2"), dk::ParseError);
  EXPECT_THROW(dk::Expr::parse("ln(x)").evaluate(0), dk::DomainError);
  EXPECT_THROW(dk::Expr::parse("1/x").evaluate(0), dk::DomainError);
}

TEST(Special, ExponentialIntegral) {
  EXPECT_NEAR(dk::exp_integral_e1(0.5), 0.559774, 1e-6);
  EXPECT_NEAR(dk::exp_integral_e1(1.0), 0.219384, 1e-5);
  const double x = 1e-8;
  EXPECT_NEAR(dk::exp_integral_e1(x) + std::log(x) + dk::kEulerGamma, 0.0, 1e-7);
  for (double v : {0.01, 0.3, 0.99, 1.0, 1.01, 2.5, 10.0, 40.0}) {
    const double ref = dk::reference::exp_integral_e1(v);
    EXPECT_NEAR(dk::exp_integral_e1(v), ref, 1e-9 * std::max(1.0, ref)) << v;
  }
  EXPECT_THROW(dk::exp_integral_e1(0.0), dk::DomainError);
  EXPECT_THROW(dk::exp_integral_e1(-1.0), dk::DomainError);
}

TEST(Special, CompensatedSumRecoversSmallTerms) {
  dk::CompensatedSum s;
  s.add(1e16);
  for (int i = 0; i < 1000; ++i) s.add(1.0);
  s.add(-1e16);
  EXPECT_DOUBLE_EQ(s.value(), 1000.0);
}

TEST(HSpec, Validation) {
  EXPECT_THROW(dk::HSpec::constant(0.0, 1, 10), dk::PreconditionError);
  EXPECT_THROW(dk::HSpec::constant(1.0, 5, 1), dk::ParameterError);
  EXPECT_THROW(dk::HSpec::multiplicative(1.0, 0, 1), dk::ParameterError);
  EXPECT_THROW(dk::HSpec::table({{1, 0.5}}, 1, 2), dk::ParameterError);
  try {
    dk::HSpec::expression(dk::Expr::parse("x - 3"), 0, 1, 10);
    FAIL();
  } catch (const dk::PreconditionError& e) {
    EXPECT_EQ(e.witness(), "x=1");
  }
  const auto t = dk::HSpec::table({{1, 0.5}, {2, 0.25}}, 1, 2);
  EXPECT_DOUBLE_EQ(t(1.5), 0.25);
  EXPECT_THROW(t(3.0), dk::DomainError);
  const auto dec = dk::HSpec::expression(dk::Expr::parse("10 - x"), 0, 1, 5);
  ASSERT_TRUE(dec.monotonicity_violation().has_value());
  EXPECT_FALSE(dk::HSpec::multiplicative(0.5, 1, 10).monotonicity_violation().has_value());
}

TEST(Potential, IntegrateReciprocalExamples) {
  EXPECT_NEAR(dk::integrate_reciprocal(dk::HSpec::multiplicative(1.0, 1, std::exp(1.0)), 1, std::exp(1.0)), 1.0, 1e-9);
  EXPECT_EQ(dk::integrate_reciprocal(dk::HSpec::constant(1.0, 1, 10), 3, 3), 0.0);
  EXPECT_DOUBLE_EQ(dk::integrate_reciprocal(dk::HSpec::table({{1, 0.5}, {2, 0.25}}, 1, 2), 1, 2), 4.0);
  const auto h = dk::HSpec::expression(dk::Expr::parse("x^2"), 0, 1, 10);
  EXPECT_NEAR(dk::integrate_reciprocal(h, 1, 10), 0.9, 1e-9);
}

TEST(Potential, ModesAndValues) {
  const dk::PotentialFunction c(dk::HSpec::constant(0.5, 1, 100));
  EXPECT_EQ(c.mode(), dk::PotentialFunction::Mode::ClosedForm);
  EXPECT_DOUBLE_EQ(c(10), 20.0);
  EXPECT_EQ(c(0), 0.0);
  EXPECT_THROW(c(0.5), dk::DomainError);

  const dk::PotentialFunction m(dk::HSpec::multiplicative(0.1, 1, 100));
  EXPECT_NEAR(m(std::exp(1.0)), 20.0, 1e-12);
  EXPECT_DOUBLE_EQ(m.at_xmin(), 10.0);

  const dk::PotentialFunction t(dk::HSpec::table({{1, 0.5}, {2, 0.25}, {3, 0.125}}, 1, 3));
  EXPECT_EQ(t.mode(), dk::PotentialFunction::Mode::PrefixSum);
  EXPECT_DOUBLE_EQ(t(3), 2.0 + 4.0 + 8.0);
  EXPECT_DOUBLE_EQ(t(2.5), 2.0 + 4.0 + 4.0);
}

TEST(Potential, AdditivityAndMonotonicity) {
  std::mt19937_64 gen(11);
  const std::vector<dk::HSpec> specs = {
      dk::HSpec::constant(0.3, 1, 50),
      dk::HSpec::multiplicative(0.2, 1, 50),
      dk::HSpec::expression(dk::Expr::parse("exp(-1+x/n)*x/n*(1-1/n)"), 100, 1, 50),
  };
  for (const auto& h : specs) {
    const dk::PotentialFunction g(h);
    std::uniform_real_distribution<double> u(1.0, 50.0);
    for (int k = 0; k < 100; ++k) {
      double x = u(gen), y = u(gen);
      if (x > y) std::swap(x, y);
      EXPECT_NEAR(g(y) - g(x), dk::integrate_reciprocal(h, x, y), 1e-8);
      EXPECT_LE(g(x), g(y));
    }
  }
}

TEST(Potential, QuadratureAgreesWithFineGrid) {
  const auto h = dk::HSpec::expression(dk::Expr::parse("exp(-1+x/100)*x/100*(1-1/100)"), 100, 1, 50);
  const double got = dk::integrate_reciprocal(h, 1, 50);
  const double ref = dk::reference::trapezoid([&](double y) { return 1.0 / h(y); }, 1, 50, 4'000'000);
  EXPECT_NEAR(got, ref, 1e-7 * ref);
}

TEST(Potential, ConvergenceErrorCarriesEstimate) {
  try {
    dk::adaptive_simpson([](double x) { return std::sin(1.0 / x) / x; }, 1e-6, 1.0, 1e-14, 1e-14, 8);
    FAIL();
  } catch (const dk::ConvergenceError& e) {
    EXPECT_TRUE(std::isfinite(e.estimate()));
  }
}

TEST(Potential, ExpCurvatureMatchesDerivativeSign) {
  // h' = 2 >= lambda: e^{lambda g} concave, e^{-lambda g} convex.
  const auto h = dk::HSpec::expression(dk::Expr::parse("2*x"), 0, 1, 20);
  const dk::PotentialFunction g(h);
  const auto up = dk::exp_potential_curvature(g, 1.0, +1);
  EXPECT_LE(up.max_second_difference, 1e-6);
  const auto down = dk::exp_potential_curvature(g, 1.0, -1);
  EXPECT_GE(down.min_second_difference, -1e-6);
  const auto r = dk::sampled_derivative_range(h);
  EXPECT_NEAR(r.min, 2.0, 1e-6);
  EXPECT_NEAR(r.max, 2.0, 1e-6);
}
