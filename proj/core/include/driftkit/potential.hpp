#pragma once

#include <functional>
#include <vector>

#include "driftkit/hspec.hpp"

namespace driftkit {

// Absolute and relative tolerance of the quadrature backing g.
inline constexpr double kQuadratureAbsTol = 1e-10;
inline constexpr double kQuadratureRelTol = 1e-9;
inline constexpr int kQuadratureMaxDepth = 60;

// Globally adaptive Simpson quadrature of f on [lo, hi]. Throws
// ConvergenceError (carrying the best estimate) if a subinterval would need
// to be split beyond `max_depth` bisections.
double adaptive_simpson(const std::function<double(double)>& f, double lo, double hi,
                        double abs_tol = kQuadratureAbsTol, double rel_tol = kQuadratureRelTol,
                        int max_depth = kQuadratureMaxDepth);

// int_lo^hi 1/h(y) dy with x_min <= lo <= hi <= x_max. Tables are integrated
// exactly cell by cell; every other kind goes through adaptive_simpson.
double integrate_reciprocal(const HSpec& h, double lo, double hi);

// g(x) = x_min/h(x_min) + int_{x_min}^x 1/h(y) dy on [x_min, x_max], g(0) = 0.
class PotentialFunction {
 public:
  enum class Mode { ClosedForm, Quadrature, PrefixSum };

  explicit PotentialFunction(HSpec h);

  // Throws DomainError for x in (0, x_min) or outside the domain.
  double operator()(double x) const;

  double at_xmin() const noexcept { return g_min_; }
  Mode mode() const noexcept { return mode_; }
  const HSpec& h() const noexcept { return h_; }

 private:
  HSpec h_;
  Mode mode_;
  double g_min_;
  long first_knot_ = 0;
  std::vector<double> knot_values_;  // g at integer knots, PrefixSum mode only
};

inline PotentialFunction build_potential(HSpec h) { return PotentialFunction(std::move(h)); }

struct DerivativeRange {
  double min = 0.0;
  double argmin = 0.0;
  double max = 0.0;
  double argmax = 0.0;
};

// Extremes of h' over HSpec::sample_points().
DerivativeRange sampled_derivative_range(const HSpec& h);

struct CurvatureReport {
  double max_second_difference = 0.0;
  double argmax = 0.0;
  double min_second_difference = 0.0;
  double argmin = 0.0;
};

// Second differences of exp(sign * lambda * g(x)) on a uniform grid over
// [x_min, x_max]. Non-positive everywhere means sampled-concave.
CurvatureReport exp_potential_curvature(const PotentialFunction& g, double lambda, int sign, int points = 1000);

}  // namespace driftkit
