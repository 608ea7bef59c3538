#pragma once

#include <functional>
#include <map>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "driftkit/expr.hpp"

namespace driftkit {

// A positive drift-bound function h on [x_min, x_max].
//
// Table kind stores h on the integers ceil(x_min)..ceil(x_max) and extends to
// the reals by h(x) := h(ceil(x)). Callable kind wraps an arbitrary C++
// function for bounds that are not expressible in the expression grammar.
class HSpec {
 public:
  enum class Kind { Constant, Multiplicative, Expression, Table, Callable };

  static HSpec constant(double delta, double x_min, double x_max);
  static HSpec multiplicative(double delta, double x_min, double x_max);
  static HSpec expression(Expr expr, double n, double x_min, double x_max);
  static HSpec table(std::map<long, double> values, double x_min, double x_max);
  static HSpec callable(std::function<double(double)> fn, double x_min, double x_max, std::string label);

  Kind kind() const noexcept { return kind_; }
  double x_min() const noexcept { return x_min_; }
  double x_max() const noexcept { return x_max_; }
  // delta for Constant/Multiplicative, n for Expression, 0 otherwise.
  double scale() const noexcept { return scale_; }
  const std::map<long, double>& table_values() const noexcept { return table_; }
  const std::optional<Expr>& expr() const noexcept { return expr_; }

  // Throws DomainError outside [x_min, x_max].
  double operator()(double x) const;

  // Exact for Constant/Multiplicative; central difference with step
  // max(1e-6, 1e-8|x|) otherwise (one-sided at the domain ends).
  double derivative(double x) const;

  // 1000-point uniform grid over the domain plus every table point.
  std::vector<double> sample_points() const;

  // First sampled pair (x < y) with h(x) > h(y), if any.
  std::optional<std::pair<double, double>> monotonicity_violation() const;

  std::string describe() const;

 private:
  HSpec() = default;
  void validate_positive() const;

  Kind kind_ = Kind::Constant;
  double x_min_ = 0.0;
  double x_max_ = 0.0;
  double scale_ = 0.0;
  std::optional<Expr> expr_;
  std::map<long, double> table_;
  std::function<double(double)> fn_;
  std::string label_;
};

}  // namespace driftkit
