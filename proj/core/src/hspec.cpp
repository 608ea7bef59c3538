#include "driftkit/hspec.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

#include "driftkit/error.hpp"

namespace driftkit {

namespace {

constexpr int kGridPoints = 1000;

void check_domain(double x_min, double x_max, bool allow_zero_min) {
  if (!std::isfinite(x_min) || !std::isfinite(x_max)) throw ParameterError("h domain must be finite");
  if (allow_zero_min ? x_min < 0.0 : x_min <= 0.0) {
    throw ParameterError("h requires x_min > 0 (x_min = 0 is only allowed for constant h), got " +
                         std::to_string(x_min));
  }
  if (x_max < x_min) throw ParameterError("h requires x_max >= x_min");
}

std::string fmt(double v) {
  std::ostringstream os;
  os.precision(17);
  os << v;
  return os.str();
}

}  // namespace

HSpec HSpec::constant(double delta, double x_min, double x_max) {
  check_domain(x_min, x_max, true);
  HSpec h;
  h.kind_ = Kind::Constant;
  h.scale_ = delta;
  h.x_min_ = x_min;
  h.x_max_ = x_max;
  h.validate_positive();
  return h;
}

HSpec HSpec::multiplicative(double delta, double x_min, double x_max) {
  check_domain(x_min, x_max, false);
  HSpec h;
  h.kind_ = Kind::Multiplicative;
  h.scale_ = delta;
  h.x_min_ = x_min;
  h.x_max_ = x_max;
  h.validate_positive();
  return h;
}

HSpec HSpec::expression(Expr expr, double n, double x_min, double x_max) {
  check_domain(x_min, x_max, false);
  HSpec h;
  h.kind_ = Kind::Expression;
  h.expr_ = std::move(expr);
  h.scale_ = n;
  h.x_min_ = x_min;
  h.x_max_ = x_max;
  h.validate_positive();
  return h;
}

HSpec HSpec::table(std::map<long, double> values, double x_min, double x_max) {
  check_domain(x_min, x_max, false);
  const long first = static_cast<long>(std::ceil(x_min));
  const long last = static_cast<long>(std::ceil(x_max));
  for (long k = first; k <= last; ++k) {
    if (!values.count(k)) throw ParameterError("h table is missing an entry for x = " + std::to_string(k));
  }
  HSpec h;
  h.kind_ = Kind::Table;
  h.table_ = std::move(values);
  h.x_min_ = x_min;
  h.x_max_ = x_max;
  h.validate_positive();
  return h;
}

HSpec HSpec::callable(std::function<double(double)> fn, double x_min, double x_max, std::string label) {
  check_domain(x_min, x_max, false);
  if (!fn) throw ParameterError("callable h is empty");
  HSpec h;
  h.kind_ = Kind::Callable;
  h.fn_ = std::move(fn);
  h.label_ = std::move(label);
  h.x_min_ = x_min;
  h.x_max_ = x_max;
  h.validate_positive();
  return h;
}

double HSpec::operator()(double x) const {
  const double slack = 1e-12 * std::max(1.0, std::abs(x_max_));
  if (!(x >= x_min_ - slack && x <= x_max_ + slack)) {
    throw DomainError("h evaluated at x = " + fmt(x) + " outside [" + fmt(x_min_) + ", " + fmt(x_max_) + "]");
  }
  x = std::clamp(x, x_min_, x_max_);
  switch (kind_) {
    case Kind::Constant:
      return scale_;
    case Kind::Multiplicative:
      return scale_ * x;
    case Kind::Expression:
      return expr_->evaluate(x, scale_);
    case Kind::Table:
      return table_.at(static_cast<long>(std::ceil(x)));
    case Kind::Callable:
      return fn_(x);
  }
  return 0.0;
}

double HSpec::derivative(double x) const {
  switch (kind_) {
    case Kind::Constant:
      return 0.0;
    case Kind::Multiplicative:
      return scale_;
    default:
      break;
  }
  const double step = std::max(1e-6, 1e-8 * std::abs(x));
  const double lo = std::max(x_min_, x - step);
  const double hi = std::min(x_max_, x + step);
  if (hi <= lo) return 0.0;
  return ((*this)(hi) - (*this)(lo)) / (hi - lo);
}

std::vector<double> HSpec::sample_points() const {
  std::vector<double> pts;
  pts.reserve(kGridPoints + table_.size());
  if (x_max_ == x_min_) {
    pts.push_back(x_min_);
  } else {
    for (int i = 0; i < kGridPoints; ++i) {
      pts.push_back(x_min_ + (x_max_ - x_min_) * i / (kGridPoints - 1));
    }
  }
  for (const auto& [k, v] : table_) {
    const double kx = static_cast<double>(k);
    if (kx >= x_min_ && kx <= x_max_) pts.push_back(kx);
  }
  std::sort(pts.begin(), pts.end());
  pts.erase(std::unique(pts.begin(), pts.end()), pts.end());
  return pts;
}

std::optional<std::pair<double, double>> HSpec::monotonicity_violation() const {
  const auto pts = sample_points();
  for (std::size_t i = 1; i < pts.size(); ++i) {
    if ((*this)(pts[i - 1]) > (*this)(pts[i])) return std::make_pair(pts[i - 1], pts[i]);
  }
  return std::nullopt;
}

void HSpec::validate_positive() const {
  for (double x : sample_points()) {
    double v;
    try {
      v = (*this)(x);
    } catch (const DomainError& e) {
      throw PreconditionError(std::string("h is undefined on its domain: ") + e.what(), "x=" + fmt(x));
    }
    if (!(v > 0.0)) throw PreconditionError("h must be positive on its domain, h(x) = " + fmt(v), "x=" + fmt(x));
  }
  for (const auto& [k, v] : table_) {
    if (!(v > 0.0)) throw PreconditionError("h table entry must be positive", "x=" + std::to_string(k));
  }
}

std::string HSpec::describe() const {
  switch (kind_) {
    case Kind::Constant:
      return "constant(" + fmt(scale_) + ")";
    case Kind::Multiplicative:
      return "multiplicative(" + fmt(scale_) + ")";
    case Kind::Expression:
      return "expression(" + expr_->source() + ")";
    case Kind::Table:
      return "table(" + std::to_string(table_.size()) + " entries)";
    case Kind::Callable:
      return "callable(" + label_ + ")";
  }
  return {};
}

}  // namespace driftkit
