#pragma once

#include <cmath>
#include <limits>

namespace driftkit {

inline constexpr double kEulerGamma = 0.5772156649015329;

// Exponential integral E1(x) = int_x^inf e^{-t}/t dt for x > 0.
// Power series below x = 1, modified-Lentz continued fraction above.
double exp_integral_e1(double x);

// Neumaier (improved Kahan) summation; order of add() calls fixes the result.
class CompensatedSum {
 public:
  void add(double v) noexcept {
    const double t = sum_ + v;
    if (std::abs(sum_) >= std::abs(v)) {
      comp_ += (sum_ - t) + v;
    } else {
      comp_ += (v - t) + sum_;
    }
    sum_ = t;
  }
  CompensatedSum& operator+=(double v) noexcept {
    add(v);
    return *this;
  }
  double value() const noexcept { return sum_ + comp_; }

 private:
  double sum_ = 0.0;
  double comp_ = 0.0;
};

// log(exp(a) + exp(b)) without overflow; -inf is the neutral element.
inline double log_add_exp(double a, double b) noexcept {
  if (a == -std::numeric_limits<double>::infinity()) return b;
  if (b == -std::numeric_limits<double>::infinity()) return a;
  const double hi = a > b ? a : b;
  const double lo = a > b ? b : a;
  return hi + std::log1p(std::exp(lo - hi));
}

// log(e^z - 1) for z > 0, stable at both ends.
inline double log_expm1(double z) noexcept {
  if (z > 30.0) return z + std::log1p(-std::exp(-z));
  return std::log(std::expm1(z));
}

}  // namespace driftkit
