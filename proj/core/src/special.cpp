#include "driftkit/special.hpp"

#include <string>

#include "driftkit/error.hpp"

namespace driftkit {

double exp_integral_e1(double x) {
  if (!(x > 0.0)) throw DomainError("E1 requires x > 0, got " + std::to_string(x));

  if (x <= 1.0) {
    // E1(x) = -gamma - ln x - sum_{k>=1} (-x)^k / (k k!)
    CompensatedSum series;
    double power_over_fact = 1.0;  // (-x)^k / k!
    for (int k = 1; k < 200; ++k) {
      power_over_fact *= -x / k;
      const double term = power_over_fact / k;
      series += term;
      if (std::abs(term) < 1e-16) break;
    }
    return -kEulerGamma - std::log(x) - series.value();
  }

  // Continued fraction e^{-x} / (x + 1 - 1/(x + 3 - 4/(x + 5 - ...))).
  constexpr double tiny = 1e-300;
  double b = x + 1.0;
  double c = 1.0 / tiny;
  double d = 1.0 / b;
  double h = d;
  for (int i = 1; i < 1000; ++i) {
    const double an = -static_cast<double>(i) * i;
    b += 2.0;
    d = 1.0 / (an * d + b);
    c = b + an / c;
    const double delta = c * d;
    h *= delta;
    if (std::abs(delta - 1.0) < 1e-16) break;
  }
  return h * std::exp(-x);
}

}  // namespace driftkit
