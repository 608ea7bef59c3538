#include "reference.hpp"

#include <cmath>
#include <stdexcept>

namespace driftkit::reference {

double trapezoid(const std::function<double(double)>& f, double lo, double hi, std::size_t panels) {
  const double h = (hi - lo) / static_cast<double>(panels);
  long double acc = 0.5L * (f(lo) + f(hi));
  for (std::size_t k = 1; k < panels; ++k) acc += f(lo + h * static_cast<double>(k));
  return static_cast<double>(acc * h);
}

double exp_integral_e1(double x) {
  // t = e^s turns e^{-t}/t dt into exp(-e^s) ds, smooth on the whole range.
  const auto f = [](double s) { return std::exp(-std::exp(s)); };
  return trapezoid(f, std::log(x), std::log(x + 60.0), 2'000'000);
}

std::vector<double> onemax_row_by_masks(int n, int zeros) {
  if (n < 1 || n > 14) throw std::invalid_argument("n out of range");
  // Bits 0..zeros-1 are the zero bits.
  std::vector<double> row(static_cast<std::size_t>(n) + 1, 0.0);
  const double q = 1.0 / n;
  for (std::uint32_t mask = 0; mask < (1u << n); ++mask) {
    int flips = 0;
    int z = zeros;
    for (int b = 0; b < n; ++b) {
      if (!(mask >> b & 1u)) continue;
      ++flips;
      z += b < zeros ? -1 : 1;
    }
    const double prob = std::pow(q, flips) * std::pow(1.0 - q, n - flips);
    row[static_cast<std::size_t>(z <= zeros ? z : zeros)] += prob;
  }
  return row;
}

double leadingones_drift_by_suffixes(int n, int a, int i, bool capped) {
  if (!(1 <= i && i <= a && a <= n && n <= 16)) throw std::invalid_argument("bad arguments");
  const int lo = a - i;
  const int len = n - lo - 1;
  const double q = 1.0 / n;
  const double improve = std::pow(1.0 - q, lo) * q;
  const int terms = capped ? i : len + 1;
  long double total = 0.0L;
  for (std::uint32_t s = 0; s < (1u << len); ++s) {
    // P(R >= k): the first k suffix bits are ones after mutation.
    long double reach = 1.0L;
    long double gain = 0.0L;
    for (int k = 0; k < terms; ++k) {
      if (k > 0) {
        if (k - 1 >= len) {
          reach = 0.0L;
        } else {
          const bool one = s >> (k - 1) & 1u;
          reach *= one ? (1.0 - q) : q;
        }
      }
      gain += reach;
    }
    total += gain;
  }
  return static_cast<double>(improve * total / static_cast<long double>(1u << len));
}

std::vector<double> hitting_times_by_iteration(const std::vector<std::vector<double>>& p,
                                               const std::vector<char>& target, double tol,
                                               std::size_t max_sweeps) {
  const std::size_t m = p.size();
  std::vector<double> e(m, 0.0);
  for (std::size_t sweep = 0; sweep < max_sweeps; ++sweep) {
    double change = 0.0;
    for (std::size_t i = 0; i < m; ++i) {
      if (target[i]) continue;
      double acc = 1.0;
      double stay = 0.0;
      for (std::size_t j = 0; j < m; ++j) {
        if (j == i) {
          stay = p[i][j];
        } else if (!target[j]) {
          acc += p[i][j] * e[j];
        }
      }
      const double next = acc / (1.0 - stay);
      change = std::max(change, std::abs(next - e[i]) / std::max(1.0, std::abs(next)));
      e[i] = next;
    }
    if (change < tol) return e;
  }
  throw std::runtime_error("value iteration did not converge");
}

std::vector<double> survival_by_propagation(const std::vector<std::vector<double>>& p,
                                            const std::vector<char>& target, const std::vector<double>& start,
                                            std::size_t t_max) {
  const std::size_t m = p.size();
  std::vector<double> mass(m, 0.0);
  for (std::size_t i = 0; i < m; ++i) mass[i] = target[i] ? 0.0 : start[i];
  std::vector<double> out;
  out.reserve(t_max + 1);
  out.push_back(1.0);
  for (std::size_t t = 1; t <= t_max; ++t) {
    double alive = 0.0;
    for (double v : mass) alive += v;
    out.push_back(alive);
    std::vector<double> next(m, 0.0);
    for (std::size_t i = 0; i < m; ++i) {
      if (mass[i] == 0.0) continue;
      for (std::size_t j = 0; j < m; ++j) {
        if (!target[j]) next[j] += mass[i] * p[i][j];
      }
    }
    mass.swap(next);
  }
  return out;
}

}  // namespace driftkit::reference
