#include "driftkit/oracle.hpp"

#include <Eigen/Dense>
#include <algorithm>
#include <bit>
#include <cfloat>
#include <cmath>
#include <numeric>
#include <random>
#include <string>

#include "driftkit/error.hpp"
#include "driftkit/special.hpp"

namespace driftkit {

namespace {

constexpr double kResidualTol = 1e-9;
constexpr std::size_t kDenseLimit = 6000;

// log P(Bin(m, p) = k); exact handling of p = 1.
double log_binomial_pmf(int m, int k, double log_p, double log_q) {
  const double lchoose = std::lgamma(m + 1.0) - std::lgamma(k + 1.0) - std::lgamma(m - k + 1.0);
  const double a = k == 0 ? 0.0 : k * log_p;
  const double b = m - k == 0 ? 0.0 : (m - k) * log_q;
  return lchoose + a + b;
}

// Binomial pmf from 0 up to the last non-underflowing term past the mode.
std::vector<double> binomial_pmf_prefix(int m, double p) {
  const double log_p = std::log(p);
  const double log_q = std::log1p(-p);
  const int mode = static_cast<int>(std::floor((m + 1) * p));
  std::vector<double> pmf;
  for (int k = 0; k <= m; ++k) {
    const double v = std::exp(log_binomial_pmf(m, k, log_p, log_q));
    if (v == 0.0 && k > mode) break;
    pmf.push_back(v);
  }
  return pmf;
}

// Residual E_s - 1 - sum_j P(s, j) E_j in extended precision.
long double residual(const MarkovChain& chain, const std::vector<double>& e, std::size_t s) {
  long double acc = static_cast<long double>(e[s]) - 1.0L;
  for (const auto& t : chain.row(s)) {
    if (!chain.is_target(t.to)) acc -= static_cast<long double>(t.prob) * e[t.to];
  }
  return acc;
}

void check_residuals(const MarkovChain& chain, const std::vector<double>& e) {
  for (std::size_t s = 0; s < chain.size(); ++s) {
    if (chain.is_target(s)) continue;
    const double r = static_cast<double>(residual(chain, e, s));
    if (!std::isfinite(e[s]) || std::abs(r) > kResidualTol * (1.0 + std::abs(e[s]))) {
      throw StructuralError("hitting-time system is singular or ill-conditioned at state " + std::to_string(s));
    }
  }
}

std::vector<double> solve_back_substitution(const MarkovChain& chain) {
  const std::size_t n = chain.size();
  std::vector<std::size_t> order;
  for (std::size_t s = 0; s < n; ++s) {
    if (!chain.is_target(s)) order.push_back(s);
  }
  std::stable_sort(order.begin(), order.end(),
                   [&](std::size_t a, std::size_t b) { return chain.label(a) < chain.label(b); });

  std::vector<double> e(n, 0.0);
  std::vector<long> local(n, -1);
  std::size_t begin = 0;
  while (begin < order.size()) {
    std::size_t end = begin + 1;
    while (end < order.size() && chain.label(order[end]) == chain.label(order[begin])) ++end;
    const std::size_t k = end - begin;

    if (k == 1) {
      const std::size_t s = order[begin];
      CompensatedSum escape;
      CompensatedSum rhs;
      rhs += 1.0;
      for (const auto& t : chain.row(s)) {
        if (t.to == s) continue;
        escape += t.prob;
        rhs += t.prob * e[t.to];
      }
      e[s] = rhs.value() / escape.value();
    } else {
      if (k > kDenseLimit) throw CapacityError("label group of " + std::to_string(k) + " states is too large");
      for (std::size_t i = 0; i < k; ++i) local[order[begin + i]] = static_cast<long>(i);
      Eigen::MatrixXd a = Eigen::MatrixXd::Zero(static_cast<Eigen::Index>(k), static_cast<Eigen::Index>(k));
      Eigen::VectorXd b(static_cast<Eigen::Index>(k));
      for (std::size_t i = 0; i < k; ++i) {
        const std::size_t s = order[begin + i];
        CompensatedSum escape;
        CompensatedSum rhs;
        rhs += 1.0;
        for (const auto& t : chain.row(s)) {
          if (t.to == s) continue;
          escape += t.prob;
          if (local[t.to] >= 0) {
            a(static_cast<Eigen::Index>(i), local[t.to]) -= t.prob;
          } else {
            rhs += t.prob * e[t.to];
          }
        }
        a(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(i)) = escape.value();
        b(static_cast<Eigen::Index>(i)) = rhs.value();
      }
      Eigen::PartialPivLU<Eigen::MatrixXd> lu(a);
      Eigen::VectorXd x = lu.solve(b);
      for (int it = 0; it < 3; ++it) {
        Eigen::VectorXd r = b - a * x;
        x += lu.solve(r);
      }
      for (std::size_t i = 0; i < k; ++i) {
        e[order[begin + i]] = x(static_cast<Eigen::Index>(i));
        local[order[begin + i]] = -1;
      }
    }
    begin = end;
  }
  return e;
}

std::vector<double> solve_dense(const MarkovChain& chain) {
  const std::size_t n = chain.size();
  std::vector<long> local(n, -1);
  std::vector<std::size_t> states;
  for (std::size_t s = 0; s < n; ++s) {
    if (!chain.is_target(s)) {
      local[s] = static_cast<long>(states.size());
      states.push_back(s);
    }
  }
  std::vector<double> e(n, 0.0);
  const std::size_t k = states.size();
  if (k == 0) return e;
  if (k > kDenseLimit) throw CapacityError("dense solve limited to " + std::to_string(kDenseLimit) + " states");

  const auto K = static_cast<Eigen::Index>(k);
  Eigen::MatrixXd a = Eigen::MatrixXd::Zero(K, K);
  for (std::size_t i = 0; i < k; ++i) {
    const std::size_t s = states[i];
    CompensatedSum escape;
    for (const auto& t : chain.row(s)) {
      if (t.to == s) continue;
      escape += t.prob;
      if (local[t.to] >= 0) a(static_cast<Eigen::Index>(i), local[t.to]) -= t.prob;
    }
    a(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(i)) = escape.value();
  }
  Eigen::PartialPivLU<Eigen::MatrixXd> lu(a);
  Eigen::VectorXd x = lu.solve(Eigen::VectorXd::Ones(K));
  for (std::size_t i = 0; i < k; ++i) e[states[i]] = x(static_cast<Eigen::Index>(i));

  for (int it = 0; it < 8; ++it) {
    Eigen::VectorXd r(K);
    double worst = 0.0;
    for (std::size_t i = 0; i < k; ++i) {
      const long double ri = -residual(chain, e, states[i]);
      r(static_cast<Eigen::Index>(i)) = static_cast<double>(ri);
      worst = std::max(worst, std::abs(static_cast<double>(ri)) / (1.0 + std::abs(e[states[i]])));
    }
    if (!std::isfinite(worst)) break;
    if (worst <= 1e-3 * kResidualTol) break;
    Eigen::VectorXd dx = lu.solve(r);
    for (std::size_t i = 0; i < k; ++i) e[states[i]] += dx(static_cast<Eigen::Index>(i));
  }
  return e;
}

void check_start(const MarkovChain& chain, const std::vector<double>& start) {
  if (start.size() != chain.size()) throw ParameterError("start distribution length differs from chain size");
  CompensatedSum total;
  for (double w : start) {
    if (!(w >= 0.0)) throw ParameterError("start distribution has a negative weight");
    total += w;
  }
  if (std::abs(total.value() - 1.0) > 1e-9) throw ParameterError("start distribution does not sum to 1");
}

// Uniform double in [0, 1) from the top 53 bits.
double unit(std::mt19937_64& gen) { return static_cast<double>(gen() >> 11) * 0x1.0p-53; }

}  // namespace

MarkovChain build_onemax_chain(int n, double a) {
  if (n < 1 || n > 5000) throw CapacityError("OneMax chain needs 1 <= n <= 5000, got " + std::to_string(n));
  const double p = 1.0 / n;
  std::vector<double> labels(static_cast<std::size_t>(n) + 1);
  std::vector<std::vector<Transition>> rows(labels.size());
  std::vector<double> acc;
  for (int i = 0; i <= n; ++i) {
    labels[static_cast<std::size_t>(i)] = i;
    const auto zeros = binomial_pmf_prefix(i, p);
    const auto ones = binomial_pmf_prefix(n - i, p);
    acc.assign(static_cast<std::size_t>(i), 0.0);
    for (std::size_t alpha = 1; alpha < zeros.size(); ++alpha) {
      const std::size_t bmax = std::min(alpha - 1, ones.size() - 1);
      for (std::size_t b = 0; b <= bmax; ++b) {
        acc[static_cast<std::size_t>(i) - alpha + b] += zeros[alpha] * ones[b];
      }
    }
    auto& row = rows[static_cast<std::size_t>(i)];
    CompensatedSum escape;
    for (int j = 0; j < i; ++j) {
      const double v = acc[static_cast<std::size_t>(j)];
      if (v > 0.0) {
        row.push_back({static_cast<std::uint32_t>(j), v});
        escape += v;
      }
    }
    row.push_back({static_cast<std::uint32_t>(i), 1.0 - escape.value()});
  }
  return MarkovChain::with_threshold(std::move(labels), std::move(rows), a);
}

MarkovChain build_leadingones_chain(int n, int a) {
  if (n < 1 || n > 12) throw CapacityError("full LeadingOnes chain needs 1 <= n <= 12, got " + std::to_string(n));
  if (a < 0 || a > n) throw ParameterError("LeadingOnes threshold a must lie in [0, n]");
  const std::uint32_t size = 1u << n;
  const double p = 1.0 / n;
  std::vector<double> mask_prob(static_cast<std::size_t>(n) + 1);
  for (int k = 0; k <= n; ++k) mask_prob[static_cast<std::size_t>(k)] = std::pow(p, k) * std::pow(1.0 - p, n - k);

  auto lo = [](std::uint32_t x) { return std::countr_one(x); };
  std::vector<double> labels(size);
  std::vector<std::vector<Transition>> rows(size);
  std::vector<double> dense(size);
  for (std::uint32_t x = 0; x < size; ++x) {
    const int lx = lo(x);
    labels[x] = std::max(0, a - lx);
    std::fill(dense.begin(), dense.end(), 0.0);
    for (std::uint32_t m = 0; m < size; ++m) {
      const double pr = mask_prob[static_cast<std::size_t>(std::popcount(m))];
      const std::uint32_t y = x ^ m;
      if (lo(y) >= lx) {
        dense[y] += pr;
      } else {
        dense[x] += pr;
      }
    }
    for (std::uint32_t y = 0; y < size; ++y) {
      if (dense[y] > 0.0) rows[x].push_back({y, dense[y]});
    }
  }
  return MarkovChain::with_threshold(std::move(labels), std::move(rows), 0.0);
}

MarkovChain build_leadingones_level_chain(int n, int a) {
  if (n < 1) throw ParameterError("LeadingOnes needs n >= 1");
  if (a < 0 || a > n) throw ParameterError("LeadingOnes threshold a must lie in [0, n]");
  const double p = 1.0 / n;
  std::vector<double> labels(static_cast<std::size_t>(n) + 1);
  std::vector<std::vector<Transition>> rows(labels.size());
  for (int k = 0; k <= n; ++k) {
    labels[static_cast<std::size_t>(k)] = std::max(0, a - k);
    auto& row = rows[static_cast<std::size_t>(k)];
    if (k == n) {
      row.push_back({static_cast<std::uint32_t>(k), 1.0});
      continue;
    }
    const double improve = std::pow(1.0 - p, k) * p;
    const int rest = n - k - 1;
    row.push_back({static_cast<std::uint32_t>(k), 1.0 - improve});
    for (int j = 0; j <= rest; ++j) {
      const double free_riders = j < rest ? std::ldexp(1.0, -(j + 1)) : std::ldexp(1.0, -rest);
      row.push_back({static_cast<std::uint32_t>(k + 1 + j), improve * free_riders});
    }
  }
  return MarkovChain::with_threshold(std::move(labels), std::move(rows), 0.0);
}

std::vector<double> point_start(const MarkovChain& chain, std::size_t state) {
  if (state >= chain.size()) throw ParameterError("start state " + std::to_string(state) + " out of range");
  std::vector<double> d(chain.size(), 0.0);
  d[state] = 1.0;
  return d;
}

std::vector<double> binomial_start(int n) {
  if (n < 1) throw ParameterError("binomial start needs n >= 1");
  std::vector<double> d(static_cast<std::size_t>(n) + 1);
  const double lh = std::log(0.5);
  for (int k = 0; k <= n; ++k) d[static_cast<std::size_t>(k)] = std::exp(log_binomial_pmf(n, k, lh, lh));
  return d;
}

std::vector<double> uniform_bitstring_start(int n) {
  if (n < 1 || n > 30) throw ParameterError("uniform bit-string start needs 1 <= n <= 30");
  return std::vector<double>(std::size_t{1} << n, std::ldexp(1.0, -n));
}

std::vector<double> leadingones_level_start(int n) {
  if (n < 1) throw ParameterError("LeadingOnes needs n >= 1");
  std::vector<double> d(static_cast<std::size_t>(n) + 1);
  for (int k = 0; k < n; ++k) d[static_cast<std::size_t>(k)] = std::ldexp(1.0, -(k + 1));
  d[static_cast<std::size_t>(n)] = std::ldexp(1.0, -n);
  return d;
}

std::vector<double> expected_hitting_times(const MarkovChain& chain, SolveMethod method) {
  if (method == SolveMethod::Auto) method = chain.is_monotone() ? SolveMethod::BackSubstitution : SolveMethod::Dense;
  if (method == SolveMethod::BackSubstitution && !chain.is_monotone()) {
    throw StructuralError("back-substitution needs a chain without upward transitions");
  }
  std::vector<double> e = method == SolveMethod::BackSubstitution ? solve_back_substitution(chain) : solve_dense(chain);
  check_residuals(chain, e);
  return e;
}

double exact_expectation(const MarkovChain& chain, std::size_t start, SolveMethod method) {
  if (start >= chain.size()) throw ParameterError("start state " + std::to_string(start) + " out of range");
  return expected_hitting_times(chain, method)[start];
}

double exact_expectation(const MarkovChain& chain, const std::vector<double>& start, SolveMethod method) {
  check_start(chain, start);
  const auto e = expected_hitting_times(chain, method);
  CompensatedSum total;
  for (std::size_t s = 0; s < e.size(); ++s) {
    if (start[s] != 0.0) total += start[s] * e[s];
  }
  return total.value();
}

SurvivalCurve exact_tail(const MarkovChain& chain, const std::vector<double>& start, std::size_t t_max) {
  check_start(chain, start);
  const std::size_t n = chain.size();
  SurvivalCurve curve;
  curve.survival.reserve(t_max + 1);
  curve.survival.push_back(1.0);

  std::vector<double> v(n, 0.0), w(n, 0.0);
  for (std::size_t s = 0; s < n; ++s) {
    if (!chain.is_target(s)) v[s] = start[s];
  }
  for (std::size_t t = 1; t <= t_max; ++t) {
    CompensatedSum mass;
    for (std::size_t s = 0; s < n; ++s) mass += v[s];
    // Rounding can leave the mass a few ulps above its predecessor.
    const double m = std::min(mass.value(), curve.survival.back());
    if (m == 0.0) {
      curve.survival.resize(t_max + 1, 0.0);
      break;
    }
    if (m < DBL_MIN) {
      curve.truncated = true;
      break;
    }
    curve.survival.push_back(m);
    if (t == t_max) break;
    std::fill(w.begin(), w.end(), 0.0);
    for (std::size_t s = 0; s < n; ++s) {
      if (v[s] == 0.0) continue;
      for (const auto& tr : chain.row(s)) {
        if (!chain.is_target(tr.to)) w[tr.to] += v[s] * tr.prob;
      }
    }
    v.swap(w);
  }
  return curve;
}

SurvivalCurve exact_tail(const MarkovChain& chain, std::size_t start, std::size_t t_max) {
  return exact_tail(chain, point_start(chain, start), t_max);
}

std::vector<double> exact_drift(const MarkovChain& chain) {
  std::vector<double> d(chain.size(), 0.0);
  for (std::size_t s = 0; s < chain.size(); ++s) {
    if (chain.is_target(s)) continue;
    CompensatedSum acc;
    for (const auto& t : chain.row(s)) acc += t.prob * (chain.label(s) - chain.label(t.to));
    d[s] = acc.value();
  }
  return d;
}

DriftProfile exact_drift_profile(const MarkovChain& chain, const PotentialFunction& g, double lambda, int sign) {
  if (!(lambda >= 0.0) || (sign != 1 && sign != -1)) throw ParameterError("drift profile needs lambda >= 0 and sign +-1");
  const std::size_t n = chain.size();
  std::vector<double> gv(n);
  for (std::size_t s = 0; s < n; ++s) {
    try {
      gv[s] = g(chain.label(s));
    } catch (const DomainError& e) {
      throw StructuralError("state " + std::to_string(s) + " with label " + std::to_string(chain.label(s)) +
                            " lies outside the potential's domain: " + e.what());
    }
  }
  DriftProfile prof;
  prof.lambda = lambda;
  prof.sign = sign;
  prof.drift = exact_drift(chain);
  prof.potential_drift.assign(n, 0.0);
  prof.mgf.assign(n, 1.0);
  for (std::size_t s = 0; s < n; ++s) {
    if (chain.is_target(s)) continue;
    CompensatedSum pd, mg;
    for (const auto& t : chain.row(s)) {
      const double delta = gv[s] - gv[t.to];
      pd += t.prob * delta;
      mg += t.prob * std::exp(sign * lambda * delta);
    }
    prof.potential_drift[s] = pd.value();
    prof.mgf[s] = mg.value();
  }
  return prof;
}

MarkovChain random_absorbing_chain(std::uint64_t seed, std::size_t states, ChainFamily family) {
  if (states < 2) throw ParameterError("random chain needs at least 2 states");
  std::mt19937_64 gen(seed);
  std::vector<double> labels(states);
  std::vector<std::vector<Transition>> rows(states);
  std::iota(labels.begin(), labels.end(), 0.0);
  rows[0] = {{0, 1.0}};
  for (std::size_t x = 1; x < states; ++x) {
    std::vector<std::pair<std::size_t, double>> w;
    w.emplace_back(x - 1, 0.2 + 0.8 * unit(gen));
    if (unit(gen) < 0.5) w.emplace_back(x, 1.5 * unit(gen));
    const int extra = static_cast<int>(gen() % 4);
    for (int k = 0; k < extra; ++k) {
      std::size_t to;
      double weight = 0.05 + 0.95 * unit(gen);
      if (family == ChainFamily::Monotone) {
        to = static_cast<std::size_t>(gen() % x);
      } else {
        to = static_cast<std::size_t>(gen() % states);
        if (to == x) continue;
        if (to > x) weight *= 0.5;
      }
      w.emplace_back(to, weight);
    }
    double total = 0.0;
    for (const auto& [to, weight] : w) total += weight;
    for (const auto& [to, weight] : w) rows[x].push_back({static_cast<std::uint32_t>(to), weight / total});
  }
  return MarkovChain::with_threshold(std::move(labels), std::move(rows), 0.0);
}

}  // namespace driftkit
