#pragma once

#include <functional>
#include <string>
#include <variant>
#include <vector>

#include "driftkit/hspec.hpp"
#include "driftkit/potential.hpp"
#include "driftkit/theorems.hpp"

namespace driftkit {

// State-dependent mgf bound. Without a trajectory the bound uses the
// supremum of `fn` over `reachable`.
struct StateBeta {
  std::function<double(double)> fn;
  std::vector<double> reachable;
};

using BetaBound = std::variant<double, StateBeta>;

enum class TailSide { Upper, Lower };  // P(T >= t*) and P(T < t*)

const char* to_string(TailSide s) noexcept;

struct TailParams {
  double lambda = 0.0;
  BetaBound beta = 1.0;
  double a = 0.0;
  long t_star = 1;
  bool absorbing = false;
};

struct TailResult {
  double probability = 0.0;  // may exceed 1, see `vacuous`
  double log_probability = 0.0;
  TailSide side = TailSide::Upper;
  std::string theorem;
  std::string form;
  ParamList params;
  ParamList details;
  bool trajectory_dependent = false;
  bool vacuous = false;
};

// (prod_{r<t*} beta_u(X_r)) exp(lambda (g(X0) - g(a))). `trajectory` holds
// X_0, X_1, ... and must cover t* states when beta is state-dependent.
TailResult general_tail_upper(const PotentialFunction& g, const TailParams& p, double x0,
                              const std::vector<double>* trajectory = nullptr);

// Sum form (sum_{s=1}^{t*-1} prod_{r<s} beta_l(X_r)) exp(-lambda (g(X0) - g(a)));
// with `absorbing` also the product form, reporting the smaller one.
TailResult general_tail_lower(const PotentialFunction& g, const TailParams& p, double x0,
                              const std::vector<double>* trajectory = nullptr);

enum class CorollaryItem { GrowingH, ShrinkingH };

// GrowingH bounds P(T >= t) and needs sampled h' >= lambda; ShrinkingH bounds
// P(T < t) and needs h' <= -lambda.
TailResult corollary_bounds(const HSpec& h, double lambda, double x0, double t, CorollaryItem which);

struct SimplifiedTailParams {
  double D = 0.0;  // E(exp(lambda Z))
  double lambda = 0.0;
  double delta = 0.0;
};

// min{lambda, delta lambda^2 / (D - 1 - lambda)}.
double simplified_eta(const SimplifiedTailParams& sp);

// Upper: exp(eta (g(X0) - (1 - delta) t*)). Lower: exp(eta ((1 + delta) t* - I))
// divided by eta (1 + delta) unless absorbing, with I = int_{x_min}^{X0} 1/h.
TailResult simplified_tail(const HSpec& h, const SimplifiedTailParams& sp, double x0, double t_star, TailSide side,
                           bool absorbing);

// E(exp(lambda * scale * Y)) with Y = 0 w.p. 1 - q, else geometric(1/2) on {1, 2, ...}.
double mgf_of_geometric_mix(double flip_prob, double scale, double lambda);

// Multiplicative drift tail: P(T > ceil(t*)) <= e^{-r} with
// t* = (ln(X0/x_min) + r)/delta, i.e. the event T >= t_event (in details).
TailResult multiplicative_tail(double delta, double x_min, double x0, double r);

}  // namespace driftkit
