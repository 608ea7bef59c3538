#include "driftkit/tails.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "driftkit/error.hpp"
#include "driftkit/special.hpp"

namespace driftkit {

namespace {

constexpr double kNegInf = -std::numeric_limits<double>::infinity();

void finish(TailResult& r) {
  r.probability = std::exp(r.log_probability);
  r.vacuous = r.log_probability >= 0.0;
}

// log beta at step r: constant, trajectory-driven or worst case.
struct LogBeta {
  bool state_dependent = false;
  bool trajectory = false;
  double constant = 0.0;
  std::vector<double> per_step;

  double at(long r) const { return trajectory ? per_step[static_cast<std::size_t>(r)] : constant; }
};

LogBeta resolve_beta(const BetaBound& beta, long steps, const std::vector<double>* trajectory) {
  LogBeta lb;
  if (const double* c = std::get_if<double>(&beta)) {
    if (!(*c > 0.0)) throw ParameterError("beta must be positive");
    lb.constant = std::log(*c);
    return lb;
  }
  const auto& sb = std::get<StateBeta>(beta);
  if (!sb.fn) throw ParameterError("state-dependent beta needs a function");
  lb.state_dependent = true;
  if (trajectory) {
    if (trajectory->size() < static_cast<std::size_t>(std::max(steps, 0L))) {
      throw ParameterError("trajectory shorter than the horizon");
    }
    lb.trajectory = true;
    lb.per_step.reserve(static_cast<std::size_t>(steps));
    for (long r = 0; r < steps; ++r) {
      const double b = sb.fn((*trajectory)[static_cast<std::size_t>(r)]);
      if (!(b > 0.0)) throw ParameterError("beta must be positive");
      lb.per_step.push_back(std::log(b));
    }
    return lb;
  }
  if (sb.reachable.empty()) {
    throw ParameterError("state-dependent beta needs a trajectory or a reachable set for the worst case");
  }
  double worst = 0.0;
  for (double x : sb.reachable) worst = std::max(worst, sb.fn(x));
  if (!(worst > 0.0)) throw ParameterError("beta must be positive");
  lb.constant = std::log(worst);
  return lb;
}

void check_common(const TailParams& p, double x0) {
  if (!(p.lambda > 0.0)) throw ParameterError("lambda must be positive");
  if (p.t_star < 1) throw ParameterError("t* must be at least 1");
  if (!(x0 > p.a)) throw ParameterError("X0 must exceed the threshold a");
}

ParamList echo(const TailParams& p, double x0, const LogBeta& lb) {
  ParamList out{{"lambda", p.lambda}, {"a", p.a}, {"t_star", static_cast<double>(p.t_star)}, {"X0", x0}};
  if (!lb.trajectory) out.emplace_back("beta", std::exp(lb.constant));
  return out;
}

}  // namespace

const char* to_string(TailSide s) noexcept { return s == TailSide::Upper ? "upper" : "lower"; }

TailResult general_tail_upper(const PotentialFunction& g, const TailParams& p, double x0,
                              const std::vector<double>* trajectory) {
  check_common(p, x0);
  const double gap = g(x0) - g(p.a);
  const LogBeta lb = resolve_beta(p.beta, p.t_star, trajectory);
  TailResult r;
  r.side = TailSide::Upper;
  r.theorem = "general-tail-upper";
  r.trajectory_dependent = lb.trajectory;
  r.form = lb.trajectory ? "trajectory-product" : (lb.state_dependent ? "worst-case-power" : "constant-power");
  r.params = echo(p, x0, lb);
  CompensatedSum log_p;
  if (lb.trajectory) {
    for (long s = 0; s < p.t_star; ++s) log_p += lb.at(s);
  } else {
    log_p += static_cast<double>(p.t_star) * lb.constant;
  }
  log_p += p.lambda * gap;
  r.log_probability = log_p.value();
  finish(r);
  return r;
}

TailResult general_tail_lower(const PotentialFunction& g, const TailParams& p, double x0,
                              const std::vector<double>* trajectory) {
  check_common(p, x0);
  const double gap = g(x0) - g(p.a);
  const LogBeta lb = resolve_beta(p.beta, p.t_star, trajectory);
  TailResult r;
  r.side = TailSide::Lower;
  r.theorem = "general-tail-lower";
  r.trajectory_dependent = lb.trajectory;
  r.params = echo(p, x0, lb);

  // log of sum_{s=1}^{t*-1} prod_{r<s} beta_r.
  double log_sum = kNegInf;
  if (lb.trajectory) {
    double prefix = 0.0;
    for (long s = 1; s < p.t_star; ++s) {
      prefix += lb.at(s - 1);
      log_sum = log_add_exp(log_sum, prefix);
    }
  } else if (p.t_star > 1) {
    const double lbeta = lb.constant;
    const double k = static_cast<double>(p.t_star - 1);
    if (lbeta == 0.0) {
      log_sum = std::log(k);
    } else if (lbeta > 0.0) {
      log_sum = lbeta + log_expm1(k * lbeta) - log_expm1(lbeta);
    } else {
      // beta (1 - beta^k) / (1 - beta)
      log_sum = lbeta + std::log(-std::expm1(k * lbeta)) - std::log(-std::expm1(lbeta));
    }
  }
  const double log_sum_form = log_sum - p.lambda * gap;
  r.details.emplace_back("sum_form", std::exp(log_sum_form));
  r.log_probability = log_sum_form;
  r.form = "sum";
  if (p.absorbing) {
    CompensatedSum prod;
    if (lb.trajectory) {
      for (long s = 0; s < p.t_star; ++s) prod += lb.at(s);
    } else {
      prod += static_cast<double>(p.t_star) * lb.constant;
    }
    const double log_product_form = prod.value() - p.lambda * gap;
    r.details.emplace_back("product_form", std::exp(log_product_form));
    if (log_product_form < log_sum_form) {
      r.log_probability = log_product_form;
      r.form = "absorbing-product";
    }
  }
  if (lb.state_dependent && !lb.trajectory) r.form += ",worst-case";
  finish(r);
  return r;
}

TailResult corollary_bounds(const HSpec& h, double lambda, double x0, double t, CorollaryItem which) {
  if (!(lambda > 0.0)) throw ParameterError("lambda must be positive");
  if (x0 < h.x_min()) throw ParameterError("X0 must be at least x_min");
  const bool growing = which == CorollaryItem::GrowingH;
  for (double x : h.sample_points()) {
    const double d = h.derivative(x);
    const bool ok = growing ? d >= lambda : d <= -lambda;
    if (!ok) {
      throw PreconditionError(growing ? "h' < lambda" : "h' > -lambda", "x = " + std::to_string(x) +
                                                                         ", h'(x) = " + std::to_string(d));
    }
  }
  const PotentialFunction g(h);
  const double gx0 = g(x0);
  TailResult r;
  r.theorem = "corollary";
  r.params = {{"lambda", lambda}, {"X0", x0}, {"t", t}, {"g_X0", gx0}};
  if (growing) {
    r.side = TailSide::Upper;
    r.form = "growing-h";
    r.log_probability = -lambda * (t - gx0);
  } else {
    r.side = TailSide::Lower;
    r.form = "shrinking-h";
    if (t <= 1.0) {
      r.log_probability = kNegInf;
    } else {
      r.log_probability = lambda + log_expm1(lambda * (t - 1.0)) - log_expm1(lambda) - lambda * gx0;
    }
  }
  finish(r);
  return r;
}

double simplified_eta(const SimplifiedTailParams& sp) {
  if (!(sp.lambda > 0.0)) throw ParameterError("lambda must be positive");
  if (!(sp.delta > 0.0)) throw ParameterError("delta must be positive");
  const double denom = sp.D - 1.0 - sp.lambda;
  if (!(denom > 0.0)) throw ParameterError("D must exceed 1 + lambda");
  return std::min(sp.lambda, sp.delta * sp.lambda * sp.lambda / denom);
}

TailResult simplified_tail(const HSpec& h, const SimplifiedTailParams& sp, double x0, double t_star, TailSide side,
                           bool absorbing) {
  const double eta = simplified_eta(sp);
  if (!(t_star > 0.0)) throw ParameterError("t* must be positive");
  if (x0 < h.x_min()) throw ParameterError("X0 must be at least x_min");
  const double integral = integrate_reciprocal(h, h.x_min(), x0);
  TailResult r;
  r.side = side;
  r.theorem = "simplified-tail";
  r.params = {{"D", sp.D}, {"lambda", sp.lambda}, {"delta", sp.delta}, {"eta", eta}, {"X0", x0}, {"t_star", t_star}};
  if (side == TailSide::Upper) {
    const double g0 = h.x_min() / h(h.x_min()) + integral;
    r.form = "upper";
    r.log_probability = eta * (g0 - (1.0 - sp.delta) * t_star);
  } else {
    r.log_probability = eta * ((1.0 + sp.delta) * t_star - integral);
    if (absorbing) {
      r.form = "lower-absorbing";
    } else {
      r.form = "lower";
      r.log_probability -= std::log(eta * (1.0 + sp.delta));
    }
  }
  finish(r);
  return r;
}

double mgf_of_geometric_mix(double flip_prob, double scale, double lambda) {
  if (!(flip_prob >= 0.0 && flip_prob <= 1.0)) throw ParameterError("flip probability must lie in [0, 1]");
  if (!(lambda >= 0.0) || !(scale >= 0.0)) throw ParameterError("lambda and scale must be non-negative");
  const double z = lambda * scale;
  if (!(z < std::log(2.0))) throw DomainError("mgf diverges: lambda * scale must be below ln 2");
  const double half = 0.5 * std::exp(z);
  return (1.0 - flip_prob) + flip_prob * half / (1.0 - half);
}

TailResult multiplicative_tail(double delta, double x_min, double x0, double r_param) {
  if (!(delta > 0.0 && delta < 1.0)) throw ParameterError("delta must lie in (0, 1)");
  if (!(x_min > 0.0) || x0 < x_min) throw ParameterError("need 0 < x_min <= X0");
  if (!(r_param > 0.0)) throw ParameterError("r must be positive");
  TailResult r;
  r.side = TailSide::Upper;
  r.theorem = "multiplicative-tail";
  r.form = "P(T > ceil(t*))";
  const double t = (std::log(x0 / x_min) + r_param) / delta;
  r.params = {{"delta", delta}, {"x_min", x_min}, {"X0", x0}, {"r", r_param}, {"t_star", t}};
  r.details = {{"t_event", std::ceil(t) + 1.0}};
  r.log_probability = -r_param;
  finish(r);
  return r;
}

}  // namespace driftkit
