#include "driftkit/potential.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <queue>
#include <sstream>

#include "driftkit/error.hpp"
#include "driftkit/special.hpp"

namespace driftkit {

namespace {

struct Segment {
  double a, b;
  double fa, fm, fb;
  double whole;  // Simpson estimate on [a, b]
  double left, right;
  double fl, fr;  // f at the quarter points
  double error;
  int depth;
};

struct ByError {
  bool operator()(const Segment& x, const Segment& y) const { return x.error < y.error; }
};

constexpr std::size_t kMaxSegments = 4'000'000;

Segment make_segment(const std::function<double(double)>& f, double a, double b, double fa, double fm, double fb,
                     int depth) {
  Segment s{};
  s.a = a;
  s.b = b;
  s.fa = fa;
  s.fm = fm;
  s.fb = fb;
  s.depth = depth;
  const double m = 0.5 * (a + b);
  const double h = b - a;
  s.whole = h / 6.0 * (fa + 4.0 * fm + fb);
  s.fl = f(0.5 * (a + m));
  s.fr = f(0.5 * (m + b));
  s.left = h / 12.0 * (fa + 4.0 * s.fl + fm);
  s.right = h / 12.0 * (fm + 4.0 * s.fr + fb);
  s.error = std::abs(s.left + s.right - s.whole) / 15.0;
  return s;
}

double refined(const Segment& s) { return s.left + s.right + (s.left + s.right - s.whole) / 15.0; }

std::string fmt(double v) {
  std::ostringstream os;
  os.precision(17);
  os << v;
  return os.str();
}

}  // namespace

double adaptive_simpson(const std::function<double(double)>& f, double lo, double hi, double abs_tol,
                        double rel_tol, int max_depth) {
  if (lo == hi) return 0.0;
  if (hi < lo) return -adaptive_simpson(f, hi, lo, abs_tol, rel_tol, max_depth);

  std::priority_queue<Segment, std::vector<Segment>, ByError> heap;
  constexpr int kInitial = 8;
  std::vector<double> xs(kInitial + 1), fs(kInitial + 1);
  for (int i = 0; i <= kInitial; ++i) {
    xs[i] = i == kInitial ? hi : lo + (hi - lo) * i / kInitial;
    fs[i] = f(xs[i]);
  }
  double total = 0.0;
  double total_error = 0.0;
  for (int i = 0; i < kInitial; ++i) {
    const double m = 0.5 * (xs[i] + xs[i + 1]);
    Segment s = make_segment(f, xs[i], xs[i + 1], fs[i], f(m), fs[i + 1], 0);
    total += refined(s);
    total_error += s.error;
    heap.push(s);
  }

  while (total_error > std::max(abs_tol, rel_tol * std::abs(total))) {
    Segment s = heap.top();
    if (s.depth >= max_depth || heap.size() >= kMaxSegments) {
      throw ConvergenceError("adaptive Simpson did not reach tolerance on [" + fmt(lo) + ", " + fmt(hi) +
                                 "], estimate " + fmt(total),
                             total);
    }
    heap.pop();
    total -= refined(s);
    total_error -= s.error;
    const double m = 0.5 * (s.a + s.b);
    Segment l = make_segment(f, s.a, m, s.fa, s.fl, s.fm, s.depth + 1);
    Segment r = make_segment(f, m, s.b, s.fm, s.fr, s.fb, s.depth + 1);
    total += refined(l) + refined(r);
    total_error += l.error + r.error;
    heap.push(l);
    heap.push(r);
    // Recompute from scratch now and then so running-sum drift never decides convergence.
    if (heap.size() % 4096 == 0) {
      auto copy = heap;
      CompensatedSum t, e;
      while (!copy.empty()) {
        t += refined(copy.top());
        e += copy.top().error;
        copy.pop();
      }
      total = t.value();
      total_error = e.value();
    }
  }

  std::vector<Segment> segs;
  segs.reserve(heap.size());
  while (!heap.empty()) {
    segs.push_back(heap.top());
    heap.pop();
  }
  std::sort(segs.begin(), segs.end(), [](const Segment& x, const Segment& y) { return x.a < y.a; });
  CompensatedSum sum;
  for (const auto& s : segs) sum += refined(s);
  return sum.value();
}

namespace {

// Exact integral of the ceiling-extended table over [lo, hi].
double table_integral(const HSpec& h, double lo, double hi) {
  CompensatedSum sum;
  double x = lo;
  while (x < hi) {
    const double k = std::ceil(x) == x ? x + 1.0 : std::ceil(x);  // right end of the cell containing (x, x+)
    const double right = std::min(k, hi);
    sum += (right - x) / h(right);
    x = right;
  }
  return sum.value();
}

void check_range(const HSpec& h, double lo, double hi) {
  const double slack = 1e-12 * std::max(1.0, std::abs(h.x_max()));
  if (lo > hi) throw ParameterError("integrate_reciprocal requires lo <= hi");
  if (lo < h.x_min() - slack || hi > h.x_max() + slack) {
    throw DomainError("integration range [" + fmt(lo) + ", " + fmt(hi) + "] leaves the domain of h");
  }
}

}  // namespace

double integrate_reciprocal(const HSpec& h, double lo, double hi) {
  check_range(h, lo, hi);
  if (lo == hi) return 0.0;
  if (h.kind() == HSpec::Kind::Table) return table_integral(h, lo, hi);
  return adaptive_simpson([&h](double y) { return 1.0 / h(y); }, lo, hi);
}

PotentialFunction::PotentialFunction(HSpec h) : h_(std::move(h)) {
  switch (h_.kind()) {
    case HSpec::Kind::Constant:
    case HSpec::Kind::Multiplicative:
      mode_ = Mode::ClosedForm;
      break;
    case HSpec::Kind::Table:
      mode_ = Mode::PrefixSum;
      break;
    default:
      mode_ = Mode::Quadrature;
      break;
  }
  g_min_ = h_.x_min() == 0.0 ? 0.0 : h_.x_min() / h_(h_.x_min());

  if (mode_ == Mode::PrefixSum) {
    // Knot k carries g(k); the cell (k-1, k] contributes 1/h(k) per unit.
    first_knot_ = static_cast<long>(std::ceil(h_.x_min()));
    const long last = static_cast<long>(std::ceil(h_.x_max()));
    CompensatedSum running;
    running += g_min_;
    running += (static_cast<double>(first_knot_) - h_.x_min()) / h_.table_values().at(first_knot_);
    knot_values_.push_back(running.value());
    for (long k = first_knot_ + 1; k <= last; ++k) {
      running += 1.0 / h_.table_values().at(k);
      knot_values_.push_back(running.value());
    }
  }
}

double PotentialFunction::operator()(double x) const {
  if (x == 0.0) return 0.0;
  const double slack = 1e-12 * std::max(1.0, std::abs(h_.x_max()));
  if (x < h_.x_min() - slack) {
    throw DomainError("g is undefined at x = " + fmt(x) + " in the gap (0, x_min = " + fmt(h_.x_min()) + ")");
  }
  if (x > h_.x_max() + slack) {
    throw DomainError("g evaluated at x = " + fmt(x) + " above x_max = " + fmt(h_.x_max()));
  }
  x = std::clamp(x, h_.x_min(), h_.x_max());

  switch (mode_) {
    case Mode::ClosedForm:
      if (h_.kind() == HSpec::Kind::Constant) return x / h_.scale();
      return (1.0 + std::log(x / h_.x_min())) / h_.scale();
    case Mode::PrefixSum: {
      const double k = std::ceil(x);
      const auto idx = static_cast<long>(k) - first_knot_;
      if (x == k && idx >= 0) return knot_values_[static_cast<std::size_t>(idx)];
      if (idx <= 0) return g_min_ + (x - h_.x_min()) / h_(x);
      return knot_values_[static_cast<std::size_t>(idx - 1)] + (x - (k - 1.0)) / h_(x);
    }
    case Mode::Quadrature:
      return g_min_ + integrate_reciprocal(h_, h_.x_min(), x);
  }
  return 0.0;
}

DerivativeRange sampled_derivative_range(const HSpec& h) {
  DerivativeRange r;
  bool first = true;
  for (double x : h.sample_points()) {
    const double d = h.derivative(x);
    if (first || d < r.min) {
      r.min = d;
      r.argmin = x;
    }
    if (first || d > r.max) {
      r.max = d;
      r.argmax = x;
    }
    first = false;
  }
  return r;
}

CurvatureReport exp_potential_curvature(const PotentialFunction& g, double lambda, int sign, int points) {
  if (points < 3) throw ParameterError("curvature check needs at least 3 grid points");
  const HSpec& h = g.h();
  const double lo = h.x_min();
  const double hi = h.x_max();
  std::vector<double> xs(points), fx(points);
  // Integrate cell by cell so the grid values share one quadrature path.
  double acc = g.at_xmin();
  for (int i = 0; i < points; ++i) {
    xs[i] = i == points - 1 ? hi : lo + (hi - lo) * i / (points - 1);
    if (i > 0) acc += integrate_reciprocal(h, xs[i - 1], xs[i]);
    fx[i] = std::exp(sign * lambda * acc);
  }
  CurvatureReport report;
  report.max_second_difference = -std::numeric_limits<double>::infinity();
  report.min_second_difference = std::numeric_limits<double>::infinity();
  for (int i = 1; i + 1 < points; ++i) {
    const double d2 = fx[i - 1] - 2.0 * fx[i] + fx[i + 1];
    if (d2 > report.max_second_difference) {
      report.max_second_difference = d2;
      report.argmax = xs[i];
    }
    if (d2 < report.min_second_difference) {
      report.min_second_difference = d2;
      report.argmin = xs[i];
    }
  }
  return report;
}

}  // namespace driftkit
