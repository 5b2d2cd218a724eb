#include "surfqbm/quadrature.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <limits>
#include <numbers>
#include <queue>
#include <string>

#include "surfqbm/error.hpp"

namespace surfqbm {

namespace {

// Kronrod 21-point abscissae / weights and the embedded Gauss 10-point weights.
constexpr std::array<double, 11> xgk = {
    0.995657163025808080735527280689003, 0.973906528517171720077964012084452,
    0.930157491355708226001207180059508, 0.865063366688984510732096688423493,
    0.780817726586416897063717578345042, 0.679409568299024406234327365114874,
    0.562757134668604683339000099272694, 0.433395394129247190799265943165784,
    0.294392862701460198131126603103866, 0.148874338981631210884826001129720,
    0.000000000000000000000000000000000};
constexpr std::array<double, 11> wgk = {
    0.011694638867371874278064396062192, 0.032558162307964727478818972459390,
    0.054755896574351996031381300244580, 0.075039674810919952767043140916190,
    0.093125454583697605535065465083366, 0.109387158802297641899210590325805,
    0.123491976262065851077600525478186, 0.134709217311473325928054001771707,
    0.142775938577060080797094273138717, 0.147739104901338491374841515972068,
    0.149445554002916905664936468389821};
constexpr std::array<double, 5> wg = {
    0.066671344308688137593568809893332, 0.149451349150580593145776339657697,
    0.219086362515982043995534934228163, 0.269266719309996355091226921569469,
    0.295524224714752870173892994651338};

double magnitude(double x) { return std::abs(x); }
double magnitude(const std::complex<double>& x) { return std::abs(x); }

template <class T>
struct Segment {
  double a;
  double b;
  T value;
  double error;
  bool roundoff = false;  // error is at the floating-point floor
  bool operator<(const Segment& o) const { return error < o.error; }
};

template <class T, class F>
Segment<T> gk21(const F& f_raw, double a, double b) {
  const double center = 0.5 * (a + b);
  const double half = 0.5 * (b - a);
  // On segments a few ulps wide an outer node can round onto an endpoint,
  // which may be a split point; keep every node strictly inside.
  const double lo = std::nextafter(a, b), hi = std::nextafter(b, a);
  auto f = [&](double x) { return f_raw(std::clamp(x, lo, hi)); };
  const T fc = f(center);
  T resk = fc * wgk[10];
  T resg{};
  double resabs = magnitude(fc) * wgk[10];
  std::array<T, 10> f1{};
  std::array<T, 10> f2{};
  for (int j = 0; j < 10; ++j) {
    const double dx = half * xgk[j];
    f1[j] = f(center - dx);
    f2[j] = f(center + dx);
    const T sum = f1[j] + f2[j];
    resk += wgk[j] * sum;
    resabs += wgk[j] * (magnitude(f1[j]) + magnitude(f2[j]));
    if (j % 2 == 1) resg += wg[j / 2] * sum;
  }
  const T mean = resk * 0.5;
  double resasc = wgk[10] * magnitude(fc - mean);
  for (int j = 0; j < 10; ++j) {
    resasc += wgk[j] * (magnitude(f1[j] - mean) + magnitude(f2[j] - mean));
  }
  resk *= half;
  resg *= half;
  resabs *= std::abs(half);
  resasc *= std::abs(half);
  double err = magnitude(resk - resg);
  if (resasc != 0.0 && err != 0.0) {
    err = resasc * std::min(1.0, std::pow(200.0 * err / resasc, 1.5));
  }
  constexpr double eps = std::numeric_limits<double>::epsilon();
  bool roundoff = false;
  if (resabs > std::numeric_limits<double>::min() / (50.0 * eps)) {
    const double floor = 50.0 * eps * resabs;
    if (err <= floor) {
      err = floor;
      roundoff = true;
    }
  }
  return {a, b, resk, err, roundoff};
}

template <class T, class F>
QuadResultT<T> adaptive_finite(const F& f, std::vector<double> edges, const QuadSpec& spec) {
  std::priority_queue<Segment<T>> queue;
  QuadResultT<T> out;
  T total{};
  double err = 0.0;
  for (std::size_t i = 0; i + 1 < edges.size(); ++i) {
    if (edges[i + 1] <= edges[i]) continue;
    auto s = gk21<T>(f, edges[i], edges[i + 1]);
    out.evaluations += 21;
    total += s.value;
    err += s.error;
    queue.push(s);
  }
  if (queue.empty()) {
    out.evaluations = std::max<std::size_t>(out.evaluations, 1);
    return out;
  }
  // Segments that can no longer be bisected in floating point.
  T frozen{};
  double frozen_err = 0.0;
  auto tolerance = [&] { return std::max(spec.abs_tol, spec.rel_tol * magnitude(total)); };
  // Roundoff-limited segments are accepted as they are.
  while (err > tolerance() + frozen_err) {
    if (queue.empty()) break;
    if (out.evaluations + 42 > spec.max_evaluations) {
      throw QuadratureError("quadrature did not converge: error estimate " + std::to_string(err) +
                                " after " + std::to_string(out.evaluations) + " evaluations",
                            magnitude(total), err);
    }
    Segment<T> worst = queue.top();
    queue.pop();
    const double mid = 0.5 * (worst.a + worst.b);
    if (worst.roundoff || !(mid > worst.a && mid < worst.b) ||
        (worst.b - worst.a) < 64.0 * std::numeric_limits<double>::epsilon() *
                                  std::max(std::abs(worst.a), std::abs(worst.b))) {
      frozen += worst.value;
      frozen_err += worst.error;
      continue;
    }
    auto left = gk21<T>(f, worst.a, mid);
    auto right = gk21<T>(f, mid, worst.b);
    out.evaluations += 42;
    total += left.value + right.value - worst.value;
    err += left.error + right.error - worst.error;
    queue.push(left);
    queue.push(right);
  }
  // Re-sum to avoid drift from the incremental updates.
  T sum = frozen;
  double esum = frozen_err;
  while (!queue.empty()) {
    sum += queue.top().value;
    esum += queue.top().error;
    queue.pop();
  }
  out.value = sum;
  out.abs_error_estimate = esum;
  return out;
}

std::vector<double> make_edges(double a, double b, const std::vector<double>& splits) {
  std::vector<double> edges{a};
  std::vector<double> inner;
  for (double s : splits) {
    if (s > a && s < b) inner.push_back(s);
  }
  std::sort(inner.begin(), inner.end());
  inner.erase(std::unique(inner.begin(), inner.end()), inner.end());
  edges.insert(edges.end(), inner.begin(), inner.end());
  edges.push_back(b);
  return edges;
}

// Sum of panels [edge(k), edge(k+1)) produced by `next_edge`, stopping once two
// consecutive panels are negligible against the running total.
template <class T, class F, class Next>
QuadResultT<T> panel_sum(const F& f, double start, Next next_edge, const QuadSpec& spec,
                         T initial = T{}, QuadResultT<T> acc = {}) {
  T total = initial + acc.value;
  double err = acc.abs_error_estimate;
  std::size_t evals = acc.evaluations;
  int quiet = 0;
  double lo = start;
  for (int panel = 0; panel < 2000; ++panel) {
    const double hi = next_edge(lo);
    if (!std::isfinite(hi) || hi <= lo) break;
    QuadSpec local = spec;
    local.abs_tol = std::max(spec.abs_tol, 0.01 * spec.rel_tol * magnitude(total));
    local.max_evaluations = spec.max_evaluations > evals ? spec.max_evaluations - evals : 0;
    QuadResultT<T> r;
    try {
      r = adaptive_finite<T>(f, make_edges(lo, hi, spec.split_points), local);
    } catch (const QuadratureError& e) {
      throw QuadratureError(e.what(), magnitude(total) + e.partial_value(), err + e.abs_error());
    }
    total += r.value;
    err += r.abs_error_estimate;
    evals += r.evaluations;
    const double thresh = std::max(spec.abs_tol, spec.rel_tol * magnitude(total));
    if (magnitude(r.value) + r.abs_error_estimate <= thresh) {
      if (++quiet >= 2) return {total - initial, err, evals};
    } else {
      quiet = 0;
    }
    lo = hi;
  }
  throw QuadratureError("semi-infinite quadrature: tail did not decay", magnitude(total), err);
}

template <class T, class F>
QuadResultT<T> integrate_impl(const F& f, double a, double b, const QuadSpec& spec) {
  if (!(spec.rel_tol > 0.0)) throw DomainError("QuadSpec.rel_tol must be > 0");
  if (spec.max_evaluations < 100) throw DomainError("QuadSpec.max_evaluations must be >= 100");
  if (std::isnan(a) || std::isnan(b)) throw DomainError("integration limits are NaN");
  if (a == b) return {T{}, 0.0, 1};
  if (b < a) {
    auto r = integrate_impl<T>(f, b, a, spec);
    r.value = -r.value;
    return r;
  }
  if (std::isfinite(b)) {
    return adaptive_finite<T>(f, make_edges(a, b, spec.split_points), spec);
  }
  if (!std::isfinite(a)) throw DomainError("lower limit must be finite");
  const double width0 = spec.tail_scale > 0.0 ? spec.tail_scale : 1.0;
  double width = width0;
  auto next = [&width](double lo) {
    const double hi = lo + width;
    width *= 2.0;
    return hi;
  };
  return panel_sum<T>(f, a, next, spec);
}

}  // namespace

QuadResult integrate_adaptive(const RealFn& f, double a, double b, const QuadSpec& spec) {
  return integrate_impl<double>(f, a, b, spec);
}

QuadResultC integrate_adaptive(const ComplexFn& f, double a, double b, const QuadSpec& spec) {
  return integrate_impl<std::complex<double>>(f, a, b, spec);
}

QuadResult integrate_matsubara_like(const RealFn& f, const QuadSpec& spec, double scale) {
  if (!(scale > 0.0)) throw DomainError("matsubara scale must be > 0");
  if (!(spec.rel_tol > 0.0)) throw DomainError("QuadSpec.rel_tol must be > 0");
  // Core panel [scale/2, scale], then geometric panels downward and upward.
  QuadResult core = adaptive_finite<double>(f, make_edges(0.5 * scale, scale, spec.split_points), spec);
  auto down = [](double hi) { return 0.5 * hi; };
  // Downward sweep: panels [x/2, x]; integrate with reversed orientation.
  double total = core.value;
  double err = core.abs_error_estimate;
  std::size_t evals = core.evaluations;
  double hi = 0.5 * scale;
  int quiet = 0;
  for (int k = 0; k < 200; ++k) {
    const double lo = down(hi);
    QuadSpec local = spec;
    local.abs_tol = std::max(spec.abs_tol, 0.01 * spec.rel_tol * std::abs(total));
    auto r = adaptive_finite<double>(f, make_edges(lo, hi, spec.split_points), local);
    total += r.value;
    err += r.abs_error_estimate;
    evals += r.evaluations;
    hi = lo;
    if (std::abs(r.value) + r.abs_error_estimate <=
        std::max(spec.abs_tol, spec.rel_tol * std::abs(total))) {
      if (++quiet >= 2) break;
    } else {
      quiet = 0;
    }
  }
  // Remaining [0, hi] in one adaptive piece.
  {
    QuadSpec local = spec;
    local.abs_tol = std::max(spec.abs_tol, 0.01 * spec.rel_tol * std::abs(total));
    auto r = adaptive_finite<double>(f, make_edges(0.0, hi, spec.split_points), local);
    total += r.value;
    err += r.abs_error_estimate;
    evals += r.evaluations;
  }
  QuadResult acc{total, err, evals};
  auto up = [](double lo) { return 2.0 * lo; };
  return panel_sum<double>(f, scale, up, spec, 0.0, acc);
}

double integrate_fixed(const RealFn& f, double a, double b, std::size_t panels, int order) {
  // Gauss-Legendre nodes via Newton iteration on P_n.
  std::vector<double> x(order);
  std::vector<double> w(order);
  for (int i = 0; i < order; ++i) {
    double z = std::cos(std::numbers::pi * (i + 0.75) / (order + 0.5));
    for (int it = 0; it < 100; ++it) {
      double p0 = 1.0;
      double p1 = z;
      for (int k = 2; k <= order; ++k) {
        const double p2 = ((2.0 * k - 1.0) * z * p1 - (k - 1.0) * p0) / k;
        p0 = p1;
        p1 = p2;
      }
      const double dp = order * (z * p1 - p0) / (z * z - 1.0);
      const double dz = p1 / dp;
      z -= dz;
      if (std::abs(dz) < 1e-16) {
        x[i] = z;
        w[i] = 2.0 / ((1.0 - z * z) * dp * dp);
        break;
      }
    }
  }
  const double h = (b - a) / static_cast<double>(panels);
  double total = 0.0;
  for (std::size_t p = 0; p < panels; ++p) {
    const double c = a + (p + 0.5) * h;
    double s = 0.0;
    for (int i = 0; i < order; ++i) s += w[i] * f(c + 0.5 * h * x[i]);
    total += 0.5 * h * s;
  }
  return total;
}

}  // namespace surfqbm
