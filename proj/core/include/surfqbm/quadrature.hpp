#pragma once

#include <complex>
#include <cstddef>
#include <functional>
#include <type_traits>
#include <vector>

namespace surfqbm {

struct QuadSpec {
  double rel_tol = 1e-8;
  double abs_tol = 0.0;
  std::size_t max_evaluations = 2'000'000;
  // Interior points where the integrand may be singular or kinked. They become
  // interval boundaries and are never evaluated.
  std::vector<double> split_points;
  // Width of the first panel on semi-infinite ranges; panels double after that.
  double tail_scale = 1.0;
};

template <class T>
struct QuadResultT {
  T value{};
  double abs_error_estimate = 0.0;
  std::size_t evaluations = 0;
};

using QuadResult = QuadResultT<double>;
using QuadResultC = QuadResultT<std::complex<double>>;

using RealFn = std::function<double(double)>;
using ComplexFn = std::function<std::complex<double>(double)>;

// Global adaptive Gauss-Kronrod (10/21 points). b may be +infinity, in which
// case the range is covered by doubling panels until two consecutive panels
// contribute less than rel_tol of the running total.
// Throws QuadratureError (carrying the partial value) when the tolerance cannot
// be met within max_evaluations.
QuadResult integrate_adaptive(const RealFn& f, double a, double b, const QuadSpec& spec = {});
QuadResultC integrate_adaptive(const ComplexFn& f, double a, double b, const QuadSpec& spec = {});

// Picks the real or complex overload from the callable's return type.
template <class F>
  requires std::is_invocable_v<F&, double> && (!std::is_same_v<std::decay_t<F>, RealFn>) &&
           (!std::is_same_v<std::decay_t<F>, ComplexFn>)
auto integrate_adaptive(F&& f, double a, double b, const QuadSpec& spec = {}) {
  using R = std::decay_t<std::invoke_result_t<F&, double>>;
  if constexpr (std::is_same_v<R, std::complex<double>>) {
    return integrate_adaptive(ComplexFn(std::forward<F>(f)), a, b, spec);
  } else {
    return integrate_adaptive(RealFn(std::forward<F>(f)), a, b, spec);
  }
}

// Integral over [0, inf) on a geometric grid around `scale`: panels
// [scale*2^k, scale*2^(k+1)] are added in both directions until negligible.
// Suited to imaginary-frequency integrals whose integrand spans decades.
QuadResult integrate_matsubara_like(const RealFn& f, const QuadSpec& spec = {}, double scale = 1.0);

// Fixed composite Gauss-Legendre rule, used as an independent oracle in tests.
double integrate_fixed(const RealFn& f, double a, double b, std::size_t panels, int order = 8);

}  // namespace surfqbm
