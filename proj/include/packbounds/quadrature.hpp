#pragma once

#include <algorithm>
#include <cmath>
#include <complex>
#include <functional>
#include <span>
#include <stdexcept>
#include <type_traits>
#include <vector>

#include "packbounds/errors.hpp"

namespace packbounds {

enum class QuadratureScheme { adaptive_gauss_legendre, tanh_sinh };

struct Quadrature {
  QuadratureScheme scheme = QuadratureScheme::adaptive_gauss_legendre;
  double rel_tol = 1e-11;
  double abs_tol = 0.0;
  /// Interval splits for Gauss-Kronrod, halvings of the step for tanh-sinh.
  int max_refinements = 2000;
};

template <class T>
struct QuadResult {
  T estimate{};
  double error_estimate = 0.0;
  bool converged = false;
  int evaluations = 0;
};

namespace detail {

inline double magnitude(double v) { return std::abs(v); }
inline double magnitude(std::complex<double> v) { return std::abs(v); }
inline bool finite(double v) { return std::isfinite(v); }
inline bool finite(std::complex<double> v) {
  return std::isfinite(v.real()) && std::isfinite(v.imag());
}

// Kronrod 15-point nodes on [0,1) half of [-1,1]; index 7 is the centre.
inline constexpr double kKronrodNodes[8] = {
    0.991455371120812639206854697526329, 0.949107912342758524526189684047851,
    0.864864423359769072789712788640926, 0.741531185599394439863864773280788,
    0.586087235467691130294144845693013, 0.405845151377397166906606412076961,
    0.207784955007898467600689403773245, 0.000000000000000000000000000000000};
inline constexpr double kKronrodWeights[8] = {
    0.022935322010529224963732008058970, 0.063092092629978553290700663189204,
    0.104790010322250183839876322541518, 0.140653259715525918745189590510238,
    0.169004726639267902826583426598550, 0.190350578064785409913256402421014,
    0.204432940075298892414161999234649, 0.209482141084727828012999174891714};
// Gauss 7-point weights for the odd Kronrod nodes (1, 3, 5, 7).
inline constexpr double kGaussWeights[4] = {
    0.129484966168869693270611432679082, 0.279705391489276667901467771423780,
    0.381830050505118944950369775488975, 0.417959183673469387755102040816327};

template <class T>
struct Segment {
  double a, b;
  T value;
  double error;
  bool operator<(const Segment& o) const {
    // max-heap on error, ties broken by position for determinism
    if (error != o.error) return error < o.error;
    return a > o.a;
  }
};

template <class T, class F>
Segment<T> kronrod_segment(F& f, double a, double b, int& evaluations) {
  const double centre = 0.5 * (a + b);
  const double half = 0.5 * (b - a);
  T fc = f(centre);
  if (!finite(fc)) throw std::domain_error("integrate: non-finite integrand value");
  T kronrod = fc * kKronrodWeights[7];
  T gauss = fc * kGaussWeights[3];
  for (int j = 0; j < 7; ++j) {
    const double dx = half * kKronrodNodes[j];
    T f1 = f(centre - dx);
    T f2 = f(centre + dx);
    if (!finite(f1) || !finite(f2))
      throw std::domain_error("integrate: non-finite integrand value");
    kronrod += (f1 + f2) * kKronrodWeights[j];
    if (j % 2 == 1) gauss += (f1 + f2) * kGaussWeights[j / 2];
  }
  evaluations += 15;
  kronrod *= half;
  gauss *= half;
  return {a, b, kronrod, magnitude(kronrod - gauss)};
}

template <class T, class F>
QuadResult<T> gauss_kronrod(F& f, std::span<const double> breaks, const Quadrature& q) {
  QuadResult<T> out;
  std::vector<Segment<T>> heap;
  for (std::size_t i = 0; i + 1 < breaks.size(); ++i) {
    if (breaks[i + 1] > breaks[i]) {
      heap.push_back(kronrod_segment<T>(f, breaks[i], breaks[i + 1], out.evaluations));
      std::push_heap(heap.begin(), heap.end());
    }
  }
  if (heap.empty()) {
    out.converged = true;
    return out;
  }
  T value{};
  double error = 0.0;
  for (int refinement = 0;; ++refinement) {
    value = T{};
    error = 0.0;
    for (const auto& s : heap) {
      value += s.value;
      error += s.error;
    }
    const double target = std::max(q.rel_tol * magnitude(value), q.abs_tol);
    if (error <= target) {
      out.converged = true;
      break;
    }
    if (refinement >= q.max_refinements) break;
    const Segment<T> worst = heap.front();
    const double mid = 0.5 * (worst.a + worst.b);
    if (!(mid > worst.a && mid < worst.b)) break;  // interval exhausted
    std::pop_heap(heap.begin(), heap.end());
    heap.back() = kronrod_segment<T>(f, worst.a, mid, out.evaluations);
    std::push_heap(heap.begin(), heap.end());
    heap.push_back(kronrod_segment<T>(f, mid, worst.b, out.evaluations));
    std::push_heap(heap.begin(), heap.end());
  }
  out.estimate = value;
  out.error_estimate = error;
  return out;
}

template <class T, class F>
QuadResult<T> tanh_sinh(F& f, double a, double b, const Quadrature& q) {
  // x = (a+b)/2 + h tanh(pi/2 sinh(s)); nodes closer than one ulp to an
  // endpoint are dropped, so integrable endpoint singularities are fine.
  constexpr double kHalfPi = 1.5707963267948966192;
  const double half = 0.5 * (b - a);
  QuadResult<T> out;
  double step = 1.0;
  const double s_max = 4.0;
  auto term = [&](double s, bool& usable) -> T {
    const double sh = std::sinh(s);
    const double ch = std::cosh(s);
    const double u = kHalfPi * sh;
    const double cu = std::cosh(u);
    const double weight = kHalfPi * ch / (cu * cu);
    // distance to the endpoint: 1 - tanh(u) = 1/(e^{u} cosh u)
    const double gap = 1.0 / (std::exp(std::abs(u)) * cu);
    const double x = s >= 0 ? b - half * gap : a + half * gap;
    usable = gap > 0.0 && x > a && x < b;
    if (!usable) return T{};
    T v = f(x);
    ++out.evaluations;
    if (!finite(v)) throw std::domain_error("integrate: non-finite integrand value");
    return v * (weight * half);
  };
  bool usable = true;
  T sum = term(0.0, usable);
  for (double s = step; s <= s_max; s += step) {
    bool u1 = true, u2 = true;
    sum += term(s, u1) + term(-s, u2);
  }
  T estimate = sum * step;
  for (int level = 1; level <= q.max_refinements && level <= 12; ++level) {
    step *= 0.5;
    for (double s = step; s <= s_max; s += 2.0 * step) {
      bool u1 = true, u2 = true;
      sum += term(s, u1) + term(-s, u2);
    }
    T next = sum * step;
    const double diff = magnitude(next - estimate);
    estimate = next;
    out.error_estimate = diff;
    if (level >= 3 && diff <= std::max(q.rel_tol * magnitude(estimate), q.abs_tol)) {
      out.converged = true;
      break;
    }
  }
  out.estimate = estimate;
  return out;
}

}  // namespace detail

/// Integrate f over [a, b], splitting first at the given interior
/// breakpoints. Deterministic for a fixed configuration. Throws
/// std::domain_error on a NaN/inf integrand value; otherwise reports
/// non-convergence through QuadResult::converged.
template <class F, class T = std::invoke_result_t<F&, double>>
QuadResult<T> integrate(F&& f, double a, double b, const Quadrature& q = {},
                        std::span<const double> interior_breaks = {}) {
  if (!(q.rel_tol > 0.0)) throw std::invalid_argument("integrate: rel_tol must be positive");
  if (!(a <= b)) throw std::invalid_argument("integrate: expected a <= b");
  if (q.scheme == QuadratureScheme::tanh_sinh) {
    if (interior_breaks.empty()) return detail::tanh_sinh<T>(f, a, b, q);
    std::vector<double> pts{a};
    for (double x : interior_breaks)
      if (x > pts.back() && x < b) pts.push_back(x);
    pts.push_back(b);
    QuadResult<T> total;
    total.converged = true;
    for (std::size_t i = 0; i + 1 < pts.size(); ++i) {
      auto part = detail::tanh_sinh<T>(f, pts[i], pts[i + 1], q);
      total.estimate += part.estimate;
      total.error_estimate += part.error_estimate;
      total.evaluations += part.evaluations;
      total.converged = total.converged && part.converged;
    }
    return total;
  }
  std::vector<double> pts{a};
  for (double x : interior_breaks)
    if (x > pts.back() && x < b) pts.push_back(x);
  pts.push_back(b);
  return detail::gauss_kronrod<T>(f, pts, q);
}

/// Like integrate() but throws NonConvergence instead of returning an
/// unconverged estimate.
template <class F>
auto integrate_or_throw(const char* where, F&& f, double a, double b, const Quadrature& q = {},
                        std::span<const double> interior_breaks = {}) {
  auto r = integrate(std::forward<F>(f), a, b, q, interior_breaks);
  if (!r.converged)
    throw NonConvergence(where, "quadrature error " + std::to_string(r.error_estimate) +
                                    " above tolerance after " + std::to_string(r.evaluations) +
                                    " evaluations");
  return r;
}

/// Smallest point x = start + step*2^j (j >= 0) at which log_abs(x) has
/// fallen `depth` nats below `peak_log`. Used to truncate (-inf, inf)
/// integrals reproducibly.
double truncation_point(const std::function<double(double)>& log_abs, double start, double step,
                        double peak_log, double depth = 40.0, int max_doublings = 60);

}  // namespace packbounds
