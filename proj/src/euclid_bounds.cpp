#include "packbounds/euclid_bounds.hpp"

#include <cmath>
#include <complex>
#include <limits>
#include <stdexcept>
#include <string>

#include "packbounds/errors.hpp"
#include "packbounds/specfun.hpp"

namespace packbounds {

namespace {

constexpr double kPi = 3.14159265358979323846;
constexpr double kLn2 = 0.693147180559945309417;

void require_dimension(const char* where, int n, int lo, int hi) {
  if (n < lo || n > hi)
    throw std::domain_error(std::string(where) + ": dimension " + std::to_string(n) +
                            " outside [" + std::to_string(lo) + ", " + std::to_string(hi) + "]");
}

}  // namespace

std::string_view method_id(Method m) {
  switch (m) {
    case Method::rogers: return "rogers";
    case Method::levenshtein: return "levenshtein";
    case Method::kl: return "kl";
    case Method::cz: return "cz";
    case Method::lp_transfer: return "lp_transfer";
  }
  return "unknown";
}

std::optional<Method> parse_method(std::string_view id) {
  for (Method m : {Method::rogers, Method::levenshtein, Method::kl, Method::cz, Method::lp_transfer})
    if (method_id(m) == id) return m;
  return std::nullopt;
}

// Rogers: (n+1)!/(n/2)! pi^{(n-1)/2} / 2^{3n/2} int e^{(n+1) z^2} erfc(z)^n du
// with z = sqrt(n/2) - i u. Writing erfc(z) = e^{-z^2} w(iz) turns the
// integrand into e^{z^2} w(iz)^n; |e^{z^2}| = e^{n/2 - u^2} and w(iz)^n is
// normalised by its value at u = 0, so every factor stays O(1).
BoundRecord rogers_bound(int n, const Quadrature& q) {
  require_dimension("rogers_bound", n, 2, 1000);
  const double a = std::sqrt(0.5 * n);
  const double log_w0 = std::log(specfun::scaled_erfc_complex({a, 0.0}).real());
  const double phase_rate = std::sqrt(2.0 * n);

  auto log_abs = [&](double u) {
    const auto w = specfun::scaled_erfc_complex({a, -u});
    return -u * u + n * (std::log(std::abs(w)) - log_w0);
  };
  auto integrand = [&](double u) {
    const auto w = specfun::scaled_erfc_complex({a, -u});
    const double re = -u * u + n * (std::log(std::abs(w)) - log_w0);
    const double im = n * std::arg(w) - phase_rate * u;
    return std::exp(std::complex<double>(re, im));
  };

  const double cutoff = truncation_point(log_abs, 0.0, 1.0, 0.0, 40.0);
  const auto right = integrate(integrand, 0.0, cutoff, q);
  const auto left = integrate(integrand, -cutoff, 0.0, q);
  if (!right.converged || !left.converged)
    throw NonConvergence("rogers_bound", "quadrature did not reach tolerance at n = " + std::to_string(n));
  const std::complex<double> total = right.estimate + left.estimate;
  if (!(total.real() > 0.0)) throw NonConvergence("rogers_bound", "non-positive Rogers integral");

  const double log_prefactor = specfun::log_gamma(n + 2.0) - specfun::log_gamma(0.5 * n + 1.0) +
                               0.5 * (n - 1) * std::log(kPi) - 1.5 * n * kLn2;
  BoundRecord rec;
  rec.dimension = n;
  rec.method = Method::rogers;
  rec.value = LogScaled::from_log(log_prefactor + 0.5 * n + n * log_w0 + std::log(total.real()));
  rec.diagnostics.quadrature_error = right.error_estimate + left.error_estimate;
  rec.diagnostics.evaluations = right.evaluations + left.evaluations;
  rec.diagnostics.imaginary_ratio = std::abs(total.imag()) / total.real();
  rec.diagnostics.truncation = cutoff;
  return rec;
}

BoundRecord levenshtein_bound(int n) {
  require_dimension("levenshtein_bound", n, 1, 800);
  const double nu = 0.5 * n;
  const double j = specfun::bessel_first_zero(nu);
  BoundRecord rec;
  rec.dimension = n;
  rec.method = Method::levenshtein;
  rec.value = LogScaled::from_log(n * std::log(j) - 2.0 * specfun::log_gamma(nu + 1.0) - n * std::log(4.0));
  return rec;
}

CodeBound kl_spherical_code_bound(const GegenbauerContext& ctx, double theta) {
  if (!(theta > 0.0 && theta <= kPi)) throw std::domain_error("kl_spherical_code_bound: theta outside (0, pi]");
  const int n = ctx.dimension();
  const double c = std::cos(theta);
  int k = 1;
  while (ctx.largest_root(k) < c - kRootComparisonSlack) {
    ++k;
    if (k + 1 > ctx.degree_cap())
      throw NonConvergence("kl_spherical_code_bound", "k-search exhausted the degree cap");
  }
  const double log_bound = std::log(4.0) + specfun::log_binomial(k + n - 2, k) -
                           std::log1p(-ctx.largest_root(k + 1));
  CodeBound out{LogScaled::from_log(log_bound), k};
  if (c < 0.0) {
    const double linear = 1.0 - 1.0 / c;
    if (std::log(linear) < log_bound) out = {LogScaled::from_value(linear), 0};
  }
  return out;
}

CodeBound kl_spherical_code_bound(int n, double theta) {
  if (n < 2) throw std::domain_error("kl_spherical_code_bound: requires n >= 2");
  GegenbauerContext ctx(n);
  return kl_spherical_code_bound(ctx, theta);
}

double kl_log_objective(const GegenbauerContext& ctx_next, int k) {
  const int n = ctx_next.dimension() - 1;
  const double t = ctx_next.largest_root(k);
  const double t_next = ctx_next.largest_root(k + 1);
  return 0.5 * n * std::log(0.5 * (1.0 - t)) + std::log(4.0) + specfun::log_binomial(k + n - 1, k) -
         std::log1p(-t_next);
}

double cz_log_objective(const GegenbauerContext& ctx, int k) {
  const int n = ctx.dimension();
  const double t = ctx.largest_root(k);
  const double t_next = ctx.largest_root(k + 1);
  return 0.5 * n * std::log(0.5 * (1.0 - t)) + std::log(4.0) + specfun::log_binomial(k + n - 2, k) -
         std::log1p(-t_next);
}

BoundRecord kl_bound(int n) {
  require_dimension("kl_bound", n, 1, 800);
  GegenbauerContext ctx(n + 1);
  BoundRecord rec;
  rec.dimension = n;
  rec.method = Method::kl;
  auto& trace = rec.diagnostics.objective_trace;
  trace.push_back(kl_log_objective(ctx, 1));
  for (int k = 1;; ++k) {
    if (k + 2 > ctx.degree_cap()) throw NonConvergence("kl_bound", "k-search exhausted the degree cap");
    trace.push_back(kl_log_objective(ctx, k + 1));
    if (trace[k] > trace[k - 1]) {
      rec.k_star = k;
      rec.value = LogScaled::from_log(trace[k - 1]);
      rec.theta_star = std::acos(ctx.largest_root(k));
      return rec;
    }
  }
}

BoundRecord cz_bound(int n) {
  require_dimension("cz_bound", n, 2, 800);
  GegenbauerContext ctx(n);
  BoundRecord rec;
  rec.dimension = n;
  rec.method = Method::cz;
  auto& trace = rec.diagnostics.objective_trace;
  int best = 0;
  for (int k = 1; ctx.largest_root(k) <= 0.5 + kRootComparisonSlack; ++k) {
    if (k + 1 > ctx.degree_cap()) throw NonConvergence("cz_bound", "k-search exhausted the degree cap");
    trace.push_back(cz_log_objective(ctx, k));
    if (best == 0 || trace.back() < trace[best - 1]) best = k;
  }
  if (best == 0) throw NonConvergence("cz_bound", "empty feasible k-range");
  // One step past the feasible range so the local-minimum certificate can
  // be checked at the boundary too.
  trace.push_back(cz_log_objective(ctx, static_cast<int>(trace.size()) + 1));
  rec.k_star = best;
  rec.value = LogScaled::from_log(trace[best - 1]);
  rec.theta_star = std::acos(ctx.largest_root(best));
  return rec;
}

BoundRecord compute_bound(int n, Method m, const Quadrature& q) {
  switch (m) {
    case Method::rogers: return rogers_bound(n, q);
    case Method::levenshtein: return levenshtein_bound(n);
    case Method::kl: return kl_bound(n);
    case Method::cz: return cz_bound(n);
    case Method::lp_transfer: break;
  }
  throw std::invalid_argument("compute_bound: lp_transfer needs a certificate, see spherical_lp");
}

double cap_density(int n, double theta, double count, const Quadrature& q) {
  if (n < 2) throw std::domain_error("cap_density: requires n >= 2");
  if (!(theta > 0.0 && theta <= kPi)) throw std::domain_error("cap_density: theta outside (0, pi]");
  if (!(count > 0.0)) throw std::domain_error("cap_density: count must be positive");
  auto f = [n](double x) { return std::pow(std::sin(x), n - 2); };
  const auto cap = integrate_or_throw("cap_density", f, 0.0, 0.5 * theta, q);
  return count * cap.estimate / specfun::beta(0.5, 0.5 * (n - 1));
}

double asymptotic_rate_objective(double theta) {
  if (!(theta > 0.0 && theta <= 0.5 * kPi + 1e-15))
    throw std::domain_error("asymptotic_rate_objective: theta outside (0, pi/2]");
  const double s = std::min(1.0, std::sin(theta));
  const double a = (1.0 + s) / (2.0 * s);
  const double b = (1.0 - s) / (2.0 * s);
  const double entropy = a * std::log(a) - (b > 0.0 ? b * std::log(b) : 0.0);
  return std::log2(std::sin(0.5 * theta)) + entropy / kLn2;
}

double golden_section_minimize(const std::function<double(double)>& f, double lo, double hi,
                               double tol) {
  const double ratio = 0.5 * (std::sqrt(5.0) - 1.0);
  double x1 = hi - ratio * (hi - lo);
  double x2 = lo + ratio * (hi - lo);
  double f1 = f(x1);
  double f2 = f(x2);
  while (hi - lo > tol) {
    if (f1 <= f2) {
      hi = x2;
      x2 = x1;
      f2 = f1;
      x1 = hi - ratio * (hi - lo);
      f1 = f(x1);
    } else {
      lo = x1;
      x1 = x2;
      f1 = f2;
      x2 = lo + ratio * (hi - lo);
      f2 = f(x2);
    }
  }
  return 0.5 * (lo + hi);
}

RateResult optimize_asymptotic_rate(double tol) {
  const double theta = golden_section_minimize(asymptotic_rate_objective, 1e-6, 0.5 * kPi, tol);
  return {theta, asymptotic_rate_objective(theta)};
}

Method best_method(int n, const Quadrature& q) {
  require_dimension("best_method", n, 4, 800);
  Method best = Method::rogers;
  double best_log = rogers_bound(n, q).value.log();
  for (Method m : {Method::levenshtein, Method::kl}) {
    const double v = compute_bound(n, m, q).value.log();
    if (v < best_log) {
      best = m;
      best_log = v;
    }
  }
  return best;
}

}  // namespace packbounds
