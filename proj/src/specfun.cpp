#include "packbounds/specfun.hpp"

#include <array>
#include <cmath>
#include <cstdint>
#include <stdexcept>
#include <string>

#include <boost/math/special_functions/beta.hpp>
#include <boost/math/special_functions/bessel.hpp>
#include <boost/math/special_functions/gamma.hpp>

#include "packbounds/errors.hpp"

namespace packbounds::specfun {

namespace {

constexpr double kPi = 3.14159265358979323846;
constexpr double kInvSqrtPi = 0.56418958354775628695;

// Weideman's rational expansion of w(z) in the upper half-plane.
constexpr int kWeidemanTerms = 40;

struct WeidemanTable {
  double L;
  std::array<double, kWeidemanTerms> a;  // a[j-1] multiplies Z^{j-1}
};

const WeidemanTable& weideman_table() {
  static const WeidemanTable table = [] {
    WeidemanTable t{};
    const int m = 2 * kWeidemanTerms;
    t.L = std::sqrt(kWeidemanTerms / std::sqrt(2.0));
    std::array<double, 2 * kWeidemanTerms> f{};
    for (int k = 0; k < m; ++k) {
      const double s = t.L * std::tan(k * kPi / (2.0 * m));
      f[k] = std::exp(-s * s) * (t.L * t.L + s * s);
    }
    for (int j = 1; j <= kWeidemanTerms; ++j) {
      double acc = f[0];
      for (int k = 1; k < m; ++k) acc += 2.0 * f[k] * std::cos(kPi * k * j / m);
      t.a[j - 1] = acc / (2.0 * m);
    }
    return t;
  }();
  return table;
}

std::complex<double> faddeeva_upper(std::complex<double> z) {
  const std::complex<double> i(0.0, 1.0);
  if (std::abs(z) >= 8.0) {
    // Laplace continued fraction, evaluated bottom-up at fixed depth.
    std::complex<double> r = z;
    for (int k = 24; k >= 1; --k) r = z - (0.5 * k) / r;
    return i * kInvSqrtPi / r;
  }
  const auto& t = weideman_table();
  const std::complex<double> denom = t.L - i * z;
  const std::complex<double> zz = (t.L + i * z) / denom;
  std::complex<double> p = t.a[kWeidemanTerms - 1];
  for (int j = kWeidemanTerms - 2; j >= 0; --j) p = p * zz + t.a[j];
  return 2.0 * p / (denom * denom) + kInvSqrtPi / denom;
}

using ThrowPolicy = boost::math::policies::policy<
    boost::math::policies::evaluation_error<boost::math::policies::throw_on_error>,
    boost::math::policies::domain_error<boost::math::policies::throw_on_error>>;

}  // namespace

double log_gamma(double x) {
  if (!(x > 0.0) || !std::isfinite(x)) throw std::domain_error("log_gamma: requires x > 0");
  return boost::math::lgamma(x, ThrowPolicy());
}

double log_binomial(long a, long b) {
  if (a < 0 || b < 0 || b > a) throw std::domain_error("log_binomial: requires 0 <= b <= a");
  if (b == 0 || b == a) return 0.0;
  if (a <= 60) {
    const long k = std::min(b, a - b);
    std::uint64_t c = 1;
    for (long j = 1; j <= k; ++j) c = c * static_cast<std::uint64_t>(a - k + j) / static_cast<std::uint64_t>(j);
    return std::log(static_cast<double>(c));
  }
  return log_gamma(a + 1.0) - log_gamma(b + 1.0) - log_gamma(static_cast<double>(a - b) + 1.0);
}

std::complex<double> faddeeva(std::complex<double> z) {
  if (z.imag() >= 0.0) return faddeeva_upper(z);
  // w(z) = 2 exp(-z^2) - w(-z)
  return 2.0 * std::exp(-z * z) - faddeeva_upper(-z);
}

std::complex<double> scaled_erfc_complex(std::complex<double> z) {
  return faddeeva(std::complex<double>(-z.imag(), z.real()));
}

namespace {

double unchecked_bessel_j(double nu, double x) {
  try {
    return boost::math::cyl_bessel_j(nu, x, ThrowPolicy());
  } catch (const boost::math::evaluation_error& e) {
    throw NonConvergence("bessel_j", e.what());
  }
}

}  // namespace

double bessel_j(double nu, double x) {
  if (!(nu >= 0.0 && nu <= 400.0)) throw std::domain_error("bessel_j: requires 0 <= nu <= 400");
  if (!(x > 0.0 && x <= 2000.0)) throw std::domain_error("bessel_j: requires 0 < x <= 2000");
  return unchecked_bessel_j(nu, x);
}

namespace {

// J_{nu+1} may sit one order above the public range.
double bessel_j_derivative(double nu, double x) {
  return (nu / x) * bessel_j(nu, x) - unchecked_bessel_j(nu + 1.0, x);
}

double zero_seed(double nu) {
  if (nu < 1.0) return 2.404825557695773 + 1.4268 * nu;  // j_0 ... j_1 interpolation
  const double c = std::cbrt(nu);
  const double ic = 1.0 / c;
  return nu + 1.8557571 * c + 1.033150 * ic - 0.00397 / nu - 0.0908 * ic * ic * ic * ic * ic +
         0.043 * ic * ic * ic * ic * ic * ic * ic;
}

// Newton from `start`; returns NaN if it fails to settle.
double newton_zero(double nu, double start, double rel_tol) {
  double x = start;
  for (int it = 0; it < 60; ++it) {
    const double step = bessel_j(nu, x) / bessel_j_derivative(nu, x);
    if (!std::isfinite(step)) return std::nan("");
    x -= step;
    if (!(x > 0.0)) return std::nan("");
    if (std::abs(step) <= 0.25 * rel_tol * x) return x;
  }
  return std::nan("");
}

bool is_first_zero(double nu, double x) {
  // J_nu > 0 on (0, j_nu); probe the lower part and just below the root.
  const double lower = std::max(nu, 0.0);
  for (int i = 1; i <= 16; ++i) {
    const double probe = lower + (x - lower) * (i / 17.0);
    if (probe > 0.0 && bessel_j(nu, probe) <= 0.0) return false;
  }
  return bessel_j(nu, x * (1.0 - 1e-7)) > 0.0 && bessel_j(nu, x * (1.0 + 1e-7)) < 0.0;
}

}  // namespace

double bessel_first_zero(double nu, double rel_tol) {
  if (!(nu >= 0.0 && nu <= 400.0))
    throw std::domain_error("bessel_first_zero: requires 0 <= nu <= 400");
  const double seed = zero_seed(nu);
  double x = newton_zero(nu, seed, rel_tol);
  if (std::isfinite(x) && is_first_zero(nu, x)) return x;

  // Fallback: march up from nu (where J_nu > 0) until the sign flips, then
  // bisect to a Newton-safe bracket.
  const double step = 0.1 * std::max(1.0, std::cbrt(nu));
  double lo = std::max(nu, 0.5);
  if (bessel_j(nu, lo) <= 0.0) throw NonConvergence("bessel_first_zero", "J_nu not positive at nu");
  double hi = lo + step;
  int guard = 0;
  while (bessel_j(nu, hi) > 0.0) {
    lo = hi;
    hi += step;
    if (++guard > 100000) throw NonConvergence("bessel_first_zero", "no sign change found");
  }
  for (int it = 0; it < 200 && hi - lo > rel_tol * hi; ++it) {
    const double mid = 0.5 * (lo + hi);
    (bessel_j(nu, mid) > 0.0 ? lo : hi) = mid;
  }
  x = newton_zero(nu, 0.5 * (lo + hi), rel_tol);
  if (std::isfinite(x) && x >= lo * (1 - 1e-10) && x <= hi * (1 + 1e-10)) return x;
  return 0.5 * (lo + hi);
}

double incomplete_beta(double u, double a, double b) {
  if (!(u >= 0.0 && u <= 1.0)) throw std::domain_error("incomplete_beta: requires u in [0,1]");
  if (!(a > 0.0 && b > 0.0)) throw std::domain_error("incomplete_beta: requires a, b > 0");
  return boost::math::beta(a, b, u, ThrowPolicy());
}

double beta(double a, double b) {
  if (!(a > 0.0 && b > 0.0)) throw std::domain_error("beta: requires a, b > 0");
  return boost::math::beta(a, b, ThrowPolicy());
}

double log_sinh(double x) {
  if (!(x > 0.0)) throw std::domain_error("log_sinh: requires x > 0");
  if (x < 20.0) return std::log(std::sinh(x));
  return x + std::log1p(-std::exp(-2.0 * x)) - 0.6931471805599453094;
}

}  // namespace packbounds::specfun
