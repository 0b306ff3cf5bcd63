#include <doctest.h>

#include <cmath>
#include <complex>

#include <boost/math/special_functions/bessel.hpp>
#include <boost/multiprecision/cpp_dec_float.hpp>
#include <boost/multiprecision/cpp_int.hpp>

#include "packbounds/errors.hpp"
#include "packbounds/specfun.hpp"

using namespace packbounds;
using boost::multiprecision::cpp_dec_float_100;
using boost::multiprecision::cpp_dec_float_50;
using boost::multiprecision::cpp_int;

namespace {

const double kPi = 3.14159265358979323846;

// ln Gamma(x) by upward shift and the Stirling series, 50 digits.
double stirling_log_gamma(double x_in) {
  cpp_dec_float_50 x = x_in;
  cpp_dec_float_50 shift = 0;
  while (x < 40) {
    shift += log(x);
    x += 1;
  }
  static const int num[] = {1, -1, 1, -1, 5, -691, 7, -3617};
  static const int den[] = {6, 30, 42, 30, 66, 2730, 6, 510};
  const cpp_dec_float_50 pi = boost::math::constants::pi<cpp_dec_float_50>();
  cpp_dec_float_50 s = (x - cpp_dec_float_50(0.5)) * log(x) - x + log(2 * pi) / 2;
  cpp_dec_float_50 xp = x;
  for (int k = 1; k <= 8; ++k) {
    s += cpp_dec_float_50(num[k - 1]) / den[k - 1] / (2 * k * (2 * k - 1)) / xp;
    xp *= x * x;
  }
  return static_cast<double>(s - shift);
}

// J_nu(x) by its power series in 100 digits; nu integer or half-integer.
double series_bessel_j(double nu, double x_in) {
  const cpp_dec_float_100 x = x_in;
  const cpp_dec_float_100 half_x = x / 2;
  // Gamma(nu + 1) by recursion from Gamma(1) or Gamma(1/2)
  cpp_dec_float_100 g = 1;
  double start = 1.0;
  if (std::fmod(nu, 1.0) != 0.0) {
    g = sqrt(boost::math::constants::pi<cpp_dec_float_100>());
    start = 0.5;
  }
  for (double a = start; a < nu + 1.0 - 1e-9; a += 1.0) g *= a;
  cpp_dec_float_100 term = pow(half_x, cpp_dec_float_100(nu)) / g;
  cpp_dec_float_100 sum = term;
  for (int m = 1; m < 400; ++m) {
    term *= -(half_x * half_x) / (cpp_dec_float_100(m) * (m + cpp_dec_float_100(nu)));
    sum += term;
  }
  return static_cast<double>(sum);
}

double rel(double a, double b) { return std::abs(a - b) / std::abs(b); }

}  // namespace

TEST_CASE("log_gamma agrees with a 50-digit Stirling evaluation") {
  for (double x : {1e-3, 0.5, 1.0, 1.5, 2.0, 7.25, 30.5, 100.0, 301.5, 1234.5, 1e5})
    CHECK(std::abs(specfun::log_gamma(x) - stirling_log_gamma(x)) <=
          1e-14 * std::max(1.0, std::abs(stirling_log_gamma(x))));
  CHECK(specfun::log_gamma(301.5) == doctest::Approx(1417.758989795241384212).epsilon(1e-15));
  CHECK_THROWS_AS(specfun::log_gamma(0.0), std::domain_error);
  CHECK_THROWS_AS(specfun::log_gamma(-2.5), std::domain_error);
}

TEST_CASE("log_binomial matches exact integer binomials") {
  auto exact_log = [](long a, long b) {
    cpp_int c = 1;
    for (long i = 1; i <= b; ++i) c = c * (a - b + i) / i;
    return static_cast<double>(log(cpp_dec_float_50(c)));
  };
  for (long a : {0L, 1L, 5L, 20L, 60L, 61L, 137L, 640L})
    for (long b : {0L, 1L, 2L, 7L, 30L, 37L})
      if (b <= a) CHECK(std::abs(specfun::log_binomial(a, b) - exact_log(a, b)) <= 1e-12 * std::max(1.0, exact_log(a, b)));
  CHECK(specfun::log_binomial(10, 3) == std::log(120.0));
  CHECK_THROWS(specfun::log_binomial(3, 4));
}

TEST_CASE("faddeeva matches reference values across the plane") {
  struct Ref {
    std::complex<double> z, w;
  };
  const Ref refs[] = {
      {{2.0, 1.0}, {0.1402395813662779437, 0.22221344017989910261}},
      {{-3.0, 0.5}, {0.037126366054692344667, -0.19298375530036208839}},
      {{0.1, 10.0}, {0.056135514562873149612, 0.00055587748921268723779}},
      {{5.0, -0.2}, {-0.0048070373479948165588, 0.11504012015742784612}},
      {{1e-3, 1e-3}, {0.99887162233541124713, 0.0011263806715998664529}},
      {{20.0, 3.0}, {0.004153127198180632507, 0.027619583484586804833}},
      {{0.0, 0.0}, {1.0, 0.0}},
  };
  for (const auto& r : refs) {
    const auto w = specfun::faddeeva(r.z);
    CHECK(std::abs(w - r.w) <= 1e-14 * std::abs(r.w));
  }
}

TEST_CASE("scaled_erfc_complex") {
  CHECK(specfun::scaled_erfc_complex({1.0, 0.0}).real() == doctest::Approx(0.42758357615580700441).epsilon(1e-15));
  CHECK(std::abs(specfun::scaled_erfc_complex({1.0, 0.0}).real() - std::exp(1.0) * std::erfc(1.0)) < 1e-15);
  const std::complex<double> a = specfun::scaled_erfc_complex({8.5, -3.0});
  CHECK(std::abs(a - std::complex<double>(0.058819883219533186762, 0.020510735970844800331)) < 1e-15);
  const std::complex<double> b = specfun::scaled_erfc_complex({17.3, -40.0});
  CHECK(std::abs(b - std::complex<double>(0.0051422232864236286081, 0.011883270754282594138)) < 1e-16);
  // conjugate symmetry
  const auto c1 = specfun::scaled_erfc_complex({3.0, 2.0});
  const auto c2 = specfun::scaled_erfc_complex({3.0, -2.0});
  CHECK(std::abs(c1 - std::conj(c2)) < 1e-15);
  // large real argument: ~ 1/(sqrt(pi) x)
  const double x = 1e6;
  CHECK(rel(specfun::scaled_erfc_complex({x, 0.0}).real(), 1.0 / (std::sqrt(kPi) * x) * (1 - 0.5 / (x * x))) < 1e-12);
}

TEST_CASE("bessel_j agrees with a 100-digit power series") {
  for (double nu : {0.0, 0.5, 1.0, 3.5, 12.0, 25.5, 50.5})
    for (double x : {0.3, 2.0, 9.7, 31.0, 60.0}) {
      const double ref = series_bessel_j(nu, x);
      CHECK(std::abs(specfun::bessel_j(nu, x) - ref) <= 1e-13 * std::max(std::abs(ref), 1e-3));
    }
  CHECK(specfun::bessel_j(300.0, 1500.0) == doctest::Approx(-0.01669508172861000164922).epsilon(1e-12));
  CHECK(specfun::bessel_j(50.5, 80.0) == doctest::Approx(-0.07592211803620801611992).epsilon(1e-13));
}

TEST_CASE("bessel_first_zero") {
  CHECK(specfun::bessel_first_zero(0.5) == doctest::Approx(kPi).epsilon(1e-14));
  CHECK(specfun::bessel_first_zero(6.0) == doctest::Approx(9.936109524217684894693).epsilon(1e-13));
  CHECK(specfun::bessel_first_zero(150.0) == doctest::Approx(160.05457959243035998606).epsilon(1e-13));
  CHECK(specfun::bessel_first_zero(300.0) == doctest::Approx(312.57736160684928716925).epsilon(1e-13));
  CHECK(specfun::bessel_first_zero(400.0) == doctest::Approx(413.81354107528143894054).epsilon(1e-13));
  CHECK(specfun::bessel_first_zero(0.0) == doctest::Approx(2.404825557695773).epsilon(1e-14));

  SUBCASE("against an independent zero finder over the whole range") {
    for (double nu = 0.0; nu <= 400.0; nu += 7.3) {
      const double ref = boost::math::cyl_bessel_j_zero(nu, 1);
      CHECK(rel(specfun::bessel_first_zero(nu), ref) < 1e-12);
    }
  }
  SUBCASE("it is the first zero: J_nu has no sign change before it") {
    for (double nu : {0.0, 1.5, 10.0, 99.5, 250.0}) {
      const double j = specfun::bessel_first_zero(nu);
      double prev = specfun::bessel_j(nu, 1e-3 * j);
      for (int i = 2; i < 1000; ++i) {
        const double v = specfun::bessel_j(nu, 1e-3 * i * j);
        CHECK(v * prev >= 0.0);
        prev = v;
      }
    }
  }
  CHECK_THROWS(specfun::bessel_first_zero(-1.0));
}

TEST_CASE("incomplete beta and beta") {
  for (double u : {0.0, 0.1, 0.25, 0.5, 0.9, 1.0})
    CHECK(specfun::incomplete_beta(u, 0.5, 0.5) == doctest::Approx(2.0 * std::asin(std::sqrt(u))).epsilon(1e-14));
  // B(u; 1, 1) = u, B(u; 2, 1) = u^2/2
  CHECK(specfun::incomplete_beta(0.3, 1.0, 1.0) == doctest::Approx(0.3).epsilon(1e-15));
  CHECK(specfun::incomplete_beta(0.3, 2.0, 1.0) == doctest::Approx(0.045).epsilon(1e-15));
  CHECK(specfun::beta(0.5, 0.5) == doctest::Approx(kPi).epsilon(1e-15));
  CHECK(specfun::beta(3.0, 4.5) == doctest::Approx(std::exp(std::lgamma(3.0) + std::lgamma(4.5) - std::lgamma(7.5))).epsilon(1e-13));
}

TEST_CASE("log_sinh") {
  for (double x : {1e-8, 0.1, 1.0, 10.0, 19.9, 20.1, 35.0})
    CHECK(specfun::log_sinh(x) == doctest::Approx(std::log(std::sinh(x))).epsilon(1e-14));
  CHECK(specfun::log_sinh(1000.0) == doctest::Approx(1000.0 - std::log(2.0)).epsilon(1e-15));
  CHECK_THROWS(specfun::log_sinh(0.0));
}
