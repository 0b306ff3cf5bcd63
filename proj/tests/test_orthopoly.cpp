#include <doctest.h>

#include <cmath>

#include <boost/multiprecision/cpp_dec_float.hpp>

#include "packbounds/orthopoly.hpp"

using namespace packbounds;
using boost::multiprecision::cpp_dec_float_50;

namespace {

// C_k^alpha(t) by the unnormalised three-term recurrence in 50 digits.
cpp_dec_float_50 gegenbauer50(int n, int k, const cpp_dec_float_50& t) {
  const cpp_dec_float_50 alpha = cpp_dec_float_50(n) / 2 - 1;
  if (n == 2) {  // Chebyshev T_k
    cpp_dec_float_50 p0 = 1, p1 = t;
    if (k == 0) return p0;
    for (int j = 1; j < k; ++j) {
      cpp_dec_float_50 p2 = 2 * t * p1 - p0;
      p0 = p1;
      p1 = p2;
    }
    return p1;
  }
  cpp_dec_float_50 p0 = 1, p1 = 2 * alpha * t;
  if (k == 0) return p0;
  for (int j = 1; j < k; ++j) {
    cpp_dec_float_50 p2 = (2 * (j + alpha) * t * p1 - (j + 2 * alpha - 1) * p0) / (j + 1);
    p0 = p1;
    p1 = p2;
  }
  return p1;
}

// Largest root: scan down from 1 for the first sign change, then bisect.
double largest_root_oracle(int n, int k) {
  const int steps = 40 * k * k;
  cpp_dec_float_50 hi = 1;
  const cpp_dec_float_50 sign_at_one = gegenbauer50(n, k, hi);
  cpp_dec_float_50 lo = hi;
  for (int i = 1; i <= steps; ++i) {
    lo = 1 - cpp_dec_float_50(i) / steps;
    if (gegenbauer50(n, k, lo) * sign_at_one <= 0) break;
    hi = lo;
  }
  for (int it = 0; it < 120; ++it) {
    cpp_dec_float_50 mid = (lo + hi) / 2;
    if (gegenbauer50(n, k, mid) * sign_at_one > 0)
      hi = mid;
    else
      lo = mid;
  }
  return static_cast<double>((lo + hi) / 2);
}

const double kPi = 3.14159265358979323846;

}  // namespace

TEST_CASE("closed-form largest roots") {
  GegenbauerContext c4(4), c3(3), c2(2);
  CHECK(c4.largest_root(1) == 0.0);
  CHECK(c4.largest_root(2) == doctest::Approx(0.5).epsilon(1e-15));
  CHECK(c4.largest_root(3) == doctest::Approx(1.0 / std::sqrt(2.0)).epsilon(1e-15));
  CHECK(c3.largest_root(2) == doctest::Approx(1.0 / std::sqrt(3.0)).epsilon(1e-15));
  CHECK(c3.largest_root(3) == doctest::Approx(std::sqrt(3.0 / 5.0)).epsilon(1e-15));
  for (int k = 1; k <= 30; ++k) CHECK(c2.largest_root(k) == doctest::Approx(std::cos(kPi / (2 * k))).epsilon(1e-14));
}

TEST_CASE("largest roots agree with a 50-digit polynomial bisection") {
  for (int n : {3, 5, 8, 13, 24, 61, 121})
    for (int k : {2, 3, 5, 9, 17, 30}) {
      GegenbauerContext ctx(n);
      CHECK(std::abs(ctx.largest_root(k) - largest_root_oracle(n, k)) < 2e-15);
    }
}

TEST_CASE("roots interlace and are cached consistently") {
  GegenbauerContext ctx(601);
  double prev = ctx.largest_root(1);
  for (int k = 2; k <= 60; ++k) {
    const double t = ctx.largest_root(k);
    CHECK(t > prev);
    CHECK(t < 1.0);
    prev = t;
  }
  GegenbauerContext fresh(601);
  CHECK(fresh.largest_root(37) == ctx.largest_root(37));
  CHECK_THROWS(ctx.largest_root(0));
  CHECK_THROWS(GegenbauerContext(1));
  GegenbauerContext small(5, 10);
  CHECK_THROWS_AS(small.largest_root(11), std::out_of_range);
}

TEST_CASE("evaluation against the unnormalised recurrence") {
  for (int n : {2, 3, 7, 20})
    for (int k : {0, 1, 2, 5, 12})
      for (double t : {-1.0, -0.3, 0.0, 0.55, 1.0}) {
        GegenbauerContext ctx(n);
        const double ref = static_cast<double>(gegenbauer50(n, k, cpp_dec_float_50(t)));
        CHECK(gegenbauer_eval(ctx, k, t) == doctest::Approx(ref).epsilon(1e-12).scale(1.0));
        CHECK(gegenbauer_eval_normalized(ctx, k, 1.0) == doctest::Approx(1.0).epsilon(1e-14));
      }
  // C_k^alpha(1) = (2 alpha)_k / k!
  GegenbauerContext c6(6);
  CHECK(std::exp(c6.log_value_at_one(3)) == doctest::Approx(4.0 * 5.0 * 6.0 / 6.0).epsilon(1e-14));
}

TEST_CASE("polynomials and means on the sphere") {
  GegenbauerContext ctx(3);
  // t + t^2 = (1/3) P_0 + P_1 + (2/3) P_2 (Legendre)
  GegenbauerPoly g{{1.0 / 3.0, 1.0, 2.0 / 3.0}};
  for (double t : {-1.0, -0.5, 0.0, 0.7, 1.0}) CHECK(g(ctx, t) == doctest::Approx(t + t * t).epsilon(1e-14).scale(1.0));
  CHECK(mean_on_sphere(ctx, g) == doctest::Approx(1.0 / 3.0));
  CHECK(mean_on_sphere(ctx, [](double t) { return t + t * t; }) == doctest::Approx(1.0 / 3.0).epsilon(1e-12));
  for (int n : {2, 4, 9}) {
    GegenbauerContext c(n);
    GegenbauerPoly h{{0.7, 0.2, 0.0, 1.5, 0.3}};
    CHECK(mean_on_sphere(c, [&](double t) { return h(c, t); }) == doctest::Approx(0.7).epsilon(1e-11));
  }
}
