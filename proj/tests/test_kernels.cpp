#include <doctest.h>

#include <cstring>
#include <random>
#include <vector>

#include "packbounds/kernels.hpp"
#include "packbounds/orthopoly.hpp"

using namespace packbounds;
using namespace packbounds::kernels;

namespace {
bool bit_equal(const std::vector<double>& a, const std::vector<double>& b) {
  return a.size() == b.size() && std::memcmp(a.data(), b.data(), a.size() * sizeof(double)) == 0;
}
}  // namespace

TEST_CASE("backend reporting") {
  CHECK(backend_available(Backend::scalar));
  CHECK(backend_name(Backend::scalar) == "scalar");
  CHECK(backend_name(Backend::avx2) == "avx2");
  MESSAGE("detected backend: " << backend_name(detected_backend()));
}

TEST_CASE("gegenbauer_table and series: AVX2 equals scalar bit for bit") {
  if (!backend_available(Backend::avx2)) {
    MESSAGE("AVX2 not available; equivalence skipped");
    return;
  }
  std::mt19937_64 rng(7);
  std::uniform_real_distribution<double> unit(-1.0, 1.0);
  for (int n : {2, 3, 8, 24, 121}) {
    GegenbauerContext ctx(n, 64);
    for (std::size_t m : {1u, 3u, 4u, 5u, 17u, 256u}) {
      std::vector<double> t(m);
      for (auto& v : t) v = unit(rng);
      const int degree = 40;
      std::vector<double> a((degree + 1) * m), b((degree + 1) * m);
      scalar::gegenbauer_table(ctx.recurrence(), degree, t, a);
      avx2::gegenbauer_table(ctx.recurrence(), degree, t, b);
      CHECK(bit_equal(a, b));

      std::vector<double> coeffs(degree + 1);
      for (auto& c : coeffs) c = unit(rng);
      std::vector<double> sa(m), sb(m);
      scalar::gegenbauer_series(ctx.recurrence(), coeffs, t, sa);
      avx2::gegenbauer_series(ctx.recurrence(), coeffs, t, sb);
      CHECK(bit_equal(sa, sb));
    }
  }
}

TEST_CASE("count_within: AVX2 equals scalar") {
  if (!backend_available(Backend::avx2)) return;
  std::mt19937_64 rng(11);
  std::uniform_real_distribution<double> unit(0.0, 1.0);
  for (std::size_t m : {1u, 7u, 1000u, 4099u}) {
    std::vector<double> ch(m), sh(m), ax(m);
    for (std::size_t i = 0; i < m; ++i) {
      const double rho = 5.0 * unit(rng);
      ch[i] = std::cosh(rho);
      sh[i] = std::sinh(rho);
      ax[i] = 2.0 * unit(rng) - 1.0;
    }
    CHECK(scalar::count_within(ch, sh, ax, std::cosh(1.0), std::sinh(1.0), std::cosh(5.0)) ==
          avx2::count_within(ch, sh, ax, std::cosh(1.0), std::sinh(1.0), std::cosh(5.0)));
  }
}

TEST_CASE("table matches the three-term recurrence and Chebyshev at n = 2") {
  GegenbauerContext ctx(2, 16);
  const std::vector<double> t{-0.9, -0.2, 0.0, 0.4, 1.0};
  std::vector<double> out(17 * t.size());
  gegenbauer_table(ctx.recurrence(), 16, t, out);
  for (int k = 0; k <= 16; ++k)
    for (std::size_t i = 0; i < t.size(); ++i)
      CHECK(out[k * t.size() + i] == doctest::Approx(std::cos(k * std::acos(t[i]))).epsilon(1e-13));
  CHECK_THROWS(gegenbauer_table(ctx.recurrence(), 16, t, std::span<double>(out.data(), 3)));
}
