#include "packbounds/kernels.hpp"

#if defined(__x86_64__) || defined(__i386__)
#include <immintrin.h>
#define PACKBOUNDS_HAVE_AVX2_KERNELS 1
#define PACKBOUNDS_AVX2 __attribute__((target("avx2")))
#else
#define PACKBOUNDS_HAVE_AVX2_KERNELS 0
#endif

namespace packbounds::kernels::avx2 {

#if PACKBOUNDS_HAVE_AVX2_KERNELS

bool compiled() { return true; }

PACKBOUNDS_AVX2 void gegenbauer_table(Recurrence rec, int degree, std::span<const double> t,
                                      std::span<double> out) {
  const std::size_t m = t.size();
  const std::size_t vec_end = m - m % 4;
  const __m256d one = _mm256_set1_pd(1.0);
  for (std::size_t i = 0; i < vec_end; i += 4) _mm256_storeu_pd(out.data() + i, one);
  for (std::size_t i = vec_end; i < m; ++i) out[i] = 1.0;
  if (degree == 0) return;
  for (std::size_t i = 0; i < m; ++i) out[m + i] = t[i];
  for (int k = 1; k < degree; ++k) {
    const double up = rec.up[k];
    const double down = rec.down[k];
    const __m256d vup = _mm256_set1_pd(up);
    const __m256d vdown = _mm256_set1_pd(down);
    const double* prev = out.data() + (k - 1) * m;
    const double* cur = out.data() + k * m;
    double* next = out.data() + (k + 1) * m;
    std::size_t i = 0;
    for (; i < vec_end; i += 4) {
      const __m256d x = _mm256_loadu_pd(t.data() + i);
      const __m256d c = _mm256_loadu_pd(cur + i);
      const __m256d p = _mm256_loadu_pd(prev + i);
      const __m256d lhs = _mm256_mul_pd(_mm256_mul_pd(vup, x), c);
      _mm256_storeu_pd(next + i, _mm256_sub_pd(lhs, _mm256_mul_pd(vdown, p)));
    }
    for (; i < m; ++i) next[i] = up * t[i] * cur[i] - down * prev[i];
  }
}

PACKBOUNDS_AVX2 void gegenbauer_series(Recurrence rec, std::span<const double> coeffs,
                                       std::span<const double> t, std::span<double> out) {
  const std::size_t d = coeffs.size();
  const std::size_t m = t.size();
  const std::size_t vec_end = m - m % 4;
  std::size_t i = 0;
  if (d >= 2) {
    for (; i < vec_end; i += 4) {
      const __m256d x = _mm256_loadu_pd(t.data() + i);
      __m256d prev = _mm256_set1_pd(1.0);
      __m256d cur = x;
      __m256d acc = _mm256_mul_pd(_mm256_set1_pd(coeffs[0]), prev);
      acc = _mm256_add_pd(acc, _mm256_mul_pd(_mm256_set1_pd(coeffs[1]), cur));
      for (std::size_t k = 1; k + 1 < d; ++k) {
        const __m256d lhs = _mm256_mul_pd(_mm256_mul_pd(_mm256_set1_pd(rec.up[k]), x), cur);
        const __m256d next = _mm256_sub_pd(lhs, _mm256_mul_pd(_mm256_set1_pd(rec.down[k]), prev));
        acc = _mm256_add_pd(acc, _mm256_mul_pd(_mm256_set1_pd(coeffs[k + 1]), next));
        prev = cur;
        cur = next;
      }
      _mm256_storeu_pd(out.data() + i, acc);
    }
  }
  if (i < m) scalar::gegenbauer_series(rec, coeffs, t.subspan(i), out.subspan(i));
}

PACKBOUNDS_AVX2 std::size_t count_within(std::span<const double> cosh_rho,
                                         std::span<const double> sinh_rho,
                                         std::span<const double> axis, double cosh_r,
                                         double sinh_r, double cosh_R) {
  const std::size_t m = cosh_rho.size();
  const std::size_t vec_end = m - m % 4;
  const __m256d vcr = _mm256_set1_pd(cosh_r);
  const __m256d vsr = _mm256_set1_pd(sinh_r);
  const __m256d vlimit = _mm256_set1_pd(cosh_R);
  std::size_t count = 0;
  std::size_t i = 0;
  for (; i < vec_end; i += 4) {
    const __m256d ch = _mm256_loadu_pd(cosh_rho.data() + i);
    const __m256d sh = _mm256_loadu_pd(sinh_rho.data() + i);
    const __m256d ax = _mm256_loadu_pd(axis.data() + i);
    const __m256d c = _mm256_sub_pd(_mm256_mul_pd(ch, vcr), _mm256_mul_pd(_mm256_mul_pd(sh, vsr), ax));
    const int mask = _mm256_movemask_pd(_mm256_cmp_pd(c, vlimit, _CMP_LE_OQ));
    count += static_cast<std::size_t>(__builtin_popcount(mask));
  }
  if (i < m)
    count += scalar::count_within(cosh_rho.subspan(i), sinh_rho.subspan(i), axis.subspan(i), cosh_r,
                                  sinh_r, cosh_R);
  return count;
}

#else

bool compiled() { return false; }
void gegenbauer_table(Recurrence rec, int degree, std::span<const double> t, std::span<double> out) {
  scalar::gegenbauer_table(rec, degree, t, out);
}
void gegenbauer_series(Recurrence rec, std::span<const double> coeffs, std::span<const double> t,
                       std::span<double> out) {
  scalar::gegenbauer_series(rec, coeffs, t, out);
}
std::size_t count_within(std::span<const double> cosh_rho, std::span<const double> sinh_rho,
                         std::span<const double> axis, double cosh_r, double sinh_r, double cosh_R) {
  return scalar::count_within(cosh_rho, sinh_rho, axis, cosh_r, sinh_r, cosh_R);
}

#endif

}  // namespace packbounds::kernels::avx2
