#include "packbounds/kernels.hpp"

namespace packbounds::kernels::scalar {

void gegenbauer_table(Recurrence rec, int degree, std::span<const double> t, std::span<double> out) {
  const std::size_t m = t.size();
  for (std::size_t i = 0; i < m; ++i) out[i] = 1.0;
  if (degree == 0) return;
  for (std::size_t i = 0; i < m; ++i) out[m + i] = t[i];
  for (int k = 1; k < degree; ++k) {
    const double up = rec.up[k];
    const double down = rec.down[k];
    const double* prev = out.data() + (k - 1) * m;
    const double* cur = out.data() + k * m;
    double* next = out.data() + (k + 1) * m;
    for (std::size_t i = 0; i < m; ++i) next[i] = up * t[i] * cur[i] - down * prev[i];
  }
}

void gegenbauer_series(Recurrence rec, std::span<const double> coeffs, std::span<const double> t,
                       std::span<double> out) {
  const std::size_t d = coeffs.size();
  for (std::size_t i = 0; i < t.size(); ++i) {
    if (d == 0) {
      out[i] = 0.0;
      continue;
    }
    const double x = t[i];
    double prev = 1.0;
    double cur = x;
    double acc = coeffs[0] * prev;
    if (d > 1) acc = acc + coeffs[1] * cur;
    for (std::size_t k = 1; k + 1 < d; ++k) {
      const double next = rec.up[k] * x * cur - rec.down[k] * prev;
      acc = acc + coeffs[k + 1] * next;
      prev = cur;
      cur = next;
    }
    out[i] = acc;
  }
}

std::size_t count_within(std::span<const double> cosh_rho, std::span<const double> sinh_rho,
                         std::span<const double> axis, double cosh_r, double sinh_r, double cosh_R) {
  std::size_t count = 0;
  for (std::size_t i = 0; i < cosh_rho.size(); ++i) {
    const double c = cosh_rho[i] * cosh_r - sinh_rho[i] * sinh_r * axis[i];
    count += c <= cosh_R ? 1 : 0;
  }
  return count;
}

}  // namespace packbounds::kernels::scalar
