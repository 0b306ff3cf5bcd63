#pragma once

// Data-parallel inner loops. Each kernel has a scalar reference and an
// AVX2 variant; both perform the same operations in the same order per
// element, so results are bit-identical. The dispatcher picks AVX2 when
// the CPU reports it.

#include <cstddef>
#include <span>
#include <string_view>

namespace packbounds::kernels {

enum class Backend { scalar, avx2 };

/// Best backend available on this CPU (detected once).
Backend detected_backend();
bool backend_available(Backend b);
std::string_view backend_name(Backend b);

/// Recurrence coefficients for normalised Gegenbauer polynomials
/// P_k = C_k^alpha / C_k^alpha(1):
///   P_{k+1}(t) = up[k] * t * P_k(t) - down[k] * P_{k-1}(t).
/// alpha = 0 gives Chebyshev T_k.
struct Recurrence {
  std::span<const double> up;
  std::span<const double> down;
};

/// out[k * t.size() + i] = P_k(t[i]) for k = 0..degree.
/// out.size() must be (degree + 1) * t.size().
void gegenbauer_table(Recurrence rec, int degree, std::span<const double> t, std::span<double> out,
                      Backend b = detected_backend());

/// out[i] = sum_k coeffs[k] * P_k(t[i]) with coeffs in the normalised basis.
void gegenbauer_series(Recurrence rec, std::span<const double> coeffs, std::span<const double> t,
                       std::span<double> out, Backend b = detected_backend());

/// Number of i with cosh_rho[i]*cosh_r - sinh_rho[i]*sinh_r*axis[i] <= cosh_R,
/// i.e. hyperboloid points within distance R of a centre at distance r.
std::size_t count_within(std::span<const double> cosh_rho, std::span<const double> sinh_rho,
                         std::span<const double> axis, double cosh_r, double sinh_r, double cosh_R,
                         Backend b = detected_backend());

namespace scalar {
void gegenbauer_table(Recurrence rec, int degree, std::span<const double> t, std::span<double> out);
void gegenbauer_series(Recurrence rec, std::span<const double> coeffs, std::span<const double> t,
                       std::span<double> out);
std::size_t count_within(std::span<const double> cosh_rho, std::span<const double> sinh_rho,
                         std::span<const double> axis, double cosh_r, double sinh_r, double cosh_R);
}  // namespace scalar

namespace avx2 {
bool compiled();
void gegenbauer_table(Recurrence rec, int degree, std::span<const double> t, std::span<double> out);
void gegenbauer_series(Recurrence rec, std::span<const double> coeffs, std::span<const double> t,
                       std::span<double> out);
std::size_t count_within(std::span<const double> cosh_rho, std::span<const double> sinh_rho,
                         std::span<const double> axis, double cosh_r, double sinh_r, double cosh_R);
}  // namespace avx2

}  // namespace packbounds::kernels
