#include "packbounds/kernels.hpp"

#include <stdexcept>

namespace packbounds::kernels {

namespace {

bool cpu_has_avx2() {
#if defined(__x86_64__) || defined(__i386__)
  __builtin_cpu_init();
  return __builtin_cpu_supports("avx2");
#else
  return false;
#endif
}

void check_table_shape(int degree, std::size_t points, std::size_t out_size, Recurrence rec) {
  if (degree < 0) throw std::invalid_argument("gegenbauer_table: negative degree");
  if (out_size != static_cast<std::size_t>(degree + 1) * points)
    throw std::invalid_argument("gegenbauer_table: output size mismatch");
  if (degree > 0 && rec.up.size() < static_cast<std::size_t>(degree))
    throw std::invalid_argument("gegenbauer_table: recurrence too short");
}

}  // namespace

Backend detected_backend() {
  static const Backend b = (avx2::compiled() && cpu_has_avx2()) ? Backend::avx2 : Backend::scalar;
  return b;
}

bool backend_available(Backend b) {
  return b == Backend::scalar || (avx2::compiled() && cpu_has_avx2());
}

std::string_view backend_name(Backend b) { return b == Backend::avx2 ? "avx2" : "scalar"; }

void gegenbauer_table(Recurrence rec, int degree, std::span<const double> t, std::span<double> out,
                      Backend b) {
  check_table_shape(degree, t.size(), out.size(), rec);
  if (b == Backend::avx2 && backend_available(b))
    avx2::gegenbauer_table(rec, degree, t, out);
  else
    scalar::gegenbauer_table(rec, degree, t, out);
}

void gegenbauer_series(Recurrence rec, std::span<const double> coeffs, std::span<const double> t,
                       std::span<double> out, Backend b) {
  if (out.size() != t.size()) throw std::invalid_argument("gegenbauer_series: output size mismatch");
  if (coeffs.size() > 1 && rec.up.size() + 1 < coeffs.size())
    throw std::invalid_argument("gegenbauer_series: recurrence too short");
  if (b == Backend::avx2 && backend_available(b))
    avx2::gegenbauer_series(rec, coeffs, t, out);
  else
    scalar::gegenbauer_series(rec, coeffs, t, out);
}

std::size_t count_within(std::span<const double> cosh_rho, std::span<const double> sinh_rho,
                         std::span<const double> axis, double cosh_r, double sinh_r, double cosh_R,
                         Backend b) {
  if (sinh_rho.size() != cosh_rho.size() || axis.size() != cosh_rho.size())
    throw std::invalid_argument("count_within: length mismatch");
  if (b == Backend::avx2 && backend_available(b))
    return avx2::count_within(cosh_rho, sinh_rho, axis, cosh_r, sinh_r, cosh_R);
  return scalar::count_within(cosh_rho, sinh_rho, axis, cosh_r, sinh_r, cosh_R);
}

}  // namespace packbounds::kernels
