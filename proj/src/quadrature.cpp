#include "packbounds/quadrature.hpp"

namespace packbounds {

double truncation_point(const std::function<double(double)>& log_abs, double start, double step,
                        double peak_log, double depth, int max_doublings) {
  if (!(step != 0.0)) throw std::invalid_argument("truncation_point: zero step");
  double offset = step;
  for (int j = 0; j < max_doublings; ++j) {
    const double x = start + offset;
    if (log_abs(x) < peak_log - depth) return x;
    offset *= 2.0;
  }
  throw NonConvergence("truncation_point", "integrand does not decay");
}

}  // namespace packbounds
