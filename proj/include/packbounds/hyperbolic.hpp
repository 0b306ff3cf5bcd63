#pragma once

#include <cstdint>
#include <optional>
#include <utility>
#include <vector>

#include "packbounds/euclid_bounds.hpp"
#include "packbounds/log_scaled.hpp"
#include "packbounds/quadrature.hpp"

namespace packbounds {

/// Area of the unit sphere S^{m-1} in R^m, 2 pi^{m/2} / Gamma(m/2), as a log.
double log_sphere_area(int m);

/// Volume of a radius-r ball in H^n, Omega_n int_0^r sinh^{n-1}.
/// 2 <= n <= 200, 0 < r <= 50.
LogScaled hyp_ball_volume(int n, double r, const Quadrature& q = {});

/// R with sinh R = sinh r / sin(theta/2). For theta >= pi/3 also checks r <= R <= 2r.
double radius_from_angle(double r, double theta);

/// Bound on the packing density of radius-r balls in H^n at angle theta in
/// [pi/3, pi]: sin^{n-1}(theta/2) A, or (vol B_r / vol B_R) A when refined.
/// A is the KL code bound unless `code_bound` supplies another (e.g. a
/// certified LP objective); the record's method is then lp_transfer.
BoundRecord hyp_density_bound(int n, double r, double theta, bool refined,
                              std::optional<LogScaled> code_bound = std::nullopt,
                              const Quadrature& q = {});

/// Minimum of hyp_density_bound over theta in [pi/3, pi]; theta_star and
/// the k used are recorded.
BoundRecord hyp_bound_optimized(int n, double r, bool refined = false, const Quadrature& q = {});

/// Limit as R -> infinity of vol(B_R(x1) cap B_R(x2)) / vol(B_R) with d(x1, x2) = r.
double overlap_limit(int n, double r);

/// The same ratio at finite R, by the two-radius convolution integral.
double overlap_finite(int n, double r, double R, const Quadrature& q = {});

struct MonteCarloEstimate {
  double mean = 0.0;
  double standard_error = 0.0;
  std::int64_t samples = 0;
};

/// Fraction of uniform points of B_R(x1) that lie in B_R(x2), d(x1, x2) = r.
/// n in {2, 3, 4}; reproducible for a fixed seed regardless of thread count.
MonteCarloEstimate overlap_monte_carlo(int n, double r, double R, std::int64_t samples,
                                       std::uint64_t seed = 20240601, int threads = 0);

struct OverlapResult {
  int n = 0;
  double r = 0.0;
  double limit_value = 0.0;
  std::vector<std::pair<double, double>> finite_R_values;
  std::optional<MonteCarloEstimate> mc_estimate;
};

/// Limit plus finite-R values; Monte-Carlo at the largest R when mc_samples > 0.
OverlapResult overlap_report(int n, double r, const std::vector<double>& radii,
                             std::int64_t mc_samples = 0, std::uint64_t seed = 20240601,
                             const Quadrature& q = {});

}  // namespace packbounds
