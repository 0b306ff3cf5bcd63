#pragma once

#include <string>
#include <vector>

#include "packbounds/log_scaled.hpp"
#include "packbounds/quadrature.hpp"

namespace packbounds {

/// Delsarte LP for codes on S^{n-1} with minimal angle theta: find
/// g = sum_k c_k C_k with c_0 = 1, c_k >= 0 and g <= 0 on [-1, cos theta],
/// minimising g(1).
struct LPProblem {
  int n = 3;
  double theta = 0.0;
  int degree = 1;
  /// Points of [-1, cos theta] where g <= 0 is imposed; both ends included.
  std::vector<double> constraint_grid;
};

inline constexpr int kMaxLPDegree = 200;
inline constexpr int kMaxLPGrid = 4000;

/// `points` Chebyshev extrema mapped to [lo, hi], endpoints included.
std::vector<double> chebyshev_grid(double lo, double hi, int points);

/// Problem with the default grid of 8 * degree Chebyshev extrema
/// (a single point when theta = pi).
LPProblem make_lp_problem(int n, double theta, int degree);

struct LPCertificate {
  int n = 0;
  double theta = 0.0;
  int degree = 0;
  /// c_0..c_d in the Gegenbauer basis C_k^{n/2-1} (Chebyshev T_k for n = 2).
  std::vector<double> coefficients;
  /// g(1) / c_0.
  double objective = 0.0;
  /// max of g over the verification points of [-1, cos theta].
  double max_sign_residual = 0.0;
  int verification_grid_size = 0;
  bool certified = false;
  /// Re-solves after adding violated points to the grid.
  int exchange_rounds = 0;
  /// Whether the final g was shifted down by a constant to clear a residual violation.
  bool shifted = false;
};

struct VerificationReport {
  /// Most negative c_k / c_0 for k >= 1 (0 if none is negative).
  double worst_coefficient = 0.0;
  int worst_coefficient_index = -1;
  bool coefficients_ok = false;
  double max_residual = 0.0;
  double worst_t = -1.0;
  int grid_size = 0;
  double objective = 0.0;
  bool certified = false;
  /// Interior local maxima of g found on the dense grid and refined.
  std::vector<double> local_maxima;
};

/// Independent check: coefficient signs, g on a dense uniform grid of
/// `points` nodes of [-1, cos theta] (default 10x the problem grid) and
/// golden-section polish of each interior local maximum.
VerificationReport verify_certificate(const LPCertificate& cert, const LPProblem& p, int points = 0);

/// One simplex solve on p.constraint_grid, verified but not repaired.
LPCertificate lp_solve_on_grid(const LPProblem& p);

/// Solve, verify, add violated points and re-solve (up to 3 rounds),
/// then shift away any residual violation. The objective is a bound on
/// A(n, theta) only when `certified` is set. Throws std::domain_error when
/// the degree is too low for a feasible g.
LPCertificate lp_solve_spherical(const LPProblem& p);

/// sin^n(theta/2) * objective, a bound on the packing density of R^n.
/// Requires theta >= pi/3 and a certified certificate.
LogScaled euclid_bound_from_certificate(const LPCertificate& cert, const LPProblem& p);

struct TransferProbe {
  int n = 0;
  double theta = 0.0;
  double R = 0.0;
  std::vector<double> sample_radii;
  std::vector<double> f_values;
  double f_at_zero = 0.0;
  double integral_f = 0.0;
};

/// {0, 0.5, 1, 1.5, 2, 2+eps, R, 2R-eps, 2R, 3R} with R = 1/sin(theta/2).
std::vector<double> default_sample_radii(double theta);

/// f(|x-y|) = int over B_R(x) cap B_R(y) of g(cos of the angle xzy) dz,
/// reduced to (|x-z|, polar angle at x). Also f(0) and the integral of f
/// over R^n. 2 <= n <= 8.
TransferProbe transfer_g_to_f(const LPCertificate& cert, const LPProblem& p,
                              const std::vector<double>& radii, const Quadrature& q = {});

/// {"n", "theta", "degree", "coefficients", "objective", "residual", "certified"};
/// doubles round-trip bit-exactly.
std::string certificate_to_json(const LPCertificate& cert);
LPCertificate certificate_from_json(const std::string& text);

}  // namespace packbounds
