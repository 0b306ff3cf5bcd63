#pragma once

#include <functional>
#include <map>
#include <shared_mutex>
#include <span>
#include <vector>

#include "packbounds/kernels.hpp"
#include "packbounds/quadrature.hpp"

namespace packbounds {

/// Gegenbauer family C_k^alpha with alpha = n/2 - 1 for the sphere S^{n-1}
/// in R^n. For n = 2 (alpha = 0) the family is Chebyshev T_k, the alpha -> 0
/// limit of C_k^alpha / C_k^alpha(1).
///
/// Immutable apart from the memo table of largest roots, which is safe for
/// concurrent use. Not copyable; share by reference.
class GegenbauerContext {
 public:
  static constexpr int kDefaultDegreeCap = 20000;

  explicit GegenbauerContext(int n, int degree_cap = kDefaultDegreeCap);
  GegenbauerContext(const GegenbauerContext&) = delete;
  GegenbauerContext& operator=(const GegenbauerContext&) = delete;

  int dimension() const { return n_; }
  double alpha() const { return alpha_; }
  int degree_cap() const { return degree_cap_; }

  /// ln C_k^alpha(1) = ln( (2 alpha)_k / k! ); 0 for n = 2.
  double log_value_at_one(int k) const;
  /// Recurrence for the normalised polynomials P_k = C_k / C_k(1).
  kernels::Recurrence recurrence() const { return {up_, down_}; }

  /// Largest root t_{n,k}; t_{n,1} = 0. Cached.
  double largest_root(int k) const;

 private:
  int n_;
  double alpha_;
  int degree_cap_;
  std::vector<double> up_;
  std::vector<double> down_;
  std::vector<double> offdiag_sq_;  // squared Jacobi-matrix off-diagonals b_j^2, j >= 1

  mutable std::shared_mutex cache_mutex_;
  mutable std::map<int, double> root_cache_;

  double bisect_largest_eigenvalue(int k, double lo) const;
};

/// Polynomial in the Gegenbauer basis: g(t) = sum_k c_k C_k^alpha(t).
struct GegenbauerPoly {
  std::vector<double> coefficients;

  int degree() const { return static_cast<int>(coefficients.size()) - 1; }
  /// Coefficients in the normalised basis, x_k = c_k C_k(1).
  std::vector<double> normalized_coefficients(const GegenbauerContext& ctx) const;
  double operator()(const GegenbauerContext& ctx, double t) const;
  void evaluate(const GegenbauerContext& ctx, std::span<const double> t, std::span<double> out) const;
};

/// C_k^alpha(t) (T_k(t) for n = 2). Overflows to inf only when C_k(1) does.
double gegenbauer_eval(const GegenbauerContext& ctx, int k, double t);
/// C_k^alpha(t) / C_k^alpha(1).
double gegenbauer_eval_normalized(const GegenbauerContext& ctx, int k, double t);
double gegenbauer_largest_root(const GegenbauerContext& ctx, int k);

/// Expectation of g(<x,y>) for independent uniform x, y on S^{n-1}; for a
/// basis expansion this is c_0.
double mean_on_sphere(const GegenbauerContext& ctx, const GegenbauerPoly& g);
/// Same expectation by quadrature against (1-t^2)^{(n-3)/2}, written as
/// an integral over the angle so n = 2 has no endpoint singularity.
double mean_on_sphere(const GegenbauerContext& ctx, const std::function<double(double)>& g,
                      const Quadrature& q = {});

}  // namespace packbounds
