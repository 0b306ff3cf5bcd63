#include "packbounds/orthopoly.hpp"

#include <cmath>
#include <mutex>
#include <stdexcept>
#include <string>

#include "packbounds/specfun.hpp"

namespace packbounds {

namespace {
constexpr double kPi = 3.14159265358979323846;

void check_degree(const GegenbauerContext& ctx, int k) {
  if (k < 0 || k > ctx.degree_cap())
    throw std::out_of_range("Gegenbauer degree " + std::to_string(k) + " outside [0, " +
                            std::to_string(ctx.degree_cap()) + "]");
}
}  // namespace

GegenbauerContext::GegenbauerContext(int n, int degree_cap)
    : n_(n), alpha_(0.5 * n - 1.0), degree_cap_(degree_cap) {
  if (n < 2) throw std::domain_error("GegenbauerContext: requires n >= 2");
  if (degree_cap < 1) throw std::domain_error("GegenbauerContext: degree cap must be positive");
  up_.assign(static_cast<std::size_t>(degree_cap) + 1, 0.0);
  down_.assign(static_cast<std::size_t>(degree_cap) + 1, 0.0);
  offdiag_sq_.assign(static_cast<std::size_t>(degree_cap) + 1, 0.0);
  for (int k = 1; k <= degree_cap; ++k) {
    up_[k] = 2.0 * (k + alpha_) / (k + 2.0 * alpha_);
    down_[k] = k / (k + 2.0 * alpha_);
  }
  for (int j = 1; j <= degree_cap; ++j) {
    if (n == 2) {
      offdiag_sq_[j] = j == 1 ? 0.5 : 0.25;
    } else {
      offdiag_sq_[j] = j * (j + 2.0 * alpha_ - 1.0) / (4.0 * (j + alpha_) * (j + alpha_ - 1.0));
    }
  }
}

double GegenbauerContext::log_value_at_one(int k) const {
  check_degree(*this, k);
  if (n_ == 2 || k == 0) return 0.0;
  // (2 alpha)_k / k! = Gamma(k + 2 alpha) / (Gamma(2 alpha) k!)
  return specfun::log_gamma(k + 2.0 * alpha_) - specfun::log_gamma(2.0 * alpha_) -
         specfun::log_gamma(k + 1.0);
}

double GegenbauerContext::bisect_largest_eigenvalue(int k, double lo) const {
  // Sturm count of eigenvalues below x for the k x k Jacobi matrix with zero
  // diagonal; the largest eigenvalue is the infimum of x with count == k.
  auto count_below = [&](double x) {
    int count = 0;
    double d = -x;
    if (d < 0.0) ++count;
    for (int i = 1; i < k; ++i) {
      double prev = d;
      if (prev == 0.0) prev = -1e-300;
      d = -x - offdiag_sq_[i] / prev;
      if (d < 0.0) ++count;
    }
    return count;
  };
  double hi = 1.0;
  for (int it = 0; it < 200; ++it) {
    const double mid = 0.5 * (lo + hi);
    if (!(mid > lo && mid < hi)) break;
    if (count_below(mid) == k)
      hi = mid;
    else
      lo = mid;
  }
  return 0.5 * (lo + hi);
}

double GegenbauerContext::largest_root(int k) const {
  if (k < 1) throw std::domain_error("largest_root: requires k >= 1");
  check_degree(*this, k);
  if (k == 1) return 0.0;
  {
    std::shared_lock lock(cache_mutex_);
    auto it = root_cache_.find(k);
    if (it != root_cache_.end()) return it->second;
  }
  // Interlacing: t_{k-1} < t_k < 1. Use the nearest cached lower degree.
  double lo = 0.0;
  {
    std::shared_lock lock(cache_mutex_);
    auto it = root_cache_.lower_bound(k);
    if (it != root_cache_.begin()) lo = std::prev(it)->second;
  }
  const double root = bisect_largest_eigenvalue(k, lo);
  std::unique_lock lock(cache_mutex_);
  root_cache_.emplace(k, root);
  return root;
}

double gegenbauer_eval_normalized(const GegenbauerContext& ctx, int k, double t) {
  check_degree(ctx, k);
  if (k == 0) return 1.0;
  const auto rec = ctx.recurrence();
  double prev = 1.0;
  double cur = t;
  for (int j = 1; j < k; ++j) {
    const double next = rec.up[j] * t * cur - rec.down[j] * prev;
    prev = cur;
    cur = next;
  }
  return cur;
}

double gegenbauer_eval(const GegenbauerContext& ctx, int k, double t) {
  const double p = gegenbauer_eval_normalized(ctx, k, t);
  if (ctx.dimension() == 2 || k == 0) return p;
  return p * std::exp(ctx.log_value_at_one(k));
}

double gegenbauer_largest_root(const GegenbauerContext& ctx, int k) { return ctx.largest_root(k); }

std::vector<double> GegenbauerPoly::normalized_coefficients(const GegenbauerContext& ctx) const {
  std::vector<double> x(coefficients.size());
  for (std::size_t k = 0; k < coefficients.size(); ++k)
    x[k] = coefficients[k] * std::exp(ctx.log_value_at_one(static_cast<int>(k)));
  return x;
}

double GegenbauerPoly::operator()(const GegenbauerContext& ctx, double t) const {
  double out = 0.0;
  evaluate(ctx, std::span<const double>(&t, 1), std::span<double>(&out, 1));
  return out;
}

void GegenbauerPoly::evaluate(const GegenbauerContext& ctx, std::span<const double> t,
                              std::span<double> out) const {
  if (degree() > ctx.degree_cap()) throw std::out_of_range("GegenbauerPoly: degree above cap");
  const auto x = normalized_coefficients(ctx);
  kernels::gegenbauer_series(ctx.recurrence(), x, t, out);
}

double mean_on_sphere(const GegenbauerContext&, const GegenbauerPoly& g) {
  return g.coefficients.empty() ? 0.0 : g.coefficients.front();
}

double mean_on_sphere(const GegenbauerContext& ctx, const std::function<double(double)>& g,
                      const Quadrature& q) {
  const int n = ctx.dimension();
  // t = cos(phi): (1-t^2)^{(n-3)/2} dt = sin^{n-2}(phi) dphi
  auto weighted = [&](double phi) { return g(std::cos(phi)) * std::pow(std::sin(phi), n - 2); };
  const double half_pi = 0.5 * kPi;
  const double breaks[] = {half_pi};
  const auto num = integrate_or_throw("mean_on_sphere", weighted, 0.0, kPi, q, breaks);
  // int_0^pi sin^{n-2} = B(1/2, (n-1)/2)
  const double den = specfun::beta(0.5, 0.5 * (n - 1));
  return num.estimate / den;
}

}  // namespace packbounds
