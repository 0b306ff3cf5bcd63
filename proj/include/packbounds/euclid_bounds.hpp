#pragma once

#include <optional>
#include <string_view>
#include <vector>

#include "packbounds/log_scaled.hpp"
#include "packbounds/orthopoly.hpp"
#include "packbounds/quadrature.hpp"

namespace packbounds {

enum class Method { rogers, levenshtein, kl, cz, lp_transfer };

std::string_view method_id(Method m);
std::optional<Method> parse_method(std::string_view id);

struct BoundDiagnostics {
  /// Log-objective for k = 1, 2, ... as visited by the k-search.
  std::vector<double> objective_trace;
  /// Quadrature report (Rogers).
  double quadrature_error = 0.0;
  int evaluations = 0;
  double imaginary_ratio = 0.0;
  double truncation = 0.0;
};

/// One density bound Delta_{R^n} <= value.
struct BoundRecord {
  int dimension = 0;
  Method method = Method::rogers;
  LogScaled value;
  std::optional<int> k_star;
  std::optional<double> theta_star;
  BoundDiagnostics diagnostics;
};

/// Upper bound on A(n, theta). k_used == 0 means the degree-one bound
/// 1 - 1/cos(theta) (only for cos(theta) < 0) beat the KL formula.
struct CodeBound {
  LogScaled value;
  int k_used = 0;
};

struct RateResult {
  double theta_star = 0.0;
  double rate_log2 = 0.0;
};

/// Slack used when comparing Gegenbauer roots against cos(theta) or 1/2.
inline constexpr double kRootComparisonSlack = 1e-12;

/// Cohn-Elkies bound with eight forced double roots at n = 120, as quoted
/// for comparison with the table. Not computed here.
inline constexpr double kCohnElkiesEightRootsN120 = 1.164e-17;

BoundRecord rogers_bound(int n, const Quadrature& q = {});
BoundRecord levenshtein_bound(int n);

CodeBound kl_spherical_code_bound(int n, double theta);
CodeBound kl_spherical_code_bound(const GegenbauerContext& ctx, double theta);

/// ln of ((1-t_{n+1,k})/2)^{n/2} 4 C(k+n-1,k) / (1-t_{n+1,k+1}); ctx has dimension n+1.
double kl_log_objective(const GegenbauerContext& ctx_next, int k);
/// ln of ((1-t_{n,k})/2)^{n/2} 4 C(k+n-2,k) / (1-t_{n,k+1}); ctx has dimension n.
double cz_log_objective(const GegenbauerContext& ctx, int k);

/// Classical KL density bound: first local minimum over k.
BoundRecord kl_bound(int n);
/// Density bound from the same code bound without lifting a dimension:
/// minimum over k with t_{n,k} <= 1/2.
BoundRecord cz_bound(int n);

BoundRecord compute_bound(int n, Method m, const Quadrature& q = {});

/// Fraction of S^{n-1} covered by `count` caps of angular radius theta/2.
double cap_density(int n, double theta, double count, const Quadrature& q = {});

/// Per-dimension log2 exponent of sin^n(theta/2) times the asymptotic KL
/// code bound.
double asymptotic_rate_objective(double theta);
RateResult optimize_asymptotic_rate(double tol = 1e-9);

/// Best of the three classical bounds (rogers, levenshtein, kl); 4 <= n <= 800.
Method best_method(int n, const Quadrature& q = {});

/// Minimise a unimodal function on [lo, hi]; returns the argmin.
double golden_section_minimize(const std::function<double(double)>& f, double lo, double hi,
                               double tol);

}  // namespace packbounds
