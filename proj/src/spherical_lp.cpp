#include "packbounds/spherical_lp.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <string>

#include <json.hpp>

#include "packbounds/euclid_bounds.hpp"
#include "packbounds/errors.hpp"
#include "packbounds/kernels.hpp"
#include "packbounds/orthopoly.hpp"
#include "packbounds/simplex.hpp"
#include "packbounds/specfun.hpp"

namespace packbounds {

namespace {

constexpr double kPi = 3.14159265358979323846;
constexpr double kResidualTol = 1e-9;
constexpr double kCoefficientTol = 1e-12;
constexpr int kExchangeRounds = 3;

void check_problem(const LPProblem& p) {
  if (p.n < 2) throw std::domain_error("LPProblem: requires n >= 2");
  if (!(p.theta > 0.0 && p.theta <= kPi)) throw std::domain_error("LPProblem: theta outside (0, pi]");
  if (p.degree < 1 || p.degree > kMaxLPDegree)
    throw std::domain_error("LPProblem: degree outside [1, " + std::to_string(kMaxLPDegree) + "]");
  if (p.constraint_grid.empty() || static_cast<int>(p.constraint_grid.size()) > kMaxLPGrid)
    throw std::domain_error("LPProblem: grid size outside [1, " + std::to_string(kMaxLPGrid) + "]");
  const double hi = std::cos(p.theta);
  for (double t : p.constraint_grid)
    if (!(t >= -1.0 && t <= hi)) throw std::domain_error("LPProblem: grid point outside [-1, cos theta]");
}

/// g in the normalised basis, x_k = c_k C_k(1).
struct SeriesEvaluator {
  const GegenbauerContext& ctx;
  std::vector<double> x;

  SeriesEvaluator(const GegenbauerContext& c, const std::vector<double>& coefficients) : ctx(c) {
    x.resize(coefficients.size());
    for (std::size_t k = 0; k < x.size(); ++k)
      x[k] = coefficients[k] * std::exp(ctx.log_value_at_one(static_cast<int>(k)));
  }
  double operator()(double t) const {
    double out = 0.0;
    kernels::gegenbauer_series(ctx.recurrence(), x, std::span<const double>(&t, 1),
                               std::span<double>(&out, 1));
    return out;
  }
  double at_one() const {
    double s = 0.0;
    for (double v : x) s += v;
    return s;
  }
};

double golden_maximize(const SeriesEvaluator& g, double lo, double hi, double& best_t) {
  best_t = golden_section_minimize([&](double t) { return -g(t); }, lo, hi, 1e-14);
  return g(best_t);
}

}  // namespace

std::vector<double> chebyshev_grid(double lo, double hi, int points) {
  if (points < 1) throw std::domain_error("chebyshev_grid: requires points >= 1");
  if (points == 1 || lo == hi) return {lo};
  std::vector<double> t(points);
  const double mid = 0.5 * (lo + hi);
  const double half = 0.5 * (hi - lo);
  for (int j = 0; j < points; ++j) t[j] = mid - half * std::cos(kPi * j / (points - 1));
  t.front() = lo;
  t.back() = hi;
  return t;
}

LPProblem make_lp_problem(int n, double theta, int degree) {
  if (!(theta > 0.0 && theta <= kPi)) throw std::domain_error("make_lp_problem: theta outside (0, pi]");
  LPProblem p;
  p.n = n;
  p.theta = theta;
  p.degree = degree;
  const double hi = theta == kPi ? -1.0 : std::cos(theta);
  p.constraint_grid = chebyshev_grid(-1.0, hi, std::clamp(8 * degree, 2, kMaxLPGrid));
  check_problem(p);
  return p;
}

VerificationReport verify_certificate(const LPCertificate& cert, const LPProblem& p, int points) {
  VerificationReport rep;
  if (cert.coefficients.empty() || cert.n < 2) return rep;
  const double c0 = cert.coefficients.front();
  rep.coefficients_ok = c0 > 0.0;
  for (std::size_t k = 1; k < cert.coefficients.size(); ++k) {
    const double rel = c0 > 0.0 ? cert.coefficients[k] / c0 : cert.coefficients[k];
    if (rel < rep.worst_coefficient) {
      rep.worst_coefficient = rel;
      rep.worst_coefficient_index = static_cast<int>(k);
    }
  }
  if (rep.worst_coefficient < -kCoefficientTol) rep.coefficients_ok = false;

  GegenbauerContext ctx(cert.n, std::max<int>(1, static_cast<int>(cert.coefficients.size())));
  SeriesEvaluator g(ctx, cert.coefficients);
  rep.objective = c0 > 0.0 ? g.at_one() / c0 : 0.0;

  const double lo = -1.0;
  const double hi = std::max(lo, std::cos(p.theta));
  if (points <= 0) points = 10 * static_cast<int>(std::max<std::size_t>(p.constraint_grid.size(), 1));
  if (hi == lo) points = 1;
  rep.grid_size = points;
  std::vector<double> t(points);
  for (int j = 0; j < points; ++j) t[j] = points == 1 ? lo : lo + (hi - lo) * j / (points - 1);
  if (points > 1) t.back() = hi;
  std::vector<double> values(points);
  kernels::gegenbauer_series(ctx.recurrence(), g.x, t, values);

  auto consider = [&](double tt, double v) {
    if (v > rep.max_residual) {
      rep.max_residual = v;
      rep.worst_t = tt;
    }
  };
  rep.max_residual = values[0];
  rep.worst_t = t[0];
  for (int j = 1; j < points; ++j) consider(t[j], values[j]);
  for (int j = 1; j + 1 < points; ++j) {
    if (values[j] >= values[j - 1] && values[j] >= values[j + 1]) {
      double best_t = t[j];
      const double v = golden_maximize(g, t[j - 1], t[j + 1], best_t);
      rep.local_maxima.push_back(best_t);
      consider(best_t, std::max(v, values[j]));
    }
  }
  if (c0 > 0.0) rep.max_residual /= c0;
  rep.certified = rep.coefficients_ok && rep.max_residual <= kResidualTol * rep.objective;
  return rep;
}

namespace {

LPCertificate solve_grid(const LPProblem& p, const GegenbauerContext& ctx) {
  const int d = p.degree;
  const int m = static_cast<int>(p.constraint_grid.size());
  std::vector<double> table(static_cast<std::size_t>(d + 1) * m);
  kernels::gegenbauer_table(ctx.recurrence(), d, p.constraint_grid, table);

  // Dual of  min sum x_k  s.t.  sum_k x_k P_k(t_i) <= -1,  x >= 0:
  //   max sum y_i  s.t.  sum_i -P_k(t_i) y_i <= 1,  y >= 0.
  std::vector<double> a(static_cast<std::size_t>(d) * m);
  for (int k = 1; k <= d; ++k)
    for (int i = 0; i < m; ++i)
      a[static_cast<std::size_t>(k - 1) * m + i] = -table[static_cast<std::size_t>(k) * m + i];
  const std::vector<double> b(d, 1.0);
  const std::vector<double> c(m, 1.0);
  const auto sol = simplex_maximize(a, d, m, b, c);
  if (sol.status == SimplexStatus::unbounded)
    throw std::domain_error("lp_solve_spherical: no feasible g of degree " + std::to_string(d) +
                            " at theta = " + std::to_string(p.theta));
  if (sol.status != SimplexStatus::optimal)
    throw NonConvergence("lp_solve_spherical", "simplex pivot limit reached");

  LPCertificate cert;
  cert.n = p.n;
  cert.theta = p.theta;
  cert.degree = d;
  cert.coefficients.assign(d + 1, 0.0);
  cert.coefficients[0] = 1.0;
  for (int k = 1; k <= d; ++k) {
    const double x = std::max(0.0, sol.row_duals[k - 1]);
    cert.coefficients[k] = x * std::exp(-ctx.log_value_at_one(k));
  }
  return cert;
}

void apply_report(LPCertificate& cert, const VerificationReport& rep) {
  cert.objective = rep.objective;
  cert.max_sign_residual = rep.max_residual;
  cert.verification_grid_size = rep.grid_size;
  cert.certified = rep.certified;
}

}  // namespace

LPCertificate lp_solve_on_grid(const LPProblem& p) {
  check_problem(p);
  GegenbauerContext ctx(p.n, p.degree);
  auto cert = solve_grid(p, ctx);
  apply_report(cert, verify_certificate(cert, p));
  return cert;
}

LPCertificate lp_solve_spherical(const LPProblem& p) {
  check_problem(p);
  GegenbauerContext ctx(p.n, p.degree);
  LPProblem work = p;
  LPCertificate cert;
  VerificationReport rep;
  for (int round = 0;; ++round) {
    cert = solve_grid(work, ctx);
    rep = verify_certificate(cert, p, 10 * static_cast<int>(p.constraint_grid.size()));
    cert.exchange_rounds = round;
    if (rep.certified || round == kExchangeRounds) break;
    const double tol = kResidualTol * rep.objective;
    SeriesEvaluator g(ctx, cert.coefficients);
    std::vector<double> extra;
    for (double t : rep.local_maxima)
      if (g(t) > tol) extra.push_back(t);
    if (rep.worst_t >= -1.0 && g(rep.worst_t) > tol) extra.push_back(rep.worst_t);
    if (extra.empty()) break;
    work.constraint_grid.insert(work.constraint_grid.end(), extra.begin(), extra.end());
    std::sort(work.constraint_grid.begin(), work.constraint_grid.end());
    work.constraint_grid.erase(std::unique(work.constraint_grid.begin(), work.constraint_grid.end()),
                               work.constraint_grid.end());
    if (static_cast<int>(work.constraint_grid.size()) > kMaxLPGrid) break;
  }
  apply_report(cert, rep);
  // Any positive residual, even one inside the certification tolerance, lets
  // g(1) undercut a true code size (n = 8, theta = pi/3, d = 200 gave
  // 239.99998 against 240), so it is always cleared.
  if (rep.coefficients_ok && rep.max_residual > 0.0 && rep.max_residual < 0.5) {
    // g' = (g - v) / (1 - v) keeps c_0 = 1 and c_k >= 0 and is <= 0 wherever g <= v.
    const double v = rep.max_residual * (1.0 + 1e-6) + 1e-13 * rep.objective;
    for (std::size_t k = 1; k < cert.coefficients.size(); ++k) cert.coefficients[k] /= (1.0 - v);
    cert.shifted = true;
    apply_report(cert, verify_certificate(cert, p, 10 * static_cast<int>(p.constraint_grid.size())));
  }
  return cert;
}

LogScaled euclid_bound_from_certificate(const LPCertificate& cert, const LPProblem& p) {
  if (p.theta < kPi / 3.0 - 1e-12)
    throw std::domain_error("euclid_bound_from_certificate: requires theta >= pi/3");
  if (!cert.certified) throw std::domain_error("euclid_bound_from_certificate: certificate not certified");
  if (!(cert.objective > 0.0)) throw std::domain_error("euclid_bound_from_certificate: non-positive objective");
  return LogScaled::from_log(p.n * std::log(std::sin(0.5 * p.theta)) + std::log(cert.objective));
}

std::vector<double> default_sample_radii(double theta) {
  const double R = 1.0 / std::sin(0.5 * theta);
  const double eps = 1e-6;
  return {0.0, 0.5, 1.0, 1.5, 2.0, 2.0 + eps, R, 2.0 * R - eps, 2.0 * R, 3.0 * R};
}

TransferProbe transfer_g_to_f(const LPCertificate& cert, const LPProblem& p,
                              const std::vector<double>& radii, const Quadrature& q) {
  const int n = p.n;
  if (n < 2 || n > 8) throw std::domain_error("transfer_g_to_f: requires 2 <= n <= 8");
  if (cert.n != n || cert.coefficients.empty())
    throw std::invalid_argument("transfer_g_to_f: certificate does not match the problem");
  for (double r : radii)
    if (!(r >= 0.0)) throw std::domain_error("transfer_g_to_f: radii must be >= 0");

  GegenbauerContext ctx(n, std::max<int>(1, static_cast<int>(cert.coefficients.size())));
  const SeriesEvaluator g(ctx, cert.coefficients);
  const double g1 = g.at_one();
  const double R = 1.0 / std::sin(0.5 * p.theta);
  // Omega_m = 2 pi^{m/2} / Gamma(m/2), the area of S^{m-1}.
  auto sphere_area = [](int m) {
    return 2.0 * std::exp(0.5 * m * std::log(kPi) - specfun::log_gamma(0.5 * m));
  };
  const double omega_axis = sphere_area(n - 1);
  const double omega_full = sphere_area(n);
  const double ball_volume = omega_full * std::pow(R, n) / n;

  // Sign changes of g make f(r) small against its parts for r >= 2, so the
  // tolerances are absolute on the scale of f(0) = vol(B_R) g(1).
  Quadrature inner_q = q;
  inner_q.abs_tol = std::max(q.abs_tol, q.rel_tol * g1);
  Quadrature outer_q = q;
  outer_q.abs_tol = std::max(q.abs_tol, q.rel_tol * g1 * ball_volume);

  auto f = [&](double r) {
    if (r >= 2.0 * R) return 0.0;
    auto shell = [&](double u) {
      if (u <= 0.0) return 0.0;
      double phi_max = kPi;
      if (r > 0.0) phi_max = std::acos(std::clamp((u * u + r * r - R * R) / (2.0 * u * r), -1.0, 1.0));
      if (phi_max <= 0.0) return 0.0;
      auto angular = [&](double phi) {
        const double c = std::cos(phi);
        const double v = std::sqrt(std::max(0.0, u * u + r * r - 2.0 * u * r * c));
        const double cos_angle = v > 0.0 ? std::clamp((u - r * c) / v, -1.0, 1.0) : 1.0;
        return g(cos_angle) * std::pow(std::sin(phi), n - 2);
      };
      const auto res = integrate_or_throw("transfer_g_to_f", angular, 0.0, phi_max, inner_q);
      return std::pow(u, n - 1) * res.estimate;
    };
    const double breaks[] = {std::abs(R - r), r};
    std::vector<double> sorted(std::begin(breaks), std::end(breaks));
    std::sort(sorted.begin(), sorted.end());
    const auto res = integrate_or_throw("transfer_g_to_f", shell, std::max(0.0, r - R), R, outer_q, sorted);
    return omega_axis * res.estimate;
  };

  TransferProbe probe;
  probe.n = n;
  probe.theta = p.theta;
  probe.R = R;
  probe.sample_radii = radii;
  for (double r : radii) probe.f_values.push_back(f(r));
  probe.f_at_zero = f(0.0);

  Quadrature radial_q = q;
  radial_q.abs_tol = std::max(q.abs_tol, q.rel_tol * g1 * ball_volume * ball_volume);
  auto radial = [&](double r) { return f(r) * std::pow(r, n - 1); };
  const double rbreaks[] = {2.0, R};
  const auto total = integrate_or_throw("transfer_g_to_f", radial, 0.0, 2.0 * R, radial_q,
                                        std::span<const double>(rbreaks, R > 2.0 ? 2 : 1));
  probe.integral_f = omega_full * total.estimate;
  return probe;
}

std::string certificate_to_json(const LPCertificate& cert) {
  nlohmann::json j;
  j["n"] = cert.n;
  j["theta"] = cert.theta;
  j["degree"] = cert.degree;
  j["coefficients"] = cert.coefficients;
  j["objective"] = cert.objective;
  j["residual"] = cert.max_sign_residual;
  j["certified"] = cert.certified;
  return j.dump();
}

LPCertificate certificate_from_json(const std::string& text) {
  LPCertificate cert;
  try {
    const auto j = nlohmann::json::parse(text);
    cert.n = j.at("n").get<int>();
    cert.theta = j.at("theta").get<double>();
    cert.degree = j.at("degree").get<int>();
    cert.coefficients = j.at("coefficients").get<std::vector<double>>();
    cert.objective = j.at("objective").get<double>();
    cert.max_sign_residual = j.at("residual").get<double>();
    cert.certified = j.at("certified").get<bool>();
  } catch (const nlohmann::json::exception& e) {
    throw std::invalid_argument(std::string("certificate_from_json: ") + e.what());
  }
  if (cert.degree + 1 != static_cast<int>(cert.coefficients.size()))
    throw std::invalid_argument("certificate_from_json: degree does not match the coefficient count");
  return cert;
}

}  // namespace packbounds
