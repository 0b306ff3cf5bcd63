#include "packbounds/hyperbolic.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <random>
#include <stdexcept>
#include <string>
#include <thread>

#include "packbounds/errors.hpp"
#include "packbounds/kernels.hpp"
#include "packbounds/orthopoly.hpp"
#include "packbounds/specfun.hpp"

namespace packbounds {

namespace {

constexpr double kPi = 3.14159265358979323846;
constexpr double kLn2 = 0.693147180559945309417;
constexpr double kThetaSlack = 1e-12;

// ln int_0^r sinh^{n-1}(x) dx, integrand scaled by its value at r.
double log_sinh_power_integral(int n, double r, const Quadrature& q) {
  const double top = (n - 1) * specfun::log_sinh(r);
  if (n == 1) return std::log(r);
  auto scaled = [&](double x) {
    if (x <= 0.0) return 0.0;
    return std::exp((n - 1) * specfun::log_sinh(x) - top);
  };
  // Mass sits within ~1/(n-1) of r when (n-1) r is large.
  std::vector<double> breaks;
  const double width = 1.0 / (n - 1);
  for (double w : {64.0 * width, 8.0 * width, width})
    if (r - w > 0.0) breaks.push_back(r - w);
  const auto res = integrate_or_throw("hyp_ball_volume", scaled, 0.0, r, q, breaks);
  return top + std::log(res.estimate);
}

double log_ball_volume(int n, double r, const Quadrature& q) {
  return log_sphere_area(n) + log_sinh_power_integral(n, r, q);
}

void check_theta(const char* where, double theta) {
  if (!(theta >= kPi / 3.0 - kThetaSlack && theta <= kPi + kThetaSlack))
    throw std::domain_error(std::string(where) + ": theta outside [pi/3, pi]");
}

BoundRecord density_bound(const GegenbauerContext& ctx, double r, double theta, bool refined,
                          std::optional<LogScaled> code_bound, const Quadrature& q) {
  const int n = ctx.dimension();
  BoundRecord rec;
  rec.dimension = n;
  rec.theta_star = theta;
  LogScaled a;
  if (code_bound) {
    rec.method = Method::lp_transfer;
    a = *code_bound;
  } else {
    rec.method = Method::kl;
    const auto cb = kl_spherical_code_bound(ctx, std::min(theta, kPi));
    a = cb.value;
    rec.k_star = cb.k_used;
  }
  double log_factor;
  if (refined) {
    const double R = radius_from_angle(r, std::min(theta, kPi));
    log_factor = log_ball_volume(n, r, q) - log_ball_volume(n, R, q);
  } else {
    log_factor = (n - 1) * std::log(std::sin(0.5 * std::min(theta, kPi)));
  }
  rec.value = LogScaled::from_log(log_factor + a.log());
  return rec;
}

}  // namespace

double log_sphere_area(int m) {
  if (m < 1) throw std::domain_error("log_sphere_area: requires m >= 1");
  return kLn2 + 0.5 * m * std::log(kPi) - specfun::log_gamma(0.5 * m);
}

LogScaled hyp_ball_volume(int n, double r, const Quadrature& q) {
  if (n < 2 || n > 200) throw std::domain_error("hyp_ball_volume: n outside [2, 200]");
  if (!(r > 0.0 && r <= 50.0)) throw std::domain_error("hyp_ball_volume: r outside (0, 50]");
  return LogScaled::from_log(log_ball_volume(n, r, q));
}

double radius_from_angle(double r, double theta) {
  if (!(r > 0.0)) throw std::domain_error("radius_from_angle: requires r > 0");
  if (!(theta > 0.0 && theta <= kPi)) throw std::domain_error("radius_from_angle: theta outside (0, pi]");
  const double s = std::sin(0.5 * theta);
  const double log_target = specfun::log_sinh(r) - std::log(s);
  double R;
  if (log_target < 300.0) {
    R = std::asinh(std::exp(log_target));
  } else {
    // sinh R = e^{R}/2 to double precision here
    R = log_target + kLn2;
  }
  if (theta >= kPi / 3.0 && !(R >= r * (1.0 - 1e-14) && R <= 2.0 * r * (1.0 + 1e-14)))
    throw std::logic_error("radius_from_angle: r <= R <= 2r violated");
  return R;
}

BoundRecord hyp_density_bound(int n, double r, double theta, bool refined,
                              std::optional<LogScaled> code_bound, const Quadrature& q) {
  if (n < 2) throw std::domain_error("hyp_density_bound: requires n >= 2");
  if (!(r > 0.0)) throw std::domain_error("hyp_density_bound: requires r > 0");
  check_theta("hyp_density_bound", theta);
  GegenbauerContext ctx(n);
  return density_bound(ctx, r, theta, refined, code_bound, q);
}

BoundRecord hyp_bound_optimized(int n, double r, bool refined, const Quadrature& q) {
  if (n < 2) throw std::domain_error("hyp_bound_optimized: requires n >= 2");
  if (!(r > 0.0)) throw std::domain_error("hyp_bound_optimized: requires r > 0");
  GegenbauerContext ctx(n);
  // The code bound is constant on each piece cos(theta) in (t_{k-1}, t_k] and
  // the geometric factor increases with theta, so on [pi/3, pi/2] only the
  // left ends arccos(t_k) and pi/3 are candidates. Beyond pi/2 the degree-one
  // bound varies continuously and is searched directly.
  std::vector<double> candidates{kPi / 3.0};
  for (int k = 1; ctx.largest_root(k) <= 0.5 + kRootComparisonSlack; ++k)
    candidates.push_back(std::acos(ctx.largest_root(k)));
  auto objective = [&](double theta) { return density_bound(ctx, r, theta, refined, std::nullopt, q).value.log(); };
  candidates.push_back(golden_section_minimize(objective, 0.5 * kPi, kPi, 1e-10));
  candidates.push_back(kPi);

  BoundRecord best;
  bool have = false;
  for (double theta : candidates) {
    auto rec = density_bound(ctx, r, std::max(theta, kPi / 3.0), refined, std::nullopt, q);
    rec.diagnostics.objective_trace.clear();
    if (!have || rec.value < best.value) {
      best = rec;
      have = true;
    }
  }
  return best;
}

double overlap_limit(int n, double r) {
  if (n < 2) throw std::domain_error("overlap_limit: requires n >= 2");
  if (!(r >= 0.0)) throw std::domain_error("overlap_limit: requires r >= 0");
  if (r == 0.0) return 1.0;
  const double a = 0.5 * (n - 1);
  const double u = 1.0 / (1.0 + std::exp(r));
  // B(1/2; a, a) = B(a, a) / 2
  const double v = specfun::incomplete_beta(u, a, a) / (0.5 * specfun::beta(a, a));
  return std::clamp(v, 0.0, 1.0);
}

double overlap_finite(int n, double r, double R, const Quadrature& q) {
  if (n < 2) throw std::domain_error("overlap_finite: requires n >= 2");
  if (!(r >= 0.0)) throw std::domain_error("overlap_finite: requires r >= 0");
  if (!(R > 0.0)) throw std::domain_error("overlap_finite: requires R > 0");
  if (r == 0.0) return 1.0;
  if (r >= 2.0 * R) return 0.0;

  // (chi_R * chi_R)(r) / vol(B_R) as the integral over (r1, r2) of
  //   Omega_{n-1} sinh r1 sinh r2 C^{(n-3)/2} / sinh^{n-2} r  over vol(B_R),
  // with C = 4 sinh(p) sinh(p-r) sinh(p-r1) sinh(p-r2), p the half perimeter.
  // For fixed r1, r2 runs between a = |r - r1| and b = r + r1 (capped at R);
  // r2 = m - h cos(phi) turns the C^{(n-3)/2} edge behaviour into sin^{n-2}(phi).
  const double log_norm = log_sphere_area(n) - log_sphere_area(n - 1) +
                          log_sinh_power_integral(n, R, q) + (n - 2) * specfun::log_sinh(r);
  const double exponent = 0.5 * (n - 3);

  auto inner = [&](double r1) {
    if (r1 <= 0.0) return 0.0;
    const double a = std::abs(r - r1);
    const double b = r + r1;
    const double m = 0.5 * (a + b);
    const double h = 0.5 * (b - a);
    if (!(h > 0.0)) return 0.0;
    double phi_max = kPi;
    if (b > R) phi_max = std::acos(std::clamp((m - R) / h, -1.0, 1.0));
    if (!(phi_max > 0.0)) return 0.0;
    const double log_sinh_r1 = specfun::log_sinh(r1);
    auto integrand = [&](double phi) {
      const double half = 0.5 * phi;
      const double s2 = std::sin(half) * std::sin(half);
      const double c2 = std::cos(half) * std::cos(half);
      const double r2 = m - h * std::cos(phi);
      if (!(r2 > 0.0) || !(s2 > 0.0) || !(c2 > 0.0)) return 0.0;
      // p - r2 = h cos^2(phi/2); the factor vanishing at r2 = a is h sin^2(phi/2);
      // the remaining one is (r2 + a)/2.
      const double log_c = 2.0 * kLn2 + specfun::log_sinh(0.5 * (b + r2)) +
                           specfun::log_sinh(h * c2) + specfun::log_sinh(h * s2) +
                           specfun::log_sinh(0.5 * (r2 + a));
      const double log_jacobian = std::log(h * std::sin(phi));
      return std::exp(log_sinh_r1 + specfun::log_sinh(r2) + exponent * log_c + log_jacobian - log_norm);
    };
    return integrate_or_throw("overlap_finite", integrand, 0.0, phi_max, q).estimate;
  };

  const double lo = std::max(0.0, r - R);
  const double breaks[] = {std::min(r, R - r), std::max(r, R - r)};
  const auto res = integrate_or_throw("overlap_finite", inner, lo, R, q, breaks);
  return std::clamp(res.estimate, 0.0, 1.0);
}

MonteCarloEstimate overlap_monte_carlo(int n, double r, double R, std::int64_t samples,
                                       std::uint64_t seed, int threads) {
  if (n < 2 || n > 4) throw std::domain_error("overlap_monte_carlo: n must be 2, 3 or 4");
  if (samples < 10000) throw std::domain_error("overlap_monte_carlo: requires samples >= 10^4");
  if (!(r >= 0.0) || !(R > 0.0)) throw std::domain_error("overlap_monte_carlo: requires r >= 0, R > 0");
  MonteCarloEstimate est;
  est.samples = samples;
  if (r == 0.0) {
    est.mean = 1.0;
    return est;
  }
  if (r >= 2.0 * R) return est;

  // Radial CDF G(rho) / G(R) with G = int_0^rho sinh^{n-1}.
  auto G = [n](double rho) {
    switch (n) {
      case 2: return std::cosh(rho) - 1.0;
      case 3: return 0.25 * (std::sinh(2.0 * rho) - 2.0 * rho);
      default: {
        const double c = std::cosh(rho);
        return c * c * c / 3.0 - c + 2.0 / 3.0;
      }
    }
  };
  const double total = G(R);
  auto radius_for = [&](double u) {
    // Safeguarded Newton on G(rho) = u G(R); G' = sinh^{n-1} > 0.
    const double target = u * total;
    double lo = 0.0, hi = R;
    double rho = n == 2 ? std::acosh(1.0 + target) : 0.5 * R;
    for (int it = 0; it < 100; ++it) {
      const double g = G(rho) - target;
      if (g > 0.0) hi = rho; else lo = rho;
      const double d = std::pow(std::sinh(rho), n - 1);
      double next = d > 0.0 ? rho - g / d : 0.5 * (lo + hi);
      if (!(next > lo && next < hi)) next = 0.5 * (lo + hi);
      if (std::abs(next - rho) <= 1e-15 * std::max(1.0, rho)) return next;
      rho = next;
    }
    return rho;
  };

  constexpr std::int64_t kChunk = 1 << 16;
  const std::int64_t chunks = (samples + kChunk - 1) / kChunk;
  std::vector<std::int64_t> counts(static_cast<std::size_t>(chunks), 0);
  const double cosh_r = std::cosh(r), sinh_r = std::sinh(r), cosh_R = std::cosh(R);
  std::atomic<std::int64_t> next_chunk{0};

  auto worker = [&]() {
    std::vector<double> ch, sh, axis;
    for (;;) {
      const std::int64_t c = next_chunk.fetch_add(1);
      if (c >= chunks) break;
      const std::int64_t count = std::min(kChunk, samples - c * kChunk);
      std::seed_seq seq{static_cast<std::uint32_t>(seed), static_cast<std::uint32_t>(seed >> 32),
                        static_cast<std::uint32_t>(c), static_cast<std::uint32_t>(c >> 32)};
      std::mt19937_64 rng(seq);
      std::uniform_real_distribution<double> unit(0.0, 1.0);
      std::normal_distribution<double> normal(0.0, 1.0);
      ch.resize(count);
      sh.resize(count);
      axis.resize(count);
      for (std::int64_t i = 0; i < count; ++i) {
        const double rho = radius_for(unit(rng));
        ch[i] = std::cosh(rho);
        sh[i] = std::sinh(rho);
        // First coordinate of a uniform direction on S^{n-1}.
        double first = 0.0, norm2 = 0.0;
        for (int j = 0; j < n; ++j) {
          const double z = normal(rng);
          if (j == 0) first = z;
          norm2 += z * z;
        }
        axis[i] = norm2 > 0.0 ? first / std::sqrt(norm2) : 1.0;
      }
      counts[static_cast<std::size_t>(c)] =
          static_cast<std::int64_t>(kernels::count_within(ch, sh, axis, cosh_r, sinh_r, cosh_R));
    }
  };
  if (threads <= 0) threads = static_cast<int>(std::max(1u, std::thread::hardware_concurrency()));
  threads = static_cast<int>(std::min<std::int64_t>(threads, chunks));
  std::vector<std::thread> pool;
  for (int t = 1; t < threads; ++t) pool.emplace_back(worker);
  worker();
  for (auto& th : pool) th.join();

  std::int64_t hits = 0;
  for (auto c : counts) hits += c;
  est.mean = static_cast<double>(hits) / static_cast<double>(samples);
  est.standard_error = std::sqrt(est.mean * (1.0 - est.mean) / static_cast<double>(samples));
  return est;
}

OverlapResult overlap_report(int n, double r, const std::vector<double>& radii,
                             std::int64_t mc_samples, std::uint64_t seed, const Quadrature& q) {
  OverlapResult out;
  out.n = n;
  out.r = r;
  out.limit_value = overlap_limit(n, r);
  for (double R : radii) out.finite_R_values.emplace_back(R, overlap_finite(n, r, R, q));
  if (mc_samples > 0 && !radii.empty())
    out.mc_estimate = overlap_monte_carlo(n, r, *std::max_element(radii.begin(), radii.end()),
                                          mc_samples, seed);
  return out;
}

}  // namespace packbounds
