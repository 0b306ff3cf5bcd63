#pragma once

#include <complex>

namespace packbounds::specfun {

/// ln Gamma(x) for x > 0. Throws std::domain_error otherwise.
double log_gamma(double x);

/// ln C(a, b). Exact integer arithmetic for a <= 60, log-gamma beyond.
double log_binomial(long a, long b);

/// Faddeeva function w(z) = exp(-z^2) erfc(-i z).
std::complex<double> faddeeva(std::complex<double> z);

/// exp(z^2) erfc(z), i.e. w(i z). Finite wherever erfc(z) alone would
/// under- or overflow on the right half-plane.
std::complex<double> scaled_erfc_complex(std::complex<double> z);

/// Bessel function of the first kind J_nu(x), 0 <= nu <= 400, 0 < x <= 2000.
double bessel_j(double nu, double x);

/// First positive zero j_nu of J_nu, 0 <= nu <= 400.
double bessel_first_zero(double nu, double rel_tol = 1e-12);

/// Non-normalised incomplete beta B(u; a, b) = int_0^u t^{a-1}(1-t)^{b-1} dt.
double incomplete_beta(double u, double a, double b);

/// Complete beta B(a, b).
double beta(double a, double b);

/// ln sinh(x) for x > 0 without overflow.
double log_sinh(double x);

}  // namespace packbounds::specfun
