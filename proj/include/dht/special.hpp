#pragma once

namespace dht {

/// log Gamma(x) for x > 0. Absolute error below 1e-12 on [1e-3, 1e6].
/// Throws std::domain_error for x <= 0 or non-finite x.
double ln_gamma(double x);

/// Digamma psi(x) for x > 0, same accuracy contract as ln_gamma.
double digamma(double x);

/// Standard normal CDF, Phi(z) = P(Z <= z).
double normal_cdf(double z);

/// Standard normal survival function, 1 - Phi(z), accurate in the far tail.
double normal_sf(double z);

/// Mass of the interval (z_lo, z_hi] under the standard normal. Evaluated
/// through the survival function on the positive side, so cells deep in
/// either tail keep their (tiny) mass instead of rounding to 1 - 1 = 0.
double normal_interval_mass(double z_lo, double z_hi);

namespace detail {

// Stirling remainder g(x) in
//   ln Gamma(x) = (x - 1/2) ln x - x + ln(2 pi)/2 + g(x),  valid for x >= 12.
double stirling_remainder(double x);

// Asymptotic tail d(x) in
//   psi(x) = ln x - 1/(2x) - d(x),  valid for x >= 12.
double digamma_tail(double x);

}  // namespace detail

}  // namespace dht
