#include "dht/special.hpp"

#include <cmath>
#include <stdexcept>

namespace dht {

namespace {
constexpr double kHalfLog2Pi = 0.9189385332046727417803297;  // ln(2 pi)/2
// Both asymptotic series below are truncated where the first omitted term is
// below 3e-15 at the shift threshold.
constexpr double kShift = 12.0;
}  // namespace

namespace detail {

double stirling_remainder(double x) {
  // g(x) = 1/(12x) - 1/(360x^3) + 1/(1260x^5) - 1/(1680x^7) + 1/(1188x^9)
  const double inv = 1.0 / x;
  const double inv2 = inv * inv;
  return inv * (1.0 / 12 +
                inv2 * (-1.0 / 360 +
                        inv2 * (1.0 / 1260 +
                                inv2 * (-1.0 / 1680 + inv2 * (1.0 / 1188)))));
}

double digamma_tail(double x) {
  // d(x) = 1/(12x^2) - 1/(120x^4) + 1/(252x^6) - 1/(240x^8) + 1/(132x^10)
  const double inv2 = 1.0 / (x * x);
  return inv2 * (1.0 / 12 +
                 inv2 * (-1.0 / 120 +
                         inv2 * (1.0 / 252 +
                                 inv2 * (-1.0 / 240 + inv2 * (1.0 / 132)))));
}

}  // namespace detail

double ln_gamma(double x) {
  if (!(x > 0.0) || !std::isfinite(x))
    throw std::domain_error("ln_gamma: requires finite x > 0");
  double shift = 0.0;
  double y = x;
  while (y < kShift) {
    shift += std::log(y);
    y += 1.0;
  }
  const double core =
      (y - 0.5) * std::log(y) - y + kHalfLog2Pi + detail::stirling_remainder(y);
  return core - shift;
}

double digamma(double x) {
  if (!(x > 0.0) || !std::isfinite(x))
    throw std::domain_error("digamma: requires finite x > 0");
  double shift = 0.0;
  double y = x;
  while (y < kShift) {
    shift += 1.0 / y;
    y += 1.0;
  }
  return std::log(y) - 0.5 / y - detail::digamma_tail(y) - shift;
}

double normal_cdf(double z) { return 0.5 * std::erfc(-z * M_SQRT1_2); }

double normal_sf(double z) { return 0.5 * std::erfc(z * M_SQRT1_2); }

double normal_interval_mass(double z_lo, double z_hi) {
  if (!(z_lo < z_hi)) return 0.0;
  const double m = z_lo >= 0.0 ? normal_sf(z_lo) - normal_sf(z_hi)
                               : normal_cdf(z_hi) - normal_cdf(z_lo);
  return m > 0.0 ? m : 0.0;
}

}  // namespace dht
