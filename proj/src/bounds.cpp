#include "dht/bounds.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <string>

#include "dht/errors.hpp"
#include "dht/special.hpp"

namespace dht {

namespace {
constexpr double kHalfLog2Pi = 0.9189385332046727417803297;
constexpr double kLog4PiE = 3.5310242469692907930;  // ln(4 pi e)
constexpr double kTwoPiE = 17.0794684453471341;
constexpr double kAsymptotic = 12.0;

// Bisection on a monotone function of t = ln(alpha). `increasing` is the
// sign of df/dt. Converges on the interval, then returns the midpoint.
double bisect_log_alpha(double (*f)(double), double target, bool increasing,
                        const char* what) {
  double lo = -720.0, hi = 709.0;  // alpha within double range
  auto side = [&](double t) {
    const double v = f(std::exp(t)) - target;
    return increasing ? v : -v;
  };
  if (side(lo) > 0.0 || side(hi) < 0.0)
    throw numeric_error(std::string(what) + ": target " +
                        std::to_string(target) +
                        " outside bracket [e^-720, e^709]");
  for (int it = 0; it < 200 && hi - lo > 1e-15 * std::max(1.0, std::abs(lo) + std::abs(hi)); ++it) {
    const double mid = 0.5 * (lo + hi);
    (side(mid) < 0.0 ? lo : hi) = mid;
  }
  return std::exp(0.5 * (lo + hi));
}

}  // namespace

double delta_of_alpha(double alpha) {
  if (!(alpha > 0.0)) throw std::domain_error("delta_of_alpha: alpha must be > 0");
  if (alpha < kAsymptotic) return std::log(alpha) - digamma(alpha);
  // ln a - psi(a) = 1/(2a) + d(a); computed directly to dodge cancellation.
  return 0.5 / alpha + detail::digamma_tail(alpha);
}

double rate_shape_of_alpha(double alpha) {
  if (!(alpha > 0.0))
    throw std::domain_error("rate_shape_of_alpha: alpha must be > 0");
  if (alpha < kAsymptotic)
    return -ln_gamma(alpha) + alpha * digamma(alpha) - alpha;
  // -lnGamma(a) + a psi(a) - a
  //   = ln(a)/2 - ln(2 pi)/2 - 1/2 - g(a) - a d(a),
  // with g, d the Stirling/digamma remainders. The naive difference loses
  // ~a ln(a) * eps of precision, this form none.
  return 0.5 * std::log(alpha) - kHalfLog2Pi - 0.5 -
         detail::stirling_remainder(alpha) -
         alpha * detail::digamma_tail(alpha);
}

double alpha_for_delta(double delta) {
  if (!(delta > 0.0)) throw std::domain_error("alpha_for_delta: delta must be > 0");
  return bisect_log_alpha(&delta_of_alpha, delta, /*increasing=*/false,
                          "alpha_for_delta");
}

double alpha_for_rate_shape(double rate_shape) {
  return bisect_log_alpha(&rate_shape_of_alpha, rate_shape,
                          /*increasing=*/true, "alpha_for_rate_shape");
}

double lower_rate_at_delta(double h_u, double delta) {
  return std::max(0.0, h_u + rate_shape_of_alpha(alpha_for_delta(delta)));
}

double invert_lower(double rate_nats, double h_u) {
  return delta_of_alpha(alpha_for_rate_shape(rate_nats - h_u));
}

Curve lower_curve(double h_u, std::span<const double> alpha_grid) {
  Curve c;
  c.name = "lower";
  c.x_label = Axis::delta_nats;
  c.y_label = Axis::rate_nats;
  bool clamped = false;
  c.points.reserve(alpha_grid.size());
  // delta decreases in alpha, so walk the grid backwards to emit ascending x.
  for (auto it = alpha_grid.rbegin(); it != alpha_grid.rend(); ++it) {
    const double rate = h_u + rate_shape_of_alpha(*it);
    if (rate < 0.0) clamped = true;
    c.points.push_back({delta_of_alpha(*it), std::max(0.0, rate)});
  }
  if (clamped) c.flags.push_back("rate_clamped_at_zero");
  return c;
}

double upper_rate_at_delta(double var_u, double delta) {
  if (!(delta > 0.0))
    throw std::domain_error("upper_rate_at_delta: delta must be > 0");
  if (!(var_u >= 0.0))
    throw std::domain_error("upper_rate_at_delta: var_u must be >= 0");
  return 0.5 * std::log1p(var_u / (2.0 * delta));
}

Curve upper_curve_gaussian(double var_u, std::span<const double> delta_grid) {
  Curve c;
  c.name = "upper";
  c.x_label = Axis::delta_nats;
  c.y_label = Axis::rate_nats;
  c.points.reserve(delta_grid.size());
  for (double d : delta_grid) c.points.push_back({d, upper_rate_at_delta(var_u, d)});
  return c;
}

namespace {

// d/ddelta of the Gaussian upper bound.
double upper_slope(double var_u, double delta) {
  return -var_u / (2.0 * delta * (2.0 * delta + var_u));
}

}  // namespace

SlTangent sl_tangent(double d_pq, double var_u) {
  if (!(d_pq > 0.0) || !(var_u > 0.0))
    throw std::domain_error("sl_tangent: requires d_pq > 0 and var_u > 0");
  // Tangency residual rho(x) = R_up(x) + R_up'(x) (d_pq - x): the value at
  // x of the line through (d_pq, 0) with the curve's slope at x. rho is
  // strictly increasing (R_up is convex), -inf at 0+, positive at d_pq.
  auto rho = [&](double x) {
    return upper_rate_at_delta(var_u, x) + upper_slope(var_u, x) * (d_pq - x);
  };
  double lo = d_pq * 1e-14, hi = d_pq;
  if (!(rho(lo) < 0.0) || !(rho(hi) > 0.0)) {
    // Analytically unreachable; keep the documented fallback: the chord from
    // (d_pq, 0) to the upper curve near delta = 0.
    const double x = d_pq * 1e-9;
    return {x, (0.0 - upper_rate_at_delta(var_u, x)) / (d_pq - x), true};
  }
  for (int it = 0; it < 200 && hi - lo > 1e-15 * d_pq; ++it) {
    const double mid = 0.5 * (lo + hi);
    (rho(mid) < 0.0 ? lo : hi) = mid;
  }
  const double star = 0.5 * (lo + hi);
  return {star, upper_slope(var_u, star), false};
}

double sl_rate_at_delta(const SlTangent& t, double d_pq, double var_u,
                        double delta) {
  if (!(delta > 0.0))
    throw std::domain_error("sl_rate_at_delta: delta must be > 0");
  if (delta <= t.delta_star && !t.chord_fallback)
    return upper_rate_at_delta(var_u, delta);
  return std::max(0.0, t.slope * (delta - d_pq));
}

Curve sl_curve(double d_pq, double var_u, std::span<const double> delta_grid) {
  const SlTangent t = sl_tangent(d_pq, var_u);
  Curve c;
  c.name = "sl";
  c.x_label = Axis::delta_nats;
  c.y_label = Axis::rate_nats;
  c.points.reserve(delta_grid.size());
  for (double d : delta_grid)
    c.points.push_back({d, sl_rate_at_delta(t, d_pq, var_u, d)});
  if (t.chord_fallback) c.flags.push_back("chord_fallback");
  return c;
}

double fisher_rate_at_delta(double h_u, double j_u, double delta) {
  if (!(delta > 0.0))
    throw std::domain_error("fisher_rate_at_delta: delta must be > 0");
  return h_u + delta * j_u - 0.5 * (kLog4PiE + std::log(delta));
}

Curve fisher_upper_curve(double h_u, double j_u,
                         std::span<const double> delta_grid) {
  Curve c;
  c.name = "fisher";
  c.x_label = Axis::delta_nats;
  c.y_label = Axis::rate_nats;
  for (double d : delta_grid)
    c.points.push_back({d, fisher_rate_at_delta(h_u, j_u, d)});
  return c;
}

double lattice_gap_of_radius(double r) {
  if (!(r > 0.0))
    throw std::domain_error("lattice_gap_of_radius: r must be > 0");
  return std::expm1(r) - r;
}

double lattice_radius_for_gap(double delta) {
  if (!(delta > 0.0))
    throw std::domain_error("lattice_radius_for_gap: delta must be > 0");
  // e^r - r - 1 is increasing; seed with the small-r asymptote sqrt(2 delta).
  double lo = 0.0, hi = std::max(1.0, std::sqrt(2.0 * delta) * 2.0);
  while (lattice_gap_of_radius(hi) < delta) hi *= 2.0;
  for (int it = 0; it < 200 && hi - lo > 1e-16 * hi; ++it) {
    const double mid = 0.5 * (lo + hi);
    (lattice_gap_of_radius(mid) < delta ? lo : hi) = mid;
  }
  return 0.5 * (lo + hi);
}

double lattice_rate_at_radius(double h_u, double j_u, double lip_l, double r) {
  if (!(r > 0.0))
    throw std::domain_error("lattice_rate_at_radius: r must be > 0");
  return h_u - std::log(2.0 * r) + 2.0 * r * std::sqrt(j_u) +
         4.0 * lip_l * r * r;
}

Curve lattice_curve(double h_u, double j_u, double lip_l,
                    std::span<const double> r_grid) {
  Curve c;
  c.name = "lattice";
  c.x_label = Axis::delta_nats;
  c.y_label = Axis::rate_nats;
  for (double r : r_grid)
    c.points.push_back(
        {lattice_gap_of_radius(r), lattice_rate_at_radius(h_u, j_u, lip_l, r)});
  return c;
}

double vector_scaled_rate(BoundSide side, double var_u, int k, double delta) {
  if (k < 1) throw std::invalid_argument("vector_scaled_rate: k must be >= 1");
  const double kk = static_cast<double>(k);
  if (side == BoundSide::upper)
    return upper_rate_at_delta(kk * var_u, kk * delta) / kk;
  const double h_k = 0.5 * std::log(kTwoPiE * kk * var_u);
  return lower_rate_at_delta(h_k, kk * delta) / kk;
}

Curve vector_scaled_curve(BoundSide side, double var_u, int k,
                          std::span<const double> delta_grid) {
  Curve c;
  c.name = side == BoundSide::lower ? "lower" : "upper";
  if (k != 1) c.name += "_k" + std::to_string(k);
  c.x_label = Axis::delta_nats;
  c.y_label = Axis::rate_nats;
  for (double d : delta_grid)
    c.points.push_back({d, vector_scaled_rate(side, var_u, k, d)});
  return c;
}

std::vector<double> default_alpha_grid() { return log_grid(1e-2, 1e6, 400); }

std::vector<double> log_grid(double lo, double hi, int n) {
  if (n < 2 || !(lo > 0.0) || !(hi > lo))
    throw std::invalid_argument("log_grid: need 0 < lo < hi and n >= 2");
  std::vector<double> g(n);
  const double llo = std::log(lo), lhi = std::log(hi);
  for (int i = 0; i < n; ++i)
    g[i] = std::exp(llo + (lhi - llo) * i / (n - 1));
  g.front() = lo;
  g.back() = hi;
  return g;
}

}  // namespace dht
