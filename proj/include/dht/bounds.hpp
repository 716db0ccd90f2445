#pragma once

#include <span>

#include "dht/curve.hpp"

namespace dht {

// ---------------------------------------------------------------------------
// Parametric family behind the max-entropy lower bound. The curve
//   rate_shape(alpha) = -ln Gamma(alpha) + alpha psi(alpha) - alpha
//   delta(alpha)      = ln alpha - psi(alpha)
// is shared by every node up to a shift of rate_shape by the node's h(U).
// Both are evaluated through cancellation-free asymptotic forms for large
// alpha, so they stay accurate over the whole inversion range.
// ---------------------------------------------------------------------------

/// delta(alpha) = ln alpha - psi(alpha); strictly decreasing, positive.
double delta_of_alpha(double alpha);

/// rate_shape(alpha) = -ln Gamma(alpha) + alpha psi(alpha) - alpha; strictly
/// increasing from -inf to +inf (like ln(alpha)/2).
double rate_shape_of_alpha(double alpha);

/// Inverts delta_of_alpha. Throws std::domain_error for delta <= 0.
double alpha_for_delta(double delta);

/// Inverts rate_shape_of_alpha. Throws dht::numeric_error when the target is
/// beyond the representable range (reports the bracket probed).
double alpha_for_rate_shape(double rate_shape);

/// Max-entropy lower bound R_low(delta) = h_u + rate_shape(alpha(delta)),
/// clamped below at 0.
double lower_rate_at_delta(double h_u, double delta);

/// Gap value delta such that R_low(delta) = rate_nats; the generalized
/// inverse of the lower bound. Monotone root-finding on alpha.
double invert_lower(double rate_nats, double h_u);

/// Parametric (delta(alpha), R_low(alpha)) points, emitted in increasing
/// delta. Negative rates clamp to 0 and set a "clamped" flag on the curve.
Curve lower_curve(double h_u, std::span<const double> alpha_grid);

/// Gaussian test-channel upper bound R_up(delta) = log(1 + var_u/(2 delta))/2.
double upper_rate_at_delta(double var_u, double delta);
Curve upper_curve_gaussian(double var_u, std::span<const double> delta_grid);

/// Tangent from the zero-rate endpoint (delta = d_pq, R = 0) to the Gaussian
/// upper bound; the tightened "SL" bound follows R_up left of the tangency
/// point and the tangent line right of it.
struct SlTangent {
  double delta_star;    ///< tangency abscissa
  double slope;         ///< line slope dR/ddelta (negative)
  bool chord_fallback;  ///< true when no tangency was bracketed in (0, d_pq)
};
SlTangent sl_tangent(double d_pq, double var_u);

/// SL bound at one gap value (0 for delta >= d_pq).
double sl_rate_at_delta(const SlTangent& t, double d_pq, double var_u,
                        double delta);
Curve sl_curve(double d_pq, double var_u, std::span<const double> delta_grid);

/// Fisher-information upper bound h_u + delta J(U) - log(4 pi e delta)/2.
double fisher_rate_at_delta(double h_u, double j_u, double delta);
Curve fisher_upper_curve(double h_u, double j_u,
                         std::span<const double> delta_grid);

/// Gap of a lattice quantizer of radius r: e^r - r - 1.
double lattice_gap_of_radius(double r);
/// Inverse of the above on r > 0.
double lattice_radius_for_gap(double delta);

/// Lattice achievability bound, parametric in the radius:
///   R(r) = h_u - log(2r) + 2r sqrt(J(U)) + 4 L r^2,  delta(r) = e^r - r - 1.
/// Valid for v-regular densities with Lipschitz v (the Gaussian qualifies).
double lattice_rate_at_radius(double h_u, double j_u, double lip_l, double r);
Curve lattice_curve(double h_u, double j_u, double lip_l,
                    std::span<const double> r_grid);

// ---------------------------------------------------------------------------
// k-sample vector quantization: bounds for U_k (the k-fold i.i.d. LLR sum,
// d -> k d, var -> k var, h -> h + log(k)/2) evaluated at k*delta and scaled
// by 1/k.
// ---------------------------------------------------------------------------

enum class BoundSide { lower, upper };

double vector_scaled_rate(BoundSide side, double var_u, int k, double delta);
Curve vector_scaled_curve(BoundSide side, double var_u, int k,
                          std::span<const double> delta_grid);

/// Log-spaced grid helper (n >= 2, endpoints included).
std::vector<double> log_grid(double lo, double hi, int n);

/// Default alpha grid for the parametric lower bound: 400 log-spaced points
/// on [1e-2, 1e6], covering gap values from ~1e-6 up past D for the desk
/// scenarios.
std::vector<double> default_alpha_grid();

}  // namespace dht
