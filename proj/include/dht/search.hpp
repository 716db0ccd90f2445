#pragma once

#include <span>
#include <vector>

#include "dht/core_model.hpp"
#include "dht/curve.hpp"

namespace dht {

/// The LLR axis cut into B contiguous bins with exact masses under both
/// hypotheses; the first and last bin absorb the tails, so p and q each sum
/// to 1. Bin k covers (edges[k], edges[k+1]].
struct BinnedLLR {
  std::vector<double> edges;  ///< size bins() + 1
  std::vector<double> p;      ///< masses under H0
  std::vector<double> q;      ///< masses under H1
  int bins() const { return static_cast<int>(p.size()); }
};

/// Exact bin masses via Gaussian CDF differences over the span
/// [E_P[L] - span_sigmas * sd, E_P[L] + span_sigmas * sd]. A degenerate pair
/// (d_pq = 0) yields a single bin carrying all mass.
BinnedLLR discretize_llr(const HypothesisPair& pair, int bins,
                         double span_sigmas = 8.0);

/// One optimized quantizer: its H0 score entropy, its exact Neyman-Pearson
/// exponent D(P_f || Q_f), and the interior cell boundaries that achieved it.
struct RateExponentPoint {
  double rate_nats;
  double exponent_nats;
  std::vector<double> thresholds;
};

/// For each lambda, maximizes D(P_f||Q_f) - lambda * H_P(S) over partitions
/// of the binned LLR into at most n_levels contiguous intervals (interval
/// quantizers are extremal for a monotone LLR), by dynamic programming over
/// bin boundaries. Returns the Pareto frontier of the sweep, sorted by rate.
/// lambda values are processed independently (optionally in parallel) and
/// merged deterministically.
std::vector<RateExponentPoint> lagrangian_sweep(
    const BinnedLLR& binned, int n_levels, std::span<const double> lambda_grid,
    int threads = 0);

/// Upper concave envelope over rate of a point set, realized by time-sharing
/// at most two quantizers; nondecreasing, flat beyond the last point.
Curve envelope_two_point(std::span<const RateExponentPoint> points);

/// Default lambda grid: 64 log-spaced values in [1e-3, 1e2].
std::vector<double> default_lambda_grid();

}  // namespace dht
