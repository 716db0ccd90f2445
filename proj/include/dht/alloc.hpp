#pragma once

#include <span>
#include <vector>

#include "dht/curve.hpp"

namespace dht {

/// What the aggregate bound needs to know about one node.
struct NodeBoundInput {
  double d;  ///< D(P||Q) in nats
  double h;  ///< differential entropy of the node's LLR, nats
};

/// A node's contribution to the aggregate exponent bound at rate R:
/// 0 when R <= 0 (no communication carries no evidence), otherwise
/// max(0, d - delta_lower(R - h)). The outer clamp keeps the bound valid
/// where the generic gap curve exceeds d.
double node_exponent_bound(const NodeBoundInput& node, double rate_nats);

/// Aggregate exponent bound sum_i node_exponent_bound(node_i, R_i).
/// Throws std::invalid_argument on length mismatch.
double multi_node_upper(std::span<const NodeBoundInput> nodes,
                        std::span<const double> rates);

struct AllocationResult {
  std::vector<double> rates;       ///< optimal split, sums to r_sum
  double mu = 0.0;                 ///< water level, R_i = (mu + h_i)^+
  double theta_bound = 0.0;        ///< clamped aggregate bound
  double theta_unclamped = 0.0;    ///< sum_i (d_i - delta_lower(R_i - h_i)), no clamps
  std::vector<int> active;         ///< indices with R_i > 0
  bool clamped = false;            ///< true when any per-node clamp fired
};

/// Splits a total rate budget across nodes by water-filling: mu solves
/// sum_i (mu + h_i)^+ = r_sum by bisection (tolerance 1e-12), active nodes
/// share the level R_i - h_i = mu. Throws std::invalid_argument for
/// r_sum < 0.
AllocationResult waterfill(std::span<const NodeBoundInput> nodes,
                           double r_sum);

/// theta(r_sum) via waterfill at each grid point; flags when clamping was
/// active anywhere on the grid.
Curve sum_rate_curve(std::span<const NodeBoundInput> nodes,
                     std::span<const double> r_sum_grid);

}  // namespace dht
