#include "dht/alloc.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "dht/bounds.hpp"

namespace dht {

double node_exponent_bound(const NodeBoundInput& node, double rate_nats) {
  if (rate_nats <= 0.0) return 0.0;
  return std::max(0.0, node.d - invert_lower(rate_nats, node.h));
}

double multi_node_upper(std::span<const NodeBoundInput> nodes,
                        std::span<const double> rates) {
  if (nodes.size() != rates.size())
    throw std::invalid_argument("multi_node_upper: nodes/rates length mismatch");
  double theta = 0.0;
  for (std::size_t i = 0; i < nodes.size(); ++i)
    theta += node_exponent_bound(nodes[i], rates[i]);
  return theta;
}

AllocationResult waterfill(std::span<const NodeBoundInput> nodes,
                           double r_sum) {
  if (nodes.empty()) throw std::invalid_argument("waterfill: no nodes");
  if (!(r_sum >= 0.0)) throw std::invalid_argument("waterfill: r_sum must be >= 0");

  double h_max = nodes[0].h, h_abs = std::abs(nodes[0].h);
  for (const auto& n : nodes) {
    h_max = std::max(h_max, n.h);
    h_abs = std::max(h_abs, std::abs(n.h));
  }
  auto filled = [&](double mu) {
    double s = 0.0;
    for (const auto& n : nodes) s += std::max(0.0, mu + n.h);
    return s;
  };
  // filled() is nondecreasing and piecewise linear in mu; bracket and bisect.
  double lo = -h_max - 1.0;
  double hi = r_sum / static_cast<double>(nodes.size()) + h_abs + 1.0;
  for (int it = 0; it < 200 && hi - lo > 1e-12; ++it) {
    const double mid = 0.5 * (lo + hi);
    (filled(mid) < r_sum ? lo : hi) = mid;
  }
  const double mu = 0.5 * (lo + hi);

  AllocationResult res;
  res.mu = mu;
  res.rates.resize(nodes.size());
  for (std::size_t i = 0; i < nodes.size(); ++i) {
    res.rates[i] = std::max(0.0, mu + nodes[i].h);
    if (res.rates[i] > 0.0) res.active.push_back(static_cast<int>(i));
  }
  for (std::size_t i = 0; i < nodes.size(); ++i) {
    const double clamped = node_exponent_bound(nodes[i], res.rates[i]);
    double raw;
    if (res.rates[i] > 0.0)
      raw = nodes[i].d - invert_lower(res.rates[i], nodes[i].h);
    else
      raw = nodes[i].d - invert_lower(0.0, nodes[i].h);
    res.theta_bound += clamped;
    res.theta_unclamped += raw;
    if (clamped != raw) res.clamped = true;
  }
  return res;
}

Curve sum_rate_curve(std::span<const NodeBoundInput> nodes,
                     std::span<const double> r_sum_grid) {
  Curve c;
  c.name = "sum_rate";
  c.x_label = Axis::rate_nats;
  c.y_label = Axis::theta_nats;
  bool clamped = false;
  for (double r : r_sum_grid) {
    const AllocationResult a = waterfill(nodes, r);
    clamped = clamped || a.clamped;
    c.points.push_back({r, a.theta_bound});
  }
  if (clamped) c.flags.push_back("per_node_clamp_active");
  return c;
}

}  // namespace dht
