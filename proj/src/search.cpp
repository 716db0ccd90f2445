#include "dht/search.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <limits>
#include <stdexcept>
#include <thread>

#include "dht/bounds.hpp"
#include "dht/special.hpp"

namespace dht {

namespace {
constexpr double kNegInf = -std::numeric_limits<double>::infinity();
}

BinnedLLR discretize_llr(const HypothesisPair& pair, int bins,
                         double span_sigmas) {
  const LLRStats stats = llr_stats(pair);
  BinnedLLR out;
  if (stats.var_u == 0.0) {
    out.edges = {-1.0, 1.0};
    out.p = {1.0};
    out.q = {1.0};
    return out;
  }
  if (bins < 2) throw std::invalid_argument("discretize_llr: need bins >= 2");
  if (!(span_sigmas > 0.0))
    throw std::invalid_argument("discretize_llr: span must be > 0");
  const double sd = std::sqrt(stats.var_u);
  const double lo = stats.d_pq - span_sigmas * sd;
  const double hi = stats.d_pq + span_sigmas * sd;
  out.edges.resize(bins + 1);
  for (int i = 0; i <= bins; ++i)
    out.edges[i] = lo + (hi - lo) * i / bins;
  out.p.resize(bins);
  out.q.resize(bins);
  for (int k = 0; k < bins; ++k) {
    out.p[k] = normal_interval_mass((out.edges[k] - stats.d_pq) / sd,
                                    (out.edges[k + 1] - stats.d_pq) / sd);
    out.q[k] = normal_interval_mass((out.edges[k] + stats.d_pq) / sd,
                                    (out.edges[k + 1] + stats.d_pq) / sd);
  }
  // End bins absorb the rays beyond the span.
  out.p.front() += normal_cdf((out.edges.front() - stats.d_pq) / sd);
  out.p.back() += normal_sf((out.edges.back() - stats.d_pq) / sd);
  out.q.front() += normal_cdf((out.edges.front() + stats.d_pq) / sd);
  out.q.back() += normal_sf((out.edges.back() + stats.d_pq) / sd);
  return out;
}

namespace {

// Maximizes sum over intervals of [pc log(pc/qc) + lambda pc log(pc)] over
// partitions of the B bins into at most n contiguous intervals. The interval
// weight column for a fixed right edge is computed once and reused for every
// interval count, which keeps the log evaluations at O(B^2) rather than
// O(B^2 n). Interval masses accumulate bin by bin: differencing prefix sums
// would erase the tiny tail masses and let log(pc/qc) blow past the data
// processing ceiling.
RateExponentPoint dp_solve(const BinnedLLR& b, int n_levels, double lambda) {
  const int B = b.bins();
  const int n = std::min(n_levels, B);
  std::vector<std::vector<double>> best(n + 1,
                                        std::vector<double>(B + 1, kNegInf));
  std::vector<std::vector<int>> parent(n + 1, std::vector<int>(B + 1, -1));
  best[0][0] = 0.0;
  std::vector<double> wcol(B);
  for (int j = 1; j <= B; ++j) {
    double pc = 0.0, qc = 0.0;
    for (int i = j - 1; i >= 0; --i) {
      pc += b.p[i];
      qc += b.q[i];
      if (pc <= 0.0)
        wcol[i] = 0.0;
      else if (qc <= 0.0)
        wcol[i] = kNegInf;
      else
        wcol[i] = pc * std::log(pc / qc) + lambda * pc * std::log(pc);
    }
    const int gmax = std::min(n, j);
    for (int g = 1; g <= gmax; ++g) {
      const std::vector<double>& prev = best[g - 1];
      double bv = kNegInf;
      int bi = -1;
      for (int i = g - 1; i < j; ++i) {
        if (prev[i] == kNegInf) continue;
        const double v = prev[i] + wcol[i];
        if (v > bv) {
          bv = v;
          bi = i;
        }
      }
      best[g][j] = bv;
      parent[g][j] = bi;
    }
  }
  int g_star = 1;
  for (int g = 2; g <= n; ++g)
    if (best[g][B] > best[g_star][B]) g_star = g;

  // Recover the winning partition and score it exactly.
  std::vector<int> cuts;  // interior boundaries, bin indices
  int j = B;
  for (int g = g_star; g >= 1; --g) {
    const int i = parent[g][j];
    if (i > 0) cuts.push_back(i);
    j = i;
  }
  std::reverse(cuts.begin(), cuts.end());
  RateExponentPoint pt;
  pt.thresholds.reserve(cuts.size());
  for (int c : cuts) pt.thresholds.push_back(b.edges[c]);
  double rate = 0.0, expo = 0.0;
  int left = 0;
  for (std::size_t s = 0; s <= cuts.size(); ++s) {
    const int right = s < cuts.size() ? cuts[s] : B;
    double pc = 0.0, qc = 0.0;
    for (int k = left; k < right; ++k) {
      pc += b.p[k];
      qc += b.q[k];
    }
    if (pc > 0.0) {
      rate -= pc * std::log(pc);
      expo += pc * std::log(pc / qc);
    }
    left = right;
  }
  pt.rate_nats = std::max(0.0, rate);
  pt.exponent_nats = std::max(0.0, expo);
  return pt;
}

}  // namespace

std::vector<RateExponentPoint> lagrangian_sweep(
    const BinnedLLR& binned, int n_levels, std::span<const double> lambda_grid,
    int threads) {
  const int B = binned.bins();
  if (n_levels < 1)
    throw std::invalid_argument("lagrangian_sweep: n_levels must be >= 1");
  if (n_levels > B)
    throw std::invalid_argument("lagrangian_sweep: n_levels exceeds bin count");
  if (lambda_grid.empty())
    throw std::invalid_argument("lagrangian_sweep: empty lambda grid");
  for (double l : lambda_grid)
    if (!(l >= 0.0))
      throw std::invalid_argument("lagrangian_sweep: lambda must be >= 0");

  std::vector<RateExponentPoint> raw(lambda_grid.size());
  int nthreads = threads > 0 ? threads
                             : static_cast<int>(std::thread::hardware_concurrency());
  nthreads = std::max(1, std::min<int>(nthreads, lambda_grid.size()));
  std::atomic<std::size_t> next{0};
  auto worker = [&]() {
    for (std::size_t idx; (idx = next.fetch_add(1)) < lambda_grid.size();)
      raw[idx] = dp_solve(binned, n_levels, lambda_grid[idx]);
  };
  if (nthreads == 1) {
    worker();
  } else {
    std::vector<std::thread> pool;
    pool.reserve(nthreads);
    for (int t = 0; t < nthreads; ++t) pool.emplace_back(worker);
    for (auto& t : pool) t.join();
  }

  // Pareto frontier: increasing rate must strictly buy exponent.
  std::sort(raw.begin(), raw.end(), [](const auto& a, const auto& b) {
    if (a.rate_nats != b.rate_nats) return a.rate_nats < b.rate_nats;
    return a.exponent_nats > b.exponent_nats;
  });
  std::vector<RateExponentPoint> frontier;
  double best_expo = kNegInf;
  for (auto& pt : raw) {
    if (pt.exponent_nats > best_expo) {
      best_expo = pt.exponent_nats;
      frontier.push_back(std::move(pt));
    }
  }
  return frontier;
}

Curve envelope_two_point(std::span<const RateExponentPoint> points) {
  if (points.empty())
    throw std::invalid_argument("envelope_two_point: no points");
  std::vector<CurvePoint> pts;
  pts.reserve(points.size());
  for (const auto& p : points) pts.push_back({p.rate_nats, p.exponent_nats});
  std::sort(pts.begin(), pts.end(), [](const CurvePoint& a, const CurvePoint& b) {
    if (a.x != b.x) return a.x < b.x;
    return a.y > b.y;
  });
  // Collapse duplicate rates to their best exponent.
  std::vector<CurvePoint> uniq;
  for (const auto& p : pts)
    if (uniq.empty() || p.x > uniq.back().x) uniq.push_back(p);

  // Upper hull, monotone-chain.
  std::vector<CurvePoint> hull;
  auto cross = [](const CurvePoint& o, const CurvePoint& a, const CurvePoint& b) {
    return (a.x - o.x) * (b.y - o.y) - (a.y - o.y) * (b.x - o.x);
  };
  for (const auto& p : uniq) {
    while (hull.size() >= 2 &&
           cross(hull[hull.size() - 2], hull.back(), p) >= 0.0)
      hull.pop_back();
    hull.push_back(p);
  }
  // Time-sharing cannot lose exponent as rate grows: cut the hull at its
  // peak; evaluation extends flat to the right.
  std::size_t peak = 0;
  for (std::size_t i = 1; i < hull.size(); ++i)
    if (hull[i].y > hull[peak].y) peak = i;
  hull.resize(peak + 1);

  Curve c;
  c.name = "envelope";
  c.x_label = Axis::rate_nats;
  c.y_label = Axis::theta_nats;
  c.points = std::move(hull);
  return c;
}

std::vector<double> default_lambda_grid() { return log_grid(1e-3, 1e2, 64); }

}  // namespace dht
