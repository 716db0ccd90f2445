#include "dht/quant.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>
#include <string>

#include "dht/errors.hpp"
#include "dht/special.hpp"

namespace dht {

namespace {
constexpr double kLog2E = 1.4426950408889634074;
constexpr double kSpanSigmas = 8.0;
}  // namespace

QuantizerSpec QuantizerSpec::lattice(double radius) {
  if (!(radius > 0.0) || !std::isfinite(radius))
    throw std::invalid_argument("QuantizerSpec: lattice radius must be > 0");
  QuantizerSpec q;
  q.is_lattice_ = true;
  q.radius_ = radius;
  return q;
}

QuantizerSpec QuantizerSpec::partition(std::vector<double> breakpoints,
                                       std::vector<double> levels) {
  if (levels.size() != breakpoints.size() + 1)
    throw std::invalid_argument("QuantizerSpec: need |levels| = |breakpoints| + 1");
  for (std::size_t i = 0; i + 1 < breakpoints.size(); ++i)
    if (!(breakpoints[i] < breakpoints[i + 1]))
      throw std::invalid_argument("QuantizerSpec: breakpoints must be strictly increasing");
  QuantizerSpec q;
  q.is_lattice_ = false;
  q.breakpoints_ = std::move(breakpoints);
  q.levels_ = std::move(levels);
  return q;
}

double QuantizerSpec::radius() const {
  if (!is_lattice_) throw std::logic_error("QuantizerSpec: not a lattice");
  return radius_;
}

const std::vector<double>& QuantizerSpec::breakpoints() const {
  if (is_lattice_) throw std::logic_error("QuantizerSpec: not a partition");
  return breakpoints_;
}

const std::vector<double>& QuantizerSpec::levels() const {
  if (is_lattice_) throw std::logic_error("QuantizerSpec: not a partition");
  return levels_;
}

double lattice_quantize(double r, double u) {
  if (!(r > 0.0)) throw std::invalid_argument("lattice_quantize: r must be > 0");
  // Cell k is ((2k-1)r, (2k+1)r]; an edge point is equidistant from two
  // lattice points and lands in the lower cell.
  const double k = std::ceil((u - r) / (2.0 * r));
  return 2.0 * k * r;
}

namespace {

// Cell index of u on the r-lattice, as a long.
long lattice_cell_index(double r, double u) {
  return static_cast<long>(std::ceil((u - r) / (2.0 * r)));
}

ScorePmf lattice_pmf(const HypothesisPair& pair, double r, Hypothesis hyp,
                     int k_max) {
  const LLRStats stats = llr_stats(pair);
  ScorePmf pmf;
  pmf.hypothesis = hyp;
  if (stats.var_u == 0.0) {
    pmf.levels = {lattice_quantize(r, 0.0)};
    pmf.probs = {1.0};
    return pmf;
  }
  const double sd = std::sqrt(stats.var_u);
  const double mean = hyp == Hypothesis::H0 ? stats.d_pq : -stats.d_pq;
  long k_lo, k_hi;
  if (k_max > 0) {
    k_lo = -static_cast<long>(k_max);
    k_hi = static_cast<long>(k_max);
  } else {
    // Common cell range across hypotheses so that the H0 and H1 pmfs of one
    // quantizer live on the same level set.
    k_lo = lattice_cell_index(r, -stats.d_pq - kSpanSigmas * sd);
    k_hi = lattice_cell_index(r, stats.d_pq + kSpanSigmas * sd);
  }
  const long cells = k_hi - k_lo + 1;
  if (cells > 20'000'000L)
    throw numeric_error("cell_pmf: radius too small for the support span (" +
                        std::to_string(cells) + " cells)");
  pmf.levels.resize(cells);
  pmf.probs.resize(cells);
  for (long k = k_lo; k <= k_hi; ++k) {
    const double a = (2.0 * k - 1.0) * r;
    const double b = (2.0 * k + 1.0) * r;
    pmf.levels[k - k_lo] = 2.0 * k * r;
    pmf.probs[k - k_lo] = normal_interval_mass((a - mean) / sd, (b - mean) / sd);
  }
  // Residual tail mass folds into the extreme cells.
  pmf.probs.front() += normal_cdf(((2.0 * k_lo - 1.0) * r - mean) / sd);
  pmf.probs.back() += normal_sf(((2.0 * k_hi + 1.0) * r - mean) / sd);
  return pmf;
}

ScorePmf partition_pmf(const HypothesisPair& pair, const QuantizerSpec& q,
                       Hypothesis hyp) {
  const LLRStats stats = llr_stats(pair);
  const auto& breaks = q.breakpoints();
  ScorePmf pmf;
  pmf.hypothesis = hyp;
  pmf.levels = q.levels();
  pmf.probs.assign(pmf.levels.size(), 0.0);
  if (stats.var_u == 0.0) {
    // All LLR mass sits at 0; cells are (b[i-1], b[i]].
    std::size_t idx = std::lower_bound(breaks.begin(), breaks.end(), 0.0) -
                      breaks.begin();
    pmf.probs[idx] = 1.0;
    return pmf;
  }
  const double sd = std::sqrt(stats.var_u);
  const double mean = hyp == Hypothesis::H0 ? stats.d_pq : -stats.d_pq;
  pmf.probs.front() = normal_cdf((breaks.front() - mean) / sd);
  for (std::size_t i = 1; i < breaks.size(); ++i)
    pmf.probs[i] =
        normal_interval_mass((breaks[i - 1] - mean) / sd, (breaks[i] - mean) / sd);
  pmf.probs.back() = normal_sf((breaks.back() - mean) / sd);
  return pmf;
}

}  // namespace

ScorePmf cell_pmf(const HypothesisPair& pair, const QuantizerSpec& q,
                  Hypothesis hyp, int k_max) {
  if (q.is_lattice()) return lattice_pmf(pair, q.radius(), hyp, k_max);
  return partition_pmf(pair, q, hyp);
}

double score_entropy(const ScorePmf& pmf) {
  double h = 0.0;
  for (double p : pmf.probs)
    if (p > 0.0) h -= p * std::log(p);
  return std::max(0.0, h);
}

double score_mean(const ScorePmf& pmf) {
  double m = 0.0;
  for (std::size_t i = 0; i < pmf.probs.size(); ++i)
    m += pmf.probs[i] * pmf.levels[i];
  return m;
}

double score_variance(const ScorePmf& pmf) {
  const double m = score_mean(pmf);
  double v = 0.0;
  for (std::size_t i = 0; i < pmf.probs.size(); ++i) {
    const double d = pmf.levels[i] - m;
    v += pmf.probs[i] * d * d;
  }
  return v;
}

double quantized_divergence(const ScorePmf& pmf_p, const ScorePmf& pmf_q) {
  if (pmf_p.levels != pmf_q.levels)
    throw std::invalid_argument("quantized_divergence: level sets differ");
  double s = 0.0;
  for (std::size_t i = 0; i < pmf_p.probs.size(); ++i) {
    const double p = pmf_p.probs[i];
    if (p <= 0.0) continue;
    const double q = pmf_q.probs[i];
    if (q <= 0.0)
      throw std::domain_error(
          "quantized_divergence: absolute continuity violated (q-cell has "
          "zero mass where p-cell is positive)");
    s += p * std::log(p / q);
  }
  return std::max(0.0, s);
}

double quantizer_gap(const HypothesisPair& pair, const QuantizerSpec& q) {
  // gap = log E_P[e^(S-L)] - E_P[S-L]. Tilting P by e^-L is exactly the H1
  // law, so E_P[e^(S-L)] = E_Q[e^S] and E_P[S-L] = E_P[S] - D(P||Q); both
  // reduce to cell sums. The log-sum-exp keeps e^S from overflowing.
  const ScorePmf pmf_p = cell_pmf(pair, q, Hypothesis::H0);
  const ScorePmf pmf_q = cell_pmf(pair, q, Hypothesis::H1);
  double peak = -std::numeric_limits<double>::infinity();
  for (std::size_t i = 0; i < pmf_q.probs.size(); ++i)
    if (pmf_q.probs[i] > 0.0)
      peak = std::max(peak, pmf_q.levels[i] + std::log(pmf_q.probs[i]));
  double acc = 0.0;
  for (std::size_t i = 0; i < pmf_q.probs.size(); ++i)
    if (pmf_q.probs[i] > 0.0)
      acc += std::exp(pmf_q.levels[i] + std::log(pmf_q.probs[i]) - peak);
  const double log_eq_es = peak + std::log(acc);
  const double d = llr_stats(pair).d_pq;
  return std::max(0.0, log_eq_es - score_mean(pmf_p) + d);
}

std::pair<double, double> code_length_bounds(double h_nats) {
  if (!(h_nats >= 0.0))
    throw std::invalid_argument("code_length_bounds: entropy must be >= 0");
  const double upper = h_nats * kLog2E;
  const double lower = upper - std::log2(upper + 1.0) - kLog2E;
  return {std::max(0.0, lower), upper};
}

double h1_rate_bound(double pmf_q_entropy_nats, double d_qp_nats) {
  if (!(pmf_q_entropy_nats >= 0.0) || !(d_qp_nats >= 0.0))
    throw std::invalid_argument("h1_rate_bound: inputs must be >= 0");
  return (pmf_q_entropy_nats + d_qp_nats) * kLog2E;
}

}  // namespace dht
