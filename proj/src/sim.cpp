#include "dht/sim.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "dht/rng.hpp"

namespace dht {

namespace {
constexpr double kLog2E = 1.4426950408889634074;
constexpr double kZ95 = 1.959963984540054;

double quantize_with(const QuantizerSpec& q, double u) {
  if (q.is_lattice()) return lattice_quantize(q.radius(), u);
  const auto& breaks = q.breakpoints();
  const std::size_t idx =
      std::lower_bound(breaks.begin(), breaks.end(), u) - breaks.begin();
  return q.levels()[idx];
}
}  // namespace

void validate(const NetworkScenario& scn) {
  if (scn.nodes.empty())
    throw std::invalid_argument("NetworkScenario: no nodes");
  if (scn.nodes.size() != scn.quantizers.size())
    throw std::invalid_argument(
        "NetworkScenario: nodes and quantizers differ in length");
  if (!(scn.epsilon > 0.0))
    throw std::invalid_argument("NetworkScenario: epsilon must be > 0");
  if (scn.horizon < 1)
    throw std::invalid_argument("NetworkScenario: horizon must be >= 1");
  for (const auto& n : scn.nodes) validate(n);
}

std::vector<std::uint8_t> simulate_decisions(const NetworkScenario& scn,
                                             Hypothesis truth, long trials,
                                             std::uint64_t seed,
                                             ThresholdMode mode) {
  validate(scn);
  if (trials < 1)
    throw std::invalid_argument("simulate_decisions: trials must be >= 1");
  const std::size_t m = scn.nodes.size();
  const std::uint64_t truth_tag = truth == Hypothesis::H0 ? 0xa0u : 0xa1u;

  // Exact per-node score means under H0; the fusion threshold uses these,
  // never an estimate.
  std::vector<double> mean_p(m), llr_mean(m), llr_sd(m);
  double mean_total = 0.0;
  for (std::size_t i = 0; i < m; ++i) {
    mean_p[i] = score_mean(cell_pmf(scn.nodes[i], scn.quantizers[i], Hypothesis::H0));
    mean_total += mean_p[i];
    const LLRStats st = llr_stats(scn.nodes[i]);
    llr_mean[i] = truth == Hypothesis::H0 ? st.d_pq : -st.d_pq;
    llr_sd[i] = std::sqrt(st.var_u);
  }

  const double t = static_cast<double>(scn.horizon);
  std::vector<std::uint8_t> decisions(trials);
  for (long trial = 0; trial < trials; ++trial) {
    double acc = 0.0;
    for (std::size_t i = 0; i < m; ++i) {
      NormalSampler sampler(derive_stream(
          seed, {truth_tag, static_cast<std::uint64_t>(trial),
                 static_cast<std::uint64_t>(i)}));
      double node_acc = 0.0;
      for (long step = 0; step < scn.horizon; ++step) {
        const double llr = llr_mean[i] + llr_sd[i] * sampler.next();
        const double s = quantize_with(scn.quantizers[i], llr);
        node_acc += mode == ThresholdMode::centered ? s - mean_p[i] : s;
      }
      acc += node_acc;
    }
    const double avg = acc / t;
    const double threshold =
        mode == ThresholdMode::centered ? -scn.epsilon : mean_total - scn.epsilon;
    decisions[trial] = avg >= threshold ? 1 : 0;  // ties decide H0
  }
  return decisions;
}

EstimateCI wilson_interval(long successes, long trials) {
  if (trials < 1)
    throw std::invalid_argument("wilson_interval: trials must be >= 1");
  const double n = static_cast<double>(trials);
  const double p = static_cast<double>(successes) / n;
  const double z2 = kZ95 * kZ95;
  const double denom = 1.0 + z2 / n;
  const double center = (p + z2 / (2.0 * n)) / denom;
  const double half =
      kZ95 * std::sqrt(p * (1.0 - p) / n + z2 / (4.0 * n * n)) / denom;
  // The interval endpoints are exact at empirical 0 and 1.
  const double lo = successes == 0 ? 0.0 : std::max(0.0, center - half);
  const double hi = successes == trials ? 1.0 : std::min(1.0, center + half);
  return {p, lo, hi};
}

SimulationReport run_simulation(const NetworkScenario& scn, long trials,
                                std::uint64_t seed) {
  validate(scn);
  if (trials < 1)
    throw std::invalid_argument("run_simulation: trials must be >= 1");

  SimulationReport rep;
  rep.trials = trials;
  rep.horizon = scn.horizon;
  rep.epsilon = scn.epsilon;
  rep.seed = seed;

  double var_total = 0.0;
  for (std::size_t i = 0; i < scn.nodes.size(); ++i) {
    const ScorePmf pmf0 = cell_pmf(scn.nodes[i], scn.quantizers[i], Hypothesis::H0);
    const ScorePmf pmf1 = cell_pmf(scn.nodes[i], scn.quantizers[i], Hypothesis::H1);
    rep.d_f_total_nats += quantized_divergence(pmf0, pmf1);
    var_total += score_variance(pmf0);
    rep.rate_h0_bits.push_back(score_entropy(pmf0) * kLog2E);
    // D(Q||P) equals D(P||Q) for the shared-sigma Gaussian pair.
    rep.rate_h1_bits.push_back(
        h1_rate_bound(score_entropy(pmf1), llr_stats(scn.nodes[i]).d_pq));
  }
  rep.markov_bound = markov_beta_bound(rep.d_f_total_nats, scn.epsilon, scn.horizon);
  rep.chebyshev_bound = chebyshev_alpha_bound(var_total, scn.epsilon, scn.horizon);

  const auto dec_h0 = simulate_decisions(scn, Hypothesis::H0, trials, seed);
  const auto dec_h1 = simulate_decisions(scn, Hypothesis::H1, trials, seed);
  long false_alarms = 0, misses = 0;
  for (std::uint8_t d : dec_h0) false_alarms += d == 0;
  for (std::uint8_t d : dec_h1) misses += d == 1;
  rep.alpha_hat = wilson_interval(false_alarms, trials);
  rep.beta_hat = wilson_interval(misses, trials);
  return rep;
}

double markov_beta_bound(double d_f_nats, double epsilon, long t) {
  if (!(d_f_nats >= 0.0) || !(epsilon > 0.0) || t < 0)
    throw std::invalid_argument("markov_beta_bound: invalid inputs");
  return std::min(1.0, std::exp(-static_cast<double>(t) * (d_f_nats - epsilon)));
}

double chebyshev_alpha_bound(double var_s, double epsilon, long t) {
  if (!(var_s >= 0.0) || !(epsilon > 0.0) || t < 0)
    throw std::invalid_argument("chebyshev_alpha_bound: invalid inputs");
  if (t == 0) return 1.0;
  return std::min(1.0, var_s / (epsilon * epsilon * static_cast<double>(t)));
}

}  // namespace dht
