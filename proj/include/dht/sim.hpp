#pragma once

#include <cstdint>
#include <vector>

#include "dht/core_model.hpp"
#include "dht/quant.hpp"

namespace dht {

/// A network of nodes, one quantizer per node, tested over `horizon` steps
/// with the fusion threshold offset epsilon.
struct NetworkScenario {
  std::vector<HypothesisPair> nodes;
  std::vector<QuantizerSpec> quantizers;
  double epsilon = 0.0;
  long horizon = 1;
};

void validate(const NetworkScenario& scn);

/// Whether nodes send centered scores (S - E_P[S], fusion threshold -eps) or
/// raw scores (threshold sum_i E_P[S_i] - eps). The two are equivalent tests;
/// both are kept so the equivalence can be checked decision-by-decision.
enum class ThresholdMode { centered, raw };

/// One entry per trial; 1 = the fusion center declares H0.
std::vector<std::uint8_t> simulate_decisions(const NetworkScenario& scn,
                                             Hypothesis truth, long trials,
                                             std::uint64_t seed,
                                             ThresholdMode mode =
                                                 ThresholdMode::centered);

struct EstimateCI {
  double estimate;
  double lo;  ///< Wilson 95% interval
  double hi;
};

/// Wilson score interval at 95% for successes/trials.
EstimateCI wilson_interval(long successes, long trials);

struct SimulationReport {
  EstimateCI alpha_hat;                     ///< P(declare H1 | H0)
  EstimateCI beta_hat;                      ///< P(declare H0 | H1)
  long trials = 0;
  long horizon = 0;
  double epsilon = 0.0;
  std::vector<double> rate_h0_bits;         ///< per node, H_P(S) log2e
  std::vector<double> rate_h1_bits;         ///< per node, (H_Q(S)+D(Q||P)) log2e
  double d_f_total_nats = 0.0;              ///< sum of exact per-node D(P_f||Q_f)
  double markov_bound = 1.0;                ///< predicted beta ceiling
  double chebyshev_bound = 1.0;             ///< predicted alpha ceiling
  std::uint64_t seed = 0;
};

/// Runs `trials` independent trials under each hypothesis. Per-node score
/// means are taken from the exact cell pmfs, never estimated. Deterministic
/// given the seed, independent of any sharding: every (trial, node) pair
/// samples from its own derived substream.
SimulationReport run_simulation(const NetworkScenario& scn, long trials,
                                std::uint64_t seed);

/// min(1, exp(-t (d_f - epsilon))): the Markov/Chernoff ceiling on the
/// type-II error of the threshold test at exponent d_f.
double markov_beta_bound(double d_f_nats, double epsilon, long t);

/// min(1, var_s / (epsilon^2 t)): Chebyshev ceiling on the type-I error.
/// var_s is the per-step variance of the total network score under H0.
double chebyshev_alpha_bound(double var_s, double epsilon, long t);

}  // namespace dht
