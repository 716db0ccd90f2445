#pragma once

#include <cstdint>
#include <vector>

namespace dht {

enum class Hypothesis { H0, H1 };

/// A node's observation model: X ~ N(mu0, sigma^2) under H0 and
/// X ~ N(mu1, sigma^2) under H1. The log-likelihood ratio L = log dP/dQ of
/// such a pair is an affine function of X, hence itself Gaussian:
/// L ~ N(D, 2D) under H0 and L ~ N(-D, 2D) under H1, with
/// D = (mu0 - mu1)^2 / (2 sigma^2).
struct HypothesisPair {
  double mu0 = 0.0;
  double mu1 = 0.0;
  double sigma = 1.0;
};

/// Exact statistics of the LLR U under H0.
struct LLRStats {
  double d_pq;   ///< D(P||Q) = E_P[U], nats
  double var_u;  ///< Var(U) = 2 * d_pq
  double h_u;    ///< differential entropy h(U), nats (-inf when var_u == 0)
  double j_u;    ///< Fisher information J(U) = 1 / var_u (+inf when var_u == 0)
  double lip_l;  ///< Lipschitz constant of the regularity envelope v(u) = |u - D| / var_u
};

/// Throws std::invalid_argument unless sigma > 0 and all fields are finite.
void validate(const HypothesisPair& pair);

/// Closed-form LLR statistics. Throws on invalid pair.
LLRStats llr_stats(const HypothesisPair& pair);

/// n i.i.d. draws of the LLR under the stated hypothesis. Deterministic given
/// the seed; distinct (seed, hypothesis) pairs use independent substreams.
std::vector<double> sample_llr(const HypothesisPair& pair, Hypothesis hyp,
                               std::size_t n, std::uint64_t seed);

}  // namespace dht
