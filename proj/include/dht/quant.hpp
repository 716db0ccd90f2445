#pragma once

#include <utility>
#include <vector>

#include "dht/core_model.hpp"

namespace dht {

/// Either a lattice quantizer of covering radius r (cells ((2k-1)r, (2k+1)r]
/// with output 2kr, k integer) or an explicit interval partition of the LLR
/// axis with one output level per cell. Cell edges belong to the cell on
/// their left (ties resolve to the smaller index).
class QuantizerSpec {
 public:
  static QuantizerSpec lattice(double radius);
  static QuantizerSpec partition(std::vector<double> breakpoints,
                                 std::vector<double> levels);

  bool is_lattice() const noexcept { return is_lattice_; }
  double radius() const;
  const std::vector<double>& breakpoints() const;
  const std::vector<double>& levels() const;

 private:
  QuantizerSpec() = default;
  bool is_lattice_ = true;
  double radius_ = 0.0;
  std::vector<double> breakpoints_;
  std::vector<double> levels_;
};

/// Nearest lattice point 2kr to u; a tie (u equidistant from two points)
/// resolves to the smaller k. Throws std::invalid_argument for r <= 0.
double lattice_quantize(double r, double u);

/// Distribution of the quantized score under one hypothesis.
struct ScorePmf {
  std::vector<double> levels;
  std::vector<double> probs;
  Hypothesis hypothesis = Hypothesis::H0;
};

/// Exact cell probabilities of the quantized LLR via Gaussian CDF differences.
/// Lattice cells span the union of both hypotheses' supports (each mean plus
/// and minus 8 LLR standard deviations) so that the H0 and H1 pmfs of the same
/// quantizer share one level set; residual tail mass is folded into the two
/// extreme cells. Passing k_max > 0 forces the cell range k in [-k_max, k_max]
/// instead.
ScorePmf cell_pmf(const HypothesisPair& pair, const QuantizerSpec& q,
                  Hypothesis hyp, int k_max = 0);

/// Shannon entropy in nats, 0 log 0 := 0.
double score_entropy(const ScorePmf& pmf);

/// Mean and variance of the score under the pmf's hypothesis.
double score_mean(const ScorePmf& pmf);
double score_variance(const ScorePmf& pmf);

/// KL divergence sum p log(p/q) in nats; the type-II exponent of the
/// Neyman-Pearson test on quantized scores. Requires identical level sets and
/// q > 0 wherever p > 0 (throws std::domain_error otherwise).
double quantized_divergence(const ScorePmf& pmf_p, const ScorePmf& pmf_q);

/// Exact gap log E_P[e^(S-L)] - E_P[S-L] of a quantizer, evaluated through
/// the tilted-measure identity E_P[e^(S-L)] = E_Q[e^S] (cell sums under H1).
double quantizer_gap(const HypothesisPair& pair, const QuantizerSpec& q);

/// Expected-codeword-length bracket in bits for a score of entropy h nats:
/// (H log2e - log2(H log2e + 1) - log2e, H log2e), lower bound clamped at 0.
std::pair<double, double> code_length_bounds(double h_nats);

/// Upper bound in bits on the expected length under H1 of a lossless code
/// designed for H0: (H_Q(S) + D(Q||P)) log2e.
double h1_rate_bound(double pmf_q_entropy_nats, double d_qp_nats);

}  // namespace dht
