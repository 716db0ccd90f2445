#include "dht/core_model.hpp"

#include <cmath>
#include <limits>
#include <stdexcept>

#include "dht/rng.hpp"

namespace dht {

namespace {
constexpr double kTwoPiE = 17.0794684453471341;  // 2 pi e
constexpr std::uint64_t kH0Tag = 0x48300000u;
constexpr std::uint64_t kH1Tag = 0x48310000u;
}  // namespace

void validate(const HypothesisPair& pair) {
  if (!std::isfinite(pair.mu0) || !std::isfinite(pair.mu1) ||
      !std::isfinite(pair.sigma))
    throw std::invalid_argument("HypothesisPair: fields must be finite");
  if (!(pair.sigma > 0.0))
    throw std::invalid_argument("HypothesisPair: sigma must be > 0");
}

LLRStats llr_stats(const HypothesisPair& pair) {
  validate(pair);
  const double shift = pair.mu0 - pair.mu1;
  const double d = shift * shift / (2.0 * pair.sigma * pair.sigma);
  LLRStats s;
  s.d_pq = d;
  s.var_u = 2.0 * d;
  if (s.var_u > 0.0) {
    s.h_u = 0.5 * std::log(kTwoPiE * s.var_u);
    s.j_u = 1.0 / s.var_u;
    s.lip_l = 1.0 / s.var_u;  // v(u) = |u - D| / Var(U) is Lipschitz(1/Var)
  } else {
    s.h_u = -std::numeric_limits<double>::infinity();
    s.j_u = std::numeric_limits<double>::infinity();
    s.lip_l = std::numeric_limits<double>::infinity();
  }
  return s;
}

std::vector<double> sample_llr(const HypothesisPair& pair, Hypothesis hyp,
                               std::size_t n, std::uint64_t seed) {
  const LLRStats stats = llr_stats(pair);
  const double mean = hyp == Hypothesis::H0 ? stats.d_pq : -stats.d_pq;
  const double sd = std::sqrt(stats.var_u);
  NormalSampler sampler(
      derive_stream(seed, {hyp == Hypothesis::H0 ? kH0Tag : kH1Tag}));
  std::vector<double> out(n);
  for (double& v : out) v = mean + sd * sampler.next();
  return out;
}

}  // namespace dht
