#include <doctest.h>

#include <cmath>
#include <stdexcept>
#include <vector>

#include "dht/bounds.hpp"
#include "dht/curve.hpp"
#include "dht/search.hpp"
#include "test_scenarios.hpp"

using namespace dht;

namespace {

double clamped_rate_bound(double rate, double d, double h) {
  // theta*(R) can reach at most d - delta_lower(R - h), held inside [0, d].
  return std::min(d, std::max(0.0, d - invert_lower(rate, h)));
}

double binned_divergence(const BinnedLLR& b) {
  double s = 0.0;
  for (int k = 0; k < b.bins(); ++k)
    if (b.p[k] > 0.0) s += b.p[k] * std::log(b.p[k] / b.q[k]);
  return s;
}

}  // namespace

TEST_CASE("discretize_llr: the two-bin median split") {
  const BinnedLLR b = discretize_llr(dht_test::fig2_pair(), 2);
  REQUIRE(b.bins() == 2);
  CHECK(b.edges[1] == doctest::Approx(10.0).epsilon(1e-12));
  CHECK(b.p[0] == doctest::Approx(0.5).epsilon(1e-14));
  CHECK(b.p[1] == doctest::Approx(0.5).epsilon(1e-14));
  // Mass of the upper ray under H1: the LLR then sits at N(-10, 20).
  CHECK(b.q[1] == doctest::Approx(3.8721082155220418e-6).epsilon(1e-9));
}

TEST_CASE("discretize_llr masses sum to one") {
  const BinnedLLR b = discretize_llr(dht_test::fig2_pair(), 2000);
  double sp = 0.0, sq = 0.0;
  for (int k = 0; k < b.bins(); ++k) {
    sp += b.p[k];
    sq += b.q[k];
    if (b.p[k] > 0.0) CHECK(b.q[k] > 0.0);
  }
  CHECK(std::abs(sp - 1.0) <= 1e-10);
  CHECK(std::abs(sq - 1.0) <= 1e-10);
  CHECK(binned_divergence(b) ==
        doctest::Approx(9.999946667519975).epsilon(1e-12));
}

TEST_CASE("discretize_llr degenerate and error cases") {
  const BinnedLLR deg = discretize_llr(dht_test::degenerate_pair(), 100);
  REQUIRE(deg.bins() == 1);
  CHECK(deg.p[0] == 1.0);
  CHECK(deg.q[0] == 1.0);
  CHECK_THROWS_AS(discretize_llr(dht_test::fig2_pair(), 1), std::invalid_argument);
}

TEST_CASE("lagrangian_sweep: a constant score carries nothing") {
  const BinnedLLR b = discretize_llr(dht_test::fig2_pair(), 200);
  const std::vector<double> lambdas{0.0, 1.0};
  const auto pts = lagrangian_sweep(b, 1, lambdas);
  REQUIRE(pts.size() == 1);
  CHECK(pts[0].rate_nats == 0.0);
  CHECK(pts[0].exponent_nats == 0.0);
  CHECK(pts[0].thresholds.empty());
}

TEST_CASE("lagrangian_sweep: identity partition at lambda = 0") {
  const BinnedLLR b = discretize_llr(dht_test::fig2_pair(), 200);
  const std::vector<double> lambdas{0.0};
  const auto pts = lagrangian_sweep(b, 200, lambdas);
  REQUIRE(!pts.empty());
  CHECK(pts.back().exponent_nats ==
        doctest::Approx(binned_divergence(b)).epsilon(1e-12));
}

TEST_CASE("lagrangian_sweep: exponent grows with the level budget") {
  const BinnedLLR b = discretize_llr(dht_test::fig2_pair(), 400);
  const std::vector<double> lambdas{0.0};
  double prev = -1.0;
  for (int n : {2, 3, 4, 6}) {
    const auto pts = lagrangian_sweep(b, n, lambdas);
    CHECK(pts.back().exponent_nats >= prev - 1e-13);
    prev = pts.back().exponent_nats;
  }
}

TEST_CASE("lagrangian_sweep parameter validation") {
  const BinnedLLR b = discretize_llr(dht_test::fig2_pair(), 64);
  const std::vector<double> lambdas{0.1};
  CHECK_THROWS_AS(lagrangian_sweep(b, 65, lambdas), std::invalid_argument);
  CHECK_THROWS_AS(lagrangian_sweep(b, 0, lambdas), std::invalid_argument);
  CHECK_THROWS_AS(lagrangian_sweep(b, 2, std::vector<double>{}),
                  std::invalid_argument);
}

TEST_CASE("sweep points respect the closed-form ceiling") {
  const BinnedLLR b = discretize_llr(dht_test::fig2_pair(), 400);
  const auto lambdas = log_grid(1e-3, 1e2, 16);
  const auto pts = lagrangian_sweep(b, 4, lambdas);
  REQUIRE(!pts.empty());
  for (const auto& p : pts) {
    CHECK(p.exponent_nats >= 0.0);
    CHECK(p.exponent_nats <= 10.0 + 1e-12);
    if (p.rate_nats > 0.0)
      CHECK(p.exponent_nats <=
            clamped_rate_bound(p.rate_nats, 10.0, dht_test::kFig2Entropy) + 1e-9);
  }
  // Frontier comes out sorted and strictly improving.
  for (std::size_t i = 1; i < pts.size(); ++i) {
    CHECK(pts[i].rate_nats > pts[i - 1].rate_nats);
    CHECK(pts[i].exponent_nats > pts[i - 1].exponent_nats);
  }
}

TEST_CASE("envelope of a single point extends flat") {
  std::vector<RateExponentPoint> one{{1.5, 3.0, {}}};
  const Curve env = envelope_two_point(one);
  REQUIRE(env.points.size() == 1);
  CHECK(curve_value(env, 1.5) == 3.0);
  CHECK(curve_value(env, 100.0) == 3.0);
}

TEST_CASE("envelope of two points is their chord") {
  std::vector<RateExponentPoint> two{{0.0, 0.0, {}}, {2.0, 4.0, {}}};
  const Curve env = envelope_two_point(two);
  REQUIRE(env.points.size() == 2);
  CHECK(curve_value(env, 1.0) == doctest::Approx(2.0).epsilon(1e-15));
  CHECK(curve_value(env, 3.0) == 4.0);  // flat beyond the last point
}

TEST_CASE("envelope dominates every point at its own rate and is monotone") {
  const BinnedLLR b = discretize_llr(dht_test::fig2_pair(), 400);
  const auto lambdas = log_grid(1e-3, 1e2, 16);
  const auto pts = lagrangian_sweep(b, 4, lambdas);
  const Curve env = envelope_two_point(pts);
  for (const auto& p : pts)
    CHECK(curve_value(env, p.rate_nats) >= p.exponent_nats - 1e-12);
  for (std::size_t i = 1; i < env.points.size(); ++i) {
    CHECK(env.points[i].x > env.points[i - 1].x);
    CHECK(env.points[i].y >= env.points[i - 1].y);
  }
  CHECK_THROWS_AS(envelope_two_point(std::vector<RateExponentPoint>{}),
                  std::invalid_argument);
}
