#include <doctest.h>

#include <cmath>
#include <stdexcept>
#include <vector>

#include "dht/alloc.hpp"
#include "dht/bounds.hpp"
#include "dht/core_model.hpp"
#include "dht/rng.hpp"
#include "test_scenarios.hpp"

using namespace dht;

namespace {

std::vector<NodeBoundInput> trio() {
  std::vector<NodeBoundInput> nodes;
  for (const auto& p : dht_test::trio_nodes()) {
    const auto s = llr_stats(p);
    nodes.push_back({s.d_pq, s.h_u});
  }
  return nodes;
}

}  // namespace

TEST_CASE("trio entropies match the closed form") {
  const auto nodes = trio();
  CHECK(nodes[0].h == doctest::Approx(0.61421957698762255).epsilon(1e-12));
  CHECK(nodes[1].h == doctest::Approx(0.96079316726759521).epsilon(1e-12));
  CHECK(nodes[2].h == doctest::Approx(1.1635257213216774).epsilon(1e-12));
}

TEST_CASE("node contribution: zero rate carries nothing, m = 1 reduces cleanly") {
  const auto nodes = trio();
  CHECK(node_exponent_bound(nodes[2], 0.0) == 0.0);
  const double r = 1.3;
  CHECK(node_exponent_bound(nodes[2], r) ==
        doctest::Approx(nodes[2].d - invert_lower(r, nodes[2].h)).epsilon(1e-12));
  CHECK(multi_node_upper(nodes, std::vector<double>{0.0, 0.0, 0.0}) == 0.0);
}

TEST_CASE("multi_node_upper at equal rates, frozen value") {
  const auto nodes = trio();
  CHECK(multi_node_upper(nodes, std::vector<double>{2.0, 2.0, 2.0}) ==
        doctest::Approx(0.589026222604).epsilon(1e-9));
  CHECK_THROWS_AS(multi_node_upper(nodes, std::vector<double>{1.0}),
                  std::invalid_argument);
}

TEST_CASE("waterfill splits evenly across identical nodes") {
  std::vector<NodeBoundInput> same{{0.2, 0.9}, {0.2, 0.9}, {0.2, 0.9}, {0.2, 0.9}};
  const auto res = waterfill(same, 3.0);
  for (double r : res.rates) CHECK(r == doctest::Approx(0.75).epsilon(1e-10));
}

TEST_CASE("waterfill on the trio at r_sum = 6: all nodes active") {
  const auto nodes = trio();
  const auto res = waterfill(nodes, 6.0);
  CHECK(res.rates[0] == doctest::Approx(1.7013734218).epsilon(1e-9));
  CHECK(res.rates[1] == doctest::Approx(2.0479470121).epsilon(1e-9));
  CHECK(res.rates[2] == doctest::Approx(2.2506795661).epsilon(1e-9));
  CHECK(res.mu == doctest::Approx(1.0871538448).epsilon(1e-9));
  double sum = 0.0;
  for (double r : res.rates) sum += r;
  CHECK(std::abs(sum - 6.0) <= 1e-9);
  REQUIRE(res.active.size() == 3);
  for (int i : res.active)
    CHECK(std::abs(res.rates[i] - nodes[i].h - res.mu) < 1e-9);
  CHECK(res.theta_bound == doctest::Approx(0.590026534833).epsilon(1e-9));
  CHECK(!res.clamped);
  CHECK(res.theta_unclamped == res.theta_bound);
}

TEST_CASE("waterfill starves low-entropy nodes at tiny budgets") {
  const auto nodes = trio();
  const auto res = waterfill(nodes, 0.1);
  CHECK(res.rates[0] == 0.0);
  CHECK(res.rates[1] == 0.0);
  CHECK(res.rates[2] == doctest::Approx(0.1).epsilon(1e-9));
  CHECK(res.mu == doctest::Approx(0.1 - nodes[2].h).epsilon(1e-8));
  // Inactive nodes sit strictly above the water level.
  CHECK(-nodes[0].h > res.mu);
  CHECK(-nodes[1].h > res.mu);
  CHECK(res.theta_bound == doctest::Approx(0.07168489041).epsilon(1e-8));
  CHECK_THROWS_AS(waterfill(nodes, -1.0), std::invalid_argument);
}

TEST_CASE("KKT residuals across a budget sweep") {
  const auto nodes = trio();
  for (double rsum : {0.05, 0.3, 1.0, 2.5, 6.0, 12.0}) {
    const auto res = waterfill(nodes, rsum);
    double sum = 0.0;
    for (std::size_t i = 0; i < nodes.size(); ++i) {
      sum += res.rates[i];
      if (res.rates[i] > 0.0)
        CHECK(std::abs(res.rates[i] - nodes[i].h - res.mu) < 1e-9);
      else
        CHECK(-nodes[i].h >= res.mu - 1e-9);
    }
    CHECK(std::abs(sum - rsum) <= 1e-9);
  }
}

TEST_CASE("sum-rate curve: endpoints, saturation, monotonicity") {
  const auto nodes = trio();
  std::vector<double> grid;
  for (int i = 0; i <= 80; ++i) grid.push_back(i * 0.1);
  const Curve c = sum_rate_curve(nodes, grid);
  CHECK(c.points.front().x == 0.0);
  CHECK(c.points.front().y == 0.0);
  for (std::size_t i = 1; i < c.points.size(); ++i)
    CHECK(c.points[i].y >= c.points[i - 1].y - 1e-12);
  const auto sat = waterfill(nodes, 50.0);
  CHECK(std::abs(sat.theta_bound - 0.6) <= 1e-3);
}

TEST_CASE("nodes join the active set exactly where mu crosses -h_i") {
  const auto nodes = trio();
  // With entropies h1 < h2 < h3, node 2 activates at budget h3 - h2 and
  // node 1 at (h3 - h1) + (h2 - h1).
  const double join2 = nodes[2].h - nodes[1].h;
  const double join1 = (nodes[2].h - nodes[0].h) + (nodes[1].h - nodes[0].h);
  CHECK(waterfill(nodes, join2 - 0.01).active.size() == 1);
  CHECK(waterfill(nodes, join2 + 0.01).active.size() == 2);
  CHECK(waterfill(nodes, join1 - 0.01).active.size() == 2);
  CHECK(waterfill(nodes, join1 + 0.01).active.size() == 3);
}

TEST_CASE("water-filling dominates random feasible splits") {
  const auto nodes = trio();
  const auto unclamped = [&](const std::vector<double>& rates) {
    double s = 0.0;
    for (std::size_t i = 0; i < nodes.size(); ++i)
      s += nodes[i].d - invert_lower(rates[i], nodes[i].h);
    return s;
  };
  SplitMix64 rng(314159);
  for (double rsum : {0.5, 2.0, 6.0}) {
    const auto wf = waterfill(nodes, rsum);
    for (int trial = 0; trial < 100; ++trial) {
      double w[3], tot = 0.0;
      for (double& x : w) tot += (x = -std::log(rng.next_unit()));
      std::vector<double> rates{rsum * w[0] / tot, rsum * w[1] / tot,
                                rsum * w[2] / tot};
      // The water-filling split is the optimum of the unconstrained-sign
      // objective at every budget.
      CHECK(wf.theta_unclamped >= unclamped(rates) - 1e-12);
      // Away from active-set boundaries the clamped value agrees and the
      // dominance carries over.
      if (rsum >= 2.0)
        CHECK(wf.theta_bound >= multi_node_upper(nodes, rates) - 1e-12);
    }
  }
}

TEST_CASE("a starved node makes the clamped and unclamped bounds disagree") {
  // At small budgets the water level zeroes low-entropy nodes; their
  // rate-zero contribution is dropped by the clamp while the raw formula
  // keeps d - delta(-h). The result carries both values and a flag.
  const auto res = waterfill(trio(), 0.5);
  CHECK(res.active.size() < 3);
  CHECK(res.clamped);
  CHECK(res.theta_unclamped > res.theta_bound);
}

TEST_CASE("adding a node never hurts the optimum") {
  const auto nodes = trio();
  std::vector<NodeBoundInput> two(nodes.begin(), nodes.begin() + 2);
  for (double rsum : {0.2, 1.0, 4.0, 10.0}) {
    CHECK(waterfill(nodes, rsum).theta_bound >=
          waterfill(two, rsum).theta_bound - 1e-12);
  }
}
