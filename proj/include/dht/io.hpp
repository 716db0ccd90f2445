#pragma once

#include <string>

#include <json.hpp>

#include "dht/alloc.hpp"
#include "dht/curve.hpp"
#include "dht/quant.hpp"
#include "dht/sim.hpp"

namespace dht {

/// A scenario file: `{"nodes": [{"mu0":..,"mu1":..,"sigma":..,"r":..}, ...],
/// "epsilon":.., "t":.., "trials":.., "seed":..}`. Per-node "r" and the
/// top-level simulation fields are optional; loaders below say which they
/// require.
struct Scenario {
  std::vector<HypothesisPair> nodes;
  std::vector<double> radii;  ///< 0 where the node entry had no "r"
  double epsilon = 0.0;
  long t = 0;
  long trials = 0;
  std::uint64_t seed = 0;
  bool has_epsilon = false, has_t = false, has_trials = false, has_seed = false;
};

/// Parses and validates a scenario document. Throws dht::config_error with a
/// field-level message on any problem.
Scenario parse_scenario(const nlohmann::json& doc);
Scenario load_scenario(const std::string& path);

nlohmann::json to_json(const ScorePmf& pmf);
nlohmann::json to_json(const Curve& c);
nlohmann::json to_json(const AllocationResult& r);
nlohmann::json to_json(const SimulationReport& r);

}  // namespace dht
