#include "dht/io.hpp"

#include <fstream>

#include "dht/errors.hpp"

namespace dht {

namespace {

double require_number(const nlohmann::json& obj, const char* key,
                      const char* where) {
  if (!obj.contains(key))
    throw config_error(std::string(where) + ": missing field '" + key + "'");
  if (!obj[key].is_number())
    throw config_error(std::string(where) + ": field '" + key +
                       "' must be a number");
  return obj[key].get<double>();
}

}  // namespace

Scenario parse_scenario(const nlohmann::json& doc) {
  if (!doc.is_object() || !doc.contains("nodes") || !doc["nodes"].is_array() ||
      doc["nodes"].empty())
    throw config_error("scenario: expected an object with a non-empty 'nodes' array");
  Scenario s;
  for (const auto& n : doc["nodes"]) {
    HypothesisPair pair;
    pair.mu0 = require_number(n, "mu0", "scenario node");
    pair.mu1 = require_number(n, "mu1", "scenario node");
    pair.sigma = require_number(n, "sigma", "scenario node");
    try {
      validate(pair);
    } catch (const std::invalid_argument& e) {
      throw config_error(std::string("scenario node: ") + e.what());
    }
    s.nodes.push_back(pair);
    double r = 0.0;
    if (n.contains("r")) {
      r = n["r"].get<double>();
      if (!(r > 0.0)) throw config_error("scenario node: 'r' must be > 0");
    }
    s.radii.push_back(r);
  }
  if (doc.contains("epsilon")) {
    s.epsilon = doc["epsilon"].get<double>();
    s.has_epsilon = true;
  }
  if (doc.contains("t")) {
    if (!doc["t"].is_number_integer())
      throw config_error("scenario: 't' must be an integer");
    s.t = doc["t"].get<long>();
    s.has_t = true;
  }
  if (doc.contains("trials")) {
    if (!doc["trials"].is_number_integer())
      throw config_error("scenario: 'trials' must be an integer");
    s.trials = doc["trials"].get<long>();
    s.has_trials = true;
  }
  if (doc.contains("seed")) {
    s.seed = doc["seed"].get<std::uint64_t>();
    s.has_seed = true;
  }
  return s;
}

Scenario load_scenario(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw config_error("cannot open scenario file: " + path);
  nlohmann::json doc;
  try {
    in >> doc;
  } catch (const nlohmann::json::exception& e) {
    throw config_error("scenario file " + path + ": " + e.what());
  }
  return parse_scenario(doc);
}

nlohmann::json to_json(const ScorePmf& pmf) {
  return {{"levels", pmf.levels},
          {"probs", pmf.probs},
          {"hypothesis", pmf.hypothesis == Hypothesis::H0 ? "H0" : "H1"}};
}

nlohmann::json to_json(const Curve& c) {
  nlohmann::json points = nlohmann::json::array();
  for (const CurvePoint& p : c.points) points.push_back({p.x, p.y});
  return {{"name", c.name},
          {"x_label", axis_name(c.x_label)},
          {"y_label", axis_name(c.y_label)},
          {"points", points},
          {"flags", c.flags}};
}

nlohmann::json to_json(const AllocationResult& r) {
  return {{"rates", r.rates},
          {"mu", r.mu},
          {"theta_bound", r.theta_bound},
          {"theta_unclamped", r.theta_unclamped},
          {"active", r.active},
          {"clamped", r.clamped}};
}

namespace {
nlohmann::json ci_json(const EstimateCI& e) {
  return {{"estimate", e.estimate}, {"ci95_lo", e.lo}, {"ci95_hi", e.hi}};
}
}  // namespace

nlohmann::json to_json(const SimulationReport& r) {
  return {{"alpha_hat", ci_json(r.alpha_hat)},
          {"beta_hat", ci_json(r.beta_hat)},
          {"trials", r.trials},
          {"t", r.horizon},
          {"epsilon", r.epsilon},
          {"empirical_rate_h0_bits", r.rate_h0_bits},
          {"empirical_rate_h1_bits", r.rate_h1_bits},
          {"d_f_total_nats", r.d_f_total_nats},
          {"markov_bound", r.markov_bound},
          {"chebyshev_bound", r.chebyshev_bound},
          {"seed", r.seed}};
}

}  // namespace dht
