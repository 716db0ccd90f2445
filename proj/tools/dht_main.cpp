// Command-line front end: emits bound/achievability curves, runs the
// node/fusion-center Monte Carlo, the sum-rate water-filling allocator and
// the brute-force quantizer search, as CSV/JSON files.

#include <CLI11.hpp>
#include <json.hpp>

#include <cstdio>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <string>
#include <vector>

#include "dht/alloc.hpp"
#include "dht/bounds.hpp"
#include "dht/errors.hpp"
#include "dht/io.hpp"
#include "dht/search.hpp"
#include "dht/sim.hpp"

namespace fs = std::filesystem;
using dht::Curve;

namespace {

constexpr double kLog2E = 1.4426950408889634074;
constexpr int kExitUsage = 2;
constexpr int kExitNumeric = 3;

struct Options {
  std::string scenario;
  std::string out;
  std::string format = "csv";
  std::string units = "nats";
  std::uint64_t seed = 0;
  bool seed_set = false;
  long trials = 0;
  bool trials_set = false;
  long t = 0;
  bool t_set = false;
  double epsilon = 0.0;
  bool epsilon_set = false;
  double r = 0.0;
  std::vector<int> k_list;
  double rsum = -1.0;
  bool rsum_set = false;
  int levels = 8;
  int bins = 2000;
  int threads = 0;
  double dmin = 1e-4;
  double dmax = 0.0;  // 0 = up to d_pq
  int dpoints = 200;
  double rmax = 8.0;
  int rpoints = 161;
};

void convert_rate_axis(Curve& c, bool bits) {
  if (!bits) return;
  if (c.x_label == dht::Axis::rate_nats) {
    c.x_label = dht::Axis::rate_bits;
    for (auto& p : c.points) p.x *= kLog2E;
  }
  if (c.y_label == dht::Axis::rate_nats) {
    c.y_label = dht::Axis::rate_bits;
    for (auto& p : c.points) p.y *= kLog2E;
  }
}

void write_text(const fs::path& path, const std::string& content) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw dht::config_error("cannot write " + path.string());
  out << content;
}

void write_curve(const Curve& c, const fs::path& dir, const std::string& stem,
                 const std::string& format, bool bits) {
  Curve converted = c;
  convert_rate_axis(converted, bits);
  if (format == "json")
    write_text(dir / (stem + ".json"), dht::to_json(converted).dump(2) + "\n");
  else
    write_text(dir / (stem + ".csv"), dht::to_csv(converted));
}

dht::HypothesisPair single_node(const dht::Scenario& s) {
  if (s.nodes.size() != 1)
    throw dht::config_error("this subcommand expects a single-node scenario");
  return s.nodes[0];
}

std::vector<double> delta_grid_for(const dht::LLRStats& stats,
                                   const Options& opt) {
  if (opt.dpoints < 2)
    throw dht::config_error("delta grid needs at least 2 points");
  const double hi = opt.dmax > 0.0 ? opt.dmax : stats.d_pq;
  if (!(opt.dmin > 0.0) || !(hi > opt.dmin))
    throw dht::config_error("empty or inverted delta grid");
  return dht::log_grid(opt.dmin, hi, opt.dpoints);
}

int cmd_curves(const Options& opt) {
  const dht::Scenario scn = dht::load_scenario(opt.scenario);
  const dht::LLRStats stats = dht::llr_stats(single_node(scn));
  if (!(stats.d_pq > 0.0))
    throw dht::config_error("curves: degenerate pair (d_pq = 0) has no curves");
  const std::vector<double> grid = delta_grid_for(stats, opt);
  const bool bits = opt.units == "bits";
  fs::create_directories(opt.out);

  write_curve(dht::vector_scaled_curve(dht::BoundSide::lower, stats.var_u, 1, grid),
              opt.out, "lower", opt.format, bits);
  write_curve(dht::vector_scaled_curve(dht::BoundSide::upper, stats.var_u, 1, grid),
              opt.out, "upper", opt.format, bits);
  write_curve(dht::sl_curve(stats.d_pq, stats.var_u, grid), opt.out, "sl",
              opt.format, bits);
  write_curve(dht::fisher_upper_curve(stats.h_u, stats.j_u, grid), opt.out,
              "fisher", opt.format, bits);

  Curve lattice;
  lattice.name = "lattice";
  lattice.x_label = dht::Axis::delta_nats;
  lattice.y_label = dht::Axis::rate_nats;
  for (double d : grid) {
    const double r = dht::lattice_radius_for_gap(d);
    lattice.points.push_back(
        {d, dht::lattice_rate_at_radius(stats.h_u, stats.j_u, stats.lip_l, r)});
  }
  write_curve(lattice, opt.out, "lattice", opt.format, bits);

  for (int k : opt.k_list) {
    if (k < 1) throw dht::config_error("--k entries must be >= 1");
    write_curve(dht::vector_scaled_curve(dht::BoundSide::lower, stats.var_u, k, grid),
                opt.out, "lower_k" + std::to_string(k), opt.format, bits);
    write_curve(dht::vector_scaled_curve(dht::BoundSide::upper, stats.var_u, k, grid),
                opt.out, "upper_k" + std::to_string(k), opt.format, bits);
  }
  return 0;
}

int cmd_simulate(const Options& opt) {
  const dht::Scenario scn = dht::load_scenario(opt.scenario);
  dht::NetworkScenario net;
  net.nodes = scn.nodes;
  for (std::size_t i = 0; i < scn.nodes.size(); ++i) {
    const double r = opt.r > 0.0 ? opt.r : scn.radii[i];
    if (!(r > 0.0))
      throw dht::config_error("simulate: node " + std::to_string(i) +
                              " has no quantizer radius (set \"r\" or --r)");
    net.quantizers.push_back(dht::QuantizerSpec::lattice(r));
  }
  net.epsilon = opt.epsilon_set ? opt.epsilon : scn.epsilon;
  if (!opt.epsilon_set && !scn.has_epsilon)
    throw dht::config_error("simulate: epsilon not given");
  net.horizon = opt.t_set ? opt.t : scn.t;
  if (!opt.t_set && !scn.has_t) throw dht::config_error("simulate: t not given");
  long trials = 200'000;  // default trial count
  if (opt.trials_set)
    trials = opt.trials;
  else if (scn.has_trials)
    trials = scn.trials;
  if (trials < 1) throw dht::config_error("simulate: trials must be >= 1");
  const std::uint64_t seed = opt.seed_set ? opt.seed : scn.seed;

  const dht::SimulationReport rep = dht::run_simulation(net, trials, seed);
  write_text(opt.out, dht::to_json(rep).dump(2) + "\n");
  return 0;
}

int cmd_allocate(const Options& opt) {
  const dht::Scenario scn = dht::load_scenario(opt.scenario);
  std::vector<dht::NodeBoundInput> nodes;
  for (const auto& pair : scn.nodes) {
    const dht::LLRStats st = dht::llr_stats(pair);
    if (!(st.var_u > 0.0))
      throw dht::config_error("allocate: degenerate node (d_pq = 0)");
    nodes.push_back({st.d_pq, st.h_u});
  }
  if (opt.rpoints < 2 || !(opt.rmax > 0.0))
    throw dht::config_error("allocate: invalid sum-rate grid");
  std::vector<double> grid(opt.rpoints);
  for (int i = 0; i < opt.rpoints; ++i)
    grid[i] = opt.rmax * i / (opt.rpoints - 1);

  const bool bits = opt.units == "bits";
  fs::create_directories(opt.out);
  write_curve(dht::sum_rate_curve(nodes, grid), opt.out, "sum_rate",
              opt.format, bits);
  for (std::size_t i = 0; i < nodes.size(); ++i) {
    Curve c;
    c.name = "node" + std::to_string(i + 1);
    c.x_label = dht::Axis::rate_nats;
    c.y_label = dht::Axis::theta_nats;
    for (double rte : grid)
      c.points.push_back({rte, dht::node_exponent_bound(nodes[i], rte)});
    write_curve(c, opt.out, c.name, opt.format, bits);
  }
  if (opt.rsum_set) {
    if (opt.rsum < 0.0) throw dht::config_error("--rsum must be >= 0");
    write_text(fs::path(opt.out) / "allocation.json",
               dht::to_json(dht::waterfill(nodes, opt.rsum)).dump(2) + "\n");
  }
  return 0;
}

int cmd_search(const Options& opt) {
  const dht::Scenario scn = dht::load_scenario(opt.scenario);
  const dht::HypothesisPair pair = single_node(scn);
  if (opt.levels < 1) throw dht::config_error("--levels must be >= 1");
  if (opt.bins < 2) throw dht::config_error("--bins must be >= 2");
  const dht::BinnedLLR binned = dht::discretize_llr(pair, opt.bins);
  const std::vector<double> lambdas = dht::default_lambda_grid();
  const auto points =
      dht::lagrangian_sweep(binned, opt.levels, lambdas, opt.threads);
  const Curve envelope = dht::envelope_two_point(points);

  const bool bits = opt.units == "bits";
  fs::create_directories(opt.out);
  write_curve(envelope, opt.out, "envelope", opt.format, bits);
  nlohmann::json dump = nlohmann::json::array();
  for (const auto& p : points)
    dump.push_back({{"rate_nats", p.rate_nats},
                    {"exponent_nats", p.exponent_nats},
                    {"thresholds", p.thresholds}});
  write_text(fs::path(opt.out) / "points.json",
             nlohmann::json{{"points", dump}}.dump(2) + "\n");
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Fundamental-limit curves for distributed hypothesis testing "
               "under memoryless quantization"};
  app.require_subcommand(1);
  Options opt;

  auto add_common = [&](CLI::App* sub, bool out_is_dir) {
    sub->add_option("--scenario", opt.scenario, "scenario JSON file")
        ->required();
    sub->add_option("--out", opt.out,
                    out_is_dir ? "output directory" : "output file")
        ->required();
    sub->add_option("--format", opt.format, "csv or json")
        ->check(CLI::IsMember({"csv", "json"}));
    sub->add_option("--units", opt.units, "rate units in emitted curves")
        ->check(CLI::IsMember({"nats", "bits"}));
    sub->add_option("--threads", opt.threads, "worker threads (0 = all cores)");
  };

  CLI::App* curves = app.add_subcommand("curves", "emit bound curves");
  add_common(curves, true);
  curves->add_option("--dmin", opt.dmin, "smallest gap value");
  curves->add_option("--dmax", opt.dmax, "largest gap value (0 = D(P||Q))");
  curves->add_option("--dpoints", opt.dpoints, "grid size");
  curves->add_option("--k", opt.k_list, "vector-quantization block sizes")
      ->delimiter(',');

  CLI::App* simulate = app.add_subcommand("simulate", "run the Monte Carlo pipeline");
  add_common(simulate, false);
  simulate->add_option("--seed", opt.seed)->each([&](std::string) { opt.seed_set = true; });
  simulate->add_option("--trials", opt.trials)->each([&](std::string) { opt.trials_set = true; });
  simulate->add_option("--t", opt.t, "horizon")->each([&](std::string) { opt.t_set = true; });
  simulate->add_option("--epsilon", opt.epsilon)->each([&](std::string) { opt.epsilon_set = true; });
  simulate->add_option("--r", opt.r, "lattice radius override for all nodes");

  CLI::App* allocate = app.add_subcommand("allocate", "sum-rate water-filling");
  add_common(allocate, true);
  allocate->add_option("--rsum", opt.rsum, "also solve one allocation")
      ->each([&](std::string) { opt.rsum_set = true; });
  allocate->add_option("--rmax", opt.rmax, "sum-rate grid upper end");
  allocate->add_option("--rpoints", opt.rpoints, "sum-rate grid size");

  CLI::App* search = app.add_subcommand("search", "brute-force quantizer oracle");
  add_common(search, true);
  search->add_option("--levels", opt.levels, "max quantizer levels");
  search->add_option("--bins", opt.bins, "LLR discretization bins");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    std::cerr << e.what() << "\n";
    return kExitUsage;
  }

  try {
    if (curves->parsed()) return cmd_curves(opt);
    if (simulate->parsed()) return cmd_simulate(opt);
    if (allocate->parsed()) return cmd_allocate(opt);
    if (search->parsed()) return cmd_search(opt);
  } catch (const dht::config_error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitUsage;
  } catch (const std::invalid_argument& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitUsage;
  } catch (const dht::numeric_error& e) {
    std::cerr << "numeric error: " << e.what() << "\n";
    return kExitNumeric;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitNumeric;
  }
  return 0;
}
