// Integration checks for the command-line tool. argv[1] is the path to the
// built binary; everything runs inside a scratch directory under TMPDIR.

#include <json.hpp>

#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>
#include <sys/wait.h>
#include <unistd.h>
#include <vector>

namespace fs = std::filesystem;
using nlohmann::json;

namespace {

int g_failures = 0;
std::string g_cli;
fs::path g_dir;

void check(bool ok, const std::string& what) {
  std::printf("%s %s\n", ok ? "ok  " : "FAIL", what.c_str());
  if (!ok) ++g_failures;
}

int run(const std::string& args) {
  const std::string cmd =
      g_cli + " " + args + " > " + (g_dir / "stdout.txt").string() + " 2> " +
      (g_dir / "stderr.txt").string();
  const int status = std::system(cmd.c_str());
  if (status == -1) return -1;
  return WIFEXITED(status) ? WEXITSTATUS(status) : -1;
}

std::string slurp(const fs::path& p) {
  std::ifstream in(p, std::ios::binary);
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

void write(const fs::path& p, const std::string& body) {
  std::ofstream out(p, std::ios::binary);
  out << body;
}

std::vector<std::pair<double, double>> read_csv(const fs::path& p) {
  std::ifstream in(p);
  std::string line;
  std::getline(in, line);  // header
  std::vector<std::pair<double, double>> rows;
  while (std::getline(in, line)) {
    const auto comma = line.find(',');
    rows.emplace_back(std::stod(line.substr(0, comma)),
                      std::stod(line.substr(comma + 1)));
  }
  return rows;
}

const char* kFig2 = R"({ "nodes": [ { "mu0": 0.0, "mu1": 4.4721359549995793, "sigma": 1.0 } ] })";
const char* kWeak = R"({ "nodes": [ { "mu0": 0.0, "mu1": 0.44721359549995794, "sigma": 1.0, "r": 0.5 } ],
  "epsilon": 0.02, "t": 30, "trials": 20000, "seed": 42 })";
const char* kTrio = R"({ "nodes": [ { "mu0": 0.0, "mu1": 0.44721359549995794, "sigma": 1.0 },
  { "mu0": 0.0, "mu1": 0.63245553203367587, "sigma": 1.0 },
  { "mu0": 0.0, "mu1": 0.77459666924148338, "sigma": 1.0 } ] })";

void test_curves() {
  const std::string scn = (g_dir / "fig2.json").string();
  write(scn, kFig2);

  check(run("curves --scenario " + scn + " --out " + (g_dir / "c1").string() +
            " --k 1,2,4") == 0,
        "curves exits 0");
  check(run("curves --scenario " + scn + " --out " + (g_dir / "c2").string() +
            " --k 1,2,4") == 0,
        "curves exits 0 on rerun");
  for (const char* f : {"lower.csv", "upper.csv", "sl.csv", "fisher.csv",
                        "lattice.csv", "lower_k2.csv", "upper_k4.csv"})
    check(slurp(g_dir / "c1" / f) == slurp(g_dir / "c2" / f) &&
              !slurp(g_dir / "c1" / f).empty(),
          std::string("deterministic output: ") + f);

  check(slurp(g_dir / "c1" / "lower_k1.csv") == slurp(g_dir / "c1" / "lower.csv"),
        "k=1 lower curve is byte-identical to the base curve");
  check(slurp(g_dir / "c1" / "upper_k1.csv") == slurp(g_dir / "c1" / "upper.csv"),
        "k=1 upper curve is byte-identical to the base curve");

  check(run("curves --scenario " + scn + " --out " + (g_dir / "cj").string() +
            " --format json --k 1") == 0,
        "json curves exit 0");
  check(slurp(g_dir / "cj" / "lower_k1.json") == slurp(g_dir / "cj" / "lower.json"),
        "k=1 json curve is byte-identical to the base curve");
  const json lower = json::parse(slurp(g_dir / "cj" / "lower.json"));
  check(lower["x_label"] == "delta_nats" && lower["y_label"] == "rate_nats",
        "json curve labels");

  // Units flag rescales only the rate column, by exactly log2(e).
  check(run("curves --scenario " + scn + " --out " + (g_dir / "cb").string() +
            " --units bits") == 0,
        "bits curves exit 0");
  const auto nats = read_csv(g_dir / "c1" / "lower.csv");
  const auto bits = read_csv(g_dir / "cb" / "lower.csv");
  bool units_ok = nats.size() == bits.size() && !nats.empty();
  for (std::size_t i = 0; units_ok && i < nats.size(); ++i) {
    units_ok = nats[i].first == bits[i].first &&
               bits[i].second == nats[i].second * 1.4426950408889634074;
  }
  check(units_ok, "bits output = nats output * log2(e), same gap column");
  const std::string header = slurp(g_dir / "cb" / "lower.csv").substr(0, 20);
  check(header.rfind("delta_nats,rate_bits", 0) == 0, "bits header labels");

  // The emitted files reproduce the bound ordering in the mid range.
  const auto sl = read_csv(g_dir / "c1" / "sl.csv");
  const auto upper = read_csv(g_dir / "c1" / "upper.csv");
  bool ordered = sl.size() == nats.size() && upper.size() == nats.size();
  for (std::size_t i = 0; ordered && i < nats.size(); ++i)
    ordered = nats[i].second <= sl[i].second + 1e-9 &&
              sl[i].second <= upper[i].second + 1e-9;
  check(ordered, "lower <= SL <= upper across the emitted gap grid");

  check(run("curves --scenario " + scn + " --out " + (g_dir / "cx").string() +
            " --dpoints 1") == 2,
        "empty delta grid is a usage error (exit 2)");
  write(g_dir / "broken.json", R"({ "nodes": [ { "mu0": 0 } ] })");
  check(run("curves --scenario " + (g_dir / "broken.json").string() +
            " --out " + (g_dir / "cx").string()) == 2,
        "malformed scenario is a usage error (exit 2)");
  check(run("curves --scenario " + (g_dir / "missing.json").string() +
            " --out " + (g_dir / "cx").string()) == 2,
        "missing scenario file is a usage error (exit 2)");
}

void test_simulate() {
  const std::string scn = (g_dir / "weak.json").string();
  write(scn, kWeak);
  const std::string r1 = (g_dir / "rep1.json").string();
  const std::string r2 = (g_dir / "rep2.json").string();
  check(run("simulate --scenario " + scn + " --out " + r1) == 0, "simulate exits 0");
  check(run("simulate --scenario " + scn + " --out " + r2) == 0, "simulate rerun");
  check(slurp(r1) == slurp(r2) && !slurp(r1).empty(),
        "fixed seed gives identical report files");
  const json rep = json::parse(slurp(r1));
  check(rep["beta_hat"]["ci95_hi"].get<double>() <=
            rep["markov_bound"].get<double>(),
        "reported beta CI is below the Markov bound");
  check(rep["trials"] == 20000 && rep["t"] == 30, "report carries the config");
  check(run("simulate --scenario " + scn + " --out " + r1 + " --trials 0") == 2,
        "trials=0 is a usage error (exit 2)");
}

void test_allocate() {
  const std::string scn = (g_dir / "trio.json").string();
  write(scn, kTrio);
  check(run("allocate --scenario " + scn + " --out " + (g_dir / "a").string() +
            " --rsum 6") == 0,
        "allocate exits 0");
  const json a = json::parse(slurp(g_dir / "a" / "allocation.json"));
  double sum = 0.0;
  for (double r : a["rates"]) sum += r;
  check(std::abs(sum - 6.0) < 1e-9, "allocation rates sum to the budget");
  check(std::abs(a["mu"].get<double>() - 1.0871538448) < 1e-9, "water level");
  const auto solid = read_csv(g_dir / "a" / "sum_rate.csv");
  const auto node3 = read_csv(g_dir / "a" / "node3.csv");
  bool dominates = solid.size() == node3.size();
  for (std::size_t i = 0; dominates && i < solid.size(); ++i)
    dominates = solid[i].second >= node3[i].second - 1e-12;
  check(dominates, "sum-rate curve dominates the per-node curve");
  check(run("allocate --scenario " + scn + " --out " + (g_dir / "a3").string() +
            " --rsum 2000") == 3,
        "absurd budget fails numerically (exit 3)");
}

void test_search() {
  const std::string scn = (g_dir / "fig2.json").string();
  check(run("search --scenario " + scn + " --out " + (g_dir / "s1").string() +
            " --levels 1 --bins 200") == 0,
        "search exits 0");
  const auto env = read_csv(g_dir / "s1" / "envelope.csv");
  check(env.size() == 1 && env[0].first == 0.0 && env[0].second == 0.0,
        "one quantization level yields the flat zero envelope");
  check(run("search --scenario " + scn + " --out " + (g_dir / "s2").string() +
            " --levels 4 --bins 400") == 0,
        "search with 4 levels exits 0");
  const json pts = json::parse(slurp(g_dir / "s2" / "points.json"));
  check(pts["points"].size() > 3, "search emits a frontier");
  bool sane = true;
  for (const auto& p : pts["points"])
    sane = sane && p["exponent_nats"].get<double>() <= 10.0 + 1e-9 &&
           p["exponent_nats"].get<double>() >= 0.0;
  check(sane, "frontier exponents stay within [0, D]");
}

}  // namespace

int main(int argc, char** argv) {
  if (argc < 2) {
    std::cerr << "usage: dht_cli_tests <path-to-cli>\n";
    return 2;
  }
  g_cli = argv[1];
  g_dir = fs::temp_directory_path() /
          ("dht_cli_test_" + std::to_string(::getpid()));
  fs::create_directories(g_dir);

  test_curves();
  test_simulate();
  test_allocate();
  test_search();

  fs::remove_all(g_dir);
  if (g_failures) {
    std::printf("%d CLI check(s) failed\n", g_failures);
    return 1;
  }
  std::printf("all CLI checks passed\n");
  return 0;
}
