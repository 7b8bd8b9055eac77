#include <cmath>
#include <fstream>
#include <iomanip>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "json.hpp"
#include "sparsify/baswana_sen.hpp"
#include "sparsify/certificate.hpp"
#include "sparsify/config.hpp"
#include "sparsify/derand.hpp"
#include "sparsify/generators.hpp"
#include "sparsify/ldc.hpp"
#include "sparsify/random.hpp"
#include "sparsify/ultra_sparse.hpp"

using namespace sparsify;
using Json = nlohmann::ordered_json;

namespace {

constexpr int kExitOk = 0;
constexpr int kExitVerifyFailed = 1;
constexpr int kExitUsage = 2;

class UsageError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Writes to the file when a path is given, else to stdout.
void emit(const std::string& path, const std::string& text) {
  if (path.empty() || path == "-") {
    std::cout << text;
    return;
  }
  std::ofstream out(path);
  if (!out) throw UsageError("cannot write " + path);
  out << text;
}

Graph load_graph(const std::string& path) {
  if (path.empty() || path == "-") return read_edge_list(std::cin);
  std::ifstream in(path);
  if (!in) throw UsageError("cannot read " + path);
  return read_edge_list(in);
}

// Same edge ids with unit weights.
Graph unit_weight_copy(const Graph& graph) {
  Graph copy(graph.node_count());
  for (const Edge& e : graph.edges()) copy.add_edge(e.u, e.v);
  return copy;
}

std::string edge_set_text(const EdgeSet& edges) {
  std::ostringstream out;
  write_edge_set(out, edges);
  return out.str();
}

// Finite doubles as numbers, infinity as the string "inf".
Json ratio_json(double value) {
  if (std::isinf(value)) return "inf";
  return value;
}

// ---- generate ----

struct GenerateArgs {
  std::string kind = "gnp";
  int n = 10;
  double p = 0.5;
  int k = 2;
  int rows = 4;
  int cols = 4;
  bool weighted = false;
  Weight max_weight = 1000;
  uint64_t seed = 1;
  std::string output;
};

Graph generate(const GenerateArgs& a) {
  const WeightSpec weights{a.weighted, a.max_weight};
  if (a.kind == "gnp") return gnp_graph(a.n, a.p, weights, a.seed);
  if (a.kind == "connected-gnp") return connected_gnp(a.n, a.p, weights, a.seed);
  if (a.kind == "cycle") return cycle_graph(a.n, weights, a.seed);
  if (a.kind == "path") return path_graph(a.n, weights, a.seed);
  if (a.kind == "grid") return grid_graph(a.rows, a.cols, weights, a.seed);
  if (a.kind == "complete") return complete_graph(a.n, weights, a.seed);
  if (a.kind == "tree") return random_tree(a.n, weights, a.seed);
  if (a.kind == "k-connected-random") {
    return k_connected_random(a.n, a.k, a.p, weights, a.seed);
  }
  throw UsageError("unknown graph kind " + a.kind);
}

int run_generate(const GenerateArgs& a) {
  std::ostringstream out;
  write_edge_list(out, generate(a));
  emit(a.output, out.str());
  return kExitOk;
}

// ---- spanner ----

struct SpannerArgs {
  std::string input;
  std::string algo = "bs";
  int k = 3;
  int t = 4;
  std::string inner = "bs";
  double alpha0 = 256;
  int iota = 64;
  bool unweighted = false;
  uint64_t seed = 1;
  bool verify = false;
  bool simulate = false;
  int budget_bits = 0;
  int max_rounds = 0;
  std::string output;
  std::string json;
};

struct SpannerOutcome {
  EdgeSet edges;
  int64_t edge_limit = -1;     // hard size bound, -1 if none
  double stretch_bound = -1;   // -1 when the algorithm carries none
  Json details = Json::object();
};

InnerSpanner make_inner(const SpannerArgs& a, bool weighted) {
  const int inner_k = std::max(1, a.k);
  if (a.inner == "bs") return baswana_sen_inner(inner_k, derive_seed(a.seed, {1}));
  if (a.inner == "bs-det") return deterministic_bs_inner(inner_k);
  if (a.inner == "whole") return whole_graph_inner();
  if (a.inner == "linear" || a.inner == "linear-det") {
    LinearSizeOptions options;
    options.weighted = weighted;
    options.derandomized = a.inner == "linear-det";
    options.seed = a.seed;
    options.alpha0 = a.alpha0;
    options.iota = a.iota;
    return linear_size_inner(options);
  }
  throw UsageError("unknown inner spanner " + a.inner);
}

SpannerOutcome compute_spanner(const Graph& g, const SpannerArgs& a) {
  const bool weighted = g.weighted() && !a.unweighted;
  SpannerOutcome out;
  if (a.algo == "bs" || a.algo == "bs-det") {
    if (a.k < 1) throw UsageError("k must be at least 1");
    out.edges = a.algo == "bs" ? baswana_sen_spanner(g, a.k, a.seed, weighted)
                               : deterministic_spanner(g, a.k, weighted, a.iota);
    out.stretch_bound = 2 * a.k - 1;
    out.details["k"] = a.k;
  } else if (a.algo == "linear" || a.algo == "linear-det") {
    LinearSizeOptions options;
    options.weighted = weighted;
    options.derandomized = a.algo == "linear-det";
    options.seed = a.seed;
    options.alpha0 = a.alpha0;
    options.iota = a.iota;
    const LinearSizeResult r = linear_size_spanner_run(g, options);
    out.edges = r.spanner;
    out.stretch_bound = static_cast<double>(r.stretch_bound);
    Json phases = Json::array();
    for (const PhaseRecord& ph : r.phases) {
      phases.push_back({{"phase", ph.phase}, {"x", ph.x}, {"p", ph.p},
                        {"iterations", ph.iterations}, {"nodes", ph.nodes},
                        {"edges_added", ph.edges_added},
                        {"surviving_clusters", ph.surviving_clusters}});
    }
    out.details["phases"] = phases;
  } else if (a.algo == "ultra") {
    if (a.t < 1) throw UsageError("t must be at least 1");
    UltraSparseReport report;
    out.edges = ultra_sparse_spanner(g, a.t, make_inner(a, weighted), &report, true);
    out.edge_limit = g.node_count() + (g.node_count() + a.t - 1) / a.t;
    out.stretch_bound = report.stretch_bound;
    out.details["t"] = a.t;
    out.details["inner"] = a.inner;
    out.details["partition_parameter"] = report.partition_parameter;
    out.details["clusters"] = report.clusters;
    out.details["radius"] = report.radius;
    out.details["inner_stretch"] = ratio_json(report.inner_stretch);
  } else if (a.algo == "ldc") {
    if (a.t < 1) throw UsageError("t must be at least 1");
    GrowAndCutResult details;
    out.edges = ldc_sparse_spanner(g, a.t, &details);
    out.edge_limit = g.node_count() + (g.node_count() + a.t - 1) / a.t;
    out.details["t"] = a.t;
    out.details["steps"] = details.steps.size();
    out.details["clusters"] = details.clustering.cluster_count();
    out.details["inter_edges"] = details.inter.size();
  } else {
    throw UsageError("unknown algo " + a.algo +
                     " (expected bs, bs-det, linear, linear-det, ultra, ldc)");
  }
  return out;
}

int run_spanner(const SpannerArgs& a) {
  const Graph loaded = load_graph(a.input);
  // ldc works on hop distances, so its stretch is measured without weights.
  const bool hop_metric = a.unweighted || a.algo == "ldc";
  const Graph g = hop_metric && loaded.weighted() ? unit_weight_copy(loaded) : loaded;
  const bool weighted = g.weighted();
  const SpannerOutcome outcome = compute_spanner(g, a);
  Json report;
  report["algo"] = a.algo;
  report["nodes"] = g.node_count();
  report["graph_edges"] = g.edge_count();
  report["edges"] = outcome.edges.size();
  report["seed"] = a.seed;
  report["weighted"] = weighted;
  for (const auto& [key, value] : outcome.details.items()) report[key] = value;
  if (outcome.edge_limit >= 0) report["edge_limit"] = outcome.edge_limit;
  if (outcome.stretch_bound >= 0) report["stretch_bound"] = ratio_json(outcome.stretch_bound);

  bool ok = true;
  if (a.verify) {
    const StretchReport measured = measure_stretch(g, outcome.edges);
    report["measured_stretch"] = ratio_json(measured.worst_ratio);
    if (outcome.stretch_bound >= 0) {
      // Integer bounds are checked exactly; composed bounds are rounded down.
      const auto alpha = static_cast<int64_t>(std::floor(outcome.stretch_bound + 1e-9));
      ok = ok && verify_stretch(g, outcome.edges, Stretch::of(std::max<int64_t>(1, alpha))).ok;
    } else {
      ok = ok && !std::isinf(measured.worst_ratio);
    }
    if (outcome.edge_limit >= 0) ok = ok && outcome.edges.size() <= outcome.edge_limit;
    report["verified"] = ok;
  }
  if (a.simulate) {
    if (a.algo == "bs") {
      const DistributedSpannerRun run =
          distributed_spanner(g, a.k, a.seed, weighted, a.budget_bits, a.max_rounds);
      report["rounds"] = run.trace.rounds_used;
      report["message_bits"] = run.trace.max_message_bits;
      report["budget_bits"] = a.budget_bits > 0 ? a.budget_bits
                                                : default_budget_bits(g.node_count());
      const bool same = run.spanner == outcome.edges;
      report["matches_centralized"] = same;
      ok = ok && same;
      report["trace"] = Json::parse(trace_to_json(run.trace));
    } else {
      report["simulation"] = "no node program for " + a.algo;
    }
  }
  emit(a.output, edge_set_text(outcome.edges));
  emit(a.json, report.dump(2) + "\n");
  return ok ? kExitOk : kExitVerifyFailed;
}

// ---- certificate ----

struct CertificateArgs {
  std::string input;
  int k = 2;
  double epsilon = 0.25;
  std::string variant = "small";
  double karger_constant = 3.0;
  uint64_t seed = 1;
  bool verify = false;
  std::string output;
  std::string json;
};

int run_certificate(const CertificateArgs& a) {
  const Graph g = load_graph(a.input);
  Json report;
  report["variant"] = a.variant;
  report["nodes"] = g.node_count();
  report["graph_edges"] = g.edge_count();
  report["k"] = a.k;
  report["epsilon"] = a.epsilon;
  report["seed"] = a.seed;
  EdgeSet cert;
  if (a.variant == "small") {
    SmallKReport details;
    cert = certificate_small_k(g, a.k, a.epsilon, a.seed, &details);
    report["skeleton_parameter"] = details.skeleton_parameter;
  } else if (a.variant == "large") {
    LargeKOptions options;
    options.karger_constant = a.karger_constant;
    LargeKReport details;
    cert = certificate_large_k(g, a.k, a.epsilon, a.seed, options, &details);
    report["parts"] = details.parts;
    report["part_k"] = details.part_k;
    report["inner_epsilon"] = details.inner_epsilon;
  } else {
    throw UsageError("unknown certificate variant " + a.variant + " (small or large)");
  }
  const double bound = g.node_count() * static_cast<double>(a.k) * (1 + a.epsilon);
  report["edges"] = cert.size();
  report["edge_bound"] = bound;
  report["approximation_ratio"] = g.node_count() > 0
                                      ? cert.size() / (g.node_count() * a.k / 2.0)
                                      : 0.0;
  bool ok = true;
  if (a.verify) {
    const CertificateReport check = verify_certificate(g, cert, a.k);
    report["verify_mode"] = check.mode == VerifyMode::kEnumerate ? "enumerate" : "min-cut";
    if (check.mode == VerifyMode::kEnumerate) {
      report["cuts_checked"] = check.cuts_checked;
      if (!check.ok) {
        report["failing_cut"] = check.failing_cut;
        report["cut_size"] = check.cut_size;
        report["cut_kept"] = check.cut_kept;
      }
    } else {
      report["graph_connectivity"] = check.graph_connectivity;
      report["certificate_connectivity"] = check.certificate_connectivity;
    }
    ok = check.ok && cert.size() <= bound;
    report["verified"] = ok;
  }
  emit(a.output, edge_set_text(cert));
  emit(a.json, report.dump(2) + "\n");
  return ok ? kExitOk : kExitVerifyFailed;
}

// ---- bench ----

std::vector<int> int_list(const KeyValueConfig& config, const std::string& key) {
  std::vector<int> values;
  for (const std::string& item : config.get_list(key)) values.push_back(std::stoi(item));
  return values;
}

std::string fixed(double value, int digits) {
  if (std::isinf(value)) return "inf";
  std::ostringstream out;
  out << std::fixed << std::setprecision(digits) << value;
  return out.str();
}

// n k + n^{1+1/k} ln k, the size shape of the clustering spanners.
double clustering_shape(int n, int k) {
  return static_cast<double>(n) * k + std::pow(n, 1.0 + 1.0 / k) * std::log(k);
}

struct BenchRow {
  std::string algo;
  int n = 0;
  int param = 0;
  double edges = 0;
  double edges_bound = 0;
  double stretch = 1;
  double stretch_bound = -1;  // -1 when no algorithm bound applies
  std::string rounds = "-";
  int seeds = 0;
  bool pass = true;
};

BenchRow bench_cell(const KeyValueConfig& config, const std::string& algo, int n,
                    int param) {
  const double p = config.get_double("p");
  const bool weighted = config.get_bool("weighted", false);
  const auto base_seed = static_cast<uint64_t>(config.get_int("seed"));
  const int seeds = static_cast<int>(config.get_int("seeds"));
  BenchRow row;
  row.algo = algo;
  row.n = n;
  row.param = param;
  row.seeds = seeds;
  int max_rounds = 0;
  for (int s = 0; s < seeds; ++s) {
    const uint64_t seed = derive_seed(base_seed, {static_cast<uint64_t>(s)});
    const Graph generated = connected_gnp(n, p, {weighted, 1000}, seed);
    const Graph g = algo == "ldc" && weighted ? unit_weight_copy(generated) : generated;
    SpannerArgs args;
    args.algo = algo;
    args.k = param;
    args.t = param;
    args.seed = seed;
    args.alpha0 = config.has("alpha0") ? config.get_double("alpha0") : 4.0;
    const SpannerOutcome outcome = compute_spanner(g, args);
    row.edges += outcome.edges.size();
    const double stretch = measure_stretch(g, outcome.edges).worst_ratio;
    row.stretch = std::max(row.stretch, stretch);
    row.stretch_bound = std::max(row.stretch_bound, outcome.stretch_bound);
    if (outcome.stretch_bound >= 0) {
      row.pass = row.pass && stretch <= outcome.stretch_bound + 1e-9;
    } else {
      row.pass = row.pass && !std::isinf(stretch);
    }
    if (outcome.edge_limit >= 0) row.pass = row.pass && outcome.edges.size() <= outcome.edge_limit;
    if (algo == "bs") {
      const DistributedSpannerRun run = distributed_spanner(g, param, seed, weighted);
      row.pass = row.pass && run.spanner == outcome.edges;
      max_rounds = std::max(max_rounds, run.trace.rounds_used);
    }
  }
  row.edges /= seeds;
  if (algo == "bs" || algo == "bs-det") {
    const char* key = algo == "bs" ? "bs_size_constant" : "det_size_constant";
    row.edges_bound = config.get_double(key) * clustering_shape(n, param);
  } else if (algo == "linear" || algo == "linear-det") {
    row.edges_bound = config.get_double("linear_size_constant") * n;
  } else {
    row.edges_bound = n + (n + param - 1) / param;
  }
  row.pass = row.pass && row.edges <= row.edges_bound;
  if (algo == "bs") {
    row.rounds = std::to_string(max_rounds);
    row.pass = row.pass && max_rounds <= config.get_double("rounds_constant") * param;
  }
  return row;
}

int run_bench(const std::string& config_path, const std::string& csv_path) {
  const KeyValueConfig config = KeyValueConfig::load(config_path);
  std::ostringstream csv;
  csv << "algo,n,k/t,edges,edges_bound,stretch,stretch_bound,rounds,seeds,pass\n";
  bool all_pass = true;
  for (const std::string& algo : config.get_list("algos")) {
    const bool uses_t = algo == "ultra" || algo == "ldc";
    const bool uses_k = algo == "bs" || algo == "bs-det";
    const std::vector<int> params =
        uses_t ? int_list(config, "t") : uses_k ? int_list(config, "k") : std::vector<int>{0};
    for (int n : int_list(config, "n")) {
      for (int param : params) {
        const BenchRow row = bench_cell(config, algo, n, param);
        all_pass = all_pass && row.pass;
        csv << row.algo << ',' << row.n << ',' << (param > 0 ? std::to_string(param) : "-")
            << ',' << fixed(row.edges, 1) << ',' << fixed(row.edges_bound, 1) << ','
            << fixed(row.stretch, 3) << ','
            << (row.stretch_bound >= 0 ? fixed(row.stretch_bound, 3) : "-") << ','
            << row.rounds << ',' << row.seeds << ',' << (row.pass ? "yes" : "no") << '\n';
      }
    }
  }
  emit(csv_path, csv.str());
  return all_pass ? kExitOk : kExitVerifyFailed;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Graph spanners, sparse connectivity certificates and a round simulator"};
  app.require_subcommand(1);
  app.set_config("--config", "", "Flat key=value file supplying option defaults");

  GenerateArgs gen;
  CLI::App* generate_cmd = app.add_subcommand("generate", "Write a seeded random graph");
  generate_cmd
      ->add_option("--kind", gen.kind,
                   "gnp, connected-gnp, cycle, path, grid, complete, tree, k-connected-random")
      ->capture_default_str();
  generate_cmd->add_option("--n", gen.n, "Node count")->capture_default_str();
  generate_cmd->add_option("--p", gen.p, "Edge probability")->capture_default_str();
  generate_cmd->add_option("--k", gen.k, "Connectivity for k-connected-random")
      ->capture_default_str();
  generate_cmd->add_option("--rows", gen.rows)->capture_default_str();
  generate_cmd->add_option("--cols", gen.cols)->capture_default_str();
  generate_cmd->add_flag("--weighted", gen.weighted, "Draw integer weights");
  generate_cmd->add_option("--max-weight", gen.max_weight)->capture_default_str();
  generate_cmd->add_option("--seed", gen.seed)->capture_default_str();
  generate_cmd->add_option("--output", gen.output, "Edge-list path (default stdout)");

  SpannerArgs sp;
  CLI::App* spanner_cmd = app.add_subcommand("spanner", "Compute a spanner of a graph");
  spanner_cmd->add_option("--input", sp.input, "Edge-list path (default stdin)");
  spanner_cmd->add_option("--algo", sp.algo, "bs, bs-det, linear, linear-det, ultra, ldc")
      ->capture_default_str();
  spanner_cmd->add_option("--k", sp.k, "Stretch parameter (stretch 2k-1)")->capture_default_str();
  spanner_cmd->add_option("--t", sp.t, "Sparsity parameter for ultra and ldc")
      ->capture_default_str();
  spanner_cmd->add_option("--inner", sp.inner, "Inner spanner for ultra: bs, bs-det, linear, "
                                               "linear-det, whole")
      ->capture_default_str();
  spanner_cmd->add_option("--alpha0", sp.alpha0, "Phase threshold of the linear-size spanner")
      ->capture_default_str();
  spanner_cmd->add_option("--iota", sp.iota, "Cluster-term scale of the derandomized sampler")
      ->capture_default_str();
  spanner_cmd->add_flag("--unweighted", sp.unweighted, "Ignore edge weights");
  spanner_cmd->add_option("--seed", sp.seed)->capture_default_str();
  spanner_cmd->add_flag("--verify", sp.verify, "Check stretch and size bounds");
  spanner_cmd->add_flag("--simulate", sp.simulate, "Replay in the round simulator (bs)");
  spanner_cmd->add_option("--budget-bits", sp.budget_bits, "Per-message budget, 0 = default");
  spanner_cmd->add_option("--max-rounds", sp.max_rounds, "Round cap, 0 = k+2");
  spanner_cmd->add_option("--output", sp.output, "Edge-set path (default stdout)");
  spanner_cmd->add_option("--json", sp.json, "JSON report path (default stdout)");

  CertificateArgs ce;
  CLI::App* cert_cmd =
      app.add_subcommand("certificate", "Compute a sparse k-edge-connectivity certificate");
  cert_cmd->add_option("--input", ce.input, "Edge-list path (default stdin)");
  cert_cmd->add_option("--k", ce.k)->capture_default_str();
  cert_cmd->add_option("--epsilon", ce.epsilon)->capture_default_str();
  cert_cmd->add_option("--variant", ce.variant, "small or large")->capture_default_str();
  cert_cmd->add_option("--karger-constant", ce.karger_constant, "Part-count constant (large)")
      ->capture_default_str();
  cert_cmd->add_option("--seed", ce.seed)->capture_default_str();
  cert_cmd->add_flag("--verify", ce.verify, "Check cuts (n <= 18) or connectivity");
  cert_cmd->add_option("--output", ce.output, "Edge-set path (default stdout)");
  cert_cmd->add_option("--json", ce.json, "JSON report path (default stdout)");

  std::string bench_config;
  std::string bench_csv;
  CLI::App* bench_cmd = app.add_subcommand("bench", "Run a benchmark config into a CSV table");
  bench_cmd->add_option("config", bench_config, "Flat key=value bench config")
      ->required()
      ->check(CLI::ExistingFile);
  bench_cmd->add_option("--csv", bench_csv, "CSV path (default stdout)");

  CLI11_PARSE(app, argc, argv);
  try {
    if (*generate_cmd) return run_generate(gen);
    if (*spanner_cmd) return run_spanner(sp);
    if (*cert_cmd) return run_certificate(ce);
    if (*bench_cmd) return run_bench(bench_config, bench_csv);
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitUsage;
  }
  return kExitUsage;
}
