#include "sparsify/ultra_sparse.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <optional>
#include <stdexcept>

#include "sparsify/baswana_sen.hpp"
#include "sparsify/derand.hpp"
#include "sparsify/random.hpp"

namespace sparsify {

double iterated_log(double value, int times) {
  for (int i = 0; i < times; ++i) {
    if (value <= 0) return -std::numeric_limits<double>::infinity();
    value = std::log2(value);
  }
  return value;
}

int phase_count(int node_count, double alpha0) {
  int phases = 0;
  while (iterated_log(node_count, phases + 1) >= alpha0) ++phases;
  return phases;
}

std::vector<double> x_sequence(int node_count, double alpha0) {
  const int phases = phase_count(node_count, alpha0);
  std::vector<double> xs;
  for (int i = 1; i <= phases; ++i) {
    xs.push_back(iterated_log(node_count, phases - i + 1) /
                 iterated_log(node_count, phases - i + 2));
  }
  return xs;
}

int phase_iterations(double x, bool weighted) {
  double factor = 1.0;
  const double lx = std::log2(x);
  if (lx > 0) {
    const double llx = std::log2(lx);
    factor += 2.0 * llx / lx;
  }
  const double g = (weighted ? 2.0 : 1.0) * x * factor;
  return std::max(1, static_cast<int>(std::ceil(g - 1e-9)));
}

XSeqCheck check_x_seq(double log2_alpha) {
  XSeqCheck c;
  c.alpha = std::exp2(log2_alpha);
  const double la = log2_alpha;
  const double lla = std::log2(la);
  c.x = c.alpha / la;
  c.y = la / lla;
  const double ly = std::log2(c.y);
  c.z = c.y * (1.0 + 2.0 * std::log2(ly) / ly);
  const double lx = la - lla;
  c.lower_holds = lx + std::log2(lx) <= la;
  c.upper_holds = la <= c.z * ly;
  return c;
}

LinearSizeResult linear_size_spanner_run(const Graph& graph,
                                         const LinearSizeOptions& options) {
  const std::vector<double> xs = x_sequence(graph.node_count(), options.alpha0);
  LinearSizeResult result;
  result.spanner = EdgeSet(graph.edge_count());

  std::optional<Graph> owned;
  const Graph* current = &graph;
  std::vector<EdgeId> to_base(graph.edge_count());
  for (EdgeId e = 0; e < graph.edge_count(); ++e) to_base[e] = e;

  auto absorb = [&](const GIterationResult& run, PhaseRecord& record) {
    for (EdgeId e : run.edges.ids()) result.spanner.insert(to_base[e]);
    record.edges_added = run.edges.size();
    record.surviving_clusters = run.clustering.cluster_count();
  };

  std::vector<int> phase_g;
  for (size_t i = 0; i < xs.size(); ++i) {
    PhaseRecord record;
    record.phase = static_cast<int>(i) + 1;
    record.x = xs[i];
    record.p = 1.0 / xs[i];
    record.iterations = phase_iterations(xs[i], options.weighted);
    record.nodes = current->node_count();
    record.edges = current->edge_count();
    const Sampler sampler =
        options.derandomized
            ? deterministic_sampler(record.p, record.iterations, options.iota)
            : random_sampler(record.p,
                             derive_seed(options.seed,
                                         {static_cast<uint64_t>(record.phase)}));
    const GIterationResult run = run_g_iterations(
        *current, record.iterations, sampler, options.weighted);
    absorb(run, record);
    result.phases.push_back(record);
    phase_g.push_back(record.iterations);

    ClusterGraph next = contract(*current, run.clustering, &run.alive);
    std::vector<EdgeId> next_to_base(next.graph.edge_count());
    for (EdgeId e = 0; e < next.graph.edge_count(); ++e) {
      next_to_base[e] = to_base[next.witness[e]];
    }
    to_base = std::move(next_to_base);
    owned.emplace(std::move(next.graph));
    current = &*owned;
  }

  PhaseRecord closing;
  closing.phase = static_cast<int>(xs.size()) + 1;
  closing.iterations = 1;
  closing.nodes = current->node_count();
  closing.edges = current->edge_count();
  const GIterationResult last =
      run_g_iterations(*current, 1, empty_sampler(), options.weighted);
  absorb(last, closing);
  if (closing.surviving_clusters != 0) {
    throw std::logic_error("closing pass left clusters alive");
  }
  result.phases.push_back(closing);

  // A phase's dead edges stretch at most 2g-1; the rest are covered by the
  // next level through the stretch-friendly clustering.
  int64_t alpha = 1;
  for (auto it = phase_g.rbegin(); it != phase_g.rend(); ++it) {
    alpha = std::max<int64_t>(2 * *it - 1, composed_stretch(*it, alpha));
  }
  result.stretch_bound = alpha;
  return result;
}

EdgeSet linear_size_spanner(const Graph& graph,
                            const LinearSizeOptions& options) {
  return linear_size_spanner_run(graph, options).spanner;
}

InnerSpanner whole_graph_inner() {
  return [](const Graph& g) { return EdgeSet::all(g); };
}

InnerSpanner baswana_sen_inner(int k, uint64_t seed) {
  return [k, seed](const Graph& g) {
    return baswana_sen_spanner(g, k, seed, g.weighted());
  };
}

InnerSpanner deterministic_bs_inner(int k) {
  return [k](const Graph& g) {
    return deterministic_spanner(g, k, g.weighted());
  };
}

InnerSpanner linear_size_inner(LinearSizeOptions options) {
  return [options](const Graph& g) {
    LinearSizeOptions o = options;
    o.weighted = g.weighted();
    return linear_size_spanner(g, o);
  };
}

EdgeSet ultra_sparse_spanner(const Graph& graph, int t,
                             const InnerSpanner& inner,
                             UltraSparseReport* report,
                             bool measure_inner_stretch) {
  if (t < 1) throw std::invalid_argument("t must be at least 1");
  const int n = graph.node_count();
  const std::vector<int> labels = connected_components(graph);
  const int components =
      labels.empty() ? 0 : *std::max_element(labels.begin(), labels.end()) + 1;
  const int64_t limit = static_cast<int64_t>(n) - components + n / t;

  UltraSparseReport local;
  local.edge_limit = limit;
  int parameter = t;
  while (true) {
    ++local.attempts;
    const Clustering clustering = stretch_friendly_partition(graph, parameter);
    const ClusterGraph cg = contract(graph, clustering);
    const EdgeSet inner_edges = inner(cg.graph);
    EdgeSet out = compose_spanner(graph, cg, inner_edges);
    if (out.size() <= limit) {
      local.partition_parameter = parameter;
      local.clusters = clustering.cluster_count();
      local.radius = clustering.max_radius();
      local.inner_edges = inner_edges.size();
      local.edges = out.size();
      if (measure_inner_stretch) {
        const StretchReport r = measure_stretch(cg.graph, inner_edges);
        local.inner_stretch = r.worst_ratio;
        local.stretch_bound =
            (2.0 * local.radius + 1) * (local.inner_stretch + 1) - 1;
      }
      if (report) *report = local;
      return out;
    }
    if (parameter >= n) {
      throw std::logic_error("ultra-sparse calibration did not converge");
    }
    // Edges per cluster-graph node, measured on this attempt.
    const double per_node =
        static_cast<double>(inner_edges.size()) /
        std::max(1, cg.graph.node_count());
    const int64_t scaled = static_cast<int64_t>(std::ceil(t * per_node));
    parameter = static_cast<int>(
        std::min<int64_t>(n, std::max<int64_t>(2 * int64_t{parameter}, scaled)));
  }
}

}  // namespace sparsify
