#include "sparsify/baswana_sen.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <tuple>

#include "sparsify/random.hpp"

namespace sparsify {

BSState BSState::initial(const Graph& graph, bool use_weights) {
  return from_clustering(graph, Clustering::singletons(graph.node_count()),
                         use_weights);
}

BSState BSState::from_clustering(const Graph& graph, Clustering clustering,
                                 bool use_weights, const EdgeSet* alive) {
  if (clustering.node_count() != graph.node_count()) {
    throw InvalidClustering("clustering size does not match graph");
  }
  BSState state;
  state.graph = &graph;
  state.use_weights = use_weights;
  state.alive_node.assign(graph.node_count(), 0);
  for (NodeId v = 0; v < graph.node_count(); ++v) {
    state.alive_node[v] = clustering.clustered(v) ? 1 : 0;
  }
  state.alive_edge.assign(graph.edge_count(), 0);
  for (const Edge& e : graph.edges()) {
    if (alive && !alive->contains(e.id)) continue;
    state.alive_edge[e.id] = state.alive_node[e.u] && state.alive_node[e.v];
  }
  state.clustering = std::move(clustering);
  state.spanner = EdgeSet(graph.edge_count());
  state.death_iteration.assign(graph.edge_count(), 0);
  return state;
}

EdgeSet BSState::alive_edges() const {
  EdgeSet out(graph->edge_count());
  for (EdgeId e = 0; e < graph->edge_count(); ++e) {
    if (alive_edge[e]) out.insert(e);
  }
  return out;
}

std::vector<AdjacentCluster> adjacent_clusters(const BSState& state,
                                               NodeId v) {
  const Clustering& clustering = state.clustering;
  std::vector<AdjacentCluster> all;
  for (const Incidence& inc : state.graph->neighbors(v)) {
    if (!state.alive_edge[inc.edge]) continue;
    const int c = clustering.cluster_of(inc.neighbor);
    all.push_back({c, clustering.cluster(c).root, state.weight(inc.edge),
                   inc.edge});
  }
  std::sort(all.begin(), all.end(), [](const auto& a, const auto& b) {
    return std::tie(a.cluster, a.weight, a.edge) <
           std::tie(b.cluster, b.weight, b.edge);
  });
  std::vector<AdjacentCluster> best;
  for (const AdjacentCluster& a : all) {
    if (best.empty() || best.back().cluster != a.cluster) best.push_back(a);
  }
  std::sort(best.begin(), best.end(), [](const auto& a, const auto& b) {
    return std::tie(a.weight, a.root, a.edge) <
           std::tie(b.weight, b.root, b.edge);
  });
  return best;
}

NodeDecision decide(const std::vector<AdjacentCluster>& adjacent,
                    bool own_sampled, const std::vector<char>& sampled_at) {
  NodeDecision d;
  if (own_sampled) {
    d.stays_put = true;
    return d;
  }
  const int count = static_cast<int>(adjacent.size());
  for (int j = 0; j < count; ++j) {
    if (!sampled_at[j]) continue;
    d.join_position = j;
    for (int i = 0; i < j; ++i) {
      if (adjacent[i].weight < adjacent[j].weight) d.added_positions.push_back(i);
    }
    d.added_positions.push_back(j);
    return d;
  }
  d.dies = true;
  for (int j = 0; j < count; ++j) d.added_positions.push_back(j);
  return d;
}

namespace {

void kill(BSState& state, EdgeId e) {
  if (!state.alive_edge[e]) return;
  state.alive_edge[e] = 0;
  state.death_iteration[e] = state.iteration;
}

}  // namespace

void advance(BSState& state, const SampleVector& samples,
             IterationStats* stats) {
  const Graph& graph = *state.graph;
  const Clustering& old = state.clustering;
  if (static_cast<int>(samples.size()) != old.cluster_count()) {
    throw std::invalid_argument("sample vector length " +
                                std::to_string(samples.size()) +
                                " does not match cluster count " +
                                std::to_string(old.cluster_count()));
  }
  IterationStats local;
  local.iteration = state.iteration;
  local.clusters_in = old.cluster_count();

  // Decisions use only the state at the start of the iteration.
  struct Pending {
    NodeId node;
    std::vector<AdjacentCluster> adjacent;
    NodeDecision decision;
  };
  std::vector<Pending> pending;
  for (NodeId v = 0; v < graph.node_count(); ++v) {
    if (!state.alive_node[v]) continue;
    const bool own = samples[old.cluster_of(v)] != 0;
    std::vector<AdjacentCluster> adjacent = adjacent_clusters(state, v);
    std::vector<char> sampled_at(adjacent.size());
    for (size_t j = 0; j < adjacent.size(); ++j) {
      sampled_at[j] = samples[adjacent[j].cluster];
    }
    NodeDecision decision = decide(adjacent, own, sampled_at);
    if (!decision.stays_put) {
      pending.push_back({v, std::move(adjacent), std::move(decision)});
    }
  }

  Clustering next(graph.node_count());
  for (int c = 0; c < old.cluster_count(); ++c) {
    if (!samples[c]) continue;
    const Cluster& cluster = old.cluster(c);
    next.add_cluster(cluster.root);
    std::vector<NodeId> members = cluster.members;
    std::stable_sort(members.begin(), members.end(), [&](NodeId a, NodeId b) {
      return old.depth(a) < old.depth(b);
    });
    for (NodeId v : members) {
      if (v != cluster.root) next.attach(v, old.parent(v), old.parent_edge(v));
    }
  }

  for (const Pending& p : pending) {
    const NodeId v = p.node;
    for (int pos : p.decision.added_positions) {
      const AdjacentCluster& a = p.adjacent[pos];
      state.spanner.insert(a.edge);
      // Every edge from v into a cluster it added an edge toward dies.
      for (const Incidence& inc : graph.neighbors(v)) {
        if (state.alive_edge[inc.edge] &&
            old.cluster_of(inc.neighbor) == a.cluster) {
          kill(state, inc.edge);
        }
      }
    }
    const int added = static_cast<int>(p.decision.added_positions.size());
    local.edges_added += added;
    if (p.decision.dies) {
      ++local.died;
      local.max_degree_of_dying =
          std::max(local.max_degree_of_dying,
                   static_cast<int>(p.adjacent.size()));
    } else {
      ++local.joined;
      local.max_added_by_survivor =
          std::max(local.max_added_by_survivor, added);
      const EdgeId via = p.adjacent[p.decision.join_position].edge;
      next.attach(v, graph.edge(via).other(v), via);
    }
  }

  for (NodeId v = 0; v < graph.node_count(); ++v) {
    if (!state.alive_node[v] || next.clustered(v)) continue;
    state.alive_node[v] = 0;
    for (const Incidence& inc : graph.neighbors(v)) kill(state, inc.edge);
  }

  state.clustering = std::move(next);
  ++state.iteration;
  local.clusters_out = state.clustering.cluster_count();
  if (stats) *stats = local;
}

BSState run_iteration(BSState state, const SampleVector& samples,
                      IterationStats* stats) {
  advance(state, samples, stats);
  return state;
}

bool cluster_sampled(uint64_t seed, NodeId root, int iteration, double p) {
  if (p <= 0.0) return false;
  return unit_interval(derive_seed(seed, {static_cast<uint64_t>(root),
                                          static_cast<uint64_t>(iteration)})) <
         p;
}

SampleVector random_samples(const BSState& state, double p, uint64_t seed) {
  SampleVector samples(state.cluster_count());
  for (int c = 0; c < state.cluster_count(); ++c) {
    samples[c] = cluster_sampled(seed, state.clustering.cluster(c).root,
                                 state.iteration, p);
  }
  return samples;
}

Sampler random_sampler(double p, uint64_t seed) {
  return [p, seed](const BSState& state) {
    return random_samples(state, p, seed);
  };
}

Sampler empty_sampler() {
  return [](const BSState& state) {
    return SampleVector(state.cluster_count(), 0);
  };
}

double bs_probability(int node_count, int k) {
  if (k < 1) throw std::invalid_argument("k must be at least 1");
  if (node_count < 2) return 0.0;
  return std::pow(static_cast<double>(node_count), -1.0 / k);
}

BSResult run_baswana_sen(const Graph& graph, int k, const Sampler& sampler,
                         bool use_weights, const IterationObserver& observer) {
  if (k < 1) throw std::invalid_argument("k must be at least 1");
  BSState state = BSState::initial(graph, use_weights);
  BSResult result;
  for (int i = 1; i <= k; ++i) {
    const SampleVector samples = i < k
                                     ? sampler(state)
                                     : SampleVector(state.cluster_count(), 0);
    IterationStats stats;
    advance(state, samples, &stats);
    result.iterations.push_back(stats);
    if (observer) observer(state);
  }
  result.spanner = std::move(state.spanner);
  result.death_iteration = std::move(state.death_iteration);
  return result;
}

EdgeSet baswana_sen_spanner(const Graph& graph, int k, uint64_t seed,
                            bool weighted) {
  const double p = bs_probability(graph.node_count(), k);
  return run_baswana_sen(graph, k, random_sampler(p, seed), weighted).spanner;
}

GIterationResult run_g_iterations(const Graph& graph, int g,
                                  const Sampler& sampler, bool use_weights) {
  if (g < 0) throw std::invalid_argument("g must be nonnegative");
  BSState state = BSState::initial(graph, use_weights);
  GIterationResult result;
  for (int i = 0; i < g; ++i) {
    IterationStats stats;
    advance(state, sampler(state), &stats);
    result.iterations.push_back(stats);
  }
  result.edges = std::move(state.spanner);
  result.alive = state.alive_edges();
  result.clustering = std::move(state.clustering);
  return result;
}

GIterationResult run_g_iterations(const Graph& graph, int g, double p,
                                  uint64_t seed, bool use_weights) {
  if (p < 0.0 || p >= 1.0) {
    throw std::invalid_argument("sampling probability must lie in [0, 1)");
  }
  return run_g_iterations(graph, g, random_sampler(p, seed), use_weights);
}

// ---------------------------------------------------------------------------
// Distributed version.
//
// Message on every edge alive at the start of an iteration:
//   dead (1 bit) | killed (1 bit) | root (width(n) bits)
// `root` is the sender's cluster root after the iteration.

namespace {

struct BSNodeState : NodeState {
  NodeId id = 0;
  int node_count = 0;
  uint64_t seed = 0;
  NodeId root = 0;
  std::vector<LocalEdge> edges;
  std::vector<char> alive;          // per local edge
  std::vector<NodeId> neighbor_root;
  std::vector<int64_t> added;
};

}  // namespace

InitResult DistributedBaswanaSen::init(const LocalView& view) const {
  auto state = std::make_unique<BSNodeState>();
  state->id = view.id;
  state->node_count = view.node_count;
  state->seed = view.seed;
  state->root = view.id;
  state->edges = view.edges;
  state->alive.assign(view.edges.size(), 1);
  state->neighbor_root.assign(view.edges.size(), kNoNode);
  InitResult result;
  result.state = std::move(state);
  if (view.edges.empty()) result.halt = Output{};
  return result;
}

StepResult DistributedBaswanaSen::step(NodeState& base, int round,
                                       const Inbox& inbox) const {
  auto& s = static_cast<BSNodeState&>(base);
  const int root_bits = MessageWriter::width(
      static_cast<uint64_t>(std::max(2, s.node_count)));
  const int degree = static_cast<int>(s.edges.size());
  StepResult result;

  auto send = [&](int slot, bool dead, bool killed) {
    MessageWriter w;
    w.put(dead ? 1 : 0, 1).put(killed ? 1 : 0, 1);
    w.put(static_cast<uint64_t>(s.root), root_bits);
    result.outbox[s.edges[slot].neighbor] = w.finish();
  };

  if (round == 1) {
    for (int j = 0; j < degree; ++j) send(j, false, false);
    return result;
  }

  for (int j = 0; j < degree; ++j) {
    if (!s.alive[j]) continue;
    auto it = inbox.find(s.edges[j].neighbor);
    if (it == inbox.end()) {
      s.alive[j] = 0;
      continue;
    }
    MessageReader r(it->second);
    const bool dead = r.get(1) != 0;
    const bool killed = r.get(1) != 0;
    const NodeId root = static_cast<NodeId>(r.get(root_bits));
    if (dead || killed) {
      s.alive[j] = 0;
    } else {
      s.neighbor_root[j] = root;
    }
  }

  const int iteration = round - 1;
  const double p =
      iteration < k_ ? bs_probability(s.node_count, k_) : 0.0;
  auto sampled = [&](NodeId root) {
    return cluster_sampled(s.seed, root, iteration, p);
  };

  // Same ordering as the centralized engine, with roots standing in for
  // cluster ids (both orders agree).
  std::vector<AdjacentCluster> adjacent;
  std::vector<int> slot_of;
  {
    std::vector<std::tuple<NodeId, Weight, EdgeId, int>> all;
    for (int j = 0; j < degree; ++j) {
      if (!s.alive[j]) continue;
      const Weight w = use_weights_ ? s.edges[j].weight : 1;
      all.emplace_back(s.neighbor_root[j], w, s.edges[j].edge, j);
    }
    std::sort(all.begin(), all.end());
    std::vector<std::tuple<Weight, NodeId, EdgeId, int>> best;
    for (size_t i = 0; i < all.size(); ++i) {
      if (i > 0 && std::get<0>(all[i]) == std::get<0>(all[i - 1])) continue;
      best.emplace_back(std::get<1>(all[i]), std::get<0>(all[i]),
                        std::get<2>(all[i]), std::get<3>(all[i]));
    }
    std::sort(best.begin(), best.end());
    for (const auto& [w, root, edge, slot] : best) {
      adjacent.push_back({static_cast<int>(root), root, w, edge});
      slot_of.push_back(slot);
    }
  }

  std::vector<char> sampled_at(adjacent.size());
  for (size_t j = 0; j < adjacent.size(); ++j) {
    sampled_at[j] = sampled(adjacent[j].root);
  }
  const NodeDecision decision = decide(adjacent, sampled(s.root), sampled_at);

  const std::vector<char> alive_at_start = s.alive;
  std::vector<char> killed(degree, 0);
  for (int pos : decision.added_positions) {
    s.added.push_back(adjacent[pos].edge);
    const NodeId target = adjacent[pos].root;
    for (int j = 0; j < degree; ++j) {
      if (s.alive[j] && s.neighbor_root[j] == target) killed[j] = 1;
    }
  }
  if (decision.join_position >= 0) {
    s.root = adjacent[decision.join_position].root;
  }
  for (int j = 0; j < degree; ++j) {
    if (!alive_at_start[j]) continue;
    send(j, decision.dies, killed[j] != 0);
    if (killed[j] || decision.dies) s.alive[j] = 0;
  }
  if (decision.dies) {
    std::sort(s.added.begin(), s.added.end());
    result.halt = s.added;
  }
  return result;
}

DistributedSpannerRun distributed_spanner(const Graph& graph, int k,
                                          uint64_t seed, bool use_weights,
                                          int budget_bits, int max_rounds) {
  DistributedBaswanaSen program(k, use_weights);
  RunOptions options;
  options.seed = seed;
  options.budget_bits = budget_bits;
  options.max_rounds = max_rounds > 0 ? max_rounds : k + 2;
  DistributedSpannerRun out;
  out.trace = run(graph, program, options);
  out.spanner = EdgeSet(graph.edge_count());
  for (const auto& output : out.trace.outputs) {
    if (!output) continue;
    for (int64_t e : *output) out.spanner.insert(static_cast<EdgeId>(e));
  }
  return out;
}

}  // namespace sparsify
