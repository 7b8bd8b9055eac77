#include "sparsify/ldc.hpp"

#include <algorithm>
#include <climits>
#include <cmath>
#include <map>
#include <queue>
#include <set>

namespace sparsify {

double SeparatedClustering::coverage() const {
  if (domain_size == 0) return 1.0;
  return static_cast<double>(clustering.clustered_count()) / domain_size;
}

int SeparatedClustering::max_diameter() const {
  return diameter.empty() ? 0
                          : *std::max_element(diameter.begin(), diameter.end());
}

int SeparatedClustering::max_ball_radius() const {
  return ball_radius.empty()
             ? 0
             : *std::max_element(ball_radius.begin(), ball_radius.end());
}

namespace {

constexpr int kFar = INT_MAX;

bool in_domain(const std::vector<char>* allowed, NodeId v) {
  return allowed == nullptr || (*allowed)[v] != 0;
}

// Multi-source BFS over nodes accepted by `pass`, up to `limit` hops.
template <typename Pass>
std::vector<int> bfs_from(const Graph& graph, const std::vector<NodeId>& sources,
                          int limit, Pass pass) {
  std::vector<int> dist(graph.node_count(), kFar);
  std::queue<NodeId> frontier;
  for (NodeId s : sources) {
    dist[s] = 0;
    frontier.push(s);
  }
  while (!frontier.empty()) {
    const NodeId x = frontier.front();
    frontier.pop();
    if (dist[x] >= limit) continue;
    for (const Incidence& inc : graph.neighbors(x)) {
      const NodeId y = inc.neighbor;
      if (dist[y] != kFar || !pass(y)) continue;
      dist[y] = dist[x] + 1;
      frontier.push(y);
    }
  }
  return dist;
}

}  // namespace

std::vector<int> strong_diameters(const Graph& graph,
                                  const Clustering& clustering) {
  std::vector<int> out(clustering.cluster_count(), 0);
  for (const Cluster& cluster : clustering.clusters()) {
    int diameter = 0;
    for (NodeId s : cluster.members) {
      const std::vector<int> dist =
          bfs_from(graph, {s}, kFar, [&](NodeId y) {
            return clustering.cluster_of(y) == cluster.id;
          });
      for (NodeId v : cluster.members) {
        if (dist[v] == kFar) {
          throw InvalidClustering("cluster " + std::to_string(cluster.id) +
                                  " is not connected");
        }
        diameter = std::max(diameter, dist[v]);
      }
    }
    out[cluster.id] = diameter;
  }
  return out;
}

int cluster_separation(const Graph& graph, const Clustering& clustering,
                       const std::vector<char>* allowed) {
  // Label every reachable domain node by its nearest cluster; an edge
  // between labels a != b bounds d(a, b) by d(u) + 1 + d(v), and the
  // minimum of these bounds is exact.
  const int n = graph.node_count();
  std::vector<int> dist(n, kFar), label(n, -1);
  std::queue<NodeId> frontier;
  for (NodeId v = 0; v < n; ++v) {
    if (clustering.clustered(v) && in_domain(allowed, v)) {
      dist[v] = 0;
      label[v] = clustering.cluster_of(v);
      frontier.push(v);
    }
  }
  while (!frontier.empty()) {
    const NodeId x = frontier.front();
    frontier.pop();
    for (const Incidence& inc : graph.neighbors(x)) {
      const NodeId y = inc.neighbor;
      if (dist[y] != kFar || !in_domain(allowed, y)) continue;
      dist[y] = dist[x] + 1;
      label[y] = label[x];
      frontier.push(y);
    }
  }
  int best = kFar;
  for (const Edge& e : graph.edges()) {
    if (label[e.u] < 0 || label[e.v] < 0 || label[e.u] == label[e.v]) continue;
    if (!in_domain(allowed, e.u) || !in_domain(allowed, e.v)) continue;
    best = std::min(best, dist[e.u] + 1 + dist[e.v]);
  }
  return best;
}

SeparatedClustering carve_clustering(const Graph& graph, int t_sep,
                                     const std::vector<char>* allowed) {
  if (t_sep < 1) throw std::invalid_argument("separation must be at least 1");
  const int n = graph.node_count();
  SeparatedClustering out;
  out.clustering = Clustering(n);
  out.separation = t_sep;
  std::vector<char> remaining(n, 0);
  for (NodeId v = 0; v < n; ++v) {
    remaining[v] = in_domain(allowed, v);
    out.domain_size += remaining[v];
  }
  auto domain = [&](NodeId y) { return in_domain(allowed, y); };

  for (NodeId center = 0; center < n; ++center) {
    if (!remaining[center]) continue;
    // BFS layers of the center inside the remaining nodes.
    const std::vector<int> layer = bfs_from(
        graph, {center}, kFar, [&](NodeId y) { return remaining[y] != 0; });
    std::vector<std::vector<NodeId>> layers;
    for (NodeId v = 0; v < n; ++v) {
      if (layer[v] == kFar) continue;
      if (static_cast<int>(layers.size()) <= layer[v]) layers.resize(layer[v] + 1);
      layers[layer[v]].push_back(v);
    }
    std::vector<NodeId> ball;
    std::vector<NodeId> zone;
    int radius = 0;
    for (radius = 0; radius < static_cast<int>(layers.size()); ++radius) {
      ball.insert(ball.end(), layers[radius].begin(), layers[radius].end());
      const std::vector<int> near = bfs_from(graph, ball, t_sep, domain);
      zone.clear();
      for (NodeId v = 0; v < n; ++v) {
        if (near[v] != kFar && remaining[v]) zone.push_back(v);
      }
      if (zone.size() < 2 * ball.size()) break;
    }
    radius = std::min(radius, static_cast<int>(layers.size()) - 1);

    const int id = out.clustering.add_cluster(center);
    std::vector<NodeId> order = ball;
    std::sort(order.begin(), order.end(),
              [&](NodeId a, NodeId b) { return layer[a] < layer[b]; });
    for (NodeId v : order) {
      if (v == center) continue;
      for (const Incidence& inc : graph.neighbors(v)) {
        const NodeId u = inc.neighbor;
        if (out.clustering.cluster_of(u) == id && layer[u] == layer[v] - 1) {
          out.clustering.attach(v, u, inc.edge);
          break;
        }
      }
    }
    out.centers.push_back(center);
    out.ball_radius.push_back(radius);
    for (NodeId v : zone) remaining[v] = 0;
  }
  out.diameter = strong_diameters(graph, out.clustering);
  const int separation = cluster_separation(graph, out.clustering, allowed);
  if (separation <= t_sep) {
    throw InvariantViolation("separation",
                             "clusters only " + std::to_string(separation) +
                                 " hops apart");
  }
  return out;
}

// ---------------------------------------------------------------------------

namespace {

struct Builder {
  const Graph& graph;
  int t;
  std::vector<std::vector<NodeId>> sets;  // final clusters in creation order
  std::vector<int> owner;                 // node -> set index or -1
  EdgeSet inter;

  Builder(const Graph& g, int t_) : graph(g), t(t_), owner(g.node_count(), -1),
                                    inter(g.edge_count()) {}

  int clustered() const {
    int c = 0;
    for (int o : owner) c += o >= 0;
    return c;
  }
};

void check_bridging(const Builder& b) {
  // Pairs of clusters (and frontier node -> cluster) with an E_inter edge.
  std::set<std::pair<int, int>> bridged;
  std::set<std::pair<NodeId, int>> frontier;
  for (EdgeId e : b.inter.ids()) {
    const Edge& edge = b.graph.edge(e);
    const int a = b.owner[edge.u];
    const int c = b.owner[edge.v];
    if (a >= 0 && c >= 0) bridged.insert({std::min(a, c), std::max(a, c)});
    if (a < 0 && c >= 0) frontier.insert({edge.u, c});
    if (c < 0 && a >= 0) frontier.insert({edge.v, a});
  }
  for (const Edge& e : b.graph.edges()) {
    const int a = b.owner[e.u];
    const int c = b.owner[e.v];
    if (a >= 0 && c >= 0 && a != c &&
        !bridged.count({std::min(a, c), std::max(a, c)})) {
      throw InvariantViolation("bridged-clusters",
                               "clusters " + std::to_string(a) + " and " +
                                   std::to_string(c) + " lack an E_inter edge");
    }
    if ((a < 0) != (c < 0)) {
      const NodeId v = a < 0 ? e.u : e.v;
      const int cluster = a < 0 ? c : a;
      if (!frontier.count({v, cluster})) {
        throw InvariantViolation("bridged-frontier",
                                 "node " + std::to_string(v) +
                                     " has no E_inter edge into cluster " +
                                     std::to_string(cluster));
      }
    }
  }
}

}  // namespace

GrowAndCutResult grow_and_cut(const Graph& graph, int t) {
  if (t < 1) throw std::invalid_argument("t must be at least 1");
  const int n = graph.node_count();
  Builder b(graph, t);
  GrowAndCutResult result;
  result.step_limit =
      n <= 1 ? 1
             : static_cast<int>(std::ceil(1.0 + std::log(n) / std::log(10.0 / 7.0)));
  std::vector<int> diameters;  // per final cluster

  int step = 0;
  while (b.clustered() < n) {
    ++step;
    if (step > result.step_limit) {
      throw InvariantViolation("shrinking", "nodes left after " +
                                                std::to_string(step - 1) +
                                                " steps");
    }
    std::vector<char> unclustered(n);
    for (NodeId v = 0; v < n; ++v) unclustered[v] = b.owner[v] < 0;
    auto in_gi = [&](NodeId y) { return unclustered[y] != 0; };

    GrowStep record;
    record.unclustered_before = n - b.clustered();
    const SeparatedClustering carved =
        carve_clustering(graph, 10 * t, &unclustered);
    record.carved_nodes = carved.clustering.clustered_count();
    result.carve_diameter = std::max(result.carve_diameter, carved.max_diameter());

    std::vector<std::pair<std::vector<NodeId>, int>> grown;  // (nodes, diam)
    for (const Cluster& c : carved.clustering.clusters()) {
      const int size = static_cast<int>(c.members.size());
      const std::vector<int> dist = bfs_from(graph, c.members, 4 * t, in_gi);
      std::vector<int> layer_size(4 * t + 1, 0);
      for (NodeId v = 0; v < n; ++v) {
        if (dist[v] != kFar) ++layer_size[dist[v]];
      }
      int cut = -1;
      for (int j = 0; j < 4 * t; ++j) {
        if (static_cast<int64_t>(layer_size[j + 1]) * t <= size) {
          cut = j;
          break;
        }
      }
      if (cut < 0) {
        record.bad_nodes += size;
        continue;
      }
      std::vector<NodeId> nodes;
      for (NodeId v = 0; v < n; ++v) {
        if (dist[v] <= cut) nodes.push_back(v);
      }
      grown.push_back({std::move(nodes), carved.diameter[c.id] + 2 * cut});
      ++record.good_clusters;
    }
    if (5 * static_cast<int64_t>(record.bad_nodes) > record.unclustered_before) {
      throw InvariantViolation("bad-mass",
                               std::to_string(record.bad_nodes) +
                                   " nodes in bad clusters of " +
                                   std::to_string(record.unclustered_before));
    }

    for (auto& [nodes, diam] : grown) {
      const int id = static_cast<int>(b.sets.size());
      for (NodeId v : nodes) b.owner[v] = id;
      b.sets.push_back(nodes);
      diameters.push_back(diam);
      record.newly_clustered += static_cast<int>(nodes.size());
    }
    // One edge from every still-unclustered neighbor into each new cluster,
    // the smallest id among candidates.
    std::map<std::pair<NodeId, int>, EdgeId> chosen;
    for (size_t g = 0; g < grown.size(); ++g) {
      const int id = static_cast<int>(b.sets.size() - grown.size() + g);
      for (NodeId u : b.sets[id]) {
        for (const Incidence& inc : graph.neighbors(u)) {
          const NodeId v = inc.neighbor;
          if (!unclustered[v] || b.owner[v] >= 0) continue;
          auto [it, inserted] = chosen.try_emplace({v, id}, inc.edge);
          if (!inserted) it->second = std::min(it->second, inc.edge);
        }
      }
    }
    for (const auto& [key, e] : chosen) {
      if (b.inter.insert(e)) ++record.inter_added;
    }
    record.unclustered_after = n - b.clustered();
    result.steps.push_back(record);

    // Invariants after this step.
    const Clustering so_far = Clustering::from_sets(graph, b.sets);
    const std::vector<int> actual = strong_diameters(graph, so_far);
    for (size_t c = 0; c < actual.size(); ++c) {
      if (actual[c] > result.carve_diameter + 10 * t) {
        throw InvariantViolation(
            "diameter", "cluster " + std::to_string(c) + " has diameter " +
                            std::to_string(actual[c]));
      }
    }
    if (static_cast<double>(record.unclustered_after) >
        std::pow(0.7, step) * n + 1e-9) {
      throw InvariantViolation(
          "shrinking", std::to_string(record.unclustered_after) +
                           " unclustered after step " + std::to_string(step));
    }
    if (static_cast<int64_t>(b.inter.size()) * t > b.clustered()) {
      throw InvariantViolation("inter-budget",
                               std::to_string(b.inter.size()) +
                                   " bridging edges for " +
                                   std::to_string(b.clustered()) + " nodes");
    }
    check_bridging(b);
  }
  result.clustering = Clustering::from_sets(graph, b.sets);
  result.inter = std::move(b.inter);
  return result;
}

EdgeSet ldc_sparse_spanner(const Graph& graph, int t,
                           GrowAndCutResult* details) {
  GrowAndCutResult gc = grow_and_cut(graph, t);
  EdgeSet out = gc.inter;
  for (const Cluster& c : gc.clustering.clusters()) {
    for (EdgeId e : c.tree_edges) out.insert(e);
  }
  const int n = graph.node_count();
  if (out.size() > n + (n + t - 1) / t) {
    throw InvariantViolation("size", std::to_string(out.size()) +
                                         " edges exceed n + ceil(n/t)");
  }
  if (details) *details = std::move(gc);
  return out;
}

WeakClusteringPrimitive strong_carving_primitive() {
  return [](const Graph& graph, const std::vector<char>& allowed) {
    const SeparatedClustering sc = carve_clustering(graph, 3, &allowed);
    WeakClustering out;
    for (const Cluster& c : sc.clustering.clusters()) {
      out.clusters.push_back(c.members);
      out.trees.push_back(c.tree_edges);
    }
    return out;
  };
}

namespace {

// Diameter of a tree given by its edges; throws if they do not form a tree
// containing `members`.
int tree_diameter(const Graph& graph, const std::vector<EdgeId>& edges,
                  const std::vector<NodeId>& members) {
  std::map<NodeId, std::vector<NodeId>> adj;
  for (NodeId v : members) adj[v];
  for (EdgeId e : edges) {
    const Edge& edge = graph.edge(e);
    adj[edge.u].push_back(edge.v);
    adj[edge.v].push_back(edge.u);
  }
  if (edges.size() + 1 != adj.size()) {
    throw InvalidClustering("cluster tree is not a tree");
  }
  auto farthest = [&](NodeId s) {
    std::map<NodeId, int> dist{{s, 0}};
    std::queue<NodeId> q;
    q.push(s);
    std::pair<int, NodeId> best{0, s};
    while (!q.empty()) {
      const NodeId x = q.front();
      q.pop();
      best = std::max(best, {dist[x], x});
      for (NodeId y : adj[x]) {
        if (dist.count(y)) continue;
        dist[y] = dist[x] + 1;
        q.push(y);
      }
    }
    if (dist.size() != adj.size()) {
      throw InvalidClustering("cluster tree is disconnected");
    }
    return best;
  };
  return farthest(farthest(adj.begin()->first).second).first;
}

}  // namespace

EdgeSet weak_diameter_spanner(const Graph& graph,
                              const WeakClusteringPrimitive& primitive,
                              WeakSpannerReport* report) {
  const int n = graph.node_count();
  EdgeSet out(graph.edge_count());
  WeakSpannerReport local;
  std::vector<char> unclustered(n, 1);
  int left = n;
  while (left > 0) {
    ++local.steps;
    const WeakClustering wc = primitive(graph, unclustered);
    if (wc.clusters.size() != wc.trees.size()) {
      throw InvalidClustering("one tree per cluster required");
    }
    Clustering members(n);
    std::vector<int> owner(n, -1);
    int covered = 0;
    for (size_t c = 0; c < wc.clusters.size(); ++c) {
      if (wc.clusters[c].empty()) throw InvalidClustering("empty cluster");
      for (NodeId v : wc.clusters[c]) {
        if (!unclustered[v] || owner[v] >= 0) {
          throw InvalidClustering("cluster member " + std::to_string(v) +
                                  " already clustered");
        }
        owner[v] = static_cast<int>(c);
        ++covered;
      }
      local.max_tree_diameter =
          std::max(local.max_tree_diameter,
                   tree_diameter(graph, wc.trees[c], wc.clusters[c]));
    }
    if (covered == 0) throw InvalidClustering("primitive clustered no node");
    // 3-separation in G[unclustered]: no node sees two clusters, no edge
    // joins two clusters.
    for (NodeId v = 0; v < n; ++v) {
      if (!unclustered[v]) continue;
      std::set<int> seen;
      if (owner[v] >= 0) seen.insert(owner[v]);
      for (const Incidence& inc : graph.neighbors(v)) {
        if (unclustered[inc.neighbor] && owner[inc.neighbor] >= 0) {
          seen.insert(owner[inc.neighbor]);
        }
      }
      if (seen.size() > 1) {
        throw InvalidClustering("primitive clustering is not 3-separated at "
                                "node " + std::to_string(v));
      }
    }
    for (const auto& tree : wc.trees) {
      std::set<NodeId> nodes;
      for (EdgeId e : tree) {
        if (out.insert(e)) ++local.tree_edges;
        nodes.insert(graph.edge(e).u);
        nodes.insert(graph.edge(e).v);
      }
      local.overlap_total += std::max<int64_t>(1, nodes.size());
    }
    for (NodeId v = 0; v < n; ++v) {
      if (!unclustered[v] || owner[v] >= 0) continue;
      EdgeId pick = kNoEdge;
      for (const Incidence& inc : graph.neighbors(v)) {
        if (unclustered[inc.neighbor] && owner[inc.neighbor] >= 0 &&
            (pick == kNoEdge || inc.edge < pick)) {
          pick = inc.edge;
        }
      }
      if (pick != kNoEdge && out.insert(pick)) ++local.frontier_edges;
    }
    for (NodeId v = 0; v < n; ++v) {
      if (owner[v] >= 0) {
        unclustered[v] = 0;
        --left;
      }
    }
  }
  if (report) *report = local;
  return out;
}

}  // namespace sparsify
