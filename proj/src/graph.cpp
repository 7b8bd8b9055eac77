#include "sparsify/graph.hpp"

#include <algorithm>
#include <functional>
#include <istream>
#include <map>
#include <numeric>
#include <ostream>
#include <queue>
#include <sstream>

namespace sparsify {

Graph::Graph(int node_count, bool weighted, Weight max_weight)
    : weighted_(weighted),
      max_weight_(max_weight),
      adjacency_(node_count < 0 ? 0 : node_count) {
  if (node_count < 0) throw GraphError("negative node count");
  if (max_weight < 0) throw GraphError("negative weight cap");
}

uint64_t Graph::pair_key(NodeId u, NodeId v) {
  if (u > v) std::swap(u, v);
  return (static_cast<uint64_t>(static_cast<uint32_t>(u)) << 32) |
         static_cast<uint32_t>(v);
}

EdgeId Graph::add_edge(NodeId u, NodeId v, Weight weight) {
  const int n = node_count();
  if (u < 0 || v < 0 || u >= n || v >= n) {
    throw GraphError("edge endpoint out of range: " + std::to_string(u) +
                     " " + std::to_string(v));
  }
  if (u == v) throw GraphError("self-loop at node " + std::to_string(u));
  if (weight < 0) throw GraphError("negative edge weight");
  if (weight > max_weight_) throw GraphError("edge weight exceeds cap");
  if (!weighted_ && weight != 1) {
    throw GraphError("unweighted graph requires unit weights");
  }
  auto [it, inserted] = pair_index_.emplace(pair_key(u, v), edge_count());
  if (!inserted) {
    throw GraphError("parallel edge " + std::to_string(u) + " " +
                     std::to_string(v));
  }
  const EdgeId id = edge_count();
  edges_.push_back(Edge{id, u, v, weight});
  adjacency_[u].push_back({v, id});
  adjacency_[v].push_back({u, id});
  return id;
}

std::optional<EdgeId> Graph::find_edge(NodeId u, NodeId v) const {
  auto it = pair_index_.find(pair_key(u, v));
  if (it == pair_index_.end()) return std::nullopt;
  return it->second;
}

EdgeSet EdgeSet::all(const Graph& graph) {
  EdgeSet set(graph.edge_count());
  for (EdgeId e = 0; e < graph.edge_count(); ++e) set.insert(e);
  return set;
}

bool EdgeSet::insert(EdgeId e) {
  if (e < 0 || e >= universe()) {
    throw GraphError("edge id out of range: " + std::to_string(e));
  }
  if (present_[e]) return false;
  present_[e] = 1;
  ++size_;
  return true;
}

bool EdgeSet::erase(EdgeId e) {
  if (!contains(e)) return false;
  present_[e] = 0;
  --size_;
  return true;
}

void EdgeSet::merge(const EdgeSet& other) {
  if (other.universe() != universe()) {
    throw GraphError("merging edge sets over different graphs");
  }
  for (EdgeId e = 0; e < other.universe(); ++e) {
    if (other.present_[e]) insert(e);
  }
}

std::vector<EdgeId> EdgeSet::ids() const {
  std::vector<EdgeId> out;
  out.reserve(size_);
  for (EdgeId e = 0; e < universe(); ++e) {
    if (present_[e]) out.push_back(e);
  }
  return out;
}

Clustering::Clustering(int node_count)
    : membership_(node_count, kUnclustered),
      parent_(node_count, kNoNode),
      parent_edge_(node_count, kNoEdge),
      depth_(node_count, 0) {}

Clustering Clustering::singletons(int node_count) {
  Clustering clustering(node_count);
  for (NodeId v = 0; v < node_count; ++v) clustering.add_cluster(v);
  return clustering;
}

Clustering Clustering::from_sets(
    const Graph& graph, const std::vector<std::vector<NodeId>>& sets) {
  const int n = graph.node_count();
  Clustering clustering(n);
  std::vector<int> owner(n, kUnclustered);
  for (size_t s = 0; s < sets.size(); ++s) {
    if (sets[s].empty()) throw InvalidClustering("empty cluster");
    for (NodeId v : sets[s]) {
      if (v < 0 || v >= n) throw InvalidClustering("member out of range");
      if (owner[v] != kUnclustered) {
        throw InvalidClustering("clusters overlap at node " +
                                std::to_string(v));
      }
      owner[v] = static_cast<int>(s);
    }
  }
  for (size_t s = 0; s < sets.size(); ++s) {
    const NodeId root = *std::min_element(sets[s].begin(), sets[s].end());
    clustering.add_cluster(root);
    std::queue<NodeId> frontier;
    frontier.push(root);
    size_t reached = 1;
    while (!frontier.empty()) {
      const NodeId x = frontier.front();
      frontier.pop();
      for (const Incidence& inc : graph.neighbors(x)) {
        const NodeId y = inc.neighbor;
        if (owner[y] != static_cast<int>(s) || clustering.clustered(y)) {
          continue;
        }
        clustering.attach(y, x, inc.edge);
        frontier.push(y);
        ++reached;
      }
    }
    if (reached != sets[s].size()) {
      throw InvalidClustering("cluster " + std::to_string(s) +
                              " is not connected");
    }
  }
  return clustering;
}

int Clustering::add_cluster(NodeId root) {
  if (root < 0 || root >= node_count()) {
    throw InvalidClustering("cluster root out of range");
  }
  if (clustered(root)) {
    throw InvalidClustering("clusters overlap at node " +
                            std::to_string(root));
  }
  const int id = cluster_count();
  Cluster cluster;
  cluster.id = id;
  cluster.root = root;
  cluster.members.push_back(root);
  clusters_.push_back(std::move(cluster));
  membership_[root] = id;
  parent_[root] = root;
  parent_edge_[root] = kNoEdge;
  depth_[root] = 0;
  return id;
}

void Clustering::attach(NodeId v, NodeId parent, EdgeId via) {
  if (v < 0 || v >= node_count() || parent < 0 || parent >= node_count()) {
    throw InvalidClustering("attach out of range");
  }
  if (clustered(v)) {
    throw InvalidClustering("clusters overlap at node " + std::to_string(v));
  }
  if (!clustered(parent)) {
    throw InvalidClustering("attach to unclustered parent");
  }
  const int c = membership_[parent];
  Cluster& cluster = clusters_[c];
  membership_[v] = c;
  parent_[v] = parent;
  parent_edge_[v] = via;
  depth_[v] = depth_[parent] + 1;
  cluster.radius = std::max(cluster.radius, depth_[v]);
  cluster.members.insert(
      std::lower_bound(cluster.members.begin(), cluster.members.end(), v), v);
  cluster.tree_edges.push_back(via);
}

bool Clustering::is_partition() const {
  return std::all_of(membership_.begin(), membership_.end(),
                     [](int c) { return c != kUnclustered; });
}

int Clustering::max_radius() const {
  int r = 0;
  for (const Cluster& c : clusters_) r = std::max(r, c.radius);
  return r;
}

int Clustering::clustered_count() const {
  return static_cast<int>(std::count_if(
      membership_.begin(), membership_.end(),
      [](int c) { return c != kUnclustered; }));
}

void Clustering::validate(const Graph& graph) const {
  if (node_count() != graph.node_count()) {
    throw InvalidClustering("clustering size does not match graph");
  }
  std::vector<int> seen(node_count(), 0);
  for (const Cluster& cluster : clusters_) {
    if (membership_[cluster.root] != cluster.id ||
        parent_[cluster.root] != cluster.root) {
      throw InvalidClustering("bad root of cluster " +
                              std::to_string(cluster.id));
    }
    int radius = 0;
    for (NodeId v : cluster.members) {
      if (seen[v]++) throw InvalidClustering("clusters overlap");
      if (membership_[v] != cluster.id) {
        throw InvalidClustering("membership mismatch");
      }
      radius = std::max(radius, depth_[v]);
      if (v == cluster.root) continue;
      const NodeId p = parent_[v];
      const EdgeId e = parent_edge_[v];
      if (membership_[p] != cluster.id || depth_[v] != depth_[p] + 1) {
        throw InvalidClustering("parent pointer leaves cluster");
      }
      if (e < 0 || e >= graph.edge_count() ||
          graph.edge(e).other(v) != p || graph.edge(e).other(p) != v) {
        throw InvalidClustering("tree edge does not join node and parent");
      }
    }
    if (radius != cluster.radius) throw InvalidClustering("radius mismatch");
  }
  for (NodeId v = 0; v < node_count(); ++v) {
    if (membership_[v] != kUnclustered && !seen[v]) {
      throw InvalidClustering("node not listed in its cluster");
    }
  }
}

EdgeSet ClusterGraph::lift(const EdgeSet& cluster_edges,
                           int base_edge_count) const {
  EdgeSet out(base_edge_count);
  for (EdgeId e : cluster_edges.ids()) out.insert(witness[e]);
  return out;
}

ClusterGraph contract(const Graph& graph, const Clustering& clustering,
                      const EdgeSet* edges) {
  clustering.validate(graph);
  const int c = clustering.cluster_count();
  // (cluster_lo, cluster_hi) -> (weight, base edge); edges scanned in id
  // order, so keeping strict improvements keeps the smallest id on ties.
  std::map<std::pair<int, int>, std::pair<Weight, EdgeId>> best;
  for (const Edge& e : graph.edges()) {
    if (edges && !edges->contains(e.id)) continue;
    int a = clustering.cluster_of(e.u);
    int b = clustering.cluster_of(e.v);
    if (a == kUnclustered || b == kUnclustered || a == b) continue;
    if (a > b) std::swap(a, b);
    auto [it, inserted] = best.try_emplace({a, b}, e.weight, e.id);
    if (!inserted && e.weight < it->second.first) {
      it->second = {e.weight, e.id};
    }
  }
  ClusterGraph out{Graph(c, graph.weighted(), graph.max_weight()), clustering,
                   {}, {}};
  out.witness.reserve(best.size());
  for (const auto& [pair, value] : best) {
    out.graph.add_edge(pair.first, pair.second, value.first);
    out.witness.push_back(value.second);
  }
  out.inv.resize(c);
  for (int i = 0; i < c; ++i) out.inv[i] = clustering.cluster(i).members;
  return out;
}

std::vector<Weight> dijkstra(const Graph& graph, NodeId source,
                             const EdgeSet* restrict_to, Weight cutoff) {
  std::vector<Weight> dist(graph.node_count(), kInfinity);
  using Item = std::pair<Weight, NodeId>;
  std::priority_queue<Item, std::vector<Item>, std::greater<>> heap;
  dist[source] = 0;
  heap.emplace(0, source);
  while (!heap.empty()) {
    auto [d, x] = heap.top();
    heap.pop();
    if (d != dist[x]) continue;
    for (const Incidence& inc : graph.neighbors(x)) {
      if (restrict_to && !restrict_to->contains(inc.edge)) continue;
      const Weight nd = d + graph.edge(inc.edge).weight;
      if (nd > cutoff || nd >= dist[inc.neighbor]) continue;
      dist[inc.neighbor] = nd;
      heap.emplace(nd, inc.neighbor);
    }
  }
  return dist;
}

DistanceMatrix apsp(const Graph& graph) {
  DistanceMatrix out;
  out.reserve(graph.node_count());
  for (NodeId s = 0; s < graph.node_count(); ++s) {
    out.push_back(dijkstra(graph, s));
  }
  return out;
}

DistanceMatrix apsp(const Graph& graph, const EdgeSet& edges) {
  DistanceMatrix out;
  out.reserve(graph.node_count());
  for (NodeId s = 0; s < graph.node_count(); ++s) {
    out.push_back(dijkstra(graph, s, &edges));
  }
  return out;
}

std::vector<int> bfs_hops(const Graph& graph, NodeId source,
                          const std::vector<char>* allowed) {
  std::vector<int> hops(graph.node_count(), -1);
  std::queue<NodeId> frontier;
  hops[source] = 0;
  frontier.push(source);
  while (!frontier.empty()) {
    const NodeId x = frontier.front();
    frontier.pop();
    for (const Incidence& inc : graph.neighbors(x)) {
      const NodeId y = inc.neighbor;
      if (hops[y] >= 0 || (allowed && !(*allowed)[y])) continue;
      hops[y] = hops[x] + 1;
      frontier.push(y);
    }
  }
  return hops;
}

std::vector<int> connected_components(const Graph& graph,
                                      const EdgeSet* restrict_to) {
  std::vector<int> label(graph.node_count(), -1);
  int next = 0;
  std::vector<NodeId> stack;
  for (NodeId s = 0; s < graph.node_count(); ++s) {
    if (label[s] >= 0) continue;
    label[s] = next;
    stack.push_back(s);
    while (!stack.empty()) {
      const NodeId x = stack.back();
      stack.pop_back();
      for (const Incidence& inc : graph.neighbors(x)) {
        if (restrict_to && !restrict_to->contains(inc.edge)) continue;
        if (label[inc.neighbor] >= 0) continue;
        label[inc.neighbor] = next;
        stack.push_back(inc.neighbor);
      }
    }
    ++next;
  }
  return label;
}

bool is_connected(const Graph& graph, const EdgeSet* restrict_to) {
  const auto label = connected_components(graph, restrict_to);
  return std::all_of(label.begin(), label.end(),
                     [](int l) { return l == 0; });
}

namespace {

// Ratio dist/weight as an exact fraction; infinite when the edge is not
// reachable within the spanner or a zero-weight edge has positive distance.
struct Ratio {
  Weight dist = 0;
  Weight weight = 1;

  bool infinite() const {
    return dist == kInfinity || (weight == 0 && dist > 0);
  }
  bool greater_than(const Ratio& other) const {
    if (other.infinite()) return false;
    if (infinite()) return true;
    const Weight w = weight == 0 ? 1 : weight;
    const Weight ow = other.weight == 0 ? 1 : other.weight;
    const __int128 lhs = static_cast<__int128>(weight == 0 ? 1 : dist) * ow;
    const __int128 rhs =
        static_cast<__int128>(other.weight == 0 ? 1 : other.dist) * w;
    return lhs > rhs;
  }
  double value() const {
    if (infinite()) return std::numeric_limits<double>::infinity();
    if (weight == 0) return 1.0;
    return static_cast<double>(dist) / weight;
  }
};

}  // namespace

StretchReport verify_stretch(const Graph& graph, const EdgeSet& spanner,
                             Stretch alpha) {
  if (spanner.universe() != graph.edge_count()) {
    throw GraphError("spanner is not over this graph");
  }
  if (alpha.den <= 0 || alpha.num < 0) throw GraphError("bad stretch factor");
  StretchReport report;
  Ratio worst;
  for (NodeId u = 0; u < graph.node_count(); ++u) {
    Weight max_incident = -1;
    for (const Incidence& inc : graph.neighbors(u)) {
      if (inc.neighbor > u) {
        max_incident = std::max(max_incident, graph.edge(inc.edge).weight);
      }
    }
    if (max_incident < 0) continue;
    // Distances past the largest allowed bound only need to be "too far".
    const __int128 bound =
        static_cast<__int128>(max_incident) * alpha.num / alpha.den;
    const Weight cutoff =
        bound >= kInfinity / 2 ? kInfinity : static_cast<Weight>(bound);
    const auto dist = dijkstra(graph, u, &spanner, cutoff);
    for (const Incidence& inc : graph.neighbors(u)) {
      if (inc.neighbor < u) continue;
      const Ratio r{dist[inc.neighbor], graph.edge(inc.edge).weight};
      const bool within =
          r.dist != kInfinity &&
          static_cast<__int128>(r.dist) * alpha.den <=
              static_cast<__int128>(alpha.num) * r.weight;
      if (!within) report.ok = false;
      if (report.worst_edge == kNoEdge || r.greater_than(worst)) {
        report.worst_edge = inc.edge;
        worst = r;
      }
    }
  }
  report.worst_spanner_distance = worst.dist;
  report.worst_ratio = report.worst_edge == kNoEdge ? 1.0 : worst.value();
  return report;
}

StretchReport measure_stretch(const Graph& graph, const EdgeSet& spanner) {
  // Any finite spanner distance is at most n * max weight.
  const int64_t hops = std::max(1, graph.node_count());
  return verify_stretch(graph, spanner,
                        Stretch::of(hops * std::max<Weight>(1, graph.max_weight())));
}

namespace {

// Heaviest tree edge on the path from v up to (excluding) ancestor `top`.
std::pair<Weight, EdgeId> heaviest_up_to(const Graph& graph,
                                         const Clustering& clustering,
                                         NodeId v, NodeId top) {
  std::pair<Weight, EdgeId> best{-1, kNoEdge};
  while (v != top) {
    const EdgeId e = clustering.parent_edge(v);
    if (graph.edge(e).weight > best.first) best = {graph.edge(e).weight, e};
    v = clustering.parent(v);
  }
  return best;
}

NodeId lowest_common_ancestor(const Clustering& clustering, NodeId a,
                              NodeId b) {
  while (clustering.depth(a) > clustering.depth(b)) a = clustering.parent(a);
  while (clustering.depth(b) > clustering.depth(a)) b = clustering.parent(b);
  while (a != b) {
    a = clustering.parent(a);
    b = clustering.parent(b);
  }
  return a;
}

}  // namespace

FriendlyReport verify_stretch_friendly(const Graph& graph,
                                       const Clustering& clustering,
                                       const EdgeSet* edges) {
  clustering.validate(graph);
  FriendlyReport report;
  auto fail = [&](EdgeId edge, EdgeId tree_edge, const std::string& kind) {
    report.ok = false;
    report.violating_edge = edge;
    report.heavier_tree_edge = tree_edge;
    std::ostringstream msg;
    msg << kind << " edge " << edge << " (weight " << graph.edge(edge).weight
        << ") lighter than tree edge " << tree_edge << " (weight "
        << graph.edge(tree_edge).weight << ")";
    report.message = msg.str();
  };
  for (const Edge& e : graph.edges()) {
    if (edges && !edges->contains(e.id)) continue;
    const int cu = clustering.cluster_of(e.u);
    const int cv = clustering.cluster_of(e.v);
    if (cu != kUnclustered && cu == cv) {
      const NodeId top = lowest_common_ancestor(clustering, e.u, e.v);
      auto a = heaviest_up_to(graph, clustering, e.u, top);
      auto b = heaviest_up_to(graph, clustering, e.v, top);
      auto worst = a.first >= b.first ? a : b;
      if (worst.first > e.weight) {
        fail(e.id, worst.second, "inside");
        return report;
      }
      continue;
    }
    for (NodeId end : {e.u, e.v}) {
      const int c = clustering.cluster_of(end);
      if (c == kUnclustered) continue;
      auto worst = heaviest_up_to(graph, clustering, end,
                                  clustering.cluster(c).root);
      if (worst.first > e.weight) {
        fail(e.id, worst.second, "boundary");
        return report;
      }
    }
  }
  return report;
}

EdgeSet compose_spanner(const Graph& base, const ClusterGraph& cluster_graph,
                        const EdgeSet& cluster_spanner) {
  const Clustering& clustering = cluster_graph.clustering;
  if (!clustering.is_partition()) {
    throw InvalidClustering("compose_spanner requires a partition");
  }
  if (cluster_spanner.universe() != cluster_graph.graph.edge_count()) {
    throw GraphError("cluster spanner is not over the cluster graph");
  }
  EdgeSet out = cluster_graph.lift(cluster_spanner, base.edge_count());
  for (const Cluster& cluster : clustering.clusters()) {
    for (EdgeId e : cluster.tree_edges) out.insert(e);
  }
  return out;
}

int64_t composed_stretch(int radius, int64_t alpha) {
  return (2 * static_cast<int64_t>(radius) + 1) * (alpha + 1) - 1;
}

Graph edge_subgraph(const Graph& graph, const EdgeSet& edges,
                    std::vector<EdgeId>* to_base) {
  Graph out(graph.node_count(), graph.weighted(), graph.max_weight());
  if (to_base) to_base->clear();
  for (EdgeId e : edges.ids()) {
    const Edge& edge = graph.edge(e);
    out.add_edge(edge.u, edge.v, edge.weight);
    if (to_base) to_base->push_back(e);
  }
  return out;
}

Graph induced_subgraph(const Graph& graph, const std::vector<NodeId>& nodes,
                       std::vector<EdgeId>* edge_to_base) {
  std::vector<NodeId> local(graph.node_count(), kNoNode);
  for (size_t i = 0; i < nodes.size(); ++i) {
    local[nodes[i]] = static_cast<NodeId>(i);
  }
  Graph out(static_cast<int>(nodes.size()), graph.weighted(),
            graph.max_weight());
  if (edge_to_base) edge_to_base->clear();
  for (const Edge& e : graph.edges()) {
    if (local[e.u] == kNoNode || local[e.v] == kNoNode) continue;
    out.add_edge(local[e.u], local[e.v], e.weight);
    if (edge_to_base) edge_to_base->push_back(e.id);
  }
  return out;
}

Graph read_edge_list(std::istream& in) {
  int n = 0;
  int m = 0;
  std::string kind;
  if (!(in >> n >> m >> kind)) throw GraphError("missing edge-list header");
  bool weighted;
  if (kind == "weighted") {
    weighted = true;
  } else if (kind == "unweighted") {
    weighted = false;
  } else {
    throw GraphError("header must say weighted or unweighted, got " + kind);
  }
  Graph graph(n, weighted);
  for (int i = 0; i < m; ++i) {
    NodeId u;
    NodeId v;
    Weight w = 1;
    if (!(in >> u >> v)) throw GraphError("truncated edge list");
    if (weighted && !(in >> w)) throw GraphError("missing edge weight");
    graph.add_edge(u, v, w);
  }
  return graph;
}

void write_edge_list(std::ostream& out, const Graph& graph) {
  out << graph.node_count() << ' ' << graph.edge_count() << ' '
      << (graph.weighted() ? "weighted" : "unweighted") << '\n';
  for (const Edge& e : graph.edges()) {
    out << e.u << ' ' << e.v;
    if (graph.weighted()) out << ' ' << e.weight;
    out << '\n';
  }
}

void write_edge_set(std::ostream& out, const EdgeSet& edges) {
  for (EdgeId e : edges.ids()) out << e << '\n';
}

EdgeSet read_edge_set(std::istream& in, const Graph& graph) {
  EdgeSet set(graph.edge_count());
  EdgeId e;
  while (in >> e) set.insert(e);
  return set;
}

}  // namespace sparsify
