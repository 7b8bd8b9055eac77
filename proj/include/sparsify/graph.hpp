#pragma once

#include <cstdint>
#include <iosfwd>
#include <limits>
#include <optional>
#include <stdexcept>
#include <string>
#include <unordered_map>
#include <vector>

namespace sparsify {

using NodeId = int32_t;
using EdgeId = int32_t;
using Weight = int64_t;

inline constexpr Weight kInfinity = std::numeric_limits<Weight>::max();
inline constexpr int kUnclustered = -1;
inline constexpr NodeId kNoNode = -1;
inline constexpr EdgeId kNoEdge = -1;

// Default weight cap. Keeps products of two weights and a stretch factor
// inside 128-bit intermediates.
inline constexpr Weight kDefaultMaxWeight = Weight{1} << 40;

class GraphError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

class InvalidClustering : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

struct Edge {
  EdgeId id = kNoEdge;
  NodeId u = kNoNode;
  NodeId v = kNoNode;
  Weight weight = 1;

  NodeId other(NodeId x) const { return x == u ? v : u; }
};

struct Incidence {
  NodeId neighbor;
  EdgeId edge;
};

// Simple undirected graph with dense node ids 0..n-1 and dense edge ids
// 0..m-1 in insertion order. Self-loops and parallel edges are rejected.
class Graph {
 public:
  explicit Graph(int node_count = 0, bool weighted = false,
                 Weight max_weight = kDefaultMaxWeight);

  EdgeId add_edge(NodeId u, NodeId v, Weight weight = 1);

  int node_count() const { return static_cast<int>(adjacency_.size()); }
  int edge_count() const { return static_cast<int>(edges_.size()); }
  bool weighted() const { return weighted_; }
  Weight max_weight() const { return max_weight_; }

  const Edge& edge(EdgeId e) const { return edges_[e]; }
  const std::vector<Edge>& edges() const { return edges_; }
  const std::vector<Incidence>& neighbors(NodeId v) const {
    return adjacency_[v];
  }
  int degree(NodeId v) const {
    return static_cast<int>(adjacency_[v].size());
  }
  std::optional<EdgeId> find_edge(NodeId u, NodeId v) const;

 private:
  static uint64_t pair_key(NodeId u, NodeId v);

  bool weighted_;
  Weight max_weight_;
  std::vector<Edge> edges_;
  std::vector<std::vector<Incidence>> adjacency_;
  std::unordered_map<uint64_t, EdgeId> pair_index_;
};

// Subset of the edge ids of one graph.
class EdgeSet {
 public:
  EdgeSet() = default;
  explicit EdgeSet(int universe) : present_(universe, 0) {}
  static EdgeSet all(const Graph& graph);

  bool insert(EdgeId e);
  bool erase(EdgeId e);
  bool contains(EdgeId e) const {
    return e >= 0 && e < universe() && present_[e] != 0;
  }
  void merge(const EdgeSet& other);

  int size() const { return size_; }
  int universe() const { return static_cast<int>(present_.size()); }
  std::vector<EdgeId> ids() const;

  friend bool operator==(const EdgeSet& a, const EdgeSet& b) {
    return a.present_ == b.present_;
  }

 private:
  std::vector<char> present_;
  int size_ = 0;
};

struct Cluster {
  int id = 0;
  NodeId root = kNoNode;
  std::vector<NodeId> members;  // sorted
  std::vector<EdgeId> tree_edges;
  int radius = 0;  // hops
};

// Disjoint rooted-tree clusters. Per-node arrays hold the membership, the
// parent pointer (root points to itself) and the tree edge to the parent.
class Clustering {
 public:
  Clustering() = default;
  explicit Clustering(int node_count);

  // Every node its own cluster, cluster id = node id.
  static Clustering singletons(int node_count);

  // One cluster per member set; trees are BFS trees inside each set rooted
  // at its smallest node. Throws InvalidClustering on overlap or on a set
  // that is not connected in `graph`.
  static Clustering from_sets(const Graph& graph,
                              const std::vector<std::vector<NodeId>>& sets);

  int add_cluster(NodeId root);
  // Adds v to the cluster of `parent` with tree edge `via`.
  void attach(NodeId v, NodeId parent, EdgeId via);

  int node_count() const { return static_cast<int>(membership_.size()); }
  int cluster_count() const { return static_cast<int>(clusters_.size()); }
  const Cluster& cluster(int c) const { return clusters_[c]; }
  const std::vector<Cluster>& clusters() const { return clusters_; }

  int cluster_of(NodeId v) const { return membership_[v]; }
  bool clustered(NodeId v) const { return membership_[v] != kUnclustered; }
  NodeId parent(NodeId v) const { return parent_[v]; }
  EdgeId parent_edge(NodeId v) const { return parent_edge_[v]; }
  int depth(NodeId v) const { return depth_[v]; }
  const std::vector<int>& membership() const { return membership_; }

  bool is_partition() const;
  int max_radius() const;
  int clustered_count() const;

  // Checks parent pointers, tree edges and radii against `graph`.
  void validate(const Graph& graph) const;

 private:
  std::vector<Cluster> clusters_;
  std::vector<int> membership_;
  std::vector<NodeId> parent_;
  std::vector<EdgeId> parent_edge_;
  std::vector<int> depth_;
};

// Contracted graph. Node c of `graph` is cluster c of `clustering`.
struct ClusterGraph {
  Graph graph;
  Clustering clustering;
  std::vector<EdgeId> witness;                // cluster edge -> base edge
  std::vector<std::vector<NodeId>> inv;       // cluster node -> base nodes

  EdgeSet lift(const EdgeSet& cluster_edges, int base_edge_count) const;
};

// With `edges` given, only those base edges induce cluster-graph edges.
ClusterGraph contract(const Graph& graph, const Clustering& clustering,
                      const EdgeSet* edges = nullptr);

using DistanceMatrix = std::vector<std::vector<Weight>>;

std::vector<Weight> dijkstra(const Graph& graph, NodeId source,
                             const EdgeSet* restrict_to = nullptr,
                             Weight cutoff = kInfinity);
DistanceMatrix apsp(const Graph& graph);
DistanceMatrix apsp(const Graph& graph, const EdgeSet& edges);

std::vector<int> bfs_hops(const Graph& graph, NodeId source,
                          const std::vector<char>* allowed = nullptr);

// Component label per node, labels dense in order of smallest member.
std::vector<int> connected_components(const Graph& graph,
                                      const EdgeSet* restrict_to = nullptr);
bool is_connected(const Graph& graph, const EdgeSet* restrict_to = nullptr);

// Exact stretch factor num/den.
struct Stretch {
  int64_t num = 1;
  int64_t den = 1;
  static Stretch of(int64_t value) { return {value, 1}; }
  double value() const { return static_cast<double>(num) / den; }
};

struct StretchReport {
  bool ok = true;
  EdgeId worst_edge = kNoEdge;
  double worst_ratio = 1.0;  // infinity when the spanner disconnects an edge
  Weight worst_spanner_distance = 0;
};

// A spanner only needs d_H(u,v) <= alpha * w(u,v) on graph edges: any
// shortest path decomposes into edges, and the per-edge bounds add up.
// Searches stop at alpha times the heaviest incident edge, so worst_ratio
// is exact when ok and may read infinity otherwise.
StretchReport verify_stretch(const Graph& graph, const EdgeSet& spanner,
                             Stretch alpha);

// Exact worst ratio with no cutoff; ok unless the spanner disconnects an edge.
StretchReport measure_stretch(const Graph& graph, const EdgeSet& spanner);

struct FriendlyReport {
  bool ok = true;
  EdgeId violating_edge = kNoEdge;  // boundary or inside edge
  EdgeId heavier_tree_edge = kNoEdge;
  std::string message;
};

// When `edges` is given only those edges are checked as boundary or inside
// edges (tree paths may use any edge).
FriendlyReport verify_stretch_friendly(const Graph& graph,
                                       const Clustering& clustering,
                                       const EdgeSet* edges = nullptr);

// Tree edges of every cluster plus the base witnesses of `cluster_spanner`.
// For a stretch-friendly r-partition and an alpha-spanner of the cluster
// graph the result has stretch (2r+1)(alpha+1)-1.
EdgeSet compose_spanner(const Graph& base, const ClusterGraph& cluster_graph,
                        const EdgeSet& cluster_spanner);

int64_t composed_stretch(int radius, int64_t alpha);

// Graph induced by a subset of edges, keeping all nodes.
Graph edge_subgraph(const Graph& graph, const EdgeSet& edges,
                    std::vector<EdgeId>* to_base = nullptr);

// Induced subgraph on `nodes` (ascending order defines the new ids).
Graph induced_subgraph(const Graph& graph, const std::vector<NodeId>& nodes,
                       std::vector<EdgeId>* edge_to_base = nullptr);

Graph read_edge_list(std::istream& in);
void write_edge_list(std::ostream& out, const Graph& graph);
void write_edge_set(std::ostream& out, const EdgeSet& edges);
EdgeSet read_edge_set(std::istream& in, const Graph& graph);

}  // namespace sparsify
