#pragma once

#include <functional>
#include <stdexcept>
#include <string>
#include <vector>

#include "sparsify/graph.hpp"

namespace sparsify {

// A named proof invariant failed at runtime.
class InvariantViolation : public std::logic_error {
 public:
  InvariantViolation(std::string name, const std::string& detail)
      : std::logic_error(name + ": " + detail), invariant(std::move(name)) {}
  std::string invariant;
};

// Strong-diameter clustering of G[allowed]; distances are hop counts in
// G[allowed] (all of G when no mask is given).
struct SeparatedClustering {
  Clustering clustering;
  int separation = 0;
  std::vector<NodeId> centers;
  std::vector<int> ball_radius;  // per cluster, from its center
  std::vector<int> diameter;     // per cluster, inside the cluster
  int domain_size = 0;           // nodes of G[allowed]

  double coverage() const;
  int max_diameter() const;
  int max_ball_radius() const;
};

// Ball carving in the residual graph. For each center (smallest remaining
// id) take the smallest r whose ball S (grown inside the remaining nodes)
// has fewer than 2|S| remaining nodes within t_sep hops of it in G[allowed];
// emit S and remove those nodes. Any later cluster is then more than t_sep
// hops away. A ball that stops growing is emitted as is, so the half
// coverage and the t_sep*log2(n) radius are measured, not guaranteed.
SeparatedClustering carve_clustering(const Graph& graph, int t_sep,
                                     const std::vector<char>* allowed = nullptr);

// Smallest hop distance in G[allowed] between members of different
// clusters; a large sentinel when fewer than two clusters exist.
int cluster_separation(const Graph& graph, const Clustering& clustering,
                       const std::vector<char>* allowed = nullptr);

// Hop diameter of each cluster's induced subgraph.
std::vector<int> strong_diameters(const Graph& graph,
                                  const Clustering& clustering);

struct GrowStep {
  int unclustered_before = 0;
  int carved_nodes = 0;
  int bad_nodes = 0;
  int good_clusters = 0;
  int newly_clustered = 0;
  int inter_added = 0;
  int unclustered_after = 0;
};

struct GrowAndCutResult {
  Clustering clustering;  // complete
  EdgeSet inter;
  std::vector<GrowStep> steps;
  int step_limit = 0;      // ceil(1 + log_{10/7} n)
  int carve_diameter = 0;  // largest carved diameter, plays D(n, 10t)
};

// Complete clustering plus bridging edges. Checks after every step:
//   diameter          diam <= D + 10t
//   shrinking         unclustered <= (7/10)^i n
//   inter-budget      |E_inter| <= clustered / t
//   bridged-clusters  neighboring clusters share an E_inter edge
//   bridged-frontier  unclustered v next to C has an E_inter edge into C
//   bad-mass          nodes in bad carved clusters <= unclustered / 5
// and throws InvariantViolation naming the first failure.
GrowAndCutResult grow_and_cut(const Graph& graph, int t);

// BFS tree of each final cluster plus E_inter.
EdgeSet ldc_sparse_spanner(const Graph& graph, int t,
                           GrowAndCutResult* details = nullptr);

// Clustering whose trees may leave the cluster (Steiner nodes).
struct WeakClustering {
  std::vector<std::vector<NodeId>> clusters;
  std::vector<std::vector<EdgeId>> trees;  // edges of T_C in the base graph
};

// Clusters part of G[allowed]; `allowed` marks the unclustered nodes.
using WeakClusteringPrimitive =
    std::function<WeakClustering(const Graph&, const std::vector<char>&)>;

// 3-separated strong carving; overlap 1.
WeakClusteringPrimitive strong_carving_primitive();

struct WeakSpannerReport {
  int steps = 0;
  int64_t overlap_total = 0;  // sum over steps of sum_v xi(v)
  int tree_edges = 0;
  int frontier_edges = 0;
  int max_tree_diameter = 0;
};

// Repeats: cluster the unclustered nodes, add every T_C, add one edge from
// each still-unclustered neighbor into its (unique) neighboring cluster.
EdgeSet weak_diameter_spanner(const Graph& graph,
                              const WeakClusteringPrimitive& primitive,
                              WeakSpannerReport* report = nullptr);

}  // namespace sparsify
