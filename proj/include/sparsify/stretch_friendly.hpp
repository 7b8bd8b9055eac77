#pragma once

#include <vector>

#include "sparsify/congest.hpp"
#include "sparsify/graph.hpp"

namespace sparsify {

// One merge iteration's view of the current partition. Index = cluster id.
struct OrientedClusterView {
  std::vector<int> size;
  std::vector<int> out_neighbor;  // cluster at the other end, -1 if none
  std::vector<EdgeId> out_edge;   // lightest boundary edge, ties by id
  std::vector<char> small;
  int cluster_count() const { return static_cast<int>(size.size()); }
};

// `small_below`: clusters with fewer members are small.
OrientedClusterView orient(const Graph& graph, const Clustering& clustering,
                           int small_below);

struct ColoringResult {
  std::vector<int> color;  // in {0,1,2}
  RoundTrace trace;        // logical rounds on the cluster graph
};

// Parent pointers of the orientation with every 2-cycle broken at its
// smaller endpoint. Out-degree <= 1 orientations have no longer cycles.
std::vector<int> coloring_forest(const OrientedClusterView& view);

// Cole–Vishkin reduction to 6 colors, then three shift-down/recolor steps.
// Runs as a node program on the cluster graph of `clustering`.
ColoringResult color3(const Graph& graph, const Clustering& clustering,
                      const OrientedClusterView& view);

// The same program on an arbitrary graph whose nodes are the view's
// clusters; `parent` must come from coloring_forest.
class ColorReduction : public NodeProgram {
 public:
  explicit ColorReduction(std::vector<int> parent)
      : parent_(std::move(parent)) {}
  InitResult init(const LocalView& view) const override;
  StepResult step(NodeState& state, int round,
                  const Inbox& inbox) const override;

  // Cole–Vishkin steps needed to go from node_count colors to at most 6.
  static int reduction_steps(int node_count);

 private:
  std::vector<int> parent_;
};

bool is_proper_coloring(const OrientedClusterView& view,
                        const std::vector<int>& color);

// partner[c] = matched cluster or -1.
std::vector<int> match_small(const OrientedClusterView& view,
                             const std::vector<int>& color);

// Throws std::logic_error if an oriented edge joins two unmatched small
// clusters or the matching uses a non-oriented pair.
void check_maximal_matching(const OrientedClusterView& view,
                            const std::vector<int>& partner);

// New clusters sorted by root. Trees are the old trees plus the merge
// edges, re-hung from the new root.
Clustering merge_step(const Graph& graph, const Clustering& clustering,
                      const OrientedClusterView& view,
                      const std::vector<int>& partner);

struct PartitionReport {
  int iterations = 0;
  int coloring_logical_rounds = 0;
  int coloring_physical_rounds = 0;
  std::vector<int> undersized_clusters;  // whole components smaller than t
};

// Stretch-friendly partition with clusters of size >= t (except whole
// components smaller than t) and radius < 3 * 2^ceil(log2 t).
Clustering stretch_friendly_partition(const Graph& graph, int t,
                                      PartitionReport* report = nullptr);

int ceil_log2(int64_t value);

}  // namespace sparsify
