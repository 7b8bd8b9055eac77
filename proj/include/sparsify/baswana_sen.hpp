#pragma once

#include <cstdint>
#include <functional>
#include <vector>

#include "sparsify/congest.hpp"
#include "sparsify/graph.hpp"

namespace sparsify {

// State between Baswana–Sen iterations. Alive nodes are exactly the
// clustered nodes; an alive edge always has two alive endpoints.
struct BSState {
  const Graph* graph = nullptr;
  int iteration = 1;  // index of the next iteration to run
  bool use_weights = true;
  std::vector<char> alive_node;
  std::vector<char> alive_edge;
  Clustering clustering;
  EdgeSet spanner;
  std::vector<int> death_iteration;  // per edge, 0 while alive

  static BSState initial(const Graph& graph, bool use_weights = true);
  // Starts from an existing clustering; unclustered nodes count as dead and
  // only edges in `alive` (default: all) between clustered nodes are alive.
  static BSState from_clustering(const Graph& graph, Clustering clustering,
                                 bool use_weights = true,
                                 const EdgeSet* alive = nullptr);

  int cluster_count() const { return clustering.cluster_count(); }
  Weight weight(EdgeId e) const {
    return use_weights ? graph->edge(e).weight : 1;
  }
  EdgeSet alive_edges() const;
};

// One bit per current cluster, indexed by cluster id.
using SampleVector = std::vector<char>;

struct AdjacentCluster {
  int cluster;
  NodeId root;
  Weight weight;  // lightest alive edge from the node into the cluster
  EdgeId edge;    // that edge (smallest id among equally light ones)
};

// Clusters v reaches over an alive edge, its own included, ordered by
// (weight, root, edge id). Listing the own cluster is what kills alive
// inside-edges lighter than the edge v leaves by, so the path-weight bound
// on inside-edges survives once the cluster dissolves.
std::vector<AdjacentCluster> adjacent_clusters(const BSState& state,
                                               NodeId v);

// Step (2) for one node. Positions index into the ordered adjacency list;
// `sampled_at[j]` is the bit of the cluster at position j.
struct NodeDecision {
  bool stays_put = false;  // own cluster sampled
  bool dies = false;
  int join_position = -1;
  std::vector<int> added_positions;
};

NodeDecision decide(const std::vector<AdjacentCluster>& adjacent,
                    bool own_sampled, const std::vector<char>& sampled_at);

struct IterationStats {
  int iteration = 0;
  int clusters_in = 0;
  int clusters_out = 0;
  int joined = 0;
  int died = 0;
  int edges_added = 0;
  int max_added_by_survivor = 0;
  int max_degree_of_dying = 0;  // most adjacent clusters of a dying node
};

// Applies one iteration; deterministic given the samples.
BSState run_iteration(BSState state, const SampleVector& samples,
                      IterationStats* stats = nullptr);
void advance(BSState& state, const SampleVector& samples,
             IterationStats* stats = nullptr);

using Sampler = std::function<SampleVector(const BSState&)>;

// Bit of cluster c is derived from (seed, root of c, iteration) so that
// any node knowing the root can evaluate it.
bool cluster_sampled(uint64_t seed, NodeId root, int iteration, double p);
SampleVector random_samples(const BSState& state, double p, uint64_t seed);
Sampler random_sampler(double p, uint64_t seed);
Sampler empty_sampler();

double bs_probability(int node_count, int k);

struct BSResult {
  EdgeSet spanner;
  std::vector<int> death_iteration;
  std::vector<IterationStats> iterations;
};

using IterationObserver = std::function<void(const BSState&)>;

// k-1 iterations driven by `sampler`, then one iteration without samples.
BSResult run_baswana_sen(const Graph& graph, int k, const Sampler& sampler,
                         bool use_weights = true,
                         const IterationObserver& observer = nullptr);

// Randomized (2k-1)-spanner with p = n^{-1/k}.
EdgeSet baswana_sen_spanner(const Graph& graph, int k, uint64_t seed,
                            bool weighted = true);

struct GIterationResult {
  EdgeSet edges;          // edges added during the g iterations
  Clustering clustering;  // surviving clusters
  EdgeSet alive;          // edges still alive afterwards
  std::vector<IterationStats> iterations;
};

GIterationResult run_g_iterations(const Graph& graph, int g,
                                  const Sampler& sampler,
                                  bool use_weights = true);
GIterationResult run_g_iterations(const Graph& graph, int g, double p,
                                  uint64_t seed, bool use_weights = true);

// Node program for the same algorithm. Each node outputs the ids of the
// edges it added. Uses k+1 rounds: one to announce roots, then one per
// iteration.
class DistributedBaswanaSen : public NodeProgram {
 public:
  DistributedBaswanaSen(int k, bool use_weights = true)
      : k_(k), use_weights_(use_weights) {}

  InitResult init(const LocalView& view) const override;
  StepResult step(NodeState& state, int round,
                  const Inbox& inbox) const override;

 private:
  int k_;
  bool use_weights_;
};

struct DistributedSpannerRun {
  EdgeSet spanner;
  RoundTrace trace;
};

// budget_bits = 0 selects the default budget; max_rounds = 0 allows k+2.
DistributedSpannerRun distributed_spanner(const Graph& graph, int k,
                                          uint64_t seed,
                                          bool use_weights = true,
                                          int budget_bits = 0,
                                          int max_rounds = 0);

}  // namespace sparsify
