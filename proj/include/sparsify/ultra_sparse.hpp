#pragma once

#include <cstdint>
#include <functional>
#include <vector>

#include "sparsify/graph.hpp"
#include "sparsify/stretch_friendly.hpp"

namespace sparsify {

// ---- Phase parameters of the linear-size spanner (logs base 2) ----

// log applied `times` times; -infinity once the argument drops to <= 0.
double iterated_log(double value, int times);

// Largest P with log^(P)(n) >= alpha0; 0 when log n < alpha0.
int phase_count(int node_count, double alpha0);

// x_1..x_P with x_i = log^(P-i+1) n / log^(P-i+2) n.
std::vector<double> x_sequence(int node_count, double alpha0);

// ceil((1 + weighted) * x * (1 + 2 log log x / log x)), at least 1.
int phase_iterations(double x, bool weighted);

struct XSeqCheck {
  double alpha = 0, x = 0, y = 0, z = 0;
  bool lower_holds = false;  // x log x <= alpha
  bool upper_holds = false;  // alpha <= y^z
};

// Evaluated in the log domain: log x + log log x <= log alpha <= z log y.
XSeqCheck check_x_seq(double log2_alpha);

// ---- Linear-size spanner ----

struct LinearSizeOptions {
  bool weighted = true;
  bool derandomized = true;
  uint64_t seed = 1;
  double alpha0 = 256.0;
  int iota = 64;
};

struct PhaseRecord {
  int phase = 0;  // 1-based; the closing pass is phase P+1 with g = 1
  double x = 0;
  double p = 0;
  int iterations = 0;
  int nodes = 0;
  int edges = 0;
  int edges_added = 0;
  int surviving_clusters = 0;
};

struct LinearSizeResult {
  EdgeSet spanner;
  std::vector<PhaseRecord> phases;
  int64_t stretch_bound = 1;
};

// P sampled phases chained through cluster graphs, then one pass without
// sampling on the last cluster graph so that every node dies.
LinearSizeResult linear_size_spanner_run(const Graph& graph,
                                         const LinearSizeOptions& options);
EdgeSet linear_size_spanner(const Graph& graph,
                            const LinearSizeOptions& options);

// ---- Ultra-sparse reduction ----

// Spanner algorithm applied to a cluster graph; returns edge ids of it.
using InnerSpanner = std::function<EdgeSet(const Graph&)>;

InnerSpanner whole_graph_inner();
InnerSpanner baswana_sen_inner(int k, uint64_t seed);
InnerSpanner deterministic_bs_inner(int k);
InnerSpanner linear_size_inner(LinearSizeOptions options);

struct UltraSparseReport {
  int attempts = 0;
  int partition_parameter = 0;  // t' of the accepted attempt
  int clusters = 0;
  int radius = 0;
  int inner_edges = 0;
  int edges = 0;
  int64_t edge_limit = 0;  // n - components + floor(n/t)
  double inner_stretch = 0;    // measured on the cluster graph
  double stretch_bound = 0;    // (2r+1)(inner_stretch+1)-1
};

// Partition -> contract -> inner -> compose, retrying with a coarser
// partition until the output has at most n - components + floor(n/t)
// edges. That limit is below n + ceil(n/t) and adds up over components.
EdgeSet ultra_sparse_spanner(const Graph& graph, int t,
                             const InnerSpanner& inner,
                             UltraSparseReport* report = nullptr,
                             bool measure_inner_stretch = false);

}  // namespace sparsify
