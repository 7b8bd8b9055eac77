#pragma once

#include <cstdint>

#include "sparsify/graph.hpp"

namespace sparsify {

// Weighted variants draw integer weights uniformly from [1, max_weight].
struct WeightSpec {
  bool weighted = false;
  Weight max_weight = 1000;
};

Graph gnp_graph(int n, double p, WeightSpec weights, uint64_t seed);
Graph cycle_graph(int n, WeightSpec weights, uint64_t seed);
Graph path_graph(int n, WeightSpec weights, uint64_t seed);
Graph grid_graph(int rows, int cols, WeightSpec weights, uint64_t seed);
Graph complete_graph(int n, WeightSpec weights, uint64_t seed);
// Uniform random recursive tree: node i attaches to a random earlier node.
Graph random_tree(int n, WeightSpec weights, uint64_t seed);
// G(n,p) resampled until its edge connectivity is at least k (n <= 300).
Graph k_connected_random(int n, int k, double p, WeightSpec weights,
                         uint64_t seed);
// Random tree plus G(n,p) extra edges; always connected.
Graph connected_gnp(int n, double p, WeightSpec weights, uint64_t seed);

}  // namespace sparsify
