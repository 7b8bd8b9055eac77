#include "sparsify/generators.hpp"

#include <algorithm>
#include <random>
#include <stdexcept>

#include "sparsify/certificate.hpp"
#include "sparsify/random.hpp"

namespace sparsify {

namespace {

Graph empty_graph(int n, const WeightSpec& weights) {
  if (n < 0) throw std::invalid_argument("node count must be non-negative");
  if (weights.weighted && weights.max_weight < 1) {
    throw std::invalid_argument("max weight must be at least 1");
  }
  return Graph(n, weights.weighted,
               weights.weighted ? std::max(weights.max_weight, Weight{1})
                                : kDefaultMaxWeight);
}

Weight draw_weight(const WeightSpec& weights, Rng& rng) {
  if (!weights.weighted) return 1;
  return std::uniform_int_distribution<Weight>(1, weights.max_weight)(rng);
}

void check_probability(double p) {
  if (!(p >= 0.0 && p <= 1.0)) {
    throw std::invalid_argument("edge probability must lie in [0, 1]");
  }
}

}  // namespace

Graph gnp_graph(int n, double p, WeightSpec weights, uint64_t seed) {
  check_probability(p);
  Graph g = empty_graph(n, weights);
  Rng rng(seed);
  std::bernoulli_distribution coin(p);
  for (NodeId u = 0; u < n; ++u) {
    for (NodeId v = u + 1; v < n; ++v) {
      if (coin(rng)) g.add_edge(u, v, draw_weight(weights, rng));
    }
  }
  return g;
}

Graph cycle_graph(int n, WeightSpec weights, uint64_t seed) {
  if (n < 3) throw std::invalid_argument("a cycle needs at least 3 nodes");
  Graph g = empty_graph(n, weights);
  Rng rng(seed);
  for (NodeId v = 0; v < n; ++v) {
    g.add_edge(v, (v + 1) % n, draw_weight(weights, rng));
  }
  return g;
}

Graph path_graph(int n, WeightSpec weights, uint64_t seed) {
  Graph g = empty_graph(n, weights);
  Rng rng(seed);
  for (NodeId v = 0; v + 1 < n; ++v) g.add_edge(v, v + 1, draw_weight(weights, rng));
  return g;
}

Graph grid_graph(int rows, int cols, WeightSpec weights, uint64_t seed) {
  if (rows < 1 || cols < 1) throw std::invalid_argument("grid needs rows, cols >= 1");
  Graph g = empty_graph(rows * cols, weights);
  Rng rng(seed);
  for (int r = 0; r < rows; ++r) {
    for (int c = 0; c < cols; ++c) {
      const NodeId v = r * cols + c;
      if (c + 1 < cols) g.add_edge(v, v + 1, draw_weight(weights, rng));
      if (r + 1 < rows) g.add_edge(v, v + cols, draw_weight(weights, rng));
    }
  }
  return g;
}

Graph complete_graph(int n, WeightSpec weights, uint64_t seed) {
  return gnp_graph(n, 1.0, weights, seed);
}

Graph random_tree(int n, WeightSpec weights, uint64_t seed) {
  Graph g = empty_graph(n, weights);
  Rng rng(seed);
  for (NodeId v = 1; v < n; ++v) {
    const NodeId parent = std::uniform_int_distribution<NodeId>(0, v - 1)(rng);
    g.add_edge(parent, v, draw_weight(weights, rng));
  }
  return g;
}

Graph connected_gnp(int n, double p, WeightSpec weights, uint64_t seed) {
  check_probability(p);
  Graph g = random_tree(n, weights, seed);
  Rng rng(derive_seed(seed, {1}));
  std::bernoulli_distribution coin(p);
  for (NodeId u = 0; u < n; ++u) {
    for (NodeId v = u + 1; v < n; ++v) {
      const bool take = coin(rng);
      const Weight w = draw_weight(weights, rng);
      if (take && !g.find_edge(u, v)) g.add_edge(u, v, w);
    }
  }
  return g;
}

Graph k_connected_random(int n, int k, double p, WeightSpec weights,
                         uint64_t seed) {
  check_probability(p);
  if (k < 1 || k >= n) throw std::invalid_argument("need 1 <= k < n");
  if (n > 300) throw std::invalid_argument("exact check limited to n <= 300");
  constexpr int kAttempts = 1000;
  for (int attempt = 0; attempt < kAttempts; ++attempt) {
    Graph g = gnp_graph(n, p, weights,
                        derive_seed(seed, {static_cast<uint64_t>(attempt)}));
    if (edge_connectivity(g) >= k) return g;
  }
  throw std::invalid_argument("no k-connected sample found; raise p");
}

}  // namespace sparsify
