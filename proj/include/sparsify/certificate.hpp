#pragma once

#include <cstdint>
#include <vector>

#include "sparsify/graph.hpp"

namespace sparsify {

// Global edge connectivity (unit capacity per edge, weights ignored).
// 0 for a disconnected graph; INT64_MAX when there are fewer than 2 nodes.
int64_t edge_connectivity(const Graph& graph,
                          const EdgeSet* restrict_to = nullptr);

struct SmallKReport {
  int skeleton_parameter = 0;     // t = ceil(1/eps)
  std::vector<EdgeSet> rounds;    // H_1..H_k, each over the base edge ids
};

// k rounds; round i takes an ultra-sparse skeleton of every connected
// component of G minus H_1..H_{i-1}. Each round has at most n(1+eps) edges,
// so |H| <= n k (1+eps), and every cut keeps min(|cut|, k) of its edges.
EdgeSet certificate_small_k(const Graph& graph, int k, double epsilon,
                            uint64_t seed = 1, SmallKReport* report = nullptr);

struct LargeKOptions {
  double karger_constant = 3.0;
};

struct LargeKReport {
  double inner_epsilon = 0;  // eps / 8
  int parts = 0;             // Q
  int part_k = 0;            // k' (k itself when Q = 1)
  std::vector<int> part_of;  // edge -> part
  std::vector<int> part_sizes;
};

// Uniform split of the edges into Q = max(1, floor(k e^2 / (c ln n))) parts
// with e = eps/8, and a k'-certificate per part with
// k' = ceil(k (1+e) / (Q (1-e))). Q = 1 is certificate_small_k(G, k, e).
// Throws std::invalid_argument unless 0 < eps < 1/2.
EdgeSet certificate_large_k(const Graph& graph, int k, double epsilon,
                            uint64_t seed, const LargeKOptions& options = {},
                            LargeKReport* report = nullptr);

enum class VerifyMode { kEnumerate, kMinCut };

struct CertificateReport {
  bool ok = true;
  VerifyMode mode = VerifyMode::kEnumerate;
  // Mode A: first failing cut as a side bitmask (node 0 always outside).
  uint64_t failing_cut = 0;
  int cut_size = 0;
  int cut_kept = 0;
  int64_t cuts_checked = 0;
  // Mode B.
  int64_t graph_connectivity = 0;
  int64_t certificate_connectivity = 0;
};

inline constexpr int kMaxEnumerationNodes = 18;

// Mode A when n <= 18: every cut keeps min(|cut|, k) edges. Otherwise
// mode B: lambda(H) >= min(lambda(G), k).
CertificateReport verify_certificate(const Graph& graph, const EdgeSet& cert,
                                     int k);
CertificateReport verify_certificate(const Graph& graph, const EdgeSet& cert,
                                     int k, VerifyMode mode);

}  // namespace sparsify
