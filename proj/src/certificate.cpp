#include "sparsify/certificate.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>

#include "sparsify/random.hpp"
#include "sparsify/stretch_friendly.hpp"
#include "sparsify/ultra_sparse.hpp"

namespace sparsify {

int64_t edge_connectivity(const Graph& graph, const EdgeSet* restrict_to) {
  const int n = graph.node_count();
  if (n < 2) return std::numeric_limits<int64_t>::max();
  if (!is_connected(graph, restrict_to)) return 0;
  // Stoer-Wagner on the capacity matrix; merged nodes fold into survivors.
  std::vector<std::vector<int64_t>> cap(n, std::vector<int64_t>(n, 0));
  for (const Edge& e : graph.edges()) {
    if (restrict_to && !restrict_to->contains(e.id)) continue;
    ++cap[e.u][e.v];
    ++cap[e.v][e.u];
  }
  std::vector<int> active(n);
  for (int i = 0; i < n; ++i) active[i] = i;
  int64_t best = std::numeric_limits<int64_t>::max();
  while (active.size() > 1) {
    const size_t size = active.size();
    std::vector<int64_t> key(size, 0);
    std::vector<char> added(size, 0);
    size_t prev = 0, last = 0;
    for (size_t step = 0; step < size; ++step) {
      size_t pick = size;
      for (size_t i = 0; i < size; ++i) {
        if (!added[i] && (pick == size || key[i] > key[pick])) pick = i;
      }
      added[pick] = 1;
      prev = last;
      last = pick;
      if (step + 1 == size) best = std::min(best, key[pick]);
      for (size_t i = 0; i < size; ++i) {
        if (!added[i]) key[i] += cap[active[pick]][active[i]];
      }
    }
    const int keep = active[prev];
    const int drop = active[last];
    for (int x : active) {
      cap[keep][x] += cap[drop][x];
      cap[x][keep] = cap[keep][x];
    }
    cap[keep][keep] = 0;
    active.erase(active.begin() + static_cast<std::ptrdiff_t>(last));
  }
  return best;
}

namespace {

// Ultra-sparse skeleton of every component of graph[remaining].
EdgeSet skeleton_round(const Graph& graph, const EdgeSet& remaining, int t,
                       uint64_t seed) {
  EdgeSet out(remaining.size());
  const std::vector<int> label = connected_components(graph, &remaining);
  const int components =
      label.empty() ? 0 : *std::max_element(label.begin(), label.end()) + 1;
  std::vector<std::vector<NodeId>> members(components);
  for (NodeId v = 0; v < graph.node_count(); ++v) members[label[v]].push_back(v);

  std::vector<EdgeId> residual_to_base;
  const Graph residual = edge_subgraph(graph, remaining, &residual_to_base);
  for (int c = 0; c < components; ++c) {
    if (members[c].size() < 2) continue;
    std::vector<EdgeId> to_residual;
    const Graph part = induced_subgraph(residual, members[c], &to_residual);
    const int inner_k = std::max(1, ceil_log2(part.node_count()));
    const EdgeSet local = ultra_sparse_spanner(
        part, t,
        baswana_sen_inner(inner_k,
                          derive_seed(seed, {static_cast<uint64_t>(c)})));
    for (EdgeId e : local.ids()) out.insert(to_residual[e]);
  }
  EdgeSet mapped(graph.edge_count());
  for (EdgeId e : out.ids()) mapped.insert(residual_to_base[e]);
  return mapped;
}

}  // namespace

EdgeSet certificate_small_k(const Graph& graph, int k, double epsilon,
                            uint64_t seed, SmallKReport* report) {
  if (k < 1) throw std::invalid_argument("k must be at least 1");
  if (!(epsilon > 0) || epsilon > 1) {
    throw std::invalid_argument("epsilon must lie in (0, 1]");
  }
  const int t = static_cast<int>(std::ceil(1.0 / epsilon - 1e-12));
  SmallKReport local;
  local.skeleton_parameter = t;
  EdgeSet cert(graph.edge_count());
  EdgeSet remaining = EdgeSet::all(graph);
  for (int round = 1; round <= k && remaining.size() > 0; ++round) {
    const EdgeSet skeleton = skeleton_round(
        graph, remaining, t, derive_seed(seed, {static_cast<uint64_t>(round)}));
    for (EdgeId e : skeleton.ids()) {
      cert.insert(e);
      remaining.erase(e);
    }
    local.rounds.push_back(skeleton);
  }
  if (report) *report = std::move(local);
  return cert;
}

EdgeSet certificate_large_k(const Graph& graph, int k, double epsilon,
                            uint64_t seed, const LargeKOptions& options,
                            LargeKReport* report) {
  if (k < 1) throw std::invalid_argument("k must be at least 1");
  if (!(epsilon > 0) || epsilon >= 0.5) {
    throw std::invalid_argument("epsilon must lie in (0, 1/2)");
  }
  if (!(options.karger_constant > 0)) {
    throw std::invalid_argument("Karger constant must be positive");
  }
  const int n = graph.node_count();
  LargeKReport local;
  local.inner_epsilon = epsilon / 8;
  const double e = local.inner_epsilon;
  const double log_n = std::log(std::max(2, n));
  local.parts = std::max(
      1, static_cast<int>(std::floor(k * e * e / (options.karger_constant * log_n))));
  local.part_of.assign(graph.edge_count(), 0);

  EdgeSet cert;
  if (local.parts == 1) {
    local.part_k = k;
    local.part_sizes = {graph.edge_count()};
    cert = certificate_small_k(graph, k, e, seed);
  } else {
    const int q = local.parts;
    local.part_k = static_cast<int>(
        std::ceil(k * (1 + e) / (q * (1 - e)) - 1e-12));
    std::vector<EdgeSet> parts(q, EdgeSet(graph.edge_count()));
    for (EdgeId id = 0; id < graph.edge_count(); ++id) {
      const double u =
          unit_interval(derive_seed(seed, {0x9a57u, static_cast<uint64_t>(id)}));
      const int part = std::min(q - 1, static_cast<int>(u * q));
      local.part_of[id] = part;
      parts[part].insert(id);
    }
    cert = EdgeSet(graph.edge_count());
    for (int p = 0; p < q; ++p) {
      local.part_sizes.push_back(parts[p].size());
      std::vector<EdgeId> to_base;
      const Graph sub = edge_subgraph(graph, parts[p], &to_base);
      const EdgeSet part_cert = certificate_small_k(
          sub, local.part_k, e, derive_seed(seed, {static_cast<uint64_t>(p)}));
      for (EdgeId id : part_cert.ids()) cert.insert(to_base[id]);
    }
  }
  if (report) *report = std::move(local);
  return cert;
}

CertificateReport verify_certificate(const Graph& graph, const EdgeSet& cert,
                                     int k) {
  return verify_certificate(graph, cert, k,
                            graph.node_count() <= kMaxEnumerationNodes
                                ? VerifyMode::kEnumerate
                                : VerifyMode::kMinCut);
}

CertificateReport verify_certificate(const Graph& graph, const EdgeSet& cert,
                                     int k, VerifyMode mode) {
  for (EdgeId e : cert.ids()) {
    if (e >= graph.edge_count()) {
      throw std::invalid_argument("certificate edge outside the graph");
    }
  }
  CertificateReport report;
  report.mode = mode;
  const int n = graph.node_count();
  if (mode == VerifyMode::kMinCut) {
    report.graph_connectivity = edge_connectivity(graph);
    report.certificate_connectivity = edge_connectivity(graph, &cert);
    report.ok = report.certificate_connectivity >=
                std::min<int64_t>(report.graph_connectivity, k);
    return report;
  }
  if (n > kMaxEnumerationNodes) {
    throw std::invalid_argument("cut enumeration needs at most 18 nodes");
  }
  if (n < 2) return report;
  const uint64_t limit = uint64_t{1} << (n - 1);
  for (uint64_t half = 1; half < limit; ++half) {
    const uint64_t side = half << 1;  // node 0 stays outside
    int size = 0, kept = 0;
    for (const Edge& e : graph.edges()) {
      if (((side >> e.u) & 1) == ((side >> e.v) & 1)) continue;
      ++size;
      kept += cert.contains(e.id);
    }
    ++report.cuts_checked;
    if (kept < std::min(size, k)) {
      report.ok = false;
      report.failing_cut = side;
      report.cut_size = size;
      report.cut_kept = kept;
      return report;
    }
  }
  return report;
}

}  // namespace sparsify
