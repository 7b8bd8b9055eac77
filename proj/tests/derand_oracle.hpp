#pragma once

#include <cmath>
#include <vector>

#include "sparsify/derand.hpp"

// Utility oracles rebuilt from per-node decisions, independent of the
// expectation code.
namespace oracle {

using namespace sparsify;

// U for a complete assignment from the join/die decision of every alive
// node.
inline mpq_class utility_by_decisions(const BSState& state,
                                      const UtilityContext& ctx,
                                      const SampleVector& samples) {
  mpq_class total = 0;
  for (char s : samples) total += s ? ctx.cluster_coefficient() : mpq_class(0);
  const mpq_class penalty = mpq_class(ctx.node_count) * ctx.node_count *
                            ctx.node_count * ctx.node_count * ctx.node_count;
  for (NodeId v = 0; v < state.graph->node_count(); ++v) {
    if (!state.alive_node[v]) continue;
    const auto adjacent = adjacent_clusters(state, v);
    std::vector<char> at;
    for (const auto& a : adjacent) at.push_back(samples[a.cluster]);
    const bool own = samples[state.clustering.cluster_of(v)] != 0;
    const NodeDecision d = decide(adjacent, own, at);
    const double degree = static_cast<double>(adjacent.size());
    const bool ignored = !ctx.weighted && degree <= std::log(ctx.g) / ctx.p.get_d();
    if (!ignored) total += static_cast<long>(d.added_positions.size());
    const bool high = degree >= 10.0 * std::log(ctx.node_count) / ctx.p.get_d();
    if (high && d.dies) total += penalty;
  }
  return total;
}

// Exact E[U | partial] by enumerating every completion.
inline mpq_class expectation_by_enumeration(const BSState& state,
                                            const UtilityContext& ctx,
                                            const PartialAssignment& partial) {
  std::vector<int> unset;
  for (int c = 0; c < partial.size(); ++c) {
    if (partial.get(c) == Bit::kUnset) unset.push_back(c);
  }
  const mpq_class q = ctx.p / 4;
  mpq_class total = 0;
  for (uint32_t mask = 0; mask < (1u << unset.size()); ++mask) {
    SampleVector s(partial.size());
    mpq_class weight = 1;
    for (int c = 0; c < partial.size(); ++c) {
      if (partial.get(c) != Bit::kUnset) s[c] = partial.get(c) == Bit::kOne;
    }
    for (size_t i = 0; i < unset.size(); ++i) {
      const bool one = (mask >> i) & 1u;
      s[unset[i]] = one;
      weight *= one ? q : 1 - q;
    }
    total += weight * utility_by_decisions(state, ctx, s);
  }
  return total;
}

}  // namespace oracle
