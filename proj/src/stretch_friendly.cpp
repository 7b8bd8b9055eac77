#include "sparsify/stretch_friendly.hpp"

#include <algorithm>
#include <queue>
#include <stdexcept>
#include <string>
#include <tuple>

namespace sparsify {

int ceil_log2(int64_t value) {
  int bits = 0;
  while ((int64_t{1} << bits) < value) ++bits;
  return bits;
}

OrientedClusterView orient(const Graph& graph, const Clustering& clustering,
                           int small_below) {
  const int count = clustering.cluster_count();
  OrientedClusterView view;
  view.size.resize(count);
  view.out_neighbor.assign(count, -1);
  view.out_edge.assign(count, kNoEdge);
  view.small.resize(count);
  for (int c = 0; c < count; ++c) {
    view.size[c] = static_cast<int>(clustering.cluster(c).members.size());
    view.small[c] = view.size[c] < small_below;
  }
  for (const Edge& e : graph.edges()) {
    const int cu = clustering.cluster_of(e.u);
    const int cv = clustering.cluster_of(e.v);
    if (cu == cv) continue;
    for (auto [from, to] : {std::pair{cu, cv}, std::pair{cv, cu}}) {
      const EdgeId best = view.out_edge[from];
      if (best == kNoEdge ||
          std::tie(e.weight, e.id) <
              std::tie(graph.edge(best).weight, graph.edge(best).id)) {
        view.out_edge[from] = e.id;
        view.out_neighbor[from] = to;
      }
    }
  }
  return view;
}

std::vector<int> coloring_forest(const OrientedClusterView& view) {
  std::vector<int> parent = view.out_neighbor;
  for (int c = 0; c < view.cluster_count(); ++c) {
    const int p = parent[c];
    if (p >= 0 && view.out_neighbor[p] == c && c < p) parent[c] = -1;
  }
  return parent;
}

// ---------------------------------------------------------------------------
// Coloring program. Every round each node sends its current color and
// whether the receiver is its parent. Round 1 announces ids; round 1 + s
// runs step s of the schedule: reduction_steps Cole–Vishkin steps, then for
// each color 5, 4, 3 a shift-down step followed by a recolor step.

namespace {

struct ColorState : NodeState {
  NodeId id = 0;
  int node_count = 0;
  int parent = -1;
  uint64_t color = 0;
  std::vector<NodeId> neighbors;
};

int lowest_differing_bit(uint64_t a, uint64_t b) {
  if (a == b) throw std::logic_error("coloring: child repeats parent color");
  int i = 0;
  while (((a >> i) & 1U) == ((b >> i) & 1U)) ++i;
  return i;
}

}  // namespace

int ColorReduction::reduction_steps(int node_count) {
  int steps = 0;
  uint64_t bound = std::max(node_count, 1);  // colors lie in [0, bound)
  while (bound > 6) {
    bound = 2 * static_cast<uint64_t>(MessageWriter::width(bound));
    ++steps;
  }
  return steps;
}

InitResult ColorReduction::init(const LocalView& view) const {
  auto state = std::make_unique<ColorState>();
  state->id = view.id;
  state->node_count = view.node_count;
  state->parent = parent_.at(view.id);
  state->color = static_cast<uint64_t>(view.id);
  for (const LocalEdge& e : view.edges) state->neighbors.push_back(e.neighbor);
  InitResult result;
  result.state = std::move(state);
  return result;
}

StepResult ColorReduction::step(NodeState& base, int round,
                                const Inbox& inbox) const {
  auto& s = static_cast<ColorState&>(base);
  const int color_bits =
      MessageWriter::width(static_cast<uint64_t>(std::max(s.node_count, 7)));
  const int cv_steps = reduction_steps(s.node_count);
  const int last_step = cv_steps + 6;
  StepResult result;

  if (round > 1) {
    const int step = round - 1;
    uint64_t parent_color = 0;
    bool have_parent = false;
    std::vector<uint64_t> child_colors;
    for (const auto& [from, message] : inbox) {
      MessageReader r(message);
      const uint64_t color = r.get(color_bits);
      const bool child = r.get(1) != 0;
      if (from == s.parent) {
        parent_color = color;
        have_parent = true;
      }
      if (child) child_colors.push_back(color);
    }
    if (s.parent >= 0 && !have_parent) {
      throw std::logic_error("coloring: parent message missing");
    }
    if (step <= cv_steps) {
      const int i =
          s.parent >= 0 ? lowest_differing_bit(s.color, parent_color) : 0;
      s.color = 2 * static_cast<uint64_t>(i) + ((s.color >> i) & 1U);
    } else {
      const int phase = step - cv_steps - 1;  // 0..5
      const uint64_t target = 5 - phase / 2;
      if (phase % 2 == 0) {
        // Shift down: children of a node end up sharing one color.
        if (s.parent >= 0) {
          s.color = parent_color;
        } else if (!child_colors.empty()) {
          s.color = s.color == 0 ? 1 : 0;
        }
      } else if (s.color == target) {
        const uint64_t child = child_colors.empty() ? 7 : child_colors.front();
        for (uint64_t c = 0; c < 3; ++c) {
          if ((s.parent < 0 || c != parent_color) && c != child) {
            s.color = c;
            break;
          }
        }
      }
    }
    if (step == last_step) {
      result.halt = Output{static_cast<int64_t>(s.color)};
      return result;
    }
  }
  for (NodeId to : s.neighbors) {
    MessageWriter w;
    w.put(s.color, color_bits).put(to == s.parent ? 1 : 0, 1);
    result.outbox[to] = w.finish();
  }
  return result;
}

ColoringResult color3(const Graph& graph, const Clustering& clustering,
                      const OrientedClusterView& view) {
  ColorReduction program(coloring_forest(view));
  RunOptions options;
  options.max_rounds =
      ColorReduction::reduction_steps(view.cluster_count()) + 8;
  ColoringResult result;
  result.trace = run_on_cluster_graph(graph, clustering, program, options);
  result.color.resize(view.cluster_count());
  for (int c = 0; c < view.cluster_count(); ++c) {
    result.color[c] = static_cast<int>(result.trace.outputs[c]->at(0));
  }
  if (!is_proper_coloring(view, result.color)) {
    throw std::logic_error("color3 produced an improper coloring");
  }
  return result;
}

bool is_proper_coloring(const OrientedClusterView& view,
                        const std::vector<int>& color) {
  for (int c = 0; c < view.cluster_count(); ++c) {
    if (color[c] < 0 || color[c] > 2) return false;
    const int out = view.out_neighbor[c];
    if (out >= 0 && color[out] == color[c]) return false;
  }
  return true;
}

std::vector<int> match_small(const OrientedClusterView& view,
                             const std::vector<int>& color) {
  const int count = view.cluster_count();
  std::vector<int> partner(count, -1);
  for (int sweep = 0; sweep < 3; ++sweep) {
    // Proposers all have color `sweep`, targets another color, so the two
    // roles never overlap within a sweep.
    std::vector<int> accepted(count, -1);
    for (int c = 0; c < count; ++c) {
      const int out = view.out_neighbor[c];
      if (color[c] != sweep || !view.small[c] || partner[c] >= 0 || out < 0 ||
          !view.small[out] || partner[out] >= 0) {
        continue;
      }
      if (accepted[out] < 0) accepted[out] = c;  // ascending: smallest wins
    }
    for (int target = 0; target < count; ++target) {
      if (accepted[target] < 0) continue;
      partner[target] = accepted[target];
      partner[accepted[target]] = target;
    }
  }
  check_maximal_matching(view, partner);
  return partner;
}

void check_maximal_matching(const OrientedClusterView& view,
                            const std::vector<int>& partner) {
  for (int c = 0; c < view.cluster_count(); ++c) {
    const int p = partner[c];
    if (p >= 0) {
      if (partner[p] != c || !view.small[c] || !view.small[p] ||
          (view.out_neighbor[c] != p && view.out_neighbor[p] != c)) {
        throw std::logic_error("invalid matching at cluster " +
                               std::to_string(c));
      }
      continue;
    }
    const int out = view.out_neighbor[c];
    if (view.small[c] && out >= 0 && view.small[out] && partner[out] < 0) {
      throw std::logic_error("matching not maximal: clusters " +
                             std::to_string(c) + " and " +
                             std::to_string(out) + " both unmatched");
    }
  }
}

Clustering merge_step(const Graph& graph, const Clustering& clustering,
                      const OrientedClusterView& view,
                      const std::vector<int>& partner) {
  const int count = view.cluster_count();
  // group[c] = representative old cluster whose root becomes the new root.
  std::vector<int> group(count, -1);
  std::vector<EdgeId> merge_edges;
  for (int c = 0; c < count; ++c) {
    const int p = partner[c];
    if (p < 0) continue;
    // The head is the cluster the matched edge points into.
    const bool c_is_head = view.out_neighbor[p] == c &&
                           (view.out_neighbor[c] != p || p < c);
    const int head = c_is_head ? c : p;
    group[c] = head;
    if (c != head) merge_edges.push_back(view.out_edge[c]);
  }
  for (int c = 0; c < count; ++c) {
    if (partner[c] < 0 && !view.small[c]) group[c] = c;
  }
  for (int c = 0; c < count; ++c) {
    if (group[c] >= 0) continue;
    const int out = view.out_neighbor[c];
    if (out < 0) {
      group[c] = c;  // whole component
      continue;
    }
    if (view.small[out] && partner[out] < 0) {
      throw std::logic_error("unmatched small cluster points at an "
                             "unmatched small cluster");
    }
    group[c] = group[out];
    merge_edges.push_back(view.out_edge[c]);
  }

  std::vector<std::vector<Incidence>> tree(graph.node_count());
  auto add_tree_edge = [&](EdgeId e) {
    const Edge& edge = graph.edge(e);
    tree[edge.u].push_back({edge.v, e});
    tree[edge.v].push_back({edge.u, e});
  };
  for (const Cluster& cluster : clustering.clusters()) {
    for (EdgeId e : cluster.tree_edges) add_tree_edge(e);
  }
  for (EdgeId e : merge_edges) add_tree_edge(e);

  std::vector<NodeId> roots;
  for (int c = 0; c < count; ++c) {
    if (group[c] == c) roots.push_back(clustering.cluster(c).root);
  }
  std::sort(roots.begin(), roots.end());
  Clustering next(graph.node_count());
  for (NodeId root : roots) {
    next.add_cluster(root);
    std::queue<NodeId> frontier;
    frontier.push(root);
    while (!frontier.empty()) {
      const NodeId x = frontier.front();
      frontier.pop();
      for (const Incidence& inc : tree[x]) {
        if (next.clustered(inc.neighbor)) continue;
        next.attach(inc.neighbor, x, inc.edge);
        frontier.push(inc.neighbor);
      }
    }
  }
  if (next.clustered_count() != clustering.clustered_count()) {
    throw std::logic_error("merge lost nodes");
  }
  return next;
}

Clustering stretch_friendly_partition(const Graph& graph, int t,
                                      PartitionReport* report) {
  if (t < 1) throw std::invalid_argument("t must be at least 1");
  PartitionReport local;
  Clustering clustering = Clustering::singletons(graph.node_count());
  const int iterations = ceil_log2(t);
  for (int i = 1; i <= iterations; ++i) {
    const int threshold = 1 << i;
    const OrientedClusterView view = orient(graph, clustering, threshold);
    const ColoringResult coloring = color3(graph, clustering, view);
    local.coloring_logical_rounds += coloring.trace.logical_rounds;
    local.coloring_physical_rounds += coloring.trace.physical_rounds;
    const std::vector<int> partner = match_small(view, coloring.color);
    clustering = merge_step(graph, clustering, view, partner);
    ++local.iterations;

    for (const Cluster& cluster : clustering.clusters()) {
      if (cluster.radius >= 3 * threshold) {
        throw std::logic_error("cluster radius " +
                               std::to_string(cluster.radius) +
                               " reaches 3 * 2^" + std::to_string(i));
      }
    }
    const FriendlyReport friendly = verify_stretch_friendly(graph, clustering);
    if (!friendly.ok) {
      throw std::logic_error("merge broke stretch-friendliness: " +
                             friendly.message);
    }
  }
  // Clusters below 2^i can only be whole components.
  const int final_size = 1 << iterations;
  for (const Cluster& cluster : clustering.clusters()) {
    const int size = static_cast<int>(cluster.members.size());
    if (size >= final_size) continue;
    for (NodeId v : cluster.members) {
      for (const Incidence& inc : graph.neighbors(v)) {
        if (clustering.cluster_of(inc.neighbor) != cluster.id) {
          throw std::logic_error("undersized cluster has a boundary edge");
        }
      }
    }
    if (size < t) local.undersized_clusters.push_back(cluster.id);
  }
  if (report) *report = local;
  return clustering;
}

}  // namespace sparsify
