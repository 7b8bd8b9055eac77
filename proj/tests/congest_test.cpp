#include <gtest/gtest.h>

#include "sparsify/baswana_sen.hpp"
#include "sparsify/congest.hpp"
#include "sparsify/generators.hpp"
#include "sparsify/stretch_friendly.hpp"

using namespace sparsify;

namespace {

// Floods the extreme id seen so far and halts after `halt_round` rounds
// with that id as output.
class FloodExtreme : public NodeProgram {
 public:
  FloodExtreme(bool take_min, int halt_round)
      : take_min_(take_min), halt_round_(halt_round) {}

  struct State : NodeState {
    int node_count = 0;
    int64_t best = 0;
    std::vector<NodeId> neighbors;
  };

  InitResult init(const LocalView& view) const override {
    auto s = std::make_unique<State>();
    s->node_count = view.node_count;
    s->best = view.id;
    for (const LocalEdge& e : view.edges) s->neighbors.push_back(e.neighbor);
    return {std::move(s), std::nullopt};
  }

  StepResult step(NodeState& base, int round, const Inbox& inbox) const override {
    auto& s = static_cast<State&>(base);
    const int bits = MessageWriter::width(s.node_count + 16);
    for (const auto& [from, message] : inbox) {
      MessageReader r(message);
      const int64_t value = static_cast<int64_t>(r.get(bits));
      s.best = take_min_ ? std::min(s.best, value) : std::max(s.best, value);
    }
    StepResult result;
    if (round == halt_round_) {
      result.halt = Output{s.best};
      return result;
    }
    for (NodeId to : s.neighbors) {
      MessageWriter w;
      w.put(static_cast<uint64_t>(s.best), bits);
      result.outbox[to] = w.finish();
    }
    return result;
  }

 private:
  bool take_min_;
  int halt_round_;
};

class HaltAtInit : public NodeProgram {
 public:
  InitResult init(const LocalView& view) const override {
    return {std::make_unique<NodeState>(), Output{view.id}};
  }
  StepResult step(NodeState&, int, const Inbox&) const override { return {}; }
};

// Sends `bits` zero bits to every neighbor each round, never halts.
class Chatter : public NodeProgram {
 public:
  explicit Chatter(int bits) : bits_(bits) {}
  struct State : NodeState {
    std::vector<NodeId> neighbors;
  };
  InitResult init(const LocalView& view) const override {
    auto s = std::make_unique<State>();
    for (const LocalEdge& e : view.edges) s->neighbors.push_back(e.neighbor);
    return {std::move(s), std::nullopt};
  }
  StepResult step(NodeState& base, int, const Inbox&) const override {
    StepResult result;
    for (NodeId to : static_cast<State&>(base).neighbors) {
      MessageWriter w;
      for (int i = 0; i < bits_; i += 32) w.put(0, std::min(32, bits_ - i));
      result.outbox[to] = w.finish();
    }
    return result;
  }

 private:
  int bits_;
};

}  // namespace

TEST(MessageTest, FieldsRoundTrip) {
  MessageWriter w;
  w.put(5, 3).put(0, 1).put(123456789, 40).put(~uint64_t{0}, 64);
  const Message m = w.finish();
  EXPECT_EQ(m.bit_count, 108);
  MessageReader r(m);
  EXPECT_EQ(r.get(3), 5u);
  EXPECT_EQ(r.get(1), 0u);
  EXPECT_EQ(r.get(40), 123456789u);
  EXPECT_EQ(r.get(64), ~uint64_t{0});
  EXPECT_TRUE(r.exhausted());
  EXPECT_THROW(r.get(1), std::out_of_range);
  MessageWriter tight;
  EXPECT_THROW(tight.put(8, 3), std::invalid_argument);
}

TEST(MessageTest, WidthCoversRange) {
  EXPECT_EQ(MessageWriter::width(1), 1);
  EXPECT_EQ(MessageWriter::width(2), 1);
  EXPECT_EQ(MessageWriter::width(3), 2);
  EXPECT_EQ(MessageWriter::width(256), 8);
  EXPECT_EQ(MessageWriter::width(257), 9);
}

TEST(CongestRunTest, BroadcastMinOnPathOfFive) {
  const Graph g = path_graph(5, {}, 1);
  RunOptions options;
  const RoundTrace trace = run(g, FloodExtreme(true, 5), options);
  EXPECT_LE(trace.rounds_used, 5);
  for (NodeId v = 0; v < 5; ++v) EXPECT_EQ(trace.outputs[v]->at(0), 0);
}

TEST(CongestRunTest, HaltInInitUsesNoRounds) {
  const Graph g = cycle_graph(6, {}, 1);
  const RoundTrace trace = run(g, HaltAtInit(), {});
  EXPECT_EQ(trace.rounds_used, 0);
  EXPECT_EQ(trace.max_message_bits, 0);
  EXPECT_EQ(trace.outputs[3]->at(0), 3);
}

TEST(CongestRunTest, BudgetViolationNamesNodeRoundAndSize) {
  const Graph g = path_graph(3, {}, 1);
  RunOptions options;
  options.budget_bits = 64;
  try {
    run(g, Chatter(100), options);
    FAIL() << "expected a budget violation";
  } catch (const BudgetViolation& e) {
    EXPECT_EQ(e.node, 0);
    EXPECT_EQ(e.round, 1);
    EXPECT_EQ(e.bits, 100);
  }
}

TEST(CongestRunTest, NonHaltingProgramTimesOut) {
  const Graph g = path_graph(3, {}, 1);
  RunOptions options;
  options.max_rounds = 7;
  EXPECT_THROW(run(g, Chatter(1), options), RoundTimeout);
}

TEST(CongestRunTest, DefaultBudgetIsSixtyFourLogN) {
  EXPECT_EQ(default_budget_bits(1), 64);
  EXPECT_EQ(default_budget_bits(2), 64);
  EXPECT_EQ(default_budget_bits(1024), 640);
  EXPECT_EQ(default_budget_bits(1000), 638);
}

TEST(CongestRunTest, IdenticalInputsGiveIdenticalTraces) {
  const Graph g = connected_gnp(40, 0.1, {true, 50}, 5);
  RunOptions options;
  options.seed = 17;
  const DistributedBaswanaSen program(3);
  EXPECT_EQ(run(g, program, options), run(g, program, options));
}

TEST(CongestRunTest, RaisingBudgetKeepsOutputs) {
  const Graph g = connected_gnp(30, 0.15, {}, 2);
  RunOptions tight;
  tight.budget_bits = 16;
  tight.seed = 3;
  RunOptions loose = tight;
  loose.budget_bits = 100000;
  const DistributedBaswanaSen program(2, false);
  const RoundTrace a = run(g, program, tight);
  const RoundTrace b = run(g, program, loose);
  EXPECT_EQ(a.outputs, b.outputs);
  EXPECT_EQ(a.rounds_used, b.rounds_used);
}

TEST(CongestRunTest, OutputsIgnoreGraftsBeyondHaltingRadius) {
  // A node halting at round T has heard from nodes up to T-1 hops away.
  const int halt = 5;
  Graph base = path_graph(10, {}, 1);
  Graph grafted(12);
  for (const Edge& e : base.edges()) grafted.add_edge(e.u, e.v);
  grafted.add_edge(9, 10);
  grafted.add_edge(10, 11);
  const RoundTrace a = run(base, FloodExtreme(false, halt), {});
  const RoundTrace b = run(grafted, FloodExtreme(false, halt), {});
  for (NodeId v = 0; v < 10; ++v) {
    const int distance_to_graft = 10 - v;
    if (distance_to_graft > halt - 1) {
      EXPECT_EQ(a.outputs[v], b.outputs[v]) << "node " << v;
    } else {
      EXPECT_NE(a.outputs[v], b.outputs[v]) << "node " << v;
    }
  }
}

TEST(CongestRunTest, TraceJsonHasAllFields) {
  const Graph g = path_graph(4, {}, 1);
  const std::string json = trace_to_json(run(g, FloodExtreme(true, 3), {}));
  for (const char* key : {"\"rounds\"", "\"max_message_bits\"", "\"per_round\"",
                          "\"outputs\""}) {
    EXPECT_NE(json.find(key), std::string::npos) << key;
  }
}

TEST(ClusterGraphRunTest, TrivialClusteringMatchesPlainRun) {
  // gnp edges are already in (lo, hi) order, so contracting singletons
  // keeps every edge id and outputs compare directly.
  const Graph g = gnp_graph(25, 0.2, {}, 4);
  const ClusterGraph identity = contract(g, Clustering::singletons(25));
  ASSERT_EQ(identity.graph.edge_count(), g.edge_count());
  for (EdgeId e = 0; e < g.edge_count(); ++e) ASSERT_EQ(identity.witness[e], e);
  RunOptions options;
  options.seed = 9;
  const DistributedBaswanaSen program(2);
  const RoundTrace plain = run(g, program, options);
  const RoundTrace clustered =
      run_on_cluster_graph(g, Clustering::singletons(25), program, options);
  EXPECT_EQ(plain.outputs, clustered.outputs);
  EXPECT_EQ(plain.rounds_used, clustered.rounds_used);
  EXPECT_EQ(clustered.physical_rounds, clustered.logical_rounds);
}

TEST(ClusterGraphRunTest, SingleClusterOneLogicalRound) {
  const Graph g = path_graph(7, {}, 1);
  const Clustering c = Clustering::from_sets(g, {{0, 1, 2, 3, 4, 5, 6}});
  const RoundTrace trace = run_on_cluster_graph(g, c, FloodExtreme(true, 1), {});
  EXPECT_EQ(trace.logical_rounds, 1);
  EXPECT_LE(trace.physical_rounds, 2 * c.max_radius() + 1);
}

TEST(ClusterGraphRunTest, ColoringOnTwoClusterPath) {
  // Clusters {0,1,2} and {3,4,5} rooted at 0 and 3, radius 2. Hand trace:
  // one announce round, no Cole–Vishkin steps for 2 colors, six shift and
  // recolor rounds; each logical round costs 2*2+1 physical rounds.
  const Graph g = path_graph(6, {}, 1);
  const Clustering c = Clustering::from_sets(g, {{0, 1, 2}, {3, 4, 5}});
  const OrientedClusterView view = orient(g, c, 100);
  const ColoringResult colors = color3(g, c, view);
  EXPECT_EQ(colors.trace.logical_rounds, 7);
  EXPECT_EQ(colors.trace.physical_rounds, 35);
  EXPECT_NE(colors.color[0], colors.color[1]);
}

TEST(ClusterGraphRunTest, RequiresPartition) {
  const Graph g = path_graph(3, {}, 1);
  Clustering c(3);
  c.add_cluster(0);
  EXPECT_THROW(run_on_cluster_graph(g, c, HaltAtInit(), {}), InvalidClustering);
}
