#include <gtest/gtest.h>

#include <cmath>
#include <sstream>

#include "oracles.hpp"
#include "sparsify/baswana_sen.hpp"
#include "sparsify/generators.hpp"
#include "sparsify/graph.hpp"
#include "sparsify/stretch_friendly.hpp"

using namespace sparsify;

namespace {

Graph weighted_path(std::initializer_list<Weight> weights) {
  Graph g(static_cast<int>(weights.size()) + 1, true);
  NodeId v = 0;
  for (Weight w : weights) {
    g.add_edge(v, v + 1, w);
    ++v;
  }
  return g;
}

}  // namespace

TEST(GraphTest, RejectsSelfLoopsParallelEdgesAndBadWeights) {
  Graph g(3, true, 100);
  g.add_edge(0, 1, 5);
  EXPECT_THROW(g.add_edge(1, 1, 1), GraphError);
  EXPECT_THROW(g.add_edge(1, 0, 2), GraphError);
  EXPECT_THROW(g.add_edge(1, 2, 101), GraphError);
  EXPECT_THROW(g.add_edge(1, 2, -1), GraphError);
  EXPECT_THROW(g.add_edge(0, 3, 1), GraphError);
  Graph u(2, false);
  EXPECT_THROW(u.add_edge(0, 1, 2), GraphError);
}

TEST(GraphTest, EdgeIdsAreDenseInInsertionOrder) {
  Graph g = cycle_graph(6, {}, 1);
  for (EdgeId e = 0; e < g.edge_count(); ++e) EXPECT_EQ(g.edge(e).id, e);
  EXPECT_EQ(*g.find_edge(1, 0), 0);
  EXPECT_FALSE(g.find_edge(0, 3).has_value());
}

TEST(ContractTest, TriangleWithOnePairCluster) {
  Graph g(3, true);
  g.add_edge(0, 1, 4);           // a-b
  const EdgeId ac = g.add_edge(0, 2, 7);
  const EdgeId bc = g.add_edge(1, 2, 3);
  const Clustering c = Clustering::from_sets(g, {{0, 1}, {2}});
  const ClusterGraph cg = contract(g, c);
  ASSERT_EQ(cg.graph.node_count(), 2);
  ASSERT_EQ(cg.graph.edge_count(), 1);
  EXPECT_EQ(cg.graph.edge(0).weight, std::min(g.edge(ac).weight, g.edge(bc).weight));
  EXPECT_EQ(cg.witness[0], bc);
}

TEST(ContractTest, SingletonsGiveIdentity) {
  const Graph g = gnp_graph(12, 0.4, {true, 50}, 3);
  const ClusterGraph cg = contract(g, Clustering::singletons(12));
  ASSERT_EQ(cg.graph.edge_count(), g.edge_count());
  for (EdgeId e = 0; e < cg.graph.edge_count(); ++e) {
    const Edge& base = g.edge(cg.witness[e]);
    EXPECT_EQ(cg.graph.edge(e).weight, base.weight);
    EXPECT_EQ(std::minmax(cg.graph.edge(e).u, cg.graph.edge(e).v),
              std::minmax(base.u, base.v));
  }
}

TEST(ContractTest, EightCycleInAdjacentPairsIsFourCycle) {
  const Graph g = cycle_graph(8, {}, 1);
  const Clustering c = Clustering::from_sets(g, {{0, 1}, {2, 3}, {4, 5}, {6, 7}});
  const ClusterGraph cg = contract(g, c);
  ASSERT_EQ(cg.graph.node_count(), 4);
  ASSERT_EQ(cg.graph.edge_count(), 4);
  for (NodeId v = 0; v < 4; ++v) EXPECT_EQ(cg.graph.degree(v), 2);
  EXPECT_TRUE(cg.graph.find_edge(0, 3).has_value());
}

TEST(ContractTest, TiesGoToSmallestEdgeId) {
  Graph g(4, true);
  g.add_edge(0, 1, 1);
  const EdgeId first = g.add_edge(0, 2, 5);
  g.add_edge(1, 3, 5);
  g.add_edge(2, 3, 1);
  const ClusterGraph cg =
      contract(g, Clustering::from_sets(g, {{0, 1}, {2, 3}}));
  ASSERT_EQ(cg.graph.edge_count(), 1);
  EXPECT_EQ(cg.witness[0], first);
}

TEST(ContractTest, OverlappingClustersAreRejected) {
  const Graph g = path_graph(4, {}, 1);
  EXPECT_THROW(Clustering::from_sets(g, {{0, 1}, {1, 2}}), InvalidClustering);
  Clustering c(4);
  c.add_cluster(0);
  EXPECT_THROW(c.add_cluster(0), InvalidClustering);
}

TEST(ContractTest, InverseMapRoundTrips) {
  const Graph g = connected_gnp(40, 0.1, {true, 20}, 9);
  const Clustering c = stretch_friendly_partition(g, 4);
  const ClusterGraph cg = contract(g, c);
  for (int v = 0; v < cg.graph.node_count(); ++v) {
    EXPECT_EQ(cg.inv[v], c.cluster(v).members);
    for (NodeId x : cg.inv[v]) EXPECT_EQ(c.cluster_of(x), v);
  }
}

TEST(ApspTest, PathWithWeightsOneAndTwo) {
  const Graph g = weighted_path({1, 2});
  EXPECT_EQ(apsp(g)[0][2], 3);
}

TEST(ApspTest, SingleNode) {
  const Graph g(1);
  EXPECT_EQ(apsp(g)[0][0], 0);
}

TEST(ApspTest, MatchesSimplePathEnumeration) {
  for (uint64_t seed = 1; seed <= 12; ++seed) {
    const int n = seed <= 6 ? 8 : 10;
    const Graph g = gnp_graph(n, 0.45, {true, 30}, seed);
    const DistanceMatrix d = apsp(g);
    for (NodeId s = 0; s < n; ++s) {
      for (NodeId t = 0; t < n; ++t) {
        const Weight expected = oracle::brute_force_distance(g, s, t);
        if (expected >= oracle::kUnreachable) {
          EXPECT_EQ(d[s][t], kInfinity);
        } else {
          EXPECT_EQ(d[s][t], expected) << "seed " << seed;
        }
      }
    }
  }
}

TEST(VerifyStretchTest, WholeGraphHasStretchOne) {
  const Graph g = gnp_graph(30, 0.2, {true, 100}, 4);
  const StretchReport r = verify_stretch(g, EdgeSet::all(g), Stretch::of(1));
  EXPECT_TRUE(r.ok);
  EXPECT_DOUBLE_EQ(r.worst_ratio, 1.0);
}

TEST(VerifyStretchTest, FourCycleMinusAnEdgeIsThreeSpanner) {
  const Graph g = cycle_graph(4, {}, 1);
  for (EdgeId drop = 0; drop < 4; ++drop) {
    EdgeSet h = EdgeSet::all(g);
    h.erase(drop);
    const StretchReport r = verify_stretch(g, h, Stretch::of(3));
    EXPECT_TRUE(r.ok);
    EXPECT_DOUBLE_EQ(r.worst_ratio, oracle::max_edge_stretch(g, h));
    EXPECT_DOUBLE_EQ(r.worst_ratio, 3.0);
    EXPECT_FALSE(verify_stretch(g, h, Stretch{5, 2}).ok);
  }
}

TEST(VerifyStretchTest, DisconnectingSpannerFailsWithInfiniteRatio) {
  const Graph g = path_graph(4, {}, 1);
  EdgeSet h = EdgeSet::all(g);
  h.erase(1);
  const StretchReport r = verify_stretch(g, h, Stretch::of(100));
  EXPECT_FALSE(r.ok);
  EXPECT_TRUE(std::isinf(r.worst_ratio));
  EXPECT_EQ(r.worst_edge, 1);
}

TEST(VerifyStretchTest, AgreesWithFloydWarshallOnRandomSubsets) {
  for (uint64_t seed = 1; seed <= 20; ++seed) {
    const Graph g = connected_gnp(20, 0.2, {true, 40}, seed);
    const EdgeSet h = baswana_sen_spanner(g, 2, seed);
    const StretchReport r = verify_stretch(g, h, Stretch::of(3));
    EXPECT_TRUE(r.ok);
    EXPECT_DOUBLE_EQ(r.worst_ratio, oracle::max_edge_stretch(g, h));
  }
}

TEST(StretchFriendlyCheckTest, UnweightedAlwaysFriendly) {
  const Graph g = connected_gnp(30, 0.15, {}, 2);
  const Clustering c = Clustering::from_sets(g, {{0}});
  EXPECT_TRUE(verify_stretch_friendly(g, c).ok);
  const Clustering whole = stretch_friendly_partition(g, 8);
  EXPECT_TRUE(verify_stretch_friendly(g, whole).ok);
}

TEST(StretchFriendlyCheckTest, StarWithHeavyBoundaryEdge) {
  Graph g(5, true);
  g.add_edge(0, 1, 1);
  g.add_edge(0, 2, 1);
  g.add_edge(0, 3, 1);
  g.add_edge(3, 4, 5);
  const Clustering c = Clustering::from_sets(g, {{0, 1, 2, 3}});
  EXPECT_TRUE(verify_stretch_friendly(g, c).ok);
}

TEST(StretchFriendlyCheckTest, PathRootedAtFarEndViolates) {
  // a=0, b=1, c=2, outside node 3 hangs off a with weight 2.
  Graph g(4, true);
  const EdgeId ab = g.add_edge(0, 1, 3);
  const EdgeId bc = g.add_edge(1, 2, 1);
  const EdgeId boundary = g.add_edge(0, 3, 2);
  Clustering c(4);
  c.add_cluster(2);
  c.attach(1, 2, bc);
  c.attach(0, 1, ab);
  const FriendlyReport r = verify_stretch_friendly(g, c);
  EXPECT_FALSE(r.ok);
  EXPECT_EQ(r.violating_edge, boundary);
  EXPECT_EQ(r.heavier_tree_edge, ab);
}

TEST(ComposeTest, TrivialClusteringKeepsWitnesses) {
  const Graph g = gnp_graph(15, 0.3, {true, 10}, 5);
  const ClusterGraph cg = contract(g, Clustering::singletons(15));
  const EdgeSet out = compose_spanner(g, cg, EdgeSet::all(cg.graph));
  EXPECT_EQ(out, EdgeSet::all(g));
}

TEST(ComposeTest, SingleClusterGivesSpanningTree) {
  const Graph g = connected_gnp(20, 0.3, {}, 6);
  std::vector<NodeId> all(20);
  for (NodeId v = 0; v < 20; ++v) all[v] = v;
  const ClusterGraph cg = contract(g, Clustering::from_sets(g, {all}));
  const EdgeSet out = compose_spanner(g, cg, EdgeSet(cg.graph.edge_count()));
  EXPECT_EQ(out.size(), 19);
  EXPECT_TRUE(is_connected(g, &out));
}

TEST(ComposeTest, EightCycleWithThreeClusterEdges) {
  const Graph g = cycle_graph(8, {}, 1);
  const Clustering c = Clustering::from_sets(g, {{0, 1}, {2, 3}, {4, 5}, {6, 7}});
  const ClusterGraph cg = contract(g, c);
  EdgeSet inner = EdgeSet::all(cg.graph);
  inner.erase(0);
  const EdgeSet out = compose_spanner(g, cg, inner);
  EXPECT_EQ(out.size(), 7);
  const double measured = oracle::max_edge_stretch(g, out);
  EXPECT_DOUBLE_EQ(measured, 7.0);  // the dropped edge goes round the cycle
  EXPECT_EQ(composed_stretch(1, 3), 11);
  EXPECT_TRUE(verify_stretch(g, out, Stretch::of(11)).ok);
}

TEST(ComposeTest, RequiresPartition) {
  const Graph g = path_graph(3, {}, 1);
  Clustering c(3);
  c.add_cluster(0);
  const ClusterGraph cg = contract(g, c);
  EXPECT_THROW(compose_spanner(g, cg, EdgeSet(cg.graph.edge_count())),
               InvalidClustering);
}

TEST(ComposeTest, ComposedStretchBoundHoldsOnRandomGraphs) {
  for (uint64_t seed = 1; seed <= 10; ++seed) {
    const Graph g = connected_gnp(60, 0.1, {true, 100}, seed);
    const Clustering c = stretch_friendly_partition(g, 4);
    const ClusterGraph cg = contract(g, c);
    const EdgeSet inner = baswana_sen_spanner(cg.graph, 2, seed);
    const StretchReport inner_report =
        verify_stretch(cg.graph, inner, Stretch::of(3));
    ASSERT_TRUE(inner_report.ok);
    const EdgeSet out = compose_spanner(g, cg, inner);
    EXPECT_TRUE(
        verify_stretch(g, out, Stretch::of(composed_stretch(c.max_radius(), 3))).ok)
        << "seed " << seed;
  }
}

TEST(SubgraphTest, EdgeAndInducedSubgraphsMapBack) {
  const Graph g = gnp_graph(10, 0.5, {true, 9}, 8);
  EdgeSet half(g.edge_count());
  for (EdgeId e = 0; e < g.edge_count(); e += 2) half.insert(e);
  std::vector<EdgeId> to_base;
  const Graph sub = edge_subgraph(g, half, &to_base);
  ASSERT_EQ(sub.edge_count(), half.size());
  for (EdgeId e = 0; e < sub.edge_count(); ++e) {
    EXPECT_EQ(sub.edge(e).weight, g.edge(to_base[e]).weight);
  }
  const Graph ind = induced_subgraph(g, {2, 5, 7}, &to_base);
  for (EdgeId e = 0; e < ind.edge_count(); ++e) {
    const Edge& b = g.edge(to_base[e]);
    EXPECT_TRUE((b.u == 2 || b.u == 5 || b.u == 7) &&
                (b.v == 2 || b.v == 5 || b.v == 7));
  }
}

TEST(GraphIoTest, RoundTripsBothFormats) {
  for (bool weighted : {false, true}) {
    const Graph g = gnp_graph(12, 0.3, {weighted, 77}, 3);
    std::stringstream buffer;
    write_edge_list(buffer, g);
    const Graph back = read_edge_list(buffer);
    ASSERT_EQ(back.edge_count(), g.edge_count());
    EXPECT_EQ(back.weighted(), weighted);
    for (EdgeId e = 0; e < g.edge_count(); ++e) {
      EXPECT_EQ(back.edge(e).u, g.edge(e).u);
      EXPECT_EQ(back.edge(e).v, g.edge(e).v);
      EXPECT_EQ(back.edge(e).weight, g.edge(e).weight);
    }
    EdgeSet s(g.edge_count());
    s.insert(0);
    s.insert(g.edge_count() - 1);
    std::stringstream set_buffer;
    write_edge_set(set_buffer, s);
    EXPECT_EQ(read_edge_set(set_buffer, g), s);
  }
}

TEST(GraphIoTest, RejectsMalformedInput) {
  std::stringstream bad_header("3 1 directed\n0 1\n");
  EXPECT_THROW(read_edge_list(bad_header), GraphError);
  std::stringstream truncated("3 2 unweighted\n0 1\n");
  EXPECT_THROW(read_edge_list(truncated), GraphError);
  std::stringstream no_weight("3 1 weighted\n0 1\n");
  EXPECT_THROW(read_edge_list(no_weight), GraphError);
}
