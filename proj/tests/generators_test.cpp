#include <gtest/gtest.h>

#include "sparsify/certificate.hpp"
#include "sparsify/generators.hpp"

using namespace sparsify;

namespace {

bool same_graph(const Graph& a, const Graph& b) {
  if (a.node_count() != b.node_count() || a.edge_count() != b.edge_count()) {
    return false;
  }
  for (EdgeId e = 0; e < a.edge_count(); ++e) {
    const Edge& x = a.edge(e);
    const Edge& y = b.edge(e);
    if (x.u != y.u || x.v != y.v || x.weight != y.weight) return false;
  }
  return true;
}

}  // namespace

TEST(GeneratorsTest, SeededAndRepeatable) {
  EXPECT_TRUE(same_graph(gnp_graph(50, 0.1, {true, 99}, 4),
                         gnp_graph(50, 0.1, {true, 99}, 4)));
  EXPECT_FALSE(same_graph(gnp_graph(50, 0.1, {true, 99}, 4),
                          gnp_graph(50, 0.1, {true, 99}, 5)));
  EXPECT_TRUE(same_graph(random_tree(40, {}, 2), random_tree(40, {}, 2)));
}

TEST(GeneratorsTest, Shapes) {
  EXPECT_EQ(cycle_graph(5, {}, 1).edge_count(), 5);
  EXPECT_EQ(path_graph(5, {}, 1).edge_count(), 4);
  EXPECT_EQ(grid_graph(3, 4, {}, 1).edge_count(), 3 * 3 + 2 * 4);
  EXPECT_EQ(complete_graph(6, {}, 1).edge_count(), 15);
  EXPECT_EQ(random_tree(30, {}, 1).edge_count(), 29);
  EXPECT_TRUE(is_connected(random_tree(30, {}, 1)));
  EXPECT_TRUE(is_connected(connected_gnp(100, 0.001, {}, 1)));
  EXPECT_THROW(cycle_graph(2, {}, 1), std::invalid_argument);
}

TEST(GeneratorsTest, WeightsStayInRange) {
  const Graph g = gnp_graph(40, 0.3, {true, 7}, 3);
  EXPECT_TRUE(g.weighted());
  for (const Edge& e : g.edges()) {
    EXPECT_GE(e.weight, 1);
    EXPECT_LE(e.weight, 7);
  }
  const Graph unweighted = gnp_graph(40, 0.3, {}, 3);
  for (const Edge& e : unweighted.edges()) EXPECT_EQ(e.weight, 1);
}

TEST(GeneratorsTest, KConnectedMeetsConnectivity) {
  const Graph g = k_connected_random(50, 4, 0.2, {}, 1);
  EXPECT_GE(edge_connectivity(g), 4);
  EXPECT_THROW(k_connected_random(10, 10, 0.5, {}, 1), std::invalid_argument);
  EXPECT_THROW(k_connected_random(400, 2, 0.5, {}, 1), std::invalid_argument);
}
