#include <gtest/gtest.h>

#include <algorithm>

#include "oracles.hpp"
#include "sparsify/certificate.hpp"
#include "sparsify/generators.hpp"

using namespace sparsify;

namespace {

// Every cut keeps min(|cut|, k) of its edges, by enumeration.
bool cuts_preserved(const Graph& g, const EdgeSet& cert, int k) {
  bool ok = true;
  oracle::for_each_cut(g, [&](uint64_t, const std::vector<EdgeId>& crossing) {
    int kept = 0;
    for (EdgeId e : crossing) kept += cert.contains(e);
    ok = ok && kept >= std::min(static_cast<int>(crossing.size()), k);
  });
  return ok;
}

}  // namespace

TEST(EdgeConnectivityTest, MatchesEnumeration) {
  for (uint64_t seed = 1; seed <= 30; ++seed) {
    const int n = 4 + static_cast<int>(seed % 10);
    const Graph g = gnp_graph(n, 0.5, {}, seed);
    EXPECT_EQ(edge_connectivity(g), oracle::min_cut_by_enumeration(g, nullptr))
        << "seed " << seed;
  }
}

TEST(EdgeConnectivityTest, SmallCases) {
  EXPECT_EQ(edge_connectivity(Graph(1)), INT64_MAX);
  EXPECT_EQ(edge_connectivity(Graph(3)), 0);
  EXPECT_EQ(edge_connectivity(cycle_graph(9, {}, 1)), 2);
  EXPECT_EQ(edge_connectivity(complete_graph(7, {}, 1)), 6);
}

TEST(SmallKTest, KOneIsASpanningForest) {
  const Graph g = connected_gnp(60, 0.1, {true, 10}, 2);
  const EdgeSet h = certificate_small_k(g, 1, 0.25);
  EXPECT_TRUE(is_connected(g, &h));
  EXPECT_LE(h.size(), 60 * 1.25);
}

TEST(SmallKTest, CycleNeedsEveryEdgeForTwo) {
  const Graph g = cycle_graph(8, {}, 1);
  EXPECT_EQ(certificate_small_k(g, 2, 0.25), EdgeSet::all(g));
}

TEST(SmallKTest, CompleteGraphAllCuts) {
  const Graph g = complete_graph(6, {}, 1);
  const EdgeSet h = certificate_small_k(g, 2, 0.5);
  EXPECT_TRUE(cuts_preserved(g, h, 2));
  EXPECT_LT(h.size(), g.edge_count());
}

TEST(SmallKTest, RoundsAreDisjointAndSparse) {
  const Graph g = gnp_graph(120, 0.2, {}, 3);
  SmallKReport report;
  const EdgeSet h = certificate_small_k(g, 4, 0.25, 7, &report);
  EXPECT_EQ(report.skeleton_parameter, 4);
  ASSERT_EQ(report.rounds.size(), 4u);
  int total = 0;
  for (size_t i = 0; i < report.rounds.size(); ++i) {
    EXPECT_LE(report.rounds[i].size(), 120 + 30);
    for (size_t j = 0; j < i; ++j) {
      for (EdgeId e : report.rounds[i].ids()) EXPECT_FALSE(report.rounds[j].contains(e));
    }
    total += report.rounds[i].size();
  }
  EXPECT_EQ(total, h.size());
}

TEST(SmallKTest, RandomSmallGraphsPreserveEveryCut) {
  for (uint64_t seed = 1; seed <= 40; ++seed) {
    const int n = 6 + static_cast<int>(seed % 9);
    const Graph g = gnp_graph(n, 0.6, {seed % 2 == 0, 20}, seed);
    for (int k = 1; k <= 4; ++k) {
      const EdgeSet h = certificate_small_k(g, k, 0.25, seed);
      EXPECT_TRUE(cuts_preserved(g, h, k)) << "seed " << seed << " k " << k;
      EXPECT_TRUE(verify_certificate(g, h, k).ok);
      EXPECT_LE(h.size(), n * k * 1.25);
    }
  }
}

TEST(SmallKTest, MonotoneInK) {
  const Graph g = gnp_graph(50, 0.3, {}, 4);
  int previous = 0;
  for (int k = 1; k <= 6; ++k) {
    const int size = certificate_small_k(g, k, 0.25, 1).size();
    EXPECT_GE(size, previous);
    previous = size;
  }
}

TEST(SmallKTest, RejectsBadArguments) {
  const Graph g = cycle_graph(5, {}, 1);
  EXPECT_THROW(certificate_small_k(g, 0, 0.5), std::invalid_argument);
  EXPECT_THROW(certificate_small_k(g, 2, 0.0), std::invalid_argument);
  EXPECT_THROW(certificate_small_k(g, 2, 1.5), std::invalid_argument);
}

TEST(LargeKTest, RejectsEpsilonAtOneHalf) {
  const Graph g = cycle_graph(5, {}, 1);
  EXPECT_THROW(certificate_large_k(g, 2, 0.5, 1), std::invalid_argument);
  EXPECT_THROW(certificate_large_k(g, 2, 0.0, 1), std::invalid_argument);
}

TEST(LargeKTest, SinglePartEqualsSmallK) {
  const Graph g = gnp_graph(60, 0.3, {}, 5);
  LargeKReport report;
  const EdgeSet h = certificate_large_k(g, 6, 0.4, 9, {}, &report);
  EXPECT_EQ(report.parts, 1);
  EXPECT_DOUBLE_EQ(report.inner_epsilon, 0.05);
  EXPECT_EQ(h, certificate_small_k(g, 6, 0.05, 9));
}

TEST(LargeKTest, SeveralPartsWithLoweredConstant) {
  const Graph g = k_connected_random(80, 12, 0.5, {}, 3);
  LargeKOptions options;
  options.karger_constant = 0.001;  // Q = floor(12 e^2 / (c ln 80)) = 6
  LargeKReport report;
  const EdgeSet h = certificate_large_k(g, 12, 0.4, 2, options, &report);
  ASSERT_GT(report.parts, 1);
  EXPECT_EQ(static_cast<int>(report.part_sizes.size()), report.parts);
  int total = 0;
  for (int s : report.part_sizes) total += s;
  EXPECT_EQ(total, g.edge_count());
  for (EdgeId e : h.ids()) EXPECT_GE(report.part_of[e], 0);
  EXPECT_LE(h.size(), 80 * 12 * 1.4);
  EXPECT_TRUE(verify_certificate(g, h, 12).ok);
}

TEST(LargeKTest, TwentySeedsOnOneHundredNodes) {
  for (uint64_t seed = 1; seed <= 20; ++seed) {
    const Graph g = k_connected_random(100, 12, 0.3, {}, seed);
    const EdgeSet h = certificate_large_k(g, 12, 0.4, seed);
    const CertificateReport r = verify_certificate(g, h, 12);
    EXPECT_EQ(r.mode, VerifyMode::kMinCut);
    EXPECT_TRUE(r.ok) << "seed " << seed;
    EXPECT_GE(r.certificate_connectivity, 12);
    EXPECT_LE(h.size(), 100 * 12 * 1.4);
  }
}

TEST(VerifyTest, GraphCertifiesItself) {
  const Graph g = gnp_graph(12, 0.5, {}, 6);
  for (int k = 1; k <= 5; ++k) {
    EXPECT_TRUE(verify_certificate(g, EdgeSet::all(g), k).ok);
  }
}

TEST(VerifyTest, CycleMinusEdgeFailsEnumeration) {
  const Graph g = cycle_graph(8, {}, 1);
  EdgeSet h = EdgeSet::all(g);
  h.erase(3);
  const CertificateReport r = verify_certificate(g, h, 2);
  EXPECT_FALSE(r.ok);
  EXPECT_EQ(r.mode, VerifyMode::kEnumerate);
  EXPECT_EQ(r.cut_size, 2);
  EXPECT_EQ(r.cut_kept, 1);
  EXPECT_EQ(r.failing_cut & 1, 0u);
  const CertificateReport b = verify_certificate(g, h, 2, VerifyMode::kMinCut);
  EXPECT_FALSE(b.ok);
  EXPECT_EQ(b.graph_connectivity, 2);
  EXPECT_EQ(b.certificate_connectivity, 1);
}

TEST(VerifyTest, EnumerationCountsAllCuts) {
  const Graph g = complete_graph(10, {}, 1);
  const CertificateReport r = verify_certificate(g, EdgeSet::all(g), 3);
  EXPECT_EQ(r.cuts_checked, (1 << 9) - 1);
}
