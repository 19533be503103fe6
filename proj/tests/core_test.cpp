#include <gtest/gtest.h>

#include <set>
#include <vector>

#include "support/fixtures.hpp"
#include "threadlab/assembly.hpp"
#include "threadlab/core.hpp"
#include "threadlab/oracle.hpp"

using namespace threadlab;
using namespace threadlab::testing;

namespace {

InstanceErrorKind build_error(std::vector<VertexId> vertices, std::vector<EdgeSpec> edges, Cost def,
                              std::vector<TurnSpec> turns = {}) {
  try {
    Instance::build(std::move(vertices), std::move(edges), def, std::move(turns));
  } catch (const InstanceError& e) {
    return e.kind();
  }
  ADD_FAILURE() << "instance was accepted";
  return InstanceErrorKind::Parse;
}

Walk triangle_walk(const Instance& c3, int times = 1) {
  std::vector<int> seq;
  for (int k = 0; k < times; ++k)
    for (int e = 0; e < 3; ++e) seq.push_back(e);
  return walk_from_edges(c3, 0, seq);
}

}  // namespace

TEST(Instance, TriangleHasOneTurnPerVertex) {
  const Instance c3 = cycle_graph(3);
  EXPECT_EQ(c3.vertex_count(), 3);
  EXPECT_EQ(c3.edge_count(), 3);
  EXPECT_EQ(c3.turn_count(), 3);
  EXPECT_EQ(c3.total_turn_cost(), 3);
}

TEST(Instance, K4HasTwelveTurns) {
  const Instance g = k4();
  EXPECT_EQ(g.turn_count(), 12);
  EXPECT_EQ(g.max_degree(), 3);
}

TEST(Instance, RejectsMalformedGraphs) {
  EXPECT_EQ(build_error({0, 1, 2}, {{0, 0, 1}, {1, 1, 2}}, 1), InstanceErrorKind::DegreeBelowTwo);
  EXPECT_EQ(build_error({0, 1}, {{0, 0, 0}, {1, 0, 1}, {2, 0, 1}}, 1), InstanceErrorKind::SelfLoop);
  EXPECT_EQ(build_error({0, 1, 2, 3}, {{0, 0, 1}, {1, 0, 1}, {2, 2, 3}, {3, 2, 3}}, 1), InstanceErrorKind::Disconnected);
  EXPECT_EQ(build_error({0, 1, 2}, {{0, 0, 1}, {1, 1, 2}, {2, 2, 0}}, -1), InstanceErrorKind::NegativeCost);
  EXPECT_EQ(build_error({0, 1, 2}, {{0, 0, 1}, {1, 1, 2}, {2, 2, 0}}, 1, {{0, 0, 1, 3}}),
            InstanceErrorKind::TurnNotCoincident);
  EXPECT_EQ(build_error({0, 1, 2}, {{0, 0, 1}, {1, 1, 2}, {2, 2, 7}}, 1), InstanceErrorKind::UnknownReference);
  EXPECT_EQ(build_error({0, 1, 1}, {{0, 0, 1}, {1, 1, 0}}, 1), InstanceErrorKind::Duplicate);
  EXPECT_EQ(build_error({0, 1, 2}, {{0, 0, 1}, {0, 1, 2}, {2, 2, 0}}, 1), InstanceErrorKind::Duplicate);
  EXPECT_EQ(build_error({}, {}, 1), InstanceErrorKind::Empty);
}

TEST(Instance, ExplicitTurnOverridesDefault) {
  InstanceBuilder b;
  b.add_vertices(3);
  b.add_edge(0, 1);
  b.add_edge(1, 2);
  b.add_edge(2, 0);
  b.set_turn(1, 0, 1, 5);
  b.set_default_cost(2);
  const Instance g = b.build();
  EXPECT_EQ(g.turn_cost(1, 0, 1), 5);
  EXPECT_EQ(g.turn_cost(1, 1, 0), 5);
  EXPECT_EQ(g.turn_cost(0, 0, 2), 2);
}

TEST(Instance, ParallelEdgesAreDistinct) {
  const Instance g = Instance::build({0, 1}, {{10, 0, 1}, {11, 1, 0}}, 1, {});
  EXPECT_EQ(g.degree(0), 2);
  EXPECT_EQ(g.turn_count(), 2);
}

TEST(JunctionGraphs, SingleTraversalOfTriangle) {
  const Instance c3 = cycle_graph(3);
  const auto js = junction_graphs(c3, triangle_walk(c3));
  for (const auto& j : js) {
    ASSERT_EQ(j.links.size(), 1u);
    EXPECT_TRUE(j.is_tree());
  }
}

TEST(JunctionGraphs, DoubleTraversalGivesParallelLinks) {
  const Instance c3 = cycle_graph(3);
  const auto js = junction_graphs(c3, triangle_walk(c3, 2));
  for (const auto& j : js) {
    ASSERT_EQ(j.links.size(), 2u);
    EXPECT_EQ(j.links[0], j.links[1]);
    EXPECT_FALSE(j.is_tree());
  }
}

TEST(JunctionGraphs, TetrahedronDoubleThreadingHasTriangleJunctions) {
  const Instance g = k4();
  const auto js = junction_graphs(g, naive_double_threading(g));
  for (const auto& j : js) {
    EXPECT_EQ(j.links.size(), 3u);
    std::set<std::pair<int, int>> distinct(j.links.begin(), j.links.end());
    EXPECT_EQ(distinct.size(), 3u);
    for (int e : j.nodes) EXPECT_EQ(j.degree_of(e), 2);
  }
}

TEST(Verify, SingleTraversalIsValid) {
  const Instance c3 = cycle_graph(3);
  EXPECT_TRUE(verify_threading(c3, triangle_walk(c3)).ok());
}

TEST(Verify, ReportsUTurn) {
  const Instance c3 = cycle_graph(3);
  Walk w;
  w.steps = {{0, 0, 1}, {0, 1, 0}, {2, 0, 2}, {1, 2, 1}, {1, 1, 2}, {2, 2, 0}};
  const auto report = verify_threading(c3, w);
  EXPECT_EQ(report.count(Violation::Kind::UTurn), 2u);
  EXPECT_EQ(report.violations.front().describe(c3), "u-turn at step 0");
}

TEST(Verify, ReportsUncoveredChords) {
  const Instance g = k4();
  // 4-cycle 0-1-3-2-0 via edges 01, 13, 23, 02.
  const std::vector<int> seq{0, 4, 5, 1};
  const auto report = verify_threading(g, walk_from_edges(g, 0, seq));
  EXPECT_EQ(report.count(Violation::Kind::Uncovered), 2u);
}

TEST(Verify, ReportsOpenWalk) {
  const Instance c3 = cycle_graph(3);
  Walk w;
  w.steps = {{0, 0, 1}, {1, 1, 2}};
  EXPECT_EQ(verify_threading(c3, w).count(Violation::Kind::NotClosed), 1u);
}

TEST(Verify, ReportsDisconnectedJunction) {
  // Around each triangle of the bowtie separately: at the shared vertex the
  // junction has links {01,20} and {03,40}, two components.
  const Instance g = bowtie();
  const std::vector<int> seq{0, 1, 2, 3, 4, 5};
  const auto report = verify_threading(g, walk_from_edges(g, 0, seq));
  EXPECT_EQ(report.count(Violation::Kind::JunctionDisconnected), 1u);
  EXPECT_EQ(report.violations.size(), 1u);
}

TEST(TurnCost, TriangleAndTetrahedron) {
  const Instance c3 = cycle_graph(3);
  EXPECT_EQ(turn_cost(c3, triangle_walk(c3)), 3);
  const Instance g = k4();
  EXPECT_EQ(turn_cost(g, naive_double_threading(g)), 12);
  const auto best = oracle_optimal(g);
  ASSERT_TRUE(best);
  EXPECT_EQ(turn_cost(g, best->threading), 8);
}

TEST(TurnCost, IncludesWrapAroundTurn) {
  InstanceBuilder b;
  b.add_vertices(3);
  b.add_edge(0, 1);
  b.add_edge(1, 2);
  b.add_edge(2, 0);
  b.set_turn(0, 2, 0, 10);
  const Instance g = b.build();
  // The only turn at vertex 0 is between the last and the first step.
  EXPECT_EQ(turn_cost(g, triangle_walk(g)), 12);
}

TEST(TurnCost, RejectsUTurn) {
  const Instance c3 = cycle_graph(3);
  Walk w;
  w.steps = {{0, 0, 1}, {0, 1, 0}};
  EXPECT_THROW(turn_cost(c3, w), WalkError);
}

TEST(PerfectLowerBound, Examples) {
  EXPECT_EQ(perfect_lower_bound(cycle_graph(3)), 3);
  EXPECT_EQ(perfect_lower_bound(k4()), 8);
  InstanceBuilder b;
  b.add_vertices(4);
  b.add_edge(0, 1);  // 0
  b.add_edge(0, 2);  // 1
  b.add_edge(0, 3);  // 2
  b.add_edge(1, 2);  // 3
  b.add_edge(2, 3);  // 4
  b.add_edge(3, 1);  // 5
  b.set_turn(0, 0, 1, 1);
  b.set_turn(0, 1, 2, 2);
  b.set_turn(0, 0, 2, 3);
  b.set_default_cost(0);
  const Instance g = b.build();
  EXPECT_EQ(junction_mst_weight(g, g.vertex_index(0)), 3);
}

TEST(JunctionMst, WeightedTriangleHasUniqueTree) {
  InstanceBuilder b;
  b.add_vertices(4);
  b.add_edge(0, 1);  // a
  b.add_edge(0, 2);  // b
  b.add_edge(0, 3);  // c
  b.add_edge(1, 2);
  b.add_edge(2, 3);
  b.add_edge(3, 1);
  b.set_turn(0, 0, 1, 1);  // ab
  b.set_turn(0, 1, 2, 2);  // bc
  b.set_turn(0, 0, 2, 3);  // ac
  const Instance g = b.build();
  const auto trees = junction_mst(g, 0);
  ASSERT_EQ(trees.size(), 1u);
  EXPECT_EQ(trees[0].sorted_links(), (std::vector<std::pair<int, int>>{{0, 1}, {1, 2}}));
}

TEST(JunctionMst, FullTieReturnsAllPaths) {
  const auto trees = junction_mst(k4(), 0);
  EXPECT_EQ(trees.size(), 3u);
  std::set<std::vector<std::pair<int, int>>> distinct;
  for (const auto& t : trees) {
    EXPECT_TRUE(t.is_tree());
    distinct.insert(t.sorted_links());
  }
  EXPECT_EQ(distinct.size(), 3u);
}

TEST(JunctionMst, DegreeTwoIsSingleLink) {
  const auto trees = junction_mst(cycle_graph(3), 1);
  ASSERT_EQ(trees.size(), 1u);
  EXPECT_EQ(trees[0].links.size(), 1u);
}

TEST(JunctionMst, CompleteGraphTreeCountIsCayley) {
  // K6: degree 5 junctions with equal costs have 5^3 spanning trees.
  InstanceBuilder b;
  b.add_vertices(6);
  for (int u = 0; u < 6; ++u)
    for (int v = u + 1; v < 6; ++v) b.add_edge(u, v);
  EXPECT_EQ(junction_mst(b.build(), 0).size(), 125u);
}

TEST(Compress, MinimalThreadingUnchanged) {
  const Instance c3 = cycle_graph(3);
  const Walk w = triangle_walk(c3);
  EXPECT_EQ(compress_threading(c3, w), w);
}

TEST(Compress, TripleTriangleShrinks) {
  const Instance c3 = cycle_graph(3);
  const Walk w = triangle_walk(c3, 3);
  const Walk c = compress_threading(c3, w);
  EXPECT_TRUE(verify_threading(c3, c).ok());
  EXPECT_LE(c.size(), 6u);
  EXPECT_LT(turn_cost(c3, c), turn_cost(c3, w));
  EXPECT_EQ(turn_cost(c3, c), oracle_optimal(c3)->cost);
}

TEST(Walks, RotationAndReversalPreserveCost) {
  const Instance g = k4();
  const Walk w = naive_double_threading(g);
  for (std::size_t k = 0; k < w.size(); ++k) EXPECT_EQ(turn_cost(g, rotated(w, k)), turn_cost(g, w));
  EXPECT_TRUE(verify_threading(g, reversed(w)).ok());
  EXPECT_EQ(turn_cost(g, reversed(w)), turn_cost(g, w));
}

TEST(Walks, MultiplicitiesCountTraversals) {
  const Instance c3 = cycle_graph(3);
  EXPECT_EQ(multiplicities(c3, triangle_walk(c3, 2)), (std::vector<int>{2, 2, 2}));
}
