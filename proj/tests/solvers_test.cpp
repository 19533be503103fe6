#include <gtest/gtest.h>

#include <set>

#include "support/fixtures.hpp"
#include "threadlab/generators.hpp"
#include "threadlab/oracle.hpp"
#include "threadlab/solvers.hpp"

using namespace threadlab;
using namespace threadlab::testing;

TEST(PerfectDeg3, K4) {
  const Instance g = k4();
  const auto r = solve_perfect_deg3(g);
  ASSERT_TRUE(r);
  EXPECT_EQ(r->cost, 8);
  EXPECT_EQ(r->optimality, Optimality::Exact);
  ASSERT_EQ(r->certificate_edges.size(), 2u);
  std::set<int> ends;
  for (int e : r->certificate_edges) {
    ends.insert(g.edge(e).u);
    ends.insert(g.edge(e).v);
  }
  EXPECT_EQ(ends.size(), 4u);
  for (const auto& j : junction_graphs(g, r->threading)) EXPECT_TRUE(j.is_tree());
}

TEST(PerfectDeg3, TriangleHasEmptyMatching) {
  const auto r = solve_perfect_deg3(cycle_graph(3));
  ASSERT_TRUE(r);
  EXPECT_EQ(r->cost, 3);
  EXPECT_TRUE(r->certificate_edges.empty());
}

TEST(PerfectDeg3, K4MinusEdgeUsesTheEdgeBetweenHubs) {
  const Instance g = k4_minus_edge();
  const auto r = solve_perfect_deg3(g);
  ASSERT_TRUE(r);
  EXPECT_EQ(r->cost, perfect_lower_bound(g));
  EXPECT_EQ(r->certificate_edges, std::vector<int>{4});
}

TEST(PerfectDeg3, ThetaHasNoPerfectThreading) {
  // Both hubs need a doubled path-centre edge, but those edges end at
  // degree-2 vertices, where a tree allows only single traversals.
  const Instance g = theta_graph();
  EXPECT_FALSE(solve_perfect_deg3(g));
  OracleOptions o;
  o.junction_class = JunctionClass::Tree;
  EXPECT_FALSE(oracle_optimal(g, o));
}

TEST(PerfectDeg3, RejectsDegreeFour) { EXPECT_THROW(solve_perfect_deg3(make_grid(3, 3)), PreconditionError); }

TEST(DoubleDeg3, K4) {
  const Instance g = k4();
  const auto r = solve_double_deg3(g);
  EXPECT_EQ(r.cost, 8);
  EXPECT_EQ(r.certificate_edges.size(), 4u);
}

TEST(DoubleDeg3, TriangleIsSingleTraversal) {
  InstanceBuilder b;
  b.add_vertices(3);
  b.add_edge(0, 1);
  b.add_edge(1, 2);
  b.add_edge(2, 0);
  b.set_turn(0, 0, 2, 4);
  b.set_turn(1, 0, 1, 5);
  b.set_turn(2, 1, 2, 6);
  const Instance g = b.build();
  const auto r = solve_double_deg3(g);
  EXPECT_EQ(r.cost, 15);
  EXPECT_EQ(r.certificate_edges.size(), 3u);
}

TEST(DoubleDeg3, Theta) {
  const Instance g = theta_graph();
  const auto r = solve_double_deg3(g);
  const auto best = oracle_optimal(g);
  ASSERT_TRUE(best);
  EXPECT_EQ(r.cost, best->cost);
  EXPECT_EQ(r.cost, 8);
  // S is one 4-cycle; the third path is doubled.
  EXPECT_EQ(r.certificate_edges.size(), 4u);
  // Cost = total turn cost + (turns at degree-2 vertices) - turns inside S.
  EXPECT_EQ(g.total_turn_cost(), 9);
  EXPECT_EQ(r.cost, g.total_turn_cost() + 3 - 4);
}

TEST(ExactlyDouble, K4) {
  const auto r = solve_exactly_double(k4());
  EXPECT_EQ(r.cost, 12);
  EXPECT_EQ(r.optimality, Optimality::ExactWithinClass);
}

TEST(ExactlyDouble, EveryEdgeTwice) {
  const Instance grid = make_grid(3, 4);
  const auto r = solve_exactly_double(grid);
  EXPECT_EQ(multiplicities(grid, r.threading), std::vector<int>(static_cast<std::size_t>(grid.edge_count()), 2));
  for (const auto& j : junction_graphs(grid, r.threading)) {
    for (int e : j.nodes) EXPECT_EQ(j.degree_of(e), 2);
    EXPECT_TRUE(j.connected());
  }
}

TEST(ExactlyDouble, ModesAndCaps) {
  const Instance grid = make_grid(4, 4);
  const auto exact = solve_exactly_double(grid, JunctionMode::Exact);
  const auto chris = solve_exactly_double(grid, JunctionMode::Christofides);
  const auto heur = solve_exactly_double(grid, JunctionMode::Heuristic);
  EXPECT_LE(exact.cost, chris.cost);
  EXPECT_LE(exact.cost, heur.cost);
  EXPECT_EQ(chris.optimality, Optimality::Approximate);
  EXPECT_EQ(heur.optimality, Optimality::Heuristic);
  EXPECT_THROW(solve_exactly_double(grid, JunctionMode::Exact, 3), PreconditionError);
}

TEST(ExactlyDouble, HcStarCentreTourIsFree) {
  const HcGraph c5 = hc_cycle(5);
  const HcReduction red = hc_to_threading(c5);
  const Instance& g = red.instance;
  const int centre = g.vertex_index(0);
  EXPECT_EQ(g.degree(centre), 5);
  EXPECT_EQ(held_karp(junction_cost_matrix(g, centre)).cost, 0);
  // Each arm costs 7 when every edge is traversed twice: 2 at each of p and q
  // and 3 at b.
  EXPECT_EQ(solve_exactly_double(g).cost, 35);
}

TEST(Grid, Examples) {
  const auto g44 = solve_grid(4, 4);
  EXPECT_EQ(g44.cost, 16);
  EXPECT_EQ(g44.optimality, Optimality::Exact);
  EXPECT_EQ(g44.lower_bound, 16);
  EXPECT_EQ(solve_grid(2, 3).cost, 8);
  EXPECT_EQ(solve_grid(3, 2).cost, 8);
  const auto g33 = solve_grid(3, 3);
  EXPECT_EQ(g33.cost, 12);
  EXPECT_FALSE(g33.lower_bound);
}

TEST(Grid, LowerBound) {
  EXPECT_EQ(grid_lower_bound(4, 4).value, 16);
  EXPECT_TRUE(grid_lower_bound(4, 4).applicable);
  EXPECT_EQ(grid_lower_bound(2, 2).value, 4);
  EXPECT_EQ(grid_lower_bound(3, 3).value, 16);
  EXPECT_FALSE(grid_lower_bound(3, 3).applicable);
}

TEST(Grid, SmallCasesMatchOracle) {
  // 2x2 and 2x3 are small enough for the exhaustive search.
  for (auto [w, h] : {std::pair{2, 2}, std::pair{2, 3}}) {
    OracleOptions o;
    o.multiplicity_cap = 3;
    o.allow_large = true;
    const auto best = oracle_optimal(make_grid(w, h), o);
    ASSERT_TRUE(best);
    EXPECT_EQ(solve_grid(w, h).cost, best->cost) << w << "x" << h;
  }
}

TEST(Grid, LayoutAndCosts) {
  const Instance g = make_grid(3, 2);
  EXPECT_EQ(g.vertex_count(), 6);
  EXPECT_EQ(g.edge_count(), 7);
  // Vertex 1 = (1,0): straight through horizontal edges 0 and 1.
  EXPECT_EQ(g.turn_cost(1, 0, 1), 0);
  EXPECT_EQ(g.turn_cost(1, 0, g.edge_index(5)), 1);
}

TEST(Approx2r, UnitCosts) {
  const auto r = solve_approx_2r(k4());
  EXPECT_DOUBLE_EQ(r.ratio_bound, 2.0);
  EXPECT_EQ(r.cost, 12);
}

TEST(Approx2r, TriangleWithUnevenCosts) {
  InstanceBuilder b;
  b.add_vertices(3);
  b.add_edge(0, 1);
  b.add_edge(1, 2);
  b.add_edge(2, 0);
  b.set_turn(2, 1, 2, 2);
  const Instance g = b.build();
  const auto r = solve_approx_2r(g);
  EXPECT_EQ(r.cost, 8);
  EXPECT_DOUBLE_EQ(r.ratio_bound, 4.0);
  EXPECT_EQ(oracle_optimal(g)->cost, 4);
}

TEST(Approx2r, ZeroCostTurnIsAnError) { EXPECT_THROW(solve_approx_2r(make_grid(2, 3)), PreconditionError); }

TEST(Labels, OptimalityStrings) {
  EXPECT_EQ(to_string(Optimality::Exact), "exact");
  EXPECT_EQ(to_string(Optimality::ExactWithinClass), "exact-within-class");
  EXPECT_EQ(to_string(Optimality::Approximate, 1.5), "approximate(1.5)");
  EXPECT_EQ(to_string(Optimality::Heuristic), "heuristic");
}
