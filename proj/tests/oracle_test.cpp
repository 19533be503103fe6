#include <gtest/gtest.h>

#include "support/fixtures.hpp"
#include "threadlab/oracle.hpp"
#include "threadlab/reductions.hpp"

using namespace threadlab;
using namespace threadlab::testing;

TEST(Oracle, Triangle) {
  const Instance c3 = cycle_graph(3);
  EXPECT_EQ(oracle_optimal(c3)->cost, 3);
  EXPECT_EQ(oracle_walk_dfs(c3)->cost, 3);
}

TEST(Oracle, K4AgreesWithWalkSearch) {
  const Instance g = k4();
  const auto a = oracle_optimal(g);
  const auto b = oracle_walk_dfs(g);
  ASSERT_TRUE(a && b);
  EXPECT_EQ(a->cost, 8);
  EXPECT_EQ(b->cost, 8);
  EXPECT_TRUE(verify_threading(g, a->threading).ok());
  EXPECT_TRUE(verify_threading(g, b->threading).ok());
}

TEST(Oracle, ThetaAgreesWithWalkSearch) {
  const Instance g = theta_graph();
  EXPECT_EQ(oracle_optimal(g)->cost, oracle_walk_dfs(g)->cost);
}

TEST(Oracle, CapOneMeansSingleTraversal) {
  // K4 has no Euler circuit, so no walk uses every edge exactly once.
  OracleOptions o;
  o.multiplicity_cap = 1;
  EXPECT_FALSE(oracle_optimal(k4(), o));
  WalkDfsOptions d;
  d.multiplicity_cap = 1;
  EXPECT_FALSE(oracle_walk_dfs(k4(), d));
  EXPECT_EQ(oracle_optimal(cycle_graph(4), o)->cost, 4);
}

TEST(Oracle, JunctionClasses) {
  OracleOptions tree;
  tree.junction_class = JunctionClass::Tree;
  OracleOptions mst;
  mst.junction_class = JunctionClass::MinimumTree;
  EXPECT_EQ(oracle_optimal(k4(), tree)->cost, 8);
  EXPECT_EQ(oracle_optimal(k4(), mst)->cost, 8);
  for (const auto& j : junction_graphs(k4(), oracle_optimal(k4(), mst)->threading)) EXPECT_TRUE(j.is_tree());
}

TEST(Oracle, ExactLabelNeedsLargeCap) {
  EXPECT_EQ(oracle_optimal(cycle_graph(3))->optimality, Optimality::ExactWithinClass);
  OracleOptions o;
  o.multiplicity_cap = 4;  // |T| + 1 for the triangle
  EXPECT_EQ(oracle_optimal(cycle_graph(3), o)->optimality, Optimality::Exact);
}

TEST(Oracle, SizeGuard) {
  const Instance big = hc_to_threading(hc_cycle(6)).instance;
  EXPECT_THROW(oracle_optimal(big), OracleTooLarge);
  EXPECT_THROW(oracle_walk_dfs(big), OracleTooLarge);
}

// Golden values for the tree-of-triangles family: the optimum threads the root
// triangle once per leaf at zero cost, matching the perfect lower bound only
// through non-tree junctions.
TEST(LowerBoundFamily, GoldenValues) {
  for (int leaves = 1; leaves <= 3; ++leaves) {
    const LowerBoundFamily fam = gen_lower_bound_family(leaves);
    const Instance& g = fam.instance;
    EXPECT_EQ(g.max_degree(), 3);
    EXPECT_EQ(g.vertex_count(), 6 * leaves);
    EXPECT_EQ(perfect_lower_bound(g), 0);

    OracleOptions o;
    o.multiplicity_cap = 2 * leaves;
    o.allow_large = true;
    const auto best = oracle_optimal(g, o);
    ASSERT_TRUE(best);
    EXPECT_EQ(best->cost, 0);
    const auto t = multiplicities(g, best->threading);
    EXPECT_EQ(t[fam.labels.at("root.01")], leaves);
    EXPECT_EQ(t[fam.labels.at("root.12")], leaves);
    EXPECT_EQ(t[fam.labels.at("root.20")], leaves);
    EXPECT_EQ(t[fam.labels.at("bridge0")], 2 * leaves);

    OracleOptions tree = o;
    tree.junction_class = JunctionClass::Tree;
    const auto perfect = oracle_optimal(g, tree);
    ASSERT_TRUE(perfect);
    EXPECT_EQ(perfect->cost, leaves - 1);
  }
}

TEST(LowerBoundFamily, SmallerCapMissesTheOptimum) {
  const LowerBoundFamily fam = gen_lower_bound_family(2);
  OracleOptions o;
  o.multiplicity_cap = 2;
  o.allow_large = true;
  const auto r = oracle_optimal(fam.instance, o);
  ASSERT_TRUE(r);
  EXPECT_GT(r->cost, 0);
}
