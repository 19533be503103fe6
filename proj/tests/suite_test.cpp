// Properties over the small-graph suites.

#include <gtest/gtest.h>

#include "support/graph_suite.hpp"
#include "threadlab/threadlab.hpp"

using namespace threadlab;
using namespace threadlab::testing;

namespace {

const std::vector<Case>& suite() {
  static const std::vector<Case> cases = [] {
    std::vector<Adjacency> graphs = small_multigraphs(5);
    for (const Adjacency& g : subcubic_graphs(6)) graphs.push_back(g);
    auto out = with_cost_variants(graphs, "g", 11, 0, 4);
    const auto random = random_cases(60, 300, 3, 7, 10, 3, 0, 4);
    out.insert(out.end(), random.begin(), random.end());
    return out;
  }();
  return cases;
}

}  // namespace

TEST(Suite, EnumerationCounts) {
  // Isomorphism classes, cross-checked against an independent enumeration.
  EXPECT_EQ(small_multigraphs(6).size(), 42u);
  std::vector<int> by_size(9, 0);
  for (const auto& g : subcubic_graphs(8)) ++by_size[g.size()];
  EXPECT_EQ(by_size, (std::vector<int>{0, 0, 0, 1, 3, 4, 11, 21, 60}));
}

TEST(Suite, CanonicalFormIgnoresLabels) {
  Adjacency a{{0, 1, 1, 0}, {1, 0, 1, 0}, {1, 1, 0, 2}, {0, 0, 2, 0}};
  Adjacency b{{0, 2, 0, 0}, {2, 0, 1, 1}, {0, 1, 0, 1}, {0, 1, 1, 0}};
  EXPECT_EQ(canonical_form(a), canonical_form(b));
  Adjacency c{{0, 1, 1, 1}, {1, 0, 1, 0}, {1, 1, 0, 0}, {1, 0, 0, 0}};
  EXPECT_NE(canonical_form(a), canonical_form(c));
}

TEST(Suite, AssemblyReproducesJunctions) {
  for (const Case& c : suite()) {
    for (const Walk& w : {naive_double_threading(c.instance), oracle_optimal(c.instance)->threading}) {
      const JunctionAssignment ja = assignment_of(c.instance, w);
      const Walk again = assemble(c.instance, ja);
      ASSERT_TRUE(verify_threading(c.instance, again).ok()) << c.name;
      const auto js = junction_graphs(c.instance, again);
      for (std::size_t v = 0; v < js.size(); ++v) EXPECT_EQ(js[v].sorted_links(), ja.junctions[v].sorted_links()) << c.name;
      EXPECT_EQ(turn_cost(c.instance, again), turn_cost(c.instance, w));
    }
  }
}

TEST(Suite, SolverOrdering) {
  for (const Case& c : suite()) {
    const Cost plb = perfect_lower_bound(c.instance);
    const auto best = oracle_optimal(c.instance);
    ASSERT_TRUE(best) << c.name;
    const auto exd = solve_exactly_double(c.instance);
    const Cost naive = turn_cost(c.instance, naive_double_threading(c.instance));
    EXPECT_LE(best->cost, exd.cost) << c.name;
    EXPECT_LE(exd.cost, naive) << c.name;
    if (c.instance.max_degree() > 3) continue;
    const auto dbl = solve_double_deg3(c.instance);
    EXPECT_EQ(dbl.cost, best->cost) << c.name;
    EXPECT_LE(dbl.cost, exd.cost) << c.name;
    if (const auto p = solve_perfect_deg3(c.instance)) {
      EXPECT_EQ(p->cost, plb) << c.name;
      EXPECT_LE(best->cost, p->cost) << c.name;
    }
  }
}

TEST(Suite, CompressNeverIncreasesCost) {
  for (const Case& c : suite()) {
    const Walk naive = naive_double_threading(c.instance);
    const Walk small = compress_threading(c.instance, naive);
    EXPECT_TRUE(verify_threading(c.instance, small).ok()) << c.name;
    EXPECT_LE(turn_cost(c.instance, small), turn_cost(c.instance, naive)) << c.name;
  }
}

TEST(Suite, WalkDfsAgreesWithCapThree) {
  int checked = 0;
  for (const Case& c : suite()) {
    if (c.instance.edge_count() > 6) continue;
    OracleOptions o;
    o.multiplicity_cap = 3;
    WalkDfsOptions d;
    d.multiplicity_cap = 3;
    EXPECT_EQ(oracle_optimal(c.instance, o)->cost, oracle_walk_dfs(c.instance, d)->cost) << c.name;
    ++checked;
  }
  EXPECT_GT(checked, 20);
}

TEST(Generators, RandomInstanceIsDeterministic) {
  RandomInstanceOptions opt;
  opt.seed = 7;
  EXPECT_EQ(to_json(random_instance(opt)), to_json(random_instance(opt)));
  opt.seed = 8;
  const Instance other = random_instance(opt);
  EXPECT_LE(other.max_degree(), 3);
}

TEST(Generators, UniformAndRandomCosts) {
  const Instance g = instance_from_adjacency(subcubic_graphs(5).front());
  EXPECT_EQ(with_uniform_costs(g, 3).total_turn_cost(), 3 * g.turn_count());
  const Instance r = with_random_costs(g, 1, 2, 2);
  EXPECT_EQ(r.total_turn_cost(), 2 * g.turn_count());
}
