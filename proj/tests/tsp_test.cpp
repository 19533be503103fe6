#include <gtest/gtest.h>

#include <algorithm>
#include <numeric>
#include <random>

#include "threadlab/tsp.hpp"

using namespace threadlab;

namespace {

Cost brute_force_tour(const CostMatrix& c) {
  std::vector<int> order(c.size());
  std::iota(order.begin(), order.end(), 0);
  Cost best = kInfiniteCost;
  do {
    best = std::min(best, tour_cost(c, order));
  } while (std::next_permutation(order.begin() + 1, order.end()));
  return best;
}

// Points on a small integer grid with Manhattan distance: always metric.
CostMatrix random_metric(std::mt19937_64& rng, int d) {
  std::vector<std::pair<int, int>> p;
  for (int i = 0; i < d; ++i) p.emplace_back(static_cast<int>(rng() % 10), static_cast<int>(rng() % 10));
  CostMatrix c(static_cast<std::size_t>(d), std::vector<Cost>(static_cast<std::size_t>(d), 0));
  for (int i = 0; i < d; ++i)
    for (int j = 0; j < d; ++j) c[i][j] = std::abs(p[i].first - p[j].first) + std::abs(p[i].second - p[j].second);
  return c;
}

bool is_permutation_tour(const Tour& t, int d) {
  std::vector<int> sorted = t.order;
  std::sort(sorted.begin(), sorted.end());
  std::vector<int> expect(static_cast<std::size_t>(d));
  std::iota(expect.begin(), expect.end(), 0);
  return sorted == expect;
}

}  // namespace

TEST(HeldKarp, MatchesBruteForce) {
  std::mt19937_64 rng(3);
  for (int trial = 0; trial < 60; ++trial) {
    const int d = 3 + trial % 6;
    CostMatrix c(static_cast<std::size_t>(d), std::vector<Cost>(static_cast<std::size_t>(d), 0));
    for (int i = 0; i < d; ++i)
      for (int j = i + 1; j < d; ++j) c[i][j] = c[j][i] = static_cast<Cost>(rng() % 20);
    const Tour t = held_karp(c);
    EXPECT_TRUE(is_permutation_tour(t, d));
    EXPECT_EQ(t.cost, tour_cost(c, t.order));
    EXPECT_EQ(t.cost, brute_force_tour(c));
  }
}

TEST(HeldKarp, TwoNodesTraverseTheTurnTwice) {
  const CostMatrix c{{0, 3}, {3, 0}};
  EXPECT_EQ(held_karp(c).cost, 6);
}

TEST(HeldKarp, RejectsTooManyNodes) {
  const CostMatrix c(21, std::vector<Cost>(21, 1));
  EXPECT_THROW(held_karp(c), PreconditionError);
}

TEST(Christofides, WithinThreeHalvesOnMetricInstances) {
  std::mt19937_64 rng(5);
  for (int trial = 0; trial < 100; ++trial) {
    const int d = 4 + trial % 7;
    const CostMatrix c = random_metric(rng, d);
    ASSERT_TRUE(is_metric(c));
    const Tour exact = held_karp(c);
    const Tour approx = christofides(c);
    EXPECT_TRUE(is_permutation_tour(approx, d));
    EXPECT_LE(exact.cost, approx.cost);
    EXPECT_LE(2 * approx.cost, 3 * exact.cost);
  }
}

TEST(Christofides, RejectsNonMetric) {
  const CostMatrix c{{0, 1, 5, 1}, {1, 0, 1, 1}, {5, 1, 0, 1}, {1, 1, 1, 0}};
  EXPECT_FALSE(is_metric(c));
  EXPECT_THROW(christofides(c), PreconditionError);
}

TEST(NearestNeighbour, ProducesATourNoBetterThanOptimal) {
  std::mt19937_64 rng(9);
  for (int trial = 0; trial < 50; ++trial) {
    const int d = 3 + trial % 8;
    const CostMatrix c = random_metric(rng, d);
    const Tour t = nearest_neighbor_two_opt(c);
    EXPECT_TRUE(is_permutation_tour(t, d));
    EXPECT_EQ(t.cost, tour_cost(c, t.order));
    EXPECT_GE(t.cost, held_karp(c).cost);
  }
}
