#pragma once

// Tours over the incident edges of one junction. Costs come from a symmetric
// d x d matrix; a tour visits every node once and returns to its start.

#include <algorithm>
#include <cstdint>
#include <functional>
#include <vector>

#include "threadlab/core.hpp"
#include "threadlab/matching.hpp"

namespace threadlab {

using CostMatrix = std::vector<std::vector<Cost>>;

struct Tour {
  std::vector<int> order;
  Cost cost = 0;
};

inline CostMatrix junction_cost_matrix(const Instance& inst, int v) {
  const int d = inst.degree(v);
  CostMatrix m(static_cast<std::size_t>(d), std::vector<Cost>(static_cast<std::size_t>(d), 0));
  for (int i = 0; i < d; ++i)
    for (int j = 0; j < d; ++j)
      if (i != j) m[i][j] = inst.local_cost(v, i, j);
  return m;
}

inline Cost tour_cost(const CostMatrix& c, const std::vector<int>& order) {
  Cost total = 0;
  for (std::size_t i = 0; i < order.size(); ++i) total += c[order[i]][order[(i + 1) % order.size()]];
  return total;
}

inline bool is_metric(const CostMatrix& c) {
  const std::size_t d = c.size();
  for (std::size_t i = 0; i < d; ++i)
    for (std::size_t j = 0; j < d; ++j)
      for (std::size_t k = 0; k < d; ++k)
        if (i != j && j != k && i != k && c[i][k] > c[i][j] + c[j][k]) return false;
  return true;
}

/// Exact tour by dynamic programming over subsets, O(2^d d^2).
inline Tour held_karp(const CostMatrix& c) {
  const int d = static_cast<int>(c.size());
  if (d < 2) throw PreconditionError("held_karp: need at least 2 nodes");
  if (d > 20) throw PreconditionError("held_karp: more than 20 nodes");
  if (d == 2) return Tour{{0, 1}, c[0][1] + c[1][0]};
  // Node 0 is the fixed start; subsets range over nodes 1..d-1.
  const int k = d - 1;
  const std::size_t full = std::size_t{1} << k;
  std::vector<Cost> dp(full * static_cast<std::size_t>(k), kInfiniteCost);
  std::vector<std::int8_t> parent(full * static_cast<std::size_t>(k), -1);
  auto at = [k](std::size_t mask, int last) { return mask * static_cast<std::size_t>(k) + static_cast<std::size_t>(last); };
  for (int j = 0; j < k; ++j) dp[at(std::size_t{1} << j, j)] = c[0][j + 1];
  for (std::size_t mask = 1; mask < full; ++mask) {
    for (int last = 0; last < k; ++last) {
      if (!(mask >> last & 1)) continue;
      const Cost here = dp[at(mask, last)];
      if (here >= kInfiniteCost) continue;
      for (int next = 0; next < k; ++next) {
        if (mask >> next & 1) continue;
        const std::size_t nm = mask | (std::size_t{1} << next);
        const Cost cand = here + c[last + 1][next + 1];
        if (cand < dp[at(nm, next)]) {
          dp[at(nm, next)] = cand;
          parent[at(nm, next)] = static_cast<std::int8_t>(last);
        }
      }
    }
  }
  Cost best = kInfiniteCost;
  int best_last = -1;
  for (int last = 0; last < k; ++last) {
    const Cost cand = dp[at(full - 1, last)] + c[last + 1][0];
    if (cand < best) {
      best = cand;
      best_last = last;
    }
  }
  Tour t;
  t.cost = best;
  std::size_t mask = full - 1;
  int last = best_last;
  while (last >= 0) {
    t.order.push_back(last + 1);
    const int prev = parent[at(mask, last)];
    mask &= ~(std::size_t{1} << last);
    last = prev;
  }
  t.order.push_back(0);
  std::reverse(t.order.begin(), t.order.end());
  return t;
}

/// Christofides: MST, minimum-weight perfect matching on odd-degree nodes,
/// Euler circuit, shortcut. Within 3/2 of optimal on metric costs.
inline Tour christofides(const CostMatrix& c) {
  const int d = static_cast<int>(c.size());
  if (d < 2) throw PreconditionError("christofides: need at least 2 nodes");
  if (!is_metric(c)) throw PreconditionError("christofides: costs violate the triangle inequality");
  if (d <= 3) {
    std::vector<int> order(static_cast<std::size_t>(d));
    for (int i = 0; i < d; ++i) order[i] = i;
    return Tour{order, tour_cost(c, order)};
  }
  // Prim.
  std::vector<std::vector<int>> multi(static_cast<std::size_t>(d));
  {
    std::vector<Cost> best(static_cast<std::size_t>(d), kInfiniteCost);
    std::vector<int> from(static_cast<std::size_t>(d), -1);
    std::vector<bool> in(static_cast<std::size_t>(d), false);
    best[0] = 0;
    for (int round = 0; round < d; ++round) {
      int pick = -1;
      for (int i = 0; i < d; ++i)
        if (!in[i] && (pick < 0 || best[i] < best[pick])) pick = i;
      in[pick] = true;
      if (from[pick] >= 0) {
        multi[pick].push_back(from[pick]);
        multi[from[pick]].push_back(pick);
      }
      for (int i = 0; i < d; ++i)
        if (!in[i] && c[pick][i] < best[i]) {
          best[i] = c[pick][i];
          from[i] = pick;
        }
    }
  }
  std::vector<int> odd;
  for (int i = 0; i < d; ++i)
    if (multi[i].size() % 2 == 1) odd.push_back(i);
  WeightedGraph g(static_cast<int>(odd.size()));
  for (std::size_t i = 0; i < odd.size(); ++i)
    for (std::size_t j = i + 1; j < odd.size(); ++j)
      g.add_link(static_cast<int>(i), static_cast<int>(j), c[odd[i]][odd[j]]);
  const auto m = min_weight_perfect_matching(g);
  if (!m) throw Error("christofides: odd-degree nodes have no perfect matching");
  for (int id : m->links) {
    const int a = odd[g.links[id].u];
    const int b = odd[g.links[id].v];
    multi[a].push_back(b);
    multi[b].push_back(a);
  }
  // Hierholzer on the multigraph, then keep first visits.
  std::vector<std::vector<int>> adj = multi;
  std::vector<int> stack{0};
  std::vector<int> circuit;
  while (!stack.empty()) {
    const int u = stack.back();
    if (adj[u].empty()) {
      circuit.push_back(u);
      stack.pop_back();
      continue;
    }
    const int v = adj[u].back();
    adj[u].pop_back();
    auto it = std::find(adj[v].begin(), adj[v].end(), u);
    adj[v].erase(it);
    stack.push_back(v);
  }
  std::vector<bool> seen(static_cast<std::size_t>(d), false);
  Tour t;
  for (int u : circuit)
    if (!seen[u]) {
      seen[u] = true;
      t.order.push_back(u);
    }
  t.cost = tour_cost(c, t.order);
  return t;
}

/// Nearest neighbour from node 0, improved by 2-opt until no move helps.
inline Tour nearest_neighbor_two_opt(const CostMatrix& c) {
  const int d = static_cast<int>(c.size());
  if (d < 2) throw PreconditionError("nearest_neighbor_two_opt: need at least 2 nodes");
  std::vector<int> order{0};
  std::vector<bool> used(static_cast<std::size_t>(d), false);
  used[0] = true;
  for (int step = 1; step < d; ++step) {
    const int at = order.back();
    int pick = -1;
    for (int j = 0; j < d; ++j)
      if (!used[j] && (pick < 0 || c[at][j] < c[at][pick])) pick = j;
    used[pick] = true;
    order.push_back(pick);
  }
  bool improved = d >= 4;
  while (improved) {
    improved = false;
    for (int i = 0; i + 1 < d && !improved; ++i) {
      for (int j = i + 2; j < d && !improved; ++j) {
        const int a = order[i], b = order[i + 1];
        const int x = order[j], y = order[(j + 1) % d];
        if (y == a) continue;
        if (c[a][x] + c[b][y] < c[a][b] + c[x][y]) {
          std::reverse(order.begin() + i + 1, order.begin() + j + 1);
          improved = true;
        }
      }
    }
  }
  return Tour{order, tour_cost(c, order)};
}

}  // namespace threadlab
