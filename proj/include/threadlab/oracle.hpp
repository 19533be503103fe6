#pragma once

// Exhaustive reference solvers for small instances.
//
// oracle_optimal searches multiplicity vectors. Once t(e) is fixed, vertices
// are independent: each picks its cheapest connected loopless multigraph on
// its incident edges with node degrees t, and assemble() realizes any such
// choice as one walk. So the optimum over t(e) <= cap is exact.
//
// oracle_walk_dfs enumerates closed walks step by step and shares nothing with
// the above except verify_threading.

#include <algorithm>
#include <cstdint>
#include <optional>
#include <string>
#include <unordered_map>
#include <vector>

#include "threadlab/assembly.hpp"
#include "threadlab/core.hpp"
#include "threadlab/solvers.hpp"

namespace threadlab {

enum class JunctionClass {
  Any,          // any connected junction graph
  Tree,         // every junction a spanning tree (perfect threading)
  MinimumTree,  // every junction a minimum spanning tree
};

struct OracleOptions {
  int multiplicity_cap = 2;
  JunctionClass junction_class = JunctionClass::Any;
  bool allow_large = false;
  int max_degree_sum = 40;
};

class OracleTooLarge : public PreconditionError {
 public:
  using PreconditionError::PreconditionError;
};

namespace detail {

class JunctionTable {
 public:
  struct Entry {
    bool feasible = false;
    Cost cost = 0;
    std::vector<std::pair<int, int>> links;  // local indices
  };

  JunctionTable(const Instance& inst, int v, JunctionClass cls) : inst_(inst), v_(v), cls_(cls) {
    mst_ = junction_mst_weight(inst, v);
  }

  Cost mst() const { return mst_; }

  const Entry& lookup(const std::vector<int>& t) {
    std::uint64_t key = 0;
    for (int x : t) key = key * 16 + static_cast<std::uint64_t>(x);
    auto it = memo_.find(key);
    if (it != memo_.end()) return it->second;
    return memo_.emplace(key, solve(t)).first->second;
  }

 private:
  Entry solve(const std::vector<int>& t) const {
    Entry best;
    const int k = static_cast<int>(t.size());
    int sum = 0;
    for (int x : t) sum += x;
    if (sum % 2 != 0) return best;
    const bool tree = cls_ != JunctionClass::Any;
    if (tree && sum != 2 * (k - 1)) return best;
    std::vector<std::pair<int, int>> pairs;
    for (int i = 0; i < k; ++i)
      for (int j = i + 1; j < k; ++j) pairs.emplace_back(i, j);
    std::vector<int> rem = t;
    std::vector<int> mult(pairs.size(), 0);
    Cost best_cost = kInfiniteCost;
    std::vector<int> best_mult;

    auto rec = [&](auto&& self, std::size_t p, Cost cost) -> void {
      if (cost >= best_cost) return;
      if (p == pairs.size()) {
        for (int r : rem)
          if (r != 0) return;
        DisjointSets ds(k);
        int comps = k;
        for (std::size_t q = 0; q < pairs.size(); ++q)
          if (mult[q] > 0) comps -= ds.unite(pairs[q].first, pairs[q].second) ? 1 : 0;
        if (comps != 1) return;
        best_cost = cost;
        best_mult = mult;
        return;
      }
      const auto [i, j] = pairs[p];
      int hi = std::min(rem[i], rem[j]);
      if (tree) hi = std::min(hi, 1);
      int lo = 0;
      if (j == k - 1) {
        // Last pair that can still serve node i.
        if (rem[i] > hi) return;
        lo = rem[i];
      }
      const Cost unit = inst_.local_cost(v_, i, j);
      for (int m = hi; m >= lo; --m) {
        mult[p] = m;
        rem[i] -= m;
        rem[j] -= m;
        self(self, p + 1, cost + unit * m);
        rem[i] += m;
        rem[j] += m;
      }
      mult[p] = 0;
    };
    rec(rec, 0, 0);
    if (best_mult.empty()) return best;
    if (cls_ == JunctionClass::MinimumTree && best_cost != mst_) return best;
    best.feasible = true;
    best.cost = best_cost;
    for (std::size_t q = 0; q < pairs.size(); ++q)
      for (int m = 0; m < best_mult[q]; ++m) best.links.push_back(pairs[q]);
    return best;
  }

  const Instance& inst_;
  int v_;
  JunctionClass cls_;
  Cost mst_ = 0;
  std::unordered_map<std::uint64_t, Entry> memo_;
};

}  // namespace detail

/// Minimum-cost threading with every t(e) <= cap whose junctions belong to the
/// requested class; none when no such threading exists.
inline std::optional<SolveResult> oracle_optimal(const Instance& inst, const OracleOptions& opt = {}) {
  if (opt.multiplicity_cap < 1 || opt.multiplicity_cap > 15) throw PreconditionError("oracle: multiplicity cap must be in [1, 15]");
  if (2 * inst.edge_count() > opt.max_degree_sum && !opt.allow_large)
    throw OracleTooLarge("oracle: degree sum " + std::to_string(2 * inst.edge_count()) + " exceeds " +
                         std::to_string(opt.max_degree_sum) + "; pass allow_large to run anyway");
  if (inst.max_degree() > 16) throw PreconditionError("oracle: degree above 16 is not supported");
  const int n = inst.vertex_count();
  const int m = inst.edge_count();
  const bool tree = opt.junction_class != JunctionClass::Any;

  std::vector<detail::JunctionTable> tables;
  tables.reserve(static_cast<std::size_t>(n));
  for (int v = 0; v < n; ++v) tables.emplace_back(inst, v, opt.junction_class);

  // Edges in breadth-first order so vertices complete early.
  std::vector<int> order;
  {
    std::vector<char> seen_v(static_cast<std::size_t>(n), 0), seen_e(static_cast<std::size_t>(m), 0);
    std::vector<int> queue{0};
    seen_v[0] = 1;
    for (std::size_t qi = 0; qi < queue.size(); ++qi) {
      const int v = queue[qi];
      for (int e : inst.incident(v)) {
        if (!seen_e[e]) {
          seen_e[e] = 1;
          order.push_back(e);
        }
        const int u = inst.other_end(e, v);
        if (!seen_v[u]) {
          seen_v[u] = 1;
          queue.push_back(u);
        }
      }
    }
  }
  std::vector<int> cap_v(static_cast<std::size_t>(n));
  for (int v = 0; v < n; ++v) cap_v[v] = tree ? std::min(opt.multiplicity_cap, inst.degree(v) - 1) : opt.multiplicity_cap;

  std::vector<int> t(static_cast<std::size_t>(m), 0);
  std::vector<int> assigned(static_cast<std::size_t>(n), 0);
  std::vector<int> partial_sum(static_cast<std::size_t>(n), 0);
  Cost pending_lb = 0;
  for (int v = 0; v < n; ++v) pending_lb += tables[v].mst();

  Cost best = kInfiniteCost;
  std::vector<int> best_t;

  auto local_tuple = [&](int v) {
    std::vector<int> tuple;
    for (int e : inst.incident(v)) tuple.push_back(t[e]);
    return tuple;
  };
  auto partial_ok = [&](int v) {
    if (!tree) return true;
    const int k = inst.degree(v);
    const int open = k - assigned[v];
    return partial_sum[v] + open <= 2 * (k - 1) && partial_sum[v] + open * cap_v[v] >= 2 * (k - 1);
  };

  auto rec = [&](auto&& self, std::size_t idx, Cost fixed, Cost lb_rest) -> void {
    if (fixed + lb_rest >= best) return;
    if (idx == order.size()) {
      best = fixed;
      best_t = t;
      return;
    }
    const int e = order[idx];
    const int u = inst.edge(e).u;
    const int w = inst.edge(e).v;
    const int hi = std::min(cap_v[u], cap_v[w]);
    for (int x = 1; x <= hi; ++x) {
      t[e] = x;
      ++assigned[u];
      ++assigned[w];
      partial_sum[u] += x;
      partial_sum[w] += x;
      Cost f = fixed;
      Cost lb = lb_rest;
      bool ok = partial_ok(u) && partial_ok(w);
      for (int v : {u, w}) {
        if (!ok || assigned[v] != inst.degree(v)) continue;
        const auto& entry = tables[v].lookup(local_tuple(v));
        if (!entry.feasible) {
          ok = false;
          continue;
        }
        f += entry.cost;
        lb -= tables[v].mst();
      }
      if (ok) self(self, idx + 1, f, lb);
      --assigned[u];
      --assigned[w];
      partial_sum[u] -= x;
      partial_sum[w] -= x;
    }
    t[e] = 0;
  };
  rec(rec, 0, 0, pending_lb);
  if (best_t.empty()) return std::nullopt;

  t = best_t;
  JunctionAssignment ja;
  for (int v = 0; v < n; ++v) {
    const auto& entry = tables[v].lookup(local_tuple(v));
    JunctionGraph j = empty_junction(inst, v);
    const auto inc = inst.incident(v);
    for (auto [a, b] : entry.links) j.add_link(inc[a], inc[b]);
    ja.junctions.push_back(std::move(j));
  }
  const Cost exact_cap = inst.turn_count() + 1;
  const bool complete = opt.junction_class == JunctionClass::Any && opt.multiplicity_cap >= exact_cap;
  SolveResult r = detail::finish(inst, assemble(inst, ja), complete ? Optimality::Exact : Optimality::ExactWithinClass,
                                 "exhaustive over multiplicities <= " + std::to_string(opt.multiplicity_cap));
  if (r.cost != best) throw Error("oracle: assembled cost differs from the table optimum");
  r.lower_bound = perfect_lower_bound(inst);
  return r;
}

struct WalkDfsOptions {
  int multiplicity_cap = 2;
  bool allow_large = false;
  int max_edges = 10;
};

/// Minimum-cost threading with every t(e) <= cap, by enumerating closed walks.
inline std::optional<SolveResult> oracle_walk_dfs(const Instance& inst, const WalkDfsOptions& opt = {}) {
  if (opt.multiplicity_cap < 1) throw PreconditionError("oracle_walk_dfs: multiplicity cap must be at least 1");
  if (inst.edge_count() > opt.max_edges && !opt.allow_large)
    throw OracleTooLarge("oracle_walk_dfs: more than " + std::to_string(opt.max_edges) + " edges");
  const int n = inst.vertex_count();
  const int m = inst.edge_count();
  const int cap = opt.multiplicity_cap;
  std::vector<Cost> mst(static_cast<std::size_t>(n));
  for (int v = 0; v < n; ++v) mst[v] = junction_mst_weight(inst, v);

  // Every threading uses edge 0; rotate it to the front and reverse if needed.
  const int start = inst.edge(0).u;
  std::vector<int> count(static_cast<std::size_t>(m), 0);
  std::vector<Cost> at_vertex(static_cast<std::size_t>(n), 0);
  Walk walk;
  walk.steps.push_back({0, start, inst.edge(0).v});
  count[0] = 1;
  int covered = 1;
  Cost lb = 0;
  for (int v = 0; v < n; ++v) lb += mst[v];

  Cost best = cap >= 2 ? turn_cost(inst, naive_double_threading(inst)) + 1 : kInfiniteCost;
  std::optional<Walk> best_walk;
  const std::size_t max_len = static_cast<std::size_t>(cap) * static_cast<std::size_t>(m);

  auto add_turn = [&](int v, Cost c) {
    const Cost before = std::max(at_vertex[v], mst[v]);
    at_vertex[v] += c;
    lb += std::max(at_vertex[v], mst[v]) - before;
  };
  auto remove_turn = [&](int v, Cost c) {
    const Cost before = std::max(at_vertex[v], mst[v]);
    at_vertex[v] -= c;
    lb += std::max(at_vertex[v], mst[v]) - before;
  };

  auto rec = [&](auto&& self) -> void {
    if (lb >= best) return;
    const Step last = walk.steps.back();
    const int at = last.to;
    if (at == start && last.edge != 0 && covered == m) {
      const Cost close = inst.turn_cost(start, last.edge, 0);
      add_turn(start, close);
      if (lb < best && verify_threading(inst, walk).ok()) {
        const Cost c = turn_cost(inst, walk);
        if (c < best) {
          best = c;
          best_walk = walk;
        }
      }
      remove_turn(start, close);
    }
    if (walk.size() >= max_len) return;
    for (int e : inst.incident(at)) {
      if (e == last.edge || count[e] >= cap) continue;
      const Cost c = inst.turn_cost(at, last.edge, e);
      add_turn(at, c);
      if (lb < best) {
        if (count[e]++ == 0) ++covered;
        walk.steps.push_back({e, at, inst.other_end(e, at)});
        self(self);
        walk.steps.pop_back();
        if (--count[e] == 0) --covered;
      }
      remove_turn(at, c);
    }
  };
  rec(rec);
  if (!best_walk) return std::nullopt;
  SolveResult r = detail::finish(inst, *best_walk, Optimality::ExactWithinClass,
                                 "walk enumeration over multiplicities <= " + std::to_string(cap));
  r.lower_bound = perfect_lower_bound(inst);
  return r;
}

}  // namespace threadlab
