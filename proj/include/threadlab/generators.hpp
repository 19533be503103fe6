#pragma once

// Seeded random instances. Output depends only on the options (mt19937_64 with
// plain modular reduction, so it is stable across standard libraries).

#include <algorithm>
#include <cstdint>
#include <random>
#include <vector>

#include "threadlab/core.hpp"

namespace threadlab {

struct RandomInstanceOptions {
  std::uint64_t seed = 1;
  int vertices = 6;
  int extra_edges = 3;  // attempted chords beyond the spanning cycle
  int max_degree = 3;
  Cost cost_min = 0;
  Cost cost_max = 3;
  bool simple = true;
};

/// A random Hamiltonian cycle plus random chords within the degree bound, with
/// an explicit uniformly random cost on every turn.
inline Instance random_instance(const RandomInstanceOptions& opt) {
  if (opt.vertices < 2) throw PreconditionError("random_instance: need at least 2 vertices");
  if (opt.max_degree < 2) throw PreconditionError("random_instance: max degree must be at least 2");
  if (opt.cost_min < 0 || opt.cost_max < opt.cost_min) throw PreconditionError("random_instance: bad cost range");
  if (opt.vertices == 2 && opt.simple) throw PreconditionError("random_instance: a simple graph needs 3 vertices");
  std::mt19937_64 rng(opt.seed);
  auto below = [&rng](std::uint64_t n) { return rng() % n; };
  const int n = opt.vertices;

  std::vector<int> perm(static_cast<std::size_t>(n));
  for (int i = 0; i < n; ++i) perm[i] = i;
  for (int i = n - 1; i > 0; --i) std::swap(perm[i], perm[below(static_cast<std::uint64_t>(i) + 1)]);

  InstanceBuilder b;
  b.add_vertices(n);
  std::vector<int> degree(static_cast<std::size_t>(n), 0);
  std::vector<std::vector<char>> adjacent(static_cast<std::size_t>(n), std::vector<char>(static_cast<std::size_t>(n), 0));
  std::vector<std::pair<int, int>> edges;
  auto add = [&](int u, int v) {
    b.add_edge(u, v);
    edges.emplace_back(u, v);
    ++degree[u];
    ++degree[v];
    adjacent[u][v] = adjacent[v][u] = 1;
  };
  for (int i = 0; i < n; ++i) add(perm[i], perm[(i + 1) % n]);
  for (int k = 0; k < opt.extra_edges; ++k) {
    const int u = static_cast<int>(below(static_cast<std::uint64_t>(n)));
    const int v = static_cast<int>(below(static_cast<std::uint64_t>(n)));
    if (u == v || degree[u] >= opt.max_degree || degree[v] >= opt.max_degree) continue;
    if (opt.simple && adjacent[u][v]) continue;
    add(u, v);
  }
  const auto span = static_cast<std::uint64_t>(opt.cost_max - opt.cost_min + 1);
  std::vector<std::vector<int>> incident(static_cast<std::size_t>(n));
  for (std::size_t e = 0; e < edges.size(); ++e) {
    incident[edges[e].first].push_back(static_cast<int>(e));
    incident[edges[e].second].push_back(static_cast<int>(e));
  }
  for (int v = 0; v < n; ++v)
    for (std::size_t i = 0; i < incident[v].size(); ++i)
      for (std::size_t j = i + 1; j < incident[v].size(); ++j)
        b.set_turn(v, incident[v][i], incident[v][j], opt.cost_min + static_cast<Cost>(below(span)));
  b.set_default_cost(opt.cost_min);
  return b.build();
}

/// Same graph with every turn cost replaced by `cost`.
inline Instance with_uniform_costs(const Instance& inst, Cost cost) {
  std::vector<EdgeSpec> edges;
  for (const auto& e : inst.edges()) edges.push_back({e.id, inst.vertex_id(e.u), inst.vertex_id(e.v)});
  return Instance::build(inst.vertex_ids(), std::move(edges), cost, {});
}

/// Same graph with an explicit random cost in [lo, hi] on every turn.
inline Instance with_random_costs(const Instance& inst, std::uint64_t seed, Cost lo, Cost hi) {
  if (lo < 0 || hi < lo) throw PreconditionError("with_random_costs: bad cost range");
  std::mt19937_64 rng(seed);
  const auto span = static_cast<std::uint64_t>(hi - lo + 1);
  std::vector<EdgeSpec> edges;
  for (const auto& e : inst.edges()) edges.push_back({e.id, inst.vertex_id(e.u), inst.vertex_id(e.v)});
  std::vector<TurnSpec> turns;
  for (int v = 0; v < inst.vertex_count(); ++v) {
    const auto inc = inst.incident(v);
    for (std::size_t i = 0; i < inc.size(); ++i)
      for (std::size_t j = i + 1; j < inc.size(); ++j)
        turns.push_back({inst.vertex_id(v), inst.edge_id(inc[i]), inst.edge_id(inc[j]), lo + static_cast<Cost>(rng() % span)});
  }
  return Instance::build(inst.vertex_ids(), std::move(edges), lo, std::move(turns));
}

}  // namespace threadlab
