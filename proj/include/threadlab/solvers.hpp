#pragma once

// Polynomial solvers:
//   solve_perfect_deg3    minimum-turn perfect threading, max degree 3 (matching)
//   solve_double_deg3     best threading with every t(e) <= 2, max degree 3 (weighted matching)
//   solve_exactly_double  every t(e) == 2; one tour per junction
//   solve_grid            rectangular grids from an edge cycle cover
//   solve_approx_2r       naive double threading with its max/min cost ratio bound

#include <cmath>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "threadlab/assembly.hpp"
#include "threadlab/core.hpp"
#include "threadlab/matching.hpp"
#include "threadlab/tsp.hpp"

namespace threadlab {

enum class Optimality { Exact, ExactWithinClass, Approximate, Heuristic };

struct SolveResult {
  Threading threading;
  Cost cost = 0;
  Optimality optimality = Optimality::Heuristic;
  double ratio_bound = 1.0;  // meaningful for Approximate
  std::string notes;
  std::optional<Cost> lower_bound;
  std::vector<int> certificate_edges;  // matched edges (Alg. 2) or cycle edges S (Alg. 3), dense
};

inline std::string to_string(Optimality o, double ratio = 1.0) {
  switch (o) {
    case Optimality::Exact:
      return "exact";
    case Optimality::ExactWithinClass:
      return "exact-within-class";
    case Optimality::Approximate: {
      std::ostringstream os;
      os << "approximate(" << ratio << ")";
      return os.str();
    }
    case Optimality::Heuristic:
      return "heuristic";
  }
  return "unknown";
}

inline std::string optimality_label(const SolveResult& r) { return to_string(r.optimality, r.ratio_bound); }

namespace detail {

inline SolveResult finish(const Instance& inst, Threading w, Optimality o, std::string notes) {
  SolveResult r;
  const auto report = verify_threading(inst, w);
  if (!report.ok()) throw Error("solver produced an invalid threading: " + report.violations.front().describe(inst));
  r.cost = turn_cost(inst, w);
  r.threading = std::move(w);
  r.optimality = o;
  r.notes = std::move(notes);
  return r;
}

inline void require_max_degree_3(const Instance& inst, const char* who) {
  if (inst.max_degree() > 3) throw PreconditionError(std::string(who) + ": maximum degree exceeds 3");
}

/// The edge of degree 2 in a 3-node path.
inline int path_center(const JunctionGraph& j) {
  for (int e : j.nodes)
    if (j.degree_of(e) == 2) return e;
  return -1;
}

/// Walks each component of an edge set in which every vertex has degree 0 or 2.
inline CycleSet trace_cycles(const Instance& inst, const std::vector<int>& edge_set) {
  std::vector<std::vector<int>> at(static_cast<std::size_t>(inst.vertex_count()));
  for (int e : edge_set) {
    at[inst.edge(e).u].push_back(e);
    at[inst.edge(e).v].push_back(e);
  }
  for (const auto& a : at)
    if (!a.empty() && a.size() != 2) throw Error("edge set is not a union of vertex-disjoint cycles");
  std::vector<char> used(static_cast<std::size_t>(inst.edge_count()), 0);
  CycleSet out;
  for (int e0 : edge_set) {
    if (used[e0]) continue;
    Walk c;
    const int start = inst.edge(e0).u;
    int at_v = start;
    int e = e0;
    do {
      used[e] = 1;
      const int next_v = inst.other_end(e, at_v);
      c.steps.push_back({e, at_v, next_v});
      at_v = next_v;
      e = at[at_v][0] == e ? at[at_v][1] : at[at_v][0];
    } while (at_v != start);
    out.push_back(std::move(c));
  }
  return out;
}

}  // namespace detail

/// Minimum-turn perfect threading for max degree 3, or none if no threading
/// has a minimum spanning tree at every junction.
///
/// In such a threading a degree-3 junction is a path whose center edge is
/// threaded twice and the other two once, and a degree-2 junction is a single
/// link, so both edges at a degree-2 vertex are threaded once. The doubled edges
/// therefore form a perfect matching of the degree-3 vertices using only edges
/// that are an MST center at both ends, and any such matching yields one.
inline std::optional<SolveResult> solve_perfect_deg3(const Instance& inst) {
  detail::require_max_degree_3(inst, "solve_perfect_deg3");
  const int n = inst.vertex_count();
  std::vector<int> node_of(static_cast<std::size_t>(n), -1);
  std::vector<std::vector<char>> center(static_cast<std::size_t>(n));
  int nodes = 0;
  for (int v = 0; v < n; ++v) {
    if (inst.degree(v) != 3) continue;
    node_of[v] = nodes++;
    center[v].assign(static_cast<std::size_t>(inst.edge_count()), 0);
    for (const JunctionGraph& tree : junction_mst(inst, v)) center[v][detail::path_center(tree)] = 1;
  }
  WeightedGraph g(nodes);
  std::vector<int> link_edge;
  for (int e = 0; e < inst.edge_count(); ++e) {
    const auto& ed = inst.edge(e);
    if (node_of[ed.u] < 0 || node_of[ed.v] < 0) continue;
    if (!center[ed.u][e] || !center[ed.v][e]) continue;
    g.add_link(node_of[ed.u], node_of[ed.v], 0);
    link_edge.push_back(e);
  }
  const auto m = perfect_matching(g);
  if (!m) return std::nullopt;

  std::vector<int> matched_at(static_cast<std::size_t>(n), -1);
  std::vector<int> matched;
  for (int id : m->links) {
    const int e = link_edge[id];
    matched.push_back(e);
    matched_at[inst.edge(e).u] = e;
    matched_at[inst.edge(e).v] = e;
  }
  JunctionAssignment ja;
  for (int v = 0; v < n; ++v) {
    JunctionGraph j = empty_junction(inst, v);
    const auto inc = inst.incident(v);
    if (inst.degree(v) == 2) {
      j.add_link(inc[0], inc[1]);
    } else {
      const int c = matched_at[v];
      for (int e : inc)
        if (e != c) j.add_link(e, c);
    }
    ja.junctions.push_back(std::move(j));
  }
  SolveResult r = detail::finish(inst, assemble(inst, ja), Optimality::Exact,
                                 "every junction is a minimum spanning tree; matches the perfect lower bound");
  r.lower_bound = perfect_lower_bound(inst);
  if (r.cost != *r.lower_bound) throw Error("solve_perfect_deg3: cost differs from the perfect lower bound");
  std::sort(matched.begin(), matched.end());
  r.certificate_edges = std::move(matched);
  return r;
}

/// Minimum-turn threading among those traversing every edge at most twice,
/// max degree 3.
///
/// Such a threading is fixed by the set S of edges threaded once: S is a union
/// of vertex-disjoint cycles, a vertex on a cycle costs its total minus the
/// turn the cycle takes there, and a vertex off every cycle pays everything
/// (twice at degree 2). Minimizing cost is maximizing the summed turn cost of
/// the cycles, solved as a maximum-weight perfect matching on four ports per edge.
inline SolveResult solve_double_deg3(const Instance& inst) {
  detail::require_max_degree_3(inst, "solve_double_deg3");
  const int m = inst.edge_count();
  // Ports of edge e = uv: 4e (u plus), 4e+1 (u minus), 4e+2 (v minus), 4e+3 (v plus).
  WeightedGraph g(4 * m);
  std::vector<int> middle(static_cast<std::size_t>(m));
  for (int e = 0; e < m; ++e) {
    g.add_link(4 * e, 4 * e + 1, 0);
    middle[e] = g.add_link(4 * e + 1, 4 * e + 2, 0);
    g.add_link(4 * e + 2, 4 * e + 3, 0);
  }
  auto plus_port = [&](int e, int v) { return inst.edge(e).u == v ? 4 * e : 4 * e + 3; };
  for (int v = 0; v < inst.vertex_count(); ++v) {
    const auto inc = inst.incident(v);
    for (std::size_t i = 0; i < inc.size(); ++i)
      for (std::size_t j = i + 1; j < inc.size(); ++j)
        g.add_link(plus_port(inc[i], v), plus_port(inc[j], v), inst.local_cost(v, static_cast<int>(i), static_cast<int>(j)));
  }
  const auto mm = max_weight_perfect_matching(g);
  if (!mm) throw Error("solve_double_deg3: port graph has no perfect matching");
  std::vector<char> in_m(g.links.size(), 0);
  for (int id : mm->links) in_m[id] = 1;
  std::vector<int> s;
  for (int e = 0; e < m; ++e)
    if (in_m[middle[e]]) s.push_back(e);
  const CycleSet cycles = detail::trace_cycles(inst, s);
  SolveResult r = detail::finish(inst, threading_from_cycles(inst, cycles, CycleMode::DisjointComplement),
                                 Optimality::ExactWithinClass, "optimal among threadings with every edge at most twice");
  r.lower_bound = perfect_lower_bound(inst);
  r.certificate_edges = std::move(s);
  return r;
}

enum class JunctionMode { Exact, Christofides, Heuristic };

inline std::string to_string(JunctionMode m) {
  switch (m) {
    case JunctionMode::Exact:
      return "exact";
    case JunctionMode::Christofides:
      return "christofides";
    case JunctionMode::Heuristic:
      return "heuristic";
  }
  return "unknown";
}

/// Threading with every edge exactly twice: every junction graph is then a
/// cycle through all incident edges, i.e. a tour, chosen independently per vertex.
inline SolveResult solve_exactly_double(const Instance& inst, JunctionMode mode = JunctionMode::Exact,
                                        int exact_degree_cap = 16) {
  if (mode == JunctionMode::Exact && inst.max_degree() > exact_degree_cap)
    throw PreconditionError("solve_exactly_double: degree " + std::to_string(inst.max_degree()) +
                            " exceeds exact_degree_cap " + std::to_string(exact_degree_cap));
  bool approximated = false;
  JunctionAssignment ja;
  for (int v = 0; v < inst.vertex_count(); ++v) {
    JunctionGraph j = empty_junction(inst, v);
    const auto inc = inst.incident(v);
    const int d = inst.degree(v);
    if (d == 2) {
      j.add_link(inc[0], inc[1]);
      j.add_link(inc[0], inc[1]);
    } else if (d == 3) {
      j.add_link(inc[0], inc[1]);
      j.add_link(inc[1], inc[2]);
      j.add_link(inc[0], inc[2]);
    } else {
      const CostMatrix c = junction_cost_matrix(inst, v);
      Tour t;
      if (mode == JunctionMode::Exact) {
        t = held_karp(c);
      } else {
        if (mode == JunctionMode::Christofides && !is_metric(c))
          throw PreconditionError("solve_exactly_double: turn costs at vertex " + std::to_string(inst.vertex_id(v)) +
                                  " violate the triangle inequality");
        t = mode == JunctionMode::Christofides ? christofides(c) : nearest_neighbor_two_opt(c);
        approximated = true;
      }
      for (std::size_t i = 0; i < t.order.size(); ++i) j.add_link(inc[t.order[i]], inc[t.order[(i + 1) % t.order.size()]]);
    }
    ja.junctions.push_back(std::move(j));
  }
  const Threading w = assemble(inst, ja);
  if (!approximated)
    return detail::finish(inst, w, Optimality::ExactWithinClass, "optimal among threadings with every edge exactly twice");
  if (mode == JunctionMode::Christofides) {
    SolveResult r = detail::finish(inst, w, Optimality::Approximate,
                                   "junction tours by Christofides; within 3/2 of the exactly-twice optimum");
    r.ratio_bound = 1.5;
    return r;
  }
  return detail::finish(inst, w, Optimality::Heuristic, "junction tours by nearest neighbour and 2-opt");
}

// ---------------------------------------------------------------------------
// Grids. Vertex (x, y) has id y*w + x for 0 <= x < w, 0 <= y < h. Horizontal
// edges come first, id y*(w-1) + x for (x,y)-(x+1,y), then vertical edges,
// id h*(w-1) + y*w + x for (x,y)-(x,y+1). Straight turns cost 0, others 1.

inline Instance make_grid(int w, int h) {
  if (w < 2 || h < 2) throw PreconditionError("grid sides must be at least 2");
  InstanceBuilder b;
  b.add_vertices(w * h);
  auto vid = [w](int x, int y) { return static_cast<VertexId>(y * w + x); };
  for (int y = 0; y < h; ++y)
    for (int x = 0; x + 1 < w; ++x) b.add_edge(vid(x, y), vid(x + 1, y));
  for (int y = 0; y + 1 < h; ++y)
    for (int x = 0; x < w; ++x) b.add_edge(vid(x, y), vid(x, y + 1));
  const EdgeId vbase = static_cast<EdgeId>(h) * (w - 1);
  auto hid = [w](int x, int y) { return static_cast<EdgeId>(y * (w - 1) + x); };
  auto vert = [w, vbase](int x, int y) { return vbase + y * w + x; };
  for (int y = 0; y < h; ++y)
    for (int x = 1; x + 1 < w; ++x) b.set_turn(vid(x, y), hid(x - 1, y), hid(x, y), 0);
  for (int y = 1; y + 1 < h; ++y)
    for (int x = 0; x < w; ++x) b.set_turn(vid(x, y), vert(x, y - 1), vert(x, y), 0);
  b.set_default_cost(1);
  return b.build();
}

struct GridBound {
  Cost value;
  bool applicable;  // a proven lower bound only when a side is even
};

inline GridBound grid_lower_bound(int w, int h) {
  if (w < 2 || h < 2) throw PreconditionError("grid sides must be at least 2");
  const Cost value = static_cast<Cost>(2 * ((w + 1) / 2)) * (2 * ((h + 1) / 2));
  return {value, w % 2 == 0 || h % 2 == 0};
}

namespace detail {

using Cell = std::pair<int, int>;

inline std::vector<Cell> rectangle(int x0, int y0, int x1, int y1) {
  std::vector<Cell> c;
  for (int y = y0; y <= y1; ++y) c.push_back({x0, y});
  for (int x = x0 + 1; x <= x1; ++x) c.push_back({x, y1});
  for (int y = y1 - 1; y >= y0; --y) c.push_back({x1, y});
  for (int x = x1 - 1; x > x0; --x) c.push_back({x, y0});
  return c;
}

/// Cycles as lattice point sequences, for w even and h odd.
inline std::vector<std::vector<Cell>> cover_even_odd(int w, int h) {
  std::vector<std::vector<Cell>> cycles;
  // Boundary, except that the bottom side dips into row 1 under every cell
  // [x, x+1] with x odd, which the column pairs below cover instead.
  std::vector<Cell> jagged;
  for (int y = 0; y < h; ++y) jagged.push_back({0, y});
  for (int x = 1; x < w; ++x) jagged.push_back({x, h - 1});
  for (int y = h - 2; y >= 0; --y) jagged.push_back({w - 1, y});
  for (int x = w - 2; x > 0; --x) {
    if (x % 2 == 0 && x - 1 >= 1) {
      jagged.push_back({x, 0});
      jagged.push_back({x, 1});
      jagged.push_back({x - 1, 1});
      jagged.push_back({x - 1, 0});
      --x;
    } else {
      jagged.push_back({x, 0});
    }
  }
  cycles.push_back(std::move(jagged));
  for (int x = 1; x + 2 < w; x += 2) cycles.push_back(rectangle(x, 0, x + 1, h - 1));
  for (int y = 1; y + 1 < h; y += 2) cycles.push_back(rectangle(0, y, w - 1, y + 1));
  for (int x = 1; x + 2 < w; x += 2)
    for (int y = 2; y + 2 < h; y += 2) cycles.push_back(rectangle(x, y, x + 1, y + 1));
  return cycles;
}

inline std::vector<std::vector<Cell>> grid_cover_cells(int w, int h) {
  std::vector<std::vector<Cell>> cycles;
  if (w % 2 == 0 && h % 2 == 0) {
    cycles.push_back(rectangle(0, 0, w - 1, h - 1));
    for (int x = 1; x + 2 < w; x += 2) cycles.push_back(rectangle(x, 0, x + 1, h - 1));
    for (int y = 1; y + 2 < h; y += 2) cycles.push_back(rectangle(0, y, w - 1, y + 1));
    for (int x = 1; x + 2 < w; x += 2)
      for (int y = 1; y + 2 < h; y += 2) cycles.push_back(rectangle(x, y, x + 1, y + 1));
  } else if (w % 2 == 0) {
    cycles = cover_even_odd(w, h);
  } else if (h % 2 == 0) {
    cycles = cover_even_odd(h, w);
    for (auto& c : cycles)
      for (auto& p : c) std::swap(p.first, p.second);
  } else {
    for (int x = 0; x + 2 < w; x += 2) cycles.push_back(rectangle(x, 0, x + 1, h - 1));
    for (int y = 1; y + 1 < h; y += 2) cycles.push_back(rectangle(0, y, w - 1, y + 1));
    for (int x = 1; x + 1 < w; x += 2)
      for (int y = 0; y + 2 < h; y += 2) cycles.push_back(rectangle(x, y, x + 1, y + 1));
  }
  return cycles;
}

}  // namespace detail

/// Edge cycle cover of the w x h grid as walks on make_grid(w, h).
inline CycleSet grid_cycle_cover(const Instance& grid, int w, int h) {
  CycleSet out;
  for (const auto& cells : detail::grid_cover_cells(w, h)) {
    std::vector<int> vs;
    vs.reserve(cells.size());
    for (auto [x, y] : cells) vs.push_back(grid.vertex_index(static_cast<VertexId>(y * w + x)));
    out.push_back(walk_through_vertices(grid, vs));
  }
  return out;
}

/// Threading of make_grid(w, h).
inline SolveResult solve_grid(int w, int h) {
  const Instance grid = make_grid(w, h);
  const CycleSet cover = grid_cycle_cover(grid, w, h);
  Cost cover_cost = 0;
  for (const Walk& c : cover) cover_cost += turn_cost(grid, c);
  const GridBound bound = grid_lower_bound(w, h);
  SolveResult r = detail::finish(grid, threading_from_cycles(grid, cover, CycleMode::EdgeCover),
                                 bound.applicable ? Optimality::Exact : Optimality::Heuristic,
                                 bound.applicable ? "meets the grid lower bound"
                                                  : "both sides odd; 4 turns below the even-side formula, optimality open");
  if (r.cost != cover_cost) throw Error("solve_grid: threading cost differs from cycle cover cost");
  if (bound.applicable) r.lower_bound = bound.value;
  return r;
}

/// Naive double threading; within 2r of optimal where r = max/min turn cost.
inline SolveResult solve_approx_2r(const Instance& inst) {
  Cost lo = kInfiniteCost;
  Cost hi = 0;
  for (int v = 0; v < inst.vertex_count(); ++v)
    for (int i = 0; i < inst.degree(v); ++i)
      for (int j = i + 1; j < inst.degree(v); ++j) {
        lo = std::min(lo, inst.local_cost(v, i, j));
        hi = std::max(hi, inst.local_cost(v, i, j));
      }
  if (lo == 0) throw PreconditionError("solve_approx_2r: a turn has cost 0, so the ratio bound is undefined");
  SolveResult r = detail::finish(inst, naive_double_threading(inst), Optimality::Approximate,
                                 "naive double threading; r = max/min turn cost");
  r.ratio_bound = 2.0 * static_cast<double>(hi) / static_cast<double>(lo);
  r.lower_bound = perfect_lower_bound(inst);
  return r;
}

}  // namespace threadlab
