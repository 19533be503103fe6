#pragma once

// From junction graphs and cycle collections to one closed walk.
//
// Every edge e = uv gets two ports, e@u and e@v, joined by t(e) tubes. Each
// junction link at v joins two ports at v. Every port then carries as many
// link ends as tubes, so pairing them makes a 2-regular graph on link ends whose
// cycles alternate link, tube, link, ... Each such cycle is a closed walk.
// Cycles that share an edge are merged by exchanging two of that edge's tubes.
// Junction connectivity and graph connectivity leave exactly one cycle.

#include <algorithm>
#include <string>
#include <vector>

#include "threadlab/core.hpp"

namespace threadlab {

/// Candidate junction graph per dense vertex (index v holds J(v)).
struct JunctionAssignment {
  std::vector<JunctionGraph> junctions;

  Cost cost(const Instance& inst) const {
    Cost c = 0;
    for (const auto& j : junctions) c += j.cost(inst);
    return c;
  }
};

inline JunctionAssignment assignment_of(const Instance& inst, const Walk& w) {
  return JunctionAssignment{junction_graphs(inst, w)};
}

/// Throws PreconditionError naming the first offending vertex or edge.
inline void check_assignment(const Instance& inst, const JunctionAssignment& ja) {
  const int n = inst.vertex_count();
  if (static_cast<int>(ja.junctions.size()) != n)
    throw PreconditionError("assignment must hold one junction graph per vertex");
  std::vector<std::vector<int>> degree_at(static_cast<std::size_t>(n));
  for (int v = 0; v < n; ++v) {
    const JunctionGraph& j = ja.junctions[v];
    const std::string where = "vertex " + std::to_string(inst.vertex_id(v));
    if (j.vertex != v) throw PreconditionError("junction graph stored at the wrong vertex (" + where + ")");
    std::vector<int> want(inst.incident(v).begin(), inst.incident(v).end());
    std::vector<int> have = j.nodes;
    std::sort(want.begin(), want.end());
    std::sort(have.begin(), have.end());
    if (want != have) throw PreconditionError("junction nodes differ from incident edges at " + where);
    degree_at[v].assign(static_cast<std::size_t>(inst.degree(v)), 0);
    for (auto [a, b] : j.links) {
      if (a == b) throw PreconditionError("junction link is a self-loop at " + where);
      if (!inst.is_incident(v, a) || !inst.is_incident(v, b))
        throw PreconditionError("junction link uses a non-incident edge at " + where);
      ++degree_at[v][inst.local_index(v, a)];
      ++degree_at[v][inst.local_index(v, b)];
    }
    if (!j.connected()) throw PreconditionError("junction graph disconnected at " + where);
  }
  for (int e = 0; e < inst.edge_count(); ++e) {
    const auto& ed = inst.edge(e);
    const int tu = degree_at[ed.u][inst.local_index(ed.u, e)];
    const int tv = degree_at[ed.v][inst.local_index(ed.v, e)];
    if (tu != tv || tu == 0)
      throw PreconditionError("inconsistent multiplicity at edge " + std::to_string(inst.edge_id(e)));
  }
}

/// A threading whose junction graphs are exactly `ja`.
inline Threading assemble(const Instance& inst, const JunctionAssignment& ja) {
  check_assignment(inst, ja);

  // Link ends: link k owns ends 2k and 2k+1.
  std::vector<int> end_edge;
  std::vector<int> end_vertex;
  for (const JunctionGraph& j : ja.junctions) {
    for (auto [a, b] : j.links) {
      end_edge.push_back(a);
      end_vertex.push_back(j.vertex);
      end_edge.push_back(b);
      end_vertex.push_back(j.vertex);
    }
  }
  const int ends = static_cast<int>(end_edge.size());
  // Ends grouped by port; side 0 is e@u, side 1 is e@v.
  std::vector<std::vector<int>> port(2 * static_cast<std::size_t>(inst.edge_count()));
  for (int x = 0; x < ends; ++x) {
    const int e = end_edge[x];
    port[2 * e + (inst.edge(e).u == end_vertex[x] ? 0 : 1)].push_back(x);
  }
  std::vector<int> tube(static_cast<std::size_t>(ends), -1);
  for (int e = 0; e < inst.edge_count(); ++e) {
    const auto& a = port[2 * e];
    const auto& b = port[2 * e + 1];
    for (std::size_t i = 0; i < a.size(); ++i) {
      tube[a[i]] = b[i];
      tube[b[i]] = a[i];
    }
  }

  // Label the alternating cycles.
  std::vector<int> cycle_of(static_cast<std::size_t>(ends), -1);
  int cycles = 0;
  for (int s = 0; s < ends; ++s) {
    if (cycle_of[s] >= 0) continue;
    int x = s;
    do {
      cycle_of[x] = cycle_of[x ^ 1] = cycles;
      x = tube[x ^ 1];
    } while (x != s);
    ++cycles;
  }

  // Exchanging the partners of two tubes of one edge lying on different
  // cycles joins those cycles.
  detail::DisjointSets merged(cycles);
  for (int e = 0; e < inst.edge_count(); ++e) {
    const auto& a = port[2 * e];
    for (std::size_t i = 1; i < a.size(); ++i) {
      if (merged.find(cycle_of[a[0]]) == merged.find(cycle_of[a[i]])) continue;
      const int p = tube[a[0]];
      const int q = tube[a[i]];
      tube[a[0]] = q;
      tube[q] = a[0];
      tube[a[i]] = p;
      tube[p] = a[i];
      merged.unite(cycle_of[a[0]], cycle_of[a[i]]);
    }
  }

  Threading w;
  w.steps.reserve(static_cast<std::size_t>(ends / 2));
  int x = 0;
  do {
    const int y = x ^ 1;
    const int z = tube[y];
    w.steps.push_back({end_edge[y], end_vertex[y], end_vertex[z]});
    x = z;
  } while (x != 0);
  if (static_cast<int>(w.size()) * 2 != ends) throw Error("assemble: union of junction graphs is not connected");
  return w;
}

/// Every edge twice; every junction a cycle through its incident edges (a
/// doubled link at degree-2 vertices).
inline JunctionAssignment naive_double_assignment(const Instance& inst) {
  JunctionAssignment ja;
  for (int v = 0; v < inst.vertex_count(); ++v) {
    JunctionGraph j = empty_junction(inst, v);
    const auto inc = inst.incident(v);
    const int d = inst.degree(v);
    if (d == 2) {
      j.add_link(inc[0], inc[1]);
      j.add_link(inc[0], inc[1]);
    } else {
      for (int i = 0; i < d; ++i) j.add_link(inc[i], inc[(i + 1) % d]);
    }
    ja.junctions.push_back(std::move(j));
  }
  return ja;
}

inline Threading naive_double_threading(const Instance& inst) { return assemble(inst, naive_double_assignment(inst)); }

enum class CycleMode {
  DisjointComplement,  // cycle edges once, all other edges twice; max degree 3
  EdgeCover,           // cycles jointly cover every edge; junctions are their turns
};

namespace detail {

inline void check_cycle_shape(const Instance& inst, const Walk& c, std::size_t index) {
  const std::string which = "cycle " + std::to_string(index);
  if (!is_closed(inst, c)) throw PreconditionError(which + " is not closed");
  for (std::size_t i = 0; i < c.size(); ++i)
    if (c.steps[i].edge == c.steps[(i + 1) % c.size()].edge)
      throw PreconditionError(which + " has a u-turn at step " + std::to_string(i));
}

}  // namespace detail

inline Threading threading_from_cycles(const Instance& inst, const CycleSet& cycles, CycleMode mode) {
  const int n = inst.vertex_count();
  JunctionAssignment ja;
  for (int v = 0; v < n; ++v) ja.junctions.push_back(empty_junction(inst, v));

  if (mode == CycleMode::DisjointComplement) {
    if (inst.max_degree() > 3) throw PreconditionError("disjoint-complement mode needs maximum degree 3");
    // For vertices on a cycle: the two cycle edges through it.
    std::vector<std::pair<int, int>> through(static_cast<std::size_t>(n), {-1, -1});
    for (std::size_t ci = 0; ci < cycles.size(); ++ci) {
      const Walk& c = cycles[ci];
      detail::check_cycle_shape(inst, c, ci);
      for (std::size_t i = 0; i < c.size(); ++i) {
        const int v = c.steps[i].to;
        if (through[v].first >= 0)
          throw PreconditionError("cycles are not vertex-disjoint and simple at vertex " +
                                  std::to_string(inst.vertex_id(v)));
        through[v] = {c.steps[i].edge, c.steps[(i + 1) % c.size()].edge};
      }
    }
    for (int v = 0; v < n; ++v) {
      JunctionGraph& j = ja.junctions[v];
      const auto inc = inst.incident(v);
      const auto [a, b] = through[v];
      if (a >= 0) {
        if (inst.degree(v) == 2) {
          j.add_link(a, b);
        } else {
          const int c = inc[0] != a && inc[0] != b ? inc[0] : (inc[1] != a && inc[1] != b ? inc[1] : inc[2]);
          j.add_link(a, c);
          j.add_link(c, b);
        }
      } else if (inst.degree(v) == 2) {
        j.add_link(inc[0], inc[1]);
        j.add_link(inc[0], inc[1]);
      } else {
        j.add_link(inc[0], inc[1]);
        j.add_link(inc[1], inc[2]);
        j.add_link(inc[0], inc[2]);
      }
    }
    Threading w = assemble(inst, ja);
    const auto t = multiplicities(inst, w);
    std::vector<char> on(static_cast<std::size_t>(inst.edge_count()), 0);
    for (const Walk& c : cycles)
      for (const Step& s : c.steps) on[s.edge] = 1;
    for (int e = 0; e < inst.edge_count(); ++e)
      if (t[e] != (on[e] ? 1 : 2)) throw Error("disjoint-complement multiplicity mismatch");
    return w;
  }

  std::vector<char> covered(static_cast<std::size_t>(inst.edge_count()), 0);
  for (std::size_t ci = 0; ci < cycles.size(); ++ci) {
    const Walk& c = cycles[ci];
    detail::check_cycle_shape(inst, c, ci);
    for (std::size_t i = 0; i < c.size(); ++i) {
      covered[c.steps[i].edge] = 1;
      ja.junctions[c.steps[i].to].add_link(c.steps[i].edge, c.steps[(i + 1) % c.size()].edge);
    }
  }
  for (int e = 0; e < inst.edge_count(); ++e)
    if (!covered[e]) throw PreconditionError("edge " + std::to_string(inst.edge_id(e)) + " is not covered by any cycle");
  return assemble(inst, ja);
}

}  // namespace threadlab
