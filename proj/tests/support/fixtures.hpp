#pragma once

#include <utility>
#include <vector>

#include "threadlab/core.hpp"
#include "threadlab/reductions.hpp"

namespace threadlab::testing {

/// Cycle on n vertices 0..n-1, edge i joins i and i+1.
inline Instance cycle_graph(int n, Cost cost = 1) {
  InstanceBuilder b;
  b.add_vertices(n);
  for (int i = 0; i < n; ++i) b.add_edge(i, (i + 1) % n);
  b.set_default_cost(cost);
  return b.build();
}

/// K4; edges 0:01 1:02 2:03 3:12 4:13 5:23.
inline Instance k4(Cost cost = 1) {
  InstanceBuilder b;
  b.add_vertices(4);
  for (int u = 0; u < 4; ++u)
    for (int v = u + 1; v < 4; ++v) b.add_edge(u, v);
  b.set_default_cost(cost);
  return b.build();
}

/// K4 without edge 01: vertices 0 and 1 have degree 2, 2 and 3 degree 3.
inline Instance k4_minus_edge(Cost cost = 1) {
  InstanceBuilder b;
  b.add_vertices(4);
  b.add_edge(0, 2);
  b.add_edge(0, 3);
  b.add_edge(1, 2);
  b.add_edge(1, 3);
  b.add_edge(2, 3);
  b.set_default_cost(cost);
  return b.build();
}

/// Two hubs 0 and 1 joined by three paths 0-(2+i)-1.
inline Instance theta_graph(Cost cost = 1) {
  InstanceBuilder b;
  b.add_vertices(5);
  for (int i = 0; i < 3; ++i) {
    b.add_edge(0, 2 + i);
    b.add_edge(2 + i, 1);
  }
  b.set_default_cost(cost);
  return b.build();
}

/// Two triangles sharing vertex 0: edges 0:01 1:12 2:20 3:03 4:34 5:40.
inline Instance bowtie(Cost cost = 1) {
  InstanceBuilder b;
  b.add_vertices(5);
  b.add_edge(0, 1);
  b.add_edge(1, 2);
  b.add_edge(2, 0);
  b.add_edge(0, 3);
  b.add_edge(3, 4);
  b.add_edge(4, 0);
  b.set_default_cost(cost);
  return b.build();
}

inline HcGraph hc_graph(int n, const std::vector<std::pair<VertexId, VertexId>>& edges) {
  HcGraph g;
  for (int i = 0; i < n; ++i) g.vertices.push_back(i);
  g.edges = edges;
  return g;
}

inline HcGraph hc_cycle(int n) {
  std::vector<std::pair<VertexId, VertexId>> e;
  for (int i = 0; i < n; ++i) e.emplace_back(i, (i + 1) % n);
  return hc_graph(n, e);
}

inline HcGraph hc_complete(int n) {
  std::vector<std::pair<VertexId, VertexId>> e;
  for (int u = 0; u < n; ++u)
    for (int v = u + 1; v < n; ++v) e.emplace_back(u, v);
  return hc_graph(n, e);
}

/// Outer 5-cycle 0..4, inner pentagram 5..9, spokes i-(i+5). Not Hamiltonian.
inline HcGraph hc_petersen() {
  std::vector<std::pair<VertexId, VertexId>> e;
  for (int i = 0; i < 5; ++i) {
    e.emplace_back(i, (i + 1) % 5);
    e.emplace_back(5 + i, 5 + (i + 2) % 5);
    e.emplace_back(i, 5 + i);
  }
  return hc_graph(10, e);
}

/// Two triangles sharing vertex 2.
inline HcGraph hc_bowtie() { return hc_graph(5, {{0, 1}, {1, 2}, {2, 0}, {2, 3}, {3, 4}, {4, 2}}); }

/// K_{2,3}: parts {0,1} and {2,3,4}.
inline HcGraph hc_k23() { return hc_graph(5, {{0, 2}, {0, 3}, {0, 4}, {1, 2}, {1, 3}, {1, 4}}); }

/// Formula with w, x, y, z as variables 1..4.
inline Formula1in3 example_formula() {
  Formula1in3 f;
  f.variables = 4;
  f.clauses = {{1, 2, -3}, {-1, 2, -4}, {2, 3, 4}};
  return f;
}

}  // namespace threadlab::testing
