#pragma once

// Graph, turn-cost and walk model for turn-cost threading.
//
// Vertices and edges carry external integer ids (what files and users see) and
// dense indices 0..n-1 / 0..m-1 (what every algorithm works with). All walks,
// junction graphs and assignments below use dense indices.

#include <algorithm>
#include <cstdint>
#include <limits>
#include <map>
#include <numeric>
#include <optional>
#include <span>
#include <stdexcept>
#include <string>
#include <unordered_map>
#include <utility>
#include <vector>

namespace threadlab {

using VertexId = std::int64_t;
using EdgeId = std::int64_t;
using Cost = std::int64_t;

inline constexpr Cost kInfiniteCost = std::numeric_limits<Cost>::max() / 4;

class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

enum class InstanceErrorKind {
  Parse,
  SelfLoop,
  DegreeBelowTwo,
  Disconnected,
  NegativeCost,
  TurnNotCoincident,
  UnknownReference,
  Duplicate,
  Empty,
};

class InstanceError : public Error {
 public:
  InstanceError(InstanceErrorKind kind, const std::string& what) : Error(what), kind_(kind) {}
  InstanceErrorKind kind() const { return kind_; }

 private:
  InstanceErrorKind kind_;
};

/// Raised when a walk cannot be evaluated (broken chain, U-turn in cost evaluation).
class WalkError : public Error {
 public:
  using Error::Error;
};

/// Raised when an operation's documented precondition does not hold.
class PreconditionError : public Error {
 public:
  using Error::Error;
};

namespace detail {

class DisjointSets {
 public:
  explicit DisjointSets(int n) : parent_(static_cast<std::size_t>(n)) {
    std::iota(parent_.begin(), parent_.end(), 0);
  }
  int find(int x) {
    while (parent_[x] != x) {
      parent_[x] = parent_[parent_[x]];
      x = parent_[x];
    }
    return x;
  }
  bool unite(int a, int b) {
    a = find(a);
    b = find(b);
    if (a == b) return false;
    parent_[b] = a;
    return true;
  }

 private:
  std::vector<int> parent_;
};

}  // namespace detail

struct EdgeSpec {
  EdgeId id;
  VertexId u;
  VertexId v;
};

struct TurnSpec {
  VertexId v;
  EdgeId e1;
  EdgeId e2;
  Cost cost;
};

/// An undirected multigraph (no self-loops) with a nonnegative turn cost on
/// every pair of distinct edges sharing a vertex. Immutable once built.
class Instance {
 public:
  struct Edge {
    EdgeId id;
    int u;
    int v;
  };

  /// Validates and builds. Throws InstanceError.
  static Instance build(std::vector<VertexId> vertices, std::vector<EdgeSpec> edges, Cost default_cost,
                        std::vector<TurnSpec> turns) {
    Instance inst;
    if (vertices.empty()) throw InstanceError(InstanceErrorKind::Empty, "instance has no vertices");
    if (default_cost < 0)
      throw InstanceError(InstanceErrorKind::NegativeCost, "default_cost must be nonnegative");
    inst.vertex_ids_ = std::move(vertices);
    for (std::size_t i = 0; i < inst.vertex_ids_.size(); ++i) {
      if (!inst.vertex_index_.emplace(inst.vertex_ids_[i], static_cast<int>(i)).second)
        throw InstanceError(InstanceErrorKind::Duplicate,
                            "duplicate vertex id " + std::to_string(inst.vertex_ids_[i]));
    }
    const int n = inst.vertex_count();
    inst.incident_.assign(static_cast<std::size_t>(n), {});
    for (const EdgeSpec& spec : edges) {
      auto iu = inst.vertex_index_.find(spec.u);
      auto iv = inst.vertex_index_.find(spec.v);
      if (iu == inst.vertex_index_.end() || iv == inst.vertex_index_.end())
        throw InstanceError(InstanceErrorKind::UnknownReference,
                            "edge " + std::to_string(spec.id) + " references an unknown vertex");
      if (iu->second == iv->second)
        throw InstanceError(InstanceErrorKind::SelfLoop, "edge " + std::to_string(spec.id) + " is a self-loop");
      const int e = static_cast<int>(inst.edges_.size());
      if (!inst.edge_index_.emplace(spec.id, e).second)
        throw InstanceError(InstanceErrorKind::Duplicate, "duplicate edge id " + std::to_string(spec.id));
      inst.edges_.push_back({spec.id, iu->second, iv->second});
      inst.local_.push_back({static_cast<int>(inst.incident_[iu->second].size()),
                             static_cast<int>(inst.incident_[iv->second].size())});
      inst.incident_[iu->second].push_back(e);
      inst.incident_[iv->second].push_back(e);
    }
    for (int v = 0; v < n; ++v) {
      if (inst.degree(v) < 2)
        throw InstanceError(InstanceErrorKind::DegreeBelowTwo,
                            "vertex " + std::to_string(inst.vertex_ids_[v]) + " has degree < 2");
    }
    detail::DisjointSets comps(n);
    int components = n;
    for (const Edge& e : inst.edges_) components -= comps.unite(e.u, e.v) ? 1 : 0;
    if (components != 1) throw InstanceError(InstanceErrorKind::Disconnected, "graph is not connected");

    inst.default_cost_ = default_cost;
    inst.cost_offset_.resize(static_cast<std::size_t>(n) + 1, 0);
    for (int v = 0; v < n; ++v)
      inst.cost_offset_[v + 1] = inst.cost_offset_[v] + static_cast<std::size_t>(inst.degree(v) * inst.degree(v));
    inst.costs_.assign(inst.cost_offset_.back(), default_cost);

    std::vector<std::uint8_t> seen(inst.costs_.size(), 0);
    for (const TurnSpec& t : turns) {
      auto iv = inst.vertex_index_.find(t.v);
      auto ia = inst.edge_index_.find(t.e1);
      auto ib = inst.edge_index_.find(t.e2);
      if (iv == inst.vertex_index_.end() || ia == inst.edge_index_.end() || ib == inst.edge_index_.end())
        throw InstanceError(InstanceErrorKind::UnknownReference, "turn references an unknown vertex or edge");
      if (t.cost < 0) throw InstanceError(InstanceErrorKind::NegativeCost, "turn cost must be nonnegative");
      const int v = iv->second;
      const int a = ia->second;
      const int b = ib->second;
      if (a == b || !inst.is_incident(v, a) || !inst.is_incident(v, b))
        throw InstanceError(InstanceErrorKind::TurnNotCoincident,
                            "turn at vertex " + std::to_string(t.v) + " must name two distinct incident edges");
      const int i = inst.local_index(v, a);
      const int j = inst.local_index(v, b);
      const std::size_t k1 = inst.cost_offset_[v] + static_cast<std::size_t>(i * inst.degree(v) + j);
      const std::size_t k2 = inst.cost_offset_[v] + static_cast<std::size_t>(j * inst.degree(v) + i);
      if (seen[k1])
        throw InstanceError(InstanceErrorKind::Duplicate, "turn at vertex " + std::to_string(t.v) + " given twice");
      seen[k1] = seen[k2] = 1;
      inst.costs_[k1] = inst.costs_[k2] = t.cost;
    }
    inst.turns_ = std::move(turns);
    return inst;
  }

  int vertex_count() const { return static_cast<int>(vertex_ids_.size()); }
  int edge_count() const { return static_cast<int>(edges_.size()); }
  VertexId vertex_id(int v) const { return vertex_ids_[v]; }
  EdgeId edge_id(int e) const { return edges_[e].id; }
  const std::vector<VertexId>& vertex_ids() const { return vertex_ids_; }

  int vertex_index(VertexId id) const {
    auto it = vertex_index_.find(id);
    if (it == vertex_index_.end()) throw Error("unknown vertex id " + std::to_string(id));
    return it->second;
  }
  int edge_index(EdgeId id) const {
    auto it = edge_index_.find(id);
    if (it == edge_index_.end()) throw Error("unknown edge id " + std::to_string(id));
    return it->second;
  }
  bool has_vertex(VertexId id) const { return vertex_index_.count(id) != 0; }
  bool has_edge(EdgeId id) const { return edge_index_.count(id) != 0; }

  const Edge& edge(int e) const { return edges_[e]; }
  const std::vector<Edge>& edges() const { return edges_; }
  int other_end(int e, int v) const { return edges_[e].u == v ? edges_[e].v : edges_[e].u; }
  bool is_incident(int v, int e) const { return edges_[e].u == v || edges_[e].v == v; }

  std::span<const int> incident(int v) const { return incident_[v]; }
  int degree(int v) const { return static_cast<int>(incident_[v].size()); }
  int max_degree() const {
    int d = 0;
    for (int v = 0; v < vertex_count(); ++v) d = std::max(d, degree(v));
    return d;
  }

  /// Position of edge `e` within incident(v).
  int local_index(int v, int e) const {
    const Edge& ed = edges_[e];
    if (ed.u == v) return local_[e].first;
    if (ed.v == v) return local_[e].second;
    throw Error("edge is not incident to vertex");
  }

  Cost local_cost(int v, int i, int j) const {
    return costs_[cost_offset_[v] + static_cast<std::size_t>(i * degree(v) + j)];
  }
  /// Cost of the turn between incident edges e1 != e2 at v.
  Cost turn_cost(int v, int e1, int e2) const { return local_cost(v, local_index(v, e1), local_index(v, e2)); }

  Cost default_cost() const { return default_cost_; }
  const std::vector<TurnSpec>& explicit_turns() const { return turns_; }

  /// |T(G)|: number of turns, sum over vertices of C(d(v), 2).
  std::int64_t turn_count() const {
    std::int64_t total = 0;
    for (int v = 0; v < vertex_count(); ++v) total += static_cast<std::int64_t>(degree(v)) * (degree(v) - 1) / 2;
    return total;
  }

  /// Sum of all turn costs of the graph.
  Cost total_turn_cost() const {
    Cost total = 0;
    for (int v = 0; v < vertex_count(); ++v)
      for (int i = 0; i < degree(v); ++i)
        for (int j = i + 1; j < degree(v); ++j) total += local_cost(v, i, j);
    return total;
  }

 private:
  Instance() = default;

  std::vector<VertexId> vertex_ids_;
  std::unordered_map<VertexId, int> vertex_index_;
  std::vector<Edge> edges_;
  std::unordered_map<EdgeId, int> edge_index_;
  std::vector<std::pair<int, int>> local_;
  std::vector<std::vector<int>> incident_;
  std::vector<std::size_t> cost_offset_;
  std::vector<Cost> costs_;
  Cost default_cost_ = 0;
  std::vector<TurnSpec> turns_;
};

/// Incremental construction with sequential ids; used by generators.
class InstanceBuilder {
 public:
  VertexId add_vertex() {
    vertices_.push_back(static_cast<VertexId>(vertices_.size()));
    return vertices_.back();
  }
  void add_vertices(int count) {
    for (int i = 0; i < count; ++i) add_vertex();
  }
  EdgeId add_edge(VertexId u, VertexId v) {
    const EdgeId id = static_cast<EdgeId>(edges_.size());
    edges_.push_back({id, u, v});
    return id;
  }
  void set_turn(VertexId v, EdgeId e1, EdgeId e2, Cost cost) { turns_.push_back({v, e1, e2, cost}); }
  void set_default_cost(Cost c) { default_cost_ = c; }
  int vertex_count() const { return static_cast<int>(vertices_.size()); }
  int edge_count() const { return static_cast<int>(edges_.size()); }

  Instance build() const { return Instance::build(vertices_, edges_, default_cost_, turns_); }

 private:
  std::vector<VertexId> vertices_;
  std::vector<EdgeSpec> edges_;
  std::vector<TurnSpec> turns_;
  Cost default_cost_ = 1;
};

/// One directed traversal of an edge.
struct Step {
  int edge;
  int from;
  int to;
  friend bool operator==(const Step&, const Step&) = default;
};

/// A cyclic sequence of directed edge traversals. A threading is a walk that
/// passes verify_threading.
struct Walk {
  std::vector<Step> steps;
  std::size_t size() const { return steps.size(); }
  bool empty() const { return steps.empty(); }
  friend bool operator==(const Walk&, const Walk&) = default;
};

using Threading = Walk;
using CycleSet = std::vector<Walk>;

/// Builds a closed walk from a start vertex and a sequence of edges.
inline Walk walk_from_edges(const Instance& inst, int start, std::span<const int> edge_sequence) {
  Walk w;
  int at = start;
  for (int e : edge_sequence) {
    if (!inst.is_incident(at, e)) throw WalkError("edge sequence does not chain");
    const int next = inst.other_end(e, at);
    w.steps.push_back({e, at, next});
    at = next;
  }
  return w;
}

/// Builds a closed walk through the cyclic vertex sequence, taking the
/// lowest-index edge between consecutive vertices.
inline Walk walk_through_vertices(const Instance& inst, std::span<const int> cycle) {
  Walk w;
  const std::size_t k = cycle.size();
  for (std::size_t i = 0; i < k; ++i) {
    const int a = cycle[i];
    const int b = cycle[(i + 1) % k];
    int found = -1;
    for (int e : inst.incident(a))
      if (inst.other_end(e, a) == b && (found < 0 || e < found)) found = e;
    if (found < 0) throw WalkError("consecutive vertices are not adjacent");
    w.steps.push_back({found, a, b});
  }
  return w;
}

inline Walk reversed(const Walk& w) {
  Walk r;
  r.steps.reserve(w.size());
  for (auto it = w.steps.rbegin(); it != w.steps.rend(); ++it) r.steps.push_back({it->edge, it->to, it->from});
  return r;
}

inline Walk rotated(const Walk& w, std::size_t by) {
  Walk r = w;
  if (!r.empty()) std::rotate(r.steps.begin(), r.steps.begin() + static_cast<std::ptrdiff_t>(by % r.size()), r.steps.end());
  return r;
}

/// Whether every step is a real traversal and consecutive steps chain cyclically.
inline bool is_closed(const Instance& inst, const Walk& w) {
  if (w.empty()) return false;
  for (std::size_t i = 0; i < w.size(); ++i) {
    const Step& s = w.steps[i];
    if (s.edge < 0 || s.edge >= inst.edge_count()) return false;
    const auto& e = inst.edge(s.edge);
    if (!((e.u == s.from && e.v == s.to) || (e.v == s.from && e.u == s.to))) return false;
    if (s.to != w.steps[(i + 1) % w.size()].from) return false;
  }
  return true;
}

/// Traversal count t(e) for every edge.
inline std::vector<int> multiplicities(const Instance& inst, const Walk& w) {
  std::vector<int> t(static_cast<std::size_t>(inst.edge_count()), 0);
  for (const Step& s : w.steps) ++t[s.edge];
  return t;
}

/// Multigraph on the edges incident to one vertex: one link per pass of a walk
/// through the vertex. Links are stored as (min, max) dense edge indices.
struct JunctionGraph {
  int vertex = -1;
  std::vector<int> nodes;
  std::vector<std::pair<int, int>> links;

  void add_link(int a, int b) { links.emplace_back(std::min(a, b), std::max(a, b)); }

  int degree_of(int e) const {
    int d = 0;
    for (auto [a, b] : links) d += (a == e) + (b == e);
    return d;
  }

  /// Connected over all nodes (an isolated node makes it disconnected).
  bool connected() const {
    if (nodes.empty()) return true;
    std::map<int, int> pos;
    for (std::size_t i = 0; i < nodes.size(); ++i) pos[nodes[i]] = static_cast<int>(i);
    detail::DisjointSets ds(static_cast<int>(nodes.size()));
    int comps = static_cast<int>(nodes.size());
    for (auto [a, b] : links) comps -= ds.unite(pos.at(a), pos.at(b)) ? 1 : 0;
    return comps == 1;
  }

  bool is_tree() const { return links.size() + 1 == nodes.size() && connected(); }

  Cost cost(const Instance& inst) const {
    Cost c = 0;
    for (auto [a, b] : links) c += inst.turn_cost(vertex, a, b);
    return c;
  }

  /// Links as a sorted multiset, for comparisons.
  std::vector<std::pair<int, int>> sorted_links() const {
    auto l = links;
    std::sort(l.begin(), l.end());
    return l;
  }
};

inline JunctionGraph empty_junction(const Instance& inst, int v) {
  JunctionGraph j;
  j.vertex = v;
  j.nodes.assign(inst.incident(v).begin(), inst.incident(v).end());
  return j;
}

/// Junction graph of every vertex (indexed by dense vertex) induced by a
/// closed walk. U-turn pairs are recorded as self-links; verification reports them.
inline std::vector<JunctionGraph> junction_graphs(const Instance& inst, const Walk& w) {
  if (!is_closed(inst, w)) throw WalkError("walk is not closed");
  std::vector<JunctionGraph> out;
  out.reserve(static_cast<std::size_t>(inst.vertex_count()));
  for (int v = 0; v < inst.vertex_count(); ++v) out.push_back(empty_junction(inst, v));
  for (std::size_t i = 0; i < w.size(); ++i) {
    const Step& s = w.steps[i];
    const Step& next = w.steps[(i + 1) % w.size()];
    out[s.to].add_link(s.edge, next.edge);
  }
  return out;
}

struct Violation {
  enum class Kind { NotClosed, UTurn, Uncovered, JunctionDisconnected, InconsistentMultiplicity };
  Kind kind;
  int index;  // step index, dense edge or dense vertex depending on kind

  std::string describe(const Instance& inst) const {
    switch (kind) {
      case Kind::NotClosed:
        return "not-closed at step " + std::to_string(index);
      case Kind::UTurn:
        return "u-turn at step " + std::to_string(index);
      case Kind::Uncovered:
        return "edge " + std::to_string(inst.edge_id(index)) + " uncovered";
      case Kind::JunctionDisconnected:
        return "junction at vertex " + std::to_string(inst.vertex_id(index)) + " disconnected";
      case Kind::InconsistentMultiplicity:
        return "inconsistent multiplicity at edge " + std::to_string(inst.edge_id(index));
    }
    return "unknown";
  }
};

struct ViolationReport {
  std::vector<Violation> violations;
  bool ok() const { return violations.empty(); }
  std::size_t count(Violation::Kind k) const {
    return static_cast<std::size_t>(
        std::count_if(violations.begin(), violations.end(), [k](const Violation& v) { return v.kind == k; }));
  }
};

/// Empty report iff `w` is closed, U-turn free, covers every edge and induces
/// a connected junction graph at every vertex.
inline ViolationReport verify_threading(const Instance& inst, const Walk& w) {
  ViolationReport report;
  using K = Violation::Kind;
  const std::size_t len = w.size();
  bool closed = len > 0;
  if (len == 0) report.violations.push_back({K::NotClosed, 0});
  for (std::size_t i = 0; i < len; ++i) {
    const Step& s = w.steps[i];
    bool good = s.edge >= 0 && s.edge < inst.edge_count();
    if (good) {
      const auto& e = inst.edge(s.edge);
      good = (e.u == s.from && e.v == s.to) || (e.v == s.from && e.u == s.to);
    }
    if (!good || s.to != w.steps[(i + 1) % len].from) {
      report.violations.push_back({K::NotClosed, static_cast<int>(i)});
      closed = false;
    }
  }
  for (std::size_t i = 0; i < len; ++i) {
    if (w.steps[i].edge == w.steps[(i + 1) % len].edge) report.violations.push_back({K::UTurn, static_cast<int>(i)});
  }
  std::vector<int> t(static_cast<std::size_t>(inst.edge_count()), 0);
  for (const Step& s : w.steps)
    if (s.edge >= 0 && s.edge < inst.edge_count()) ++t[s.edge];
  for (int e = 0; e < inst.edge_count(); ++e)
    if (t[e] == 0) report.violations.push_back({K::Uncovered, e});
  if (!closed) return report;

  const auto junctions = junction_graphs(inst, w);
  for (int e = 0; e < inst.edge_count(); ++e) {
    const auto& ed = inst.edge(e);
    if (junctions[ed.u].degree_of(e) != t[e] || junctions[ed.v].degree_of(e) != t[e])
      report.violations.push_back({K::InconsistentMultiplicity, e});
  }
  for (int v = 0; v < inst.vertex_count(); ++v)
    if (!junctions[v].connected()) report.violations.push_back({K::JunctionDisconnected, v});
  return report;
}

/// Sum of turn costs over all cyclically consecutive step pairs.
inline Cost turn_cost(const Instance& inst, const Walk& w) {
  if (!is_closed(inst, w)) throw WalkError("walk is not closed");
  Cost total = 0;
  for (std::size_t i = 0; i < w.size(); ++i) {
    const Step& s = w.steps[i];
    const Step& next = w.steps[(i + 1) % w.size()];
    if (s.edge == next.edge) throw WalkError("u-turn at step " + std::to_string(i));
    total += inst.turn_cost(s.to, s.edge, next.edge);
  }
  return total;
}

/// Weight of a minimum spanning tree of the complete turn-weighted graph on the
/// edges incident to v.
inline Cost junction_mst_weight(const Instance& inst, int v) {
  const int d = inst.degree(v);
  std::vector<Cost> best(static_cast<std::size_t>(d), kInfiniteCost);
  std::vector<bool> in(static_cast<std::size_t>(d), false);
  best[0] = 0;
  Cost total = 0;
  for (int round = 0; round < d; ++round) {
    int pick = -1;
    for (int i = 0; i < d; ++i)
      if (!in[i] && (pick < 0 || best[i] < best[pick])) pick = i;
    in[pick] = true;
    total += best[pick];
    for (int i = 0; i < d; ++i)
      if (!in[i]) best[i] = std::min(best[i], inst.local_cost(v, pick, i));
  }
  return total;
}

/// Lower bound on the cost of any threading: every junction contains a spanning tree.
inline Cost perfect_lower_bound(const Instance& inst) {
  Cost total = 0;
  for (int v = 0; v < inst.vertex_count(); ++v) total += junction_mst_weight(inst, v);
  return total;
}

/// All minimum spanning trees of the junction at v, up to `limit` of them.
inline std::vector<JunctionGraph> junction_mst(const Instance& inst, int v, std::size_t limit = 4096) {
  const int d = inst.degree(v);
  const Cost target = junction_mst_weight(inst, v);
  struct Pair {
    int i, j;
    Cost w;
  };
  std::vector<Pair> pairs;
  for (int i = 0; i < d; ++i)
    for (int j = i + 1; j < d; ++j) pairs.push_back({i, j, inst.local_cost(v, i, j)});
  std::stable_sort(pairs.begin(), pairs.end(), [](const Pair& a, const Pair& b) { return a.w < b.w; });

  std::vector<JunctionGraph> out;
  std::vector<int> chosen;
  const auto nodes = inst.incident(v);

  // Include/exclude search in weight order; remaining picks cost at least the
  // current pair weight, which bounds the branch.
  auto recurse = [&](auto&& self, std::size_t k, Cost weight, std::vector<int> comp) -> void {
    if (out.size() >= limit) return;
    const int need = d - 1 - static_cast<int>(chosen.size());
    if (need == 0) {
      if (weight == target) {
        JunctionGraph j;
        j.vertex = v;
        j.nodes.assign(nodes.begin(), nodes.end());
        for (int idx : chosen) j.add_link(nodes[pairs[idx].i], nodes[pairs[idx].j]);
        out.push_back(std::move(j));
      }
      return;
    }
    if (k >= pairs.size() || static_cast<int>(pairs.size() - k) < need) return;
    if (weight + need * pairs[k].w > target) return;
    const Pair& p = pairs[k];
    if (comp[p.i] != comp[p.j]) {
      std::vector<int> merged = comp;
      const int from = comp[p.j];
      for (int& c : merged)
        if (c == from) c = comp[p.i];
      chosen.push_back(static_cast<int>(k));
      self(self, k + 1, weight + p.w, std::move(merged));
      chosen.pop_back();
    }
    self(self, k + 1, weight, std::move(comp));
  };
  std::vector<int> comp(static_cast<std::size_t>(d));
  std::iota(comp.begin(), comp.end(), 0);
  recurse(recurse, 0, 0, comp);
  return out;
}

/// Removes closed sub-walks while the result stays a valid threading of no
/// greater cost. Shortest removable segment first; repeats until none is left.
inline Threading compress_threading(const Instance& inst, const Threading& walk) {
  if (!verify_threading(inst, walk).ok()) throw PreconditionError("compress_threading: input is not a valid threading");
  Threading current = walk;
  Cost current_cost = turn_cost(inst, current);
  bool changed = true;
  while (changed) {
    changed = false;
    const std::size_t len = current.size();
    for (std::size_t seg = 2; seg + 2 <= len && !changed; ++seg) {
      for (std::size_t start = 0; start < len && !changed; ++start) {
        // Segment covers steps start .. start+seg-1 (cyclically) and must be closed.
        const Step& first = current.steps[start];
        const Step& last = current.steps[(start + seg - 1) % len];
        if (first.from != last.to) continue;
        Threading candidate;
        candidate.steps.reserve(len - seg);
        for (std::size_t k = seg; k < len; ++k) candidate.steps.push_back(current.steps[(start + k) % len]);
        if (!verify_threading(inst, candidate).ok()) continue;
        const Cost c = turn_cost(inst, candidate);
        if (c > current_cost) continue;
        current = std::move(candidate);
        current_cost = c;
        changed = true;
      }
    }
  }
  return current;
}

}  // namespace threadlab
