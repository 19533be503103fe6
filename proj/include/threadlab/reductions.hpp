#pragma once

// Hardness constructions as instance generators, with certificate maps.
//
// Hamiltonian cycle: a center c with one arm per vertex of g. An arm is a
// triangle b-p-q hanging from c by the bridge c-b. Turns between two bridges
// at c cost 0 when the vertices are adjacent in g and 1 otherwise; every other
// turn costs 1. Threadings of cost 4n correspond to Hamiltonian cycles.
//
// 1-in-3 SAT: perfect threadings with a minimum spanning tree at every junction
// correspond to satisfying assignments. Gadgets, with t = traversal count:
//   variable  degree 3 on {top, x, !x}; turns top-x = top-!x = 2, x-!x = 1.
//             Its MSTs are the paths centered at x or at !x, so exactly one
//             literal edge is doubled (t = 2 means true).
//   clause    degree 3, unit turns: exactly one of its literal edges doubled.
//   split     X(a, b, e, f), Y(f, c, g), Z(e, d, h), W(g, h). At X:
//             a-e = b-f = 1, a-b = e-f = 2, a-f = b-e = 3, so the MSTs are
//             the paths a-e-f-b and e-a-b-f: t(a) = t(b) = 3 - t(e) = 3 - t(f).
//             W forces t(g) = t(h) = 1, so Y and Z give t(c) = t(d) = 3 - t(f) = t(a).
//             Input a, outputs b, c, d.
//   demux     joins a dangling literal end to its mirror twin without a
//             parallel edge: s(in, bridge, left), s'(bridge, right, out),
//             t(left, right), unit turns; forces t(in) = t(out).
// The whole variable/split/clause layer is built twice ("mirror." labels);
// the copies share the variable top edges and every literal end left over
// after the clauses is joined to its twin through a demux.

#include <algorithm>
#include <array>
#include <cctype>
#include <deque>
#include <functional>
#include <map>
#include <optional>
#include <set>
#include <sstream>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include <nlohmann/json.hpp>

#include "threadlab/assembly.hpp"
#include "threadlab/core.hpp"

namespace threadlab {

/// Role name -> edge id of the generated instance.
using GadgetLabels = std::map<std::string, EdgeId>;

// ---------------------------------------------------------------------------
// Hamiltonian cycle

struct HcGraph {
  std::vector<VertexId> vertices;
  std::vector<std::pair<VertexId, VertexId>> edges;

  void validate() const {
    if (vertices.size() < 3) throw InstanceError(InstanceErrorKind::Empty, "hc graph needs at least 3 vertices");
    std::set<VertexId> vs(vertices.begin(), vertices.end());
    if (vs.size() != vertices.size()) throw InstanceError(InstanceErrorKind::Duplicate, "hc graph has a duplicate vertex");
    std::set<std::pair<VertexId, VertexId>> seen;
    for (auto [u, v] : edges) {
      if (!vs.count(u) || !vs.count(v)) throw InstanceError(InstanceErrorKind::UnknownReference, "hc edge uses an unknown vertex");
      if (u == v) throw InstanceError(InstanceErrorKind::SelfLoop, "hc graph has a self-loop");
      if (!seen.insert({std::min(u, v), std::max(u, v)}).second)
        throw InstanceError(InstanceErrorKind::Duplicate, "hc graph has a parallel edge");
    }
  }

  bool adjacent(VertexId a, VertexId b) const {
    for (auto [u, v] : edges)
      if ((u == a && v == b) || (u == b && v == a)) return true;
    return false;
  }
};

/// Edge-list text ("u v" per line, '#' comments) or JSON
/// {"vertices":[...],"edges":[[u,v],...]}. Text vertices are sorted ascending.
inline HcGraph parse_hc_graph(std::string_view text) {
  HcGraph g;
  const auto first = text.find_first_not_of(" \t\r\n");
  if (first != std::string_view::npos && text[first] == '{') {
    nlohmann::json doc;
    try {
      doc = nlohmann::json::parse(text);
      for (const auto& v : doc.at("vertices")) g.vertices.push_back(v.get<VertexId>());
      for (const auto& e : doc.at("edges")) {
        if (!e.is_array() || e.size() != 2) throw InstanceError(InstanceErrorKind::Parse, "hc edge must be [u, v]");
        g.edges.emplace_back(e[0].get<VertexId>(), e[1].get<VertexId>());
      }
    } catch (const nlohmann::json::exception& ex) {
      throw InstanceError(InstanceErrorKind::Parse, ex.what());
    }
    for (const auto& [key, _] : doc.items())
      if (key != "vertices" && key != "edges") throw InstanceError(InstanceErrorKind::Parse, "unknown field '" + key + "'");
  } else {
    std::set<VertexId> vs;
    std::istringstream in{std::string(text)};
    std::string line;
    while (std::getline(in, line)) {
      const auto hash = line.find('#');
      if (hash != std::string::npos) line.erase(hash);
      std::istringstream ls(line);
      VertexId u, v;
      if (!(ls >> u)) continue;
      if (!(ls >> v)) throw InstanceError(InstanceErrorKind::Parse, "hc edge line needs two vertex ids: " + line);
      std::string rest;
      if (ls >> rest) throw InstanceError(InstanceErrorKind::Parse, "trailing text on hc edge line: " + line);
      g.edges.emplace_back(u, v);
      vs.insert(u);
      vs.insert(v);
    }
    g.vertices.assign(vs.begin(), vs.end());
  }
  g.validate();
  return g;
}

struct HcReduction {
  Instance instance;
  Cost budget;
  GadgetLabels labels;  // "arm<id>.bridge", "arm<id>.bp", "arm<id>.pq", "arm<id>.qb"
};

namespace detail {

inline std::string arm(VertexId id, const char* part) { return "arm" + std::to_string(id) + "." + part; }

}  // namespace detail

inline HcReduction hc_to_threading(const HcGraph& g) {
  g.validate();
  const int n = static_cast<int>(g.vertices.size());
  InstanceBuilder b;
  const VertexId c = b.add_vertex();
  GadgetLabels labels;
  std::vector<EdgeId> bridge(static_cast<std::size_t>(n));
  for (int i = 0; i < n; ++i) {
    const VertexId vb = b.add_vertex();
    const VertexId vp = b.add_vertex();
    const VertexId vq = b.add_vertex();
    bridge[i] = b.add_edge(c, vb);
    const VertexId id = g.vertices[i];
    labels[detail::arm(id, "bridge")] = bridge[i];
    labels[detail::arm(id, "bp")] = b.add_edge(vb, vp);
    labels[detail::arm(id, "pq")] = b.add_edge(vp, vq);
    labels[detail::arm(id, "qb")] = b.add_edge(vq, vb);
  }
  for (int i = 0; i < n; ++i)
    for (int j = i + 1; j < n; ++j)
      if (g.adjacent(g.vertices[i], g.vertices[j])) b.set_turn(c, bridge[i], bridge[j], 0);
  b.set_default_cost(1);
  return HcReduction{b.build(), 4 * static_cast<Cost>(n), std::move(labels)};
}

/// Threads the arms in cycle order: c, b, p, q, b, c for each arm. Cost 4n.
inline Threading hc_solution_to_threading(const HcGraph& g, const HcReduction& red, const std::vector<VertexId>& cycle) {
  std::vector<VertexId> sorted = cycle;
  std::sort(sorted.begin(), sorted.end());
  std::vector<VertexId> all = g.vertices;
  std::sort(all.begin(), all.end());
  if (sorted != all) throw PreconditionError("hc_solution_to_threading: cycle must visit every vertex once");
  for (std::size_t i = 0; i < cycle.size(); ++i)
    if (!g.adjacent(cycle[i], cycle[(i + 1) % cycle.size()]))
      throw PreconditionError("hc_solution_to_threading: consecutive cycle vertices are not adjacent");
  const Instance& inst = red.instance;
  const int center = 0;
  Walk w;
  for (VertexId id : cycle) {
    const int br = inst.edge_index(red.labels.at(detail::arm(id, "bridge")));
    const int bp = inst.edge_index(red.labels.at(detail::arm(id, "bp")));
    const int pq = inst.edge_index(red.labels.at(detail::arm(id, "pq")));
    const int qb = inst.edge_index(red.labels.at(detail::arm(id, "qb")));
    const int vb = inst.other_end(br, center);
    const int vp = inst.other_end(bp, vb);
    const int vq = inst.other_end(pq, vp);
    w.steps.push_back({br, center, vb});
    w.steps.push_back({bp, vb, vp});
    w.steps.push_back({pq, vp, vq});
    w.steps.push_back({qb, vq, vb});
    w.steps.push_back({br, vb, center});
  }
  return w;
}

/// The cycle read off the arm order of a cost-4n threading; none otherwise.
inline std::optional<std::vector<VertexId>> threading_to_hc(const HcGraph& g, const HcReduction& red, const Threading& t) {
  const Instance& inst = red.instance;
  if (!verify_threading(inst, t).ok()) return std::nullopt;
  if (turn_cost(inst, t) != red.budget) return std::nullopt;
  std::map<int, VertexId> arm_of_bridge;
  for (VertexId id : g.vertices) arm_of_bridge[inst.edge_index(red.labels.at(detail::arm(id, "bridge")))] = id;
  std::vector<VertexId> order;
  for (const Step& s : t.steps)
    if (s.from == 0) order.push_back(arm_of_bridge.at(s.edge));
  if (order.size() != g.vertices.size()) return std::nullopt;
  std::vector<VertexId> sorted = order;
  std::sort(sorted.begin(), sorted.end());
  std::vector<VertexId> all = g.vertices;
  std::sort(all.begin(), all.end());
  if (sorted != all) return std::nullopt;
  for (std::size_t i = 0; i < order.size(); ++i)
    if (!g.adjacent(order[i], order[(i + 1) % order.size()])) return std::nullopt;
  return order;
}

// ---------------------------------------------------------------------------
// 1-in-3 SAT

struct Formula1in3 {
  int variables = 0;
  std::vector<std::array<int, 3>> clauses;  // signed literals, variables 1..n

  void validate() const {
    if (variables < 1) throw InstanceError(InstanceErrorKind::Empty, "formula needs at least one variable");
    for (const auto& c : clauses)
      for (int lit : c)
        if (lit == 0 || std::abs(lit) > variables)
          throw InstanceError(InstanceErrorKind::UnknownReference, "literal " + std::to_string(lit) + " out of range");
  }
};

/// value[i - 1] is variable i.
using Assignment = std::vector<bool>;

inline bool literal_value(const Assignment& a, int lit) { return lit > 0 ? a[lit - 1] : !a[-lit - 1]; }

inline bool satisfies_1in3(const Formula1in3& f, const Assignment& a) {
  if (static_cast<int>(a.size()) != f.variables) return false;
  for (const auto& c : f.clauses) {
    int trues = 0;
    for (int lit : c) trues += literal_value(a, lit) ? 1 : 0;
    if (trues != 1) return false;
  }
  return true;
}

/// DIMACS-like text (one clause of three signed integers per line, optional
/// trailing 0, "c" comments, optional "p cnf <vars> <clauses>") or JSON
/// {"variables":n,"clauses":[[..],..]}.
inline Formula1in3 parse_formula(std::string_view text) {
  Formula1in3 f;
  const auto first = text.find_first_not_of(" \t\r\n");
  if (first != std::string_view::npos && text[first] == '{') {
    try {
      const auto doc = nlohmann::json::parse(text);
      for (const auto& [key, _] : doc.items())
        if (key != "variables" && key != "clauses") throw InstanceError(InstanceErrorKind::Parse, "unknown field '" + key + "'");
      f.variables = doc.at("variables").get<int>();
      for (const auto& c : doc.at("clauses")) {
        if (!c.is_array() || c.size() != 3) throw InstanceError(InstanceErrorKind::Parse, "clause must have 3 literals");
        f.clauses.push_back({c[0].get<int>(), c[1].get<int>(), c[2].get<int>()});
      }
    } catch (const nlohmann::json::exception& ex) {
      throw InstanceError(InstanceErrorKind::Parse, ex.what());
    }
  } else {
    int declared = -1;
    int highest = 0;
    std::istringstream in{std::string(text)};
    std::string line;
    while (std::getline(in, line)) {
      std::istringstream ls(line);
      std::string head;
      if (!(ls >> head) || head == "c" || head[0] == '#') continue;
      if (head == "p") {
        std::string kind;
        int clauses = 0;
        if (!(ls >> kind >> declared >> clauses)) throw InstanceError(InstanceErrorKind::Parse, "bad problem line: " + line);
        continue;
      }
      std::vector<int> lits;
      std::istringstream all(line);
      std::string tok;
      while (all >> tok) {
        try {
          std::size_t used = 0;
          const int lit = std::stoi(tok, &used);
          if (used != tok.size()) throw std::invalid_argument(tok);
          lits.push_back(lit);
        } catch (const std::exception&) {
          throw InstanceError(InstanceErrorKind::Parse, "bad literal '" + tok + "'");
        }
      }
      if (!lits.empty() && lits.back() == 0) lits.pop_back();
      if (lits.size() != 3) throw InstanceError(InstanceErrorKind::Parse, "clause must have 3 literals: " + line);
      for (int lit : lits) highest = std::max(highest, std::abs(lit));
      f.clauses.push_back({lits[0], lits[1], lits[2]});
    }
    f.variables = declared >= 0 ? declared : highest;
  }
  f.validate();
  return f;
}

enum class EdgeRoleKind {
  Literal,   // t = 1 + value(literal)
  Opposite,  // t = 2 - value(literal)
  Single,    // t = 1
  Link,      // t = 2, joins gadget groups of independent clause sets
};

struct EdgeRole {
  EdgeRoleKind kind = EdgeRoleKind::Single;
  int literal = 0;
};

struct SatReduction {
  Instance instance;
  GadgetLabels labels;
  std::vector<EdgeRole> roles;  // by dense edge index
};

namespace detail {

inline std::string lit_name(int lit) { return std::string("lit") + (lit > 0 ? "+" : "-") + std::to_string(std::abs(lit)); }

class SatBuilder {
 public:
  explicit SatBuilder(const Formula1in3& f) : f_(f) {}

  SatReduction build() {
    std::array<std::vector<int>, 2> leftovers;
    for (int copy = 0; copy < 2; ++copy) leftovers[copy] = build_copy(copy);
    for (int i = 1; i <= f_.variables; ++i) {
      top_[i - 1] = edge(var_[0][i - 1], var_[1][i - 1], {EdgeRoleKind::Single, 0});
      labels_["var" + std::to_string(i) + ".top"] = top_[i - 1];
    }
    std::map<int, int> demux_count;
    for (std::size_t k = 0; k < leftovers[0].size(); ++k) {
      const int lit = ends_[leftovers[0][k]].literal;
      const std::string base = lit_name(lit) + ".demux" + std::to_string(demux_count[lit]++);
      const VertexId s = builder_.add_vertex();
      const VertexId s2 = builder_.add_vertex();
      const VertexId t = builder_.add_vertex();
      connect(leftovers[0][k], s, base + ".in");
      labels_[base + ".bridge"] = edge(s, s2, {EdgeRoleKind::Opposite, lit});
      labels_[base + ".left"] = edge(s, t, {EdgeRoleKind::Single, 0});
      labels_[base + ".right"] = edge(s2, t, {EdgeRoleKind::Single, 0});
      connect(leftovers[1][k], s2, base + ".out");
    }
    // Turns, now that every end has its edge.
    for (int copy = 0; copy < 2; ++copy)
      for (int i = 1; i <= f_.variables; ++i) {
        const VertexId v = var_[copy][i - 1];
        const EdgeId top = top_[i - 1];
        const EdgeId pos = ends_[root_end_[copy][i - 1][0]].edge;
        const EdgeId neg = ends_[root_end_[copy][i - 1][1]].edge;
        builder_.set_turn(v, top, pos, 2);
        builder_.set_turn(v, top, neg, 2);
        builder_.set_turn(v, pos, neg, 1);
      }
    for (const Split& s : splits_) {
      const EdgeId a = ends_[s.a_end].edge;
      const EdgeId bb = ends_[s.b_end].edge;
      builder_.set_turn(s.x, a, s.e, 1);
      builder_.set_turn(s.x, bb, s.f, 1);
      builder_.set_turn(s.x, a, bb, 2);
      builder_.set_turn(s.x, s.e, s.f, 2);
      builder_.set_turn(s.x, a, s.f, 3);
      builder_.set_turn(s.x, bb, s.e, 3);
    }
    link_components();
    builder_.set_default_cost(1);
    SatReduction out{builder_.build(), std::move(labels_), {}};
    out.roles.resize(static_cast<std::size_t>(out.instance.edge_count()));
    for (std::size_t e = 0; e < roles_.size(); ++e) out.roles[out.instance.edge_index(static_cast<EdgeId>(e))] = roles_[e];
    return out;
  }

 private:
  struct End {
    VertexId owner;
    int literal;
    std::string label;
    EdgeId edge = -1;
  };
  struct Split {
    VertexId x;
    int a_end;
    int b_end;
    EdgeId e;
    EdgeId f;
  };

  EdgeId edge(VertexId u, VertexId v, EdgeRole role) {
    const EdgeId id = builder_.add_edge(u, v);
    roles_.push_back(role);
    ends_of_.push_back({u, v});
    return id;
  }

  // Variables sharing no clause give separate groups. Chain the groups with
  // link edges between degree-2 vertices d (edges x, y): turns link-x and
  // link-y cost 0 and x-y costs 1, so the only minimum junction at d is the
  // path x-link-y. That keeps t(x) = t(y) = 1, as before, and forces t = 2 on
  // the link.
  void link_components() {
    VertexId n = 0;
    for (auto [u, v] : ends_of_) n = std::max({n, u + 1, v + 1});
    std::vector<VertexId> parent(static_cast<std::size_t>(n));
    for (VertexId v = 0; v < n; ++v) parent[v] = v;
    std::function<VertexId(VertexId)> find = [&](VertexId v) { return parent[v] == v ? v : parent[v] = find(parent[v]); };
    std::vector<std::vector<EdgeId>> incident(static_cast<std::size_t>(n));
    for (std::size_t e = 0; e < ends_of_.size(); ++e) {
      auto [u, v] = ends_of_[e];
      parent[find(u)] = find(v);
      incident[u].push_back(static_cast<EdgeId>(e));
      incident[v].push_back(static_cast<EdgeId>(e));
    }
    std::map<VertexId, std::vector<VertexId>> groups;  // keyed by root, in vertex order of first member
    std::vector<VertexId> order;
    for (VertexId v = 0; v < n; ++v) {
      const VertexId r = find(v);
      if (!groups.count(r)) order.push_back(r);
      if (incident[v].size() == 2) groups[r].push_back(v);
      else groups[r];
    }
    if (order.size() < 2) return;
    int k = 0;
    for (std::size_t i = 0; i + 1 < order.size(); ++i) {
      const auto& from = groups[order[i]];
      const auto& to = groups[order[i + 1]];
      const std::size_t pick = i == 0 ? 0 : 1;
      if (from.size() <= pick || to.empty()) throw Error("sat_to_instance: no free degree-2 vertex to link clause groups");
      const VertexId a = from[pick];
      const VertexId b = to[0];
      const EdgeId link = edge(a, b, {EdgeRoleKind::Link, 0});
      labels_["link" + std::to_string(k++)] = link;
      for (VertexId d : {a, b}) {
        builder_.set_turn(d, link, incident[d][0], 0);
        builder_.set_turn(d, link, incident[d][1], 0);
        builder_.set_turn(d, incident[d][0], incident[d][1], 1);
      }
    }
  }

  int new_end(VertexId owner, int lit, std::string label) {
    ends_.push_back({owner, lit, std::move(label)});
    return static_cast<int>(ends_.size()) - 1;
  }

  void connect(int end, VertexId to, const std::string& extra_label) {
    End& e = ends_[end];
    e.edge = edge(e.owner, to, {EdgeRoleKind::Literal, e.literal});
    labels_[e.label] = e.edge;
    labels_[extra_label] = e.edge;
  }

  std::vector<int> build_copy(int copy) {
    const std::string prefix = copy == 0 ? "" : "mirror.";
    const int n = f_.variables;
    var_[copy].resize(static_cast<std::size_t>(n));
    root_end_[copy].resize(static_cast<std::size_t>(n));
    top_.resize(static_cast<std::size_t>(n));
    std::map<int, std::deque<int>> pool;
    for (int i = 1; i <= n; ++i) {
      const VertexId v = builder_.add_vertex();
      var_[copy][i - 1] = v;
      const int pos = new_end(v, i, prefix + "var" + std::to_string(i) + ".lit+");
      const int neg = new_end(v, -i, prefix + "var" + std::to_string(i) + ".lit-");
      root_end_[copy][i - 1] = {pos, neg};
      pool[i].push_back(pos);
      pool[-i].push_back(neg);
    }
    std::map<int, int> occurrences;
    std::set<int> forced;
    for (const auto& c : f_.clauses) {
      for (int lit : c) ++occurrences[lit];
      for (int lit : c)
        if (lit > 0 && std::find(c.begin(), c.end(), -lit) != c.end()) forced.insert(lit);
    }
    // Literal order +1, -1, +2, -2, ... keeps construction deterministic.
    std::vector<int> literals;
    for (int i = 1; i <= n; ++i) {
      literals.push_back(i);
      literals.push_back(-i);
    }
    for (int lit : literals) {
      int k = 0;
      auto& p = pool[lit];
      while (static_cast<int>(p.size()) < occurrences[lit] || (k == 0 && forced.count(lit))) {
        const std::string base = prefix + lit_name(lit) + ".split" + std::to_string(k++);
        const VertexId x = builder_.add_vertex();
        const VertexId y = builder_.add_vertex();
        const VertexId z = builder_.add_vertex();
        const VertexId w = builder_.add_vertex();
        const int a_end = p.front();
        p.pop_front();
        connect(a_end, x, base + ".a");
        const EdgeId e = edge(x, z, {EdgeRoleKind::Opposite, lit});
        const EdgeId f = edge(x, y, {EdgeRoleKind::Opposite, lit});
        labels_[base + ".e"] = e;
        labels_[base + ".f"] = f;
        labels_[base + ".g"] = edge(y, w, {EdgeRoleKind::Single, 0});
        labels_[base + ".h"] = edge(z, w, {EdgeRoleKind::Single, 0});
        const int b_end = new_end(x, lit, base + ".b");
        p.push_back(b_end);
        p.push_back(new_end(y, lit, base + ".c"));
        p.push_back(new_end(z, lit, base + ".d"));
        splits_.push_back({x, a_end, b_end, e, f});
      }
    }
    for (std::size_t j = 0; j < f_.clauses.size(); ++j) {
      const VertexId c = builder_.add_vertex();
      for (int k = 0; k < 3; ++k) {
        const int lit = f_.clauses[j][k];
        const int end = pool[lit].front();
        pool[lit].pop_front();
        connect(end, c, prefix + "clause" + std::to_string(j) + ".port" + std::to_string(k));
      }
    }
    std::vector<int> left;
    for (int lit : literals)
      for (int end : pool[lit]) left.push_back(end);
    return left;
  }

  const Formula1in3& f_;
  InstanceBuilder builder_;
  GadgetLabels labels_;
  std::vector<EdgeRole> roles_;  // by edge id (ids are sequential)
  std::vector<std::pair<VertexId, VertexId>> ends_of_;  // by edge id
  std::vector<End> ends_;
  std::vector<Split> splits_;
  std::array<std::vector<VertexId>, 2> var_;
  std::array<std::vector<std::array<int, 2>>, 2> root_end_;
  std::vector<EdgeId> top_;
};

}  // namespace detail

inline SatReduction sat_to_instance(const Formula1in3& f) {
  f.validate();
  return detail::SatBuilder(f).build();
}

/// Traversal counts implied by an assignment.
inline std::vector<int> sat_multiplicities(const SatReduction& red, const Assignment& a) {
  std::vector<int> t(red.roles.size());
  for (std::size_t e = 0; e < red.roles.size(); ++e) {
    const EdgeRole& r = red.roles[e];
    if (r.kind == EdgeRoleKind::Link) {
      t[e] = 2;
      continue;
    }
    const int val = r.kind == EdgeRoleKind::Single ? 0 : (literal_value(a, r.literal) ? 1 : 0);
    t[e] = r.kind == EdgeRoleKind::Literal ? 1 + val : r.kind == EdgeRoleKind::Opposite ? 2 - val : 1;
  }
  return t;
}

/// Perfect threading with a minimum spanning tree at every junction.
inline Threading assignment_to_threading(const Formula1in3& f, const SatReduction& red, const Assignment& a) {
  if (!satisfies_1in3(f, a)) throw PreconditionError("assignment_to_threading: assignment does not satisfy the formula");
  const Instance& inst = red.instance;
  const std::vector<int> t = sat_multiplicities(red, a);
  JunctionAssignment ja;
  for (int v = 0; v < inst.vertex_count(); ++v) {
    std::optional<JunctionGraph> pick;
    for (JunctionGraph& tree : junction_mst(inst, v)) {
      bool fits = true;
      for (int e : inst.incident(v)) fits = fits && tree.degree_of(e) == t[e];
      if (fits) {
        pick = std::move(tree);
        break;
      }
    }
    if (!pick) throw Error("assignment_to_threading: no minimum spanning tree fits at vertex " + std::to_string(inst.vertex_id(v)));
    ja.junctions.push_back(std::move(*pick));
  }
  return assemble(inst, ja);
}

/// Whether every junction of a valid threading is a minimum spanning tree.
inline bool is_minimum_perfect(const Instance& inst, const Threading& t) {
  if (!verify_threading(inst, t).ok()) return false;
  const auto junctions = junction_graphs(inst, t);
  for (int v = 0; v < inst.vertex_count(); ++v)
    if (!junctions[v].is_tree() || junctions[v].cost(inst) != junction_mst_weight(inst, v)) return false;
  return true;
}

/// x_i is true iff the first positive literal edge of variable i is doubled.
inline Assignment threading_to_assignment(const Formula1in3& f, const SatReduction& red, const Threading& t) {
  const Instance& inst = red.instance;
  if (!is_minimum_perfect(inst, t))
    throw PreconditionError("threading_to_assignment: not a perfect threading with minimum junctions");
  const auto mult = multiplicities(inst, t);
  Assignment a(static_cast<std::size_t>(f.variables));
  for (int i = 1; i <= f.variables; ++i)
    a[i - 1] = mult[inst.edge_index(red.labels.at("var" + std::to_string(i) + ".lit+"))] == 2;
  if (!satisfies_1in3(f, a)) throw Error("threading_to_assignment: extracted assignment does not satisfy the formula");
  return a;
}

// ---------------------------------------------------------------------------
// Lower-bound family: a tree of triangles whose cheapest threading loops the
// root triangle once per leaf.
//
// Every degree-3 vertex has one "sum" edge X: turns X-Y and X-Z cost 0 and
// turn Y-Z costs 1. A junction avoids the cost-1 turn only with links X-Y and
// X-Z, which forces t(X) = t(Y) + t(Z). Degree-2 vertices turn for free.
//
//   root triangle r0 r1 r2; r0 carries the bridge down (sum edge), so
//       t(down) = 2 t(root side)
//   chain triangle c0 c1 c2 with sides u0 = c0c1, u1 = c1c2, u2 = c2c0,
//       c0: up bridge is the sum edge        t(up) = t(u0) + t(u2)
//       c1: leaf bridge is the sum edge      t(leaf) = t(u0) + t(u1)
//       c2: u2 is the sum edge               t(u2) = t(u1) + t(next)
//   leaf triangle: the bridge corner's sum edge is the bridge, so t = 2k there.
// With leaves and u1 threaded as little as possible, every chain triangle adds
// 2 to the bridge above it, so a root with L leaves below is traversed L times
// at cost 0, while the perfect lower bound is also 0 and (for L >= 2) no tree
// assignment reaches it.

struct LowerBoundFamily {
  Instance instance;
  GadgetLabels labels;  // "root.01", "root.12", "root.20", "bridge<k>"
};

inline LowerBoundFamily gen_lower_bound_family(int leaves) {
  if (leaves < 1) throw PreconditionError("gen_lower_bound_family: leaves must be at least 1");
  InstanceBuilder b;
  GadgetLabels labels;
  struct Triangle {
    std::array<VertexId, 3> v;
    std::array<EdgeId, 3> side;  // side[i] joins v[i] and v[(i+1)%3]
  };
  auto triangle = [&]() {
    Triangle t;
    for (auto& x : t.v) x = b.add_vertex();
    for (int i = 0; i < 3; ++i) t.side[i] = b.add_edge(t.v[i], t.v[(i + 1) % 3]);
    return t;
  };
  int bridges = 0;
  auto bridge = [&](VertexId from, VertexId to) {
    const EdgeId e = b.add_edge(from, to);
    labels["bridge" + std::to_string(bridges++)] = e;
    return e;
  };
  // The third edge at v is the sum edge; y and z form the costly turn.
  auto sum_junction = [&](VertexId v, EdgeId y, EdgeId z) { b.set_turn(v, y, z, 1); };
  auto leaf_below = [&](VertexId parent) {
    const Triangle leaf = triangle();
    const EdgeId e = bridge(parent, leaf.v[0]);
    sum_junction(leaf.v[0], leaf.side[0], leaf.side[2]);
    return e;
  };

  const Triangle root = triangle();
  labels["root.01"] = root.side[0];
  labels["root.12"] = root.side[1];
  labels["root.20"] = root.side[2];
  sum_junction(root.v[0], root.side[0], root.side[2]);

  VertexId attach = root.v[0];
  std::optional<EdgeId> attach_u1;  // set when attach is corner 2 of a chain triangle
  auto hang = [&](EdgeId down) {
    if (attach_u1) sum_junction(attach, *attach_u1, down);
  };
  for (int k = 1; k < leaves; ++k) {
    const Triangle c = triangle();
    hang(bridge(attach, c.v[0]));
    sum_junction(c.v[0], c.side[0], c.side[2]);
    leaf_below(c.v[1]);
    sum_junction(c.v[1], c.side[0], c.side[1]);
    attach = c.v[2];
    attach_u1 = c.side[1];
  }
  hang(leaf_below(attach));
  b.set_default_cost(0);
  return {b.build(), std::move(labels)};
}

}  // namespace threadlab
