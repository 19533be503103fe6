#pragma once

// JSON documents for instances and threadings.
//
//   instance:  {"vertices":[ids],"edges":[{"id","u","v"}],"default_cost":int,
//               "turns":[{"v","e1","e2","cost"}]}
//   threading: {"steps":[{"edge","from","to"}]}
//
// Field names are exact; unknown fields are rejected.

#include <initializer_list>
#include <string>
#include <string_view>

#include <nlohmann/json.hpp>

#include "threadlab/core.hpp"

namespace threadlab {

using json = nlohmann::json;

namespace detail {

inline void require_fields(const json& obj, std::initializer_list<std::string_view> allowed,
                           std::initializer_list<std::string_view> required, std::string_view what) {
  if (!obj.is_object()) throw InstanceError(InstanceErrorKind::Parse, std::string(what) + " must be an object");
  for (const auto& [key, _] : obj.items()) {
    bool known = false;
    for (auto a : allowed) known = known || key == a;
    if (!known) throw InstanceError(InstanceErrorKind::Parse, "unknown field '" + key + "' in " + std::string(what));
  }
  for (auto r : required)
    if (!obj.contains(r))
      throw InstanceError(InstanceErrorKind::Parse, "missing field '" + std::string(r) + "' in " + std::string(what));
}

inline std::int64_t as_int(const json& j, std::string_view what) {
  if (!j.is_number_integer()) throw InstanceError(InstanceErrorKind::Parse, std::string(what) + " must be an integer");
  return j.get<std::int64_t>();
}

inline const json& as_array(const json& j, std::string_view what) {
  if (!j.is_array()) throw InstanceError(InstanceErrorKind::Parse, std::string(what) + " must be an array");
  return j;
}

}  // namespace detail

inline Instance instance_from_json(const json& doc) {
  detail::require_fields(doc, {"vertices", "edges", "default_cost", "turns"}, {"vertices", "edges"}, "instance");
  std::vector<VertexId> vertices;
  for (const json& v : detail::as_array(doc.at("vertices"), "vertices")) vertices.push_back(detail::as_int(v, "vertex id"));
  std::vector<EdgeSpec> edges;
  for (const json& e : detail::as_array(doc.at("edges"), "edges")) {
    detail::require_fields(e, {"id", "u", "v"}, {"id", "u", "v"}, "edge");
    edges.push_back({detail::as_int(e.at("id"), "edge id"), detail::as_int(e.at("u"), "edge u"),
                     detail::as_int(e.at("v"), "edge v")});
  }
  const Cost default_cost = doc.contains("default_cost") ? detail::as_int(doc.at("default_cost"), "default_cost") : 1;
  std::vector<TurnSpec> turns;
  if (doc.contains("turns")) {
    for (const json& t : detail::as_array(doc.at("turns"), "turns")) {
      detail::require_fields(t, {"v", "e1", "e2", "cost"}, {"v", "e1", "e2", "cost"}, "turn");
      turns.push_back({detail::as_int(t.at("v"), "turn v"), detail::as_int(t.at("e1"), "turn e1"),
                       detail::as_int(t.at("e2"), "turn e2"), detail::as_int(t.at("cost"), "turn cost")});
    }
  }
  return Instance::build(std::move(vertices), std::move(edges), default_cost, std::move(turns));
}

/// Parses and validates an instance document. Throws InstanceError.
inline Instance load_instance(std::string_view text) {
  json doc;
  try {
    doc = json::parse(text);
  } catch (const json::parse_error& e) {
    throw InstanceError(InstanceErrorKind::Parse, e.what());
  }
  return instance_from_json(doc);
}

inline json to_json(const Instance& inst) {
  json doc;
  doc["vertices"] = inst.vertex_ids();
  json edges = json::array();
  for (const auto& e : inst.edges())
    edges.push_back({{"id", e.id}, {"u", inst.vertex_id(e.u)}, {"v", inst.vertex_id(e.v)}});
  doc["edges"] = std::move(edges);
  doc["default_cost"] = inst.default_cost();
  json turns = json::array();
  for (const TurnSpec& t : inst.explicit_turns())
    turns.push_back({{"v", t.v}, {"e1", t.e1}, {"e2", t.e2}, {"cost", t.cost}});
  doc["turns"] = std::move(turns);
  return doc;
}

/// Steps reference external ids; they are resolved against the instance but
/// not checked for chaining (verification reports that).
inline Walk walk_from_json(const Instance& inst, const json& doc) {
  detail::require_fields(doc, {"steps"}, {"steps"}, "threading");
  Walk w;
  for (const json& s : detail::as_array(doc.at("steps"), "steps")) {
    detail::require_fields(s, {"edge", "from", "to"}, {"edge", "from", "to"}, "step");
    const EdgeId e = detail::as_int(s.at("edge"), "step edge");
    const VertexId from = detail::as_int(s.at("from"), "step from");
    const VertexId to = detail::as_int(s.at("to"), "step to");
    if (!inst.has_edge(e) || !inst.has_vertex(from) || !inst.has_vertex(to))
      throw InstanceError(InstanceErrorKind::UnknownReference, "step references an unknown edge or vertex");
    w.steps.push_back({inst.edge_index(e), inst.vertex_index(from), inst.vertex_index(to)});
  }
  return w;
}

inline Walk load_threading(const Instance& inst, std::string_view text) {
  json doc;
  try {
    doc = json::parse(text);
  } catch (const json::parse_error& e) {
    throw InstanceError(InstanceErrorKind::Parse, e.what());
  }
  return walk_from_json(inst, doc);
}

inline json to_json(const Instance& inst, const Walk& w) {
  json steps = json::array();
  for (const Step& s : w.steps)
    steps.push_back({{"edge", inst.edge_id(s.edge)}, {"from", inst.vertex_id(s.from)}, {"to", inst.vertex_id(s.to)}});
  return json{{"steps", std::move(steps)}};
}

}  // namespace threadlab
