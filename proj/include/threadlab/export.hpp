#pragma once

// Text renderings: Graphviz DOT for any instance, SVG for grid threadings.

#include <cstdlib>
#include <sstream>
#include <string>
#include <vector>

#include "threadlab/core.hpp"
#include "threadlab/solvers.hpp"

namespace threadlab {

/// Undirected DOT graph. Edge labels carry the id and, with a walk, the
/// traversal count; every non-default turn is listed in the vertex label.
inline std::string to_dot(const Instance& inst, const Walk* walk = nullptr) {
  std::vector<int> t;
  if (walk) t = multiplicities(inst, *walk);
  std::vector<std::vector<const TurnSpec*>> turns_at(static_cast<std::size_t>(inst.vertex_count()));
  for (const TurnSpec& s : inst.explicit_turns()) turns_at[inst.vertex_index(s.v)].push_back(&s);

  std::ostringstream os;
  os << "graph threading {\n";
  os << "  // default turn cost " << inst.default_cost() << "\n";
  os << "  node [shape=circle];\n";
  for (int v = 0; v < inst.vertex_count(); ++v) {
    os << "  v" << inst.vertex_id(v) << " [label=\"" << inst.vertex_id(v);
    for (const TurnSpec* s : turns_at[v]) os << "\\n" << s->e1 << "-" << s->e2 << ":" << s->cost;
    os << "\"];\n";
  }
  for (int e = 0; e < inst.edge_count(); ++e) {
    const auto& ed = inst.edge(e);
    os << "  v" << inst.vertex_id(ed.u) << " -- v" << inst.vertex_id(ed.v) << " [label=\"e" << ed.id;
    if (walk) os << " x" << t[e];
    os << "\"];\n";
  }
  os << "}\n";
  return os.str();
}

struct SvgOptions {
  int cell = 60;    // pixels between neighbouring grid vertices
  int margin = 30;
};

/// SVG of make_grid(w, h), optionally overlaid with a walk. Every costly turn
/// of the walk gets one `<circle class="turn">`; repeated visits to the same
/// corner are offset so that each stays visible.
inline std::string grid_svg(const Instance& grid, int w, int h, const Walk* walk = nullptr, SvgOptions opt = {}) {
  if (grid.vertex_count() != w * h) throw PreconditionError("grid_svg: instance is not a " + std::to_string(w) + "x" +
                                                            std::to_string(h) + " grid");
  auto px = [&](int v) { return opt.margin + static_cast<int>(grid.vertex_id(v) % w) * opt.cell; };
  auto py = [&](int v) { return opt.margin + static_cast<int>(grid.vertex_id(v) / w) * opt.cell; };
  for (int e = 0; e < grid.edge_count(); ++e) {
    const auto& ed = grid.edge(e);
    const int dx = std::abs(px(ed.u) - px(ed.v));
    const int dy = std::abs(py(ed.u) - py(ed.v));
    if (dx + dy != opt.cell) throw PreconditionError("grid_svg: edge " + std::to_string(ed.id) + " is not a grid edge");
  }
  const int width = 2 * opt.margin + (w - 1) * opt.cell;
  const int height = 2 * opt.margin + (h - 1) * opt.cell;

  std::ostringstream os;
  os << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << width << "\" height=\"" << height << "\" viewBox=\"0 0 "
     << width << " " << height << "\">\n";
  os << "  <rect width=\"100%\" height=\"100%\" fill=\"white\"/>\n";
  for (int e = 0; e < grid.edge_count(); ++e) {
    const auto& ed = grid.edge(e);
    os << "  <line class=\"edge\" x1=\"" << px(ed.u) << "\" y1=\"" << py(ed.u) << "\" x2=\"" << px(ed.v) << "\" y2=\""
       << py(ed.v) << "\" stroke=\"#bbb\" stroke-width=\"2\"/>\n";
  }
  for (int v = 0; v < grid.vertex_count(); ++v)
    os << "  <circle class=\"vertex\" cx=\"" << px(v) << "\" cy=\"" << py(v) << "\" r=\"3\" fill=\"#444\"/>\n";
  if (walk && !walk->steps.empty()) {
    const auto& steps = walk->steps;
    os << "  <polyline class=\"walk\" fill=\"none\" stroke=\"#1f6feb\" stroke-width=\"2\" stroke-opacity=\"0.6\" points=\"";
    for (const Step& s : steps) os << px(s.from) << "," << py(s.from) << " ";
    os << px(steps.front().from) << "," << py(steps.front().from) << "\"/>\n";
    std::vector<int> seen(static_cast<std::size_t>(grid.vertex_count()), 0);
    for (std::size_t i = 0; i < steps.size(); ++i) {
      const Step& a = steps[i];
      const Step& b = steps[(i + 1) % steps.size()];
      if (a.edge == b.edge) continue;
      const int v = a.to;
      const Cost c = grid.turn_cost(v, a.edge, b.edge);
      for (Cost k = 0; k < c; ++k) {
        const int n = seen[v]++;
        const int off = 5 * n;
        os << "  <circle class=\"turn\" cx=\"" << px(v) + off << "\" cy=\"" << py(v) + off
           << "\" r=\"6\" fill=\"#d1242f\" fill-opacity=\"0.7\"/>\n";
      }
    }
  }
  os << "</svg>\n";
  return os.str();
}

}  // namespace threadlab
