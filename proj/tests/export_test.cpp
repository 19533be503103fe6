#include <gtest/gtest.h>

#include <regex>
#include <string>

#include "support/fixtures.hpp"
#include "threadlab/export.hpp"

using namespace threadlab;
using namespace threadlab::testing;

namespace {

std::size_t count(const std::string& text, const std::string& needle) {
  std::size_t n = 0;
  for (auto pos = text.find(needle); pos != std::string::npos; pos = text.find(needle, pos + 1)) ++n;
  return n;
}

}  // namespace

TEST(Dot, ListsEveryEdgeAndTurn) {
  InstanceBuilder b;
  b.add_vertices(3);
  b.add_edge(0, 1);
  b.add_edge(1, 2);
  b.add_edge(2, 0);
  b.set_turn(1, 0, 1, 7);
  const Instance g = b.build();
  const std::string dot = to_dot(g);
  EXPECT_EQ(dot.rfind("graph threading {", 0), 0u);
  EXPECT_EQ(count(dot, " -- "), 3u);
  EXPECT_NE(dot.find("0-1:7"), std::string::npos);
  EXPECT_EQ(dot.back(), '\n');
  EXPECT_EQ(count(dot, "{"), count(dot, "}"));
}

TEST(Dot, WalkAddsMultiplicities) {
  const Instance g = k4();
  const Walk w = naive_double_threading(g);
  EXPECT_EQ(count(to_dot(g, &w), " x2\""), 6u);
}

TEST(Svg, FourByFourGridMarksEveryTurn) {
  const auto r = solve_grid(4, 4);
  const Instance grid = make_grid(4, 4);
  const std::string svg = grid_svg(grid, 4, 4, &r.threading);
  EXPECT_EQ(count(svg, "class=\"turn\""), static_cast<std::size_t>(r.cost));
  EXPECT_EQ(count(svg, "class=\"turn\""), 16u);
  EXPECT_EQ(count(svg, "class=\"vertex\""), 16u);
  EXPECT_EQ(count(svg, "class=\"edge\""), 24u);
}

TEST(Svg, MarkerCountMatchesCostOnOddGrid) {
  const auto r = solve_grid(5, 3);
  const std::string svg = grid_svg(make_grid(5, 3), 5, 3, &r.threading);
  EXPECT_EQ(count(svg, "class=\"turn\""), static_cast<std::size_t>(r.cost));
}

TEST(Svg, RejectsNonGrid) {
  EXPECT_THROW(grid_svg(k4(), 2, 2), PreconditionError);
  EXPECT_THROW(grid_svg(cycle_graph(4), 2, 2), PreconditionError);
}
