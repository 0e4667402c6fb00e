#include <doctest.h>

#include <algorithm>
#include <set>

#include "platospec/graph.hpp"

using namespace platospec;

namespace {

std::vector<int> layer_sizes(const MetricGraph& g, int root) {
  std::vector<int> out;
  for (const auto& layer : bfs_layer_profile(g, root)) out.push_back(static_cast<int>(layer.size()));
  return out;
}

}  // namespace

TEST_CASE("platonic skeletons have the right counts") {
  struct Row {
    Solid solid;
    int v, e, d;
  };
  for (const Row r : {Row{Solid::Tetrahedron, 4, 6, 3}, Row{Solid::Cube, 8, 12, 3}, Row{Solid::Octahedron, 6, 12, 4},
                      Row{Solid::Dodecahedron, 20, 30, 3}, Row{Solid::Icosahedron, 12, 30, 5}}) {
    CAPTURE(to_string(r.solid));
    const auto g = build_platonic(r.solid);
    CHECK(g.vertex_count() == r.v);
    CHECK(g.edge_count() == r.e);
    CHECK(g.degree_sum() == 2 * r.e);
    for (const auto& v : g.vertices()) CHECK(v.degree() == r.d);
    CHECK(validate(g).ok());
  }
}

TEST_CASE("distance layers from any vertex") {
  const std::vector<std::pair<Solid, std::vector<int>>> expected = {
      {Solid::Tetrahedron, {1, 3}},          {Solid::Cube, {1, 3, 3, 1}},
      {Solid::Octahedron, {1, 4, 1}},        {Solid::Dodecahedron, {1, 3, 6, 6, 3, 1}},
      {Solid::Icosahedron, {1, 5, 5, 1}},
  };
  for (const auto& [solid, sizes] : expected) {
    const auto g = build_platonic(solid);
    for (int v = 0; v < g.vertex_count(); ++v) CHECK(layer_sizes(g, v) == sizes);
  }
}

TEST_CASE("skeletons are simple graphs") {
  for (Solid s : kAllSolids) {
    const auto pairs = edge_endpoints(build_platonic(s));
    std::set<std::pair<int, int>> seen;
    for (auto [a, b] : pairs) {
      CHECK(a != b);
      seen.insert({std::min(a, b), std::max(a, b)});
    }
    CHECK(seen.size() == pairs.size());
  }
}

TEST_CASE("solid names round-trip") {
  for (Solid s : kAllSolids) CHECK(parse_solid(to_string(s)) == s);
  CHECK_THROWS_AS(parse_solid("torus"), std::invalid_argument);
}

TEST_CASE("validation catches broken graphs") {
  SUBCASE("dangling end") {
    MetricGraph g({Vertex{0, {{0, EndSide::Zero}}}, Vertex{1, {}}}, 1);
    CHECK(validate(g).has("missing end"));
  }
  SUBCASE("duplicate end") {
    MetricGraph g({Vertex{0, {{0, EndSide::Zero}, {0, EndSide::Zero}}}, Vertex{1, {{0, EndSide::One}}}}, 1);
    CHECK(validate(g).has("duplicate end"));
  }
  SUBCASE("bad edge id") {
    MetricGraph g({Vertex{0, {{0, EndSide::Zero}, {3, EndSide::Zero}}}, Vertex{1, {{0, EndSide::One}}}}, 1);
    CHECK(validate(g).has("bad edge id"));
  }
  SUBCASE("disconnected") {
    MetricGraph g({Vertex{0, {{0, EndSide::Zero}}}, Vertex{1, {{0, EndSide::One}}}, Vertex{2, {{1, EndSide::Zero}}},
                   Vertex{3, {{1, EndSide::One}}}},
                  2);
    CHECK(validate(g).has("disconnected"));
  }
}

TEST_CASE("reordering keeps the edge set") {
  const auto g = build_platonic(Solid::Octahedron);
  const auto r = rotate_vertex_order(g, 2, 1);
  CHECK(r.vertex(2).ends != g.vertex(2).ends);
  CHECK(edge_endpoints(r) == edge_endpoints(g));
  CHECK(rotate_vertex_order(g, 2, 4) == g);
  const auto p = permute_vertex_order(g, 0, {1, 0, 2, 3});
  CHECK(p.vertex(0).ends[0] == g.vertex(0).ends[1]);
  CHECK(validate(p).ok());
  const auto f = flip_edge(g, 5);
  CHECK(validate(f).ok());
  CHECK(flip_edge(f, 5) == g);
}
