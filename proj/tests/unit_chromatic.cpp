#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "doctest.h"
#include "steklab/chromatic.hpp"

using namespace steklab;

namespace {

RotationSystem plane_k3() {
  RotationSystem rs;
  rs.graph = SimpleGraph::complete(3);
  rs.rotation = {{1, 2}, {0, 2}, {0, 1}};
  for (auto e : rs.graph.edges) rs.edge_sign[e] = 1;
  return rs;
}

RotationSystem plane_k4() {
  // Tetrahedral embedding: vertex 0 surrounded by the outer triangle 1,2,3.
  RotationSystem rs;
  rs.graph = SimpleGraph::complete(4);
  rs.rotation = {{1, 2, 3}, {0, 3, 2}, {0, 1, 3}, {0, 2, 1}};
  for (auto e : rs.graph.edges) rs.edge_sign[e] = 1;
  return rs;
}

bool proper_coloring(const SimpleGraph& g, const std::vector<int>& colors, int c) {
  for (auto [u, v] : g.edges) {
    if (colors[u] == colors[v]) return false;
  }
  for (int col : colors) {
    if (col < 0 || col >= c) return false;
  }
  return true;
}

}  // namespace

TEST_CASE("face tracing on plane embeddings") {
  std::vector<Face> f3 = trace_faces(plane_k3());
  CHECK(f3.size() == 2);
  for (const Face& f : f3) CHECK(f.size() == 3);
  SurfaceSignature s3 = classify_surface(plane_k3());
  CHECK(s3.chi == 2);
  CHECK(s3.orientable);

  std::vector<Face> f4 = trace_faces(plane_k4());
  CHECK(f4.size() == 4);
  for (const Face& f : f4) CHECK(f.size() == 3);
  SurfaceSignature s4 = classify_surface(plane_k4());
  CHECK(s4.chi == 2);
  CHECK(s4.orientable);
}

TEST_CASE("edge signs change the traced surface") {
  // A twisted band on a tree edge can be untwisted by flipping one endpoint.
  RotationSystem k2;
  k2.graph = SimpleGraph{2, {{0, 1}}};
  k2.rotation = {{1}, {0}};
  k2.edge_sign[{0, 1}] = -1;
  SurfaceSignature s = classify_surface(k2);
  CHECK(s.chi == 2);
  CHECK(s.orientable);

  // A cycle with one twisted band embeds in the projective plane.
  RotationSystem c3;
  c3.graph = SimpleGraph::cycle(3);
  c3.rotation = {{1, 2}, {0, 2}, {0, 1}};
  c3.edge_sign[{0, 1}] = -1;
  c3.edge_sign[{1, 2}] = 1;
  c3.edge_sign[{0, 2}] = 1;
  SurfaceSignature sp = classify_surface(c3);
  CHECK(sp.chi == 1);
  CHECK_FALSE(sp.orientable);
  CHECK(trace_faces(c3).size() == 1);

  // The untwisted cycle is planar with two faces.
  c3.edge_sign[{0, 1}] = 1;
  SurfaceSignature so = classify_surface(c3);
  CHECK(so.chi == 2);
  CHECK(so.orientable);
}

TEST_CASE("canonical face representatives") {
  Face f{2, 0, 1};
  CHECK(canonical_face(f, false) == Face{0, 1, 2});
  Face g{0, 2, 1};
  CHECK(canonical_face(g, false) == Face{0, 2, 1});
  CHECK(canonical_face(g, true) == Face{0, 1, 2});
  Face quad{3, 1, 2, 0};
  CHECK(canonical_face(quad, false) == Face{0, 3, 1, 2});
  CHECK(canonical_face(quad, true) == Face{0, 2, 1, 3});
}

TEST_CASE("closed surface chromatic numbers") {
  CHECK(chr_closed({2, true, 0}) == 4);
  CHECK(chr_closed({1, false, 0}) == 6);
  CHECK(chr_closed({0, true, 0}) == 7);
  CHECK(chr_closed({0, false, 0}) == 6);  // the one exception
  CHECK(chr_closed({-2, true, 0}) == 8);
  CHECK(chr_closed({-2, false, 0}) == 8);
  CHECK(chr_closed({-5, false, 0}) == 10);
  CHECK(chr_closed({-7, false, 0}) == 10);
}

TEST_CASE("bounds for surfaces with boundary") {
  using P = std::pair<int, int>;
  CHECK(chr0_bounds({2, true, 0}, 1) == P{3, 3});
  CHECK(chr0_bounds({2, true, 0}, 2) == P{4, 4});
  CHECK(chr0_bounds({0, true, 0}, 1) == P{6, 6});
  CHECK(chr0_bounds({0, true, 0}, 2) == P{6, 6});
  CHECK(chr0_bounds({0, true, 0}, 3) == P{7, 7});
  CHECK(chr0_bounds({0, false, 0}, 2) == P{5, 6});
  CHECK(chr0_bounds({1, false, 0}, 2) == P{5, 6});
  CHECK(chr0_bounds({-2, true, 0}, 2) == P{7, 8});
  CHECK_THROWS_AS(chr0_bounds({2, true, 0}, 0), std::invalid_argument);
}

TEST_CASE("exact values with boundary where derivable") {
  auto exact = [](SurfaceSignature s, int p) { return chr0_exact(s, p); };
  CHECK(exact({2, true, 0}, 1) == 3);
  CHECK(exact({2, true, 0}, 5) == 4);
  CHECK(exact({1, false, 0}, 2) == 5);
  CHECK(exact({0, false, 0}, 2) == 6);
  CHECK(exact({0, true, 0}, 2) == 6);
  CHECK(exact({-2, true, 0}, 2) == 8);
  // Monotonicity in the hole count settles later columns.
  CHECK(exact({1, false, 0}, 3) == 6);
  CHECK(exact({-2, true, 0}, 3) == 8);
  // A connected-sum argument settles chi = -7 with three holes.
  CHECK(exact({-7, false, 0}, 3) == 10);
  // Open cases stay open.
  CHECK_FALSE(exact({-2, false, 0}, 2).has_value());
  CHECK_FALSE(exact({-4, true, 0}, 2).has_value());
  CHECK_FALSE(exact({-4, false, 0}, 2).has_value());
  CHECK_FALSE(exact({-7, false, 0}, 2).has_value());
}

TEST_CASE("degree bound for properly embedded graphs") {
  CHECK(min_degree_bound(0) == doctest::Approx(4.0));
  CHECK(min_degree_bound(-1) == doctest::Approx(5.0));
  CHECK(min_degree_bound(-5) == doctest::Approx((3.0 + std::sqrt(145.0)) / 2.0));
  CHECK_THROWS_AS(min_degree_bound(2), std::invalid_argument);
}

TEST_CASE("greedy coloring") {
  SimpleGraph k4 = SimpleGraph::complete(4);
  ColoringResult ok = greedy_color(k4, 4);
  CHECK(ok.success);
  CHECK(proper_coloring(k4, ok.colors, 4));
  ColoringResult fail = greedy_color(k4, 3);
  CHECK_FALSE(fail.success);
  CHECK(fail.blocking_vertex >= 0);
  SimpleGraph c5 = SimpleGraph::cycle(5);
  ColoringResult odd = greedy_color(c5, 3);
  CHECK(odd.success);
  CHECK(proper_coloring(c5, odd.colors, 3));
  CHECK_THROWS_AS(greedy_color(k4, 0), std::invalid_argument);
}

TEST_CASE("surface names") {
  CHECK(parse_surface("sphere").chi == 2);
  CHECK(parse_surface("torus").chi == 0);
  CHECK(parse_surface("torus").orientable);
  CHECK_FALSE(parse_surface("klein").orientable);
  SurfaceSignature s3p = parse_surface("sum3P");
  CHECK(s3p.chi == -1);
  CHECK_FALSE(s3p.orientable);
  SurfaceSignature s2t = parse_surface("sum2T");
  CHECK(s2t.chi == -2);
  CHECK(s2t.orientable);
  CHECK(parse_surface("sum9P").chi == -7);
  CHECK_THROWS_AS(parse_surface("donut"), std::invalid_argument);
  CHECK_THROWS_AS(parse_surface("sum0P"), std::invalid_argument);
  CHECK_THROWS_AS(parse_surface("sumxT"), std::invalid_argument);
}

TEST_CASE("rotation system validation") {
  RotationSystem rs = plane_k3();
  rs.rotation[0] = {1};  // missing neighbor
  CHECK_THROWS_AS(rs.validate(), std::invalid_argument);
  RotationSystem rs2 = plane_k3();
  rs2.edge_sign[{0, 1}] = 3;
  CHECK_THROWS_AS(rs2.validate(), std::invalid_argument);
  RotationSystem rs3 = plane_k3();
  rs3.edge_sign.erase({0, 2});
  CHECK_THROWS_AS(rs3.validate(), std::invalid_argument);
}
