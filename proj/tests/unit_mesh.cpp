#include <cmath>
#include <map>
#include <stdexcept>

#include "doctest.h"
#include "steklab/mesh.hpp"
#include "support.hpp"

using namespace steklab;

namespace {

double boundary_length(const Mesh& m, Marker marker) {
  double total = 0.0;
  for (const BoundaryEdge& e : m.boundary) {
    if (e.marker == marker) total += dist(m.vertices[e.a], m.vertices[e.b]);
  }
  return total;
}

}  // namespace

TEST_CASE("disk mesh invariants") {
  Mesh m = build_domain({Circle{{0, 0}, 1.0}, {}, 0.1});
  m.validate();
  CHECK(euler_characteristic(m) == 1);
  CHECK(m.boundary_component_count() == 1);
  CHECK(m.steklov_segment_count() == 1);
  // All boundary vertices lie on the unit circle.
  for (const BoundaryEdge& e : m.boundary) {
    CHECK(norm(m.vertices[e.a]) == doctest::Approx(1.0).epsilon(1e-12));
    CHECK(e.component == 0);
  }
  // Inscribed-polygon perimeter approaches 2*pi from below.
  double per = boundary_length(m, Marker::Steklov);
  CHECK(per < 2 * std::acos(-1.0));
  CHECK(per > 2 * std::acos(-1.0) * 0.995);
  // Total area close to pi.
  double area = 0.0;
  for (int t = 0; t < m.num_triangles(); ++t) area += m.triangle_area(t);
  CHECK(area == doctest::Approx(std::acos(-1.0)).epsilon(0.01));
}

TEST_CASE("annulus mesh has two boundary components") {
  Mesh m = build_domain({Circle{{0, 0}, 1.0}, {Circle{{0, 0}, 0.5}}, 0.1});
  CHECK(euler_characteristic(m) == 0);
  CHECK(m.boundary_component_count() == 2);
  bool saw0 = false, saw1 = false;
  for (const BoundaryEdge& e : m.boundary) {
    double r = norm(m.vertices[e.a]);
    if (e.component == 0) {
      saw0 = true;
      CHECK(r == doctest::Approx(1.0).epsilon(1e-12));
    } else {
      saw1 = true;
      CHECK(e.component == 1);
      CHECK(r == doctest::Approx(0.5).epsilon(1e-12));
    }
  }
  CHECK(saw0);
  CHECK(saw1);
}

TEST_CASE("polygon domains mesh correctly") {
  PolygonShape square{{{0, 0}, {2, 0}, {2, 2}, {0, 2}}};
  Mesh m = build_domain({square, {}, 0.25});
  CHECK(euler_characteristic(m) == 1);
  double area = 0.0;
  for (int t = 0; t < m.num_triangles(); ++t) area += m.triangle_area(t);
  CHECK(area == doctest::Approx(4.0).epsilon(1e-9));
  CHECK(boundary_length(m, Marker::Steklov) == doctest::Approx(8.0).epsilon(1e-9));

  PolygonShape hole{{{0.8, 0.8}, {1.2, 0.8}, {1.2, 1.2}, {0.8, 1.2}}};
  Mesh withhole = build_domain({square, {hole}, 0.2});
  CHECK(euler_characteristic(withhole) == 0);
  CHECK(withhole.boundary_component_count() == 2);
  double area2 = 0.0;
  for (int t = 0; t < withhole.num_triangles(); ++t) area2 += withhole.triangle_area(t);
  CHECK(area2 == doctest::Approx(4.0 - 0.16).epsilon(1e-9));
}

TEST_CASE("uniform refinement quadruples triangles and preserves structure") {
  Mesh m = build_domain({Circle{{0, 0}, 1.0}, {Circle{{0.2, 0}, 0.3}}, 0.2});
  Mesh r = refine_uniform(m);
  r.validate();
  CHECK(r.num_triangles() == 4 * m.num_triangles());
  CHECK((int)r.boundary.size() == 2 * (int)m.boundary.size());
  CHECK(euler_characteristic(r) == euler_characteristic(m));
  CHECK(r.boundary_component_count() == 2);
  // Component ids and markers survive refinement.
  std::map<int, int> counts;
  for (const BoundaryEdge& e : r.boundary) counts[e.component]++;
  CHECK(counts.size() == 2);
}

TEST_CASE("marker assignment per component") {
  Mesh m = build_domain({Circle{{0, 0}, 1.0}, {Circle{{0, 0}, 0.5}}, 0.15});
  mark_boundary(m, {{1, Marker::Neumann}});
  for (const BoundaryEdge& e : m.boundary) {
    CHECK(e.marker == (e.component == 0 ? Marker::Steklov : Marker::Neumann));
  }
  CHECK(m.steklov_segment_count() == 1);
  CHECK(m.has_marker(Marker::Neumann));
  CHECK_THROWS_AS(mark_boundary(m, {{7, Marker::Neumann}}), std::invalid_argument);
  // Turning every component Neumann leaves no Steklov data: rejected.
  CHECK_THROWS_AS(mark_boundary(m, {{0, Marker::Neumann}, {1, Marker::Neumann}}),
                  std::invalid_argument);
}

TEST_CASE("partial markers split the boundary into runs") {
  Mesh m = testsupport::rectangle_mesh(2.0, 1.0, 8, 4);
  testsupport::mark_edges(m, [](Vec2 p) { return p.y < 0.25 || p.y > 0.75; });
  // Bottom run and top run: two maximal Steklov arcs.
  CHECK(m.steklov_segment_count() == 2);
  m.validate();
}

TEST_CASE("invalid domains are rejected") {
  // Hole outside the outer shape.
  CHECK_THROWS_AS(build_domain({Circle{{0, 0}, 1.0}, {Circle{{3, 0}, 0.5}}, 0.1}),
                  std::invalid_argument);
  // Overlapping holes.
  CHECK_THROWS_AS(build_domain({Circle{{0, 0}, 1.0},
                                {Circle{{-0.3, 0}, 0.3}, Circle{{0.3, 0}, 0.35}},
                                0.05}),
                  std::invalid_argument);
  // Nonpositive mesh size.
  CHECK_THROWS_AS(build_domain({Circle{{0, 0}, 1.0}, {}, 0.0}), std::invalid_argument);
  // Degenerate circle.
  CHECK_THROWS_AS(build_domain({Circle{{0, 0}, -1.0}, {}, 0.1}), std::invalid_argument);
  // Self-intersecting polygon outline.
  PolygonShape bowtie{{{0, 0}, {1, 1}, {1, 0}, {0, 1}}};
  CHECK_THROWS_AS(build_domain({bowtie, {}, 0.1}), std::invalid_argument);
}

TEST_CASE("validate flags broken meshes") {
  Mesh m = build_domain({Circle{{0, 0}, 1.0}, {}, 0.3});
  Mesh clockwise = m;
  std::swap(clockwise.triangles[0][1], clockwise.triangles[0][2]);
  CHECK_THROWS_AS(clockwise.validate(), std::runtime_error);
  Mesh missing = m;
  missing.boundary.pop_back();
  CHECK_THROWS_AS(missing.validate(), std::runtime_error);
}
