#pragma once

#include <array>
#include <cstdint>
#include <map>
#include <string>
#include <variant>
#include <vector>

#include "steklab/geometry.hpp"

namespace steklab {

enum class Marker : std::uint8_t { Steklov, Neumann };

struct BoundaryEdge {
  int a = 0;  // oriented so the domain lies on the left: (a, b) as it appears
  int b = 0;  // in its unique incident triangle
  Marker marker = Marker::Steklov;
  int component = 0;  // boundary loop id, 0..loops-1
};

// Planar straight-line triangle mesh of a compact surface with boundary.
struct Mesh {
  std::vector<Vec2> vertices;
  std::vector<std::array<int, 3>> triangles;  // ccw
  std::vector<BoundaryEdge> boundary;

  int num_vertices() const { return (int)vertices.size(); }
  int num_triangles() const { return (int)triangles.size(); }
  double triangle_area(int t) const;
  int boundary_component_count() const;
  // Vertex ids incident to at least one Steklov boundary edge, ascending.
  std::vector<int> steklov_vertices() const;
  bool has_marker(Marker m) const;
  // Number of maximal runs of consecutive Steklov edges along the boundary.
  int steklov_segment_count() const;

  // Checks structural invariants (ccw triangles, manifold boundary matching
  // the stored edge list, closed loops with consistent component ids,
  // connectedness, no duplicate vertices). Throws std::runtime_error.
  void validate() const;
};

struct Circle {
  Vec2 center;
  double radius = 1.0;
};

struct PolygonShape {
  std::vector<Vec2> points;  // simple polygon, either orientation
};

using Shape = std::variant<Circle, PolygonShape>;

struct DomainSpec {
  Shape outer;
  std::vector<Shape> holes;
  double target_h = 0.1;  // requested boundary edge length / interior spacing
};

// Triangulates the domain. Circle boundaries become inscribed polygons with
// edge length at most target_h. All boundary edges are marked Steklov; the
// outer loop is component 0 and holes follow in the order given.
// Rejects holes that overlap each other, leave the outer shape, or sit closer
// together than the mesh size can resolve.
Mesh build_domain(const DomainSpec& spec);

// Splits every triangle in four through edge midpoints. Boundary markers and
// component ids are inherited by the two child edges.
Mesh refine_uniform(const Mesh& mesh);

// V - E + F of the triangulated surface.
int euler_characteristic(const Mesh& mesh);

// Replaces markers per boundary component. Unlisted components are unchanged.
// Rejects unknown component ids and assignments that leave no Steklov edge.
void mark_boundary(Mesh& mesh, const std::map<int, Marker>& assignment);

}  // namespace steklab
