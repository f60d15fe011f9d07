#pragma once

#include <array>
#include <vector>

#include "steklab/geometry.hpp"

namespace steklab {

// Constrained Delaunay triangulation of a point set.
//
// All input points appear as vertices of the result; every input segment
// appears as an edge of some triangle. The caller is responsible for point
// spacing (no duplicates, no point strictly inside a segment) and for
// discarding triangles outside the region of interest afterwards.
// Throws std::runtime_error when the input violates those assumptions.
struct TriangulationInput {
  std::vector<Vec2> points;
  std::vector<std::array<int, 2>> segments;
};

struct TriangulationResult {
  std::vector<std::array<int, 3>> triangles;  // ccw, indices into input points
};

TriangulationResult triangulate_constrained(const TriangulationInput& input);

}  // namespace steklab
