#pragma once

#include <vector>

#include "steklab/mesh.hpp"

namespace steklab {

// Triangulates the region bounded by pre-sampled loops (loops[0] outer,
// the rest holes; orientation free). Every consecutive loop point pair
// becomes a constrained boundary segment; interior points come from a
// jittered hexagonal lattice at spacing target_h. Boundary edges are marked
// Steklov with component = loop index. The result is not validated.
Mesh cdt_polygon_region(const std::vector<std::vector<Vec2>>& loops, double target_h);

}  // namespace steklab
