#pragma once

// Shared helpers for the unit and acceptance suites: structured fixture
// meshes, closed-form reference spectra, and fixture paths.

#include <algorithm>
#include <cmath>
#include <functional>
#include <string>
#include <vector>

#include "steklab/mesh.hpp"

namespace testsupport {

using steklab::BoundaryEdge;
using steklab::Marker;
using steklab::Mesh;
using steklab::Vec2;

// Structured triangulated rectangle [0,W]x[0,H] with nx*ny quads, boundary
// one loop (component 0), all edges Steklov.
inline Mesh rectangle_mesh(double W, double H, int nx, int ny) {
  Mesh m;
  auto id = [&](int i, int j) { return j * (nx + 1) + i; };
  for (int j = 0; j <= ny; ++j) {
    for (int i = 0; i <= nx; ++i) {
      m.vertices.push_back({W * i / nx, H * j / ny});
    }
  }
  for (int j = 0; j < ny; ++j) {
    for (int i = 0; i < nx; ++i) {
      m.triangles.push_back({id(i, j), id(i + 1, j), id(i + 1, j + 1)});
      m.triangles.push_back({id(i, j), id(i + 1, j + 1), id(i, j + 1)});
    }
  }
  for (int i = 0; i < nx; ++i) m.boundary.push_back({id(i, 0), id(i + 1, 0), Marker::Steklov, 0});
  for (int j = 0; j < ny; ++j) {
    m.boundary.push_back({id(nx, j), id(nx, j + 1), Marker::Steklov, 0});
  }
  for (int i = nx; i > 0; --i) {
    m.boundary.push_back({id(i, ny), id(i - 1, ny), Marker::Steklov, 0});
  }
  for (int j = ny; j > 0; --j) m.boundary.push_back({id(0, j), id(0, j - 1), Marker::Steklov, 0});
  m.validate();
  return m;
}

// Reassigns boundary markers by a predicate on each edge midpoint.
inline void mark_edges(Mesh& m, const std::function<bool(Vec2)>& steklov_at) {
  for (BoundaryEdge& e : m.boundary) {
    Vec2 mid = 0.5 * (m.vertices[e.a] + m.vertices[e.b]);
    e.marker = steklov_at(mid) ? Marker::Steklov : Marker::Neumann;
  }
}

// First `count` Steklov eigenvalues of the annulus a < r < b with unit
// densities, from the per-mode closed form: constants and A + B log r for
// mode zero, A r^m + B r^-m for m >= 1 (each root twice, cos and sin).
inline std::vector<double> annulus_reference(double a, double b, int count) {
  std::vector<double> vals{0.0, (1.0 / a + 1.0 / b) / std::log(b / a)};
  for (int m = 1; m <= count; ++m) {
    double bm = std::pow(b, m), am = std::pow(a, m);
    // Nontrivial radial solutions A r^m + B r^-m satisfy a 2x2 homogeneous
    // system whose determinant is the quadratic c2 s^2 - c1 s + c0 in s.
    double c2 = bm / am - am / bm;
    double c1 = m * (std::pow(b, m - 1) / am + bm / std::pow(a, m + 1) +
                     am / std::pow(b, m + 1) + std::pow(a, m - 1) / bm);
    double c0 = m * m * (std::pow(b, m - 1) / std::pow(a, m + 1) -
                         std::pow(a, m - 1) / std::pow(b, m + 1));
    double disc = std::sqrt(c1 * c1 - 4.0 * c2 * c0);
    double lo = (c1 - disc) / (2.0 * c2);
    double hi = (c1 + disc) / (2.0 * c2);
    vals.push_back(lo);
    vals.push_back(lo);
    vals.push_back(hi);
    vals.push_back(hi);
  }
  std::sort(vals.begin(), vals.end());
  vals.resize(count);
  return vals;
}

inline std::string fixture_path(const std::string& name) {
  return std::string(STEKLAB_DATA_DIR) + "/certificates/" + name;
}

}  // namespace testsupport
