#pragma once

#include <Eigen/Dense>
#include <cstdint>
#include <vector>

#include "steklab/mesh.hpp"

namespace steklab {

struct NodalDecomposition {
  std::vector<std::int8_t> vertex_sign;      // -1, 0, +1 per vertex
  std::vector<int> triangle_domain;          // per triangle, 0..domain_count-1
  std::vector<std::int8_t> domain_sign;      // per domain
  std::vector<bool> domain_touches_boundary;
  int domain_count = 0;
};

// Sign-based decomposition of a vertex function: vertex signs use
// |v| <= zero_tol * max|v| as the zero band, a triangle takes the majority
// sign of its nonzero vertices (ties and all-zero triangles count positive),
// and domains are edge-connected runs of same-signed triangles, labeled in
// order of their lowest triangle index.
NodalDecomposition nodal_domains(const Mesh& mesh, const Eigen::VectorXd& values,
                                 double zero_tol = 1e-9);

// Courant bound: at most k+1 domains for the k-th eigenfunction.
bool courant_check(const NodalDecomposition& d, int k);

// Every domain owns at least one triangle with a boundary edge.
bool boundary_contact_check(const NodalDecomposition& d, const Mesh& mesh);

}  // namespace steklab
