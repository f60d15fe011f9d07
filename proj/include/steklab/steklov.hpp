#pragma once

#include <Eigen/Dense>
#include <Eigen/Sparse>
#include <vector>

#include "steklab/mesh.hpp"

namespace steklab {

// Piecewise-constant conductivity (per triangle) and boundary density
// (per boundary edge). rho must be positive on Steklov edges and zero on
// Neumann edges.
struct DensitySpec {
  std::vector<double> gamma;
  std::vector<double> rho;

  static DensitySpec uniform(const Mesh& mesh);
  void validate(const Mesh& mesh) const;  // throws std::invalid_argument
};

struct Cluster {
  double value = 0.0;      // mean of the clustered eigenvalues
  int multiplicity = 0;
  int first_index = 0;     // index of the lowest eigenvalue in the cluster
};

// Greedy clustering of an ascending sequence: a value joins the current
// cluster when its gap to the previous value is at most
// rel_tol * max(1, |value|).
std::vector<Cluster> cluster_multiplicities(const std::vector<double>& values,
                                            double rel_tol);

struct SpectrumResult {
  std::vector<double> eigenvalues;  // sigma_0 <= ... <= sigma_k
  Eigen::MatrixXd eigenvectors;     // num_vertices x (k+1), rho-orthonormal on the boundary
  std::vector<int> steklov_dofs;    // vertex ids carrying boundary mass, ascending
  std::vector<Cluster> clusters;
  std::vector<int> cluster_of;      // eigenvalue index -> cluster index
  double cluster_rel_tol = 1e-2;
};

// P1 stiffness matrix of div(gamma grad u) over all vertices.
Eigen::SparseMatrix<double> assemble_stiffness(const Mesh& mesh, const DensitySpec& d);

// Boundary mass matrix from Steklov edges: per edge rho * length * [[1/3,1/6],[1/6,1/3]].
Eigen::SparseMatrix<double> assemble_boundary_mass(const Mesh& mesh, const DensitySpec& d);

// Schur complement of the stiffness matrix onto the given dofs:
// S = K_bb - K_bi K_ii^{-1} K_ib. Requires every connected component of the
// mesh to touch a listed dof; otherwise K_ii is singular and this throws.
Eigen::MatrixXd dtn_reduce(const Eigen::SparseMatrix<double>& K,
                           const std::vector<int>& steklov_dofs);

// First k+1 eigenpairs of the Steklov pencil on a mesh whose Steklov part is
// the whole boundary or a marked subset (Neumann elsewhere). Eigenvectors are
// harmonically extended to all vertices.
SpectrumResult solve_steklov(const Mesh& mesh, const DensitySpec& d, int k,
                             double cluster_rel_tol = 1e-2);
SpectrumResult solve_steklov_neumann(const Mesh& mesh, const DensitySpec& d, int k,
                                     double cluster_rel_tol = 1e-2);

}  // namespace steklab
