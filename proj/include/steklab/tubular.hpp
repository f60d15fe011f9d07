#pragma once

#include <array>
#include <vector>

#include "steklab/graph.hpp"
#include "steklab/mesh.hpp"
#include "steklab/steklov.hpp"

namespace steklab {

// Parameters for the neighborhood domain built around a plane drawing of a
// metric graph: every graph edge becomes a straight strip of half-width
// epsilon, and every graph vertex becomes a half-disk whose straight side
// (the diameter) is the only Steklov part of the boundary.
struct TubularParams {
  double epsilon = 0.1;      // strip half-width
  double disk_radius = 0.45; // vertex half-disk radius (must exceed epsilon)
  double mesh_h = 0.05;      // target element size; capped at epsilon/2 internally
  std::vector<Vec2> layout;  // one plane position per graph vertex
};

struct TubularDomain {
  Mesh mesh;
  DensitySpec densities;
  // For each graph vertex, the boundary-edge indices of its diameter segment.
  std::vector<std::vector<int>> diameter_edges;
};

// Builds the plane domain and the density pair (gamma, rho) whose weighted
// Steklov-Neumann spectrum approximates the spectrum of the metric graph:
//  - strips carry gamma = L_e / (2 epsilon l_e) so each strip's end-to-end
//    conductance equals 1 / l_e regardless of its drawn length L_e;
//  - half-disks carry gamma = (disk_radius / epsilon)^2 so the junction
//    resistance between the ports and the diameter vanishes as epsilon -> 0;
//  - diameters carry rho = mu_x / (2 disk_radius) so each diameter's total
//    boundary mass equals the vertex weight mu_x.
// Throws std::invalid_argument when the drawing is geometrically infeasible
// (overlapping pieces, ports too close, strips too short).
TubularDomain build_tubular_domain(const MetricGraph& graph, const TubularParams& params);

struct ConvergenceRow {
  double epsilon;
  int k;              // eigenvalue index
  double sigma;       // domain eigenvalue
  double lambda_graph;// graph eigenvalue
  double abs_error;   // |sigma - lambda_graph|
};

struct ConvergenceStudy {
  std::vector<ConvergenceRow> rows;  // grouped by epsilon, then by k
};

// Solves the domain problem for each epsilon (strictly decreasing) and
// tabulates the first `count` eigenvalues against the graph spectrum.
// base.epsilon is ignored; base.mesh_h is capped at epsilon/2 per run.
ConvergenceStudy convergence_study(const MetricGraph& graph, const TubularParams& base,
                                   const std::vector<double>& epsilons, int count);

// Convenience: regular n-gon layout on a circle of the given radius,
// centered at the origin, vertex 0 at angle zero.
std::vector<Vec2> polygon_layout(int n, double circumradius);

}  // namespace steklab
