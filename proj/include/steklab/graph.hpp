#pragma once

#include <Eigen/Dense>
#include <vector>

namespace steklab {

// Finite metric graph with positive edge lengths, vertex measures mu and a
// vertex potential V.
struct MetricGraph {
  struct Edge {
    int u = 0, v = 0;
    double length = 1.0;
  };
  int n = 0;
  std::vector<Edge> edges;
  std::vector<double> mu;         // defaults to 1 when empty
  std::vector<double> potential;  // defaults to 0 when empty

  std::vector<double> mu_or_default() const;
  std::vector<double> potential_or_default() const;
  bool connected() const;
  // Simple graph on 0..n-1: no self-loops, no repeated edges, lengths > 0,
  // mu > 0, finite potential. Throws std::invalid_argument.
  void validate() const;

  static MetricGraph complete(int n, double length = 1.0);
  static MetricGraph path(int n, double length = 1.0);
  static MetricGraph cycle(int n, double length = 1.0);
};

struct GraphSpectrum {
  std::vector<double> eigenvalues;  // ascending
  Eigen::MatrixXd eigenvectors;     // mu-orthonormal columns
};

// L f(x) = sum_{y ~ x} (f(x) - f(y)) / l_xy.
Eigen::MatrixXd graph_laplacian(const MetricGraph& g);

// Eigenpairs of (L + diag(V)) f = lambda diag(mu) f. Requires connectivity.
GraphSpectrum graph_spectrum(const MetricGraph& g);

// Known multiplicity of the first nonzero Laplacian eigenvalue of the
// complete graph K_n (unit data): n - 1, for n >= 2.
int mu_reference(int n);

}  // namespace steklab
