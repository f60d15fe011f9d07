#include "steklab/graph.hpp"

#include <cmath>
#include <set>
#include <stdexcept>
#include <vector>

namespace steklab {

std::vector<double> MetricGraph::mu_or_default() const {
  if (!mu.empty()) return mu;
  return std::vector<double>(n, 1.0);
}

std::vector<double> MetricGraph::potential_or_default() const {
  if (!potential.empty()) return potential;
  return std::vector<double>(n, 0.0);
}

bool MetricGraph::connected() const {
  if (n <= 0) return false;
  std::vector<std::vector<int>> adj(n);
  for (const Edge& e : edges) {
    adj[e.u].push_back(e.v);
    adj[e.v].push_back(e.u);
  }
  std::vector<char> seen(n, 0);
  std::vector<int> stack = {0};
  seen[0] = 1;
  int count = 1;
  while (!stack.empty()) {
    int x = stack.back();
    stack.pop_back();
    for (int y : adj[x]) {
      if (!seen[y]) {
        seen[y] = 1;
        ++count;
        stack.push_back(y);
      }
    }
  }
  return count == n;
}

void MetricGraph::validate() const {
  if (n < 1) throw std::invalid_argument("graph: needs at least one vertex");
  std::set<std::pair<int, int>> seen;
  for (const Edge& e : edges) {
    if (e.u < 0 || e.u >= n || e.v < 0 || e.v >= n) {
      throw std::invalid_argument("graph: edge endpoint out of range");
    }
    if (e.u == e.v) throw std::invalid_argument("graph: self-loops are not allowed");
    if (!(e.length > 0.0) || !std::isfinite(e.length)) {
      throw std::invalid_argument("graph: edge lengths must be positive");
    }
    if (!seen.insert({std::min(e.u, e.v), std::max(e.u, e.v)}).second) {
      throw std::invalid_argument("graph: repeated edge");
    }
  }
  if (!mu.empty()) {
    if ((int)mu.size() != n) throw std::invalid_argument("graph: mu size mismatch");
    for (double m : mu) {
      if (!(m > 0.0) || !std::isfinite(m)) {
        throw std::invalid_argument("graph: mu must be positive");
      }
    }
  }
  if (!potential.empty()) {
    if ((int)potential.size() != n) {
      throw std::invalid_argument("graph: potential size mismatch");
    }
    for (double v : potential) {
      if (!std::isfinite(v)) throw std::invalid_argument("graph: potential must be finite");
    }
  }
}

MetricGraph MetricGraph::complete(int n, double length) {
  MetricGraph g;
  g.n = n;
  for (int i = 0; i < n; ++i) {
    for (int j = i + 1; j < n; ++j) g.edges.push_back({i, j, length});
  }
  return g;
}

MetricGraph MetricGraph::path(int n, double length) {
  MetricGraph g;
  g.n = n;
  for (int i = 0; i + 1 < n; ++i) g.edges.push_back({i, i + 1, length});
  return g;
}

MetricGraph MetricGraph::cycle(int n, double length) {
  MetricGraph g;
  g.n = n;
  for (int i = 0; i < n; ++i) g.edges.push_back({i, (i + 1) % n, length});
  return g;
}

Eigen::MatrixXd graph_laplacian(const MetricGraph& g) {
  g.validate();
  Eigen::MatrixXd L = Eigen::MatrixXd::Zero(g.n, g.n);
  for (const MetricGraph::Edge& e : g.edges) {
    double w = 1.0 / e.length;
    L(e.u, e.u) += w;
    L(e.v, e.v) += w;
    L(e.u, e.v) -= w;
    L(e.v, e.u) -= w;
  }
  return L;
}

GraphSpectrum graph_spectrum(const MetricGraph& g) {
  g.validate();
  if (!g.connected()) {
    throw std::invalid_argument("graph_spectrum: graph must be connected");
  }
  Eigen::MatrixXd A = graph_laplacian(g);
  std::vector<double> mu = g.mu_or_default();
  std::vector<double> pot = g.potential_or_default();
  Eigen::MatrixXd B = Eigen::MatrixXd::Zero(g.n, g.n);
  for (int i = 0; i < g.n; ++i) {
    A(i, i) += pot[i];
    B(i, i) = mu[i];
  }
  Eigen::GeneralizedSelfAdjointEigenSolver<Eigen::MatrixXd> es(A, B);
  if (es.info() != Eigen::Success) {
    throw std::runtime_error("graph_spectrum: eigensolver failed");
  }
  GraphSpectrum out;
  out.eigenvalues.assign(es.eigenvalues().data(), es.eigenvalues().data() + g.n);
  out.eigenvectors = es.eigenvectors();
  for (int j = 0; j < g.n; ++j) {
    int arg = 0;
    for (int i = 1; i < g.n; ++i) {
      if (std::abs(out.eigenvectors(i, j)) > std::abs(out.eigenvectors(arg, j)) + 1e-300) {
        arg = i;
      }
    }
    if (out.eigenvectors(arg, j) < 0) out.eigenvectors.col(j) = -out.eigenvectors.col(j);
  }
  return out;
}

int mu_reference(int n) {
  if (n < 2) throw std::invalid_argument("mu_reference: needs n >= 2");
  return n - 1;
}

}  // namespace steklab
