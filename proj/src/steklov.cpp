#include "steklab/steklov.hpp"

#include <Eigen/SparseCholesky>
#include <algorithm>
#include <cmath>
#include <functional>
#include <set>
#include <stdexcept>
#include <string>

namespace steklab {

namespace {

[[noreturn]] void reject(const std::string& msg) { throw std::invalid_argument(msg); }

std::vector<int> mass_carrying_vertices(const Mesh& mesh) {
  std::vector<int> dofs = mesh.steklov_vertices();
  if (dofs.empty()) reject("solve_steklov: mesh has no Steklov boundary edge");
  return dofs;
}

struct ReducedSystem {
  std::vector<int> dofs;              // boundary dofs, ascending vertex ids
  std::vector<int> interior;          // remaining vertex ids
  Eigen::MatrixXd S;                  // DtN matrix on dofs
  Eigen::MatrixXd extension;          // interior x dofs harmonic extension map
};

ReducedSystem reduce(const Mesh& mesh, const Eigen::SparseMatrix<double>& K,
                     const std::vector<int>& dofs) {
  int n = (int)mesh.vertices.size();
  std::vector<int> role(n, -1);  // >=0: boundary slot, -1: interior
  for (size_t i = 0; i < dofs.size(); ++i) {
    int v = dofs[i];
    if (v < 0 || v >= n) reject("dtn_reduce: dof out of range");
    if (role[v] >= 0) reject("dtn_reduce: repeated dof");
    role[v] = (int)i;
  }
  // Every connected component of the vertex graph must contain a dof,
  // otherwise the interior block is singular.
  {
    std::vector<int> parent(n);
    for (int i = 0; i < n; ++i) parent[i] = i;
    std::function<int(int)> find = [&](int x) {
      while (parent[x] != x) x = parent[x] = parent[parent[x]];
      return x;
    };
    for (const auto& t : mesh.triangles) {
      parent[find(t[0])] = find(t[1]);
      parent[find(t[0])] = find(t[2]);
    }
    std::set<int> with_dof;
    for (int v : dofs) with_dof.insert(find(v));
    for (int v = 0; v < n; ++v) {
      if (!with_dof.count(find(v))) {
        reject("dtn_reduce: a mesh component carries no Steklov dof; interior block singular");
      }
    }
  }
  ReducedSystem sys;
  sys.dofs = dofs;
  std::vector<int> interior_slot(n, -1);
  for (int v = 0; v < n; ++v) {
    if (role[v] < 0) {
      interior_slot[v] = (int)sys.interior.size();
      sys.interior.push_back(v);
    }
  }
  int nb = (int)dofs.size(), ni = (int)sys.interior.size();
  Eigen::MatrixXd Kbb = Eigen::MatrixXd::Zero(nb, nb);
  Eigen::SparseMatrix<double> Kii(ni, ni), Kib(ni, nb);
  std::vector<Eigen::Triplet<double>> tii, tib;
  for (int col = 0; col < K.outerSize(); ++col) {
    for (Eigen::SparseMatrix<double>::InnerIterator it(K, col); it; ++it) {
      int r = (int)it.row(), c = (int)it.col();
      double v = it.value();
      bool rb = role[r] >= 0, cb = role[c] >= 0;
      if (rb && cb) {
        Kbb(role[r], role[c]) += v;
      } else if (!rb && !cb) {
        tii.emplace_back(interior_slot[r], interior_slot[c], v);
      } else if (!rb && cb) {
        tib.emplace_back(interior_slot[r], role[c], v);
      }
    }
  }
  Kii.setFromTriplets(tii.begin(), tii.end());
  Kib.setFromTriplets(tib.begin(), tib.end());
  if (ni == 0) {
    sys.S = Kbb;
    sys.extension.resize(0, nb);
    return sys;
  }
  Eigen::SimplicialLDLT<Eigen::SparseMatrix<double>> ldlt(Kii);
  if (ldlt.info() != Eigen::Success) {
    throw std::runtime_error("dtn_reduce: interior stiffness factorization failed");
  }
  Eigen::VectorXd diag = ldlt.vectorD();
  if ((diag.array() <= 0.0).any()) {
    throw std::runtime_error("dtn_reduce: interior stiffness block is not positive definite");
  }
  Eigen::MatrixXd X = ldlt.solve(Eigen::MatrixXd(Kib));
  sys.extension = -X;
  Eigen::MatrixXd S = Kbb - Eigen::MatrixXd(Kib.transpose()) * X;
  sys.S = 0.5 * (S + S.transpose());
  return sys;
}

SpectrumResult solve_impl(const Mesh& mesh, const DensitySpec& d, int k,
                          double cluster_rel_tol) {
  mesh.validate();
  d.validate(mesh);
  std::vector<int> dofs = mass_carrying_vertices(mesh);
  if (k < 0) reject("solve_steklov: k must be nonnegative");
  if (k + 1 > (int)dofs.size()) {
    reject("solve_steklov: k+1 exceeds the number of Steklov boundary vertices");
  }
  Eigen::SparseMatrix<double> K = assemble_stiffness(mesh, d);
  Eigen::SparseMatrix<double> M = assemble_boundary_mass(mesh, d);
  ReducedSystem sys = reduce(mesh, K, dofs);
  int nb = (int)dofs.size();
  Eigen::MatrixXd Mb(nb, nb);
  Mb.setZero();
  for (int col = 0; col < M.outerSize(); ++col) {
    for (Eigen::SparseMatrix<double>::InnerIterator it(M, col); it; ++it) {
      int r = (int)it.row(), c = (int)it.col();
      auto rp = std::lower_bound(dofs.begin(), dofs.end(), r);
      auto cp = std::lower_bound(dofs.begin(), dofs.end(), c);
      if (rp == dofs.end() || *rp != r || cp == dofs.end() || *cp != c) {
        throw std::runtime_error("solve_steklov: boundary mass outside Steklov dofs");
      }
      Mb((int)(rp - dofs.begin()), (int)(cp - dofs.begin())) += it.value();
    }
  }
  Eigen::GeneralizedSelfAdjointEigenSolver<Eigen::MatrixXd> es(sys.S, Mb);
  if (es.info() != Eigen::Success) {
    throw std::runtime_error("solve_steklov: generalized eigensolver failed");
  }
  SpectrumResult out;
  out.cluster_rel_tol = cluster_rel_tol;
  out.steklov_dofs = dofs;
  out.eigenvalues.assign(es.eigenvalues().data(), es.eigenvalues().data() + k + 1);
  int n = (int)mesh.vertices.size();
  out.eigenvectors.resize(n, k + 1);
  for (int j = 0; j <= k; ++j) {
    Eigen::VectorXd ub = es.eigenvectors().col(j);
    Eigen::VectorXd ui = sys.extension.size() > 0 ? Eigen::VectorXd(sys.extension * ub)
                                                  : Eigen::VectorXd(0);
    Eigen::VectorXd full(n);
    for (int i = 0; i < nb; ++i) full[sys.dofs[i]] = ub[i];
    for (size_t i = 0; i < sys.interior.size(); ++i) full[sys.interior[i]] = ui[(int)i];
    // deterministic sign: largest-magnitude boundary entry positive
    int arg = 0;
    for (int i = 1; i < nb; ++i) {
      if (std::abs(ub[i]) > std::abs(ub[arg]) + 1e-300) arg = i;
    }
    if (ub[arg] < 0) full = -full;
    out.eigenvectors.col(j) = full;
  }
  out.clusters = cluster_multiplicities(out.eigenvalues, cluster_rel_tol);
  out.cluster_of.assign(out.eigenvalues.size(), 0);
  for (size_t c = 0; c < out.clusters.size(); ++c) {
    for (int j = 0; j < out.clusters[c].multiplicity; ++j) {
      out.cluster_of[out.clusters[c].first_index + j] = (int)c;
    }
  }
  return out;
}

}  // namespace

DensitySpec DensitySpec::uniform(const Mesh& mesh) {
  DensitySpec d;
  d.gamma.assign(mesh.triangles.size(), 1.0);
  d.rho.resize(mesh.boundary.size());
  for (size_t e = 0; e < mesh.boundary.size(); ++e) {
    d.rho[e] = mesh.boundary[e].marker == Marker::Steklov ? 1.0 : 0.0;
  }
  return d;
}

void DensitySpec::validate(const Mesh& mesh) const {
  if (gamma.size() != mesh.triangles.size()) {
    reject("densities: gamma size does not match triangle count");
  }
  if (rho.size() != mesh.boundary.size()) {
    reject("densities: rho size does not match boundary edge count");
  }
  for (double g : gamma) {
    if (!(g > 0.0) || !std::isfinite(g)) reject("densities: gamma must be positive");
  }
  for (size_t e = 0; e < rho.size(); ++e) {
    if (!std::isfinite(rho[e])) reject("densities: rho must be finite");
    if (mesh.boundary[e].marker == Marker::Steklov) {
      if (!(rho[e] > 0.0)) reject("densities: rho must be positive on Steklov edges");
    } else if (rho[e] != 0.0) {
      reject("densities: rho must vanish on Neumann edges");
    }
  }
}

std::vector<Cluster> cluster_multiplicities(const std::vector<double>& values,
                                            double rel_tol) {
  if (!(rel_tol >= 0.0)) reject("cluster_multiplicities: rel_tol must be nonnegative");
  for (size_t i = 1; i < values.size(); ++i) {
    if (values[i] < values[i - 1]) {
      reject("cluster_multiplicities: values must be ascending");
    }
  }
  std::vector<Cluster> out;
  size_t i = 0;
  while (i < values.size()) {
    size_t j = i + 1;
    while (j < values.size() &&
           values[j] - values[j - 1] <= rel_tol * std::max(1.0, std::abs(values[j]))) {
      ++j;
    }
    Cluster c;
    c.first_index = (int)i;
    c.multiplicity = (int)(j - i);
    double sum = 0.0;
    for (size_t t = i; t < j; ++t) sum += values[t];
    c.value = sum / (double)(j - i);
    out.push_back(c);
    i = j;
  }
  return out;
}

Eigen::SparseMatrix<double> assemble_stiffness(const Mesh& mesh, const DensitySpec& d) {
  int n = (int)mesh.vertices.size();
  std::vector<Eigen::Triplet<double>> trip;
  trip.reserve(mesh.triangles.size() * 9);
  for (size_t t = 0; t < mesh.triangles.size(); ++t) {
    const auto& tr = mesh.triangles[t];
    Vec2 p0 = mesh.vertices[tr[0]], p1 = mesh.vertices[tr[1]], p2 = mesh.vertices[tr[2]];
    double area2 = orient2d(p0, p1, p2);
    if (!(area2 > 0.0)) throw std::runtime_error("assemble_stiffness: degenerate triangle");
    // Gradients of the barycentric basis: grad l_i = perp(opposite edge)/area2.
    Vec2 g[3] = {{(p1.y - p2.y) / area2, (p2.x - p1.x) / area2},
                 {(p2.y - p0.y) / area2, (p0.x - p2.x) / area2},
                 {(p0.y - p1.y) / area2, (p1.x - p0.x) / area2}};
    double w = d.gamma[t] * 0.5 * area2;
    for (int i = 0; i < 3; ++i) {
      for (int j = 0; j < 3; ++j) {
        trip.emplace_back(tr[i], tr[j], w * dot(g[i], g[j]));
      }
    }
  }
  Eigen::SparseMatrix<double> K(n, n);
  K.setFromTriplets(trip.begin(), trip.end());
  return K;
}

Eigen::SparseMatrix<double> assemble_boundary_mass(const Mesh& mesh, const DensitySpec& d) {
  int n = (int)mesh.vertices.size();
  std::vector<Eigen::Triplet<double>> trip;
  for (size_t e = 0; e < mesh.boundary.size(); ++e) {
    const BoundaryEdge& be = mesh.boundary[e];
    if (be.marker != Marker::Steklov) continue;
    double len = dist(mesh.vertices[be.a], mesh.vertices[be.b]);
    double w = d.rho[e] * len;
    trip.emplace_back(be.a, be.a, w / 3.0);
    trip.emplace_back(be.b, be.b, w / 3.0);
    trip.emplace_back(be.a, be.b, w / 6.0);
    trip.emplace_back(be.b, be.a, w / 6.0);
  }
  Eigen::SparseMatrix<double> M(n, n);
  M.setFromTriplets(trip.begin(), trip.end());
  return M;
}

Eigen::MatrixXd dtn_reduce(const Eigen::SparseMatrix<double>& K,
                           const std::vector<int>& steklov_dofs) {
  // Standalone entry point: operates on the matrix alone, so the
  // connectivity diagnostic runs on the sparsity graph of K.
  int n = (int)K.rows();
  if (K.cols() != n) reject("dtn_reduce: matrix must be square");
  std::vector<int> role(n, -1);
  for (size_t i = 0; i < steklov_dofs.size(); ++i) {
    int v = steklov_dofs[i];
    if (v < 0 || v >= n) reject("dtn_reduce: dof out of range");
    if (role[v] >= 0) reject("dtn_reduce: repeated dof");
    role[v] = (int)i;
  }
  int nb = (int)steklov_dofs.size();
  std::vector<int> interior_slot(n, -1), interior;
  for (int v = 0; v < n; ++v) {
    if (role[v] < 0) {
      interior_slot[v] = (int)interior.size();
      interior.push_back(v);
    }
  }
  int ni = (int)interior.size();
  Eigen::MatrixXd Kbb = Eigen::MatrixXd::Zero(nb, nb);
  Eigen::SparseMatrix<double> Kii(ni, ni), Kib(ni, nb);
  std::vector<Eigen::Triplet<double>> tii, tib;
  for (int col = 0; col < K.outerSize(); ++col) {
    for (Eigen::SparseMatrix<double>::InnerIterator it(K, col); it; ++it) {
      int r = (int)it.row(), c = (int)it.col();
      double v = it.value();
      bool rb = role[r] >= 0, cb = role[c] >= 0;
      if (rb && cb) {
        Kbb(role[r], role[c]) += v;
      } else if (!rb && !cb) {
        tii.emplace_back(interior_slot[r], interior_slot[c], v);
      } else if (!rb && cb) {
        tib.emplace_back(interior_slot[r], role[c], v);
      }
    }
  }
  if (ni == 0) return Kbb;
  Kii.setFromTriplets(tii.begin(), tii.end());
  Kib.setFromTriplets(tib.begin(), tib.end());
  Eigen::SimplicialLDLT<Eigen::SparseMatrix<double>> ldlt(Kii);
  if (ldlt.info() != Eigen::Success) {
    throw std::runtime_error("dtn_reduce: interior stiffness factorization failed");
  }
  Eigen::VectorXd diag = ldlt.vectorD();
  if ((diag.array() <= 0.0).any()) {
    throw std::runtime_error(
        "dtn_reduce: interior stiffness block is not positive definite "
        "(a component of the mesh may carry no Steklov dof)");
  }
  Eigen::MatrixXd X = ldlt.solve(Eigen::MatrixXd(Kib));
  Eigen::MatrixXd S = Kbb - Eigen::MatrixXd(Kib.transpose()) * X;
  return 0.5 * (S + S.transpose());
}

SpectrumResult solve_steklov(const Mesh& mesh, const DensitySpec& d, int k,
                             double cluster_rel_tol) {
  return solve_impl(mesh, d, k, cluster_rel_tol);
}

SpectrumResult solve_steklov_neumann(const Mesh& mesh, const DensitySpec& d, int k,
                                     double cluster_rel_tol) {
  if (!mesh.has_marker(Marker::Steklov)) {
    reject("solve_steklov_neumann: mesh has no Steklov boundary edge");
  }
  return solve_impl(mesh, d, k, cluster_rel_tol);
}

}  // namespace steklab
