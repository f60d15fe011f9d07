#include "steklab/nodal.hpp"

#include <algorithm>
#include <map>
#include <stdexcept>

namespace steklab {

NodalDecomposition nodal_domains(const Mesh& mesh, const Eigen::VectorXd& values,
                                 double zero_tol) {
  if ((int)values.size() != mesh.num_vertices()) {
    throw std::invalid_argument("nodal_domains: value vector does not match vertex count");
  }
  if (!(zero_tol >= 0.0)) {
    throw std::invalid_argument("nodal_domains: zero_tol must be nonnegative");
  }
  NodalDecomposition out;
  double scale = values.cwiseAbs().maxCoeff();
  if (scale == 0.0) {
    throw std::invalid_argument("nodal_domains: function is identically zero");
  }
  double band = zero_tol * scale;
  out.vertex_sign.resize(mesh.num_vertices());
  for (int v = 0; v < mesh.num_vertices(); ++v) {
    double x = values[v];
    out.vertex_sign[v] = std::abs(x) <= band ? 0 : (x > 0 ? +1 : -1);
  }
  std::vector<std::int8_t> tri_sign(mesh.num_triangles());
  for (int t = 0; t < mesh.num_triangles(); ++t) {
    int pos = 0, neg = 0;
    for (int v : mesh.triangles[t]) {
      if (out.vertex_sign[v] > 0) ++pos;
      if (out.vertex_sign[v] < 0) ++neg;
    }
    tri_sign[t] = (pos >= neg) ? +1 : -1;
  }
  // adjacency across shared edges
  std::map<std::pair<int, int>, std::pair<int, int>> edge_tri;
  std::vector<std::array<int, 3>> nbr(mesh.num_triangles(), {-1, -1, -1});
  for (int t = 0; t < mesh.num_triangles(); ++t) {
    const auto& tr = mesh.triangles[t];
    for (int i = 0; i < 3; ++i) {
      int a = tr[i], b = tr[(i + 1) % 3];
      auto key = std::minmax(a, b);
      auto it = edge_tri.find(key);
      if (it == edge_tri.end()) {
        edge_tri[key] = {t, i};
      } else {
        nbr[t][i] = it->second.first;
        nbr[it->second.first][it->second.second] = t;
      }
    }
  }
  out.triangle_domain.assign(mesh.num_triangles(), -1);
  for (int seed = 0; seed < mesh.num_triangles(); ++seed) {
    if (out.triangle_domain[seed] >= 0) continue;
    int id = out.domain_count++;
    out.domain_sign.push_back(tri_sign[seed]);
    std::vector<int> stack = {seed};
    out.triangle_domain[seed] = id;
    while (!stack.empty()) {
      int t = stack.back();
      stack.pop_back();
      for (int i = 0; i < 3; ++i) {
        int u = nbr[t][i];
        if (u < 0 || out.triangle_domain[u] >= 0 || tri_sign[u] != tri_sign[t]) continue;
        out.triangle_domain[u] = id;
        stack.push_back(u);
      }
    }
  }
  out.domain_touches_boundary.assign(out.domain_count, false);
  for (const auto& e : mesh.boundary) {
    auto key = std::minmax(e.a, e.b);
    auto it = edge_tri.find(key);
    if (it != edge_tri.end()) {
      out.domain_touches_boundary[out.triangle_domain[it->second.first]] = true;
    }
  }
  return out;
}

bool courant_check(const NodalDecomposition& d, int k) {
  return d.domain_count <= k + 1;
}

bool boundary_contact_check(const NodalDecomposition& d, const Mesh& mesh) {
  (void)mesh;
  for (bool touches : d.domain_touches_boundary) {
    if (!touches) return false;
  }
  return d.domain_count > 0;
}

}  // namespace steklab
