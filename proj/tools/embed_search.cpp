// Search oracle that produces the frozen proper-embedding certificates:
//   k3: planar triangle, written directly
//   k5: exhaustive lexicographic search for K5 in the projective plane with a
//       pentagonal face (all five vertices on one face)
//   k6: seeded constrained sampling for K6 in the Klein bottle with faces
//       (125) and (346)
//   k8: corner-assignment backtracking for K8 on the orientable genus-2
//       surface with quadrilateral faces (5628) and (1347), all other faces
//       triangles; bounded by a node budget
// Outputs are deterministic for a fixed seed/budget.

#include <algorithm>
#include <array>
#include <cstdint>
#include <iostream>
#include <map>
#include <numeric>
#include <random>
#include <set>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "steklab/chromatic.hpp"
#include "steklab/io.hpp"

namespace {

using namespace steklab;

std::vector<int> neighbors_of(int v, int n) {
  std::vector<int> out;
  for (int w = 0; w < n; ++w) {
    if (w != v) out.push_back(w);
  }
  return out;
}

// All cyclic orders of `items` written with items[0] first.
std::vector<std::vector<int>> cyclic_orders(std::vector<int> items) {
  std::vector<int> rest(items.begin() + 1, items.end());
  std::sort(rest.begin(), rest.end());
  std::vector<std::vector<int>> out;
  do {
    std::vector<int> order{items[0]};
    order.insert(order.end(), rest.begin(), rest.end());
    out.push_back(order);
  } while (std::next_permutation(rest.begin(), rest.end()));
  return out;
}

bool cyclically_adjacent(const std::vector<int>& rot, int a, int b) {
  int k = (int)rot.size();
  for (int i = 0; i < k; ++i) {
    if (rot[i] == a && (rot[(i + 1) % k] == b || rot[(i + k - 1) % k] == b)) return true;
  }
  return false;
}

int successor(const std::vector<int>& rot, int of) {
  int k = (int)rot.size();
  for (int i = 0; i < k; ++i) {
    if (rot[i] == of) return rot[(i + 1) % k];
  }
  return -1;
}

EmbeddingCertificate make_k3() {
  EmbeddingCertificate cert;
  cert.rs.graph = SimpleGraph::complete(3);
  cert.rs.rotation = {{1, 2}, {0, 2}, {0, 1}};
  for (auto e : cert.rs.graph.edges) cert.rs.edge_sign[e] = 1;
  cert.removed_faces = {{0, 1, 2}};
  cert.claims = {2, true, 1};
  return cert;
}

// K5 in the projective plane: chi = 1, non-orientable, and one face passing
// through all five vertices; removing it puts every vertex on the boundary.
bool search_k5(EmbeddingCertificate& out) {
  SimpleGraph g = SimpleGraph::complete(5);
  std::vector<std::vector<std::vector<int>>> options(5);
  for (int v = 0; v < 5; ++v) options[v] = cyclic_orders(neighbors_of(v, 5));

  std::vector<std::pair<int, int>> free_edges;
  for (auto e : g.edges) {
    if (e.first != 0) free_edges.push_back(e);  // star at 0 fixed to +1
  }

  std::vector<int> choice(5, 0);
  while (true) {
    RotationSystem rs;
    rs.graph = g;
    rs.rotation.resize(5);
    for (int v = 0; v < 5; ++v) rs.rotation[v] = options[v][choice[v]];
    for (int mask = 0; mask < (1 << free_edges.size()); ++mask) {
      for (auto e : g.edges) rs.edge_sign[e] = 1;
      for (size_t i = 0; i < free_edges.size(); ++i) {
        if (mask & (1 << i)) rs.edge_sign[free_edges[i]] = -1;
      }
      std::vector<Face> faces = trace_faces(rs);
      if (faces.size() != 6) continue;  // need chi = 5 - 10 + F = 1
      SurfaceSignature sig = classify_surface(rs);
      if (sig.orientable) continue;
      const Face* pentagon = nullptr;
      for (const Face& f : faces) {
        if (f.size() == 5 && std::set<int>(f.begin(), f.end()).size() == 5) {
          pentagon = &f;
          break;
        }
      }
      if (!pentagon) continue;
      out.rs = rs;
      out.removed_faces = {*pentagon};
      out.claims = {1, false, 1};
      return true;
    }
    int v = 4;
    while (v >= 0 && ++choice[v] == (int)options[v].size()) choice[v--] = 0;
    if (v < 0) return false;
  }
}

// K6 in the Klein bottle with faces (125) and (346) (1-based). Rotations are
// sampled so those triangles close by construction (the pair of face
// neighbors sits adjacently in each rotation and the face edge signs are
// derived from the local turn directions); the other nine signs are sampled
// freely. Accepts the first sample with chi = 0, non-orientable.
bool search_k6(EmbeddingCertificate& out, std::uint64_t seed, int budget) {
  SimpleGraph g = SimpleGraph::complete(6);
  const std::array<std::array<int, 3>, 2> target{{{0, 1, 4}, {2, 3, 5}}};

  // Required adjacent pair at each vertex: predecessor and successor on its
  // target face.
  std::map<int, std::pair<int, int>> corner;
  for (const auto& f : target) {
    for (int i = 0; i < 3; ++i) corner[f[i]] = {f[(i + 2) % 3], f[(i + 1) % 3]};
  }
  std::vector<std::vector<std::vector<int>>> options(6);
  for (int v = 0; v < 6; ++v) {
    for (const auto& rot : cyclic_orders(neighbors_of(v, 6))) {
      if (cyclically_adjacent(rot, corner[v].first, corner[v].second)) {
        options[v].push_back(rot);
      }
    }
  }

  std::vector<std::pair<int, int>> face_edges, free_edges;
  for (const auto& f : target) {
    for (int i = 0; i < 3; ++i) {
      face_edges.push_back({std::min(f[i], f[(i + 1) % 3]), std::max(f[i], f[(i + 1) % 3])});
    }
  }
  for (auto e : g.edges) {
    if (std::find(face_edges.begin(), face_edges.end(), e) == face_edges.end()) {
      free_edges.push_back(e);
    }
  }

  std::mt19937_64 rng(seed);
  for (int iter = 0; iter < budget; ++iter) {
    RotationSystem rs;
    rs.graph = g;
    rs.rotation.resize(6);
    for (int v = 0; v < 6; ++v) {
      rs.rotation[v] = options[v][rng() % options[v].size()];
    }
    // Turn direction at each face corner: +1 if the walk continues with the
    // rotation successor, -1 with the predecessor. The edge signs making the
    // face close are products of consecutive turn directions.
    for (const auto& f : target) {
      std::array<int, 3> b;
      for (int i = 0; i < 3; ++i) {
        int prev = f[(i + 2) % 3], at = f[i], next = f[(i + 1) % 3];
        b[i] = (successor(rs.rotation[at], prev) == next) ? 1 : -1;
      }
      for (int i = 0; i < 3; ++i) {
        int u = f[i], v = f[(i + 1) % 3];
        rs.edge_sign[{std::min(u, v), std::max(u, v)}] = b[i] * b[(i + 1) % 3];
      }
    }
    for (auto e : free_edges) rs.edge_sign[e] = (rng() & 1) ? 1 : -1;

    std::vector<Face> faces = trace_faces(rs);
    if (faces.size() != 9) continue;  // chi = 6 - 15 + F = 0
    SurfaceSignature sig = classify_surface(rs);
    if (sig.orientable) continue;
    auto has_face = [&](const Face& want) {
      Face key = canonical_face(want, true);
      for (const Face& f : faces) {
        if (canonical_face(f, true) == key) return true;
      }
      return false;
    };
    if (!has_face({0, 1, 4}) || !has_face({2, 3, 5})) continue;
    out.rs = rs;
    out.removed_faces = {{0, 1, 4}, {2, 3, 5}};
    out.claims = {0, false, 2};
    return true;
  }
  return false;
}

// K8 on the closed orientable genus-2 surface: 18 faces, namely the two
// quadrilaterals (5628) and (1347) (1-based) and sixteen triangles. With all
// edge signs +1 the face through dart (u -> v) continues to the rotation
// successor of u at v, so the embedding is determined by one successor map
// per vertex; the search assigns successors corner by corner, forcing
// triangle closures, and backtracks under a node budget.
struct K8Search {
  static constexpr int N = 8;
  std::array<std::array<int, N>, N> succ;  // succ[v][u]: successor of u at v; -1 unset
  long long nodes = 0;
  long long budget;

  explicit K8Search(long long budget_) : budget(budget_) {
    for (auto& row : succ) row.fill(-1);
  }

  struct Assign {
    int v, u;
  };
  std::vector<Assign> trail;

  bool assign(int v, int u, int w) {
    if (u == v || w == v || u == w) return false;
    if (succ[v][u] != -1) return succ[v][u] == w;
    for (int x = 0; x < N; ++x) {
      if (succ[v][x] == w) return false;  // successor already taken
    }
    // Closing a cycle of the successor map at v is only allowed at full
    // length 7 (one rotation through all neighbors).
    int steps = 1;
    int cur = w;
    while (cur != -1 && cur != u && steps <= N) {
      cur = succ[v][cur];
      steps += 1;
    }
    if (cur == u && steps != N - 1) return false;
    succ[v][u] = w;
    trail.push_back({v, u});
    return true;
  }

  void rollback(size_t mark) {
    while (trail.size() > mark) {
      auto [v, u] = trail.back();
      trail.pop_back();
      succ[v][u] = -1;
    }
  }

  // Force the triangle face through dart (u -> v) -> (v -> w).
  bool close_triangle(int u, int v, int w) {
    return assign(v, u, w) && assign(w, v, u) && assign(u, w, v);
  }

  bool quad_done = false;

  bool solve() {
    if (++nodes > budget) return false;
    int bv = -1, bu = -1;
    for (int v = 0; v < N && bv < 0; ++v) {
      for (int u = 0; u < N; ++u) {
        if (u != v && succ[v][u] == -1) {
          bv = v;
          bu = u;
          break;
        }
      }
    }
    if (bv < 0) return true;  // every corner assigned
    for (int w = 0; w < N; ++w) {
      if (w == bv || w == bu) continue;
      size_t mark = trail.size();
      if (close_triangle(bu, bv, w) && solve()) return true;
      if (nodes > budget) return false;
      rollback(mark);
    }
    return false;
  }
};

bool search_k8(EmbeddingCertificate& out, long long budget) {
  const std::array<int, 4> quad_a{4, 5, 1, 7};  // (5628) 1-based
  const std::array<int, 4> quad_b{0, 2, 3, 6};  // (1347) 1-based
  for (int ra = 0; ra < 2; ++ra) {
    for (int rb = 0; rb < 2; ++rb) {
      K8Search s(budget);
      auto seed_quad = [&](std::array<int, 4> q, bool rev) {
        if (rev) std::reverse(q.begin(), q.end());
        bool ok = true;
        for (int i = 0; i < 4; ++i) {
          ok = ok && s.assign(q[(i + 1) % 4], q[i], q[(i + 2) % 4]);
        }
        return ok;
      };
      if (!seed_quad(quad_a, ra == 1) || !seed_quad(quad_b, rb == 1)) continue;
      if (!s.solve()) continue;

      RotationSystem rs;
      rs.graph = SimpleGraph::complete(8);
      rs.rotation.resize(8);
      for (int v = 0; v < 8; ++v) {
        int start = (v == 0) ? 1 : 0;
        int cur = start;
        for (int i = 0; i < 7; ++i) {
          rs.rotation[v].push_back(cur);
          cur = s.succ[v][cur];
        }
      }
      for (auto e : rs.graph.edges) rs.edge_sign[e] = 1;
      std::vector<Face> faces = trace_faces(rs);
      SurfaceSignature sig = classify_surface(rs);
      if ((int)faces.size() != 18 || sig.chi != -2 || !sig.orientable) continue;
      out.rs = rs;
      out.removed_faces = {{4, 5, 1, 7}, {0, 2, 3, 6}};
      out.claims = {-2, true, 2};
      return true;
    }
  }
  return false;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Proper-embedding certificate search"};
  std::string target, out_path;
  std::uint64_t seed = 20240811;
  long long budget = 50000000;
  app.add_option("--target", target, "k3|k5|k6|k8")->required();
  app.add_option("--out", out_path, "output certificate path")->required();
  app.add_option("--seed", seed, "sampling seed (k6)");
  app.add_option("--budget", budget, "node/sample budget (k6, k8)");
  CLI11_PARSE(app, argc, argv);

  try {
    EmbeddingCertificate cert;
    bool found = false;
    if (target == "k3") {
      cert = make_k3();
      found = true;
    } else if (target == "k5") {
      found = search_k5(cert);
    } else if (target == "k6") {
      found = search_k6(cert, seed, (int)std::min<long long>(budget, 1 << 30));
    } else if (target == "k8") {
      found = search_k8(cert, budget);
    } else {
      std::cerr << "error: unknown target '" << target << "'\n";
      return 2;
    }
    if (!found) {
      std::cerr << "search exhausted without finding a certificate for " << target << "\n";
      return 1;
    }
    if (!verify_proper(cert)) {
      std::cerr << "internal error: certificate is not proper\n";
      return 3;
    }
    save_certificate(cert, out_path);
    std::cout << "wrote " << out_path << "\n";
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
  return 0;
}
