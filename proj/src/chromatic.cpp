#include "steklab/chromatic.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <set>
#include <stdexcept>
#include <tuple>

namespace steklab {

namespace {

[[noreturn]] void reject(const std::string& msg) { throw std::invalid_argument(msg); }
[[noreturn]] void broken(const std::string& msg) { throw std::runtime_error(msg); }

std::pair<int, int> ordered(int u, int v) { return {std::min(u, v), std::max(u, v)}; }

}  // namespace

// --- simple graphs ----------------------------------------------------------

void SimpleGraph::validate() const {
  if (n < 1) reject("graph must have at least one vertex");
  std::set<std::pair<int, int>> seen;
  for (auto [u, v] : edges) {
    if (u < 0 || v < 0 || u >= n || v >= n) reject("graph edge endpoint out of range");
    if (u >= v) reject("graph edges must be stored with u < v and no self-loops");
    if (!seen.insert({u, v}).second) reject("duplicate graph edge");
  }
}

std::vector<std::vector<int>> SimpleGraph::adjacency() const {
  std::vector<std::vector<int>> adj(n);
  for (auto [u, v] : edges) {
    adj[u].push_back(v);
    adj[v].push_back(u);
  }
  for (auto& a : adj) std::sort(a.begin(), a.end());
  return adj;
}

SimpleGraph SimpleGraph::complete(int n) {
  SimpleGraph g;
  g.n = n;
  for (int u = 0; u < n; ++u) {
    for (int v = u + 1; v < n; ++v) g.edges.push_back({u, v});
  }
  return g;
}

SimpleGraph SimpleGraph::cycle(int n) {
  SimpleGraph g;
  g.n = n;
  if (n < 3) reject("cycle graph needs at least three vertices");
  for (int i = 0; i + 1 < n; ++i) g.edges.push_back({i, i + 1});
  g.edges.push_back({0, n - 1});
  return g;
}

// --- rotation systems -------------------------------------------------------

void RotationSystem::validate() const {
  graph.validate();
  if ((int)rotation.size() != graph.n) {
    reject("rotation system must list a cyclic order for every vertex");
  }
  auto adj = graph.adjacency();
  for (int v = 0; v < graph.n; ++v) {
    std::vector<int> r = rotation[v];
    std::sort(r.begin(), r.end());
    if (r != adj[v]) {
      reject("rotation at vertex " + std::to_string(v) +
             " is not a permutation of its neighbors");
    }
  }
  if (edge_sign.size() != graph.edges.size()) {
    reject("rotation system must carry one sign per edge");
  }
  for (auto [u, v] : graph.edges) {
    auto it = edge_sign.find({u, v});
    if (it == edge_sign.end()) reject("missing edge sign");
    if (it->second != 1 && it->second != -1) reject("edge signs must be +1 or -1");
  }
}

int RotationSystem::sign(int u, int v) const { return edge_sign.at(ordered(u, v)); }

Face canonical_face(const Face& f, bool up_to_reflection) {
  if (f.empty()) reject("empty face");
  Face best;
  auto consider = [&](const Face& c) {
    size_t k = c.size();
    for (size_t s = 0; s < k; ++s) {
      Face rot(k);
      for (size_t i = 0; i < k; ++i) rot[i] = c[(s + i) % k];
      if (best.empty() || rot < best) best = rot;
    }
  };
  consider(f);
  if (up_to_reflection) {
    Face rev(f.rbegin(), f.rend());
    consider(rev);
  }
  return best;
}

std::vector<Face> trace_faces(const RotationSystem& rs) {
  rs.validate();
  const SimpleGraph& g = rs.graph;
  if (g.edges.empty()) reject("face tracing needs at least one edge");
  int E = (int)g.edges.size();

  // Dart 2e = u->v (u<v), dart 2e+1 = v->u. pos[v] maps a neighbor to its
  // index in rotation[v].
  std::vector<std::map<int, int>> pos(g.n);
  for (int v = 0; v < g.n; ++v) {
    for (size_t i = 0; i < rs.rotation[v].size(); ++i) pos[v][rs.rotation[v][i]] = (int)i;
  }
  std::map<std::pair<int, int>, int> edge_id;
  for (int e = 0; e < E; ++e) edge_id[g.edges[e]] = e;
  auto dart_id = [&](int from, int to) {
    auto key = ordered(from, to);
    return 2 * edge_id.at(key) + (from == key.first ? 0 : 1);
  };
  auto dart_from = [&](int d) {
    auto [u, v] = g.edges[d / 2];
    return (d % 2 == 0) ? std::pair<int, int>{u, v} : std::pair<int, int>{v, u};
  };

  // A slot is a dart together with the traversal orientation (+1 or -1).
  auto slot_id = [&](int dart, int s) { return 2 * dart + (s > 0 ? 0 : 1); };
  auto next_slot = [&](int slot) {
    int dart = slot / 2;
    int s = (slot % 2 == 0) ? 1 : -1;
    auto [x, y] = dart_from(dart);
    int s2 = s * rs.sign(x, y);
    const auto& rot = rs.rotation[y];
    int deg = (int)rot.size();
    int i = pos[y].at(x);
    int j = (s2 > 0) ? (i + 1) % deg : (i + deg - 1) % deg;
    return slot_id(dart_id(y, rot[j]), s2);
  };

  int n_slots = 4 * E;
  std::vector<int> orbit_of(n_slots, -1);
  std::vector<std::vector<int>> orbits;
  for (int s0 = 0; s0 < n_slots; ++s0) {
    if (orbit_of[s0] >= 0) continue;
    std::vector<int> orbit;
    int s = s0;
    while (orbit_of[s] < 0) {
      orbit_of[s] = (int)orbits.size();
      orbit.push_back(s);
      s = next_slot(s);
    }
    if (s != s0) broken("face tracing produced a non-cyclic orbit");
    orbits.push_back(std::move(orbit));
  }
  if (orbits.size() % 2 != 0) broken("odd number of face traversals");

  // Each face is traversed twice, once per orientation. The partner of a
  // traversal through slot (d, s) passes the reversed dart with orientation
  // -(s * sign(d)).
  std::vector<Face> faces;
  std::vector<char> emitted(orbits.size(), 0);
  for (size_t oi = 0; oi < orbits.size(); ++oi) {
    if (emitted[oi]) continue;
    int slot = orbits[oi][0];
    int dart = slot / 2;
    int s = (slot % 2 == 0) ? 1 : -1;
    auto [x, y] = dart_from(dart);
    int s2 = s * rs.sign(x, y);
    int partner_slot = slot_id(dart_id(y, x), -s2);
    int partner = orbit_of[partner_slot];
    if (partner == (int)oi || emitted[partner]) {
      broken("face traversals did not pair up");
    }
    emitted[oi] = emitted[partner] = 1;
    Face f;
    for (int sl : orbits[oi]) f.push_back(dart_from(sl / 2).first);
    faces.push_back(canonical_face(f, false));
  }

  size_t degree_sum = 0;
  for (const Face& f : faces) degree_sum += f.size();
  if (degree_sum != 2 * (size_t)E) broken("face degrees do not cover every edge twice");

  std::sort(faces.begin(), faces.end());
  return faces;
}

// --- surface classification -------------------------------------------------

void SurfaceSignature::validate() const {
  if (chi > 2) reject("Euler characteristic cannot exceed 2");
  if (orientable && chi % 2 != 0) reject("orientable surfaces have even Euler characteristic");
  if (p < 0) reject("boundary component count cannot be negative");
}

SurfaceSignature classify_surface(const RotationSystem& rs) {
  rs.validate();
  const SimpleGraph& g = rs.graph;
  auto adj = g.adjacency();
  std::vector<int> seen(g.n, 0);
  std::vector<int> stack{0};
  seen[0] = 1;
  int found = 1;
  while (!stack.empty()) {
    int v = stack.back();
    stack.pop_back();
    for (int w : adj[v]) {
      if (!seen[w]) {
        seen[w] = 1;
        found += 1;
        stack.push_back(w);
      }
    }
  }
  if (found != g.n) reject("classify_surface: graph must be connected");

  int F = (int)trace_faces(rs).size();
  SurfaceSignature sig;
  sig.chi = g.n - (int)g.edges.size() + F;
  sig.p = 0;

  // Orientable iff every cycle has positive sign product: try to switch
  // vertices so all edges become positive.
  std::vector<int> flip(g.n, 0);  // 0 unknown marker handled via visited array
  std::vector<int> visited(g.n, 0);
  bool balanced = true;
  for (int start = 0; start < g.n && balanced; ++start) {
    if (visited[start]) continue;
    visited[start] = 1;
    flip[start] = 1;
    std::vector<int> bfs{start};
    while (!bfs.empty() && balanced) {
      int v = bfs.back();
      bfs.pop_back();
      for (int w : adj[v]) {
        int want = flip[v] * rs.sign(v, w);
        if (!visited[w]) {
          visited[w] = 1;
          flip[w] = want;
          bfs.push_back(w);
        } else if (flip[w] != want) {
          balanced = false;
          break;
        }
      }
    }
  }
  sig.orientable = balanced;
  sig.validate();
  return sig;
}

// --- chromatic numbers ------------------------------------------------------

namespace {

int heawood(int chi) {
  return (int)std::floor((7.0 + std::sqrt(49.0 - 24.0 * chi)) / 2.0);
}

int lemma_bound(int chi, int p) {
  return (int)std::floor((5.0 + std::sqrt(25.0 - 24.0 * chi + 24.0 * p)) / 2.0);
}

}  // namespace

int chr_closed(const SurfaceSignature& closed_sig) {
  closed_sig.validate();
  if (closed_sig.p != 0) reject("chr_closed expects a closed surface");
  if (closed_sig.chi == 0 && !closed_sig.orientable) return 6;  // Klein bottle
  return heawood(closed_sig.chi);
}

std::pair<int, int> chr0_bounds(const SurfaceSignature& closed_sig, int p) {
  if (p < 1) reject("chr0_bounds requires at least one boundary component");
  int chr = chr_closed(closed_sig);
  int lo = chr - 1;
  int up = std::min(chr, lemma_bound(closed_sig.chi, p));
  if (p == 1) up = std::min(up, chr - 1);
  if (2 * p >= chr - 1) lo = chr;
  if (lo > up) broken("chromatic bounds crossed");
  return {lo, up};
}

namespace {

struct PropEntry {
  int chi;
  int orientable;  // 1 orientable, 0 non-orientable, -1 either
  int p;
  int value;
};

// Small-genus exact values established for specific (surface, p) pairs.
constexpr PropEntry kPropEntries[] = {
    {1, 0, 2, 5},    // projective plane, two holes
    {0, 0, 2, 6},    // Klein bottle, two holes
    {-1, 0, 2, 7},   // three crosscaps, two holes
    {-2, 1, 2, 8},   // two handles, two holes
    {-2, 0, 3, 8},   // four crosscaps, three holes
    {-3, -1, 3, 9},  // chi = -3, three holes
    {-4, -1, 3, 9},  // chi = -4, three holes
    {-5, -1, 4, 10}, // chi = -5, four holes
    {-6, 1, 3, 10},  // four handles, three holes
};

std::optional<int> exact_impl(int chi, bool orientable, int p,
                              std::map<std::tuple<int, int, int>, std::optional<int>>& memo) {
  auto key = std::make_tuple(chi, (int)orientable, p);
  auto it = memo.find(key);
  if (it != memo.end()) return it->second;

  SurfaceSignature sig{chi, orientable, 0};
  auto [lo, up] = chr0_bounds(sig, p);
  std::optional<int> result;
  if (lo == up) {
    result = lo;
  } else {
    for (const PropEntry& e : kPropEntries) {
      if (e.chi == chi && e.p == p &&
          (e.orientable == -1 || (e.orientable == 1) == orientable)) {
        if (e.value < lo || e.value > up) broken("tabulated chromatic value out of bounds");
        result = e.value;
      }
    }
  }
  if (!result) {
    // The value is non-decreasing in p and under connected sums, so any exact
    // value for fewer holes, or for a surface this one dominates, raises the
    // lower bound.
    int best = lo;
    for (int q = p - 1; q >= 1 && best < up; --q) {
      if (auto e = exact_impl(chi, orientable, q, memo)) best = std::max(best, *e);
    }
    std::vector<std::pair<int, bool>> subs;
    if (orientable) {
      for (int c2 = chi + 2; c2 <= 2; c2 += 2) subs.push_back({c2, true});
    } else {
      for (int c2 = chi + 1; c2 <= 1; ++c2) subs.push_back({c2, false});
      for (int c2 = chi + 1; c2 <= 2; ++c2) {
        if (c2 % 2 == 0) subs.push_back({c2, true});
      }
    }
    for (auto [c2, o2] : subs) {
      if (best >= up) break;
      if (auto e = exact_impl(c2, o2, p, memo)) best = std::max(best, *e);
    }
    if (best == up) result = up;
  }
  memo[key] = result;
  return result;
}

}  // namespace

std::optional<int> chr0_exact(const SurfaceSignature& closed_sig, int p) {
  if (p < 1) reject("chr0_exact requires at least one boundary component");
  closed_sig.validate();
  if (closed_sig.p != 0) reject("chr0_exact expects a closed surface plus a hole count");
  std::map<std::tuple<int, int, int>, std::optional<int>> memo;
  return exact_impl(closed_sig.chi, closed_sig.orientable, p, memo);
}

double min_degree_bound(int chi_bounded) {
  if (chi_bounded > 1) reject("min_degree_bound requires chi <= 1");
  return (3.0 + std::sqrt(25.0 - 24.0 * chi_bounded)) / 2.0;
}

// --- proper-embedding certificates -----------------------------------------

bool verify_proper(const EmbeddingCertificate& cert) {
  std::vector<Face> faces = trace_faces(cert.rs);
  std::map<Face, int> available;
  for (const Face& f : faces) available[canonical_face(f, true)] += 1;
  std::vector<char> on_boundary(cert.rs.graph.n, 0);
  for (const Face& f : cert.removed_faces) {
    Face key = canonical_face(f, true);
    auto it = available.find(key);
    if (it == available.end() || it->second == 0) {
      reject("a removed face is not a face of the embedding");
    }
    it->second -= 1;
    for (int v : f) {
      if (v < 0 || v >= cert.rs.graph.n) reject("removed face mentions an unknown vertex");
      on_boundary[v] = 1;
    }
  }
  for (int v = 0; v < cert.rs.graph.n; ++v) {
    if (!on_boundary[v]) return false;
  }
  return true;
}

// --- greedy coloring --------------------------------------------------------

ColoringResult greedy_color(const SimpleGraph& g, int c) {
  g.validate();
  if (c < 1) reject("need at least one color");
  auto adj = g.adjacency();
  std::vector<int> degree(g.n);
  for (int v = 0; v < g.n; ++v) degree[v] = (int)adj[v].size();
  std::vector<char> removed(g.n, 0);
  std::vector<int> order;  // removal order; colored back in reverse
  for (int step = 0; step < g.n; ++step) {
    int pick = -1;
    for (int v = 0; v < g.n; ++v) {
      if (!removed[v] && (pick < 0 || degree[v] < degree[pick])) pick = v;
    }
    removed[pick] = 1;
    order.push_back(pick);
    for (int w : adj[pick]) {
      if (!removed[w]) degree[w] -= 1;
    }
  }

  ColoringResult res;
  res.colors.assign(g.n, -1);
  for (int i = g.n - 1; i >= 0; --i) {
    int v = order[i];
    std::vector<char> used(c, 0);
    for (int w : adj[v]) {
      if (res.colors[w] >= 0 && res.colors[w] < c) used[res.colors[w]] = 1;
    }
    int chosen = -1;
    for (int col = 0; col < c; ++col) {
      if (!used[col]) {
        chosen = col;
        break;
      }
    }
    if (chosen < 0) {
      res.success = false;
      res.blocking_vertex = v;
      return res;
    }
    res.colors[v] = chosen;
  }
  res.success = true;
  return res;
}

// --- surface names ----------------------------------------------------------

SurfaceSignature parse_surface(const std::string& name) {
  if (name == "sphere") return {2, true, 0};
  if (name == "projective") return {1, false, 0};
  if (name == "klein") return {0, false, 0};
  if (name == "torus") return {0, true, 0};
  if (name == "genus2o") return {-2, true, 0};
  if (name.size() > 4 && name.rfind("sum", 0) == 0) {
    char kind = name.back();
    std::string num = name.substr(3, name.size() - 4);
    bool digits = !num.empty() &&
                  std::all_of(num.begin(), num.end(), [](char ch) { return ch >= '0' && ch <= '9'; });
    if (digits && (kind == 'P' || kind == 'T')) {
      int k = std::stoi(num);
      if (k >= 1) {
        if (kind == 'P') return {2 - k, false, 0};
        return {2 - 2 * k, true, 0};
      }
    }
  }
  reject("unknown surface '" + name +
         "'; expected sphere, projective, klein, torus, genus2o, sum<k>P, or sum<k>T");
}

}  // namespace steklab
