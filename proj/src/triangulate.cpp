#include "triangulate.hpp"

#include <algorithm>
#include <cmath>
#include <deque>
#include <map>
#include <set>
#include <stdexcept>
#include <string>

namespace steklab {

namespace {

struct Tri {
  std::array<int, 3> v;    // ccw
  std::array<int, 3> adj;  // adj[i] shares the edge opposite v[i], -1 at hull
  bool alive = true;
};

class Delaunay {
 public:
  explicit Delaunay(const std::vector<Vec2>& input) {
    pts.reserve(input.size() + 3);
    double lo_x = 1e300, lo_y = 1e300, hi_x = -1e300, hi_y = -1e300;
    for (const Vec2& p : input) {
      lo_x = std::min(lo_x, p.x);
      lo_y = std::min(lo_y, p.y);
      hi_x = std::max(hi_x, p.x);
      hi_y = std::max(hi_y, p.y);
    }
    double span = std::max({hi_x - lo_x, hi_y - lo_y, 1.0});
    double cx = 0.5 * (lo_x + hi_x), cy = 0.5 * (lo_y + hi_y);
    pts.push_back({cx - 40.0 * span, cy - 20.0 * span});
    pts.push_back({cx + 40.0 * span, cy - 20.0 * span});
    pts.push_back({cx, cy + 40.0 * span});
    tris.push_back({{0, 1, 2}, {-1, -1, -1}, true});
    for (const Vec2& p : input) insert(p);
  }

  void insert(Vec2 p) {
    int pi = (int)pts.size();
    pts.push_back(p);
    int t0 = locate(p);
    std::vector<int> cavity;
    std::vector<char> in_cavity(tris.size(), 0);
    std::vector<int> stack = {t0};
    in_cavity[t0] = 1;
    while (!stack.empty()) {
      int t = stack.back();
      stack.pop_back();
      cavity.push_back(t);
      for (int i = 0; i < 3; ++i) {
        int nb = tris[t].adj[i];
        if (nb < 0 || in_cavity[nb]) continue;
        const Tri& tn = tris[nb];
        if (incircle_sign(pts[tn.v[0]], pts[tn.v[1]], pts[tn.v[2]], p) > 0) {
          in_cavity[nb] = 1;
          stack.push_back(nb);
        }
      }
    }
    // Cavity boundary edges, oriented so the new point lies on their left.
    struct Rim {
      int a, b, outer;
    };
    std::vector<Rim> rim;
    for (int t : cavity) {
      for (int i = 0; i < 3; ++i) {
        int nb = tris[t].adj[i];
        if (nb >= 0 && in_cavity[nb]) continue;
        rim.push_back({tris[t].v[(i + 1) % 3], tris[t].v[(i + 2) % 3], nb});
      }
    }
    for (int t : cavity) tris[t].alive = false;
    std::map<int, int> start_to_tri;
    std::vector<int> fresh;
    fresh.reserve(rim.size());
    for (const Rim& r : rim) {
      int ti = alloc();
      tris[ti] = {{r.a, r.b, pi}, {-1, -1, -1}, true};
      tris[ti].adj[2] = r.outer;
      if (r.outer >= 0) {
        Tri& o = tris[r.outer];
        for (int i = 0; i < 3; ++i) {
          if ((o.v[(i + 1) % 3] == r.b && o.v[(i + 2) % 3] == r.a)) o.adj[i] = ti;
        }
      }
      if (!start_to_tri.emplace(r.a, ti).second) {
        throw std::runtime_error("triangulation: degenerate insertion cavity");
      }
      fresh.push_back(ti);
    }
    for (int ti : fresh) {
      int a = tris[ti].v[0], b = tris[ti].v[1];
      tris[ti].adj[0] = start_to_tri.at(b);  // neighbor across (b, pi)
      int prev = -1;
      for (int tj : fresh) {
        if (tris[tj].v[1] == a) prev = tj;
      }
      tris[ti].adj[1] = prev;  // neighbor across (pi, a)
    }
    last_alive = fresh.empty() ? last_alive : fresh.front();
  }

  int locate(Vec2 p) const {
    int t = last_alive;
    if (t < 0 || !tris[t].alive) t = first_alive();
    int guard = 0, limit = (int)tris.size() * 4 + 64;
    while (true) {
      if (++guard > limit) break;
      const Tri& tr = tris[t];
      int moved = -1;
      for (int i = 0; i < 3; ++i) {
        if (orient_sign(pts[tr.v[(i + 1) % 3]], pts[tr.v[(i + 2) % 3]], p) < 0) {
          if (tr.adj[i] >= 0) {
            moved = tr.adj[i];
            break;
          }
        }
      }
      if (moved < 0) return t;
      t = moved;
    }
    // Fallback: exhaustive containment scan.
    for (int i = 0; i < (int)tris.size(); ++i) {
      if (!tris[i].alive) continue;
      const Tri& tr = tris[i];
      if (orient_sign(pts[tr.v[0]], pts[tr.v[1]], p) >= 0 &&
          orient_sign(pts[tr.v[1]], pts[tr.v[2]], p) >= 0 &&
          orient_sign(pts[tr.v[2]], pts[tr.v[0]], p) >= 0) {
        return i;
      }
    }
    throw std::runtime_error("triangulation: point location failed");
  }

  bool edge_exists(int a, int b) const {
    for (int t = 0; t < (int)tris.size(); ++t) {
      if (!tris[t].alive) continue;
      for (int i = 0; i < 3; ++i) {
        if (tris[t].v[i] == a && tris[t].v[(i + 1) % 3] == b) return true;
        if (tris[t].v[i] == b && tris[t].v[(i + 1) % 3] == a) return true;
      }
    }
    return false;
  }

  // Index pair (triangle, corner) such that tris[t].v[corner] == a and the
  // segment a->b exits through the opposite edge.
  std::pair<int, int> find_exit(int a, int b) const {
    for (int t = 0; t < (int)tris.size(); ++t) {
      if (!tris[t].alive) continue;
      for (int i = 0; i < 3; ++i) {
        if (tris[t].v[i] != a) continue;
        int x = tris[t].v[(i + 1) % 3], y = tris[t].v[(i + 2) % 3];
        if (segments_cross(pts[a], pts[b], pts[x], pts[y])) return {t, i};
      }
    }
    throw std::runtime_error("triangulation: lost constrained segment " + std::to_string(a) +
                             "-" + std::to_string(b));
  }

  void recover_segment(int a, int b) {
    int rounds = 0;
    while (!edge_exists(a, b)) {
      if (++rounds > 200) {
        throw std::runtime_error("triangulation: segment recovery stalled");
      }
      auto [t, i] = find_exit(a, b);
      // March from a toward b, flipping the first flippable crossing edge.
      int cur = t;
      int ex = tris[t].v[(i + 1) % 3], ey = tris[t].v[(i + 2) % 3];
      bool flipped = false;
      int guard = 0;
      while (!flipped) {
        if (++guard > (int)tris.size() + 16) {
          throw std::runtime_error("triangulation: segment march stalled");
        }
        int nb = neighbor_across(cur, ex, ey);
        if (nb < 0) throw std::runtime_error("triangulation: segment march left hull");
        if (try_flip(cur, ex, ey)) {
          flipped = true;
          break;
        }
        // Advance into nb: next crossing edge is one of its other two edges.
        int z = apex(nb, ex, ey);
        if (z == b) {
          // Not flippable yet; restart the outer loop to pick a new path.
          break;
        }
        if (segments_cross(pts[a], pts[b], pts[ex], pts[z])) {
          cur = nb;
          ey = z;
        } else if (segments_cross(pts[a], pts[b], pts[z], pts[ey])) {
          cur = nb;
          ex = z;
        } else {
          throw std::runtime_error("triangulation: vertex lies on constrained segment");
        }
      }
    }
  }

  int neighbor_across(int t, int x, int y) const {
    for (int i = 0; i < 3; ++i) {
      int a = tris[t].v[(i + 1) % 3], b = tris[t].v[(i + 2) % 3];
      if ((a == x && b == y) || (a == y && b == x)) return tris[t].adj[i];
    }
    return -1;
  }

  int apex(int t, int x, int y) const {
    for (int i = 0; i < 3; ++i) {
      int v = tris[t].v[i];
      if (v != x && v != y) return v;
    }
    throw std::runtime_error("triangulation: malformed triangle");
  }

  // Flip the diagonal (x, y) shared by t and its neighbor when the resulting
  // quad is strictly convex. Returns false for non-convex configurations.
  bool try_flip(int t, int x, int y) {
    int nb = neighbor_across(t, x, y);
    if (nb < 0) return false;
    // Normalize: t = (a, b, c) with (a, b) = (x, y) as directed edge of t.
    int a = -1, bb = -1, c = -1;
    for (int i = 0; i < 3; ++i) {
      if (tris[t].v[i] == x && tris[t].v[(i + 1) % 3] == y) {
        a = x;
        bb = y;
        c = tris[t].v[(i + 2) % 3];
      } else if (tris[t].v[i] == y && tris[t].v[(i + 1) % 3] == x) {
        a = y;
        bb = x;
        c = tris[t].v[(i + 2) % 3];
      }
    }
    if (a < 0) return false;
    int d = apex(nb, a, bb);
    if (orient_sign(pts[c], pts[a], pts[d]) <= 0) return false;
    if (orient_sign(pts[d], pts[bb], pts[c]) <= 0) return false;
    int A = neighbor_across(t, bb, c);
    int B = neighbor_across(t, c, a);
    int C = neighbor_across(nb, a, d);
    int D = neighbor_across(nb, d, bb);
    tris[t] = {{c, a, d}, {C, nb, B}, true};
    tris[nb] = {{d, bb, c}, {A, t, D}, true};
    relink(A, bb, c, nb);
    relink(B, c, a, t);
    relink(C, a, d, t);
    relink(D, d, bb, nb);
    return true;
  }

  void relink(int t, int x, int y, int to) {
    if (t < 0) return;
    for (int i = 0; i < 3; ++i) {
      int a = tris[t].v[(i + 1) % 3], b = tris[t].v[(i + 2) % 3];
      if ((a == x && b == y) || (a == y && b == x)) tris[t].adj[i] = to;
    }
  }

  // Local Delaunay restoration that never flips constrained edges.
  void restore_delaunay(const std::set<std::pair<int, int>>& constrained) {
    for (int pass = 0; pass < 24; ++pass) {
      bool changed = false;
      for (int t = 0; t < (int)tris.size(); ++t) {
        if (!tris[t].alive) continue;
        for (int i = 0; i < 3; ++i) {
          int x = tris[t].v[(i + 1) % 3], y = tris[t].v[(i + 2) % 3];
          int nb = tris[t].adj[i];
          if (nb < 0 || nb < t) continue;
          if (constrained.count({std::min(x, y), std::max(x, y)})) continue;
          int z = apex(nb, x, y);
          if (incircle_sign(pts[tris[t].v[0]], pts[tris[t].v[1]], pts[tris[t].v[2]], pts[z]) >
              0) {
            if (try_flip(t, x, y)) {
              changed = true;
              break;
            }
          }
        }
      }
      if (!changed) return;
    }
  }

  int alloc() {
    tris.push_back({});
    return (int)tris.size() - 1;
  }

  int first_alive() const {
    for (int i = (int)tris.size() - 1; i >= 0; --i) {
      if (tris[i].alive) return i;
    }
    throw std::runtime_error("triangulation: empty");
  }

  std::vector<Vec2> pts;
  std::vector<Tri> tris;
  int last_alive = 0;
};

}  // namespace

TriangulationResult triangulate_constrained(const TriangulationInput& input) {
  if (input.points.size() < 3) {
    throw std::runtime_error("triangulation: need at least three points");
  }
  Delaunay dt(input.points);
  std::set<std::pair<int, int>> constrained;
  for (const auto& s : input.segments) {
    dt.recover_segment(s[0] + 3, s[1] + 3);
    constrained.insert({std::min(s[0], s[1]) + 3, std::max(s[0], s[1]) + 3});
  }
  dt.restore_delaunay(constrained);
  for (const auto& s : input.segments) {
    if (!dt.edge_exists(s[0] + 3, s[1] + 3)) {
      throw std::runtime_error("triangulation: constrained segment not recovered");
    }
  }
  TriangulationResult out;
  for (const auto& t : dt.tris) {
    if (!t.alive) continue;
    if (t.v[0] < 3 || t.v[1] < 3 || t.v[2] < 3) continue;
    out.triangles.push_back({t.v[0] - 3, t.v[1] - 3, t.v[2] - 3});
  }
  return out;
}

}  // namespace steklab
