#include "steklab/mesh.hpp"

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <functional>
#include <map>
#include <numbers>
#include <set>
#include <stdexcept>

#include "mesh_internal.hpp"
#include "triangulate.hpp"

namespace steklab {

namespace {

[[noreturn]] void reject(const std::string& msg) { throw std::invalid_argument(msg); }
[[noreturn]] void broken(const std::string& msg) { throw std::runtime_error(msg); }

constexpr double kPi = std::numbers::pi;

std::pair<int, int> undirected(int a, int b) { return {std::min(a, b), std::max(a, b)}; }

// --- structured polar templates -------------------------------------------

Mesh disk_template(const Circle& c, double h) {
  int n_theta = std::max(8, (int)std::ceil(2.0 * kPi * c.radius / h));
  int n_r = std::max(2, (int)std::ceil(c.radius / h));
  Mesh m;
  m.vertices.push_back(c.center);
  for (int j = 1; j <= n_r; ++j) {
    double r = c.radius * j / n_r;
    for (int i = 0; i < n_theta; ++i) {
      double t = 2.0 * kPi * i / n_theta;
      m.vertices.push_back(c.center + Vec2{r * std::cos(t), r * std::sin(t)});
    }
  }
  auto ring = [&](int j, int i) { return 1 + (j - 1) * n_theta + (i % n_theta); };
  for (int i = 0; i < n_theta; ++i) {
    m.triangles.push_back({0, ring(1, i), ring(1, i + 1)});
  }
  for (int j = 1; j < n_r; ++j) {
    for (int i = 0; i < n_theta; ++i) {
      m.triangles.push_back({ring(j, i), ring(j + 1, i), ring(j + 1, i + 1)});
      m.triangles.push_back({ring(j, i), ring(j + 1, i + 1), ring(j, i + 1)});
    }
  }
  for (int i = 0; i < n_theta; ++i) {
    m.boundary.push_back({ring(n_r, i), ring(n_r, i + 1), Marker::Steklov, 0});
  }
  return m;
}

Mesh annulus_template(const Circle& outer, double r_in, double h) {
  double r_out = outer.radius;
  int n_theta = std::max(8, (int)std::ceil(2.0 * kPi * r_out / h));
  int n_r = std::max(2, (int)std::ceil((r_out - r_in) / h));
  Mesh m;
  for (int j = 0; j <= n_r; ++j) {
    double r = r_in + (r_out - r_in) * j / n_r;
    for (int i = 0; i < n_theta; ++i) {
      double t = 2.0 * kPi * i / n_theta;
      m.vertices.push_back(outer.center + Vec2{r * std::cos(t), r * std::sin(t)});
    }
  }
  auto ring = [&](int j, int i) { return j * n_theta + (i % n_theta); };
  for (int j = 0; j < n_r; ++j) {
    for (int i = 0; i < n_theta; ++i) {
      m.triangles.push_back({ring(j, i), ring(j + 1, i), ring(j + 1, i + 1)});
      m.triangles.push_back({ring(j, i), ring(j + 1, i + 1), ring(j, i + 1)});
    }
  }
  for (int i = 0; i < n_theta; ++i) {
    m.boundary.push_back({ring(n_r, i), ring(n_r, i + 1), Marker::Steklov, 0});
  }
  for (int i = 0; i < n_theta; ++i) {
    m.boundary.push_back({ring(0, i + 1), ring(0, i), Marker::Steklov, 1});
  }
  return m;
}

// --- generic constrained-Delaunay path ------------------------------------

std::vector<Vec2> sample_shape(const Shape& shape, double h) {
  std::vector<Vec2> loop;
  if (const Circle* c = std::get_if<Circle>(&shape)) {
    int n = std::max(8, (int)std::ceil(2.0 * kPi * c->radius / h));
    for (int i = 0; i < n; ++i) {
      double t = 2.0 * kPi * i / n;
      loop.push_back(c->center + Vec2{c->radius * std::cos(t), c->radius * std::sin(t)});
    }
    return loop;
  }
  const PolygonShape& poly = std::get<PolygonShape>(shape);
  size_t n = poly.points.size();
  if (n < 3) reject("build_domain: polygon needs at least three points");
  for (size_t i = 0; i < n; ++i) {
    Vec2 a = poly.points[i];
    Vec2 b = poly.points[(i + 1) % n];
    if (!(dist(a, b) > 0.0)) reject("build_domain: polygon has a zero-length side");
    for (size_t j = i + 1; j < n; ++j) {
      if (segments_cross(a, b, poly.points[j], poly.points[(j + 1) % n])) {
        reject("build_domain: polygon outline crosses itself");
      }
    }
  }
  for (size_t i = 0; i < n; ++i) {
    Vec2 a = poly.points[i];
    Vec2 b = poly.points[(i + 1) % n];
    int parts = std::max(1, (int)std::ceil(dist(a, b) / h));
    for (int s = 0; s < parts; ++s) {
      loop.push_back(a + (double(s) / parts) * (b - a));
    }
  }
  return loop;
}

double jitter_unit(std::uint64_t row, std::uint64_t col, std::uint64_t salt) {
  std::uint64_t x = row * 0x9E3779B97F4A7C15ULL ^ col * 0xBF58476D1CE4E5B9ULL ^
                    salt * 0x94D049BB133111EBULL;
  x ^= x >> 30;
  x *= 0xBF58476D1CE4E5B9ULL;
  x ^= x >> 27;
  x *= 0x94D049BB133111EBULL;
  x ^= x >> 31;
  return (double)(x >> 11) / (double)(1ULL << 53) - 0.5;
}

}  // namespace

Mesh cdt_polygon_region(const std::vector<std::vector<Vec2>>& loops, double h) {
  // loops[0] = outer, loops[i>0] = holes.
  TriangulationInput input;
  std::map<std::pair<int, int>, int> segment_loop;
  for (size_t li = 0; li < loops.size(); ++li) {
    int first = (int)input.points.size();
    int count = (int)loops[li].size();
    for (const Vec2& p : loops[li]) input.points.push_back(p);
    for (int i = 0; i < count; ++i) {
      int a = first + i, b = first + (i + 1) % count;
      input.segments.push_back({a, b});
      segment_loop[undirected(a, b)] = (int)li;
    }
  }

  auto inside_region = [&](Vec2 p) {
    if (winding_number(loops[0], p) == 0) return false;
    for (size_t li = 1; li < loops.size(); ++li) {
      if (winding_number(loops[li], p) != 0) return false;
    }
    return true;
  };
  auto boundary_clearance = [&](Vec2 p) {
    double d = 1e300;
    for (const auto& loop : loops) {
      size_t n = loop.size();
      for (size_t i = 0; i < n; ++i) {
        d = std::min(d, point_segment_distance(p, loop[i], loop[(i + 1) % n]));
      }
    }
    return d;
  };

  double lo_x = 1e300, lo_y = 1e300, hi_x = -1e300, hi_y = -1e300;
  for (const Vec2& p : loops[0]) {
    lo_x = std::min(lo_x, p.x);
    lo_y = std::min(lo_y, p.y);
    hi_x = std::max(hi_x, p.x);
    hi_y = std::max(hi_y, p.y);
  }
  double row_step = h * std::sqrt(3.0) / 2.0;
  int rows = (int)std::ceil((hi_y - lo_y) / row_step) + 1;
  int cols = (int)std::ceil((hi_x - lo_x) / h) + 1;
  for (int r = 0; r <= rows; ++r) {
    double y = lo_y + r * row_step;
    double x0 = lo_x + ((r % 2 == 1) ? 0.5 * h : 0.0);
    for (int c = 0; c <= cols; ++c) {
      Vec2 p{x0 + c * h + 0.06 * h * jitter_unit(r, c, 1),
             y + 0.06 * h * jitter_unit(r, c, 2)};
      if (!inside_region(p)) continue;
      if (boundary_clearance(p) < 0.65 * h) continue;
      input.points.push_back(p);
    }
  }

  TriangulationResult tri = triangulate_constrained(input);

  std::vector<std::array<int, 3>> kept;
  for (const auto& t : tri.triangles) {
    Vec2 c = (1.0 / 3.0) *
             (input.points[t[0]] + input.points[t[1]] + input.points[t[2]]);
    if (inside_region(c)) kept.push_back(t);
  }
  if (kept.empty()) reject("triangulation: domain is empty at this mesh size");

  std::vector<int> remap(input.points.size(), -1);
  Mesh m;
  for (auto& t : kept) {
    for (int& v : t) {
      if (remap[v] < 0) {
        remap[v] = (int)m.vertices.size();
        m.vertices.push_back(input.points[v]);
      }
      v = remap[v];
    }
    m.triangles.push_back(t);
  }

  // Boundary edges = edges incident to exactly one kept triangle; they must
  // coincide with the input segments.
  std::map<std::pair<int, int>, std::array<int, 2>> first_directed;
  std::map<std::pair<int, int>, int> use_count;
  for (const auto& t : m.triangles) {
    for (int i = 0; i < 3; ++i) {
      int a = t[i], b = t[(i + 1) % 3];
      auto key = undirected(a, b);
      use_count[key] += 1;
      if (use_count[key] == 1) first_directed[key] = {a, b};
    }
  }
  std::vector<int> back(m.vertices.size(), -1);
  for (size_t i = 0; i < remap.size(); ++i) {
    if (remap[i] >= 0) back[remap[i]] = (int)i;
  }
  for (const auto& [key, cnt] : use_count) {
    if (cnt == 1) {
      auto [a, b] = first_directed[key];
      auto it = segment_loop.find(undirected(back[a], back[b]));
      if (it == segment_loop.end()) {
        broken("triangulation boundary does not follow the input outline");
      }
      m.boundary.push_back({a, b, Marker::Steklov, it->second});
    } else if (cnt != 2) {
      broken("non-manifold edge in triangulation");
    }
  }
  return m;
}

namespace {

// --- domain input validation ------------------------------------------------

struct ShapeInfo {
  std::vector<Vec2> loop;  // sampled, outer ccw / holes cw
  std::string label;
};

double loop_loop_distance(const std::vector<Vec2>& a, const std::vector<Vec2>& b) {
  double d = 1e300;
  size_t na = a.size(), nb = b.size();
  for (size_t i = 0; i < na; ++i) {
    for (size_t j = 0; j < nb; ++j) {
      d = std::min(d, segment_segment_distance(a[i], a[(i + 1) % na], b[j], b[(j + 1) % nb]));
    }
  }
  return d;
}

}  // namespace

Mesh build_domain(const DomainSpec& spec) {
  if (!(spec.target_h > 0.0)) reject("build_domain: target_h must be positive");
  const double h = spec.target_h;

  if (const Circle* outer = std::get_if<Circle>(&spec.outer)) {
    if (!(outer->radius > 0.0)) reject("build_domain: outer radius must be positive");
    if (h > outer->radius) reject("build_domain: target_h too coarse for the outer circle");
    if (spec.holes.empty()) {
      Mesh m = disk_template(*outer, h);
      m.validate();
      return m;
    }
    if (spec.holes.size() == 1) {
      if (const Circle* hole = std::get_if<Circle>(&spec.holes[0])) {
        if (dist(hole->center, outer->center) <= 1e-12) {
          if (!(hole->radius > 0.0) || hole->radius >= outer->radius) {
            reject("build_domain: hole must be strictly inside the outer circle");
          }
          if (h > outer->radius - hole->radius) {
            reject("build_domain: target_h too coarse for the annular gap");
          }
          Mesh m = annulus_template(*outer, hole->radius, h);
          m.validate();
          return m;
        }
      }
    }
  }

  // Generic path: sample every shape, orient, validate pairwise separation.
  std::vector<ShapeInfo> shapes;
  {
    ShapeInfo outer;
    outer.loop = sample_shape(spec.outer, h);
    outer.label = "outer";
    if (polygon_signed_area2(outer.loop) < 0) {
      std::reverse(outer.loop.begin(), outer.loop.end());
    }
    shapes.push_back(std::move(outer));
  }
  for (size_t i = 0; i < spec.holes.size(); ++i) {
    ShapeInfo hole;
    hole.loop = sample_shape(spec.holes[i], h);
    hole.label = "hole " + std::to_string(i);
    if (polygon_signed_area2(hole.loop) > 0) {
      std::reverse(hole.loop.begin(), hole.loop.end());
    }
    shapes.push_back(std::move(hole));
  }

  for (size_t i = 1; i < shapes.size(); ++i) {
    for (const Vec2& p : shapes[i].loop) {
      if (winding_number(shapes[0].loop, p) == 0) {
        reject("build_domain: " + shapes[i].label + " is not inside the outer shape");
      }
    }
    for (size_t j = 1; j < shapes.size(); ++j) {
      if (i == j) continue;
      if (winding_number(shapes[j].loop, shapes[i].loop.front()) != 0) {
        reject("build_domain: " + shapes[i].label + " overlaps " + shapes[j].label);
      }
    }
  }
  for (size_t i = 0; i < shapes.size(); ++i) {
    for (size_t j = i + 1; j < shapes.size(); ++j) {
      double d = loop_loop_distance(shapes[i].loop, shapes[j].loop);
      if (d == 0.0) {
        reject("build_domain: " + shapes[i].label + " overlaps " + shapes[j].label);
      }
      if (d < 2.0 * h) {
        reject("build_domain: target_h too coarse to separate " + shapes[i].label +
               " and " + shapes[j].label);
      }
    }
  }

  std::vector<std::vector<Vec2>> loops;
  for (auto& s : shapes) loops.push_back(std::move(s.loop));
  Mesh m = cdt_polygon_region(loops, h);
  m.validate();
  return m;
}

Mesh refine_uniform(const Mesh& mesh) {
  Mesh out;
  out.vertices = mesh.vertices;
  std::map<std::pair<int, int>, int> midpoint;
  auto mid = [&](int a, int b) {
    auto key = undirected(a, b);
    auto it = midpoint.find(key);
    if (it != midpoint.end()) return it->second;
    int idx = (int)out.vertices.size();
    out.vertices.push_back(0.5 * (mesh.vertices[a] + mesh.vertices[b]));
    midpoint.emplace(key, idx);
    return idx;
  };
  for (const auto& t : mesh.triangles) {
    int m01 = mid(t[0], t[1]), m12 = mid(t[1], t[2]), m20 = mid(t[2], t[0]);
    out.triangles.push_back({t[0], m01, m20});
    out.triangles.push_back({t[1], m12, m01});
    out.triangles.push_back({t[2], m20, m12});
    out.triangles.push_back({m01, m12, m20});
  }
  for (const auto& e : mesh.boundary) {
    int m = mid(e.a, e.b);
    out.boundary.push_back({e.a, m, e.marker, e.component});
    out.boundary.push_back({m, e.b, e.marker, e.component});
  }
  return out;
}

int euler_characteristic(const Mesh& mesh) {
  std::set<std::pair<int, int>> edges;
  for (const auto& t : mesh.triangles) {
    for (int i = 0; i < 3; ++i) {
      edges.insert(undirected(t[i], t[(i + 1) % 3]));
    }
  }
  return mesh.num_vertices() - (int)edges.size() + mesh.num_triangles();
}

void mark_boundary(Mesh& mesh, const std::map<int, Marker>& assignment) {
  int components = mesh.boundary_component_count();
  for (const auto& [id, marker] : assignment) {
    (void)marker;
    if (id < 0 || id >= components) {
      reject("mark_boundary: unknown boundary component " + std::to_string(id));
    }
  }
  std::vector<Marker> next;
  next.reserve(mesh.boundary.size());
  for (const auto& e : mesh.boundary) {
    auto it = assignment.find(e.component);
    next.push_back(it == assignment.end() ? e.marker : it->second);
  }
  bool any_steklov = false;
  for (Marker m : next) any_steklov |= (m == Marker::Steklov);
  if (!any_steklov) {
    reject("mark_boundary: assignment leaves no Steklov edge");
  }
  for (size_t i = 0; i < mesh.boundary.size(); ++i) mesh.boundary[i].marker = next[i];
}

double Mesh::triangle_area(int t) const {
  const auto& tr = triangles[t];
  return 0.5 * orient2d(vertices[tr[0]], vertices[tr[1]], vertices[tr[2]]);
}

int Mesh::boundary_component_count() const {
  int c = -1;
  for (const auto& e : boundary) c = std::max(c, e.component);
  return c + 1;
}

std::vector<int> Mesh::steklov_vertices() const {
  std::set<int> s;
  for (const auto& e : boundary) {
    if (e.marker == Marker::Steklov) {
      s.insert(e.a);
      s.insert(e.b);
    }
  }
  return std::vector<int>(s.begin(), s.end());
}

bool Mesh::has_marker(Marker m) const {
  for (const auto& e : boundary) {
    if (e.marker == m) return true;
  }
  return false;
}

int Mesh::steklov_segment_count() const {
  // successor edge index at each boundary vertex
  std::map<int, int> out_edge;
  for (size_t i = 0; i < boundary.size(); ++i) out_edge[boundary[i].a] = (int)i;
  int runs = 0;
  for (const auto& e : boundary) {
    if (e.marker != Marker::Steklov) continue;
    auto it = out_edge.find(e.b);
    bool continues = it != out_edge.end() && boundary[it->second].marker == Marker::Steklov;
    if (!continues) ++runs;  // count each run at its last edge
  }
  // fully-Steklov loops have no run end; count them separately
  std::map<int, std::pair<int, int>> comp_stats;  // component -> (steklov, total)
  for (const auto& e : boundary) {
    auto& st = comp_stats[e.component];
    st.second += 1;
    if (e.marker == Marker::Steklov) st.first += 1;
  }
  int closed_loops = 0;
  for (const auto& [comp, st] : comp_stats) {
    (void)comp;
    if (st.first == st.second && st.first > 0) ++closed_loops;
  }
  return runs + closed_loops;
}

void Mesh::validate() const {
  if (vertices.size() < 3) broken("mesh: fewer than three vertices");
  for (const Vec2& p : vertices) {
    if (!std::isfinite(p.x) || !std::isfinite(p.y)) broken("mesh: non-finite vertex");
  }
  // duplicate vertices within 1e-12
  {
    std::map<std::pair<long long, long long>, std::vector<int>> cells;
    const double q = 1e12;
    for (int i = 0; i < (int)vertices.size(); ++i) {
      long long cx = (long long)std::llround(vertices[i].x * q);
      long long cy = (long long)std::llround(vertices[i].y * q);
      for (long long dx = -1; dx <= 1; ++dx) {
        for (long long dy = -1; dy <= 1; ++dy) {
          auto it = cells.find({cx + dx, cy + dy});
          if (it == cells.end()) continue;
          for (int j : it->second) {
            if (dist(vertices[i], vertices[j]) <= 1e-12) {
              broken("mesh: duplicate vertices " + std::to_string(j) + " and " +
                     std::to_string(i));
            }
          }
        }
      }
      cells[{cx, cy}].push_back(i);
    }
  }
  std::vector<char> used(vertices.size(), 0);
  std::map<std::pair<int, int>, std::vector<std::pair<int, int>>> edge_tris;  // -> (tri, dir)
  for (int t = 0; t < (int)triangles.size(); ++t) {
    const auto& tr = triangles[t];
    for (int i = 0; i < 3; ++i) {
      if (tr[i] < 0 || tr[i] >= (int)vertices.size()) broken("mesh: triangle index range");
      used[tr[i]] = 1;
    }
    if (tr[0] == tr[1] || tr[1] == tr[2] || tr[2] == tr[0]) {
      broken("mesh: degenerate triangle " + std::to_string(t));
    }
    if (orient_sign(vertices[tr[0]], vertices[tr[1]], vertices[tr[2]]) <= 0) {
      broken("mesh: triangle " + std::to_string(t) + " is not ccw");
    }
    for (int i = 0; i < 3; ++i) {
      int a = tr[i], b = tr[(i + 1) % 3];
      edge_tris[undirected(a, b)].push_back({t, a < b ? +1 : -1});
    }
  }
  for (size_t i = 0; i < used.size(); ++i) {
    if (!used[i]) broken("mesh: isolated vertex " + std::to_string(i));
  }
  std::map<std::pair<int, int>, const BoundaryEdge*> boundary_by_edge;
  for (const auto& e : boundary) {
    if (e.a < 0 || e.a >= (int)vertices.size() || e.b < 0 || e.b >= (int)vertices.size()) {
      broken("mesh: boundary edge index range");
    }
    if (!boundary_by_edge.emplace(undirected(e.a, e.b), &e).second) {
      broken("mesh: repeated boundary edge");
    }
  }
  for (const auto& [key, inc] : edge_tris) {
    if (inc.size() == 1) {
      auto it = boundary_by_edge.find(key);
      if (it == boundary_by_edge.end()) {
        broken("mesh: edge with one triangle missing from the boundary list");
      }
      // orientation: the boundary edge must run as stored in its triangle
      const BoundaryEdge* be = it->second;
      const auto& tr = triangles[inc[0].first];
      bool found = false;
      for (int i = 0; i < 3; ++i) {
        if (tr[i] == be->a && tr[(i + 1) % 3] == be->b) found = true;
      }
      if (!found) broken("mesh: boundary edge oriented against its triangle");
    } else if (inc.size() == 2) {
      if (boundary_by_edge.count(key)) {
        broken("mesh: interior edge listed as boundary");
      }
      if (inc[0].second + inc[1].second != 0) {
        broken("mesh: inconsistent triangle orientations across an edge");
      }
    } else {
      broken("mesh: edge shared by more than two triangles");
    }
  }
  for (const auto& [key, be] : boundary_by_edge) {
    (void)be;
    if (edge_tris.find(key) == edge_tris.end()) {
      broken("mesh: boundary edge not part of any triangle");
    }
  }
  if (!boundary.empty()) {
    // loops: every boundary vertex has exactly one outgoing / one incoming edge
    std::map<int, int> out_edge, in_count;
    for (size_t i = 0; i < boundary.size(); ++i) {
      if (!out_edge.emplace(boundary[i].a, (int)i).second) {
        broken("mesh: boundary vertex with two outgoing edges");
      }
      in_count[boundary[i].b] += 1;
    }
    for (const auto& [v, c] : in_count) {
      (void)v;
      if (c != 1) broken("mesh: boundary vertex with two incoming edges");
    }
    std::vector<char> seen(boundary.size(), 0);
    std::set<int> component_ids;
    for (size_t i = 0; i < boundary.size(); ++i) {
      if (seen[i]) continue;
      int comp = boundary[i].component;
      component_ids.insert(comp);
      int cur = (int)i;
      int guard = 0;
      while (!seen[cur]) {
        seen[cur] = 1;
        if (boundary[cur].component != comp) {
          broken("mesh: boundary loop with mixed component ids");
        }
        auto it = out_edge.find(boundary[cur].b);
        if (it == out_edge.end()) broken("mesh: open boundary loop");
        cur = it->second;
        if (++guard > (int)boundary.size() + 1) broken("mesh: boundary walk stalled");
      }
      if (cur != (int)i) broken("mesh: boundary walk did not close");
    }
    int max_comp = *component_ids.rbegin();
    if ((int)component_ids.size() != max_comp + 1 || *component_ids.begin() != 0) {
      broken("mesh: boundary component ids are not 0..l-1");
    }
    // distinct loops must carry distinct ids
    std::map<int, int> loops_per_id;
    std::fill(seen.begin(), seen.end(), 0);
    for (size_t i = 0; i < boundary.size(); ++i) {
      if (seen[i]) continue;
      loops_per_id[boundary[i].component] += 1;
      int cur = (int)i;
      while (!seen[cur]) {
        seen[cur] = 1;
        cur = out_edge.at(boundary[cur].b);
      }
    }
    for (const auto& [id, n] : loops_per_id) {
      if (n != 1) {
        broken("mesh: component id " + std::to_string(id) + " used by " +
               std::to_string(n) + " loops");
      }
    }
  }
  // connectivity over triangle adjacency
  if (!triangles.empty()) {
    std::vector<int> parent(triangles.size());
    for (size_t i = 0; i < parent.size(); ++i) parent[i] = (int)i;
    std::function<int(int)> find = [&](int x) {
      while (parent[x] != x) x = parent[x] = parent[parent[x]];
      return x;
    };
    for (const auto& [key, inc] : edge_tris) {
      (void)key;
      if (inc.size() == 2) parent[find(inc[0].first)] = find(inc[1].first);
    }
    int root = find(0);
    for (size_t i = 1; i < triangles.size(); ++i) {
      if (find((int)i) != root) broken("mesh: disconnected triangulation");
    }
  }
}

}  // namespace steklab
