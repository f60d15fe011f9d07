#include "steklab/tubular.hpp"

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <map>
#include <numbers>
#include <stdexcept>
#include <string>

#include "mesh_internal.hpp"

namespace steklab {

namespace {

[[noreturn]] void reject(const std::string& msg) { throw std::invalid_argument(msg); }
[[noreturn]] void broken(const std::string& msg) { throw std::runtime_error(msg); }

constexpr double kPi = std::numbers::pi;

// Minimum angular clearance (radians) between ports, and between a port and a
// diameter endpoint, beyond the half-angle asin(epsilon/r) each port occupies.
constexpr double kPortMargin = 0.05;

double wrap_2pi(double a) {
  a = std::fmod(a, 2.0 * kPi);
  if (a < 0) a += 2.0 * kPi;
  return a;
}

Vec2 unit_at(double angle) { return {std::cos(angle), std::sin(angle)}; }

// Quantized coordinate key used to glue identical points across pieces.
// Shared points are computed once and reused, so they match bit-for-bit;
// distinct mesh points are separated by a sizable fraction of the mesh size.
std::pair<long long, long long> point_key(Vec2 p) {
  return {std::llround(p.x * 1e9), std::llround(p.y * 1e9)};
}

struct Piece {
  std::vector<Vec2> verts;
  std::vector<std::array<int, 3>> tris;
  double gamma = 1.0;
};

struct EdgeGeometry {
  int a = 0, b = 0;          // graph endpoints, a < b
  double strip_length = 0.0; // chord-to-chord length of the strip
  std::vector<Vec2> chord_a; // chord subdivision points on the a side
  std::vector<Vec2> chord_b; // same points translated to the b side
};

struct Port {
  double psi;                 // angular position in the half-disk frame
  const std::vector<Vec2>* chord;
  int other;                  // graph vertex at the far end
};

}  // namespace

std::vector<Vec2> polygon_layout(int n, double circumradius) {
  if (n < 1) reject("polygon_layout: need at least one vertex");
  if (!(circumradius > 0)) reject("polygon_layout: circumradius must be positive");
  std::vector<Vec2> pts;
  pts.reserve(n);
  for (int i = 0; i < n; ++i) {
    double t = 2.0 * kPi * i / n;
    pts.push_back({circumradius * std::cos(t), circumradius * std::sin(t)});
  }
  return pts;
}

TubularDomain build_tubular_domain(const MetricGraph& graph, const TubularParams& params) {
  graph.validate();
  if (!graph.connected()) reject("build_tubular_domain: graph must be connected");
  for (double v : graph.potential) {
    if (v != 0.0) {
      reject("build_tubular_domain: graph potentials are not representable by the "
             "neighborhood construction");
    }
  }
  const int n = graph.n;
  const double eps = params.epsilon;
  const double r = params.disk_radius;
  if (!(eps > 0)) reject("build_tubular_domain: epsilon must be positive");
  if (!(r > eps)) reject("build_tubular_domain: disk_radius must exceed epsilon");
  if (!(params.mesh_h > 0)) reject("build_tubular_domain: mesh size must be positive");
  if ((int)params.layout.size() != n) {
    reject("build_tubular_domain: layout must supply one position per vertex");
  }
  for (const Vec2& p : params.layout) {
    if (!std::isfinite(p.x) || !std::isfinite(p.y)) {
      reject("build_tubular_domain: layout coordinates must be finite");
    }
  }
  const std::vector<double> mu = graph.mu_or_default();
  const double h = std::min(params.mesh_h, eps / 2.0);
  const double clearance = h;
  const auto& P = params.layout;

  auto vertex_pair = [&](int x, int y) {
    return "vertices " + std::to_string(x) + " and " + std::to_string(y);
  };

  // --- geometric feasibility -----------------------------------------------
  const double rho = std::sqrt(r * r - eps * eps);
  const double alpha = std::asin(eps / r);
  std::map<std::pair<int, int>, int> edge_index;
  for (size_t e = 0; e < graph.edges.size(); ++e) {
    int a = std::min(graph.edges[e].u, graph.edges[e].v);
    int b = std::max(graph.edges[e].u, graph.edges[e].v);
    edge_index[{a, b}] = (int)e;
  }
  for (int x = 0; x < n; ++x) {
    for (int y = x + 1; y < n; ++y) {
      double d = dist(P[x], P[y]);
      if (edge_index.count({x, y})) {
        // Full disks must stay disjoint and leave room for a real strip.
        if (d < 2.0 * r + clearance) {
          reject("build_tubular_domain: strip between " + vertex_pair(x, y) +
                 " is too short for the disk radius; move the vertices apart");
        }
      } else if (d < 2.0 * r + clearance) {
        reject("build_tubular_domain: half-disks of non-adjacent " + vertex_pair(x, y) +
               " overlap");
      }
    }
  }
  for (size_t e = 0; e < graph.edges.size(); ++e) {
    int a = graph.edges[e].u, b = graph.edges[e].v;
    for (int z = 0; z < n; ++z) {
      if (z == a || z == b) continue;
      if (point_segment_distance(P[z], P[a], P[b]) < r + eps + clearance) {
        reject("build_tubular_domain: strip between " + vertex_pair(a, b) +
               " passes through the half-disk of vertex " + std::to_string(z));
      }
    }
    for (size_t f = e + 1; f < graph.edges.size(); ++f) {
      int c = graph.edges[f].u, d = graph.edges[f].v;
      if (a == c || a == d || b == c || b == d) continue;  // handled by port angles
      if (segment_segment_distance(P[a], P[b], P[c], P[d]) < 2.0 * eps + clearance) {
        reject("build_tubular_domain: strips between " + vertex_pair(a, b) + " and " +
               vertex_pair(c, d) + " overlap; the layout is not a plane drawing");
      }
    }
  }

  // --- edge strips ----------------------------------------------------------
  std::vector<EdgeGeometry> egeo(graph.edges.size());
  std::vector<Piece> pieces;
  for (size_t e = 0; e < graph.edges.size(); ++e) {
    int a = std::min(graph.edges[e].u, graph.edges[e].v);
    int b = std::max(graph.edges[e].u, graph.edges[e].v);
    Vec2 u = normalized(P[b] - P[a]);
    Vec2 w = perp(u);
    Vec2 sa = P[a] + rho * u;
    Vec2 sb = P[b] - rho * u;
    double L = dist(P[a], P[b]) - 2.0 * rho;
    if (L < 2.0 * h) {
      reject("build_tubular_domain: strip between " + vertex_pair(a, b) +
             " is shorter than two mesh cells");
    }
    int n_w = std::max(2, (int)std::lround(2.0 * eps / h));
    int n_l = std::max(2, (int)std::ceil(L / h));
    EdgeGeometry& g = egeo[e];
    g.a = a;
    g.b = b;
    g.strip_length = L;
    for (int j = 0; j <= n_w; ++j) {
      double off = eps * (2.0 * j / n_w - 1.0);
      g.chord_a.push_back(sa + off * w);
      g.chord_b.push_back(sb + off * w);
    }

    Piece strip;
    // Conductance across the strip should be 1/l_e, so that the limit
    // Laplacian carries the metric edge length rather than the drawn length.
    strip.gamma = L / (2.0 * eps * graph.edges[e].length);
    auto gid = [&](int i, int j) { return i * (n_w + 1) + j; };
    for (int i = 0; i <= n_l; ++i) {
      double t = double(i) / n_l;
      for (int j = 0; j <= n_w; ++j) {
        strip.verts.push_back(g.chord_a[j] + t * (g.chord_b[j] - g.chord_a[j]));
      }
    }
    // Row 0 and row n_l reuse the exact chord points.
    for (int j = 0; j <= n_w; ++j) {
      strip.verts[gid(0, j)] = g.chord_a[j];
      strip.verts[gid(n_l, j)] = g.chord_b[j];
    }
    for (int i = 0; i < n_l; ++i) {
      for (int j = 0; j < n_w; ++j) {
        strip.tris.push_back({gid(i, j), gid(i + 1, j), gid(i + 1, j + 1)});
        strip.tris.push_back({gid(i, j), gid(i + 1, j + 1), gid(i, j + 1)});
      }
    }
    pieces.push_back(std::move(strip));
  }

  // --- vertex half-disks ----------------------------------------------------
  const double halfdisk_gamma = (r / eps) * (r / eps);
  std::vector<std::vector<std::pair<Vec2, Vec2>>> diam_segments(n);
  for (int x = 0; x < n; ++x) {
    std::vector<double> angles;
    std::vector<int> incident;
    for (size_t e = 0; e < graph.edges.size(); ++e) {
      int other = -1;
      if (graph.edges[e].u == x) other = graph.edges[e].v;
      if (graph.edges[e].v == x) other = graph.edges[e].u;
      if (other < 0) continue;
      Vec2 d = P[other] - P[x];
      angles.push_back(wrap_2pi(std::atan2(d.y, d.x)));
      incident.push_back((int)e);
    }
    // The flat side points into the widest angular gap between incident edges.
    double out_angle = -kPi / 2.0;
    if (!angles.empty()) {
      std::vector<int> order(angles.size());
      for (size_t i = 0; i < order.size(); ++i) order[i] = (int)i;
      std::sort(order.begin(), order.end(),
                [&](int i, int j) { return angles[i] < angles[j]; });
      double best_gap = -1.0, best_mid = 0.0;
      for (size_t i = 0; i < order.size(); ++i) {
        double a0 = angles[order[i]];
        double a1 = angles[order[(i + 1) % order.size()]];
        double gap = (order.size() == 1) ? 2.0 * kPi : wrap_2pi(a1 - a0);
        if (gap > best_gap + 1e-12) {
          best_gap = gap;
          best_mid = a0 + gap / 2.0;
        }
      }
      out_angle = wrap_2pi(best_mid);
    }
    const double base_angle = out_angle + kPi / 2.0;  // direction of psi = 0
    const Vec2 d_start = P[x] + r * unit_at(base_angle);       // psi = 0
    const Vec2 d_end = P[x] + r * unit_at(base_angle + kPi);   // psi = pi

    std::vector<Port> ports;
    for (size_t i = 0; i < incident.size(); ++i) {
      int e = incident[i];
      Port p;
      p.psi = wrap_2pi(angles[i] - base_angle);
      p.chord = (egeo[e].a == x) ? &egeo[e].chord_a : &egeo[e].chord_b;
      p.other = (egeo[e].a == x) ? egeo[e].b : egeo[e].a;
      if (p.psi < alpha + kPortMargin || p.psi > kPi - alpha - kPortMargin) {
        reject("build_tubular_domain: port toward vertex " + std::to_string(p.other) +
               " falls outside the round side of the half-disk of vertex " +
               std::to_string(x));
      }
      ports.push_back(p);
    }
    std::sort(ports.begin(), ports.end(),
              [](const Port& p, const Port& q) { return p.psi < q.psi; });
    for (size_t i = 1; i < ports.size(); ++i) {
      if (ports[i].psi - ports[i - 1].psi < 2.0 * alpha + kPortMargin) {
        reject("build_tubular_domain: at vertex " + std::to_string(x) +
               ", the strips toward vertices " + std::to_string(ports[i - 1].other) +
               " and " + std::to_string(ports[i].other) +
               " meet at too small an angle for this epsilon");
      }
    }

    // Outline: psi = 0 diameter end, arc pieces alternating with port chords,
    // psi = pi diameter end, then the subdivided diameter back to the start.
    // Chord points are reused verbatim from the edge strips so the glued mesh
    // is conforming.
    std::vector<Vec2> outline;
    outline.push_back(d_start);
    double prev_psi = 0.0;
    auto emit_arc_interior = [&](double from, double to) {
      double span = to - from;
      int n_seg = std::max(1, (int)std::ceil(r * span / h));
      for (int s = 1; s < n_seg; ++s) {
        outline.push_back(P[x] + r * unit_at(base_angle + from + span * s / n_seg));
      }
    };
    for (const Port& p : ports) {
      emit_arc_interior(prev_psi, p.psi - alpha);
      // Orient the chord so the outline keeps increasing in psi.
      const std::vector<Vec2>& c = *p.chord;
      Vec2 front_rel = c.front() - P[x];
      double psi_front = wrap_2pi(std::atan2(front_rel.y, front_rel.x) - base_angle);
      bool forward = std::abs(psi_front - (p.psi - alpha)) < alpha;
      if (forward) {
        outline.insert(outline.end(), c.begin(), c.end());
      } else {
        outline.insert(outline.end(), c.rbegin(), c.rend());
      }
      prev_psi = p.psi + alpha;
    }
    emit_arc_interior(prev_psi, kPi);
    outline.push_back(d_end);
    int n_d = std::max(2, (int)std::ceil(2.0 * r / h));
    std::vector<Vec2> diam_points;
    diam_points.push_back(d_end);
    for (int s = 1; s < n_d; ++s) {
      Vec2 q = d_end + (double(s) / n_d) * (d_start - d_end);
      outline.push_back(q);
      diam_points.push_back(q);
    }
    diam_points.push_back(d_start);
    for (int s = 0; s < n_d; ++s) {
      diam_segments[x].push_back({diam_points[s], diam_points[s + 1]});
    }

    Mesh hd = cdt_polygon_region({outline}, h);
    Piece piece;
    piece.verts = hd.vertices;
    piece.tris = hd.triangles;
    piece.gamma = halfdisk_gamma;
    pieces.push_back(std::move(piece));
  }

  // --- glue -----------------------------------------------------------------
  TubularDomain dom;
  Mesh& m = dom.mesh;
  std::map<std::pair<long long, long long>, int> global_id;
  std::vector<double> tri_gamma;
  for (const Piece& piece : pieces) {
    std::vector<int> remap(piece.verts.size());
    for (size_t i = 0; i < piece.verts.size(); ++i) {
      auto key = point_key(piece.verts[i]);
      auto [it, inserted] = global_id.try_emplace(key, (int)m.vertices.size());
      if (inserted) m.vertices.push_back(piece.verts[i]);
      remap[i] = it->second;
    }
    for (const auto& t : piece.tris) {
      m.triangles.push_back({remap[t[0]], remap[t[1]], remap[t[2]]});
      tri_gamma.push_back(piece.gamma);
    }
  }

  // Diameter lookup: undirected quantized endpoint pair -> graph vertex.
  std::map<std::pair<std::pair<long long, long long>, std::pair<long long, long long>>, int>
      diam_owner;
  for (int x = 0; x < n; ++x) {
    for (const auto& [p, q] : diam_segments[x]) {
      auto kp = point_key(p), kq = point_key(q);
      diam_owner[{std::min(kp, kq), std::max(kp, kq)}] = x;
    }
  }

  // Boundary edges: edges used by exactly one triangle, directed as they
  // occur in that triangle (domain on the left).
  std::map<std::pair<int, int>, int> use_count;
  std::map<std::pair<int, int>, std::array<int, 2>> first_directed;
  for (const auto& t : m.triangles) {
    for (int i = 0; i < 3; ++i) {
      int a = t[i], b = t[(i + 1) % 3];
      std::pair<int, int> key{std::min(a, b), std::max(a, b)};
      use_count[key] += 1;
      if (use_count[key] == 1) first_directed[key] = {a, b};
    }
  }
  std::vector<int> edge_owner;  // graph vertex for Steklov edges, -1 otherwise
  for (const auto& [key, cnt] : use_count) {
    if (cnt > 2) broken("build_tubular_domain: non-manifold edge after gluing");
    if (cnt != 1) continue;
    auto [a, b] = first_directed[key];
    auto ka = point_key(m.vertices[a]), kb = point_key(m.vertices[b]);
    auto it = diam_owner.find({std::min(ka, kb), std::max(ka, kb)});
    if (it != diam_owner.end()) {
      m.boundary.push_back({a, b, Marker::Steklov, -1});
      edge_owner.push_back(it->second);
    } else {
      m.boundary.push_back({a, b, Marker::Neumann, -1});
      edge_owner.push_back(-1);
    }
  }

  // Trace boundary loops and number the components in first-seen order.
  std::map<int, int> next_from;
  for (size_t i = 0; i < m.boundary.size(); ++i) {
    if (!next_from.emplace(m.boundary[i].a, (int)i).second) {
      broken("build_tubular_domain: boundary is not a disjoint union of loops");
    }
  }
  int component = 0;
  for (size_t i = 0; i < m.boundary.size(); ++i) {
    if (m.boundary[i].component >= 0) continue;
    int e = (int)i;
    while (m.boundary[e].component < 0) {
      m.boundary[e].component = component;
      auto it = next_from.find(m.boundary[e].b);
      if (it == next_from.end()) broken("build_tubular_domain: open boundary loop");
      e = it->second;
    }
    component += 1;
  }

  int n_d_check = std::max(2, (int)std::ceil(2.0 * r / h));
  std::vector<int> per_vertex(n, 0);
  dom.diameter_edges.assign(n, {});
  for (size_t i = 0; i < m.boundary.size(); ++i) {
    if (edge_owner[i] >= 0) {
      per_vertex[edge_owner[i]] += 1;
      dom.diameter_edges[edge_owner[i]].push_back((int)i);
    }
  }
  for (int x = 0; x < n; ++x) {
    if (per_vertex[x] != n_d_check) {
      broken("build_tubular_domain: diameter of vertex " + std::to_string(x) +
             " was not preserved by meshing");
    }
  }

  m.validate();
  if (m.steklov_segment_count() != n) {
    broken("build_tubular_domain: expected one Steklov segment per graph vertex");
  }

  dom.densities.gamma = std::move(tri_gamma);
  dom.densities.rho.assign(m.boundary.size(), 0.0);
  for (size_t i = 0; i < m.boundary.size(); ++i) {
    if (edge_owner[i] >= 0) {
      dom.densities.rho[i] = mu[edge_owner[i]] / (2.0 * r);
    }
  }
  dom.densities.validate(m);
  return dom;
}

ConvergenceStudy convergence_study(const MetricGraph& graph, const TubularParams& base,
                                   const std::vector<double>& epsilons, int count) {
  graph.validate();
  if (count < 1 || count > graph.n) {
    reject("convergence_study: eigenvalue count must be between 1 and the vertex count");
  }
  if (epsilons.empty()) reject("convergence_study: need at least one epsilon");
  for (size_t i = 0; i < epsilons.size(); ++i) {
    if (!(epsilons[i] > 0) || !(epsilons[i] < base.disk_radius)) {
      reject("convergence_study: epsilon values must lie in (0, disk_radius)");
    }
    if (i > 0 && !(epsilons[i] < epsilons[i - 1])) {
      reject("convergence_study: epsilon values must be strictly decreasing");
    }
  }
  GraphSpectrum gs = graph_spectrum(graph);

  ConvergenceStudy study;
  for (double eps : epsilons) {
    TubularParams p = base;
    p.epsilon = eps;
    p.mesh_h = std::min(base.mesh_h, eps / 2.0);
    TubularDomain dom = build_tubular_domain(graph, p);
    SpectrumResult sr = solve_steklov_neumann(dom.mesh, dom.densities, count - 1);
    for (int k = 0; k < count; ++k) {
      study.rows.push_back({eps, k, sr.eigenvalues[k], gs.eigenvalues[k],
                            std::abs(sr.eigenvalues[k] - gs.eigenvalues[k])});
    }
  }
  return study;
}

}  // namespace steklab
