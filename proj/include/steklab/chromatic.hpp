#pragma once

#include <map>
#include <optional>
#include <string>
#include <utility>
#include <vector>

namespace steklab {

// Simple undirected graph on vertices 0..n-1, edges stored with u < v.
struct SimpleGraph {
  int n = 0;
  std::vector<std::pair<int, int>> edges;

  void validate() const;
  std::vector<std::vector<int>> adjacency() const;

  static SimpleGraph complete(int n);
  static SimpleGraph cycle(int n);
};

// Cellular embedding of a graph in a closed surface: a cyclic order of
// neighbors around every vertex plus a sign per edge (-1 marks an
// orientation-reversing band). Faces are recovered by dart tracing.
struct RotationSystem {
  SimpleGraph graph;
  std::vector<std::vector<int>> rotation;     // rotation[v] = neighbors in cyclic order
  std::map<std::pair<int, int>, int> edge_sign;  // key (u<v) -> +1 or -1

  void validate() const;
  int sign(int u, int v) const;
};

// A face as the closed walk of vertices around it.
using Face = std::vector<int>;

// Lexicographically least representative over rotations, and optionally over
// the two traversal directions.
Face canonical_face(const Face& f, bool up_to_reflection);

// Traces the faces of the embedding. Every dart lies on exactly two traced
// face boundaries counted with sides; each face is reported once.
std::vector<Face> trace_faces(const RotationSystem& rs);

struct SurfaceSignature {
  int chi = 2;
  bool orientable = true;
  int p = 0;  // number of boundary components; 0 = closed surface

  void validate() const;
};

// Euler characteristic and orientability of the closed surface carrying the
// embedding. The graph must be connected.
SurfaceSignature classify_surface(const RotationSystem& rs);

// Chromatic number of the closed surface: the Heawood value
// floor((7+sqrt(49-24 chi))/2), except chi=0 non-orientable -> 6.
int chr_closed(const SurfaceSignature& closed_sig);

// Two-sided bound for the chromatic number of the surface with p open disks
// removed: it lies in [Chr-1, min(Chr, floor((5+sqrt(25-24 chi+24p))/2))],
// equals Chr-1 at p=1 and Chr once 2p >= Chr-1.
std::pair<int, int> chr0_bounds(const SurfaceSignature& closed_sig, int p);

// Exact value when the bounds collapse, when a hard-coded small-genus result
// applies, or when monotonicity (in p, and under connected sums) squeezes the
// bounds shut; absent otherwise.
std::optional<int> chr0_exact(const SurfaceSignature& closed_sig, int p);

// Degree bound (3+sqrt(25-24 chi))/2 for graphs properly embedded in a
// bounded surface of Euler characteristic chi (chi <= 1 required).
double min_degree_bound(int chi_bounded);

// Proper-embedding certificate: an embedding in a closed surface plus a list
// of faces whose removal puts every vertex on the boundary.
struct EmbeddingCertificate {
  RotationSystem rs;
  std::vector<Face> removed_faces;
  SurfaceSignature claims;  // chi/orientable of the closed surface, p = faces removed
};

// True iff every vertex lies on at least one removed face. Throws if a listed
// face is not a face of the traced embedding.
bool verify_proper(const EmbeddingCertificate& cert);

struct ColoringResult {
  bool success = false;
  std::vector<int> colors;      // color per vertex, -1 where uncolored
  int blocking_vertex = -1;     // vertex that could not be colored, on failure
};

// Smallest-last greedy coloring with at most c colors: repeatedly strip a
// minimum-degree vertex, then color the vertices back in reverse order.
ColoringResult greedy_color(const SimpleGraph& g, int c);

// Closed-surface names accepted on the command line: sphere, projective,
// klein, torus, genus2o, sum<k>P (k crosscaps), sum<k>T (k handles).
SurfaceSignature parse_surface(const std::string& name);

}  // namespace steklab
