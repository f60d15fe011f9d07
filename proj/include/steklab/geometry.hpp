#pragma once

#include <cmath>
#include <vector>

namespace steklab {

struct Vec2 {
  double x = 0.0;
  double y = 0.0;
};

inline Vec2 operator+(Vec2 a, Vec2 b) { return {a.x + b.x, a.y + b.y}; }
inline Vec2 operator-(Vec2 a, Vec2 b) { return {a.x - b.x, a.y - b.y}; }
inline Vec2 operator*(double s, Vec2 a) { return {s * a.x, s * a.y}; }
inline Vec2 operator*(Vec2 a, double s) { return {s * a.x, s * a.y}; }
inline double dot(Vec2 a, Vec2 b) { return a.x * b.x + a.y * b.y; }
inline double cross(Vec2 a, Vec2 b) { return a.x * b.y - a.y * b.x; }
inline double norm(Vec2 a) { return std::hypot(a.x, a.y); }
inline double dist(Vec2 a, Vec2 b) { return norm(a - b); }
inline Vec2 normalized(Vec2 a) {
  double n = norm(a);
  return {a.x / n, a.y / n};
}
// Counterclockwise rotation by 90 degrees.
inline Vec2 perp(Vec2 a) { return {-a.y, a.x}; }

// Twice the signed area of triangle (a, b, c); positive when counterclockwise.
double orient2d(Vec2 a, Vec2 b, Vec2 c);

// Sign of orient2d with a magnitude-scaled zero band and a long-double retry,
// so nearly-collinear triples are classified consistently.
int orient_sign(Vec2 a, Vec2 b, Vec2 c);

// Positive when d lies strictly inside the circumcircle of the ccw triangle
// (a, b, c), negative outside, zero within the filter band (treated as "on").
int incircle_sign(Vec2 a, Vec2 b, Vec2 c, Vec2 d);

double point_segment_distance(Vec2 p, Vec2 a, Vec2 b);
double segment_segment_distance(Vec2 a, Vec2 b, Vec2 c, Vec2 d);

// True when segments (a,b) and (c,d) cross at a single interior point of both.
bool segments_cross(Vec2 a, Vec2 b, Vec2 c, Vec2 d);

// Winding number of the closed polyline around p (nonzero = inside).
int winding_number(const std::vector<Vec2>& loop, Vec2 p);

// Twice the signed area of a closed polygon (ccw positive).
double polygon_signed_area2(const std::vector<Vec2>& loop);

}  // namespace steklab
