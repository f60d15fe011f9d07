#include "steklab/geometry.hpp"

#include <algorithm>

namespace steklab {

double orient2d(Vec2 a, Vec2 b, Vec2 c) {
  return (b.x - a.x) * (c.y - a.y) - (b.y - a.y) * (c.x - a.x);
}

namespace {

int filtered_sign(double det, double magnitude, double rel_band) {
  if (det > rel_band * magnitude) return 1;
  if (det < -rel_band * magnitude) return -1;
  return 0;
}

}  // namespace

int orient_sign(Vec2 a, Vec2 b, Vec2 c) {
  double det = orient2d(a, b, c);
  double mag = std::abs((b.x - a.x) * (c.y - a.y)) + std::abs((b.y - a.y) * (c.x - a.x));
  int s = filtered_sign(det, mag, 1e-12);
  if (s != 0 || mag == 0.0) return s;
  long double lx1 = (long double)b.x - a.x, ly1 = (long double)b.y - a.y;
  long double lx2 = (long double)c.x - a.x, ly2 = (long double)c.y - a.y;
  long double ld = lx1 * ly2 - ly1 * lx2;
  if (ld > (long double)1e-18 * mag) return 1;
  if (ld < (long double)-1e-18 * mag) return -1;
  return 0;
}

int incircle_sign(Vec2 a, Vec2 b, Vec2 c, Vec2 d) {
  double adx = a.x - d.x, ady = a.y - d.y;
  double bdx = b.x - d.x, bdy = b.y - d.y;
  double cdx = c.x - d.x, cdy = c.y - d.y;
  double ad2 = adx * adx + ady * ady;
  double bd2 = bdx * bdx + bdy * bdy;
  double cd2 = cdx * cdx + cdy * cdy;
  double det = adx * (bdy * cd2 - cdy * bd2) - ady * (bdx * cd2 - cdx * bd2) +
               ad2 * (bdx * cdy - cdx * bdy);
  double mag = std::abs(adx) * (std::abs(bdy) * cd2 + std::abs(cdy) * bd2) +
               std::abs(ady) * (std::abs(bdx) * cd2 + std::abs(cdx) * bd2) +
               ad2 * (std::abs(bdx) * std::abs(cdy) + std::abs(cdx) * std::abs(bdy));
  int s = filtered_sign(det, mag, 1e-11);
  if (s != 0 || mag == 0.0) return s;
  long double ladx = (long double)a.x - d.x, lady = (long double)a.y - d.y;
  long double lbdx = (long double)b.x - d.x, lbdy = (long double)b.y - d.y;
  long double lcdx = (long double)c.x - d.x, lcdy = (long double)c.y - d.y;
  long double lad2 = ladx * ladx + lady * lady;
  long double lbd2 = lbdx * lbdx + lbdy * lbdy;
  long double lcd2 = lcdx * lcdx + lcdy * lcdy;
  long double ld = ladx * (lbdy * lcd2 - lcdy * lbd2) - lady * (lbdx * lcd2 - lcdx * lbd2) +
                   lad2 * (lbdx * lcdy - lcdx * lbdy);
  if (ld > (long double)1e-17 * mag) return 1;
  if (ld < (long double)-1e-17 * mag) return -1;
  return 0;
}

double point_segment_distance(Vec2 p, Vec2 a, Vec2 b) {
  Vec2 ab = b - a;
  double len2 = dot(ab, ab);
  if (len2 == 0.0) return dist(p, a);
  double t = std::clamp(dot(p - a, ab) / len2, 0.0, 1.0);
  return dist(p, a + t * ab);
}

double segment_segment_distance(Vec2 a, Vec2 b, Vec2 c, Vec2 d) {
  if (segments_cross(a, b, c, d)) return 0.0;
  return std::min(std::min(point_segment_distance(a, c, d), point_segment_distance(b, c, d)),
                  std::min(point_segment_distance(c, a, b), point_segment_distance(d, a, b)));
}

bool segments_cross(Vec2 a, Vec2 b, Vec2 c, Vec2 d) {
  int s1 = orient_sign(a, b, c);
  int s2 = orient_sign(a, b, d);
  int s3 = orient_sign(c, d, a);
  int s4 = orient_sign(c, d, b);
  return s1 * s2 < 0 && s3 * s4 < 0;
}

int winding_number(const std::vector<Vec2>& loop, Vec2 p) {
  int wn = 0;
  size_t n = loop.size();
  for (size_t i = 0; i < n; ++i) {
    const Vec2& a = loop[i];
    const Vec2& b = loop[(i + 1) % n];
    if (a.y <= p.y) {
      if (b.y > p.y && orient_sign(a, b, p) > 0) ++wn;
    } else {
      if (b.y <= p.y && orient_sign(a, b, p) < 0) --wn;
    }
  }
  return wn;
}

double polygon_signed_area2(const std::vector<Vec2>& loop) {
  double s = 0.0;
  size_t n = loop.size();
  for (size_t i = 0; i < n; ++i) {
    const Vec2& a = loop[i];
    const Vec2& b = loop[(i + 1) % n];
    s += cross(a, b);
  }
  return s;
}

}  // namespace steklab
