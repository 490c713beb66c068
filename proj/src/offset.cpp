#include "strgraph/offset.hpp"

namespace strgraph {

Point unit_inf(const Point& dir) {
  Rational n = norm_inf(dir);
  return {dir.x / n, dir.y / n};
}

Point left_normal(const Point& dir) { return unit_inf(Point{-dir.y, dir.x}); }

Point offset_vertex(const Polyline& c, std::size_t i, const Rational& d) {
  const auto& v = c.vertices();
  std::size_t n = v.size();
  if (i == 0) return v[0] + d * left_normal(v[1] - v[0]);
  if (i == n - 1) return v[n - 1] + d * left_normal(v[n - 1] - v[n - 2]);
  Point d1 = v[i] - v[i - 1];
  Point d2 = v[i + 1] - v[i];
  Point m1 = left_normal(d1);
  Point m2 = left_normal(d2);
  Rational den = cross(d1, d2);
  if (sgn(den) == 0) return v[i] + d * m2;
  Point w = d * (m2 - m1);
  Rational s = cross(w, d2) / den;
  return v[i] + d * m1 + s * d1;
}

std::vector<Point> offset_vertices(const Polyline& c, const Rational& d) {
  std::vector<Point> out;
  out.reserve(c.size());
  for (std::size_t i = 0; i < c.size(); ++i) out.push_back(offset_vertex(c, i, d));
  return out;
}

Point lane_point(const Polyline& c, const CurvePosition& pos, const Rational& d) {
  Segment s = c.segment(pos.segment);
  return lerp(s.a, s.b, pos.t) + d * left_normal(s.b - s.a);
}

Polyline double_curve(const Polyline& c, const Rational& d) {
  std::vector<Point> pts = c.vertices();
  std::vector<Point> back = offset_vertices(c, d);
  pts.insert(pts.end(), back.rbegin(), back.rend());
  return Polyline(std::move(pts));
}

}  // namespace strgraph
