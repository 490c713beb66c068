#pragma once

#include <vector>

#include "strgraph/geometry.hpp"

namespace strgraph {

/// Left normal of `dir`, scaled to unit L-infinity norm.
Point left_normal(const Point& dir);
/// `dir` scaled to unit L-infinity norm.
Point unit_inf(const Point& dir);

/// Vertices of the mitred parallel of `c` at signed offset d (d > 0 is left).
/// Vertex i of the result corresponds to vertex i of `c`.
std::vector<Point> offset_vertices(const Polyline& c, const Rational& d);

/// Mitre vertex at interior vertex i (or the end offset at i = 0 / last).
Point offset_vertex(const Polyline& c, std::size_t i, const Rational& d);

/// Point of the offset lane lying over the base position.
Point lane_point(const Polyline& c, const CurvePosition& pos, const Rational& d);

/// Out-and-return doubling: the curve, a short connector at its last vertex,
/// then its left parallel back to the start.
Polyline double_curve(const Polyline& c, const Rational& d);

}  // namespace strgraph
