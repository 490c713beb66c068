#pragma once

#include <cstdint>
#include <map>
#include <random>
#include <stdexcept>
#include <vector>

#include "strgraph/representation.hpp"

namespace strgraph {

class NoodleError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Convex polygon, counter-clockwise.
using ConvexPolygon = std::vector<Point>;

bool polygon_contains(const ConvexPolygon& poly, const Point& q);
ConvexPolygon intersect_convex(const ConvexPolygon& a, const ConvexPolygon& b);
/// Segment swept by the square [-eps, eps]^2.
ConvexPolygon segment_tube(const Segment& s, const Rational& eps);

struct Zone {
  VertexPair pair;
  long index = 0;  // along pair.first
  Point crossing;
  CurvePosition on_first, on_second;
  ConvexPolygon region;
  std::size_t segment_first = 0;   // base segment of pair.first through the zone
  std::size_t segment_second = 0;  // base segment of pair.second
  CurvePosition first_lo, first_hi;    // extent projected on pair.first
  CurvePosition second_lo, second_hi;  // extent projected on pair.second
};

/// Noodles are unions of L-infinity tubes around base segments. With
/// 8 eps^2 < delta^2 tubes of non-crossing segments are disjoint, so the
/// noodles of a pair meet exactly in the zones.
struct NoodleSystem {
  Representation base;
  Rational epsilon;
  std::map<VertexId, std::vector<ConvexPolygon>> tubes;  // per base segment
  std::map<VertexPair, std::vector<Zone>> zones;

  bool in_noodle(const VertexId& v, const Point& q) const;
  const std::vector<Zone>& zones_of(const VertexId& u, const VertexId& v) const;
  std::size_t zone_count() const;
};

NoodleSystem build_noodles(const Representation& r, const Rational& epsilon);

enum class FragmentKind { traversal, reversal, terminal };
std::string to_string(FragmentKind k);

/// A connected piece of a confined curve inside one zone. Sides are the signs
/// of the entry and exit points relative to the other curve's base segment.
struct Fragment {
  VertexId curve;
  FragmentKind kind = FragmentKind::traversal;
  std::vector<Point> path;
  int entry_side = 0;
  int exit_side = 0;
};

struct ZoneFragments {
  long zone_index = 0;
  std::vector<Fragment> first;   // fragments of pair.first
  std::vector<Fragment> second;  // fragments of pair.second
};

struct FragmentReport {
  VertexPair pair;
  std::vector<ZoneFragments> zones;
};

/// Throws NoodleError when a confined curve leaves its noodle.
FragmentReport classify_fragments(const NoodleSystem& sys, const Representation& confined, const VertexId& u,
                                  const VertexId& v);

/// Proper crossings between two fragment paths.
long fragment_crossings(const Fragment& a, const Fragment& b);

enum class AreaClass { ambiguous, peripheral, central };
std::string to_string(AreaClass c);

struct CrossingAreaClass {
  VertexPair pair;
  std::map<VertexId, AreaClass> label;
};

CrossingAreaClass classify_crossing_area(const NoodleSystem& sys, const Representation& confined, const VertexId& u,
                                         const VertexId& v);

/// Per curve of the pair: does it have an endpoint in the crossing area? The pair must have exactly 2 zones.
std::map<VertexId, bool> covers(const NoodleSystem& sys, const Representation& confined, const VertexId& u,
                                const VertexId& v);

/// A curve built from runs along parallel lanes of a base curve: run i follows
/// lane lanes[i] from stops[i] to stops[i+1] (either direction) and
/// consecutive runs are joined by a short connector across the lanes. With
/// strictly monotone lanes the result is simple.
struct LanePlan {
  std::vector<Rational> lanes;
  std::vector<CurvePosition> stops;  // lanes.size() + 1 positions, none at a vertex
};

Polyline lane_curve(const Polyline& base, const LanePlan& plan);

/// Deterministic random perturbation of every base curve inside its noodle:
/// up to `max_folds` back-and-forth folds, some of them turning inside zones.
Representation perturb_confined(const NoodleSystem& sys, std::uint64_t seed, int max_folds);

}  // namespace strgraph
