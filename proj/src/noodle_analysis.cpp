#include "strgraph/noodle_analysis.hpp"

#include <algorithm>
#include <set>

#include "strgraph/offset.hpp"

namespace strgraph {

namespace {

ConvexPolygon convex_hull(std::vector<Point> pts) {
  std::sort(pts.begin(), pts.end());
  pts.erase(std::unique(pts.begin(), pts.end()), pts.end());
  if (pts.size() < 3) return pts;
  std::vector<Point> hull(2 * pts.size());
  std::size_t k = 0;
  for (const auto& p : pts) {
    while (k >= 2 && orientation(hull[k - 2], hull[k - 1], p) <= 0) --k;
    hull[k++] = p;
  }
  for (std::size_t i = pts.size() - 1, lower = k + 1; i-- > 0;) {
    while (k >= lower && orientation(hull[k - 2], hull[k - 1], pts[i]) <= 0) --k;
    hull[k++] = pts[i];
  }
  hull.resize(k - 1);
  return hull;
}

ConvexPolygon clip(const ConvexPolygon& poly, const Point& a, const Point& b) {
  ConvexPolygon out;
  Point dir = b - a;
  for (std::size_t i = 0; i < poly.size(); ++i) {
    const Point& p = poly[i];
    const Point& q = poly[(i + 1) % poly.size()];
    Rational fp = cross(dir, p - a), fq = cross(dir, q - a);
    if (sgn(fp) >= 0) out.push_back(p);
    if ((sgn(fp) > 0 && sgn(fq) < 0) || (sgn(fp) < 0 && sgn(fq) > 0)) out.push_back(lerp(p, q, fp / (fp - fq)));
  }
  out.erase(std::unique(out.begin(), out.end()), out.end());
  while (out.size() > 1 && out.front() == out.back()) out.pop_back();
  return out;
}

// Closed parameter interval of segment pq inside a convex polygon.
std::optional<std::pair<Rational, Rational>> segment_interval(const ConvexPolygon& poly, const Point& p,
                                                              const Point& q) {
  Rational lo = 0, hi = 1;
  for (std::size_t i = 0; i < poly.size(); ++i) {
    const Point& a = poly[i];
    Point dir = poly[(i + 1) % poly.size()] - a;
    if (dir == Point{}) continue;
    Rational f0 = cross(dir, p - a), f1 = cross(dir, q - a);
    if (f0 == f1) {
      if (sgn(f0) < 0) return std::nullopt;
      continue;
    }
    Rational t = f0 / (f0 - f1);
    if (f1 < f0)
      hi = std::min(hi, t);
    else
      lo = std::max(lo, t);
    if (lo > hi) return std::nullopt;
  }
  return std::make_pair(lo, hi);
}

Rational clamp01(const Rational& t) { return t < 0 ? Rational(0) : (t > 1 ? Rational(1) : t); }

Rational project(const Segment& s, const Point& q) { return clamp01(dot(q - s.a, s.b - s.a) / norm2(s.b - s.a)); }

bool segment_confined(const std::vector<ConvexPolygon>& tubes, const Point& p, const Point& q) {
  std::vector<std::pair<Rational, Rational>> parts;
  for (const auto& t : tubes)
    if (auto iv = segment_interval(t, p, q)) parts.push_back(*iv);
  std::sort(parts.begin(), parts.end());
  Rational reach = 0;
  for (const auto& [lo, hi] : parts) {
    if (lo > reach) return false;
    reach = std::max(reach, hi);
  }
  return reach == 1;
}

void check_confined(const NoodleSystem& sys, const Representation& confined, const VertexId& v) {
  if (!confined.contains(v)) throw NoodleError("confined representation lacks curve '" + v + "'");
  auto it = sys.tubes.find(v);
  if (it == sys.tubes.end()) throw NoodleError("no noodle for curve '" + v + "'");
  const Polyline& c = confined.at(v);
  for (std::size_t i = 0; i < c.segment_count(); ++i)
    if (!segment_confined(it->second, c.vertices()[i], c.vertices()[i + 1]))
      throw NoodleError("curve '" + v + "' leaves its noodle near segment " + std::to_string(i));
}

// Position on the base curve of a point inside its noodle.
CurvePosition locate(const NoodleSystem& sys, const VertexId& v, const Point& q) {
  const auto& tubes = sys.tubes.at(v);
  const Polyline& c = sys.base.at(v);
  for (std::size_t i = 0; i < tubes.size(); ++i)
    if (polygon_contains(tubes[i], q)) return {i, project(c.segment(i), q)};
  throw NoodleError("point outside the noodle of '" + v + "'");
}

bool all_equal(const std::vector<Point>& pts) {
  return std::all_of(pts.begin(), pts.end(), [&](const Point& p) { return p == pts.front(); });
}

std::vector<Fragment> fragments_in(const Polyline& c, const VertexId& id, const Zone& z, const Segment& other) {
  std::vector<Fragment> out;
  std::vector<Point> path;
  bool open = false, starts_at_begin = false;
  std::size_t n = c.segment_count();
  auto close = [&](bool ends_at_end) {
    if (open && !all_equal(path)) {
      path.erase(std::unique(path.begin(), path.end()), path.end());
      Fragment f;
      f.curve = id;
      f.path = path;
      f.entry_side = orientation(other.a, other.b, path.front());
      f.exit_side = orientation(other.a, other.b, path.back());
      if (starts_at_begin || ends_at_end)
        f.kind = FragmentKind::terminal;
      else
        f.kind = f.entry_side == f.exit_side ? FragmentKind::reversal : FragmentKind::traversal;
      out.push_back(std::move(f));
    }
    open = false;
    path.clear();
  };
  for (std::size_t i = 0; i < n; ++i) {
    Segment s = c.segment(i);
    auto iv = segment_interval(z.region, s.a, s.b);
    if (!iv) {
      close(false);
      continue;
    }
    auto [lo, hi] = *iv;
    if (!(open && lo == 0)) {
      close(false);
      open = true;
      starts_at_begin = i == 0 && lo == 0;
      path.push_back(lerp(s.a, s.b, lo));
    }
    path.push_back(lerp(s.a, s.b, hi));
    if (hi != 1) close(false);
  }
  close(true);
  return out;
}

}  // namespace

bool polygon_contains(const ConvexPolygon& poly, const Point& q) {
  if (poly.empty()) return false;
  if (poly.size() == 1) return poly[0] == q;
  for (std::size_t i = 0; i < poly.size(); ++i)
    if (orientation(poly[i], poly[(i + 1) % poly.size()], q) < 0) return false;
  if (poly.size() == 2) return orientation(poly[0], poly[1], q) == 0 && squared_distance(q, {poly[0], poly[1]}) == 0;
  return true;
}

ConvexPolygon intersect_convex(const ConvexPolygon& a, const ConvexPolygon& b) {
  if (b.size() < 3) {
    ConvexPolygon out;
    for (const auto& p : b)
      if (polygon_contains(a, p)) out.push_back(p);
    return out;
  }
  ConvexPolygon out = a;
  for (std::size_t i = 0; i < b.size() && !out.empty(); ++i) out = clip(out, b[i], b[(i + 1) % b.size()]);
  return out;
}

ConvexPolygon segment_tube(const Segment& s, const Rational& eps) {
  std::vector<Point> pts;
  for (const Point& p : {s.a, s.b})
    for (int dx : {-1, 1})
      for (int dy : {-1, 1}) pts.push_back(p + Point{dx * eps, dy * eps});
  return convex_hull(std::move(pts));
}

bool NoodleSystem::in_noodle(const VertexId& v, const Point& q) const {
  auto it = tubes.find(v);
  if (it == tubes.end()) return false;
  return std::any_of(it->second.begin(), it->second.end(), [&](const ConvexPolygon& t) { return polygon_contains(t, q); });
}

const std::vector<Zone>& NoodleSystem::zones_of(const VertexId& u, const VertexId& v) const {
  static const std::vector<Zone> none;
  auto it = zones.find(make_pair_key(u, v));
  return it == zones.end() ? none : it->second;
}

std::size_t NoodleSystem::zone_count() const {
  std::size_t n = 0;
  for (const auto& [k, zs] : zones) n += zs.size();
  return n;
}

NoodleSystem build_noodles(const Representation& r, const Rational& epsilon) {
  if (sgn(epsilon) <= 0) throw NoodleError("epsilon must be positive");
  ContactScan scan = scan_contacts(r);
  if (!properness_of(r, scan).proper) throw NoodleError("noodles need a proper representation");
  NoodleSystem sys;
  sys.base = r;
  sys.epsilon = epsilon;
  if (r.empty()) return sys;
  Rational delta = separation_bound(r.polylines());
  if (!(8 * epsilon * epsilon < delta * delta))
    throw NoodleError("epsilon too large: need 8*epsilon^2 < delta^2 with delta = " + to_string(delta));
  for (const auto& [id, c] : r.curves()) {
    auto& ts = sys.tubes[id];
    for (std::size_t i = 0; i < c.segment_count(); ++i) ts.push_back(segment_tube(c.segment(i), epsilon));
  }
  std::vector<Point> ends;
  for (const auto& [id, c] : r.curves()) {
    ends.push_back(c.front());
    ends.push_back(c.back());
  }
  for (const auto& pc : scan.pairs) {
    const Polyline& cu = r.at(pc.first);
    const Polyline& cv = r.at(pc.second);
    std::vector<Zone> zs;
    long idx = 0;
    for (const auto& ct : pc.contacts.contacts) {
      Zone z;
      z.pair = {pc.first, pc.second};
      z.index = idx++;
      z.crossing = ct.point;
      z.on_first = ct.on_first;
      z.on_second = ct.on_second;
      z.segment_first = ct.on_first.segment;
      z.segment_second = ct.on_second.segment;
      z.region = intersect_convex(sys.tubes[pc.first][z.segment_first], sys.tubes[pc.second][z.segment_second]);
      for (const auto& e : ends)
        if (!(epsilon * epsilon < norm2(e - ct.point)))
          throw NoodleError("epsilon too large: a crossing of (" + pc.first + "," + pc.second +
                            ") lies within epsilon of a curve endpoint");
      for (const Point& e : {cu.front(), cu.back(), cv.front(), cv.back()})
        if (polygon_contains(z.region, e))
          throw NoodleError("epsilon too large: a zone of (" + pc.first + "," + pc.second + ") holds an endpoint");
      Segment su = cu.segment(z.segment_first), sv = cv.segment(z.segment_second);
      Rational flo = 1, fhi = 0, slo = 1, shi = 0;
      for (const auto& p : z.region) {
        Rational a = project(su, p), b = project(sv, p);
        flo = std::min(flo, a);
        fhi = std::max(fhi, a);
        slo = std::min(slo, b);
        shi = std::max(shi, b);
      }
      z.first_lo = {z.segment_first, flo};
      z.first_hi = {z.segment_first, fhi};
      z.second_lo = {z.segment_second, slo};
      z.second_hi = {z.segment_second, shi};
      zs.push_back(std::move(z));
    }
    for (std::size_t i = 0; i < zs.size(); ++i)
      for (std::size_t j = i + 1; j < zs.size(); ++j)
        if (!intersect_convex(zs[i].region, zs[j].region).empty())
          throw NoodleError("epsilon too large: zones of (" + pc.first + "," + pc.second + ") meet");
    sys.zones[{pc.first, pc.second}] = std::move(zs);
  }
  return sys;
}

std::string to_string(FragmentKind k) {
  switch (k) {
    case FragmentKind::traversal: return "traversal";
    case FragmentKind::reversal: return "reversal";
    case FragmentKind::terminal: return "terminal";
  }
  return "?";
}

std::string to_string(AreaClass c) {
  switch (c) {
    case AreaClass::ambiguous: return "ambiguous";
    case AreaClass::peripheral: return "peripheral";
    case AreaClass::central: return "central";
  }
  return "?";
}

FragmentReport classify_fragments(const NoodleSystem& sys, const Representation& confined, const VertexId& u,
                                  const VertexId& v) {
  VertexPair key = make_pair_key(u, v);
  check_confined(sys, confined, key.first);
  check_confined(sys, confined, key.second);
  FragmentReport rep;
  rep.pair = key;
  const Polyline& bu = sys.base.at(key.first);
  const Polyline& bv = sys.base.at(key.second);
  for (const auto& z : sys.zones_of(u, v)) {
    ZoneFragments zf;
    zf.zone_index = z.index;
    zf.first = fragments_in(confined.at(key.first), key.first, z, bv.segment(z.segment_second));
    zf.second = fragments_in(confined.at(key.second), key.second, z, bu.segment(z.segment_first));
    rep.zones.push_back(std::move(zf));
  }
  return rep;
}

long fragment_crossings(const Fragment& a, const Fragment& b) {
  std::set<Point> seen;
  for (std::size_t i = 0; i + 1 < a.path.size(); ++i)
    for (std::size_t j = 0; j + 1 < b.path.size(); ++j) {
      SegmentHit h = intersect_segments({a.path[i], a.path[i + 1]}, {b.path[j], b.path[j + 1]});
      if (h.kind == SegmentHit::overlap) throw NoodleError("fragments overlap");
      if (h.kind == SegmentHit::point) seen.insert(h.p);
    }
  return static_cast<long>(seen.size());
}

namespace {

// 0: before the crossing area, 1: after it, -1: inside it.
int endpoint_place(const NoodleSystem& sys, const VertexId& w, const VertexPair& key, const Point& q) {
  const auto& zs = sys.zones.at(key);
  bool first = w == key.first;
  CurvePosition lo = first ? zs.front().first_lo : zs.front().second_lo;
  CurvePosition hi = first ? zs.front().first_hi : zs.front().second_hi;
  for (const auto& z : zs) {
    if (polygon_contains(z.region, q)) return -1;
    lo = std::min(lo, first ? z.first_lo : z.second_lo);
    hi = std::max(hi, first ? z.first_hi : z.second_hi);
  }
  CurvePosition pos = locate(sys, w, q);
  if (pos < lo) return 0;
  if (pos > hi) return 1;
  return -1;
}

VertexPair area_pair(const NoodleSystem& sys, const Representation& confined, const VertexId& u, const VertexId& v) {
  VertexPair key = make_pair_key(u, v);
  check_confined(sys, confined, key.first);
  check_confined(sys, confined, key.second);
  if (sys.zones_of(u, v).empty()) throw NoodleError("curves '" + u + "' and '" + v + "' do not cross");
  return key;
}

}  // namespace

CrossingAreaClass classify_crossing_area(const NoodleSystem& sys, const Representation& confined, const VertexId& u,
                                         const VertexId& v) {
  VertexPair key = area_pair(sys, confined, u, v);
  CrossingAreaClass out;
  out.pair = key;
  for (const VertexId& w : {key.first, key.second}) {
    const Polyline& c = confined.at(w);
    int a = endpoint_place(sys, w, key, c.front());
    int b = endpoint_place(sys, w, key, c.back());
    if (a < 0 || b < 0)
      out.label[w] = AreaClass::ambiguous;
    else
      out.label[w] = a == b ? AreaClass::peripheral : AreaClass::central;
  }
  return out;
}

std::map<VertexId, bool> covers(const NoodleSystem& sys, const Representation& confined, const VertexId& u,
                                const VertexId& v) {
  VertexPair key = area_pair(sys, confined, u, v);
  std::size_t n = sys.zones_of(u, v).size();
  if (n != 2) throw NoodleError("covers needs exactly two zones, pair has " + std::to_string(n));
  std::map<VertexId, bool> out;
  for (const VertexId& w : {key.first, key.second}) {
    const Polyline& c = confined.at(w);
    out[w] = endpoint_place(sys, w, key, c.front()) < 0 || endpoint_place(sys, w, key, c.back()) < 0;
  }
  return out;
}

Polyline lane_curve(const Polyline& base, const LanePlan& plan) {
  if (plan.lanes.empty() || plan.stops.size() != plan.lanes.size() + 1)
    throw NoodleError("lane plan needs one more stop than lanes");
  for (const auto& s : plan.stops)
    if (s.segment >= base.segment_count() || s.t < 0 || s.t > 1) throw NoodleError("lane stop out of range");
  std::vector<Point> pts;
  for (std::size_t i = 0; i < plan.lanes.size(); ++i) {
    const CurvePosition& a = plan.stops[i];
    const CurvePosition& b = plan.stops[i + 1];
    const Rational& d = plan.lanes[i];
    pts.push_back(lane_point(base, a, d));
    if (a < b) {
      for (std::size_t k = a.segment + 1; k <= b.segment; ++k) pts.push_back(offset_vertex(base, k, d));
    } else {
      for (std::size_t k = a.segment; k > b.segment; --k) pts.push_back(offset_vertex(base, k, d));
    }
    pts.push_back(lane_point(base, b, d));
  }
  pts.erase(std::unique(pts.begin(), pts.end()), pts.end());
  return Polyline(std::move(pts));
}

namespace {

Rational random_unit(std::mt19937_64& rng) {
  // uniform dyadic in (0, 1)
  return ratio(static_cast<long>(rng() % 65535) + 1, 65536);
}

std::optional<Polyline> random_lane_curve(const NoodleSystem& sys, const VertexId& id, std::mt19937_64& rng,
                                          int max_folds) {
  const Polyline& c = sys.base.at(id);
  std::size_t n = c.segment_count();
  std::vector<CurvePosition> crossings;
  for (const auto& [key, zs] : sys.zones)
    for (const auto& z : zs) {
      if (key.first == id) crossings.push_back(z.on_first);
      if (key.second == id) crossings.push_back(z.on_second);
    }
  auto anywhere = [&]() -> CurvePosition {
    std::size_t seg = rng() % n;
    return {seg, ratio(1, 8) + random_unit(rng) * 3 / 4};
  };
  auto near_crossing = [&]() -> CurvePosition {
    if (crossings.empty()) return anywhere();
    CurvePosition p = crossings[rng() % crossings.size()];
    Segment s = c.segment(p.segment);
    Rational jitter = (2 * random_unit(rng) - 1) * sys.epsilon / (4 * norm_inf(s.b - s.a));
    p.t = clamp01(p.t + jitter);
    if (p.t == 0 || p.t == 1) return anywhere();
    return p;
  };
  int folds = static_cast<int>(rng() % (max_folds + 1));
  std::vector<CurvePosition> stops;
  stops.push_back({0, random_unit(rng) / 16});
  for (int f = 0; f < 2 * folds; ++f) stops.push_back(rng() % 2 ? near_crossing() : anywhere());
  stops.push_back({n - 1, 1 - random_unit(rng) / 16});
  for (std::size_t i = 0; i + 1 < stops.size(); ++i) {
    bool forward = i % 2 == 0;
    if (forward ? !(stops[i] < stops[i + 1]) : !(stops[i + 1] < stops[i])) return std::nullopt;
  }
  std::set<CurvePosition> distinct(stops.begin(), stops.end());
  if (distinct.size() != stops.size()) return std::nullopt;
  std::vector<Rational> lanes;
  for (std::size_t i = 0; i + 1 < stops.size(); ++i) lanes.push_back((random_unit(rng) - ratio(1, 2)) * sys.epsilon);
  std::sort(lanes.begin(), lanes.end());
  if (std::adjacent_find(lanes.begin(), lanes.end()) != lanes.end()) return std::nullopt;
  if (rng() % 2) std::reverse(lanes.begin(), lanes.end());
  try {
    Polyline out = lane_curve(c, {lanes, stops});
    if (!is_simple(out)) return std::nullopt;
    for (std::size_t i = 0; i < out.segment_count(); ++i)
      if (!segment_confined(sys.tubes.at(id), out.vertices()[i], out.vertices()[i + 1])) return std::nullopt;
    return out;
  } catch (const GeometryError&) {
    return std::nullopt;
  }
}

}  // namespace

Representation perturb_confined(const NoodleSystem& sys, std::uint64_t seed, int max_folds) {
  if (max_folds < 0) throw NoodleError("max_folds must be non-negative");
  std::mt19937_64 rng(seed);
  for (int attempt = 0; attempt < 1000; ++attempt) {
    Representation out;
    for (const auto& [id, c] : sys.base.curves()) {
      std::optional<Polyline> p;
      for (int tries = 0; tries < 1000 && !p; ++tries) p = random_lane_curve(sys, id, rng, max_folds);
      if (!p) throw NoodleError("could not perturb curve '" + id + "'");
      out.add(id, std::move(*p));
    }
    if (validate_proper(out).proper) return out;
  }
  throw NoodleError("could not find a proper perturbation");
}

}  // namespace strgraph
