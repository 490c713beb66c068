#include "strgraph/geometry.hpp"

#include <algorithm>
#include <map>

#include "strgraph/spatial.hpp"

namespace strgraph {

Rational parse_rational(const std::string& text) {
  auto slash = text.find('/');
  std::string num = text.substr(0, slash);
  std::string den = slash == std::string::npos ? "1" : text.substr(slash + 1);
  auto digits = [](const std::string& s, bool allow_sign) {
    std::size_t i = 0;
    if (allow_sign && !s.empty() && s[0] == '-') i = 1;
    if (i >= s.size()) return false;
    for (; i < s.size(); ++i)
      if (s[i] < '0' || s[i] > '9') return false;
    return true;
  };
  if (!digits(num, true) || !digits(den, false))
    throw std::invalid_argument("malformed rational '" + text + "'");
  mpz_class n(num), d(den);
  if (d == 0) throw std::invalid_argument("zero denominator in '" + text + "'");
  Rational q(n, d);
  q.canonicalize();
  return q;
}

std::string to_string(const Rational& q) {
  return q.get_num().get_str() + "/" + q.get_den().get_str();
}

Rational pow2_floor(const Rational& q) {
  if (sgn(q) <= 0) throw GeometryError("pow2_floor of non-positive value");
  Rational p = 1;
  if (p <= q) {
    while (2 * p <= q) p *= 2;
  } else {
    while (p > q) p /= 2;
  }
  return p;
}

Rational pow2_sqrt_floor(const Rational& q) {
  if (sgn(q) <= 0) throw GeometryError("pow2_sqrt_floor of non-positive value");
  Rational p = 1;
  if (p * p <= q) {
    while (4 * p * p <= q) p *= 2;
  } else {
    while (p * p > q) p /= 2;
  }
  return p;
}

long floor_to_long(const Rational& q) {
  mpz_class f;
  mpz_fdiv_q(f.get_mpz_t(), q.get_num_mpz_t(), q.get_den_mpz_t());
  if (!f.fits_slong_p()) throw GeometryError("coordinate out of range for bucketing");
  return f.get_si();
}

Rational norm_inf(const Point& a) {
  Rational ax = abs(a.x), ay = abs(a.y);
  return ax < ay ? ay : ax;
}

int orientation(const Point& a, const Point& b, const Point& c) {
  return sgn(cross(b - a, c - a));
}

Point lerp(const Point& a, const Point& b, const Rational& t) {
  return {a.x + t * (b.x - a.x), a.y + t * (b.y - a.y)};
}

Rational squared_distance(const Point& p, const Segment& s) {
  Point d = s.b - s.a;
  Rational len2 = norm2(d);
  Rational t = dot(p - s.a, d) / len2;
  if (t < 0) t = 0;
  if (t > 1) t = 1;
  return norm2(p - lerp(s.a, s.b, t));
}

Polyline::Polyline(std::vector<Point> vertices) : v_(std::move(vertices)) {
  if (v_.size() < 2) throw GeometryError("polyline needs at least two vertices");
  for (std::size_t i = 0; i + 1 < v_.size(); ++i)
    if (v_[i] == v_[i + 1]) throw GeometryError("polyline has repeated consecutive vertex");
  for (std::size_t i = 0; i + 2 < v_.size(); ++i) {
    Point d1 = v_[i + 1] - v_[i];
    Point d2 = v_[i + 2] - v_[i + 1];
    if (sgn(cross(d1, d2)) == 0 && sgn(dot(d1, d2)) < 0)
      throw GeometryError("polyline backtracks along a line");
  }
}

Polyline Polyline::reversed() const {
  std::vector<Point> r(v_.rbegin(), v_.rend());
  return Polyline(std::move(r));
}

std::string to_string(ContactKind k) {
  switch (k) {
    case ContactKind::empty: return "empty";
    case ContactKind::proper_crossing: return "proper-crossing";
    case ContactKind::touch_at_endpoint: return "touch-at-endpoint";
    case ContactKind::touch_at_bend_interior: return "touch-at-bend-interior";
    case ContactKind::overlap: return "overlap";
  }
  return "?";
}

SegmentHit intersect_segments(const Segment& s1, const Segment& s2) {
  SegmentHit hit;
  Point r = s1.b - s1.a;
  Point s = s2.b - s2.a;
  Point qp = s2.a - s1.a;
  Rational d = cross(r, s);
  if (sgn(d) != 0) {
    Rational t = cross(qp, s) / d;
    if (sgn(t) < 0 || t > 1) return hit;
    Rational u = cross(qp, r) / d;
    if (sgn(u) < 0 || u > 1) return hit;
    hit.kind = SegmentHit::point;
    hit.p = lerp(s1.a, s1.b, t);
    hit.t = std::move(t);
    hit.u = std::move(u);
    return hit;
  }
  if (sgn(cross(qp, r)) != 0) return hit;
  Rational rr = norm2(r);
  Rational t0 = dot(qp, r) / rr;
  Rational t1 = dot(s2.b - s1.a, r) / rr;
  Rational lo = t0 < t1 ? t0 : t1;
  Rational hi = t0 < t1 ? t1 : t0;
  if (lo < 0) lo = 0;
  if (hi > 1) hi = 1;
  if (lo > hi) return hit;
  if (lo < hi) {
    hit.kind = SegmentHit::overlap;
    hit.p = lerp(s1.a, s1.b, lo);
    hit.t = lo;
    return hit;
  }
  hit.kind = SegmentHit::point;
  hit.p = lerp(s1.a, s1.b, lo);
  hit.t = lo;
  hit.u = (lo - t0) / (t1 - t0);
  return hit;
}

SegmentContact segment_contact(const Segment& s1, const Segment& s2) {
  if (s1.a == s1.b || s2.a == s2.b) throw GeometryError("degenerate segment");
  SegmentHit h = intersect_segments(s1, s2);
  SegmentContact out;
  if (h.kind == SegmentHit::none) return out;
  if (h.kind == SegmentHit::overlap) {
    out.kind = ContactKind::overlap;
    return out;
  }
  bool e1 = sgn(h.t) == 0 || h.t == 1;
  bool e2 = sgn(h.u) == 0 || h.u == 1;
  out.point = h.p;
  if (e1 && e2)
    out.kind = ContactKind::touch_at_endpoint;
  else if (e1 || e2)
    out.kind = ContactKind::touch_at_bend_interior;
  else
    out.kind = ContactKind::proper_crossing;
  return out;
}

CurvePosition normalize_position(const Polyline& c, std::size_t segment, const Rational& t) {
  if (t == 1 && segment + 1 < c.segment_count()) return {segment + 1, Rational(0)};
  return {segment, t};
}

Point point_at(const Polyline& c, const CurvePosition& pos) {
  Segment s = c.segment(pos.segment);
  return lerp(s.a, s.b, pos.t);
}

namespace {

// -1 when the position is not a vertex; otherwise the vertex index.
long vertex_index(const CurvePosition& pos) {
  if (sgn(pos.t) == 0) return static_cast<long>(pos.segment);
  if (pos.t == 1) return static_cast<long>(pos.segment + 1);
  return -1;
}

}  // namespace

PolylineContacts assemble_contacts(const Polyline& c1, const Polyline& c2,
                                   std::vector<PolylineContact> raw, bool overlap) {
  PolylineContacts out;
  out.overlap = overlap;
  std::map<Point, PolylineContact> found;
  for (auto& pc : raw) {
    auto it = found.find(pc.point);
    if (it == found.end())
      found.emplace(pc.point, std::move(pc));
    else if (pc.on_first < it->second.on_first)
      it->second = std::move(pc);
  }
  auto is_end = [](long v, const Polyline& c) {
    return v == 0 || v == static_cast<long>(c.size()) - 1;
  };
  for (auto& [p, pc] : found) {
    long v1 = vertex_index(pc.on_first);
    long v2 = vertex_index(pc.on_second);
    if ((v1 >= 0 && is_end(v1, c1)) || (v2 >= 0 && is_end(v2, c2)))
      pc.kind = ContactKind::touch_at_endpoint;
    else if (v1 >= 0 || v2 >= 0)
      pc.kind = ContactKind::touch_at_bend_interior;
    else
      pc.kind = ContactKind::proper_crossing;
    out.contacts.push_back(std::move(pc));
  }
  std::sort(out.contacts.begin(), out.contacts.end(),
            [](const PolylineContact& a, const PolylineContact& b) { return a.on_first < b.on_first; });
  return out;
}

PolylineContacts polyline_contacts(const Polyline& c1, const Polyline& c2) {
  std::vector<PolylineContact> raw;
  bool overlap = false;
  for (std::size_t i = 0; i < c1.segment_count(); ++i) {
    Segment s1 = c1.segment(i);
    for (std::size_t j = 0; j < c2.segment_count(); ++j) {
      Segment s2 = c2.segment(j);
      if (!boxes_meet(s1, s2)) continue;
      SegmentHit h = intersect_segments(s1, s2);
      if (h.kind == SegmentHit::none) continue;
      if (h.kind == SegmentHit::overlap) {
        overlap = true;
        continue;
      }
      raw.push_back({ContactKind::proper_crossing, h.p, normalize_position(c1, i, h.t),
                     normalize_position(c2, j, h.u)});
    }
  }
  return assemble_contacts(c1, c2, std::move(raw), overlap);
}

bool is_simple(const Polyline& c) {
  std::vector<Segment> segs;
  for (std::size_t i = 0; i < c.segment_count(); ++i) segs.push_back(c.segment(i));
  for (auto [i, j] : candidate_segment_pairs(segs)) {
    SegmentHit h = intersect_segments(segs[i], segs[j]);
    if (h.kind == SegmentHit::none) continue;
    if (h.kind == SegmentHit::overlap) return false;
    bool adjacent = j == i + 1 && h.t == 1 && sgn(h.u) == 0;
    if (!adjacent) return false;
  }
  return true;
}

Rational separation_bound(const std::vector<Polyline>& curves) {
  std::vector<Segment> segs;
  std::vector<std::size_t> owner;
  std::vector<Point> features;
  for (std::size_t c = 0; c < curves.size(); ++c) {
    for (std::size_t i = 0; i < curves[c].segment_count(); ++i) {
      segs.push_back(curves[c].segment(i));
      owner.push_back(c);
    }
    for (const auto& p : curves[c].vertices()) features.push_back(p);
  }
  for (auto [i, j] : candidate_segment_pairs(segs)) {
    SegmentHit h = intersect_segments(segs[i], segs[j]);
    if (h.kind == SegmentHit::overlap) {
      if (owner[i] != owner[j]) throw GeometryError("curves overlap; intersection is infinite");
      throw GeometryError("curve overlaps itself");
    }
    if (h.kind == SegmentHit::point) features.push_back(h.p);
  }
  std::sort(features.begin(), features.end());
  features.erase(std::unique(features.begin(), features.end()), features.end());

  bool have = false;
  Rational best;
  auto consider = [&](const Rational& d2) {
    if (sgn(d2) == 0) return;  // incident feature
    if (!have || d2 < best) {
      best = d2;
      have = true;
    }
  };

  if (segs.size() <= 64 && features.size() <= 256) {
    for (std::size_t i = 0; i < features.size(); ++i)
      for (std::size_t j = i + 1; j < features.size(); ++j) consider(norm2(features[i] - features[j]));
    for (const auto& p : features)
      for (const auto& s : segs) consider(squared_distance(p, s));
  } else {
    Rational h = SegmentGrid::suggest_cell(segs);
    SegmentGrid grid(segs, h);
    std::vector<Segment> pts;
    for (const auto& p : features) pts.push_back({p, p});
    SegmentGrid pgrid(pts, h);
    Point hh{h, h};
    for (std::size_t i = 0; i < features.size(); ++i) {
      const Point& p = features[i];
      Point lo = p - hh, hi = p + hh;
      for (std::size_t s : grid.query(lo, hi)) consider(squared_distance(p, segs[s]));
      for (std::size_t j : pgrid.query(lo, hi))
        if (j != i) consider(norm2(p - features[j]));
    }
    Rational cap = h * h;
    if (!have || cap < best) {
      best = cap;
      have = true;
    }
  }
  if (!have) return Rational(1);
  return pow2_sqrt_floor(best);
}

}  // namespace strgraph
