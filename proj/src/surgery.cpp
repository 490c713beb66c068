#include "strgraph/surgery.hpp"

#include <algorithm>
#include <functional>
#include <map>

#include "strgraph/offset.hpp"

namespace strgraph {

namespace {

void require_proper(const Representation& r, const ContactScan& scan, const char* op) {
  PropernessReport rep = properness_of(r, scan);
  if (!rep.proper) {
    const Violation& v = rep.violations.front();
    throw SurgeryError(std::string(op) + " needs a proper representation (" + to_string(v.kind) + ")");
  }
}

CrossingMatrix counts_of(const ContactScan& scan) {
  CrossingMatrix m;
  for (const auto& pc : scan.pairs)
    if (!pc.contacts.contacts.empty())
      m.counts[{pc.first, pc.second}] = static_cast<long>(pc.contacts.contacts.size());
  return m;
}

struct ZigzagSite {
  CurvePosition pos;
  Point p;
  Point du;  // partner direction, unit L-infinity
  long extra;
};

void append_zigzag(std::vector<Point>& out, const ZigzagSite& z, const Point& dv, const Rational& r) {
  const Rational& a = r;
  auto local = [&](const Rational& alpha, const Rational& beta) { return z.p + alpha * z.du + beta * dv; };
  Rational half = r / 2;
  out.push_back(local(0, -r));
  out.push_back(local(-a, -r));
  out.push_back(local(-a, half));
  long teeth = 2 * z.extra;
  for (long i = 1; i <= teeth; ++i) {
    Rational alpha = -a + Rational(i) * a / Rational(z.extra);
    out.push_back(local(alpha, i % 2 == 0 ? half : Rational(-half)));
  }
  out.push_back(local(a, r));
  out.push_back(local(0, r));
}

}  // namespace

Representation add_crossings(const Representation& r, const std::vector<ZigzagRequest>& requests) {
  if (requests.empty()) return r;
  ContactScan scan = scan_contacts(r);
  require_proper(r, scan, "add_crossings");
  std::map<VertexPair, const PairContacts*> by_pair;
  for (const auto& pc : scan.pairs) by_pair[{pc.first, pc.second}] = &pc;

  Rational delta = separation_bound(r.polylines());
  Rational radius = delta / 8;

  std::map<VertexId, std::vector<ZigzagSite>> per_curve;
  std::set<Point> used;
  for (const auto& req : requests) {
    const auto& [first, second] = req.site.pair;
    if (!r.contains(first) || !r.contains(second) || first == second)
      throw SurgeryError("surgery site names unknown or identical curves");
    if (req.extra < 1) throw SurgeryError("zigzag needs at least one extra pair of crossings");
    auto it = by_pair.find(make_pair_key(first, second));
    std::size_t count = it == by_pair.end() ? 0 : it->second->contacts.contacts.size();
    if (req.site.crossing_index >= count)
      throw SurgeryError("surgery site out of range: pair (" + first + "," + second + ") has " +
                         std::to_string(count) + " crossings");
    const PairContacts& pc = *it->second;
    std::vector<PolylineContact> order = pc.contacts.contacts;
    bool first_is_key = first == pc.first;
    if (!first_is_key)
      std::sort(order.begin(), order.end(),
                [](const PolylineContact& a, const PolylineContact& b) { return a.on_second < b.on_second; });
    const PolylineContact& c = order[req.site.crossing_index];
    if (!used.insert(c.point).second) throw SurgeryError("the same crossing was requested twice");
    const CurvePosition& on_rerouted = first_is_key ? c.on_second : c.on_first;
    const CurvePosition& on_partner = first_is_key ? c.on_first : c.on_second;
    Segment ps = r.at(first).segment(on_partner.segment);
    per_curve[second].push_back({on_rerouted, c.point, unit_inf(ps.b - ps.a), req.extra});
  }

  Representation out = r;
  out.declared_k.reset();
  for (auto& [id, sites] : per_curve) {
    std::sort(sites.begin(), sites.end(), [](const ZigzagSite& a, const ZigzagSite& b) { return a.pos < b.pos; });
    const Polyline& c = r.at(id);
    const auto& v = c.vertices();
    std::vector<Point> pts;
    std::size_t k = 0;
    for (std::size_t i = 0; i < c.segment_count(); ++i) {
      pts.push_back(v[i]);
      Point dv = unit_inf(v[i + 1] - v[i]);
      for (; k < sites.size() && sites[k].pos.segment == i; ++k) append_zigzag(pts, sites[k], dv, radius);
    }
    pts.push_back(v.back());
    out.set(id, Polyline(std::move(pts)));
  }
  return out;
}

Representation add_two(const Representation& r, const SurgerySite& site) {
  return add_crossings(r, {ZigzagRequest{site, 1}});
}

namespace {

Representation doubled(const Representation& r, const std::set<VertexId>& side, long factor) {
  if (r.empty()) return r;
  ContactScan scan0 = scan_contacts(r);
  require_proper(r, scan0, factor == 4 ? "quadruple" : "double_side");
  CrossingMatrix before = counts_of(scan0);
  Rational d = separation_bound(r.polylines()) / 8;
  for (int attempt = 0; attempt < 64; ++attempt, d /= 2) {
    Representation out;
    try {
      for (const auto& [id, c] : r.curves()) out.add(id, side.count(id) ? double_curve(c, d) : c);
    } catch (const GeometryError&) {
      continue;
    }
    ContactScan scan = scan_contacts(out);
    if (!properness_of(out, scan).proper) continue;
    CrossingMatrix after = counts_of(scan);
    bool ok = after.counts.size() == before.counts.size();
    for (const auto& [key, c] : before.counts) {
      long f = factor == 4 ? 4 : ((side.count(key.first) || side.count(key.second)) ? 2 : 1);
      if (after.get(key.first, key.second) != f * c) ok = false;
    }
    if (ok) return out;
  }
  throw SurgeryError("no safe doubling offset found");
}

}  // namespace

Representation quadruple(const Representation& r) {
  std::set<VertexId> all;
  for (const auto& id : r.ids()) all.insert(id);
  return doubled(r, all, 4);
}

Representation double_side(const Representation& r, const std::set<VertexId>& side) {
  for (const auto& id : side)
    if (!r.contains(id)) throw SurgeryError("side names unknown curve '" + id + "'");
  CrossingMatrix m = crossing_matrix(r);
  for (const auto& [key, c] : m.counts) {
    bool a = side.count(key.first) != 0, b = side.count(key.second) != 0;
    if (a == b)
      throw SurgeryError("bipartition violated: intersecting pair (" + key.first + "," + key.second + ") is " +
                         (a ? "inside" : "outside") + " the side set");
  }
  return doubled(r, side, 2);
}

Representation equalize_to(const Representation& r, long m) {
  if (m < 1) throw SurgeryError("equalize target must be positive");
  CrossingMatrix cm = crossing_matrix(r);
  std::vector<ZigzagRequest> reqs;
  for (const auto& [key, c] : cm.counts) {
    if (c > m)
      throw SurgeryError("pair (" + key.first + "," + key.second + ") crosses " + std::to_string(c) +
                         " times, more than " + std::to_string(m));
    if ((m - c) % 2 != 0)
      throw SurgeryError("parity mismatch: pair (" + key.first + "," + key.second + ") crosses " +
                         std::to_string(c) + " times, target " + std::to_string(m));
    if (c < m) reqs.push_back({{key, 0}, (m - c) / 2});
  }
  return add_crossings(r, reqs);
}

namespace {

// Where a curve passes through a point.
struct Passage {
  VertexId id;
  std::size_t segment = 0;  // segment containing the point (vertex: the vertex index)
  bool at_vertex = false;
  Rational t;  // for interior passages
  bool has_entry = false, has_exit = false;
  Point entry, exit;
};

Passage locate(const VertexId& id, const Polyline& c, const Point& q, const Rational& rho) {
  Passage ps;
  ps.id = id;
  const auto& v = c.vertices();
  for (std::size_t i = 0; i < v.size(); ++i)
    if (v[i] == q) {
      ps.at_vertex = true;
      ps.segment = i;
      if (i > 0) {
        ps.has_entry = true;
        ps.entry = q - rho * unit_inf(v[i] - v[i - 1]);
      }
      if (i + 1 < v.size()) {
        ps.has_exit = true;
        ps.exit = q + rho * unit_inf(v[i + 1] - v[i]);
      }
      return ps;
    }
  for (std::size_t i = 0; i < c.segment_count(); ++i) {
    Segment s = c.segment(i);
    if (sgn(squared_distance(q, s)) != 0) continue;
    Point d = s.b - s.a;
    ps.segment = i;
    ps.t = dot(q - s.a, d) / norm2(d);
    ps.has_entry = ps.has_exit = true;
    ps.entry = q - rho * unit_inf(d);
    ps.exit = q + rho * unit_inf(d);
    return ps;
  }
  throw SurgeryError("internal: curve '" + id + "' does not pass through an offending point");
}

std::vector<Point> piece(const Passage& ps, const Point& centre) {
  std::vector<Point> out;
  if (ps.has_entry) out.push_back(ps.entry);
  out.push_back(centre);
  if (ps.has_exit) out.push_back(ps.exit);
  return out;
}

bool piece_valid(const std::vector<Point>& p) {
  for (std::size_t i = 0; i + 1 < p.size(); ++i)
    if (p[i] == p[i + 1]) return false;
  if (p.size() == 3) {
    Point d1 = p[1] - p[0], d2 = p[2] - p[1];
    if (sgn(cross(d1, d2)) == 0 && sgn(dot(d1, d2)) < 0) return false;
  }
  return true;
}

// Proper crossing points between two local pieces; nullopt on any improper contact.
std::optional<std::vector<Point>> piece_crossings(const std::vector<Point>& a, const std::vector<Point>& b) {
  std::vector<Point> pts;
  for (std::size_t i = 0; i + 1 < a.size(); ++i)
    for (std::size_t j = 0; j + 1 < b.size(); ++j) {
      SegmentHit h = intersect_segments({a[i], a[i + 1]}, {b[j], b[j + 1]});
      if (h.kind == SegmentHit::none) continue;
      if (h.kind == SegmentHit::overlap) return std::nullopt;
      if (sgn(h.t) == 0 || h.t == 1 || sgn(h.u) == 0 || h.u == 1) return std::nullopt;
      pts.push_back(h.p);
    }
  return pts;
}

std::vector<Point> jitter_grid() {
  std::vector<Point> g;
  for (long x = -3; x <= 3; ++x)
    for (long y = -3; y <= 3; ++y) g.emplace_back(x, y);
  auto key = [](const Point& p) {
    long x = std::abs(p.x.get_num().get_si()), y = std::abs(p.y.get_num().get_si());
    return std::make_tuple(std::max(x, y), x + y, p.x.get_num().get_si(), p.y.get_num().get_si());
  };
  std::stable_sort(g.begin(), g.end(), [&](const Point& a, const Point& b) { return key(a) < key(b); });
  return g;
}

// Chooses a new centre for every passage so that each pair of pieces crosses
// once or twice, properly, with no shared crossing points.
std::vector<Point> resolve(const Point& q, const std::vector<Passage>& passages, const Rational& rho) {
  static const std::vector<Point> grid = jitter_grid();
  for (Rational tau = rho / 4; tau > rho / 1024; tau /= 2) {
    std::vector<Point> chosen(passages.size());
    std::vector<std::vector<Point>> pieces(passages.size());
    std::vector<Point> crossings;
    std::function<bool(std::size_t)> go = [&](std::size_t k) -> bool {
      if (k == passages.size()) return true;
      for (const auto& g : grid) {
        Point c = q + tau * g;
        std::vector<Point> pc = piece(passages[k], c);
        if (!piece_valid(pc)) continue;
        std::size_t mark = crossings.size();
        bool ok = true;
        for (std::size_t j = 0; j < k && ok; ++j) {
          auto pts = piece_crossings(pieces[j], pc);
          if (!pts || pts->empty() || pts->size() > 2) {
            ok = false;
            break;
          }
          for (const auto& p : *pts) {
            if (std::find(crossings.begin(), crossings.end(), p) != crossings.end()) ok = false;
            crossings.push_back(p);
          }
        }
        if (ok) {
          chosen[k] = c;
          pieces[k] = std::move(pc);
          if (go(k + 1)) return true;
        }
        crossings.resize(mark);
      }
      return false;
    };
    if (go(0)) return chosen;
  }
  throw SurgeryError("could not resolve the contact at (" + to_string(q.x) + "," + to_string(q.y) + ")");
}

}  // namespace

Representation make_proper(const Representation& r) {
  ContactScan scan = scan_contacts(r);
  if (!scan.self_violations.empty())
    throw SurgeryError("curve '" + scan.self_violations.front().vertices.front() + "' is not simple");
  for (const auto& pc : scan.pairs)
    if (pc.overlap_at)
      throw SurgeryError("curves '" + pc.first + "' and '" + pc.second + "' overlap (infinite intersection)");
  PropernessReport rep = properness_of(r, scan);
  if (rep.proper) return r;

  std::map<Point, std::set<VertexId>> incident;
  std::vector<Point> features;
  for (const auto& pc : scan.pairs)
    for (const auto& c : pc.contacts.contacts) {
      incident[c.point].insert(pc.first);
      incident[c.point].insert(pc.second);
      features.push_back(c.point);
    }
  std::set<Point> offending;
  for (const auto& v : rep.violations) offending.insert(v.location);

  std::vector<Segment> segs;
  for (const auto& [id, c] : r.curves()) {
    for (std::size_t i = 0; i < c.segment_count(); ++i) segs.push_back(c.segment(i));
    for (const auto& p : c.vertices()) features.push_back(p);
  }
  std::sort(features.begin(), features.end());
  features.erase(std::unique(features.begin(), features.end()), features.end());

  struct Edit {
    Passage passage;
    Point centre;
  };
  std::map<VertexId, std::vector<Edit>> edits;
  for (const Point& q : offending) {
    bool have = false;
    Rational mu2;
    auto consider = [&](const Rational& d2) {
      if (sgn(d2) != 0 && (!have || d2 < mu2)) {
        mu2 = d2;
        have = true;
      }
    };
    for (const auto& f : features) consider(norm2(f - q));
    for (const auto& s : segs) consider(squared_distance(q, s));
    Rational rho = (have ? pow2_sqrt_floor(mu2) : Rational(1)) / 4;
    std::vector<Passage> passages;
    for (const auto& id : incident[q]) passages.push_back(locate(id, r.at(id), q, rho));
    std::vector<Point> centres = resolve(q, passages, rho);
    for (std::size_t i = 0; i < passages.size(); ++i) edits[passages[i].id].push_back({passages[i], centres[i]});
  }

  Representation out = r;
  out.declared_k.reset();
  for (auto& [id, list] : edits) {
    const auto& v = r.at(id).vertices();
    std::map<std::size_t, const Edit*> at_vertex;
    std::map<std::size_t, std::vector<const Edit*>> on_segment;
    for (const auto& e : list) {
      if (e.passage.at_vertex)
        at_vertex[e.passage.segment] = &e;
      else
        on_segment[e.passage.segment].push_back(&e);
    }
    std::vector<Point> pts;
    for (std::size_t i = 0; i < v.size(); ++i) {
      auto vt = at_vertex.find(i);
      if (vt == at_vertex.end()) {
        pts.push_back(v[i]);
      } else {
        for (const auto& p : piece(vt->second->passage, vt->second->centre)) pts.push_back(p);
      }
      auto st = on_segment.find(i);
      if (st != on_segment.end()) {
        auto& es = st->second;
        std::sort(es.begin(), es.end(), [](const Edit* a, const Edit* b) { return a->passage.t < b->passage.t; });
        for (const Edit* e : es)
          for (const auto& p : piece(e->passage, e->centre)) pts.push_back(p);
      }
    }
    out.set(id, Polyline(std::move(pts)));
  }

  CrossingMatrix before = intersection_point_counts(r);
  CrossingMatrix after = crossing_matrix(out);
  for (const auto& [key, c] : before.counts) {
    long a = after.get(key.first, key.second);
    if (a < 1 || a > 2 * c) throw SurgeryError("internal: make_proper broke the count bound on (" + key.first + "," + key.second + ")");
  }
  if (after.counts.size() != before.counts.size()) throw SurgeryError("internal: make_proper changed the graph");
  return out;
}

Representation pipeline_8k(const Representation& r, long k) {
  if (k < 1) throw SurgeryError("k must be positive");
  CrossingMatrix lenient = intersection_point_counts(r);
  for (const auto& [key, c] : lenient.counts)
    if (c > k)
      throw SurgeryError("not a " + std::to_string(k) + "-string representation: pair (" + key.first + "," +
                         key.second + ") meets in " + std::to_string(c) + " points");
  return equalize_to(quadruple(make_proper(r)), 8 * k);
}

}  // namespace strgraph
