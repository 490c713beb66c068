#include "strgraph/representation.hpp"

#include <algorithm>

#include "strgraph/spatial.hpp"

namespace strgraph {

VertexPair make_pair_key(const VertexId& a, const VertexId& b) {
  return a < b ? VertexPair{a, b} : VertexPair{b, a};
}

void Representation::add(const VertexId& id, Polyline curve) {
  if (id.empty()) throw RepresentationError("empty vertex id");
  if (!curves_.emplace(id, std::move(curve)).second)
    throw RepresentationError("duplicate vertex id '" + id + "'");
}

void Representation::set(const VertexId& id, Polyline curve) {
  if (id.empty()) throw RepresentationError("empty vertex id");
  curves_.insert_or_assign(id, std::move(curve));
}

const Polyline& Representation::at(const VertexId& id) const {
  auto it = curves_.find(id);
  if (it == curves_.end()) throw RepresentationError("unknown vertex '" + id + "'");
  return it->second;
}

std::vector<VertexId> Representation::ids() const {
  std::vector<VertexId> out;
  for (const auto& [id, c] : curves_) out.push_back(id);
  return out;
}

std::vector<Polyline> Representation::polylines() const {
  std::vector<Polyline> out;
  for (const auto& [id, c] : curves_) out.push_back(c);
  return out;
}

Representation Representation::restricted(const std::set<VertexId>& keep) const {
  Representation out;
  for (const auto& [id, c] : curves_)
    if (keep.count(id)) out.add(id, c);
  return out;
}

long CrossingMatrix::get(const VertexId& a, const VertexId& b) const {
  auto it = counts.find(make_pair_key(a, b));
  return it == counts.end() ? 0 : it->second;
}

bool IntersectionGraph::has_edge(const VertexId& a, const VertexId& b) const {
  return edges.count(make_pair_key(a, b)) != 0;
}

void IntersectionGraph::add_edge(const VertexId& a, const VertexId& b) {
  if (a == b) throw RepresentationError("loop edge on '" + a + "'");
  vertices.insert(a);
  vertices.insert(b);
  edges.insert(make_pair_key(a, b));
}

std::string to_string(ViolationKind k) {
  switch (k) {
    case ViolationKind::self_intersection: return "self-intersection";
    case ViolationKind::overlap: return "overlap";
    case ViolationKind::triple_point: return "triple-point";
    case ViolationKind::contact_at_bend_or_endpoint: return "contact-at-bend-or-endpoint";
  }
  return "?";
}

ContactScan scan_contacts(const Representation& r) {
  std::vector<VertexId> ids = r.ids();
  std::vector<const Polyline*> curves;
  for (const auto& id : ids) curves.push_back(&r.at(id));

  std::vector<Segment> segs;
  std::vector<std::pair<std::size_t, std::size_t>> owner;  // (curve, segment)
  for (std::size_t c = 0; c < curves.size(); ++c)
    for (std::size_t i = 0; i < curves[c]->segment_count(); ++i) {
      segs.push_back(curves[c]->segment(i));
      owner.emplace_back(c, i);
    }

  struct Raw {
    std::vector<PolylineContact> hits;
    bool overlap = false;
  };
  std::map<std::pair<std::size_t, std::size_t>, Raw> raw;
  std::map<std::size_t, Point> self_hit;

  for (auto [i, j] : candidate_segment_pairs(segs)) {
    auto [ci, si] = owner[i];
    auto [cj, sj] = owner[j];
    SegmentHit h = intersect_segments(segs[i], segs[j]);
    if (h.kind == SegmentHit::none) continue;
    if (ci == cj) {
      // i < j, so si < sj here.
      bool shared_vertex = h.kind == SegmentHit::point && sj == si + 1 && h.t == 1 && sgn(h.u) == 0;
      if (!shared_vertex && !self_hit.count(ci)) self_hit.emplace(ci, h.p);
      continue;
    }
    Raw& entry = raw[{ci, cj}];
    if (h.kind == SegmentHit::overlap) {
      if (!entry.overlap) entry.hits.push_back({ContactKind::overlap, h.p, {}, {}});
      entry.overlap = true;
      continue;
    }
    entry.hits.push_back({ContactKind::proper_crossing, h.p, normalize_position(*curves[ci], si, h.t),
                          normalize_position(*curves[cj], sj, h.u)});
  }

  ContactScan scan;
  for (auto& [key, entry] : raw) {
    PairContacts pc;
    pc.first = ids[key.first];
    pc.second = ids[key.second];
    Point overlap_at;
    std::vector<PolylineContact> hits;
    for (auto& h : entry.hits) {
      if (h.kind == ContactKind::overlap)
        overlap_at = h.point;
      else
        hits.push_back(std::move(h));
    }
    pc.contacts = assemble_contacts(*curves[key.first], *curves[key.second], std::move(hits), entry.overlap);
    if (entry.overlap) pc.overlap_at = overlap_at;
    scan.pairs.push_back(std::move(pc));
  }
  for (auto& [c, p] : self_hit)
    scan.self_violations.push_back({ViolationKind::self_intersection, p, {ids[c]}});
  return scan;
}

PropernessReport properness_of(const Representation& r, const ContactScan& scan) {
  (void)r;
  PropernessReport rep;
  rep.violations = scan.self_violations;
  std::map<Point, std::set<VertexId>> at_point;
  for (const auto& pc : scan.pairs) {
    if (pc.overlap_at) rep.violations.push_back({ViolationKind::overlap, *pc.overlap_at, {pc.first, pc.second}});
    for (const auto& c : pc.contacts.contacts) {
      auto& s = at_point[c.point];
      s.insert(pc.first);
      s.insert(pc.second);
      if (c.kind != ContactKind::proper_crossing)
        rep.violations.push_back({ViolationKind::contact_at_bend_or_endpoint, c.point, {pc.first, pc.second}});
    }
  }
  for (const auto& [p, s] : at_point)
    if (s.size() >= 3)
      rep.violations.push_back({ViolationKind::triple_point, p, std::vector<VertexId>(s.begin(), s.end())});
  rep.proper = rep.violations.empty();
  return rep;
}

PropernessReport validate_proper(const Representation& r) { return properness_of(r, scan_contacts(r)); }

namespace {

std::string describe(const PropernessReport& rep) {
  const Violation& v = rep.violations.front();
  std::string who;
  for (const auto& id : v.vertices) who += (who.empty() ? "" : ",") + id;
  return "representation is not proper: " + to_string(v.kind) + " at (" + to_string(v.location.x) + "," +
         to_string(v.location.y) + ") involving " + who;
}

}  // namespace

CrossingMatrix crossing_matrix(const Representation& r) {
  ContactScan scan = scan_contacts(r);
  PropernessReport rep = properness_of(r, scan);
  if (!rep.proper) throw RepresentationError(describe(rep));
  CrossingMatrix m;
  for (const auto& pc : scan.pairs)
    if (!pc.contacts.contacts.empty())
      m.counts[{pc.first, pc.second}] = static_cast<long>(pc.contacts.contacts.size());
  return m;
}

IntersectionGraph graph_of(const Representation& r, const CrossingMatrix& m) {
  IntersectionGraph g;
  for (const auto& id : r.ids()) g.vertices.insert(id);
  for (const auto& [key, c] : m.counts)
    if (c > 0) g.add_edge(key.first, key.second);
  return g;
}

IntersectionGraph intersection_graph(const Representation& r) { return graph_of(r, crossing_matrix(r)); }

bool is_precise(const CrossingMatrix& m, long k) {
  return std::all_of(m.counts.begin(), m.counts.end(), [k](const auto& e) { return e.second == 0 || e.second == k; });
}

bool is_kstring(const CrossingMatrix& m, long k) {
  return std::all_of(m.counts.begin(), m.counts.end(), [k](const auto& e) { return e.second <= k; });
}

bool is_odd(const CrossingMatrix& m) {
  return std::all_of(m.counts.begin(), m.counts.end(), [](const auto& e) { return e.second % 2 != 0 || e.second == 0; });
}

bool is_precise(const Representation& r, long k) { return is_precise(crossing_matrix(r), k); }
bool is_kstring(const Representation& r, long k) { return is_kstring(crossing_matrix(r), k); }
bool is_odd(const Representation& r) { return is_odd(crossing_matrix(r)); }

CrossingMatrix intersection_point_counts(const Representation& r) {
  ContactScan scan = scan_contacts(r);
  if (!scan.self_violations.empty())
    throw RepresentationError("curve '" + scan.self_violations.front().vertices.front() + "' is not simple");
  CrossingMatrix m;
  for (const auto& pc : scan.pairs) {
    if (pc.contacts.overlap)
      throw RepresentationError("curves '" + pc.first + "' and '" + pc.second + "' overlap");
    if (!pc.contacts.contacts.empty())
      m.counts[{pc.first, pc.second}] = static_cast<long>(pc.contacts.contacts.size());
  }
  return m;
}

bool is_kstring_lenient(const Representation& r, long k) { return is_kstring(intersection_point_counts(r), k); }

bool contains_induced(const IntersectionGraph& g, const IntersectionGraph& h,
                      const std::map<VertexId, VertexId>& mapping) {
  std::set<VertexId> image;
  for (const auto& v : h.vertices) {
    auto it = mapping.find(v);
    if (it == mapping.end()) throw RepresentationError("mapping misses vertex '" + v + "'");
    if (!g.vertices.count(it->second))
      throw RepresentationError("mapping target '" + it->second + "' is not a vertex of the host graph");
    if (!image.insert(it->second).second) throw RepresentationError("mapping is not injective");
  }
  std::vector<VertexId> hv(h.vertices.begin(), h.vertices.end());
  for (std::size_t i = 0; i < hv.size(); ++i)
    for (std::size_t j = i + 1; j < hv.size(); ++j)
      if (h.has_edge(hv[i], hv[j]) != g.has_edge(mapping.at(hv[i]), mapping.at(hv[j]))) return false;
  return true;
}

}  // namespace strgraph
