#include "strgraph/noodleforce.hpp"

#include <algorithm>
#include <map>

#include "strgraph/surgery.hpp"

namespace strgraph {

namespace {

const Rational kShrink(1, 8);   // s / pitch
const Rational kEnd(1, 32);     // e / pitch
constexpr int kFractionDepth = 5;
const Rational kMaxCells(1 << 20);

struct Frame {
  Rational p, s, e;
  Rational x0, y0;
  long nx = 0, ny = 0;

  Rational x(long i) const { return x0 + Rational(i) * p; }
  Rational y(long j) const { return y0 + Rational(j) * p; }
};

Frame frame_of(const MeshParameters& m) {
  Frame f;
  f.p = m.pitch;
  f.s = m.pitch * kShrink;
  f.e = m.pitch * kEnd;
  f.x0 = m.offset.x;
  f.y0 = m.offset.y;
  f.nx = m.nx;
  f.ny = m.ny;
  return f;
}

long floor_div(const Rational& a, const Rational& p) { return floor_to_long(a / p); }

long ceil_div(const Rational& a, const Rational& p) { return -floor_to_long(-a / p); }

// Fraction of a coordinate inside its pitch period: (v - origin)/p - floor(...).
Rational phase(const Rational& v, const Rational& origin, const Rational& p) {
  Rational u = (v - origin) / p;
  return u - Rational(floor_to_long(u));
}

struct Scene {
  std::vector<VertexId> ids;
  std::vector<std::vector<Segment>> segs;  // per curve
  std::vector<Point> features;             // vertices and crossing points
  std::map<std::pair<std::size_t, std::size_t>, std::vector<Point>> crossings;
  Point lo, hi;
  Rational p_max;
};

Scene scene_of(const Representation& r) {
  Scene sc;
  ContactScan scan = scan_contacts(r);
  if (!properness_of(r, scan).proper) throw NoodleForceError("noodle forcing needs a proper representation");
  std::map<VertexId, std::size_t> index;
  bool first = true;
  Rational min_dim;
  for (const auto& [id, c] : r.curves()) {
    index[id] = sc.ids.size();
    sc.ids.push_back(id);
    std::vector<Segment> s;
    for (std::size_t i = 0; i < c.segment_count(); ++i) s.push_back(c.segment(i));
    sc.segs.push_back(std::move(s));
    Point clo = c.front(), chi = c.front();
    for (const auto& v : c.vertices()) {
      sc.features.push_back(v);
      if (v.x < clo.x) clo.x = v.x;
      if (v.y < clo.y) clo.y = v.y;
      if (v.x > chi.x) chi.x = v.x;
      if (v.y > chi.y) chi.y = v.y;
    }
    Rational dim = norm_inf(chi - clo);
    if (first || dim < min_dim) min_dim = dim;
    if (first) {
      sc.lo = clo;
      sc.hi = chi;
    } else {
      if (clo.x < sc.lo.x) sc.lo.x = clo.x;
      if (clo.y < sc.lo.y) sc.lo.y = clo.y;
      if (chi.x > sc.hi.x) sc.hi.x = chi.x;
      if (chi.y > sc.hi.y) sc.hi.y = chi.y;
    }
    first = false;
  }
  for (const auto& pc : scan.pairs)
    for (const auto& c : pc.contacts.contacts) {
      sc.features.push_back(c.point);
      sc.crossings[{index[pc.first], index[pc.second]}].push_back(c.point);
    }
  sc.p_max = first ? Rational(1) : pow2_floor(min_dim / 2);
  return sc;
}

MeshParameters place(const Scene& sc, const Rational& p, const Rational& fx, const Rational& fy) {
  MeshParameters m;
  m.pitch = p;
  Rational ox = fx * p, oy = fy * p;
  Rational margin = 2 * p;
  Rational x0 = ox + Rational(floor_div(sc.lo.x - margin - ox, p)) * p;
  Rational y0 = oy + Rational(floor_div(sc.lo.y - margin - oy, p)) * p;
  m.offset = {x0, y0};
  m.nx = ceil_div(sc.hi.x + margin - x0, p);
  m.ny = ceil_div(sc.hi.y + margin - y0, p);
  return m;
}

bool on_mesh_line(const Rational& ph) { return sgn(ph) == 0 || ph == kShrink; }

bool features_clear(const Scene& sc, const Frame& f) {
  for (const auto& q : sc.features) {
    if (on_mesh_line(phase(q.x, f.x0, f.p)) || on_mesh_line(phase(q.y, f.y0, f.p))) return false;
  }
  return true;
}

// A crossing with a mesh line inside a node window [node - e, node + s + e],
// where consecutive pieces overlap.
bool crosses_in_window(const Segment& sg, const Frame& f) {
  Point d = sg.b - sg.a;
  for (int axis = 0; axis < 2; ++axis) {
    const Rational& a = axis == 0 ? sg.a.x : sg.a.y;
    const Rational& b = axis == 0 ? sg.b.x : sg.b.y;
    const Rational& da = axis == 0 ? d.x : d.y;
    const Rational& origin = axis == 0 ? f.x0 : f.y0;
    if (sgn(da) == 0) continue;
    Rational lo = a < b ? a : b, hi = a < b ? b : a;
    long k0 = floor_div(lo - origin - f.s, f.p), k1 = floor_div(hi - origin, f.p);
    for (long k = k0; k <= k1; ++k)
      for (int sub = 0; sub < 2; ++sub) {
        Rational line = origin + Rational(k) * f.p + (sub ? f.s : Rational(0));
        if (line <= lo || line >= hi) continue;
        Rational t = (line - a) / da;
        Rational other = axis == 0 ? sg.a.y + t * d.y : sg.a.x + t * d.x;
        Rational ph = phase(other, axis == 0 ? f.y0 : f.x0, f.p);
        if (ph <= kShrink + kEnd || ph >= 1 - kEnd) return true;
      }
  }
  return false;
}

// Crossings of a curve segment with mesh lines, reported as mesh piece ids.
template <typename Visit>
void mesh_crossings(const Segment& sg, const Frame& f, Visit&& visit) {
  Point d = sg.b - sg.a;
  for (int axis = 0; axis < 2; ++axis) {
    const Rational& a = axis == 0 ? sg.a.x : sg.a.y;
    const Rational& b = axis == 0 ? sg.b.x : sg.b.y;
    const Rational& da = axis == 0 ? d.x : d.y;
    const Rational& origin = axis == 0 ? f.x0 : f.y0;
    if (sgn(da) == 0) continue;
    Rational lo = a < b ? a : b, hi = a < b ? b : a;
    long k0 = floor_div(lo - origin - f.s, f.p), k1 = floor_div(hi - origin, f.p);
    for (long k = k0; k <= k1; ++k)
      for (int sub = 0; sub < 2; ++sub) {
        Rational line = origin + Rational(k) * f.p + (sub ? f.s : Rational(0));
        if (line <= lo || line >= hi) continue;
        Rational t = (line - a) / da;
        Rational other = axis == 0 ? sg.a.y + t * d.y : sg.a.x + t * d.x;
        const Rational& o_origin = axis == 0 ? f.y0 : f.x0;
        long m = floor_div(other - o_origin, f.p);
        if ((((m % 2) + 2) % 2) != sub) continue;
        long limit = axis == 0 ? f.ny : f.nx;
        long along = axis == 0 ? f.nx : f.ny;
        if (k < 0 || k > along || m < 0 || m >= limit) continue;
        // Column line k crosses vertical piece (k, m); row line k crosses horizontal piece (m, k).
        visit(axis == 0 ? mesh_v_id(k, m) : mesh_h_id(m, k));
      }
  }
}

bool single_crossings(const Scene& sc, const Frame& f) {
  for (std::size_t c = 0; c < sc.segs.size(); ++c) {
    std::map<std::string, int> seen;
    bool ok = true;
    for (const auto& sg : sc.segs[c]) {
      mesh_crossings(sg, f, [&](const std::string& id) {
        if (++seen[id] > 1) ok = false;
      });
      if (!ok) return false;
    }
  }
  return true;
}

using Cell = std::pair<long, long>;

Cell cell_of(const Point& q, const Frame& f) { return {floor_div(q.x - f.x0, f.p), floor_div(q.y - f.y0, f.p)}; }

std::set<Cell> cells_of(const std::vector<Segment>& segs, const Frame& f) {
  std::set<Cell> out;
  for (const auto& sg : segs) {
    Point d = sg.b - sg.a;
    std::vector<Rational> ts{Rational(0), Rational(1)};
    for (int axis = 0; axis < 2; ++axis) {
      const Rational& a = axis == 0 ? sg.a.x : sg.a.y;
      const Rational& da = axis == 0 ? d.x : d.y;
      const Rational& origin = axis == 0 ? f.x0 : f.y0;
      if (sgn(da) == 0) continue;
      const Rational& b = axis == 0 ? sg.b.x : sg.b.y;
      Rational lo = a < b ? a : b, hi = a < b ? b : a;
      for (long k = floor_div(lo - origin, f.p) + 1; origin + Rational(k) * f.p < hi; ++k)
        ts.push_back((origin + Rational(k) * f.p - a) / da);
    }
    std::sort(ts.begin(), ts.end());
    for (std::size_t i = 0; i + 1 < ts.size(); ++i)
      if (ts[i] < ts[i + 1]) out.insert(cell_of(lerp(sg.a, sg.b, (ts[i] + ts[i + 1]) / 2), f));
  }
  return out;
}

bool cells_separate(const Scene& sc, const Frame& f) {
  std::map<Cell, std::vector<std::size_t>> occupants;
  for (std::size_t c = 0; c < sc.segs.size(); ++c)
    for (const auto& cell : cells_of(sc.segs[c], f)) occupants[cell].push_back(c);
  std::map<std::pair<std::size_t, std::size_t>, std::set<Cell>> near;
  for (const auto& [key, pts] : sc.crossings)
    for (const auto& q : pts) near[key].insert(cell_of(q, f));
  for (const auto& [cell, list] : occupants)
    for (std::size_t i = 0; i < list.size(); ++i)
      for (std::size_t j = i + 1; j < list.size(); ++j) {
        auto it = near.find({list[i], list[j]});
        if (it == near.end()) return false;
        bool close = false;
        for (const auto& c : it->second)
          if (std::abs(c.first - cell.first) <= 1 && std::abs(c.second - cell.second) <= 1) close = true;
        if (!close) return false;
      }
  return true;
}

std::vector<Rational> fractions() {
  std::vector<Rational> out;
  for (int depth = 1; depth <= kFractionDepth; ++depth) {
    long den = 1L << depth;
    for (long t = 1; t < den; t += 2) out.emplace_back(t, den);
  }
  return out;
}

}  // namespace

Point MeshParameters::extent_lo() const { return offset; }

Point MeshParameters::extent_hi() const {
  Rational s = pitch * kShrink;
  return {offset.x + Rational(nx) * pitch + s, offset.y + Rational(ny) * pitch + s};
}

std::string mesh_h_id(long i, long j) { return "mesh:h:" + std::to_string(i) + ":" + std::to_string(j); }
std::string mesh_v_id(long i, long j) { return "mesh:v:" + std::to_string(i) + ":" + std::to_string(j); }
bool is_mesh_id(const VertexId& id) { return id.rfind("mesh:", 0) == 0; }

MeshParameters choose_mesh(const Representation& r) {
  Scene sc = scene_of(r);
  if (r.empty()) return place(sc, Rational(1), ratio(1, 2), ratio(1, 2));
  std::vector<Rational> fr = fractions();
  // Offsets ordered by dyadic depth so coarse offsets are tried first.
  std::vector<std::pair<Rational, Rational>> offsets;
  std::vector<int> depth;
  for (const auto& q : fr) depth.push_back(static_cast<int>(mpz_sizeinbase(q.get_den_mpz_t(), 2)));
  for (int dmax = 1; dmax <= kFractionDepth + 1; ++dmax)
    for (std::size_t a = 0; a < fr.size(); ++a)
      for (std::size_t b = 0; b < fr.size(); ++b)
        if (std::max(depth[a], depth[b]) == dmax) offsets.emplace_back(fr[a], fr[b]);

  Rational p = sc.p_max;
  Rational area = (sc.hi.x - sc.lo.x + 1) * (sc.hi.y - sc.lo.y + 1);
  for (int level = 0; level < 48; ++level, p /= 2) {
    if (area / (p * p) > kMaxCells)
      throw NoodleForceError("no admissible mesh with pitch >= " + to_string(2 * p));
    for (const auto& [fx, fy] : offsets) {
      MeshParameters m = place(sc, p, fx, fy);
      Frame f = frame_of(m);
      if (!features_clear(sc, f)) continue;
      bool windowed = false;
      for (const auto& segs : sc.segs) {
        for (const auto& sg : segs)
          if (crosses_in_window(sg, f)) {
            windowed = true;
            break;
          }
        if (windowed) break;
      }
      if (windowed) continue;
      if (!single_crossings(sc, f)) continue;
      if (!cells_separate(sc, f)) continue;
      return m;
    }
  }
  throw NoodleForceError("no admissible mesh found");
}

Representation mesh_curves(const MeshParameters& m) {
  Frame f = frame_of(m);
  Representation out;
  for (long j = 0; j <= f.ny; ++j)
    for (long i = 0; i < f.nx; ++i) {
      Rational y = f.y(j) + (i % 2 ? f.s : Rational(0));
      out.add(mesh_h_id(i, j), Polyline({{f.x(i) - f.e, y}, {f.x(i + 1) + f.s + f.e, y}}));
    }
  for (long i = 0; i <= f.nx; ++i)
    for (long j = 0; j < f.ny; ++j) {
      Rational x = f.x(i) + (j % 2 ? f.s : Rational(0));
      out.add(mesh_v_id(i, j), Polyline({{x, f.y(j) - f.e}, {x, f.y(j + 1) + f.s + f.e}}));
    }
  return out;
}

NoodleForceResult noodle_force(const Representation& r) {
  NoodleForceResult res;
  res.mesh = choose_mesh(r);
  Representation all = mesh_curves(res.mesh);
  for (const auto& [id, c] : r.curves()) {
    if (is_mesh_id(id)) throw NoodleForceError("curve id '" + id + "' collides with mesh ids");
    all.add(id, c);
    res.original_vertices.insert(id);
  }
  res.graph = intersection_graph(all);
  res.representation = std::move(all);
  return res;
}

namespace {

// Smallest positive distance from a feature coordinate up to the mesh line just below it.
Rational line_gap(const std::vector<Point>& features, const Frame& f, bool along_x) {
  Rational best = f.e;
  for (const auto& q : features) {
    Rational ph = phase(along_x ? q.x : q.y, along_x ? f.x0 : f.y0, f.p) * f.p;
    Rational gap = ph < f.s ? ph : ph - f.s;
    if (sgn(gap) > 0 && gap < best) best = gap;
  }
  return best;
}

// Gives every mesh piece a parallel return part so that all its crossings are
// doubled except those at one end: horizontal pieces stay single at nodes
// with i + j even, vertical pieces at nodes with i + j odd.
Representation double_mesh(const Representation& base, const MeshParameters& m, const Rational& d) {
  Frame f = frame_of(m);
  Representation out = base;
  for (long j = 0; j <= f.ny; ++j)
    for (long i = 0; i < f.nx; ++i) {
      Rational y = f.y(j) + (i % 2 ? f.s : Rational(0));
      Rational xa = f.x(i) - f.e, xb = f.x(i + 1) + f.s + f.e;
      std::vector<Point> pts;
      if ((i + j) % 2 == 0)
        pts = {{xa, y}, {xb, y}, {xb, y + d}, {f.x(i) + f.s + f.e, y + d}};
      else
        pts = {{f.x(i + 1) - f.e, y + d}, {xa, y + d}, {xa, y}, {xb, y}};
      out.set(mesh_h_id(i, j), Polyline(std::move(pts)));
    }
  for (long i = 0; i <= f.nx; ++i)
    for (long j = 0; j < f.ny; ++j) {
      Rational x = f.x(i) + (j % 2 ? f.s : Rational(0));
      Rational ya = f.y(j) - f.e, yb = f.y(j + 1) + f.s + f.e;
      std::vector<Point> pts;
      if ((i + j) % 2 == 1)
        pts = {{x, ya}, {x, yb}, {x + d, yb}, {x + d, f.y(j) + f.s + f.e}};
      else
        pts = {{x + d, f.y(j + 1) - f.e}, {x + d, ya}, {x, ya}, {x, yb}};
      out.set(mesh_v_id(i, j), Polyline(std::move(pts)));
    }
  return out;
}

}  // namespace

NoodleForceResult noodle_force_precise(const Representation& r, long k) {
  if (k < 1) throw NoodleForceError("k must be positive");
  if (!is_precise(r, k)) throw NoodleForceError("input is not a (=" + std::to_string(k) + ")-string representation");
  NoodleForceResult res = noodle_force(r);
  Representation rep = res.representation;
  long base_count = 1;
  if (k % 2 == 0) {
    Frame f = frame_of(res.mesh);
    std::vector<Point> features;
    for (const auto& [id, c] : r.curves())
      for (const auto& v : c.vertices()) features.push_back(v);
    for (const auto& [key, c] : crossing_matrix(r).counts) {
      (void)c;
      for (const auto& pc : polyline_contacts(r.at(key.first), r.at(key.second)).contacts) features.push_back(pc.point);
    }
    Rational gx = line_gap(features, f, true), gy = line_gap(features, f, false);
    Rational d = pow2_floor(gx < gy ? gx : gy) / 2;
    bool done = false;
    for (int attempt = 0; attempt < 32 && !done; ++attempt, d /= 2) {
      Representation cand = double_mesh(rep, res.mesh, d);
      CrossingMatrix cm;
      try {
        cm = crossing_matrix(cand);
      } catch (const RepresentationError&) {
        continue;
      }
      bool ok = cm.counts.size() == res.graph.edges.size();
      for (const auto& [key, c] : cm.counts) {
        bool mesh_pair = is_mesh_id(key.first) || is_mesh_id(key.second);
        if (c != (mesh_pair ? 2 : k)) ok = false;
      }
      if (ok) {
        rep = std::move(cand);
        done = true;
      }
    }
    if (!done) throw NoodleForceError("could not double the mesh safely");
    base_count = 2;
  }
  if (k > base_count) {
    std::vector<ZigzagRequest> reqs;
    for (const auto& [u, v] : res.graph.edges) {
      bool mu = is_mesh_id(u), mv = is_mesh_id(v);
      if (!mu && !mv) continue;
      VertexPair site;
      if (mu && mv)
        site = u.rfind("mesh:v:", 0) == 0 ? VertexPair{v, u} : VertexPair{u, v};
      else
        site = mu ? VertexPair{v, u} : VertexPair{u, v};
      reqs.push_back({{site, 0}, (k - base_count) / 2});
    }
    rep = add_crossings(rep, reqs);
  }
  CrossingMatrix cm = crossing_matrix(rep);
  if (!is_precise(cm, k) || graph_of(rep, cm) != res.graph)
    throw NoodleForceError("internal: (=k) mesh construction failed its own check");
  res.representation = std::move(rep);
  return res;
}

}  // namespace strgraph
