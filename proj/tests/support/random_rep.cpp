#include "random_rep.hpp"

#include <algorithm>

#include "oracle.hpp"

namespace fixtures {

using strgraph::Point;
using strgraph::Polyline;
using strgraph::Rational;

namespace {

Rational coord(std::mt19937_64& rng, long lo, long hi) {
  std::uniform_int_distribution<long> d(lo * 64, hi * 64);
  return strgraph::ratio(d(rng), 64);
}

std::optional<Polyline> try_curve(std::vector<Point> pts) {
  try {
    Polyline c(std::move(pts));
    Representation single;
    single.add("c", c);
    if (!oracle::is_proper(single)) return std::nullopt;
    return c;
  } catch (const std::exception&) {
    return std::nullopt;
  }
}

std::string name(int i) { return "c" + std::to_string(i); }

}  // namespace

Representation random_proper(std::mt19937_64& rng, int max_curves, int max_segments) {
  for (;;) {
    Representation r;
    int n = std::uniform_int_distribution<int>(2, max_curves)(rng);
    for (int i = 0; i < n; ++i) {
      std::optional<Polyline> c;
      while (!c) {
        int segs = std::uniform_int_distribution<int>(1, max_segments)(rng);
        std::vector<Point> pts;
        for (int s = 0; s <= segs; ++s) pts.push_back({coord(rng, 0, 16), coord(rng, 0, 16)});
        c = try_curve(std::move(pts));
      }
      r.add(name(i), *c);
    }
    if (oracle::is_proper(r) && !oracle::meeting_points(r).empty()) return r;
  }
}

namespace {

Polyline walk(std::mt19937_64& rng) {
  for (;;) {
    int segs = std::uniform_int_distribution<int>(1, 4)(rng);
    std::vector<Point> pts{{coord(rng, 0, 8), coord(rng, 0, 8)}};
    for (int s = 0; s < segs; ++s) pts.push_back({pts.back().x + coord(rng, -3, 3), pts.back().y + coord(rng, -3, 3)});
    if (auto c = try_curve(std::move(pts))) return *c;
  }
}

bool within(const Representation& r, long k) {
  try {
    auto c = oracle::counts(r);
    return std::all_of(c.begin(), c.end(), [k](const auto& e) { return e.second <= k; });
  } catch (const std::exception&) {
    return false;
  }
}

bool curves_simple(const Representation& r) {
  for (const auto& [id, c] : r.curves()) {
    Representation single;
    single.add(id, c);
    if (!oracle::is_proper(single)) return false;
  }
  return true;
}

}  // namespace

Representation random_kstring(std::mt19937_64& rng, long k, bool inject) {
  for (;;) {
    Representation r;
    int n = std::uniform_int_distribution<int>(3, 5)(rng);
    for (int i = 0; i < n; ++i) r.add(name(i), walk(rng));
    if (!within(r, k) || oracle::meeting_points(r).empty()) continue;
    if (!inject) {
      if (oracle::is_proper(r)) return r;
      continue;
    }
    // A curve through an existing crossing (triple point).
    auto meets = oracle::meeting_points(r);
    auto it = meets.begin();
    std::advance(it, std::uniform_int_distribution<std::size_t>(0, meets.size() - 1)(rng));
    Point p = *it->second.begin();
    Point d{coord(rng, -1, 1), coord(rng, -1, 1)};
    if (d == Point{}) continue;
    Representation t = r;
    t.add(name(n), Polyline({p - d, p + d}));
    // A V-shaped curve whose bend touches the middle of a segment of c0.
    const auto& c0 = r.at(name(0)).vertices();
    Point q = strgraph::lerp(c0[0], c0[1], strgraph::ratio(1, 2));
    Point dir = c0[1] - c0[0];
    Point nrm{-dir.y / 8, dir.x / 8};
    t.add(name(n + 1), Polyline({q + nrm - strgraph::ratio(1, 8) * dir, q, q + nrm + strgraph::ratio(1, 8) * dir}));
    if (!within(t, k) || !curves_simple(t) || oracle::is_proper(t)) continue;
    return t;
  }
}

std::pair<Representation, std::set<strgraph::VertexId>> bipartite_part(const Representation& r,
                                                                        std::mt19937_64& rng) {
  auto g = oracle::graph(r);
  std::set<strgraph::VertexId> left, right;
  Representation kept;
  for (const auto& id : r.ids()) {
    bool can_left = std::none_of(left.begin(), left.end(), [&](const auto& o) { return g.has_edge(id, o); });
    bool can_right = std::none_of(right.begin(), right.end(), [&](const auto& o) { return g.has_edge(id, o); });
    if (can_left && can_right) {
      (rng() % 2 ? left : right).insert(id);
    } else if (can_left) {
      left.insert(id);
    } else if (can_right) {
      right.insert(id);
    } else {
      continue;
    }
    kept.add(id, r.at(id));
  }
  return {kept, left};
}

}  // namespace fixtures
