#include "strgraph/spatial.hpp"

#include <algorithm>

namespace strgraph {

namespace {

constexpr std::size_t kExhaustiveLimit = 64;

long cell_of(const Rational& v, const Rational& h) {
  Rational q = v / h;
  return floor_to_long(q);
}

template <typename F>
void for_each_cell(const Segment& s, const Rational& h, F&& visit) {
  const Point& a = s.a;
  const Point& b = s.b;
  Rational minx = a.x < b.x ? a.x : b.x;
  Rational maxx = a.x < b.x ? b.x : a.x;
  long cx0 = cell_of(minx, h);
  long cx1 = cell_of(maxx, h);
  Rational dx = b.x - a.x;
  for (long cx = cx0; cx <= cx1; ++cx) {
    Rational lo = Rational(cx) * h;
    Rational hi = Rational(cx + 1) * h;
    if (lo < minx) lo = minx;
    if (hi > maxx) hi = maxx;
    Rational y0, y1;
    if (sgn(dx) == 0) {
      y0 = a.y;
      y1 = b.y;
    } else {
      Rational slope = (b.y - a.y) / dx;
      y0 = a.y + slope * (lo - a.x);
      y1 = a.y + slope * (hi - a.x);
    }
    if (y1 < y0) std::swap(y0, y1);
    long cy0 = cell_of(y0, h);
    long cy1 = cell_of(y1, h);
    for (long cy = cy0; cy <= cy1; ++cy) visit(cx, cy);
  }
}

}  // namespace

bool boxes_meet(const Segment& s1, const Segment& s2) {
  auto lo = [](const Rational& p, const Rational& q) -> const Rational& { return p < q ? p : q; };
  auto hi = [](const Rational& p, const Rational& q) -> const Rational& { return p < q ? q : p; };
  if (hi(s1.a.x, s1.b.x) < lo(s2.a.x, s2.b.x)) return false;
  if (hi(s2.a.x, s2.b.x) < lo(s1.a.x, s1.b.x)) return false;
  if (hi(s1.a.y, s1.b.y) < lo(s2.a.y, s2.b.y)) return false;
  if (hi(s2.a.y, s2.b.y) < lo(s1.a.y, s1.b.y)) return false;
  return true;
}

SegmentGrid::SegmentGrid(const std::vector<Segment>& segments, Rational cell)
    : cell_(std::move(cell)) {
  for (std::size_t i = 0; i < segments.size(); ++i) {
    for_each_cell(segments[i], cell_, [&](long cx, long cy) { cells_[{cx, cy}].push_back(i); });
  }
}

Rational SegmentGrid::suggest_cell(const std::vector<Segment>& segments) {
  if (segments.empty()) return Rational(1);
  Rational total = 0;
  for (const auto& s : segments) total += norm_inf(s.b - s.a);
  Rational mean = total / Rational(static_cast<long>(segments.size()));
  if (sgn(mean) <= 0) return Rational(1);
  return pow2_floor(mean);
}

std::vector<std::pair<std::size_t, std::size_t>> SegmentGrid::candidate_pairs() const {
  std::vector<std::pair<std::size_t, std::size_t>> out;
  for (const auto& [key, ids] : cells_) {
    for (std::size_t i = 0; i < ids.size(); ++i)
      for (std::size_t j = i + 1; j < ids.size(); ++j) {
        std::size_t a = ids[i], b = ids[j];
        if (a > b) std::swap(a, b);
        if (a != b) out.emplace_back(a, b);
      }
  }
  std::sort(out.begin(), out.end());
  out.erase(std::unique(out.begin(), out.end()), out.end());
  return out;
}

std::vector<std::size_t> SegmentGrid::query(const Point& lo, const Point& hi) const {
  std::vector<std::size_t> out;
  long cx0 = cell_of(lo.x, cell_), cx1 = cell_of(hi.x, cell_);
  long cy0 = cell_of(lo.y, cell_), cy1 = cell_of(hi.y, cell_);
  for (long cx = cx0; cx <= cx1; ++cx)
    for (long cy = cy0; cy <= cy1; ++cy) {
      auto it = cells_.find({cx, cy});
      if (it != cells_.end()) out.insert(out.end(), it->second.begin(), it->second.end());
    }
  std::sort(out.begin(), out.end());
  out.erase(std::unique(out.begin(), out.end()), out.end());
  return out;
}

std::vector<std::pair<std::size_t, std::size_t>> candidate_segment_pairs(
    const std::vector<Segment>& segments) {
  std::vector<std::pair<std::size_t, std::size_t>> out;
  if (segments.size() <= kExhaustiveLimit) {
    for (std::size_t i = 0; i < segments.size(); ++i)
      for (std::size_t j = i + 1; j < segments.size(); ++j)
        if (boxes_meet(segments[i], segments[j])) out.emplace_back(i, j);
    return out;
  }
  SegmentGrid grid(segments, SegmentGrid::suggest_cell(segments));
  for (auto& pr : grid.candidate_pairs())
    if (boxes_meet(segments[pr.first], segments[pr.second])) out.push_back(pr);
  return out;
}

}  // namespace strgraph
