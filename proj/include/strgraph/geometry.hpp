#pragma once

#include <compare>
#include <cstddef>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include <gmpxx.h>

namespace strgraph {

using Rational = mpq_class;

class GeometryError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// n/d in lowest terms; GMP comparisons assume canonical values.
inline Rational ratio(long n, long d) {
  Rational q(n, d);
  q.canonicalize();
  return q;
}

/// Parses "num/den" (or a bare integer). Throws std::invalid_argument.
Rational parse_rational(const std::string& text);
/// "num/den" with den always written, e.g. "3/1".
std::string to_string(const Rational& q);
/// Largest power of two (possibly negative exponent) p with p*p <= q; q > 0.
Rational pow2_sqrt_floor(const Rational& q);
/// Largest power of two p with p <= q; q > 0.
Rational pow2_floor(const Rational& q);
long floor_to_long(const Rational& q);

struct Point {
  Rational x;
  Rational y;

  Point() = default;
  Point(Rational px, Rational py) : x(std::move(px)), y(std::move(py)) {}
  Point(long px, long py) : x(px), y(py) {}

  friend bool operator==(const Point& a, const Point& b) { return a.x == b.x && a.y == b.y; }
  friend std::strong_ordering operator<=>(const Point& a, const Point& b) {
    int c = cmp(a.x, b.x);
    if (c == 0) c = cmp(a.y, b.y);
    return c < 0 ? std::strong_ordering::less
                 : (c > 0 ? std::strong_ordering::greater : std::strong_ordering::equal);
  }
};

inline Point operator+(const Point& a, const Point& b) { return {a.x + b.x, a.y + b.y}; }
inline Point operator-(const Point& a, const Point& b) { return {a.x - b.x, a.y - b.y}; }
inline Point operator*(const Rational& s, const Point& a) { return {s * a.x, s * a.y}; }
inline Rational cross(const Point& a, const Point& b) { return a.x * b.y - a.y * b.x; }
inline Rational dot(const Point& a, const Point& b) { return a.x * b.x + a.y * b.y; }
inline Rational norm2(const Point& a) { return dot(a, a); }
/// max(|x|, |y|)
Rational norm_inf(const Point& a);
/// Sign of cross(b - a, c - a).
int orientation(const Point& a, const Point& b, const Point& c);
Point lerp(const Point& a, const Point& b, const Rational& t);

struct Segment {
  Point a;
  Point b;
};

Rational squared_distance(const Point& p, const Segment& s);

/// Simple piecewise-linear curve. Construction enforces at least two vertices,
/// distinct consecutive vertices and no reversal along a line.
class Polyline {
 public:
  Polyline() = default;
  explicit Polyline(std::vector<Point> vertices);

  const std::vector<Point>& vertices() const { return v_; }
  std::size_t size() const { return v_.size(); }
  std::size_t segment_count() const { return v_.empty() ? 0 : v_.size() - 1; }
  Segment segment(std::size_t i) const { return {v_[i], v_[i + 1]}; }
  const Point& front() const { return v_.front(); }
  const Point& back() const { return v_.back(); }
  Polyline reversed() const;

  friend bool operator==(const Polyline&, const Polyline&) = default;

 private:
  std::vector<Point> v_;
};

enum class ContactKind { empty, proper_crossing, touch_at_endpoint, touch_at_bend_interior, overlap };

std::string to_string(ContactKind k);

struct SegmentContact {
  ContactKind kind = ContactKind::empty;
  std::optional<Point> point;
};

/// For isolated segments: touch_at_endpoint when the point is an endpoint of
/// both segments, touch_at_bend_interior when it is an endpoint of exactly one.
SegmentContact segment_contact(const Segment& s1, const Segment& s2);

/// Raw intersection with parameters along both segments.
struct SegmentHit {
  enum Kind { none, point, overlap } kind = none;
  Point p;     // for overlap: the first shared point along s1
  Rational t;  // along s1
  Rational u;  // along s2
};
SegmentHit intersect_segments(const Segment& s1, const Segment& s2);

/// Position along a polyline: segment index and parameter in [0,1].
/// Normalized so that t == 1 only occurs on the last segment.
struct CurvePosition {
  std::size_t segment = 0;
  Rational t;

  friend bool operator==(const CurvePosition&, const CurvePosition&) = default;
  friend std::strong_ordering operator<=>(const CurvePosition& a, const CurvePosition& b) {
    if (a.segment != b.segment) return a.segment <=> b.segment;
    int c = cmp(a.t, b.t);
    return c < 0 ? std::strong_ordering::less
                 : (c > 0 ? std::strong_ordering::greater : std::strong_ordering::equal);
  }
};

CurvePosition normalize_position(const Polyline& c, std::size_t segment, const Rational& t);
Point point_at(const Polyline& c, const CurvePosition& pos);

struct PolylineContact {
  ContactKind kind = ContactKind::proper_crossing;
  Point point;
  CurvePosition on_first;
  CurvePosition on_second;
};

struct PolylineContacts {
  std::vector<PolylineContact> contacts;  // ordered along the first curve
  bool overlap = false;
};

/// Kinds are relative to the curves: touch_at_endpoint if the point is a
/// first/last vertex of either curve, touch_at_bend_interior if it is an
/// interior vertex of either, proper_crossing otherwise.
PolylineContacts polyline_contacts(const Polyline& c1, const Polyline& c2);
/// Deduplicates raw hits by point and assigns the curve-relative kinds above.
PolylineContacts assemble_contacts(const Polyline& c1, const Polyline& c2,
                                   std::vector<PolylineContact> raw, bool overlap);

bool is_simple(const Polyline& c);

/// Power-of-two delta with delta^2 <= minimum squared distance between
/// non-incident features (vertices and intersection points, and each of
/// them to every segment not passing through it). Throws on overlap.
Rational separation_bound(const std::vector<Polyline>& curves);

}  // namespace strgraph
