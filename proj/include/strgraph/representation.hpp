#pragma once

#include <map>
#include <optional>
#include <set>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "strgraph/geometry.hpp"

namespace strgraph {

using VertexId = std::string;
using VertexPair = std::pair<VertexId, VertexId>;

/// Ordered pair with first < second.
VertexPair make_pair_key(const VertexId& a, const VertexId& b);

class RepresentationError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

class Representation {
 public:
  using CurveMap = std::map<VertexId, Polyline>;

  /// Throws on empty or duplicate id.
  void add(const VertexId& id, Polyline curve);
  /// Inserts or replaces.
  void set(const VertexId& id, Polyline curve);

  bool contains(const VertexId& id) const { return curves_.count(id) != 0; }
  const Polyline& at(const VertexId& id) const;
  const CurveMap& curves() const { return curves_; }
  std::size_t size() const { return curves_.size(); }
  bool empty() const { return curves_.empty(); }
  std::vector<VertexId> ids() const;
  std::vector<Polyline> polylines() const;

  Representation restricted(const std::set<VertexId>& keep) const;

  std::optional<long> declared_k;

  friend bool operator==(const Representation&, const Representation&) = default;

 private:
  CurveMap curves_;
};

struct CrossingMatrix {
  std::map<VertexPair, long> counts;  // keys ordered, zero entries absent

  long get(const VertexId& a, const VertexId& b) const;
  friend bool operator==(const CrossingMatrix&, const CrossingMatrix&) = default;
};

struct IntersectionGraph {
  std::set<VertexId> vertices;
  std::set<VertexPair> edges;  // keys ordered

  bool has_edge(const VertexId& a, const VertexId& b) const;
  void add_edge(const VertexId& a, const VertexId& b);
  friend bool operator==(const IntersectionGraph&, const IntersectionGraph&) = default;
};

enum class ViolationKind { self_intersection, overlap, triple_point, contact_at_bend_or_endpoint };

std::string to_string(ViolationKind k);

struct Violation {
  ViolationKind kind;
  Point location;
  std::vector<VertexId> vertices;
};

struct PropernessReport {
  bool proper = true;
  std::vector<Violation> violations;
};

/// Every contact between two distinct curves, grouped by pair.
struct PairContacts {
  VertexId first;
  VertexId second;
  PolylineContacts contacts;  // ordered along `first`
  std::optional<Point> overlap_at;
};

struct ContactScan {
  std::vector<PairContacts> pairs;        // only pairs that meet; ordered by key
  std::vector<Violation> self_violations;  // non-simple curves
};

ContactScan scan_contacts(const Representation& r);
PropernessReport properness_of(const Representation& r, const ContactScan& scan);

PropernessReport validate_proper(const Representation& r);

/// Throws RepresentationError when the representation is improper.
CrossingMatrix crossing_matrix(const Representation& r);
IntersectionGraph graph_of(const Representation& r, const CrossingMatrix& m);
IntersectionGraph intersection_graph(const Representation& r);

bool is_precise(const Representation& r, long k);
bool is_kstring(const Representation& r, long k);
bool is_odd(const Representation& r);
bool is_precise(const CrossingMatrix& m, long k);
bool is_kstring(const CrossingMatrix& m, long k);
bool is_odd(const CrossingMatrix& m);

/// Distinct intersection points per pair; accepts improper input (touchings,
/// triple points, contacts at bends) but throws on overlap or non-simple curves.
CrossingMatrix intersection_point_counts(const Representation& r);
bool is_kstring_lenient(const Representation& r, long k);

/// True iff `mapping` (H vertex -> G vertex) preserves edges and non-edges.
/// Throws RepresentationError for non-injective or partial mappings.
bool contains_induced(const IntersectionGraph& g, const IntersectionGraph& h,
                      const std::map<VertexId, VertexId>& mapping);

}  // namespace strgraph
