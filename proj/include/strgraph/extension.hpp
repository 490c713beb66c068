#pragma once

#include <map>
#include <optional>
#include <string>
#include <vector>

#include "strgraph/representation.hpp"

namespace strgraph {

class ExtensionError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// One crossing met along a curve. `pair_index` numbers the crossings of the
/// pair along the lexicographically smaller curve, so both curves agree on it.
struct CrossingEvent {
  VertexId other;
  long pair_index = 0;
  CurvePosition position;

  friend bool operator==(const CrossingEvent& a, const CrossingEvent& b) {
    return a.other == b.other && a.pair_index == b.pair_index;
  }
};

struct CrossingSequence {
  VertexId curve;
  std::vector<CrossingEvent> events;
};

struct Depths {
  long left = 0;
  long right = 0;
  friend bool operator==(const Depths&, const Depths&) = default;
};

/// Curves missing from the map have depths (0, 0).
struct ExtensionProfile {
  std::map<VertexId, Depths> depths;
  Depths at(const VertexId& id) const;
  friend bool operator==(const ExtensionProfile&, const ExtensionProfile&) = default;
};

using ExtendedCounts = CrossingMatrix;

/// permissive: the two parts of a curve may cover the same event (a_p = 2).
/// disjoint: left + right <= number of events.
enum class OverlapMode { permissive, disjoint };

CrossingSequence crossing_sequence(const Representation& r, const VertexId& v);
std::map<VertexId, CrossingSequence> crossing_sequences(const Representation& r);

ExtendedCounts extended_counts(const Representation& r, const ExtensionProfile& profile,
                               OverlapMode mode = OverlapMode::permissive);
ExtendedCounts extended_counts(const std::map<VertexId, CrossingSequence>& seqs, const ExtensionProfile& profile,
                               OverlapMode mode = OverlapMode::permissive);

/// Complete backtracking search for a profile making every intersecting pair
/// cross exactly `target` times. Curves are assigned in id order, depths ascending.
std::optional<ExtensionProfile> search_extension(const Representation& r, long target,
                                                 OverlapMode mode = OverlapMode::permissive);

/// Geometric realization: parallel parts at small offset (left part on the
/// left side, right part on the right side), verified against extended_counts.
Representation realize_extension(const Representation& r, const ExtensionProfile& profile);

/// `extend <curve> <left> <right>` per curve, sorted by curve id.
std::string serialize(const ExtensionProfile& p, const Representation& r);
ExtensionProfile parse_profile(const std::string& text);

}  // namespace strgraph
