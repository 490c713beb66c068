#pragma once

#include <cstddef>
#include <cstdint>
#include <unordered_map>
#include <utility>
#include <vector>

#include "strgraph/geometry.hpp"

namespace strgraph {

/// Uniform bucket grid over segments. Cells are closed, so two segments that
/// share a point always share a cell.
class SegmentGrid {
 public:
  SegmentGrid(const std::vector<Segment>& segments, Rational cell);

  /// Power of two near the mean L-infinity segment length.
  static Rational suggest_cell(const std::vector<Segment>& segments);

  /// Index pairs (i < j) whose segments share a cell; sorted, unique.
  std::vector<std::pair<std::size_t, std::size_t>> candidate_pairs() const;
  /// Segments registered in any cell meeting the closed box [lo, hi]; sorted, unique.
  std::vector<std::size_t> query(const Point& lo, const Point& hi) const;

  const Rational& cell() const { return cell_; }

 private:
  struct KeyHash {
    std::size_t operator()(const std::pair<long, long>& k) const {
      return std::hash<long>()(k.first) * 1000003u ^ std::hash<long>()(k.second);
    }
  };
  Rational cell_;
  std::unordered_map<std::pair<long, long>, std::vector<std::size_t>, KeyHash> cells_;
};

/// All candidate pairs: exhaustive for small inputs, grid-filtered otherwise.
std::vector<std::pair<std::size_t, std::size_t>> candidate_segment_pairs(
    const std::vector<Segment>& segments);

bool boxes_meet(const Segment& s1, const Segment& s2);

}  // namespace strgraph
