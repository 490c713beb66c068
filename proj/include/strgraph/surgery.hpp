#pragma once

#include <set>
#include <stdexcept>
#include <vector>

#include "strgraph/representation.hpp"

namespace strgraph {

class SurgeryError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// A crossing of `pair`, indexed along pair.first. The zigzag reroutes pair.second.
struct SurgerySite {
  VertexPair pair;
  std::size_t crossing_index = 0;
};

/// Replaces one crossing by 2 * extra + 1 crossings.
struct ZigzagRequest {
  SurgerySite site;
  long extra = 1;
};

/// Applies all zigzags in one pass. Every zigzag stays inside an L-infinity
/// box of half-width delta/4 around its crossing (delta = separation_bound).
Representation add_crossings(const Representation& r, const std::vector<ZigzagRequest>& requests);

Representation add_two(const Representation& r, const SurgerySite& site);
Representation quadruple(const Representation& r);
/// Throws SurgeryError("bipartition ...") when some intersecting pair is not split by `side`.
Representation double_side(const Representation& r, const std::set<VertexId>& side);
Representation make_proper(const Representation& r);
Representation equalize_to(const Representation& r, long m);
Representation pipeline_8k(const Representation& r, long k);

}  // namespace strgraph
