#pragma once

#include <string>

#include "strgraph/representation.hpp"

namespace strgraph {

/// Two interleaved zigzags `u`, `v` crossing exactly n times.
Representation sausage(long n);
/// Eight curves a1..d2, every pair crossing once.
Representation gadget_G1();
/// Curves a1, a2, b1, b2 with every intersecting pair crossing exactly k times (k >= 2).
Representation gadget_Gk(long k);
/// Verticals v1..v4 and horizontals h1..h4, every pair crossing k times (k odd).
Representation gadget_K8(long k);
/// Bold curves bold1, bold2 and thin curves thin1..thin6; all pair counts are 2.
Representation gadget_odd_counterexample();

/// Dispatch by CLI name: sausage | g1 | gk | k8 | odd-cx.
Representation make_gadget(const std::string& name, long k);

}  // namespace strgraph
