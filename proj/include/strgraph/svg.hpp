#pragma once

#include <string>

#include "strgraph/representation.hpp"

namespace strgraph {

struct SvgOptions {
  double width = 800;
  bool mark_crossings = true;
  bool labels = true;
};

/// One path per curve; crossings as small dots, violations in red.
std::string render_svg(const Representation& r, const SvgOptions& opt = {});

}  // namespace strgraph
