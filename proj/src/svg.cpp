#include "strgraph/svg.hpp"

#include <algorithm>
#include <array>

#include <fmt/format.h>

namespace strgraph {

namespace {

constexpr std::array<const char*, 8> kPalette = {"#1f77b4", "#ff7f0e", "#2ca02c", "#9467bd",
                                                 "#8c564b", "#e377c2", "#17becf", "#7f7f7f"};

}  // namespace

std::string render_svg(const Representation& r, const SvgOptions& opt) {
  double x0 = 0, y0 = 0, x1 = 1, y1 = 1;
  bool first = true;
  for (const auto& [id, c] : r.curves())
    for (const auto& p : c.vertices()) {
      double x = p.x.get_d(), y = p.y.get_d();
      if (first) {
        x0 = x1 = x;
        y0 = y1 = y;
        first = false;
      }
      x0 = std::min(x0, x);
      x1 = std::max(x1, x);
      y0 = std::min(y0, y);
      y1 = std::max(y1, y);
    }
  double span = std::max({x1 - x0, y1 - y0, 1e-9});
  double margin = 0.05 * span;
  double scale = opt.width / (span + 2 * margin);
  auto sx = [&](double x) { return (x - x0 + margin) * scale; };
  auto sy = [&](double y) { return (y1 - y + margin) * scale; };
  double w = (x1 - x0 + 2 * margin) * scale, h = (y1 - y0 + 2 * margin) * scale;

  std::string out = fmt::format(
      "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"{:.6f}\" height=\"{:.6f}\" viewBox=\"0 0 {:.6f} {:.6f}\">\n", w,
      h, w, h);
  std::size_t k = 0;
  for (const auto& [id, c] : r.curves()) {
    const char* colour = kPalette[k++ % kPalette.size()];
    std::string d;
    for (std::size_t i = 0; i < c.size(); ++i)
      d += fmt::format("{}{:.6f},{:.6f}", i == 0 ? "M" : " L", sx(c.vertices()[i].x.get_d()),
                       sy(c.vertices()[i].y.get_d()));
    out += fmt::format("  <path id=\"{}\" d=\"{}\" fill=\"none\" stroke=\"{}\" stroke-width=\"1.5\"/>\n", id, d, colour);
    if (opt.labels)
      out += fmt::format("  <text x=\"{:.6f}\" y=\"{:.6f}\" font-size=\"10\" fill=\"{}\">{}</text>\n",
                         sx(c.front().x.get_d()), sy(c.front().y.get_d()), colour, id);
  }
  if (opt.mark_crossings) {
    ContactScan scan = scan_contacts(r);
    for (const auto& pc : scan.pairs)
      for (const auto& ct : pc.contacts.contacts)
        if (ct.kind == ContactKind::proper_crossing)
          out += fmt::format("  <circle cx=\"{:.6f}\" cy=\"{:.6f}\" r=\"2\" fill=\"black\"/>\n", sx(ct.point.x.get_d()),
                             sy(ct.point.y.get_d()));
    for (const auto& v : properness_of(r, scan).violations)
      out += fmt::format("  <circle cx=\"{:.6f}\" cy=\"{:.6f}\" r=\"4\" fill=\"none\" stroke=\"red\"/>\n",
                         sx(v.location.x.get_d()), sy(v.location.y.get_d()));
  }
  out += "</svg>\n";
  return out;
}

}  // namespace strgraph
