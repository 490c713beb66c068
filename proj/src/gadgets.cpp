#include "strgraph/gadgets.hpp"

#include <stdexcept>

#include "strgraph/surgery.hpp"

namespace strgraph {

namespace {

Polyline poly(std::initializer_list<std::pair<long, long>> pts) {
  std::vector<Point> v;
  for (auto [x, y] : pts) v.emplace_back(x, y);
  return Polyline(std::move(v));
}

// Drops vertices that continue straight on.
Polyline simplified(std::vector<Point> v) {
  std::vector<Point> out;
  for (const auto& p : v) {
    if (out.size() >= 2 && sgn(cross(out.back() - out[out.size() - 2], p - out.back())) == 0) out.back() = p;
    else out.push_back(p);
  }
  return Polyline(std::move(out));
}

}  // namespace

Representation sausage(long n) {
  if (n < 1) throw std::invalid_argument("sausage needs n >= 1");
  std::vector<Point> u, v;
  for (long i = 0; i <= n; ++i) {
    u.emplace_back(2 * i, i % 2 == 0 ? 0 : 2);
    v.emplace_back(2 * i, i % 2 == 0 ? 2 : 0);
  }
  Representation r;
  r.add("u", Polyline(std::move(u)));
  r.add("v", Polyline(std::move(v)));
  r.declared_k = n;
  return r;
}

Representation gadget_G1() {
  Representation r;
  r.add("a1", poly({{0, 7}, {7, 0}}));
  r.add("a2", poly({{1, 7}, {0, 6}, {6, 0}}));
  r.add("b1", poly({{3, 7}, {0, 4}, {4, 0}}));
  r.add("b2", poly({{5, 0}, {1, 4}, {3, 6}, {2, 7}}));
  r.add("c1", poly({{7, 7}, {0, 0}}));
  r.add("c2", poly({{6, 7}, {7, 6}, {1, 0}}));
  r.add("d1", poly({{5, 7}, {4, 6}, {6, 4}, {2, 0}}));
  r.add("d2", poly({{3, 0}, {7, 4}, {4, 7}}));
  r.declared_k = 1;
  return r;
}

Representation gadget_Gk(long k) {
  if (k < 2) throw std::invalid_argument("Gk needs k >= 2");
  // Start heights; a-curves live in [1,3], b-curves in [0,2] at the far end.
  long y[4] = {3, 2, 1, 0};  // a1, a2, b1, b2
  std::vector<Point> path[4];
  for (long x = 0; x < k; ++x)
    for (int c = 0; c < 4; ++c) {
      if (x > 0) y[c] = (c < 2) ? (y[c] == 3 ? 2 : 3) : (y[c] == 1 ? 0 : 1);
      path[c].emplace_back(x, y[c]);
    }
  long x = k - 1;
  for (long step = 0; step < k; ++step) {
    x += 2;
    for (int c = 0; c < 4; ++c) {
      if (c < 2) y[c] += y[c] >= 2 ? -2 : 2;
      else y[c] += y[c] <= 1 ? 2 : -2;
      path[c].emplace_back(x, y[c]);
    }
  }
  x += 1;
  std::swap(y[0], y[1]);
  std::swap(y[2], y[3]);
  for (int c = 0; c < 4; ++c) path[c].emplace_back(x, y[c]);
  Representation r;
  r.add("a1", simplified(path[0]));
  r.add("a2", simplified(path[1]).reversed());
  r.add("b1", simplified(path[2]));
  r.add("b2", simplified(path[3]).reversed());
  r.declared_k = k;
  return r;
}

Representation gadget_K8(long k) {
  if (k < 1 || k % 2 == 0) throw std::invalid_argument("K8 needs an odd positive k");
  Representation r;
  // Verticals: swap v1/v2 and v3/v4 at the top, cross {v1,v2} with {v3,v4} below.
  r.add("v1", poly({{3, -4}, {1, 0}, {1, 5}, {2, 7}}));
  r.add("v2", poly({{4, -4}, {2, 0}, {2, 5}, {1, 7}}));
  r.add("v3", poly({{1, -4}, {3, 0}, {3, 5}, {4, 7}}));
  r.add("v4", poly({{2, -4}, {4, 0}, {4, 5}, {3, 7}}));
  // Horizontals: the same pattern turned on its side.
  r.add("h1", poly({{-2, 2}, {0, 1}, {5, 1}, {9, 3}}));
  r.add("h2", poly({{-2, 1}, {0, 2}, {5, 2}, {9, 4}}));
  r.add("h3", poly({{-2, 4}, {0, 3}, {5, 3}, {9, 1}}));
  r.add("h4", poly({{-2, 3}, {0, 4}, {5, 4}, {9, 2}}));
  if (k > 1) {
    std::vector<ZigzagRequest> reqs;
    for (const auto& [key, c] : crossing_matrix(r).counts) reqs.push_back({{key, 0}, (k - 1) / 2});
    r = add_crossings(r, reqs);
  }
  r.declared_k = k;
  return r;
}

Representation gadget_odd_counterexample() {
  Representation r;
  r.add("bold1", poly({{2, 26}, {2, 0}}));
  r.add("bold2", poly({{26, 0}, {26, 26}}));
  for (long i = 1; i <= 6; ++i) {
    long lo = 2 + 4 * (i - 1), hi = lo + 2;
    std::vector<Point> v{{3, hi}, {0, hi}, {0, lo}};
    if (i >= 2) {
      long dip = 6 + 4 * (i - 2);
      // rectilinear dip; slanted legs this long cannot dodge the mesh nodes
      v.emplace_back(dip - 1, lo);
      v.emplace_back(dip - 1, 0);
      v.emplace_back(dip + 1, 0);
      v.emplace_back(dip + 1, lo);
    }
    v.emplace_back(28, lo);
    v.emplace_back(28, hi);
    v.emplace_back(25, hi);
    r.add("thin" + std::to_string(i), Polyline(std::move(v)));
  }
  r.declared_k = 2;
  return r;
}

Representation make_gadget(const std::string& name, long k) {
  if (name == "sausage") return sausage(k);
  if (name == "g1") return gadget_G1();
  if (name == "gk") return gadget_Gk(k);
  if (name == "k8") return gadget_K8(k);
  if (name == "odd-cx") return gadget_odd_counterexample();
  throw std::invalid_argument("unknown gadget '" + name + "'");
}

}  // namespace strgraph
