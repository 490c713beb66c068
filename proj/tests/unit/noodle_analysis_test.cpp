#include "strgraph/noodle_analysis.hpp"

#include <random>

#include <gtest/gtest.h>

#include "../support/confined.hpp"
#include "../support/oracle.hpp"
#include "strgraph/gadgets.hpp"

using namespace strgraph;

namespace {

const Rational kEps(1, 4);

// sausage(1): u runs (0,0)-(2,2), v runs (0,2)-(2,0); with eps = 1/4 the zone
// is |a| <= 1/2, |b| <= 1/2 in the frame a = x + y - 2, b = x - y.
Point ab(const Rational& a, const Rational& b) { return {(a + 2 + b) / 2, (a + 2 - b) / 2}; }

Representation with_u(const Polyline& u) {
  Representation r = sausage(1);
  r.set("u", u);
  return r;
}

long count(const std::vector<Fragment>& fs, FragmentKind k) {
  return std::count_if(fs.begin(), fs.end(), [k](const Fragment& f) { return f.kind == k; });
}

Polyline lanes(const Polyline& base, std::vector<Rational> ls, std::vector<CurvePosition> stops) {
  return lane_curve(base, {std::move(ls), std::move(stops)});
}

}  // namespace

TEST(ConvexHelpers, TubeAndIntersection) {
  ConvexPolygon t = segment_tube({{0, 0}, {2, 0}}, Rational(1));
  EXPECT_EQ(t.size(), 4u);
  EXPECT_TRUE(polygon_contains(t, {3, 1}));
  EXPECT_FALSE(polygon_contains(t, {3, ratio(3, 2)}));
  ConvexPolygon d = segment_tube({{0, 0}, {2, 2}}, Rational(1));
  EXPECT_EQ(d.size(), 6u);
  ConvexPolygon far = segment_tube({{10, 10}, {11, 10}}, Rational(1));
  EXPECT_TRUE(intersect_convex(t, far).empty());
  EXPECT_FALSE(intersect_convex(t, d).empty());
}

TEST(BuildNoodles, ZoneCounts) {
  EXPECT_EQ(build_noodles(sausage(1), kEps).zone_count(), 1u);
  NoodleSystem s3 = build_noodles(sausage(3), kEps);
  ASSERT_EQ(s3.zones_of("u", "v").size(), 3u);
  const auto& z = s3.zones_of("u", "v");
  for (std::size_t i = 0; i < z.size(); ++i)
    for (std::size_t j = i + 1; j < z.size(); ++j) EXPECT_TRUE(intersect_convex(z[i].region, z[j].region).empty());
  NoodleSystem k8 = build_noodles(gadget_K8(1), ratio(1, 16));
  EXPECT_EQ(k8.zones.size(), 28u);
  EXPECT_EQ(k8.zone_count(), 28u);
}

TEST(BuildNoodles, ZoneHoldsItsCrossing) {
  NoodleSystem s = build_noodles(sausage(2), kEps);
  for (const auto& z : s.zones_of("u", "v")) {
    EXPECT_TRUE(polygon_contains(z.region, z.crossing));
    EXPECT_TRUE(s.in_noodle("u", z.crossing));
    EXPECT_TRUE(s.in_noodle("v", z.crossing));
  }
}

TEST(BuildNoodles, RejectsLargeEpsilon) {
  try {
    build_noodles(sausage(1), ratio(1, 2));
    FAIL();
  } catch (const NoodleError& e) {
    EXPECT_NE(std::string(e.what()).find("epsilon too large"), std::string::npos);
  }
  EXPECT_THROW(build_noodles(sausage(1), Rational(0)), NoodleError);
  Representation touch;
  touch.add("a", Polyline({{0, 0}, {2, 0}}));
  touch.add("b", Polyline({{1, 0}, {1, 1}}));
  EXPECT_THROW(build_noodles(touch, kEps), NoodleError);
}

TEST(ClassifyFragments, BaseCurvesTraverseOnce) {
  Representation g = gadget_K8(1);
  NoodleSystem sys = build_noodles(g, ratio(1, 16));
  for (const auto& [key, zones] : sys.zones) {
    FragmentReport rep = classify_fragments(sys, g, key.first, key.second);
    ASSERT_EQ(rep.zones.size(), 1u);
    const auto& z = rep.zones[0];
    ASSERT_EQ(z.first.size(), 1u);
    ASSERT_EQ(z.second.size(), 1u);
    EXPECT_EQ(z.first[0].kind, FragmentKind::traversal);
    EXPECT_EQ(z.second[0].kind, FragmentKind::traversal);
    EXPECT_EQ(fragment_crossings(z.first[0], z.second[0]), 1);
  }
}

TEST(ClassifyFragments, DetourGivesOneReversal) {
  Representation base = sausage(1);
  NoodleSystem sys = build_noodles(base, kEps);
  const Polyline& u = base.at("u");
  // forward into the zone, back out on the same side, then through
  Polyline detour = lanes(u, {ratio(-1, 8), Rational(0), ratio(1, 8)},
                          {{0, Rational(0)}, {0, ratio(45, 100)}, {0, ratio(1, 5)}, {0, Rational(1)}});
  FragmentReport rep = classify_fragments(sys, with_u(detour), "u", "v");
  ASSERT_EQ(rep.zones.size(), 1u);
  EXPECT_EQ(count(rep.zones[0].first, FragmentKind::reversal), 1);
  EXPECT_EQ(count(rep.zones[0].first, FragmentKind::traversal), 1);
  for (const auto& f : rep.zones[0].first)
    if (f.kind == FragmentKind::reversal) {
      EXPECT_EQ(f.entry_side, f.exit_side);
      EXPECT_EQ(fragment_crossings(f, rep.zones[0].second[0]) % 2, 0);
    }
}

TEST(ClassifyFragments, SharpZigzagGivesThreeTraversals) {
  NoodleSystem sys = build_noodles(sausage(1), kEps);
  Rational q(3, 4), e(1, 8);
  Polyline zig({ab(-2, 0), ab(-q, -3 * e), ab(q, -e), ab(-q, e), ab(q, 3 * e), ab(2, 0)});
  FragmentReport rep = classify_fragments(sys, with_u(zig), "u", "v");
  const auto& z = rep.zones[0];
  ASSERT_EQ(z.first.size(), 3u);
  EXPECT_EQ(count(z.first, FragmentKind::traversal), 3);
  long total = 0;
  for (const auto& f : z.first) total += fragment_crossings(f, z.second[0]);
  EXPECT_EQ(total, 3);
}

TEST(ClassifyFragments, TerminalAndUnconfined) {
  NoodleSystem sys = build_noodles(sausage(1), kEps);
  Polyline stub({ab(-2, 0), ab(0, ratio(1, 8))});
  FragmentReport rep = classify_fragments(sys, with_u(stub), "u", "v");
  ASSERT_EQ(rep.zones[0].first.size(), 1u);
  EXPECT_EQ(rep.zones[0].first[0].kind, FragmentKind::terminal);
  Polyline wander({ab(-2, 0), ab(0, 1), ab(2, 0)});
  EXPECT_THROW(classify_fragments(sys, with_u(wander), "u", "v"), NoodleError);
}

TEST(CrossingArea, Classes) {
  Representation base = sausage(1);
  NoodleSystem sys = build_noodles(base, kEps);
  auto cls = classify_crossing_area(sys, base, "u", "v");
  EXPECT_EQ(cls.label.at("u"), AreaClass::central);
  EXPECT_EQ(cls.label.at("v"), AreaClass::central);

  const Polyline& u = base.at("u");
  Polyline back = lanes(u, {ratio(-1, 8), ratio(1, 8)}, {{0, ratio(1, 20)}, {0, ratio(9, 10)}, {0, ratio(1, 10)}});
  auto p = classify_crossing_area(sys, with_u(back), "u", "v");
  EXPECT_EQ(p.label.at("u"), AreaClass::peripheral);
  // peripheral: even number of traversals in the zone
  auto rep = classify_fragments(sys, with_u(back), "u", "v");
  EXPECT_EQ(count(rep.zones[0].first, FragmentKind::traversal) % 2, 0);

  Polyline cut = lanes(u, {Rational(0)}, {{0, ratio(1, 50)}, {0, ratio(1, 2)}});
  EXPECT_EQ(classify_crossing_area(sys, with_u(cut), "u", "v").label.at("u"), AreaClass::ambiguous);
}

TEST(Covers, OddCounterexample) {
  Representation g = gadget_odd_counterexample();
  NoodleSystem sys = build_noodles(g, kEps);
  EXPECT_EQ(sys.zones.size(), 27u);
  for (const auto& [key, zones] : sys.zones) {
    ASSERT_EQ(zones.size(), 2u);
    auto c = covers(sys, g, key.first, key.second);
    EXPECT_FALSE(c.at(key.first));
    EXPECT_FALSE(c.at(key.second));
  }
  // thin1 cut off on its vertical run between the two bold1 zones
  const auto& t = g.at("thin1").vertices();
  Representation cut = g;
  cut.set("thin1", Polyline({t[0], t[1], lerp(t[1], t[2], ratio(1, 2))}));
  auto c = covers(sys, cut, "bold1", "thin1");
  EXPECT_TRUE(c.at("thin1"));
  EXPECT_FALSE(c.at("bold1"));
  EXPECT_THROW(covers(build_noodles(sausage(3), kEps), sausage(3), "u", "v"), NoodleError);
}

TEST(ParityLaws, SeededPerturbations) {
  for (const auto& base : {sausage(2), gadget_K8(1)}) {
    NoodleSystem sys = build_noodles(base, ratio(1, 16));
    for (std::uint64_t seed = 0; seed < 5; ++seed) {
      Representation conf = perturb_confined(sys, seed, 2);
      EXPECT_EQ(conf, perturb_confined(sys, seed, 2));
      for (const auto& [key, zones] : sys.zones) {
        FragmentReport rep = classify_fragments(sys, conf, key.first, key.second);
        for (const auto& z : rep.zones)
          for (const auto& f : z.first)
            for (const auto& g : z.second) {
              long n = fragment_crossings(f, g);
              if (f.kind == FragmentKind::traversal && g.kind == FragmentKind::traversal) EXPECT_EQ(n % 2, 1);
              if (f.kind == FragmentKind::reversal || g.kind == FragmentKind::reversal) EXPECT_EQ(n % 2, 0);
            }
      }
    }
  }
}

TEST(ParityLaws, NonCoveringPairsCrossEvenly) {
  Representation g = gadget_odd_counterexample();
  NoodleSystem sys = build_noodles(g, kEps);
  std::mt19937_64 rng(99);
  for (const auto& key : std::vector<VertexPair>{{"bold1", "thin2"}, {"thin1", "thin3"}, {"bold2", "thin6"}}) {
    for (int i = 0; i < 4; ++i) {
      Representation conf = fixtures::non_covering(sys, key.first, key.second, rng);
      auto c = oracle::counts(conf);
      long n = c.count(key) ? c.at(key) : 0;
      EXPECT_EQ(n % 2, 0);
    }
  }
}
