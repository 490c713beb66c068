// Acceptance run: one PASS/FAIL line per criterion, exit status 1 if any fails.
#include <chrono>
#include <functional>
#include <random>
#include <sstream>

#include <fmt/core.h>

#include "../support/confined.hpp"
#include "../support/ext_oracle.hpp"
#include "../support/oracle.hpp"
#include "../support/random_rep.hpp"
#include "strgraph/extension.hpp"
#include "strgraph/gadgets.hpp"
#include "strgraph/io.hpp"
#include "strgraph/noodle_analysis.hpp"
#include "strgraph/noodleforce.hpp"
#include "strgraph/surgery.hpp"
#include "strgraph/svg.hpp"

using namespace strgraph;

namespace {

// Collects failures; the first few are reported.
struct Check {
  long cases = 0;
  std::vector<std::string> failures;

  void expect(bool ok, const std::string& what) {
    if (!ok) failures.push_back(what);
  }
  bool passed() const { return failures.empty(); }
};

std::map<VertexPair, long> scaled(std::map<VertexPair, long> c, long f) {
  for (auto& [k, n] : c) n *= f;
  return c;
}

std::map<VertexId, VertexId> identity(const Representation& r) {
  std::map<VertexId, VertexId> m;
  for (const auto& id : r.ids()) m[id] = id;
  return m;
}

bool all_equal(const std::map<VertexPair, long>& c, long n) {
  for (const auto& [k, m] : c)
    if (m != n) return false;
  return true;
}

struct Named {
  std::string name;
  Representation r;
};

std::vector<Named> gadgets() {
  std::vector<Named> out;
  for (long n = 1; n <= 4; ++n) out.push_back({"sausage(" + std::to_string(n) + ")", sausage(n)});
  out.push_back({"G1", gadget_G1()});
  for (long k = 2; k <= 4; ++k) out.push_back({"Gk(" + std::to_string(k) + ")", gadget_Gk(k)});
  for (long k : {1, 3}) out.push_back({"K8(" + std::to_string(k) + ")", gadget_K8(k)});
  out.push_back({"odd-cx", gadget_odd_counterexample()});
  return out;
}

// 1. add_two, quadruple and double_side on random proper inputs.
void surgeries(Check& ck) {
  std::mt19937_64 rng(1);
  for (int i = 0; i < 100; ++i) {
    Representation r = fixtures::random_proper(rng, 6, 12);
    auto c = oracle::counts(r);
    auto g = oracle::graph(r);
    std::string tag = "input " + std::to_string(i);
    if (!c.empty()) {
      auto it = c.begin();
      std::advance(it, static_cast<long>(rng() % c.size()));
      VertexPair pair = it->first;
      std::size_t index = rng() % static_cast<std::size_t>(it->second);
      Representation a = add_two(r, {pair, index});
      auto want = c;
      want[pair] += 2;
      ck.expect(oracle::is_proper(a) && oracle::counts(a) == want && oracle::graph(a) == g, tag + " add_two");
    }
    Representation q = quadruple(r);
    ck.expect(oracle::is_proper(q) && oracle::counts(q) == scaled(c, 4) && oracle::graph(q) == g, tag + " quadruple");
    auto [part, left] = fixtures::bipartite_part(r, rng);
    Representation d = double_side(part, left);
    ck.expect(oracle::is_proper(d) && oracle::counts(d) == scaled(oracle::counts(part), 2) &&
                  oracle::graph(d) == oracle::graph(part),
              tag + " double_side");
    ++ck.cases;
  }
}

// 2. pipeline_8k on lenient k-string inputs with injected defects.
void pipeline(Check& ck) {
  std::mt19937_64 rng(2);
  long improper = 0;
  for (int i = 0; i < 50; ++i) {
    long k = 1 + i % 3;
    Representation r = fixtures::random_kstring(rng, k, true);
    if (!oracle::is_proper(r)) ++improper;
    std::string tag = "input " + std::to_string(i) + " k=" + std::to_string(k);
    try {
      Representation out = pipeline_8k(r, k);
      ck.expect(oracle::is_proper(out), tag + " improper output");
      ck.expect(all_equal(oracle::counts(out), 8 * k) && is_precise(out, 8 * k), tag + " counts");
      ck.expect(oracle::graph(out) == oracle::graph(r), tag + " graph");
    } catch (const std::exception& e) {
      ck.expect(false, tag + " threw: " + e.what());
    }
    ++ck.cases;
  }
  ck.expect(improper == 50, "only " + std::to_string(improper) + " of 50 inputs carried defects");
}

// 3. noodle_force and noodle_force_precise on every gadget.
void noodle_forcing(Check& ck) {
  for (const auto& [name, r] : gadgets()) {
    try {
      NoodleForceResult res = noodle_force(r);
      const Representation& out = res.representation;
      ck.expect(oracle::is_proper(out), name + " not proper");
      ck.expect(out.restricted(res.original_vertices).curves() == r.curves(), name + " restriction differs");
      ck.expect(res.graph == oracle::graph(out), name + " graph differs from oracle");
      ck.expect(contains_induced(res.graph, oracle::graph(r), identity(r)), name + " not induced");
      long k = *r.declared_k;
      NoodleForceResult pre = noodle_force_precise(r, k);
      ck.expect(oracle::is_proper(pre.representation), name + " precise not proper");
      ck.expect(all_equal(oracle::counts(pre.representation), k), name + " precise counts");
      ck.expect(pre.graph == res.graph && oracle::graph(pre.representation) == res.graph, name + " precise graph");
      ck.expect(pre.representation.restricted(pre.original_vertices).curves() == r.curves(), name + " precise restriction");
    } catch (const std::exception& e) {
      ck.expect(false, name + " threw: " + e.what());
    }
    ++ck.cases;
  }
}

bool profile_ok(const Representation& r, const ExtensionProfile& p, long target) {
  oracle::Profile op;
  for (const auto& id : r.ids()) op[id] = {p.at(id).left, p.at(id).right};
  auto ext = oracle::extended(r, op);
  for (const auto& [k, n] : oracle::counts(r))
    if (ext.at(k) != target) return false;
  return true;
}

// 4. No faithful extension for G1 -> 2 and Gk -> k+1; enumeration agrees.
void extension_search(Check& ck) {
  std::vector<std::pair<Named, long>> cases{{{"G1", gadget_G1()}, 2}};
  for (long k = 2; k <= 4; ++k) cases.push_back({{"Gk(" + std::to_string(k) + ")", gadget_Gk(k)}, k + 1});
  for (const auto& [g, target] : cases) {
    ck.expect(!search_extension(g.r, target), g.name + " has an extension");
    ++ck.cases;
  }
  for (const auto& [g, target] : std::vector<std::pair<Named, long>>{{{"G1", gadget_G1()}, 2},
                                                                      {{"Gk(2)", gadget_Gk(2)}, 3}}) {
    auto en = oracle::enumerate_extension(g.r, target);
    ck.expect(!en.witness, g.name + " enumeration found a witness");
    ck.expect(en.combinations == en.filtered_space, g.name + " enumeration incomplete");
    ++ck.cases;
  }
  // positive control
  Representation s = sausage(1);
  auto p = search_extension(s, 2);
  ck.expect(p && profile_ok(s, *p, 2), "sausage(1) -> 2 not found or wrong");
  ck.expect(oracle::enumerate_extension(s, 2).witness.has_value(), "sausage(1) -> 2 not enumerated");
  ++ck.cases;
}

// Small corpus: at most 4 curves, at most 3 crossings per pair, at most 3 events per curve.
std::vector<Representation> small_corpus() {
  std::vector<Representation> out{sausage(1), sausage(2), sausage(3)};
  Representation tri;
  tri.add("a", Polyline({{0, 0}, {4, 0}}));
  tri.add("b", Polyline({{0, -1}, {3, 3}}));
  tri.add("c", Polyline({{4, -1}, {1, 3}}));
  out.push_back(tri);
  std::mt19937_64 rng(5);
  int tries = 0;
  while (out.size() < 24 && tries++ < 5000) {
    Representation r = fixtures::random_proper(rng, 4, 3);
    auto c = oracle::counts(r);
    if (c.empty()) continue;
    bool small = true;
    for (const auto& [k, n] : c)
      if (n > 3) small = false;
    for (const auto& id : r.ids())
      if (oracle::crossing_order(r, id).size() > 3) small = false;
    if (small) out.push_back(r);
  }
  return out;
}

// 5. extended_counts against geometric realization, every profile.
void extension_model(Check& ck) {
  for (const auto& r : small_corpus()) {
    auto c = oracle::counts(r);
    for (const auto& op : oracle::all_profiles(r)) {
      ExtensionProfile p;
      for (const auto& [id, d] : op) p.depths[id] = {d.first, d.second};
      std::ostringstream tag;
      tag << "profile";
      for (const auto& [id, d] : op) tag << " " << id << ":" << d.first << "/" << d.second;
      try {
        auto model = extended_counts(r, p);
        Representation geo = realize_extension(r, p);
        auto measured = oracle::counts(geo);
        auto ref = oracle::extended(r, op);
        for (const auto& [k, n] : c) {
          long m = measured.count(k) ? measured.at(k) : 0;
          long lib = model.counts.count(k) ? model.counts.at(k) : 0;
          ck.expect(m == lib && lib == ref.at(k), tag.str() + " pair " + k.first + "," + k.second);
        }
      } catch (const std::exception& e) {
        ck.expect(false, tag.str() + " threw: " + e.what());
      }
      ++ck.cases;
    }
  }
}

// 6. Parity laws in zones, and even totals for non-covering pairs.
void parity(Check& ck) {
  std::vector<NoodleSystem> systems;
  for (long n = 1; n <= 3; ++n) systems.push_back(build_noodles(sausage(n), ratio(1, 16)));
  systems.push_back(build_noodles(gadget_K8(1), ratio(1, 16)));
  long reversals = 0;
  for (std::uint64_t seed = 0; seed < 500; ++seed) {
    const NoodleSystem& sys = systems[seed % systems.size()];
    try {
      Representation conf = perturb_confined(sys, seed, 3);
      for (const auto& [key, zones] : sys.zones) {
        FragmentReport rep = classify_fragments(sys, conf, key.first, key.second);
        for (const auto& z : rep.zones)
          for (const auto& f : z.first)
            for (const auto& g : z.second) {
              long n = fragment_crossings(f, g);
              bool rev = f.kind == FragmentKind::reversal || g.kind == FragmentKind::reversal;
              if (rev) ++reversals;
              if (f.kind == FragmentKind::traversal && g.kind == FragmentKind::traversal)
                ck.expect(n % 2 == 1, "seed " + std::to_string(seed) + " traversal pair even");
              if (rev) ck.expect(n % 2 == 0, "seed " + std::to_string(seed) + " reversal pair odd");
            }
      }
    } catch (const std::exception& e) {
      ck.expect(false, "seed " + std::to_string(seed) + " threw: " + e.what());
    }
    ++ck.cases;
  }
  ck.expect(reversals > 0, "no reversal fragment was exercised");

  Representation g = gadget_odd_counterexample();
  NoodleSystem sys = build_noodles(g, ratio(1, 4));
  std::vector<VertexPair> keys;
  for (const auto& [key, zones] : sys.zones)
    if (zones.size() == 2) keys.push_back(key);
  std::mt19937_64 rng(6);
  for (int i = 0; i < 100; ++i) {
    const VertexPair& key = keys[static_cast<std::size_t>(i) % keys.size()];
    Representation conf = fixtures::non_covering(sys, key.first, key.second, rng);
    auto cov = covers(sys, conf, key.first, key.second);
    ck.expect(!cov.at(key.first) && !cov.at(key.second), "fixture " + std::to_string(i) + " covers");
    auto c = oracle::counts(conf);
    long n = c.count(key) ? c.at(key) : 0;
    ck.expect(n % 2 == 0, "fixture " + std::to_string(i) + " crosses " + std::to_string(n) + " times");
    ++ck.cases;
  }
}

// 7. Gadgets are proper and precise at their declared k; K8 graphs are complete.
void certification(Check& ck) {
  for (const auto& [name, r] : gadgets()) {
    ck.expect(validate_proper(r).proper && oracle::is_proper(r), name + " not proper");
    ck.expect(r.declared_k && is_precise(r, *r.declared_k) && all_equal(oracle::counts(r), *r.declared_k),
              name + " not precise at its declared k");
    ++ck.cases;
  }
  for (long k : {1, 3, 5}) {
    Representation r = gadget_K8(k);
    auto g = oracle::graph(r);
    ck.expect(g.vertices.size() == 8 && g.edges.size() == 28 && intersection_graph(r) == g,
              "K8(" + std::to_string(k) + ") graph");
    ck.expect(validate_proper(r).proper && is_precise(r, k), "K8(" + std::to_string(k) + ") not precise");
    ++ck.cases;
  }
}

// 8. serialize/parse round trips and repeatable output.
void round_trip(Check& ck) {
  std::vector<Named> all = gadgets();
  std::mt19937_64 rng(8);
  for (int i = 0; i < 10; ++i) all.push_back({"random " + std::to_string(i), fixtures::random_proper(rng, 6, 12)});
  all.push_back({"pipeline", pipeline_8k(sausage(1), 1)});
  for (const auto& [name, r] : all) {
    std::string text = serialize(r);
    Representation back = parse_representation(text);
    ck.expect(back == r && serialize(back) == text, name + " representation round trip");
    IntersectionGraph g = intersection_graph(r);
    std::string gt = serialize(g);
    ck.expect(parse_graph(gt) == g && serialize(parse_graph(gt)) == gt, name + " graph round trip");
    ck.expect(render_svg(r) == render_svg(back), name + " svg differs");
    ++ck.cases;
  }
  Representation s = sausage(2);
  ck.expect(serialize(noodle_force(s).representation) == serialize(noodle_force(s).representation),
            "noodle_force not repeatable");
  ck.expect(serialize(pipeline_8k(s, 2)) == serialize(pipeline_8k(s, 2)), "pipeline_8k not repeatable");
  NoodleSystem sys = build_noodles(s, ratio(1, 16));
  ck.expect(serialize(perturb_confined(sys, 3, 2)) == serialize(perturb_confined(sys, 3, 2)),
            "perturb_confined not repeatable");
  auto p = search_extension(sausage(1), 2);
  ck.expect(p && serialize(*p, sausage(1)) == serialize(*search_extension(sausage(1), 2), sausage(1)),
            "search_extension not repeatable");
  ck.cases += 4;
}

}  // namespace

int main() {
  struct Criterion {
    int id;
    const char* name;
    std::function<void(Check&)> run;
  };
  std::vector<Criterion> criteria{
      {1, "surgery contracts", surgeries},        {2, "8k pipeline", pipeline},
      {3, "noodle forcing", noodle_forcing},      {4, "extension search", extension_search},
      {5, "extension model", extension_model},    {6, "parity laws", parity},
      {7, "gadget certification", certification}, {8, "round trip and determinism", round_trip},
  };
  bool all = true;
  for (const auto& c : criteria) {
    Check ck;
    auto t0 = std::chrono::steady_clock::now();
    try {
      c.run(ck);
    } catch (const std::exception& e) {
      ck.failures.push_back(std::string("uncaught: ") + e.what());
    }
    double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    fmt::print("criterion {}: {} ({}, {} cases, {:.1f}s)\n", c.id, ck.passed() ? "PASS" : "FAIL", c.name, ck.cases,
               secs);
    for (std::size_t i = 0; i < ck.failures.size() && i < 5; ++i) fmt::print("  {}\n", ck.failures[i]);
    if (ck.failures.size() > 5) fmt::print("  ... {} more\n", ck.failures.size() - 5);
    std::fflush(stdout);
    all = all && ck.passed();
  }
  return all ? 0 : 1;
}
