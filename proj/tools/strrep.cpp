#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>

#include <CLI11.hpp>

#include "strgraph/extension.hpp"
#include "strgraph/gadgets.hpp"
#include "strgraph/io.hpp"
#include "strgraph/noodle_analysis.hpp"
#include "strgraph/noodleforce.hpp"
#include "strgraph/surgery.hpp"
#include "strgraph/svg.hpp"

using namespace strgraph;

namespace {

// Exit codes: 0 pass, 1 check failed, 2 error.
struct UsageError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

std::vector<std::string> split_commas(const std::string& s) {
  std::vector<std::string> out;
  std::stringstream in(s);
  std::string part;
  while (std::getline(in, part, ','))
    if (!part.empty()) out.push_back(part);
  return out;
}

VertexPair parse_pair(const std::string& s) {
  auto parts = split_commas(s);
  if (parts.size() != 2 || parts[0] == parts[1]) throw UsageError("--pair expects two distinct ids as u,v");
  return {parts[0], parts[1]};
}

void write_text(const std::string& path, const std::string& text) {
  if (path == "-") {
    std::cout << text;
    return;
  }
  std::ofstream out(path, std::ios::binary);
  if (!out) throw UsageError("cannot write '" + path + "'");
  out << text;
}

void print_matrix(const Representation& r, const CrossingMatrix& m) {
  std::cout << "curves " << r.size() << "\n";
  std::cout << "intersecting-pairs " << m.counts.size() << "\n";
  for (const auto& [pair, n] : m.counts) std::cout << "pair " << pair.first << " " << pair.second << " " << n << "\n";
}

int cmd_verify(const std::string& file, std::optional<long> k, const std::string& mode) {
  Representation r = parse_representation(read_text(file));
  if (mode != "odd") {
    if (!k) k = r.declared_k;
    if (!k) throw UsageError("verify needs --k (or a declare-k line)");
    if (*k < 1) throw UsageError("--k must be positive");
  }
  bool ok = false;
  if (mode == "at-most") {
    CrossingMatrix m = intersection_point_counts(r);
    print_matrix(r, m);
    ok = is_kstring_lenient(r, *k);
  } else {
    PropernessReport rep = validate_proper(r);
    if (!rep.proper) {
      std::cout << "improper\n";
      for (const auto& v : rep.violations)
        std::cout << "violation " << to_string(v.kind) << " at " << to_string(v.location.x) << ","
                  << to_string(v.location.y) << "\n";
      std::cout << "fail\n";
      return 1;
    }
    CrossingMatrix m = crossing_matrix(r);
    print_matrix(r, m);
    ok = mode == "precise" ? is_precise(m, *k) : is_odd(m);
  }
  std::cout << (ok ? "pass" : "fail") << "\n";
  return ok ? 0 : 1;
}

struct TransformArgs {
  std::string op;
  std::string pair;
  std::size_t index = 0;
  std::optional<long> m;
  std::string side;
  std::optional<long> k;
  std::string file;
};

int cmd_transform(const TransformArgs& a) {
  Representation r = parse_representation(read_text(a.file));
  Representation out;
  if (a.op == "add-two") {
    if (a.pair.empty()) throw UsageError("add-two needs --pair");
    VertexPair p = parse_pair(a.pair);
    out = add_two(r, {make_pair_key(p.first, p.second), a.index});
  } else if (a.op == "quadruple") {
    out = quadruple(r);
  } else if (a.op == "double-side") {
    auto ids = split_commas(a.side);
    if (ids.empty()) throw UsageError("double-side needs --side");
    out = double_side(r, std::set<VertexId>(ids.begin(), ids.end()));
  } else if (a.op == "make-proper") {
    out = make_proper(r);
  } else if (a.op == "equalize") {
    if (!a.m) throw UsageError("equalize needs --m");
    out = equalize_to(r, *a.m);
  } else if (a.op == "pipeline-8k") {
    std::optional<long> k = a.k ? a.k : r.declared_k;
    if (!k) throw UsageError("pipeline-8k needs --k");
    out = pipeline_8k(r, *k);
  } else {
    throw UsageError("unknown op '" + a.op + "'");
  }
  std::cout << serialize(out);
  return 0;
}

int cmd_noodle_force(const std::string& file, std::optional<long> k, const std::string& graph_out) {
  Representation r = parse_representation(read_text(file));
  NoodleForceResult res = k ? noodle_force_precise(r, *k) : noodle_force(r);
  if (!graph_out.empty()) write_text(graph_out, serialize(res.graph));
  std::cout << serialize(res.representation);
  return 0;
}

int cmd_search(const std::string& file, long target, bool disjoint) {
  Representation r = parse_representation(read_text(file));
  auto p = search_extension(r, target, disjoint ? OverlapMode::disjoint : OverlapMode::permissive);
  std::cout << (p ? serialize(*p, r) : std::string("none\n"));
  return 0;
}

int cmd_analyze(const std::string& file, const std::string& pair, const std::string& eps, const std::string& conf) {
  Representation r = parse_representation(read_text(file));
  VertexPair p = parse_pair(pair);
  for (const auto& id : {p.first, p.second})
    if (!r.contains(id)) throw UsageError("unknown curve '" + id + "'");
  Rational e;
  try {
    e = parse_rational(eps);
  } catch (const std::invalid_argument&) {
    throw UsageError("--epsilon expects a rational such as 1/16");
  }
  NoodleSystem sys = build_noodles(r, e);
  Representation confined = conf.empty() ? r : parse_representation(read_text(conf));
  VertexPair key = make_pair_key(p.first, p.second);
  const auto& zones = sys.zones_of(key.first, key.second);
  std::cout << "pair " << key.first << " " << key.second << "\n";
  std::cout << "zones " << zones.size() << "\n";
  FragmentReport rep = classify_fragments(sys, confined, key.first, key.second);
  for (std::size_t i = 0; i < rep.zones.size(); ++i) {
    const auto& z = rep.zones[i];
    std::cout << "zone " << z.zone_index << " at " << to_string(zones[i].crossing.x) << ","
              << to_string(zones[i].crossing.y) << "\n";
    for (const auto* frs : {&z.first, &z.second})
      for (const auto& f : *frs) {
        std::cout << "  fragment " << f.curve << " " << to_string(f.kind);
        for (const auto* other : {&z.first, &z.second})
          if (other != frs)
            for (const auto& g : *other) std::cout << " " << fragment_crossings(f, g);
        std::cout << "\n";
      }
  }
  if (!zones.empty()) {
    CrossingAreaClass cls = classify_crossing_area(sys, confined, key.first, key.second);
    for (const auto& [id, c] : cls.label) std::cout << "class " << id << " " << to_string(c) << "\n";
  }
  if (zones.size() == 2)
    for (const auto& [id, c] : covers(sys, confined, key.first, key.second))
      std::cout << "covers " << id << " " << (c ? "true" : "false") << "\n";
  return 0;
}

int cmd_render(const std::string& file, const std::string& out) {
  Representation r = parse_representation(read_text(file));
  write_text(out, render_svg(r));
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"strrep: proper string representations with prescribed crossing counts"};
  app.require_subcommand(1);

  std::string file = "-";
  std::optional<long> k;

  auto* verify = app.add_subcommand("verify", "check crossing counts");
  bool precise = false, at_most = false, odd = false;
  verify->add_option("--k", k, "crossing bound");
  auto* f_precise = verify->add_flag("--precise", precise, "every intersecting pair crosses exactly k times");
  auto* f_at_most = verify->add_flag("--at-most", at_most, "every pair meets in at most k points (default)");
  auto* f_odd = verify->add_flag("--odd", odd, "every intersecting pair crosses an odd number of times");
  f_precise->excludes(f_at_most)->excludes(f_odd);
  f_at_most->excludes(f_odd);
  verify->add_option("file", file, "strrep v1 file or -")->required();

  auto* graph = app.add_subcommand("graph", "print the intersection graph");
  graph->add_option("file", file)->required();

  TransformArgs targs;
  auto* transform = app.add_subcommand("transform", "apply a surgery");
  transform->add_option("--op", targs.op)
      ->required()
      ->check(CLI::IsMember({"add-two", "quadruple", "double-side", "make-proper", "equalize", "pipeline-8k"}));
  transform->add_option("--pair", targs.pair, "u,v for add-two");
  transform->add_option("--index", targs.index, "crossing index along the smaller id (add-two)");
  transform->add_option("--m", targs.m, "target count for equalize");
  transform->add_option("--side", targs.side, "comma-separated ids for double-side");
  transform->add_option("--k", targs.k, "input bound for pipeline-8k");
  transform->add_option("file", targs.file)->required();

  std::string gadget_name;
  long gadget_k = 1;
  auto* gadget = app.add_subcommand("gadget", "emit a gadget");
  gadget->add_option("name", gadget_name)->required()->check(CLI::IsMember({"sausage", "g1", "gk", "k8", "odd-cx"}));
  gadget->add_option("--k", gadget_k, "crossing parameter");

  std::optional<long> precise_k;
  std::string graph_out;
  auto* nf = app.add_subcommand("noodle-force", "overlay the forcing mesh");
  nf->add_option("--precise-k", precise_k, "make every pair cross exactly k times");
  nf->add_option("--graph-out", graph_out, "write the graph of the result");
  nf->add_option("file", file)->required();

  long target = 0;
  bool disjoint = false;
  auto* search = app.add_subcommand("search-ext", "search for a faithful extension");
  search->add_option("--target", target)->required()->check(CLI::PositiveNumber);
  search->add_flag("--disjoint", disjoint, "left and right parts may not share events");
  search->add_option("file", file)->required();

  std::string pair, epsilon, confined;
  auto* analyze = app.add_subcommand("analyze", "noodle zones, fragments and crossing-area classes");
  analyze->add_option("--pair", pair)->required();
  analyze->add_option("--epsilon", epsilon)->required();
  analyze->add_option("--confined", confined, "confined representation (defaults to the base)");
  analyze->add_option("file", file)->required();

  std::string svg_out = "-";
  auto* render = app.add_subcommand("render", "write an SVG figure");
  render->add_option("file", file)->required();
  render->add_option("-o,--output", svg_out);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    int code = app.exit(e);
    return code == 0 ? 0 : 2;
  }

  try {
    if (*verify) return cmd_verify(file, k, precise ? "precise" : (odd ? "odd" : "at-most"));
    if (*graph) {
      std::cout << serialize(intersection_graph(parse_representation(read_text(file))));
      return 0;
    }
    if (*transform) return cmd_transform(targs);
    if (*gadget) {
      std::cout << serialize(make_gadget(gadget_name, gadget_k));
      return 0;
    }
    if (*nf) return cmd_noodle_force(file, precise_k, graph_out);
    if (*search) return cmd_search(file, target, disjoint);
    if (*analyze) return cmd_analyze(file, pair, epsilon, confined);
    if (*render) return cmd_render(file, svg_out);
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  }
  return 2;
}
