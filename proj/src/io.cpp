#include "strgraph/io.hpp"

#include <fstream>
#include <iostream>
#include <sstream>
#include <vector>

namespace strgraph {

namespace {

std::vector<std::string> split_ws(const std::string& line) {
  std::istringstream in(line);
  std::vector<std::string> out;
  std::string tok;
  while (in >> tok) out.push_back(tok);
  return out;
}

std::string strip_comment(const std::string& line) {
  auto hash = line.find('#');
  return hash == std::string::npos ? line : line.substr(0, hash);
}

// Strict num/den with den > 0 and the fraction already reduced.
Rational parse_reduced(const std::string& tok, std::size_t line) {
  auto slash = tok.find('/');
  if (slash == std::string::npos) throw ParseError(line, "expected num/den, got '" + tok + "'");
  std::string num = tok.substr(0, slash), den = tok.substr(slash + 1);
  auto digits = [](const std::string& s, std::size_t from) {
    if (s.size() <= from) return false;
    for (std::size_t i = from; i < s.size(); ++i)
      if (s[i] < '0' || s[i] > '9') return false;
    return true;
  };
  bool neg = !num.empty() && num[0] == '-';
  if (!digits(num, neg ? 1 : 0) || !digits(den, 0)) throw ParseError(line, "malformed rational '" + tok + "'");
  mpz_class n(num), d(den);
  if (d == 0) throw ParseError(line, "zero denominator in '" + tok + "'");
  mpz_class g;
  mpz_gcd(g.get_mpz_t(), n.get_mpz_t(), d.get_mpz_t());
  if (g != 1 || (neg && n == 0) || (num.size() > 1 + (neg ? 1u : 0u) && num[neg ? 1 : 0] == '0') ||
      (den.size() > 1 && den[0] == '0'))
    throw ParseError(line, "non-reduced rational '" + tok + "'");
  return Rational(n, d);
}

Point parse_point(const std::string& tok, std::size_t line) {
  auto comma = tok.find(',');
  if (comma == std::string::npos || tok.find(',', comma + 1) != std::string::npos)
    throw ParseError(line, "malformed point '" + tok + "'");
  return {parse_reduced(tok.substr(0, comma), line), parse_reduced(tok.substr(comma + 1), line)};
}

}  // namespace

Representation parse_representation(const std::string& text) {
  std::istringstream in(text);
  std::string raw;
  std::size_t line = 0;
  bool header = false;
  Representation r;
  while (std::getline(in, raw)) {
    ++line;
    auto toks = split_ws(strip_comment(raw));
    if (toks.empty()) continue;
    if (!header) {
      if (toks.size() != 2 || toks[0] != "strrep" || toks[1] != "v1")
        throw ParseError(line, "expected header 'strrep v1'");
      header = true;
      continue;
    }
    if (toks[0] == "declare-k") {
      if (toks.size() != 2) throw ParseError(line, "malformed declare-k line");
      if (r.declared_k) throw ParseError(line, "duplicate declare-k");
      long k = 0;
      try {
        std::size_t used = 0;
        k = std::stol(toks[1], &used);
        if (used != toks[1].size()) k = 0;
      } catch (const std::exception&) {
        k = 0;
      }
      if (k <= 0) throw ParseError(line, "declare-k needs a positive integer");
      r.declared_k = k;
      continue;
    }
    if (toks[0] != "curve") throw ParseError(line, "unknown directive '" + toks[0] + "'");
    if (toks.size() < 4 || toks[2] != ":") throw ParseError(line, "malformed curve line");
    const std::string& id = toks[1];
    if (r.contains(id)) throw ParseError(line, "duplicate vertex id '" + id + "'");
    std::vector<Point> pts;
    for (std::size_t i = 3; i < toks.size(); ++i) pts.push_back(parse_point(toks[i], line));
    if (pts.size() < 2) throw ParseError(line, "curve '" + id + "' has a single point");
    try {
      r.add(id, Polyline(std::move(pts)));
    } catch (const GeometryError& e) {
      throw ParseError(line, "curve '" + id + "': " + e.what());
    }
  }
  if (!header) throw ParseError(line == 0 ? 1 : line, "missing header 'strrep v1'");
  return r;
}

std::string serialize(const Representation& r) {
  std::string out = "strrep v1\n";
  if (r.declared_k) out += "declare-k " + std::to_string(*r.declared_k) + "\n";
  for (const auto& [id, c] : r.curves()) {
    out += "curve " + id + " :";
    for (const auto& p : c.vertices()) out += " " + to_string(p.x) + "," + to_string(p.y);
    out += "\n";
  }
  return out;
}

std::string serialize(const IntersectionGraph& g) {
  std::string out = "graph v1\n";
  for (const auto& v : g.vertices) out += "vertex " + v + "\n";
  for (const auto& [u, v] : g.edges) out += "edge " + u + " " + v + "\n";
  return out;
}

IntersectionGraph parse_graph(const std::string& text) {
  std::istringstream in(text);
  std::string raw;
  std::size_t line = 0;
  bool header = false;
  IntersectionGraph g;
  while (std::getline(in, raw)) {
    ++line;
    auto toks = split_ws(strip_comment(raw));
    if (toks.empty()) continue;
    if (!header) {
      if (toks.size() != 2 || toks[0] != "graph" || toks[1] != "v1") throw ParseError(line, "expected header 'graph v1'");
      header = true;
    } else if (toks[0] == "vertex" && toks.size() == 2) {
      g.vertices.insert(toks[1]);
    } else if (toks[0] == "edge" && toks.size() == 3) {
      if (toks[1] == toks[2]) throw ParseError(line, "loop edge");
      g.add_edge(toks[1], toks[2]);
    } else {
      throw ParseError(line, "malformed graph line");
    }
  }
  if (!header) throw ParseError(line == 0 ? 1 : line, "missing header 'graph v1'");
  return g;
}

std::string read_text(const std::string& path) {
  std::ostringstream buf;
  if (path == "-") {
    buf << std::cin.rdbuf();
    return buf.str();
  }
  std::ifstream in(path, std::ios::binary);
  if (!in) throw std::runtime_error("cannot open '" + path + "'");
  buf << in.rdbuf();
  return buf.str();
}

}  // namespace strgraph
