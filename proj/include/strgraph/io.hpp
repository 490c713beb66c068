#pragma once

#include <stdexcept>
#include <string>

#include "strgraph/representation.hpp"

namespace strgraph {

class ParseError : public std::runtime_error {
 public:
  ParseError(std::size_t line, const std::string& what)
      : std::runtime_error("line " + std::to_string(line) + ": " + what), line_(line) {}
  std::size_t line() const { return line_; }

 private:
  std::size_t line_;
};

/// strrep v1 text format.
Representation parse_representation(const std::string& text);
std::string serialize(const Representation& r);

/// graph v1: header, `vertex <id>` lines, then `edge <u> <v>` lines, all sorted.
std::string serialize(const IntersectionGraph& g);
IntersectionGraph parse_graph(const std::string& text);

/// Reads a whole file; "-" reads standard input.
std::string read_text(const std::string& path);

}  // namespace strgraph
