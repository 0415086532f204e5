#pragma once

#include <functional>
#include <string>
#include <string_view>
#include <vector>

#include "dendro/subdendrite.hpp"
#include "dendro/tree.hpp"

namespace dendro {

/// One non-blank, non-comment input line split on whitespace.
struct TextLine {
  std::size_t number = 0;
  std::vector<std::string> tokens;
};

/// Splits text into lines, strips `#` comments, drops blank lines.
std::vector<TextLine> tokenize_lines(std::string_view text);

/// Parses the tree declarations (`vertex <id>`, `edge <id> <v1> <v2> <num>/<den>`).
/// Lines whose keyword is not a tree keyword are passed to `other`, which may
/// throw ParseError; when `other` is empty they are rejected.
Dendrite parse_tree(std::string_view text, const std::string& source,
                    const std::function<void(const TextLine&)>& other = {});

std::string format_tree(const Dendrite& tree);

/// `v:<id>`, `e:<id>:<num>/<den>`, or a bare vertex id.
Point parse_point(const Dendrite& tree, std::string_view spec);
std::string format_point(const Dendrite& tree, const Point& p);

/// Comma- or whitespace-separated list of point specs.
std::vector<Point> parse_point_list(const Dendrite& tree, std::string_view specs);

/// Canonical text: `V{a,b}E{e1}P{e2:1/3:1/2}`; the empty set is `empty`.
std::string format_subdendrite(const Dendrite& tree, const SubDendrite& s);
SubDendrite parse_subdendrite(const Dendrite& tree, std::string_view text);

std::string format_germ(const Dendrite& tree, const Germ& g);
Germ parse_germ(const Dendrite& tree, const Point& base, std::string_view text);

/// Reads a whole file; throws InputError if it cannot be opened.
std::string read_file(const std::string& path);

}  // namespace dendro
