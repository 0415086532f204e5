#include "dendro/text_format.hpp"

#include <fstream>
#include <map>
#include <sstream>

#include "dendro/errors.hpp"

namespace dendro {

std::vector<TextLine> tokenize_lines(std::string_view text) {
  std::vector<TextLine> out;
  std::size_t number = 0;
  std::size_t pos = 0;
  while (pos <= text.size()) {
    std::size_t end = text.find('\n', pos);
    if (end == std::string_view::npos) end = text.size();
    std::string_view line = text.substr(pos, end - pos);
    ++number;
    if (auto hash = line.find('#'); hash != std::string_view::npos) line = line.substr(0, hash);
    TextLine tl{number, {}};
    std::istringstream in{std::string(line)};
    std::string tok;
    while (in >> tok) tl.tokens.push_back(tok);
    if (!tl.tokens.empty()) out.push_back(std::move(tl));
    if (end == text.size()) break;
    pos = end + 1;
  }
  return out;
}

Dendrite parse_tree(std::string_view text, const std::string& source,
                    const std::function<void(const TextLine&)>& other) {
  std::vector<std::string> names;
  std::map<std::string, std::uint32_t, std::less<>> index;
  struct PendingEdge {
    std::size_t line;
    std::string name, v1, v2;
    Rational length;
  };
  std::vector<PendingEdge> pending;
  for (const auto& line : tokenize_lines(text)) {
    const auto& t = line.tokens;
    if (t[0] == "vertex") {
      if (t.size() != 2) throw ParseError(source, line.number, t[0], "expected 'vertex <id>'");
      if (index.count(t[1])) throw ParseError(source, line.number, t[1], "duplicate vertex");
      index[t[1]] = static_cast<std::uint32_t>(names.size());
      names.push_back(t[1]);
    } else if (t[0] == "edge") {
      if (t.size() != 5) throw ParseError(source, line.number, t[0], "expected 'edge <id> <v1> <v2> <num>/<den>'");
      Rational len;
      try {
        len = parse_rational(t[4]);
      } catch (const InputError&) {
        throw ParseError(source, line.number, t[4], "malformed edge length");
      }
      if (len <= 0) throw ParseError(source, line.number, t[4], "edge length must be positive");
      pending.push_back({line.number, t[1], t[2], t[3], len});
    } else if (other) {
      other(line);
    } else {
      throw ParseError(source, line.number, t[0], "unknown keyword");
    }
  }
  std::vector<EdgeRecord> edges;
  for (const auto& pe : pending) {
    auto a = index.find(pe.v1);
    if (a == index.end()) throw ParseError(source, pe.line, pe.v1, "unknown vertex");
    auto b = index.find(pe.v2);
    if (b == index.end()) throw ParseError(source, pe.line, pe.v2, "unknown vertex");
    edges.push_back(EdgeRecord{pe.name, VertexId{a->second}, VertexId{b->second}, pe.length});
  }
  try {
    return Dendrite(std::move(names), std::move(edges));
  } catch (const ParseError&) {
    throw;
  } catch (const InputError& err) {
    throw ParseError(source, 0, "", err.what());
  }
}

std::string format_tree(const Dendrite& tree) {
  std::string out;
  for (std::uint32_t v = 0; v < tree.vertex_count(); ++v) out += "vertex " + tree.vertex_name(VertexId{v}) + "\n";
  for (std::uint32_t e = 0; e < tree.edge_count(); ++e) {
    EdgeId id{e};
    Rational len = tree.length(id);
    out += "edge " + tree.edge_name(id) + " " + tree.vertex_name(tree.tail(id)) + " " +
           tree.vertex_name(tree.head(id)) + " " + len.get_num().get_str() + "/" + len.get_den().get_str() + "\n";
  }
  return out;
}

Point parse_point(const Dendrite& tree, std::string_view spec) {
  auto bad = [&](const std::string& why) { return InputError("bad point '" + std::string(spec) + "': " + why); };
  if (spec.starts_with("e:")) {
    auto rest = spec.substr(2);
    auto colon = rest.find(':');
    if (colon == std::string_view::npos) throw bad("expected e:<edge>:<t>");
    auto e = tree.find_edge(rest.substr(0, colon));
    if (!e) throw bad("unknown edge");
    Rational t = parse_rational(rest.substr(colon + 1));
    if (t < 0 || t > 1) throw bad("parameter outside [0,1]");
    return Point::on_edge(tree, *e, t);
  }
  auto name = spec.starts_with("v:") ? spec.substr(2) : spec;
  auto v = tree.find_vertex(name);
  if (!v) throw bad("unknown vertex");
  return Point::at_vertex(*v);
}

std::string format_point(const Dendrite& tree, const Point& p) {
  if (p.is_vertex()) return "v:" + tree.vertex_name(p.vertex());
  return "e:" + tree.edge_name(p.edge()) + ":" + to_string(p.param());
}

std::vector<Point> parse_point_list(const Dendrite& tree, std::string_view specs) {
  std::vector<Point> out;
  std::string token;
  auto flush = [&] {
    if (!token.empty()) out.push_back(parse_point(tree, token));
    token.clear();
  };
  for (char c : specs) {
    if (c == ',' || c == ' ' || c == '\t') {
      flush();
    } else {
      token += c;
    }
  }
  flush();
  return out;
}

std::string format_subdendrite(const Dendrite& tree, const SubDendrite& s) {
  if (s.is_empty()) return "empty";
  std::string out = "V{";
  bool first = true;
  for (VertexId v : s.vertices()) {
    out += (first ? "" : ",") + tree.vertex_name(v);
    first = false;
  }
  out += "}E{";
  first = true;
  for (EdgeId e : s.full_edges()) {
    out += (first ? "" : ",") + tree.edge_name(e);
    first = false;
  }
  out += "}P{";
  first = true;
  for (const auto& [e, iv] : s.partial_intervals()) {
    out += (first ? "" : ",") + tree.edge_name(e) + ":" + to_string(iv.lo) + ":" + to_string(iv.hi);
    first = false;
  }
  out += "}";
  return out;
}

namespace {

std::vector<std::string> split_braced(std::string_view text, char tag, std::size_t& pos) {
  if (pos + 1 >= text.size() || text[pos] != tag || text[pos + 1] != '{') {
    throw InputError(std::string("bad sub-dendrite text: expected ") + tag + "{");
  }
  auto close = text.find('}', pos);
  if (close == std::string_view::npos) throw InputError("bad sub-dendrite text: unbalanced braces");
  std::string_view body = text.substr(pos + 2, close - pos - 2);
  pos = close + 1;
  std::vector<std::string> items;
  std::size_t start = 0;
  while (start < body.size()) {
    auto comma = body.find(',', start);
    if (comma == std::string_view::npos) comma = body.size();
    items.emplace_back(body.substr(start, comma - start));
    start = comma + 1;
  }
  return items;
}

}  // namespace

SubDendrite parse_subdendrite(const Dendrite& tree, std::string_view text) {
  if (text == "empty") throw InputError("'empty' does not denote a sub-dendrite");
  std::size_t pos = 0;
  auto verts = split_braced(text, 'V', pos);
  auto full = split_braced(text, 'E', pos);
  auto partial = split_braced(text, 'P', pos);
  if (pos != text.size()) throw InputError("bad sub-dendrite text: trailing characters");
  SubDendriteBuilder b(tree);
  for (const auto& name : verts) {
    auto v = tree.find_vertex(name);
    if (!v) throw InputError("unknown vertex '" + name + "'");
    b.add_vertex(*v);
  }
  for (const auto& name : full) {
    auto e = tree.find_edge(name);
    if (!e) throw InputError("unknown edge '" + name + "'");
    b.add_full_edge(*e);
  }
  for (const auto& item : partial) {
    auto c1 = item.find(':');
    auto c2 = item.find(':', c1 == std::string::npos ? c1 : c1 + 1);
    if (c1 == std::string::npos || c2 == std::string::npos) throw InputError("bad partial interval '" + item + "'");
    auto e = tree.find_edge(item.substr(0, c1));
    if (!e) throw InputError("unknown edge in '" + item + "'");
    b.add_interval(*e, parse_rational(item.substr(c1 + 1, c2 - c1 - 1)), parse_rational(item.substr(c2 + 1)));
  }
  return b.build();
}

std::string format_germ(const Dendrite& tree, const Germ& g) {
  return tree.edge_name(g.edge) + (g.toward_head ? "+" : "-");
}

Germ parse_germ(const Dendrite& tree, const Point& base, std::string_view text) {
  if (text.size() < 2 || (text.back() != '+' && text.back() != '-')) {
    throw InputError("bad germ '" + std::string(text) + "'");
  }
  auto e = tree.find_edge(text.substr(0, text.size() - 1));
  if (!e) throw InputError("unknown edge in germ '" + std::string(text) + "'");
  Germ g{base, *e, text.back() == '+'};
  for (const auto& candidate : germs_at(tree, base)) {
    if (candidate == g) return g;
  }
  throw InputError("germ '" + std::string(text) + "' is not a direction at its base point");
}

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw InputError("cannot open '" + path + "'");
  std::ostringstream buf;
  buf << in.rdbuf();
  return buf.str();
}

}  // namespace dendro
