#include "dendro/measures.hpp"

#include <algorithm>
#include <set>

#include "dendro/errors.hpp"
#include "dendro/tree_ops.hpp"

namespace dendro {

TreeMeasure::TreeMeasure(const Dendrite& tree, std::map<Point, Rational> atoms, std::map<EdgeId, Rational> densities) {
  Rational total(0);
  for (auto& [p, m] : atoms) {
    m.canonicalize();
    check_point(tree, p);
    if (m <= 0) throw InputError("atom masses must be positive");
    total += m;
  }
  for (auto& [e, m] : densities) {
    m.canonicalize();
    if (e.value >= tree.edge_count()) throw InputError("density on an unknown edge");
    if (m < 0) throw InputError("edge densities must be nonnegative");
    total += m;
  }
  if (total != 1) throw InputError("total mass is " + to_string(total) + ", expected 1");
  atoms_ = std::move(atoms);
  for (auto& [e, m] : densities) {
    if (m != 0) densities_.emplace(e, m);
  }
}

TreeMeasure TreeMeasure::dirac(const Dendrite& tree, const Point& p) {
  return TreeMeasure(tree, {{p, Rational(1)}}, {});
}

Rational TreeMeasure::atom_at(const Point& p) const {
  auto it = atoms_.find(p);
  return it == atoms_.end() ? Rational(0) : it->second;
}

Rational mass_of(const TreeMeasure& mu, const SubDendrite& s) {
  Rational sum(0);
  for (const auto& [p, m] : mu.atoms()) {
    if (s.contains(p)) sum += m;
  }
  for (const auto& [e, m] : mu.densities()) {
    const auto& part = s.part(e);
    if (part) sum += m * (part->hi - part->lo);
  }
  return sum;
}

Rational component_mass(const Dendrite& tree, const TreeMeasure& mu, const Germ& germ) {
  return mass_of(mu, component_closure(tree, germ)) - mu.atom_at(germ.base);
}

TreeMeasure pushforward(const Dendrite& tree, const TreeMeasure& mu, const TreeAutomorphism& g) {
  std::map<Point, Rational> atoms;
  for (const auto& [p, m] : mu.atoms()) atoms.emplace(g.apply(tree, p), m);
  std::map<EdgeId, Rational> dens;
  for (const auto& [e, m] : mu.densities()) dens.emplace(g.edge_image(e), m);
  return TreeMeasure(tree, std::move(atoms), std::move(dens));
}

std::vector<Point> jordan_center(const Dendrite& tree, std::span<const Point> a) {
  if (a.empty()) throw InputError("jordan_center of an empty set");
  SubDendrite h = hull(tree, a);
  // Nodes of the suppressed hull: its extremities and its branch vertices.
  std::vector<Point> nodes = h.extremities(tree);
  for (VertexId v : h.vertices()) {
    if (h.order_within(tree, Point::at_vertex(v)) >= 3) nodes.push_back(Point::at_vertex(v));
  }
  std::sort(nodes.begin(), nodes.end());
  nodes.erase(std::unique(nodes.begin(), nodes.end()), nodes.end());
  const std::size_t n = nodes.size();
  if (n <= 2) return nodes;

  std::vector<std::vector<std::size_t>> adj(n);
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = i + 1; j < n; ++j) {
      auto carrier = arc(tree, nodes[i], nodes[j]).carrier;
      bool direct = true;
      for (std::size_t k = 0; k < n && direct; ++k) {
        if (k != i && k != j && carrier.contains(nodes[k])) direct = false;
      }
      if (direct) {
        adj[i].push_back(j);
        adj[j].push_back(i);
      }
    }
  }
  std::vector<std::size_t> degree(n);
  for (std::size_t i = 0; i < n; ++i) degree[i] = adj[i].size();
  std::vector<bool> removed(n, false);
  std::size_t remaining = n;
  while (remaining > 2) {
    std::vector<std::size_t> leaves;
    for (std::size_t i = 0; i < n; ++i) {
      if (!removed[i] && degree[i] <= 1) leaves.push_back(i);
    }
    for (std::size_t i : leaves) {
      removed[i] = true;
      --remaining;
      for (std::size_t j : adj[i]) {
        if (!removed[j]) --degree[j];
      }
    }
  }
  std::vector<Point> out;
  for (std::size_t i = 0; i < n; ++i) {
    if (!removed[i]) out.push_back(nodes[i]);
  }
  return out;
}

namespace {

void require_atom_free(const TreeMeasure& mu, const char* op) {
  if (mu.has_atoms()) throw InputError(std::string(op) + " requires an atom-free measure");
}

}  // namespace

std::optional<SubDendrite> half_points(const Dendrite& tree, const TreeMeasure& mu) {
  require_atom_free(mu, "half_points");
  const Rational half(1, 2);
  std::vector<Point> marks;
  for (std::uint32_t i = 0; i < tree.edge_count(); ++i) {
    EdgeId e{i};
    auto it = mu.densities().find(e);
    Rational d = it == mu.densities().end() ? Rational(0) : it->second;
    // Tail-side mass at parameter t is base + d t.
    Point mid = Point::on_edge(tree, e, half);
    Rational base = component_mass(tree, mu, Germ{mid, e, false}) - d * half;
    if (d == 0) {
      if (base == half) {
        marks.push_back(Point::at_vertex(tree.tail(e)));
        marks.push_back(Point::at_vertex(tree.head(e)));
      }
      continue;
    }
    Rational t = (half - base) / d;
    if (t > 0 && t < 1) marks.push_back(Point::on_edge(tree, e, t));
  }
  for (std::uint32_t v = 0; v < tree.vertex_count(); ++v) {
    VertexId id{v};
    if (tree.degree(id) != 2) continue;
    auto germs = germs_at(tree, Point::at_vertex(id));
    if (component_mass(tree, mu, germs[0]) == half && component_mass(tree, mu, germs[1]) == half) {
      marks.push_back(Point::at_vertex(id));
    }
  }
  if (marks.empty()) return std::nullopt;
  return hull(tree, marks);
}

Point heavy_component_core(const Dendrite& tree, const TreeMeasure& mu) {
  require_atom_free(mu, "heavy_component_core");
  if (half_points(tree, mu)) throw InputError("heavy_component_core: the measure has half points");
  const Rational half(1, 2);
  for (std::uint32_t v = 0; v < tree.vertex_count(); ++v) {
    Point p = Point::at_vertex(VertexId{v});
    bool light = true;
    for (const auto& g : germs_at(tree, p)) {
      if (component_mass(tree, mu, g) > half) {
        light = false;
        break;
      }
    }
    if (light) return p;
  }
  throw std::logic_error("heavy_component_core: no balanced vertex");
}

MeasureMedian measure_median(const Dendrite& tree, const TreeMeasure& mu) {
  if (mu.has_atoms()) {
    Rational top(0);
    for (const auto& [p, m] : mu.atoms()) top = std::max(top, m);
    std::vector<Point> heaviest;
    for (const auto& [p, m] : mu.atoms()) {
      if (m == top) heaviest.push_back(p);
    }
    return {MedianCase::kAtomic, jordan_center(tree, heaviest)};
  }
  if (auto e = half_points(tree, mu)) {
    auto tips = e->extremities(tree);
    if (tips.empty()) tips.push_back(*e->as_single_point(tree));
    return {MedianCase::kHalfPoints, tips};
  }
  return {MedianCase::kHeavyCore, {heavy_component_core(tree, mu)}};
}

std::string to_string(MedianCase c) {
  switch (c) {
    case MedianCase::kAtomic:
      return "atomic";
    case MedianCase::kHalfPoints:
      return "half-points";
    case MedianCase::kHeavyCore:
      return "heavy-core";
  }
  return "?";
}

namespace {

void absorb_measure_line(const Dendrite& tree, const TextLine& line, const std::string& source,
                         std::map<Point, Rational>& atoms, std::map<EdgeId, Rational>& dens) {
  const auto& t = line.tokens;
  if (t[0] != "atom" && t[0] != "density") throw ParseError(source, line.number, t[0], "unknown keyword");
  if (t.size() != 3) throw ParseError(source, line.number, t[0], "expected '" + t[0] + " <where> <mass>'");
  Rational m;
  try {
    m = parse_rational(t[2]);
  } catch (const InputError&) {
    throw ParseError(source, line.number, t[2], "malformed mass");
  }
  if (t[0] == "atom") {
    Point p = Point::at_vertex(VertexId{0});
    try {
      p = parse_point(tree, t[1]);
    } catch (const InputError&) {
      throw ParseError(source, line.number, t[1], "bad point spec");
    }
    if (m <= 0) throw ParseError(source, line.number, t[2], "atom mass must be positive");
    atoms[p] += m;
  } else {
    auto e = tree.find_edge(t[1]);
    if (!e) throw ParseError(source, line.number, t[1], "unknown edge");
    if (m < 0) throw ParseError(source, line.number, t[2], "density must be nonnegative");
    dens[*e] += m;
  }
}

TreeMeasure finish(const Dendrite& tree, std::map<Point, Rational> atoms, std::map<EdgeId, Rational> dens,
                   const std::string& source, const TextLine* last) {
  try {
    return TreeMeasure(tree, std::move(atoms), std::move(dens));
  } catch (const ParseError&) {
    throw;
  } catch (const InputError& err) {
    // Reported at the last measure line.
    if (!last) throw ParseError(source, 1, "", std::string(err.what()) + "; no atom or density lines");
    throw ParseError(source, last->number, last->tokens.back(), err.what());
  }
}

}  // namespace

MeasureFile parse_measure_file(std::string_view text, const std::string& source) {
  std::vector<TextLine> extra;
  Dendrite tree = parse_tree(text, source, [&](const TextLine& l) { extra.push_back(l); });
  std::map<Point, Rational> atoms;
  std::map<EdgeId, Rational> dens;
  for (const auto& l : extra) absorb_measure_line(tree, l, source, atoms, dens);
  TreeMeasure mu = finish(tree, std::move(atoms), std::move(dens), source, extra.empty() ? nullptr : &extra.back());
  return MeasureFile{std::move(tree), std::move(mu)};
}

TreeMeasure parse_measure(const Dendrite& tree, std::string_view text, const std::string& source) {
  std::map<Point, Rational> atoms;
  std::map<EdgeId, Rational> dens;
  const auto lines = tokenize_lines(text);
  const TextLine* last = nullptr;
  for (const auto& l : lines) {
    if (l.tokens[0] == "vertex" || l.tokens[0] == "edge") continue;
    absorb_measure_line(tree, l, source, atoms, dens);
    last = &l;
  }
  return finish(tree, std::move(atoms), std::move(dens), source, last);
}

std::string format_measure(const Dendrite& tree, const TreeMeasure& mu) {
  std::string out;
  for (const auto& [p, m] : mu.atoms()) out += "atom " + format_point(tree, p) + " " + to_string(m) + "\n";
  for (const auto& [e, m] : mu.densities()) out += "density " + tree.edge_name(e) + " " + to_string(m) + "\n";
  return out;
}

}  // namespace dendro
