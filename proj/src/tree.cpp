#include "dendro/tree.hpp"

#include <algorithm>
#include <set>

#include "dendro/errors.hpp"

namespace dendro {

Dendrite::Dendrite(std::vector<std::string> vertex_names, std::vector<EdgeRecord> edges)
    : vertex_names_(std::move(vertex_names)), edges_(std::move(edges)) {
  if (vertex_names_.empty()) throw InputError("a tree needs at least one vertex");
  for (auto& e : edges_) e.length.canonicalize();
  std::set<std::string_view> seen;
  for (const auto& name : vertex_names_) {
    if (!seen.insert(name).second) throw InputError("duplicate vertex '" + name + "'");
  }
  std::set<std::string_view> seen_edges;
  incident_.assign(vertex_names_.size(), {});
  for (std::size_t i = 0; i < edges_.size(); ++i) {
    auto& e = edges_[i];
    if (!seen_edges.insert(e.name).second) throw InputError("duplicate edge '" + e.name + "'");
    if (e.tail.value >= vertex_names_.size() || e.head.value >= vertex_names_.size()) {
      throw InputError("edge '" + e.name + "' references an unknown vertex");
    }
    if (e.tail == e.head) throw InputError("edge '" + e.name + "' is a loop");
    if (e.length <= 0) throw InputError("edge '" + e.name + "' must have positive length");
    incident_[e.tail.value].push_back(EdgeId{static_cast<std::uint32_t>(i)});
    incident_[e.head.value].push_back(EdgeId{static_cast<std::uint32_t>(i)});
  }
  if (edges_.size() + 1 != vertex_names_.size()) {
    throw InputError("not a tree: " + std::to_string(vertex_names_.size()) + " vertices but " +
                     std::to_string(edges_.size()) + " edges");
  }
  build_rooting();
}

void Dendrite::build_rooting() {
  const std::size_t n = vertex_names_.size();
  parent_edge_.assign(n, -1);
  depth_.assign(n, 0);
  tin_.assign(n, 0);
  tout_.assign(n, 0);
  std::vector<bool> visited(n, false);
  // Iterative DFS from the root; (vertex, next incident index).
  std::vector<std::pair<std::uint32_t, std::size_t>> stack{{0, 0}};
  visited[0] = true;
  std::size_t clock = 0;
  tin_[0] = clock++;
  while (!stack.empty()) {
    auto& [v, next] = stack.back();
    if (next < incident_[v].size()) {
      EdgeId e = incident_[v][next++];
      std::uint32_t w = other_end(e, VertexId{v}).value;
      if (visited[w]) continue;
      visited[w] = true;
      parent_edge_[w] = e.value;
      depth_[w] = depth_[v] + 1;
      tin_[w] = clock++;
      stack.push_back({w, 0});
    } else {
      tout_[v] = clock;
      stack.pop_back();
    }
  }
  if (std::find(visited.begin(), visited.end(), false) != visited.end()) {
    throw InputError("not a tree: the graph is disconnected");
  }
}

std::optional<VertexId> Dendrite::find_vertex(std::string_view name) const {
  for (std::size_t i = 0; i < vertex_names_.size(); ++i) {
    if (vertex_names_[i] == name) return VertexId{static_cast<std::uint32_t>(i)};
  }
  return std::nullopt;
}

std::optional<EdgeId> Dendrite::find_edge(std::string_view name) const {
  for (std::size_t i = 0; i < edges_.size(); ++i) {
    if (edges_[i].name == name) return EdgeId{static_cast<std::uint32_t>(i)};
  }
  return std::nullopt;
}

VertexId Dendrite::other_end(EdgeId e, VertexId v) const {
  const auto& rec = edges_[e.value];
  return rec.tail == v ? rec.head : rec.tail;
}

std::optional<EdgeId> Dendrite::parent_edge(VertexId v) const {
  if (parent_edge_[v.value] < 0) return std::nullopt;
  return EdgeId{static_cast<std::uint32_t>(parent_edge_[v.value])};
}

bool Dendrite::in_subtree(VertexId ancestor, VertexId v) const {
  return tin_[ancestor.value] <= tin_[v.value] && tin_[v.value] < tout_[ancestor.value];
}

std::vector<VertexId> Dendrite::vertex_path(VertexId from, VertexId to) const {
  std::vector<VertexId> up;
  std::vector<VertexId> down;
  VertexId a = from;
  VertexId b = to;
  while (depth_[a.value] > depth_[b.value]) {
    up.push_back(a);
    a = other_end(*parent_edge(a), a);
  }
  while (depth_[b.value] > depth_[a.value]) {
    down.push_back(b);
    b = other_end(*parent_edge(b), b);
  }
  while (a != b) {
    up.push_back(a);
    down.push_back(b);
    a = other_end(*parent_edge(a), a);
    b = other_end(*parent_edge(b), b);
  }
  up.push_back(a);
  up.insert(up.end(), down.rbegin(), down.rend());
  return up;
}

std::vector<EdgeId> Dendrite::edge_path(VertexId from, VertexId to) const {
  auto verts = vertex_path(from, to);
  std::vector<EdgeId> out;
  out.reserve(verts.size());
  for (std::size_t i = 0; i + 1 < verts.size(); ++i) {
    VertexId a = verts[i];
    VertexId b = verts[i + 1];
    // One of the two is the parent of the other.
    out.push_back(depth_[a.value] > depth_[b.value] ? *parent_edge(a) : *parent_edge(b));
  }
  return out;
}

EdgeId Dendrite::first_edge(VertexId from, VertexId to) const {
  if (from == to) throw InputError("first_edge: endpoints coincide");
  if (in_subtree(from, to)) {
    VertexId w = to;
    while (true) {
      EdgeId pe = *parent_edge(w);
      VertexId up = other_end(pe, w);
      if (up == from) return pe;
      w = up;
    }
  }
  return *parent_edge(from);
}

bool Dendrite::on_head_side(EdgeId e, VertexId w) const {
  VertexId t = tail(e);
  VertexId h = head(e);
  // The endpoint farther from the root roots the subtree cut off by e.
  VertexId child = depth_[h.value] > depth_[t.value] ? h : t;
  bool in_child = in_subtree(child, w);
  return child == h ? in_child : !in_child;
}

bool operator==(const Dendrite& a, const Dendrite& b) {
  if (a.vertex_names_ != b.vertex_names_ || a.edges_.size() != b.edges_.size()) return false;
  for (std::size_t i = 0; i < a.edges_.size(); ++i) {
    const auto& x = a.edges_[i];
    const auto& y = b.edges_[i];
    if (x.name != y.name || x.tail != y.tail || x.head != y.head || x.length != y.length) return false;
  }
  return true;
}

Point Point::at_vertex(VertexId v) { return Point(true, v.value, Rational(0)); }

Point Point::on_edge(const Dendrite& tree, EdgeId e, const Rational& t) {
  if (e.value >= tree.edge_count()) throw InputError("unknown edge index");
  if (t < 0 || t > 1) throw InputError("edge parameter outside [0,1]: " + to_string(t));
  if (t == 0) return at_vertex(tree.tail(e));
  if (t == 1) return at_vertex(tree.head(e));
  Rational c = t;
  c.canonicalize();
  return Point(false, e.value, std::move(c));
}

bool operator==(const Point& a, const Point& b) {
  return a.is_vertex_ == b.is_vertex_ && a.index_ == b.index_ && a.t_ == b.t_;
}

bool operator<(const Point& a, const Point& b) {
  if (a.is_vertex_ != b.is_vertex_) return a.is_vertex_;
  if (a.index_ != b.index_) return a.index_ < b.index_;
  return a.t_ < b.t_;
}

void check_point(const Dendrite& tree, const Point& p) {
  if (p.is_vertex() ? p.vertex().value >= tree.vertex_count() : p.edge().value >= tree.edge_count()) {
    throw InputError("point does not lie in the tree");
  }
}

bool operator<(const Germ& a, const Germ& b) {
  if (a.base != b.base) return a.base < b.base;
  if (a.edge != b.edge) return a.edge < b.edge;
  return a.toward_head < b.toward_head;
}

Germ germ_along(const Dendrite& tree, VertexId v, EdgeId e) {
  return Germ{Point::at_vertex(v), e, tree.tail(e) == v};
}

std::vector<Germ> germs_at(const Dendrite& tree, const Point& p) {
  check_point(tree, p);
  std::vector<Germ> out;
  if (p.is_vertex()) {
    for (EdgeId e : tree.incident(p.vertex())) out.push_back(germ_along(tree, p.vertex(), e));
  } else {
    out.push_back(Germ{p, p.edge(), false});
    out.push_back(Germ{p, p.edge(), true});
  }
  std::sort(out.begin(), out.end());
  return out;
}

std::optional<Germ> germ_toward(const Dendrite& tree, const Point& base, const Point& target) {
  check_point(tree, base);
  check_point(tree, target);
  if (base == target) return std::nullopt;
  if (base.is_vertex()) {
    VertexId v = base.vertex();
    if (target.is_vertex()) return germ_along(tree, v, tree.first_edge(v, target.vertex()));
    EdgeId f = target.edge();
    if (tree.tail(f) == v || tree.head(f) == v) return germ_along(tree, v, f);
    return germ_along(tree, v, tree.first_edge(v, tree.tail(f)));
  }
  EdgeId e = base.edge();
  if (!target.is_vertex() && target.edge() == e) {
    return Germ{base, e, target.param() > base.param()};
  }
  // Both endpoints of a different edge lie on the same side of e.
  VertexId w = target.is_vertex() ? target.vertex() : tree.tail(target.edge());
  return Germ{base, e, tree.on_head_side(e, w)};
}

}  // namespace dendro
