#include "dendro/subdendrite.hpp"

#include <algorithm>

#include "dendro/errors.hpp"

namespace dendro {

SubDendrite SubDendrite::whole(const Dendrite& tree) {
  SubDendriteBuilder b(tree);
  for (std::uint32_t i = 0; i < tree.edge_count(); ++i) b.add_full_edge(EdgeId{i});
  b.add_vertex(tree.root());
  return b.build();
}

SubDendrite SubDendrite::point(const Dendrite& tree, const Point& p) {
  return SubDendriteBuilder(tree).add_point(p).build();
}

bool SubDendrite::is_empty() const {
  return std::none_of(vertex_in_.begin(), vertex_in_.end(), [](bool b) { return b; }) &&
         std::none_of(edge_part_.begin(), edge_part_.end(), [](const auto& p) { return p.has_value(); });
}

bool SubDendrite::contains(const Point& p) const {
  if (p.is_vertex()) return p.vertex().value < vertex_in_.size() && vertex_in_[p.vertex().value];
  if (p.edge().value >= edge_part_.size()) return false;
  const auto& part = edge_part_[p.edge().value];
  return part && part->contains(p.param());
}

std::vector<VertexId> SubDendrite::vertices() const {
  std::vector<VertexId> out;
  for (std::uint32_t i = 0; i < vertex_in_.size(); ++i) {
    if (vertex_in_[i]) out.push_back(VertexId{i});
  }
  return out;
}

std::vector<EdgeId> SubDendrite::full_edges() const {
  std::vector<EdgeId> out;
  for (std::uint32_t i = 0; i < edge_part_.size(); ++i) {
    if (edge_part_[i] && edge_part_[i]->is_full()) out.push_back(EdgeId{i});
  }
  return out;
}

std::vector<std::pair<EdgeId, Interval>> SubDendrite::partial_intervals() const {
  std::vector<std::pair<EdgeId, Interval>> out;
  for (std::uint32_t i = 0; i < edge_part_.size(); ++i) {
    const auto& part = edge_part_[i];
    if (!part || part->is_full()) continue;
    if (part->lo == part->hi && (part->lo == 0 || part->lo == 1)) continue;
    out.emplace_back(EdgeId{i}, *part);
  }
  return out;
}

std::size_t SubDendrite::order_within(const Dendrite& tree, const Point& p) const {
  if (!contains(p)) return 0;
  if (!p.is_vertex()) {
    const auto& part = *edge_part_[p.edge().value];
    return (part.lo < p.param() ? 1 : 0) + (part.hi > p.param() ? 1 : 0);
  }
  std::size_t count = 0;
  VertexId v = p.vertex();
  for (EdgeId e : tree.incident(v)) {
    const auto& part = edge_part_[e.value];
    if (!part) continue;
    if (tree.tail(e) == v ? part->hi > 0 : part->lo < 1) ++count;
  }
  return count;
}

std::vector<Point> SubDendrite::extremities(const Dendrite& tree) const {
  std::vector<Point> out;
  for (VertexId v : vertices()) {
    if (order_within(tree, Point::at_vertex(v)) <= 1) out.push_back(Point::at_vertex(v));
  }
  for (const auto& [e, iv] : partial_intervals()) {
    if (iv.lo > 0) out.push_back(Point::on_edge(tree, e, iv.lo));
    if (iv.hi < 1 && iv.hi != iv.lo) out.push_back(Point::on_edge(tree, e, iv.hi));
  }
  std::sort(out.begin(), out.end());
  out.erase(std::unique(out.begin(), out.end()), out.end());
  return out;
}

bool SubDendrite::is_arc(const Dendrite& tree) const {
  if (is_empty()) return false;
  for (VertexId v : vertices()) {
    if (order_within(tree, Point::at_vertex(v)) > 2) return false;
  }
  return true;
}

std::optional<Point> SubDendrite::as_single_point(const Dendrite& tree) const {
  if (is_empty()) return std::nullopt;
  auto verts = vertices();
  if (verts.size() > 1) return std::nullopt;
  for (std::uint32_t i = 0; i < edge_part_.size(); ++i) {
    const auto& part = edge_part_[i];
    if (part && part->lo != part->hi) return std::nullopt;
  }
  if (verts.size() == 1) return Point::at_vertex(verts.front());
  for (std::uint32_t i = 0; i < edge_part_.size(); ++i) {
    if (edge_part_[i]) return Point::on_edge(tree, EdgeId{i}, edge_part_[i]->lo);
  }
  return std::nullopt;
}

Point SubDendrite::representative(const Dendrite& tree) const {
  for (std::uint32_t i = 0; i < vertex_in_.size(); ++i) {
    if (vertex_in_[i]) return Point::at_vertex(VertexId{i});
  }
  for (std::uint32_t i = 0; i < edge_part_.size(); ++i) {
    if (edge_part_[i]) return Point::on_edge(tree, EdgeId{i}, edge_part_[i]->lo);
  }
  throw InputError("empty sub-dendrite has no representative point");
}

Rational SubDendrite::total_length(const Dendrite& tree) const {
  Rational sum(0);
  for (std::uint32_t i = 0; i < edge_part_.size(); ++i) {
    if (edge_part_[i]) sum += tree.length(EdgeId{i}) * (edge_part_[i]->hi - edge_part_[i]->lo);
  }
  return sum;
}

bool SubDendrite::is_subset_of(const SubDendrite& other) const {
  for (std::size_t i = 0; i < vertex_in_.size(); ++i) {
    if (vertex_in_[i] && !other.vertex_in_[i]) return false;
  }
  for (std::size_t i = 0; i < edge_part_.size(); ++i) {
    const auto& mine = edge_part_[i];
    if (!mine) continue;
    const auto& theirs = other.edge_part_[i];
    if (!theirs || mine->lo < theirs->lo || mine->hi > theirs->hi) return false;
  }
  return true;
}

SubDendriteBuilder::SubDendriteBuilder(const Dendrite& tree) : tree_(&tree) {
  acc_.edge_part_.assign(tree.edge_count(), std::nullopt);
  acc_.vertex_in_.assign(tree.vertex_count(), false);
}

SubDendriteBuilder& SubDendriteBuilder::add_vertex(VertexId v) {
  acc_.vertex_in_.at(v.value) = true;
  return *this;
}

SubDendriteBuilder& SubDendriteBuilder::add_point(const Point& p) {
  check_point(*tree_, p);
  if (p.is_vertex()) return add_vertex(p.vertex());
  return add_interval(p.edge(), p.param(), p.param());
}

SubDendriteBuilder& SubDendriteBuilder::add_interval(EdgeId e, const Rational& lo, const Rational& hi) {
  if (e.value >= tree_->edge_count()) throw InputError("unknown edge index");
  if (lo < 0 || hi > 1 || lo > hi) throw InputError("invalid edge interval");
  auto& part = acc_.edge_part_[e.value];
  if (!part) {
    part = Interval{lo, hi};
  } else {
    if (lo < part->lo) part->lo = lo;
    if (hi > part->hi) part->hi = hi;
  }
  return *this;
}

SubDendriteBuilder& SubDendriteBuilder::add(const SubDendrite& piece) {
  for (std::uint32_t i = 0; i < piece.vertex_in_.size(); ++i) {
    if (piece.vertex_in_[i]) add_vertex(VertexId{i});
  }
  for (std::uint32_t i = 0; i < piece.edge_part_.size(); ++i) {
    if (piece.edge_part_[i]) add_interval(EdgeId{i}, piece.edge_part_[i]->lo, piece.edge_part_[i]->hi);
  }
  return *this;
}

SubDendrite SubDendriteBuilder::build() const {
  SubDendrite out = acc_;
  const Dendrite& tree = *tree_;
  for (std::uint32_t i = 0; i < tree.edge_count(); ++i) {
    const auto& part = out.edge_part_[i];
    if (!part) continue;
    if (part->lo == 0) out.vertex_in_[tree.tail(EdgeId{i}).value] = true;
    if (part->hi == 1) out.vertex_in_[tree.head(EdgeId{i}).value] = true;
  }
  for (std::uint32_t v = 0; v < tree.vertex_count(); ++v) {
    if (!out.vertex_in_[v]) continue;
    for (EdgeId e : tree.incident(VertexId{v})) {
      Rational at = tree.tail(e).value == v ? Rational(0) : Rational(1);
      auto& part = out.edge_part_[e.value];
      if (!part) {
        part = Interval{at, at};
      } else {
        if (at < part->lo) part->lo = at;
        if (at > part->hi) part->hi = at;
      }
    }
  }
  return out;
}

SubDendrite intersect_parts(const SubDendrite& a, const SubDendrite& b) {
  if (a.vertex_in_.size() != b.vertex_in_.size() || a.edge_part_.size() != b.edge_part_.size()) {
    throw InputError("sub-dendrites of different trees");
  }
  SubDendrite out;
  out.vertex_in_.resize(a.vertex_in_.size());
  out.edge_part_.resize(a.edge_part_.size());
  for (std::size_t i = 0; i < a.vertex_in_.size(); ++i) out.vertex_in_[i] = a.vertex_in_[i] && b.vertex_in_[i];
  for (std::size_t i = 0; i < a.edge_part_.size(); ++i) {
    const auto& x = a.edge_part_[i];
    const auto& y = b.edge_part_[i];
    if (!x || !y) continue;
    Rational lo = std::max(x->lo, y->lo);
    Rational hi = std::min(x->hi, y->hi);
    if (lo <= hi) out.edge_part_[i] = Interval{lo, hi};
  }
  return out;
}

std::optional<SubDendrite> intersect(const SubDendrite& a, const SubDendrite& b) {
  SubDendrite out = intersect_parts(a, b);
  if (out.is_empty()) return std::nullopt;
  return out;
}

SubDendrite unite(const Dendrite& tree, const SubDendrite& a, const SubDendrite& b) {
  if (!intersect(a, b)) throw InputError("union of disjoint sub-dendrites is not connected");
  return SubDendriteBuilder(tree).add(a).add(b).build();
}

}  // namespace dendro
