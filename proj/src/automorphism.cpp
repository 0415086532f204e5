#include "dendro/automorphism.hpp"

#include "dendro/errors.hpp"

namespace dendro {

TreeAutomorphism TreeAutomorphism::identity(const Dendrite& tree) {
  std::vector<VertexId> vm(tree.vertex_count());
  for (std::uint32_t v = 0; v < vm.size(); ++v) vm[v] = VertexId{v};
  return from_vertex_map(tree, std::move(vm));
}

TreeAutomorphism TreeAutomorphism::from_vertex_map(const Dendrite& tree, std::vector<VertexId> vertex_map) {
  if (vertex_map.size() != tree.vertex_count()) throw InputError("vertex map has the wrong size");
  std::vector<bool> hit(tree.vertex_count(), false);
  for (VertexId v : vertex_map) {
    if (v.value >= tree.vertex_count() || hit[v.value]) throw InputError("vertex map is not a bijection");
    hit[v.value] = true;
  }
  TreeAutomorphism g;
  g.vertex_map_ = std::move(vertex_map);
  g.edge_map_.resize(tree.edge_count());
  g.flip_.resize(tree.edge_count());
  for (std::uint32_t i = 0; i < tree.edge_count(); ++i) {
    EdgeId e{i};
    VertexId a = g.vertex_map_[tree.tail(e).value];
    VertexId b = g.vertex_map_[tree.head(e).value];
    bool found = false;
    for (EdgeId f : tree.incident(a)) {
      if (tree.other_end(f, a) == b) {
        g.edge_map_[i] = f;
        g.flip_[i] = tree.tail(f) != a;
        found = true;
        break;
      }
    }
    if (!found) throw InputError("vertex map does not preserve adjacency at edge '" + tree.edge_name(e) + "'");
  }
  return g;
}

Point TreeAutomorphism::apply(const Dendrite& tree, const Point& p) const {
  check_point(tree, p);
  if (p.is_vertex()) return Point::at_vertex((*this)(p.vertex()));
  EdgeId e = p.edge();
  return Point::on_edge(tree, edge_image(e), flips(e) ? 1 - p.param() : p.param());
}

Germ TreeAutomorphism::apply(const Dendrite& tree, const Germ& g) const {
  return Germ{apply(tree, g.base), edge_image(g.edge), flips(g.edge) ? !g.toward_head : g.toward_head};
}

SubDendrite TreeAutomorphism::apply(const Dendrite& tree, const SubDendrite& s) const {
  SubDendriteBuilder b(tree);
  for (VertexId v : s.vertices()) b.add_vertex((*this)(v));
  for (std::uint32_t i = 0; i < tree.edge_count(); ++i) {
    EdgeId e{i};
    const auto& part = s.part(e);
    if (!part) continue;
    if (flips(e)) {
      b.add_interval(edge_image(e), 1 - part->hi, 1 - part->lo);
    } else {
      b.add_interval(edge_image(e), part->lo, part->hi);
    }
  }
  return b.build();
}

TreeAutomorphism TreeAutomorphism::inverse(const Dendrite& tree) const {
  std::vector<VertexId> inv(vertex_map_.size());
  for (std::uint32_t v = 0; v < vertex_map_.size(); ++v) inv[vertex_map_[v].value] = VertexId{v};
  return from_vertex_map(tree, std::move(inv));
}

TreeAutomorphism TreeAutomorphism::after(const Dendrite& tree, const TreeAutomorphism& other) const {
  std::vector<VertexId> vm(vertex_map_.size());
  for (std::uint32_t v = 0; v < vm.size(); ++v) vm[v] = (*this)(other(VertexId{v}));
  return from_vertex_map(tree, std::move(vm));
}

bool TreeAutomorphism::is_identity() const {
  for (std::uint32_t v = 0; v < vertex_map_.size(); ++v) {
    if (vertex_map_[v].value != v) return false;
  }
  return true;
}

}  // namespace dendro
