#pragma once

#include <vector>

#include "dendro/subdendrite.hpp"
#include "dendro/tree.hpp"

namespace dendro {

/// A combinatorial automorphism of a finite tree, extended linearly on edges.
///
/// `flip[e]` is set when edge e is carried onto edge_map[e] with reversed
/// orientation, so the point (e, t) goes to (edge_map[e], flip ? 1 - t : t).
/// Edge lengths need not be preserved.
class TreeAutomorphism {
 public:
  static TreeAutomorphism identity(const Dendrite& tree);
  /// Derives edge images and flips from a vertex permutation. Throws InputError
  /// when the permutation does not preserve adjacency.
  static TreeAutomorphism from_vertex_map(const Dendrite& tree, std::vector<VertexId> vertex_map);

  VertexId operator()(VertexId v) const { return vertex_map_[v.value]; }
  EdgeId edge_image(EdgeId e) const { return edge_map_[e.value]; }
  bool flips(EdgeId e) const { return flip_[e.value]; }

  Point apply(const Dendrite& tree, const Point& p) const;
  Germ apply(const Dendrite& tree, const Germ& g) const;
  SubDendrite apply(const Dendrite& tree, const SubDendrite& s) const;

  TreeAutomorphism inverse(const Dendrite& tree) const;
  /// this ∘ other
  TreeAutomorphism after(const Dendrite& tree, const TreeAutomorphism& other) const;

  bool is_identity() const;
  friend bool operator==(const TreeAutomorphism&, const TreeAutomorphism&) = default;

 private:
  std::vector<VertexId> vertex_map_;
  std::vector<EdgeId> edge_map_;
  std::vector<bool> flip_;
};

}  // namespace dendro
