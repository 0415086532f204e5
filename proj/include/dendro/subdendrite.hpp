#pragma once

#include <optional>
#include <utility>
#include <vector>

#include "dendro/tree.hpp"

namespace dendro {

/// Closed subinterval [lo, hi] of an edge's parameter range [0, 1].
struct Interval {
  Rational lo;
  Rational hi;

  bool contains(const Rational& t) const { return lo <= t && t <= hi; }
  bool is_full() const { return lo == 0 && hi == 1; }
  friend bool operator==(const Interval&, const Interval&) = default;
};

/// A closed connected subset of a finite dendrite (or the empty set, which only
/// appears as an intermediate value; public operations that can produce it
/// return std::optional).
///
/// Stored as the intersection with every closed edge plus vertex membership.
/// Since the intersection of a connected set with an arc is an interval, this
/// representation is canonical: two values are equal iff they describe the
/// same subset.
class SubDendrite {
 public:
  static SubDendrite whole(const Dendrite& tree);
  static SubDendrite point(const Dendrite& tree, const Point& p);

  bool is_empty() const;
  bool contains(const Point& p) const;
  bool contains_vertex(VertexId v) const { return vertex_in_[v.value]; }
  const std::optional<Interval>& part(EdgeId e) const { return edge_part_[e.value]; }

  // Canonical view: member vertices, edges fully contained, and the remaining
  // proper subintervals (degenerate intervals at an endpoint are represented by
  // the vertex alone).
  std::vector<VertexId> vertices() const;
  std::vector<EdgeId> full_edges() const;
  std::vector<std::pair<EdgeId, Interval>> partial_intervals() const;

  /// Number of directions at `p` along which the set continues.
  std::size_t order_within(const Dendrite& tree, const Point& p) const;
  /// Points of order at most one inside the set (the ends of the subtree).
  std::vector<Point> extremities(const Dendrite& tree) const;
  bool is_arc(const Dendrite& tree) const;
  std::optional<Point> as_single_point(const Dendrite& tree) const;
  /// Smallest point of the set in Point order. Requires a nonempty set.
  Point representative(const Dendrite& tree) const;
  Rational total_length(const Dendrite& tree) const;

  bool is_subset_of(const SubDendrite& other) const;

  friend bool operator==(const SubDendrite&, const SubDendrite&) = default;

 private:
  friend class SubDendriteBuilder;
  friend SubDendrite intersect_parts(const SubDendrite&, const SubDendrite&);
  SubDendrite() = default;

  std::vector<std::optional<Interval>> edge_part_;
  std::vector<bool> vertex_in_;
};

/// Accumulates closed pieces whose union is connected; `build()` canonicalizes.
/// Pieces on one edge are merged by convex hull, which is exact whenever the
/// final union is connected.
class SubDendriteBuilder {
 public:
  explicit SubDendriteBuilder(const Dendrite& tree);

  SubDendriteBuilder& add_point(const Point& p);
  SubDendriteBuilder& add_vertex(VertexId v);
  SubDendriteBuilder& add_interval(EdgeId e, const Rational& lo, const Rational& hi);
  SubDendriteBuilder& add_full_edge(EdgeId e) { return add_interval(e, Rational(0), Rational(1)); }
  SubDendriteBuilder& add(const SubDendrite& piece);

  SubDendrite build() const;

 private:
  const Dendrite* tree_;
  SubDendrite acc_;
};

/// Intersection of two closed connected sets (connected, possibly empty).
std::optional<SubDendrite> intersect(const SubDendrite& a, const SubDendrite& b);

/// Union of two closed connected sets. Throws InputError when they are disjoint,
/// since the union would not be connected.
SubDendrite unite(const Dendrite& tree, const SubDendrite& a, const SubDendrite& b);

}  // namespace dendro
