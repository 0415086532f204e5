#pragma once

#include <array>
#include <optional>
#include <span>
#include <vector>

#include "dendro/subdendrite.hpp"
#include "dendro/tree.hpp"

namespace dendro {

/// Menger–Urysohn order: number of components of X minus {p}.
std::size_t order_of_point(const Dendrite& tree, const Point& p);

/// Points of order 1.
std::vector<Point> ends(const Dendrite& tree);
/// Points of order at least 3 (always vertices in the finite model).
std::vector<Point> branch_points(const Dendrite& tree);

struct Arc {
  Point from;
  Point to;
  SubDendrite carrier;
};

/// The unique arc [x, y]. For x == y this is the degenerate arc {x}.
Arc arc(const Dendrite& tree, const Point& x, const Point& y);

/// Metric length of [x, y].
Rational distance(const Dendrite& tree, const Point& x, const Point& y);

/// Smallest closed connected set containing `points`. Throws on an empty set.
SubDendrite hull(const Dendrite& tree, std::span<const Point> points);

struct Component {
  Germ germ;
  SubDendrite closure;
};

/// Closures of the components of X minus {p}, ordered by germ.
std::vector<Component> components_minus(const Dendrite& tree, const Point& p);

/// Closure of the component of X minus {germ.base} in direction `germ`.
SubDendrite component_closure(const Dendrite& tree, const Germ& germ);

/// U_s(t): closure of the component of X minus {s} containing t. Requires s != t.
SubDendrite u_side(const Dendrite& tree, const Point& s, const Point& t);

/// The unique point of [p,q] ∩ [q,r] ∩ [r,p].
Point median(const Dendrite& tree, const Point& p, const Point& q, const Point& r);

/// Intersection of all members; nullopt when empty. Throws on an empty family.
std::optional<SubDendrite> helly_intersection(std::span<const SubDendrite> family);

enum class SquareTag { k012, k123 };

struct SquareReduction {
  SquareTag tag;
  Point witness;
};

/// For four closed connected sets with z_i ∩ z_{i+1} nonempty (indices mod 4),
/// reports a triple with common intersection. Prefers 012 when both hold.
SquareReduction square_reduction(const Dendrite& tree, const std::array<SubDendrite, 4>& z);

/// The point of Y lying on every arc from p into Y; p itself when p ∈ Y.
Point first_point_retraction(const Dendrite& tree, const SubDendrite& y, const Point& p);

}  // namespace dendro
