#pragma once

#include <map>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "dendro/automorphism.hpp"
#include "dendro/subdendrite.hpp"
#include "dendro/text_format.hpp"
#include "dendro/tree.hpp"

namespace dendro {

/// A probability measure on a finite tree: finitely many atoms plus, per edge,
/// a total mass spread uniformly in the edge parameter.
class TreeMeasure {
 public:
  /// Validates positivity and total mass 1; zero densities are dropped,
  /// zero atoms rejected.
  TreeMeasure(const Dendrite& tree, std::map<Point, Rational> atoms, std::map<EdgeId, Rational> densities);

  static TreeMeasure dirac(const Dendrite& tree, const Point& p);

  const std::map<Point, Rational>& atoms() const { return atoms_; }
  const std::map<EdgeId, Rational>& densities() const { return densities_; }
  bool has_atoms() const { return !atoms_.empty(); }
  Rational atom_at(const Point& p) const;

  friend bool operator==(const TreeMeasure&, const TreeMeasure&) = default;

 private:
  std::map<Point, Rational> atoms_;
  std::map<EdgeId, Rational> densities_;
};

Rational mass_of(const TreeMeasure& mu, const SubDendrite& s);

/// Mass of the open component of X minus {germ.base} in the direction of `germ`.
Rational component_mass(const Dendrite& tree, const TreeMeasure& mu, const Germ& germ);

/// Image measure under an automorphism extended linearly on edges.
TreeMeasure pushforward(const Dendrite& tree, const TreeMeasure& mu, const TreeAutomorphism& g);

/// Center of the hull of `a` with degree-two points suppressed, by simultaneous
/// leaf pruning. One or two points, sorted.
std::vector<Point> jordan_center(const Dendrite& tree, std::span<const Point> a);

/// Hull of the regular points splitting an atom-free measure into two halves,
/// or nullopt when there are none.
std::optional<SubDendrite> half_points(const Dendrite& tree, const TreeMeasure& mu);

/// The point whose complementary components all have mass at most 1/2, for an
/// atom-free measure without half points.
Point heavy_component_core(const Dendrite& tree, const TreeMeasure& mu);

enum class MedianCase { kAtomic, kHalfPoints, kHeavyCore };

struct MeasureMedian {
  MedianCase which;
  std::vector<Point> points;  // one or two, sorted
};

MeasureMedian measure_median(const Dendrite& tree, const TreeMeasure& mu);

std::string to_string(MedianCase c);

/// Tree lines followed by `atom <point-spec> <mass>` and `density <edge> <mass>`.
struct MeasureFile {
  Dendrite tree;
  TreeMeasure measure;
};
MeasureFile parse_measure_file(std::string_view text, const std::string& source);
/// Parses measure lines against an existing tree; tree lines are skipped.
TreeMeasure parse_measure(const Dendrite& tree, std::string_view text, const std::string& source);
std::string format_measure(const Dendrite& tree, const TreeMeasure& mu);

}  // namespace dendro
