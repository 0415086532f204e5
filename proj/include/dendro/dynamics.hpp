#pragma once

#include <string>
#include <utility>
#include <vector>

#include "dendro/automorphism.hpp"
#include "dendro/subdendrite.hpp"
#include "dendro/tree_ops.hpp"

namespace dendro {

/// Increasing piecewise-linear bijection of [0, 1] with rational breakpoints.
/// Stored canonically: (0,0) and (1,1) included, no collinear interior breakpoint.
class PLMap {
 public:
  PLMap();  // identity
  /// Interior breakpoints (t, s); both coordinates strictly increasing in (0, 1).
  explicit PLMap(std::vector<std::pair<Rational, Rational>> interior);

  Rational operator()(const Rational& t) const;
  PLMap inverse() const;
  /// this ∘ inner
  PLMap after(const PLMap& inner) const;
  /// u ↦ 1 − f(1 − u)
  PLMap reflected() const;

  bool is_identity() const { return points_.size() == 2; }
  const std::vector<std::pair<Rational, Rational>>& breakpoints() const { return points_; }
  /// Solutions of f(t) = t in [0, 1] as maximal closed intervals (possibly degenerate).
  std::vector<Interval> fixed_intervals() const;
  /// The unique t with f(t) = 1 − t.
  Rational anti_fixed_point() const;

  friend bool operator==(const PLMap&, const PLMap&) = default;

 private:
  void canonicalize();
  std::vector<std::pair<Rational, Rational>> points_;
};

/// Self-homeomorphism of a finite tree: an automorphism of the tree together
/// with increasing PL maps on edges. The point (e, t) goes to
/// (σ(e), flip(e) ? 1 − φ_e(t) : φ_e(t)).
class PLHomeo {
 public:
  static PLHomeo identity(const Dendrite& tree);
  PLHomeo(const Dendrite& tree, TreeAutomorphism sigma, std::vector<PLMap> edge_maps);

  const Dendrite& tree() const { return *tree_; }
  const TreeAutomorphism& combinatorics() const { return sigma_; }
  const PLMap& edge_map(EdgeId e) const { return phi_[e.value]; }

  Point apply(const Point& p) const;
  SubDendrite apply(const SubDendrite& s) const;
  /// Image parameter on σ(e) of the parameter t on e.
  Rational image_param(EdgeId e, const Rational& t) const;

  PLHomeo inverse() const;
  /// this ∘ inner. Throws InputError when the trees differ.
  PLHomeo after(const PLHomeo& inner) const;
  PLHomeo power(long n) const;

  bool is_identity() const;
  friend bool operator==(const PLHomeo& a, const PLHomeo& b) {
    return a.sigma_ == b.sigma_ && a.phi_ == b.phi_;
  }

 private:
  const Dendrite* tree_;
  TreeAutomorphism sigma_;
  std::vector<PLMap> phi_;
};

/// The fixed set as its connected components, each a sub-dendrite.
struct FixedSet {
  std::vector<SubDendrite> components;

  bool empty() const { return components.empty(); }
  bool connected() const { return components.size() == 1; }
  bool contains(const Point& p) const;
};

FixedSet fixed_set(const PLHomeo& g);

/// One component W of X minus Fix(g), with its boundary points (fixed points).
struct FreeRegion {
  SubDendrite closure;
  std::vector<Point> boundary;
  /// Membership in the open region (closure minus boundary).
  bool contains(const Point& p) const;
};

std::vector<FreeRegion> free_regions(const PLHomeo& g);

std::vector<Arc> austro_boreal_arcs(const PLHomeo& g);

enum class FixVerdict { kConnectedFix, kHasAustroBoreal };
FixVerdict fix_dichotomy(const PLHomeo& g);
std::string to_string(FixVerdict v);

struct AustroBorealPiece {
  Arc arc;
  /// Closure of O(I); O(I) itself excludes the two arc endpoints.
  FreeRegion region;
  /// Endpoint toward which g moves the interior of the arc.
  Point attracting;
  /// Fundamental segment [z, g(z)] on the arc interior.
  Point segment_start;
  Point segment_end;
};

struct KernelComponent {
  SubDendrite set;
  SubDendrite fixed;
};

struct TectonicDecomposition {
  std::vector<AustroBorealPiece> austro_boreal;
  std::vector<KernelComponent> kernel;
};

TectonicDecomposition tectonic(const PLHomeo& g);

/// `vmap <v> <v'>` and `emap <e> <e'> <t>:<s> ...` lines, where s is the image
/// parameter on e'. Unlisted vertices are fixed and unlisted edge maps linear.
PLHomeo parse_map(const Dendrite& tree, std::string_view text, const std::string& source);
std::string format_map(const PLHomeo& g);

}  // namespace dendro
