#pragma once

#include <map>
#include <optional>
#include <string>
#include <utility>

#include "dendro/automorphism.hpp"
#include "dendro/tree.hpp"

namespace dendro {

/// Sparse function on ordered pairs of distinct germs sharing a base point.
///
/// Only germ-ordered pairs (first < second) are stored; the reversed pair
/// carries the negated value. Zero entries are never stored.
class CocycleValue {
 public:
  using Key = std::pair<Germ, Germ>;

  /// Adds `v` at the ordered pair (c, c2); c and c2 must differ and share a base.
  void add(const Germ& c, const Germ& c2, const Rational& v);
  Rational at(const Germ& c, const Germ& c2) const;

  const std::map<Key, Rational>& stored() const { return entries_; }
  bool is_zero() const { return entries_.empty(); }
  /// Number of ordered pairs with nonzero value.
  std::size_t support_size() const { return 2 * entries_.size(); }

  CocycleValue& operator+=(const CocycleValue& other);
  CocycleValue operator-() const;
  friend CocycleValue operator+(CocycleValue a, const CocycleValue& b) { return a += b; }
  friend CocycleValue operator-(CocycleValue a, const CocycleValue& b) { return a += -b; }
  friend bool operator==(const CocycleValue&, const CocycleValue&) = default;

 private:
  std::map<Key, Rational> entries_;
};

/// α(p, q) evaluated over all branch points.
CocycleValue alpha(const Dendrite& tree, const Point& p, const Point& q);

/// α(p,q) + α(q,r) + α(r,p), summed over all branch points.
CocycleValue omega_coboundary(const Dendrite& tree, const Point& p, const Point& q, const Point& r);

/// ω(p, q, r) on the double bundle over branch points, evaluated only at the
/// median where it is supported.
CocycleValue omega(const Dendrite& tree, const Point& p, const Point& q, const Point& r);

/// ω(p, q, r) restricted to the fiber over an arbitrary point x.
CocycleValue omega_at(const Dendrite& tree, const Point& x, const Point& p, const Point& q, const Point& r);

/// Induced action of an automorphism on germ pairs.
CocycleValue transform(const Dendrite& tree, const CocycleValue& v, const TreeAutomorphism& g);

/// Exponent for lp_norm: a rational p >= 1, or infinity.
struct NormExponent {
  bool infinite = false;
  Rational p{1};

  static NormExponent parse(std::string_view text);
};

struct LpNorm {
  /// Exact norm; set for p = 1 and p = ∞.
  std::optional<Rational> exact;
  /// Σ |v|^p over ordered pairs; exact for integer p or entries in {-1, 0, 1}.
  std::optional<Rational> power_sum;
  double approx = 0.0;
};

/// ℓ^p norm over ordered germ pairs. Throws InputError for p < 1.
LpNorm lp_norm(const CocycleValue& v, const NormExponent& e);

/// ω(q,r,s) − ω(p,r,s) + ω(p,q,s) − ω(p,q,r) vanishes entrywise.
bool cocycle_identity_check(const Dendrite& tree, const Point& p, const Point& q, const Point& r, const Point& s);

/// True iff ω(p, q, r) is nonzero on the full bundle (fiber over the median).
bool nonvanishing_check(const Dendrite& tree, const Point& p, const Point& q, const Point& r);

/// True iff the three points lie on a common arc.
bool on_common_arc(const Dendrite& tree, const Point& p, const Point& q, const Point& r);

/// `entry <branch-point> <germ1> <germ2> <value>` lines, germ-ordered.
std::string format_cocycle(const Dendrite& tree, const CocycleValue& v);
CocycleValue parse_cocycle(const Dendrite& tree, std::string_view text, const std::string& source);

}  // namespace dendro
