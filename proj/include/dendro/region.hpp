#pragma once

#include <algorithm>
#include <memory>
#include <optional>
#include <string>
#include <vector>

namespace dendro {

/// Boolean combinations of basic sets B(c, D, closed): the union of the
/// components of X minus {c} in the directions D, together with c itself when
/// `closed` is set.
///
/// `Space` supplies Point, Germ, germs_at(p), germ_toward(base, target),
/// apply(element, point) and apply(element, germ). Emptiness is decided exactly:
/// membership is constant on each component of X minus the atom centers, and
/// every such component is adjacent to some center in some direction.
template <class Space>
class Region {
 public:
  using Point = typename Space::Point;
  using Germ = typename Space::Germ;

  struct Atom {
    Point center;
    std::vector<Germ> dirs;  // sorted
    bool closed = true;
  };

  enum class Op { kAtom, kUnion, kIntersection, kComplement };

  static Region atom(Point center, std::vector<Germ> dirs, bool closed) {
    std::sort(dirs.begin(), dirs.end());
    dirs.erase(std::unique(dirs.begin(), dirs.end()), dirs.end());
    auto n = std::make_shared<Node>();
    n->op = Op::kAtom;
    n->atom.emplace(Atom{std::move(center), std::move(dirs), closed});
    return Region(std::move(n));
  }

  /// Closure of the component of X minus {s} containing t: U_s(t) in the closed sense.
  static Region side(const Space& space, const Point& s, const Point& t) {
    return atom(s, {*space.germ_toward(s, t)}, true);
  }

  static Region singleton(const Point& p) { return atom(p, {}, true); }

  friend Region operator|(const Region& a, const Region& b) { return combine(Op::kUnion, a, b); }
  friend Region operator&(const Region& a, const Region& b) { return combine(Op::kIntersection, a, b); }
  friend Region operator~(const Region& a) {
    auto n = std::make_shared<Node>();
    n->op = Op::kComplement;
    n->kids = {a};
    return Region(std::move(n));
  }

  Op op() const { return node_->op; }
  const Atom& as_atom() const { return *node_->atom; }
  const std::vector<Region>& children() const { return node_->kids; }

  bool contains(const Space& space, const Point& p) const {
    switch (node_->op) {
      case Op::kAtom: {
        const Atom& a = *node_->atom;
        if (a.center == p) return a.closed;
        return has_dir(a, *space.germ_toward(a.center, p));
      }
      case Op::kUnion: return node_->kids[0].contains(space, p) || node_->kids[1].contains(space, p);
      case Op::kIntersection: return node_->kids[0].contains(space, p) && node_->kids[1].contains(space, p);
      case Op::kComplement: return !node_->kids[0].contains(space, p);
    }
    return false;
  }

  /// Membership of the points near c in direction d.
  bool contains_near(const Space& space, const Point& c, const Germ& d) const {
    switch (node_->op) {
      case Op::kAtom: {
        const Atom& a = *node_->atom;
        if (a.center == c) return has_dir(a, d);
        return has_dir(a, *space.germ_toward(a.center, c));
      }
      case Op::kUnion: return node_->kids[0].contains_near(space, c, d) || node_->kids[1].contains_near(space, c, d);
      case Op::kIntersection:
        return node_->kids[0].contains_near(space, c, d) && node_->kids[1].contains_near(space, c, d);
      case Op::kComplement: return !node_->kids[0].contains_near(space, c, d);
    }
    return false;
  }

  std::vector<Point> centers() const {
    std::vector<Point> out;
    collect(out);
    std::sort(out.begin(), out.end());
    out.erase(std::unique(out.begin(), out.end()), out.end());
    return out;
  }

  template <class Element>
  Region image(const Space& space, const Element& g) const {
    switch (node_->op) {
      case Op::kAtom: {
        const Atom& a = *node_->atom;
        std::vector<Germ> dirs;
        for (const Germ& d : a.dirs) dirs.push_back(space.apply(g, d));
        return atom(space.apply(g, a.center), std::move(dirs), a.closed);
      }
      case Op::kComplement: return ~node_->kids[0].image(space, g);
      default: return combine(node_->op, node_->kids[0].image(space, g), node_->kids[1].image(space, g));
    }
  }

  bool is_empty(const Space& space) const {
    for (const Point& c : centers()) {
      if (contains(space, c)) return false;
      for (const Germ& d : space.germs_at(c))
        if (contains_near(space, c, d)) return false;
    }
    return true;
  }

  bool is_subset_of(const Space& space, const Region& other) const { return (*this & ~other).is_empty(space); }
  bool is_disjoint_from(const Space& space, const Region& other) const { return (*this & other).is_empty(space); }
  bool same_set(const Space& space, const Region& other) const {
    return is_subset_of(space, other) && other.is_subset_of(space, *this);
  }

  /// Prefix notation: `B(<center>;<d1>,<d2>;closed|open)`, `or(..,..)`, `and(..,..)`, `not(..)`.
  std::string format(const Space& space) const {
    switch (node_->op) {
      case Op::kAtom: {
        const Atom& a = *node_->atom;
        std::string s = "B(" + space.format_point(a.center) + ";";
        for (std::size_t i = 0; i < a.dirs.size(); ++i) {
          if (i) s += ",";
          s += space.format_germ(a.center, a.dirs[i]);
        }
        return s + (a.closed ? ";closed)" : ";open)");
      }
      case Op::kUnion: return "or(" + node_->kids[0].format(space) + "," + node_->kids[1].format(space) + ")";
      case Op::kIntersection:
        return "and(" + node_->kids[0].format(space) + "," + node_->kids[1].format(space) + ")";
      case Op::kComplement: return "not(" + node_->kids[0].format(space) + ")";
    }
    return {};
  }

 private:
  struct Node {
    Op op = Op::kAtom;
    std::optional<Atom> atom;
    std::vector<Region> kids;
  };

  explicit Region(std::shared_ptr<const Node> n) : node_(std::move(n)) {}

  static Region combine(Op op, const Region& a, const Region& b) {
    auto n = std::make_shared<Node>();
    n->op = op;
    n->kids = {a, b};
    return Region(std::move(n));
  }

  static bool has_dir(const Atom& a, const Germ& d) { return std::binary_search(a.dirs.begin(), a.dirs.end(), d); }

  void collect(std::vector<Point>& out) const {
    if (node_->op == Op::kAtom) {
      out.push_back(node_->atom->center);
      return;
    }
    for (const Region& k : node_->kids) k.collect(out);
  }

  std::shared_ptr<const Node> node_;
};

}  // namespace dendro
