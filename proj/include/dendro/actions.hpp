#pragma once

#include <array>
#include <map>
#include <memory>
#include <optional>
#include <string>
#include <variant>
#include <vector>

#include "dendro/dynamics.hpp"
#include "dendro/free_group.hpp"
#include "dendro/region.hpp"

namespace dendro {

/// Word in the generators of an action: k > 0 is generator k (1-based), -k its inverse.
using GenWord = std::vector<int>;

/// Shared generator bookkeeping. Generator names are single lower-case letters;
/// inverses print in upper case.
class GeneratorNames {
 public:
  GeneratorNames() = default;
  explicit GeneratorNames(std::vector<std::string> names);

  std::size_t count() const { return names_.size(); }
  const std::string& name(std::size_t i) const { return names_[i]; }
  std::string format(const GenWord& w) const;
  GenWord parse(std::string_view text) const;

 private:
  std::vector<std::string> names_;
};

/// PL homeomorphisms of a finite tree.
class PLSpace {
 public:
  using Point = dendro::Point;
  using Germ = dendro::Germ;
  using Element = PLHomeo;
  using Hull = SubDendrite;

  PLSpace(std::shared_ptr<const Dendrite> tree, std::vector<std::string> names, std::vector<PLHomeo> gens);

  const Dendrite& tree() const { return *tree_; }
  const GeneratorNames& names() const { return names_; }
  const PLHomeo& generator_map(std::size_t i) const { return gens_[i]; }

  std::vector<Germ> germs_at(const Point& p) const { return dendro::germs_at(*tree_, p); }
  std::optional<Germ> germ_toward(const Point& b, const Point& t) const { return dendro::germ_toward(*tree_, b, t); }
  Point apply(const Element& g, const Point& p) const { return g.apply(p); }
  Germ apply(const Element& g, const Germ& d) const;
  std::string format_point(const Point& p) const;
  std::string format_germ(const Point& base, const Germ& d) const;

  Element identity() const { return PLHomeo::identity(*tree_); }
  Element generator(int signed_index) const;
  Element compose(const Element& a, const Element& b) const { return a.after(b); }
  Element inverse(const Element& g) const { return g.inverse(); }
  bool is_identity(const Element& g) const { return g.is_identity(); }
  Element evaluate(const GenWord& w) const;

  Point base_point() const { return Point::at_vertex(VertexId{0}); }
  std::vector<Point> end_sample() const;
  std::optional<Point> common_fixed_point() const;
  std::vector<Point> orbit_seeds() const;
  Hull hull(const std::vector<Point>& pts) const;
  bool hull_subset(const Hull& a, const Hull& b) const { return a.is_subset_of(b); }
  std::string format_hull(const Hull& h) const;
  /// {r, p, q}: the first branch vertex r strictly inside [x, y] and the
  /// midpoints p, q of the path edges entering and leaving r.
  std::optional<std::array<Point, 3>> branch_anchor(const Point& x, const Point& y) const;

  /// The sub-dendrite as an intersection of closed basic sets.
  Region<PLSpace> region_of(const SubDendrite& s) const;

 private:
  std::shared_ptr<const Dendrite> tree_;
  GeneratorNames names_;
  std::vector<PLHomeo> gens_;
};

/// Left multiplication of generator words on the end compactification of the
/// Cayley tree of the free group of rank m.
class SymbolicSpace {
 public:
  using Point = SymPoint;
  using Germ = int;
  using Element = Word;
  /// Vertex set of a finite subtree, shortlex sorted.
  using Hull = std::vector<Word>;

  SymbolicSpace(int rank, std::vector<std::string> names, std::vector<Word> gens);

  int rank() const { return rank_; }
  const GeneratorNames& names() const { return names_; }
  const Word& generator_word(std::size_t i) const { return gens_[i]; }

  std::vector<Germ> germs_at(const Point& p) const { return sym_germs_at(p, rank_); }
  std::optional<Germ> germ_toward(const Point& b, const Point& t) const { return sym_germ_toward(b, t); }
  Point apply(const Element& g, const Point& p) const { return translate(g, p); }
  Germ apply(const Element&, const Germ& d) const { return d; }
  std::string format_point(const Point& p) const { return format_sym_point(p); }
  std::string format_germ(const Point&, const Germ& d) const { return format_letter(d); }

  Element identity() const { return {}; }
  Element generator(int signed_index) const;
  Element compose(const Element& a, const Element& b) const { return multiply(a, b); }
  Element inverse(const Element& g) const { return dendro::inverse(g); }
  bool is_identity(const Element& g) const { return g.empty(); }
  Element evaluate(const GenWord& w) const;
  /// A generator word evaluating to w; available when the generators are the
  /// basis letters up to inversion and order.
  std::optional<GenWord> express(const Word& w) const;

  Point base_point() const { return SymPoint::vertex({}); }
  std::vector<Point> end_sample() const;
  std::optional<Point> common_fixed_point() const;
  std::vector<Point> orbit_seeds() const;
  Hull hull(const std::vector<Point>& pts) const;
  bool hull_subset(const Hull& a, const Hull& b) const;
  std::string format_hull(const Hull& h) const;
  /// {r, p, q}: r the vertex of the line between two ends nearest the identity,
  /// p and q the midpoints of the line edges at r toward x and toward y.
  std::optional<std::array<Point, 3>> branch_anchor(const Point& x, const Point& y) const;

  /// Closed cylinder of a nonempty prefix: the vertex w and everything below it.
  Region<SymbolicSpace> cylinder(const Word& w) const;

 private:
  int rank_;
  GeneratorNames names_;
  std::vector<Word> gens_;
};

enum class ElementarityKind { kFixedPoint, kInvariantPair, kFiniteOrbit, kUnknown };
std::string to_string(ElementarityKind k);

template <class Space>
struct ElementarityVerdict {
  ElementarityKind kind = ElementarityKind::kUnknown;
  std::vector<typename Space::Point> points;
};

template <class Space>
ElementarityVerdict<Space> elementarity_certificate(const Space& space, std::size_t depth);

/// Shortest-then-lexicographic g with gY ∩ Y = ∅ among words of length <= depth.
template <class Space>
std::optional<GenWord> move_off(const Space& space, const Region<Space>& y, std::size_t depth);

template <class Space>
struct PingPongCertificate {
  GenWord a;
  GenWord b;
  Region<Space> a_minus;
  Region<Space> a_plus;
  Region<Space> b_minus;
  Region<Space> b_plus;
};

template <class Space>
struct FreePairResult {
  std::optional<PingPongCertificate<Space>> certificate;
  std::string failure;
  /// Recipe choices, in order x, y, r, p, q (those reached before any failure).
  std::vector<typename Space::Point> anchors;
  /// Searched words g, h, f (those found before any failure).
  std::vector<GenWord> searched;
};

template <class Space>
FreePairResult<Space> find_free_pair(const Space& space, std::size_t depth);

template <class Space>
bool verify_pingpong(const Space& space, const PingPongCertificate<Space>& cert);

/// Nontrivial reduced words in a^±, b^± of length <= max_len, and how many of
/// them fix the base point (zero for a sound certificate).
struct WitnessReport {
  std::size_t checked = 0;
  std::size_t fixing = 0;
  std::optional<std::string> first_fixing;
};

template <class Space>
WitnessReport free_pair_witness(const Space& space, const PingPongCertificate<Space>& cert, std::size_t max_len);

template <class Space>
std::string format_certificate(const Space& space, const PingPongCertificate<Space>& cert);

template <class Space>
struct MinimalEstimate {
  std::vector<typename Space::Hull> hulls;
  bool agree = true;
};

/// Hull of the depth-L orbit of each seed; seeds agree when each estimate lies
/// in the hull of every other seed's depth-2L orbit.
template <class Space>
MinimalEstimate<Space> minimal_subdendrite_estimate(const Space& space,
                                                    const std::vector<typename Space::Point>& seeds,
                                                    std::size_t depth);

/// Atoms plus a multiple of the cylinder-uniform measure on ends, where the
/// cylinder of a word of length k >= 1 has mass 1 / (2m (2m-1)^(k-1)).
struct SymbolicMeasure {
  std::map<SymPoint, Rational> atoms;
  Rational boundary;

  static SymbolicMeasure cylinder_uniform() { return {{}, Rational(1)}; }
  static SymbolicMeasure dirac(const SymPoint& p) { return {{{p, Rational(1)}}, Rational(0)}; }
  Rational total() const;
};

/// `atom <point> <mass>` and `boundary <mass>` lines.
SymbolicMeasure parse_symbolic_measure(std::string_view text, int rank, const std::string& source);

Rational measure_of(const SymbolicSpace& space, const SymbolicMeasure& m, const Region<SymbolicSpace>& r);

struct ProximalityStep {
  std::size_t n = 0;
  GenWord word;  // h_n g_n
  Rational mass;
};

struct ProximalityResult {
  std::vector<ProximalityStep> steps;
  std::string failure;  // empty when all N steps succeeded
};

/// Step n pushes m by w_n = h_n g_n and reports m(w_n^{-1} U_{x_n}(x)), with x_n
/// the midpoint of the n-th edge toward the target. Assumes the action is
/// dendro-minimal; nothing here certifies that.
ProximalityResult proximality_push(const SymbolicSpace& space, const SymbolicMeasure& m, const EndWord& target,
                                   std::size_t steps, std::size_t depth);

/// `backend pl|symbolic`, `rank <m>`, `tree <file>`, `gen <name> <word-or-mapfile>`.
/// Relative file names resolve against `base_dir`.
struct ActionFile {
  std::variant<PLSpace, SymbolicSpace> space;
};

ActionFile parse_action_file(std::string_view text, const std::string& source, const std::string& base_dir);

}  // namespace dendro
