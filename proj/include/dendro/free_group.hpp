#pragma once

#include <compare>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "dendro/rational.hpp"

namespace dendro {

/// A word in a free basis: letter k > 0 is the k-th basis element, -k its inverse.
using Word = std::vector<int>;

/// Letters print as x y z w u v s t (inverses in upper case); the empty word is `1`.
inline constexpr std::string_view kLetterNames = "xyzwuvst";

std::string format_word(const Word& w);
/// Parses a word over the first `rank` letter names; `1` is the empty word.
/// The result is freely reduced.
Word parse_word(std::string_view text, int rank);

Word reduce(const Word& w);
Word multiply(const Word& a, const Word& b);
Word inverse(const Word& w);
bool is_reduced(const Word& w);

/// Search order on letters: x < X < y < Y < ...
int letter_rank(int letter);
/// Length first, then letterwise by letter_rank.
bool shortlex_less(const Word& a, const Word& b);

/// w = u c u^{-1} with c cyclically reduced; returns {u, c}. Requires w reduced.
std::pair<Word, Word> cyclic_decomposition(const Word& w);
/// Shortest r with w = r^k.
Word primitive_root(const Word& w);

/// An eventually periodic end `prefix · period^∞`, in canonical form: the
/// infinite word is reduced, the prefix is as short as possible and the period
/// primitive.
struct EndWord {
  Word prefix;
  Word period;

  /// Builds the canonical end of p · c^∞ for a nonempty c (any words).
  static EndWord make(const Word& p, const Word& c);
  int letter(std::size_t i) const;
  friend auto operator<=>(const EndWord&, const EndWord&) = default;
};

/// Letterwise comparison of the infinite words by letter_rank.
bool end_less(const EndWord& a, const EndWord& b);

/// A point of the end compactification of the Cayley tree of the free group:
/// a vertex, an interior edge point, or an eventually periodic end.
///
/// Edge points are stored from the shorter endpoint: (u, l, t) is the point at
/// parameter t on the edge from u to u·l, where |u·l| = |u| + 1.
struct SymPoint {
  enum class Kind { kVertex, kEdge, kEnd };
  Kind kind = Kind::kVertex;
  Word word;          // vertex, or shorter edge endpoint
  int letter = 0;     // edge letter
  Rational t;         // edge parameter from `word`
  EndWord end;        // ends only

  static SymPoint vertex(Word w);
  /// The point at parameter t from u on the edge {u, u·l}; canonicalized.
  static SymPoint edge(const Word& u, int l, const Rational& t);
  static SymPoint at_end(EndWord e);

  bool operator==(const SymPoint& o) const;
  bool operator<(const SymPoint& o) const;
};

/// Left multiplication by a reduced word.
SymPoint translate(const Word& g, const SymPoint& p);

/// True when p lies in the closed cylinder below vertex w (w itself included).
bool below(const Word& w, const SymPoint& p);

/// Directions at p as letters (the direction of multiplying by the letter);
/// an end has the single direction 0.
std::vector<int> sym_germs_at(const SymPoint& p, int rank);
std::optional<int> sym_germ_toward(const SymPoint& base, const SymPoint& target);

/// `1`, `xY` (vertices); `e:<word>:<letter>:<t>` (edge points); `<prefix>(<period>)` (ends).
std::string format_sym_point(const SymPoint& p);
SymPoint parse_sym_point(std::string_view text, int rank);

std::string format_letter(int letter);

/// The two ends fixed by a nontrivial reduced word: u c^{±∞} for w = u c u^{-1}.
std::pair<EndWord, EndWord> fixed_ends(const Word& w);

}  // namespace dendro
