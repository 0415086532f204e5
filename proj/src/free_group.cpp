#include "dendro/free_group.hpp"

#include <algorithm>
#include <cctype>
#include <cstdlib>

#include "dendro/errors.hpp"

namespace dendro {

std::string format_letter(int letter) {
  if (letter == 0) return "*";
  const auto k = static_cast<std::size_t>(std::abs(letter) - 1);
  if (k >= kLetterNames.size()) throw InputError("letter index out of range");
  const char c = kLetterNames[k];
  return std::string(1, letter > 0 ? c : static_cast<char>(std::toupper(c)));
}

std::string format_word(const Word& w) {
  if (w.empty()) return "1";
  std::string out;
  for (int l : w) out += format_letter(l);
  return out;
}

namespace {

int parse_letter(char c, int rank) {
  const char lower = static_cast<char>(std::tolower(c));
  const auto pos = kLetterNames.find(lower);
  if (pos == std::string_view::npos || static_cast<int>(pos) >= rank)
    throw InputError(std::string("unknown letter '") + c + "'");
  const int k = static_cast<int>(pos) + 1;
  return std::isupper(static_cast<unsigned char>(c)) ? -k : k;
}

}  // namespace

Word parse_word(std::string_view text, int rank) {
  if (text == "1") return {};
  if (text.empty()) throw InputError("empty word");
  Word w;
  for (char c : text) w.push_back(parse_letter(c, rank));
  return reduce(w);
}

Word reduce(const Word& w) {
  Word out;
  for (int l : w) {
    if (!out.empty() && out.back() == -l)
      out.pop_back();
    else
      out.push_back(l);
  }
  return out;
}

Word multiply(const Word& a, const Word& b) {
  Word out = a;
  for (int l : b) {
    if (!out.empty() && out.back() == -l)
      out.pop_back();
    else
      out.push_back(l);
  }
  return out;
}

Word inverse(const Word& w) {
  Word out(w.rbegin(), w.rend());
  for (int& l : out) l = -l;
  return out;
}

bool is_reduced(const Word& w) {
  for (std::size_t i = 1; i < w.size(); ++i)
    if (w[i] == -w[i - 1]) return false;
  return true;
}

int letter_rank(int letter) { return 2 * (std::abs(letter) - 1) + (letter < 0 ? 1 : 0); }

bool shortlex_less(const Word& a, const Word& b) {
  if (a.size() != b.size()) return a.size() < b.size();
  for (std::size_t i = 0; i < a.size(); ++i)
    if (a[i] != b[i]) return letter_rank(a[i]) < letter_rank(b[i]);
  return false;
}

std::pair<Word, Word> cyclic_decomposition(const Word& w) {
  std::size_t k = 0;
  while (2 * k + 1 < w.size() && w[k] == -w[w.size() - 1 - k]) ++k;
  Word u(w.begin(), w.begin() + static_cast<std::ptrdiff_t>(k));
  Word c(w.begin() + static_cast<std::ptrdiff_t>(k), w.end() - static_cast<std::ptrdiff_t>(k));
  return {u, c};
}

Word primitive_root(const Word& w) {
  const std::size_t n = w.size();
  for (std::size_t d = 1; d < n; ++d) {
    if (n % d != 0) continue;
    bool ok = true;
    for (std::size_t i = d; i < n && ok; ++i) ok = w[i] == w[i - d];
    if (ok) return Word(w.begin(), w.begin() + static_cast<std::ptrdiff_t>(d));
  }
  return w;
}

EndWord EndWord::make(const Word& p, const Word& c) {
  Word period = reduce(c);
  if (period.empty()) throw InputError("end period reduces to the identity");
  auto [u, core] = cyclic_decomposition(period);
  Word prefix = multiply(reduce(p), u);
  period = core;
  while (!prefix.empty() && prefix.back() == -period.front()) {
    prefix.pop_back();
    std::rotate(period.begin(), period.begin() + 1, period.end());
  }
  while (!prefix.empty() && prefix.back() == period.back()) {
    prefix.pop_back();
    std::rotate(period.rbegin(), period.rbegin() + 1, period.rend());
  }
  return EndWord{prefix, primitive_root(period)};
}

int EndWord::letter(std::size_t i) const {
  if (i < prefix.size()) return prefix[i];
  return period[(i - prefix.size()) % period.size()];
}

bool end_less(const EndWord& a, const EndWord& b) {
  const std::size_t n = std::max(a.prefix.size(), b.prefix.size()) + a.period.size() * b.period.size();
  for (std::size_t i = 0; i < n; ++i) {
    const int x = a.letter(i), y = b.letter(i);
    if (x != y) return letter_rank(x) < letter_rank(y);
  }
  return false;
}

SymPoint SymPoint::vertex(Word w) {
  SymPoint p;
  p.kind = Kind::kVertex;
  p.word = reduce(w);
  return p;
}

SymPoint SymPoint::edge(const Word& u, int l, const Rational& t) {
  if (l == 0) throw InputError("edge letter must be nonzero");
  if (t <= 0 || t >= 1) throw InputError("edge parameter must lie strictly between 0 and 1");
  const Word a = reduce(u);
  const Word b = multiply(a, Word{l});
  SymPoint p;
  p.kind = Kind::kEdge;
  if (b.size() > a.size()) {
    p.word = a;
    p.letter = l;
    p.t = t;
  } else {
    p.word = b;
    p.letter = -l;
    p.t = 1 - t;
  }
  return p;
}

SymPoint SymPoint::at_end(EndWord e) {
  SymPoint p;
  p.kind = Kind::kEnd;
  p.end = std::move(e);
  return p;
}

bool SymPoint::operator==(const SymPoint& o) const {
  if (kind != o.kind) return false;
  switch (kind) {
    case Kind::kVertex: return word == o.word;
    case Kind::kEdge: return word == o.word && letter == o.letter && t == o.t;
    case Kind::kEnd: return end == o.end;
  }
  return false;
}

bool SymPoint::operator<(const SymPoint& o) const {
  if (kind != o.kind) return kind < o.kind;
  switch (kind) {
    case Kind::kVertex: return shortlex_less(word, o.word);
    case Kind::kEdge:
      if (word != o.word) return shortlex_less(word, o.word);
      if (letter != o.letter) return letter_rank(letter) < letter_rank(o.letter);
      return t < o.t;
    case Kind::kEnd: return end_less(end, o.end);
  }
  return false;
}

SymPoint translate(const Word& g, const SymPoint& p) {
  switch (p.kind) {
    case SymPoint::Kind::kVertex: return SymPoint::vertex(multiply(g, p.word));
    case SymPoint::Kind::kEdge: return SymPoint::edge(multiply(g, p.word), p.letter, p.t);
    case SymPoint::Kind::kEnd: return SymPoint::at_end(EndWord::make(multiply(g, p.end.prefix), p.end.period));
  }
  return p;
}

namespace {

bool prefix_of_word(const Word& w, const Word& v) {
  return w.size() <= v.size() && std::equal(w.begin(), w.end(), v.begin());
}

bool prefix_of_end(const Word& w, const EndWord& e) {
  for (std::size_t i = 0; i < w.size(); ++i)
    if (e.letter(i) != w[i]) return false;
  return true;
}

// Letter following position |w| on the way from vertex w to a point below it.
int next_letter(const Word& w, const SymPoint& p) {
  switch (p.kind) {
    case SymPoint::Kind::kVertex: return p.word[w.size()];
    case SymPoint::Kind::kEdge: return p.word.size() == w.size() ? p.letter : p.word[w.size()];
    case SymPoint::Kind::kEnd: return p.end.letter(w.size());
  }
  return 0;
}

}  // namespace

bool below(const Word& w, const SymPoint& p) {
  switch (p.kind) {
    case SymPoint::Kind::kVertex: return prefix_of_word(w, p.word);
    case SymPoint::Kind::kEdge: return prefix_of_word(w, p.word);
    case SymPoint::Kind::kEnd: return prefix_of_end(w, p.end);
  }
  return false;
}

std::vector<int> sym_germs_at(const SymPoint& p, int rank) {
  switch (p.kind) {
    case SymPoint::Kind::kVertex: {
      std::vector<int> out;
      for (int k = 1; k <= rank; ++k) {
        out.push_back(k);
        out.push_back(-k);
      }
      return out;
    }
    case SymPoint::Kind::kEdge: {
      std::vector<int> out{p.letter, -p.letter};
      std::sort(out.begin(), out.end());
      return out;
    }
    case SymPoint::Kind::kEnd: return {0};
  }
  return {};
}

std::optional<int> sym_germ_toward(const SymPoint& base, const SymPoint& target) {
  if (base == target) return std::nullopt;
  switch (base.kind) {
    case SymPoint::Kind::kVertex:
      if (below(base.word, target)) return next_letter(base.word, target);
      return -base.word.back();
    case SymPoint::Kind::kEdge: {
      if (target.kind == SymPoint::Kind::kEdge && target.word == base.word && target.letter == base.letter)
        return target.t > base.t ? base.letter : -base.letter;
      return below(multiply(base.word, Word{base.letter}), target) ? base.letter : -base.letter;
    }
    case SymPoint::Kind::kEnd: return 0;
  }
  return std::nullopt;
}

std::string format_sym_point(const SymPoint& p) {
  switch (p.kind) {
    case SymPoint::Kind::kVertex: return format_word(p.word);
    case SymPoint::Kind::kEdge:
      return "e:" + format_word(p.word) + ":" + format_letter(p.letter) + ":" + to_string(p.t);
    case SymPoint::Kind::kEnd:
      return (p.end.prefix.empty() ? std::string() : format_word(p.end.prefix)) + "(" +
             format_word(p.end.period) + ")";
  }
  return {};
}

SymPoint parse_sym_point(std::string_view text, int rank) {
  if (text.rfind("e:", 0) == 0) {
    const auto rest = text.substr(2);
    const auto c1 = rest.find(':');
    if (c1 == std::string_view::npos) throw InputError("malformed edge point");
    const auto c2 = rest.find(':', c1 + 1);
    if (c2 == std::string_view::npos) throw InputError("malformed edge point");
    const Word u = parse_word(rest.substr(0, c1), rank);
    const auto letter_text = rest.substr(c1 + 1, c2 - c1 - 1);
    if (letter_text.size() != 1) throw InputError("edge letter must be a single letter");
    return SymPoint::edge(u, parse_letter(letter_text[0], rank), parse_rational(rest.substr(c2 + 1)));
  }
  const auto open = text.find('(');
  if (open != std::string_view::npos) {
    if (text.back() != ')') throw InputError("malformed end");
    const auto prefix_text = text.substr(0, open);
    const Word prefix = prefix_text.empty() ? Word{} : parse_word(prefix_text, rank);
    return SymPoint::at_end(EndWord::make(prefix, parse_word(text.substr(open + 1, text.size() - open - 2), rank)));
  }
  return SymPoint::vertex(parse_word(text, rank));
}

std::pair<EndWord, EndWord> fixed_ends(const Word& w) {
  const Word r = reduce(w);
  if (r.empty()) throw InputError("the identity fixes every point");
  auto [u, c] = cyclic_decomposition(r);
  return {EndWord::make(u, c), EndWord::make(u, inverse(c))};
}

}  // namespace dendro
