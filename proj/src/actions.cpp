#include "dendro/actions.hpp"

#include <algorithm>
#include <cctype>
#include <filesystem>
#include <set>

#include "dendro/errors.hpp"
#include "dendro/text_format.hpp"
#include "dendro/tree_ops.hpp"

namespace dendro {

// ---------------------------------------------------------------------------
// Generator names

GeneratorNames::GeneratorNames(std::vector<std::string> names) : names_(std::move(names)) {
  std::set<std::string> seen;
  for (const auto& n : names_) {
    if (n.size() != 1 || !std::islower(static_cast<unsigned char>(n[0])))
      throw InputError("generator name '" + n + "' must be a single lower-case letter");
    if (!seen.insert(n).second) throw InputError("duplicate generator name '" + n + "'");
  }
}

std::string GeneratorNames::format(const GenWord& w) const {
  if (w.empty()) return "1";
  std::string out;
  for (int l : w) {
    const char c = names_.at(static_cast<std::size_t>(std::abs(l) - 1))[0];
    out += l > 0 ? c : static_cast<char>(std::toupper(c));
  }
  return out;
}

GenWord GeneratorNames::parse(std::string_view text) const {
  if (text == "1") return {};
  GenWord w;
  for (char c : text) {
    const std::string lower(1, static_cast<char>(std::tolower(c)));
    const auto it = std::find(names_.begin(), names_.end(), lower);
    if (it == names_.end()) throw InputError(std::string("unknown generator '") + c + "'");
    const int k = static_cast<int>(it - names_.begin()) + 1;
    w.push_back(std::isupper(static_cast<unsigned char>(c)) ? -k : k);
  }
  return reduce(w);
}

namespace {

// Visits reduced words over `gens` (generator k at index k - 1) by length, then
// lexicographically in the order g1 < G1 < g2 < G2 ..., with their values.
// Stops early when the visitor returns true.
template <class Space, class Visit>
bool for_each_word(const Space& space, const std::vector<typename Space::Element>& gens, std::size_t depth,
                   Visit visit) {
  using Element = typename Space::Element;
  std::vector<Element> letters;  // index 2(k-1) for g_k, 2(k-1)+1 for its inverse
  for (const auto& g : gens) {
    letters.push_back(g);
    letters.push_back(space.inverse(g));
  }
  std::vector<std::pair<GenWord, Element>> level{{GenWord{}, space.identity()}};
  if (visit(level[0].first, level[0].second)) return true;
  for (std::size_t len = 1; len <= depth; ++len) {
    std::vector<std::pair<GenWord, Element>> next;
    for (const auto& [w, e] : level) {
      for (std::size_t i = 0; i < letters.size(); ++i) {
        const int k = static_cast<int>(i / 2) + 1;
        const int letter = i % 2 == 0 ? k : -k;
        if (!w.empty() && w.back() == -letter) continue;
        GenWord w2 = w;
        w2.push_back(letter);
        Element e2 = space.compose(e, letters[i]);
        if (visit(w2, e2)) return true;
        next.emplace_back(std::move(w2), std::move(e2));
      }
    }
    level = std::move(next);
  }
  return false;
}

template <class Space>
std::vector<typename Space::Element> generator_elements(const Space& space) {
  std::vector<typename Space::Element> out;
  for (std::size_t i = 0; i < space.names().count(); ++i) out.push_back(space.generator(static_cast<int>(i) + 1));
  return out;
}

template <class Space>
std::set<typename Space::Point> orbit_ball(const Space& space, const typename Space::Point& seed,
                                           std::size_t depth) {
  std::vector<typename Space::Element> letters;
  for (const auto& g : generator_elements(space)) {
    letters.push_back(g);
    letters.push_back(space.inverse(g));
  }
  std::set<typename Space::Point> seen{seed};
  std::vector<typename Space::Point> frontier{seed};
  for (std::size_t step = 0; step < depth && !frontier.empty(); ++step) {
    std::vector<typename Space::Point> next;
    for (const auto& p : frontier)
      for (const auto& g : letters) {
        auto q = space.apply(g, p);
        if (seen.insert(q).second) next.push_back(std::move(q));
      }
    frontier = std::move(next);
  }
  return seen;
}

}  // namespace

// ---------------------------------------------------------------------------
// PL backend

PLSpace::PLSpace(std::shared_ptr<const Dendrite> tree, std::vector<std::string> names, std::vector<PLHomeo> gens)
    : tree_(std::move(tree)), names_(std::move(names)), gens_(std::move(gens)) {
  if (names_.count() != gens_.size()) throw InputError("generator names and maps differ in number");
  for (const auto& g : gens_)
    if (!(g.tree() == *tree_)) throw InputError("generator acts on a different tree");
}

PLSpace::Germ PLSpace::apply(const Element& g, const Germ& d) const {
  Germ out = g.combinatorics().apply(*tree_, d);
  out.base = g.apply(d.base);
  return out;
}

std::string PLSpace::format_point(const Point& p) const { return dendro::format_point(*tree_, p); }
std::string PLSpace::format_germ(const Point&, const Germ& d) const { return dendro::format_germ(*tree_, d); }

PLSpace::Element PLSpace::generator(int signed_index) const {
  const auto& g = gens_.at(static_cast<std::size_t>(std::abs(signed_index) - 1));
  return signed_index > 0 ? g : g.inverse();
}

PLSpace::Element PLSpace::evaluate(const GenWord& w) const {
  Element out = identity();
  for (int l : w) out = out.after(generator(l));
  return out;
}

std::vector<Point> PLSpace::end_sample() const { return ends(*tree_); }

std::optional<Point> PLSpace::common_fixed_point() const {
  std::vector<SubDendrite> common{SubDendrite::whole(*tree_)};
  for (const auto& g : gens_) {
    std::vector<SubDendrite> next;
    for (const auto& c : common)
      for (const auto& f : fixed_set(g).components)
        if (auto i = intersect(c, f)) next.push_back(std::move(*i));
    common = std::move(next);
  }
  std::optional<Point> best;
  for (const auto& c : common) {
    const Point p = c.representative(*tree_);
    if (!best || p < *best) best = p;
  }
  return best;
}

std::vector<Point> PLSpace::orbit_seeds() const {
  std::vector<Point> out;
  for (std::uint32_t v = 0; v < tree_->vertex_count(); ++v) out.push_back(Point::at_vertex(VertexId{v}));
  return out;
}

SubDendrite PLSpace::hull(const std::vector<Point>& pts) const { return dendro::hull(*tree_, pts); }

std::string PLSpace::format_hull(const Hull& h) const { return format_subdendrite(*tree_, h); }

std::optional<std::array<Point, 3>> PLSpace::branch_anchor(const Point& x, const Point& y) const {
  if (!x.is_vertex() || !y.is_vertex() || x == y) return std::nullopt;
  const auto path = tree_->vertex_path(x.vertex(), y.vertex());
  for (std::size_t i = 1; i + 1 < path.size(); ++i) {
    if (tree_->degree(path[i]) < 3) continue;
    const auto mid = [&](VertexId a, VertexId b) {
      const EdgeId e = tree_->edge_path(a, b).front();
      return Point::on_edge(*tree_, e, Rational(1, 2));
    };
    return std::array<Point, 3>{Point::at_vertex(path[i]), mid(path[i - 1], path[i]), mid(path[i], path[i + 1])};
  }
  return std::nullopt;
}

Region<PLSpace> PLSpace::region_of(const SubDendrite& s) const {
  const Point v0 = Point::at_vertex(VertexId{0});
  if (s.is_empty()) return Region<PLSpace>::atom(v0, {}, false);
  std::vector<Point> boundary;
  for (VertexId v : s.vertices())
    if (s.order_within(*tree_, Point::at_vertex(v)) < tree_->degree(v)) boundary.push_back(Point::at_vertex(v));
  for (const auto& [e, iv] : s.partial_intervals()) {
    if (iv.lo > 0) boundary.push_back(Point::on_edge(*tree_, e, iv.lo));
    if (iv.hi < 1) boundary.push_back(Point::on_edge(*tree_, e, iv.hi));
  }
  std::sort(boundary.begin(), boundary.end());
  boundary.erase(std::unique(boundary.begin(), boundary.end()), boundary.end());
  if (boundary.empty()) return Region<PLSpace>::atom(v0, germs_at(v0), true);
  std::optional<Region<PLSpace>> out;
  for (const Point& b : boundary) {
    std::vector<Germ> inside;
    for (const Germ& d : germs_at(b)) {
      const auto& iv = s.part(d.edge);
      if (!iv) continue;
      bool continues;
      if (b.is_vertex())
        continues = d.toward_head ? (iv->lo == 0 && iv->hi > 0) : (iv->hi == 1 && iv->lo < 1);
      else
        continues = d.toward_head ? iv->hi > b.param() : iv->lo < b.param();
      if (continues) inside.push_back(d);
    }
    auto a = Region<PLSpace>::atom(b, inside, true);
    out = out ? (*out & a) : a;
  }
  return *out;
}

// ---------------------------------------------------------------------------
// Symbolic backend

SymbolicSpace::SymbolicSpace(int rank, std::vector<std::string> names, std::vector<Word> gens)
    : rank_(rank), names_(std::move(names)), gens_(std::move(gens)) {
  if (rank_ < 2 || rank_ > static_cast<int>(kLetterNames.size()))
    throw InputError("rank must lie between 2 and " + std::to_string(kLetterNames.size()));
  if (names_.count() != gens_.size()) throw InputError("generator names and words differ in number");
  for (auto& g : gens_) {
    for (int l : g)
      if (l == 0 || std::abs(l) > rank_) throw InputError("generator word uses a letter beyond the rank");
    g = reduce(g);
  }
}

SymbolicSpace::Element SymbolicSpace::generator(int signed_index) const {
  const auto& g = gens_.at(static_cast<std::size_t>(std::abs(signed_index) - 1));
  return signed_index > 0 ? g : dendro::inverse(g);
}

SymbolicSpace::Element SymbolicSpace::evaluate(const GenWord& w) const {
  Word out;
  for (int l : w) out = multiply(out, generator(l));
  return out;
}

std::optional<GenWord> SymbolicSpace::express(const Word& w) const {
  std::map<int, int> to_gen;
  for (std::size_t i = 0; i < gens_.size(); ++i) {
    if (gens_[i].size() != 1) continue;
    const int k = static_cast<int>(i) + 1;
    to_gen.emplace(gens_[i][0], k);
    to_gen.emplace(-gens_[i][0], -k);
  }
  GenWord out;
  for (int l : w) {
    const auto it = to_gen.find(l);
    if (it == to_gen.end()) return std::nullopt;
    out.push_back(it->second);
  }
  return out;
}

std::vector<SymPoint> SymbolicSpace::end_sample() const {
  std::vector<SymPoint> out;
  for (const auto& g : gens_) {
    if (g.empty()) continue;
    auto [plus, minus] = fixed_ends(g);
    out.push_back(SymPoint::at_end(plus));
    out.push_back(SymPoint::at_end(minus));
  }
  std::sort(out.begin(), out.end());
  out.erase(std::unique(out.begin(), out.end()), out.end());
  return out;
}

std::optional<SymPoint> SymbolicSpace::common_fixed_point() const {
  const Word* first = nullptr;
  for (const auto& g : gens_)
    if (!g.empty()) {
      first = &g;
      break;
    }
  if (!first) return SymPoint::vertex({});
  auto [plus, minus] = fixed_ends(*first);
  std::vector<SymPoint> candidates{SymPoint::at_end(plus), SymPoint::at_end(minus)};
  std::sort(candidates.begin(), candidates.end());
  for (const auto& c : candidates) {
    bool fixed = true;
    for (const auto& g : gens_) fixed = fixed && translate(g, c) == c;
    if (fixed) return c;
  }
  return std::nullopt;
}

std::vector<SymPoint> SymbolicSpace::orbit_seeds() const {
  std::vector<SymPoint> out{SymPoint::vertex({})};
  for (int k = 1; k <= rank_; ++k) {
    out.push_back(SymPoint::vertex({k}));
    out.push_back(SymPoint::vertex({-k}));
  }
  return out;
}

SymbolicSpace::Hull SymbolicSpace::hull(const std::vector<SymPoint>& pts) const {
  std::set<Word, decltype(&shortlex_less)> out(&shortlex_less);
  if (pts.empty()) return {};
  for (const auto& p : pts)
    if (p.kind != SymPoint::Kind::kVertex) throw InputError("symbolic hulls take vertices only");
  const Word& u = pts.front().word;
  for (const auto& p : pts) {
    const Word& v = p.word;
    std::size_t k = 0;
    while (k < u.size() && k < v.size() && u[k] == v[k]) ++k;
    for (std::size_t i = k; i <= u.size(); ++i) out.insert(Word(u.begin(), u.begin() + static_cast<std::ptrdiff_t>(i)));
    for (std::size_t i = k; i <= v.size(); ++i) out.insert(Word(v.begin(), v.begin() + static_cast<std::ptrdiff_t>(i)));
  }
  return Hull(out.begin(), out.end());
}

bool SymbolicSpace::hull_subset(const Hull& a, const Hull& b) const {
  return std::includes(b.begin(), b.end(), a.begin(), a.end(), &shortlex_less);
}

std::string SymbolicSpace::format_hull(const Hull& h) const {
  std::string out = "{";
  for (std::size_t i = 0; i < h.size(); ++i) {
    if (i) out += ",";
    out += format_word(h[i]);
  }
  return out + "}";
}

std::optional<std::array<SymPoint, 3>> SymbolicSpace::branch_anchor(const SymPoint& x, const SymPoint& y) const {
  if (x.kind != SymPoint::Kind::kEnd || y.kind != SymPoint::Kind::kEnd || x == y) return std::nullopt;
  Word r;
  while (x.end.letter(r.size()) == y.end.letter(r.size())) r.push_back(x.end.letter(r.size()));
  const Rational half(1, 2);
  return std::array<SymPoint, 3>{SymPoint::vertex(r), SymPoint::edge(r, x.end.letter(r.size()), half),
                                 SymPoint::edge(r, y.end.letter(r.size()), half)};
}

Region<SymbolicSpace> SymbolicSpace::cylinder(const Word& w) const {
  if (w.empty()) throw InputError("cylinder prefix must be nonempty");
  std::vector<int> dirs;
  for (int d : sym_germs_at(SymPoint::vertex(w), rank_))
    if (d != -w.back()) dirs.push_back(d);
  return Region<SymbolicSpace>::atom(SymPoint::vertex(w), dirs, true);
}

// ---------------------------------------------------------------------------
// Generic operations

std::string to_string(ElementarityKind k) {
  switch (k) {
    case ElementarityKind::kFixedPoint: return "fixed-point";
    case ElementarityKind::kInvariantPair: return "invariant-pair";
    case ElementarityKind::kFiniteOrbit: return "finite-orbit";
    case ElementarityKind::kUnknown: return "unknown";
  }
  return "unknown";
}

template <class Space>
ElementarityVerdict<Space> elementarity_certificate(const Space& space, std::size_t depth) {
  ElementarityVerdict<Space> out;
  if (auto p = space.common_fixed_point()) {
    out.kind = ElementarityKind::kFixedPoint;
    out.points = {*p};
    return out;
  }
  for (const auto& seed : space.orbit_seeds()) {
    // The orbit is finite once a further step adds nothing.
    const auto ball = orbit_ball(space, seed, depth);
    const auto bigger = orbit_ball(space, seed, depth + 1);
    if (ball.size() != bigger.size()) continue;
    out.kind = ball.size() == 2 ? ElementarityKind::kInvariantPair : ElementarityKind::kFiniteOrbit;
    out.points.assign(ball.begin(), ball.end());
    return out;
  }
  return out;
}

template <class Space>
std::optional<GenWord> move_off(const Space& space, const Region<Space>& y, std::size_t depth) {
  std::optional<GenWord> found;
  for_each_word(space, generator_elements(space), depth, [&](const GenWord& w, const typename Space::Element& g) {
    if (!y.image(space, g).is_disjoint_from(space, y)) return false;
    found = w;
    return true;
  });
  return found;
}

namespace {

template <class Space>
std::optional<GenWord> search_into(const Space& space, const Region<Space>& from, const Region<Space>& into,
                                   std::size_t depth) {
  std::optional<GenWord> found;
  for_each_word(space, generator_elements(space), depth, [&](const GenWord& w, const typename Space::Element& g) {
    if (!from.image(space, g).is_subset_of(space, into)) return false;
    found = w;
    return true;
  });
  return found;
}

}  // namespace

template <class Space>
FreePairResult<Space> find_free_pair(const Space& space, std::size_t depth) {
  using R = Region<Space>;
  FreePairResult<Space> out;
  const auto sample = space.end_sample();
  if (sample.size() < 2) {
    out.failure = "fewer than two ends in the end sample";
    return out;
  }
  const auto& x = sample[0];
  const auto& y = sample[1];
  out.anchors = {x, y};
  const auto anchor = space.branch_anchor(x, y);
  if (!anchor) {
    out.failure = "no branch point between the two sample ends";
    return out;
  }
  const auto& [r, p, q] = *anchor;
  out.anchors.insert(out.anchors.end(), {r, p, q});

  const R up_x = R::side(space, p, x), up_y = R::side(space, p, y);
  const R uq_x = R::side(space, q, x), uq_y = R::side(space, q, y);
  const auto g = search_into(space, up_y, up_x, depth);
  if (!g) {
    out.failure = "no g with g(U_p(y)) inside U_p(x)";
    return out;
  }
  out.searched.push_back(*g);
  const auto h = search_into(space, uq_x, uq_y, depth);
  if (!h) {
    out.failure = "no h with h(U_q(x)) inside U_q(y)";
    return out;
  }
  out.searched.push_back(*h);

  const GenWord a = multiply(*h, *g);
  const auto a_el = space.evaluate(a);
  const R a_minus = up_x;
  const R a_plus = (~a_minus).image(space, a_el);
  const R y_set = R::atom(r, {*space.germ_toward(r, p), *space.germ_toward(r, q)}, true);
  const auto f = move_off(space, y_set, depth);
  if (!f) {
    out.failure = "no f moving U_p(x) + [p,q] + U_q(y) off itself";
    return out;
  }
  out.searched.push_back(*f);
  const auto f_el = space.evaluate(*f);
  PingPongCertificate<Space> cert{a,
                                  multiply(multiply(*f, a), dendro::inverse(*f)),
                                  a_minus,
                                  a_plus,
                                  a_minus.image(space, f_el),
                                  a_plus.image(space, f_el)};
  if (!verify_pingpong(space, cert)) {
    out.failure = "constructed certificate failed verification";
    return out;
  }
  out.certificate = std::move(cert);
  return out;
}

template <class Space>
bool verify_pingpong(const Space& space, const PingPongCertificate<Space>& cert) {
  const std::array<const Region<Space>*, 4> sets{&cert.a_minus, &cert.a_plus, &cert.b_minus, &cert.b_plus};
  for (const auto* s : sets)
    if (s->is_empty(space)) return false;
  for (std::size_t i = 0; i < sets.size(); ++i)
    for (std::size_t j = i + 1; j < sets.size(); ++j)
      if (!sets[i]->is_disjoint_from(space, *sets[j])) return false;
  const auto check = [&](const GenWord& w, const Region<Space>& minus, const Region<Space>& plus) {
    const auto e = space.evaluate(w);
    const auto e_inv = space.inverse(e);
    return (~minus).image(space, e).is_subset_of(space, plus) && (~plus).image(space, e_inv).is_subset_of(space, minus);
  };
  return check(cert.a, cert.a_minus, cert.a_plus) && check(cert.b, cert.b_minus, cert.b_plus);
}

template <class Space>
WitnessReport free_pair_witness(const Space& space, const PingPongCertificate<Space>& cert, std::size_t max_len) {
  WitnessReport out;
  const auto base = space.base_point();
  const std::vector<typename Space::Element> pair{space.evaluate(cert.a), space.evaluate(cert.b)};
  const GeneratorNames ab({"a", "b"});
  for_each_word(space, pair, max_len, [&](const GenWord& w, const typename Space::Element& e) {
    if (w.empty()) return false;
    ++out.checked;
    if (space.apply(e, base) == base) {
      ++out.fixing;
      if (!out.first_fixing) out.first_fixing = ab.format(w);
    }
    return false;
  });
  return out;
}

template <class Space>
std::string format_certificate(const Space& space, const PingPongCertificate<Space>& cert) {
  std::string out;
  out += "a " + space.names().format(cert.a) + "\n";
  out += "b " + space.names().format(cert.b) + "\n";
  out += "A- " + cert.a_minus.format(space) + "\n";
  out += "A+ " + cert.a_plus.format(space) + "\n";
  out += "B- " + cert.b_minus.format(space) + "\n";
  out += "B+ " + cert.b_plus.format(space) + "\n";
  return out;
}

template <class Space>
MinimalEstimate<Space> minimal_subdendrite_estimate(const Space& space,
                                                    const std::vector<typename Space::Point>& seeds,
                                                    std::size_t depth) {
  MinimalEstimate<Space> out;
  std::vector<typename Space::Hull> wide;
  for (const auto& s : seeds) {
    const auto ball = orbit_ball(space, s, depth);
    out.hulls.push_back(space.hull({ball.begin(), ball.end()}));
    const auto big = orbit_ball(space, s, 2 * depth);
    wide.push_back(space.hull({big.begin(), big.end()}));
  }
  for (std::size_t i = 0; i < seeds.size(); ++i)
    for (std::size_t j = 0; j < seeds.size(); ++j)
      if (i != j && !space.hull_subset(out.hulls[i], wide[j])) out.agree = false;
  return out;
}

template ElementarityVerdict<PLSpace> elementarity_certificate(const PLSpace&, std::size_t);
template ElementarityVerdict<SymbolicSpace> elementarity_certificate(const SymbolicSpace&, std::size_t);
template std::optional<GenWord> move_off(const PLSpace&, const Region<PLSpace>&, std::size_t);
template std::optional<GenWord> move_off(const SymbolicSpace&, const Region<SymbolicSpace>&, std::size_t);
template FreePairResult<PLSpace> find_free_pair(const PLSpace&, std::size_t);
template FreePairResult<SymbolicSpace> find_free_pair(const SymbolicSpace&, std::size_t);
template bool verify_pingpong(const PLSpace&, const PingPongCertificate<PLSpace>&);
template bool verify_pingpong(const SymbolicSpace&, const PingPongCertificate<SymbolicSpace>&);
template WitnessReport free_pair_witness(const PLSpace&, const PingPongCertificate<PLSpace>&, std::size_t);
template WitnessReport free_pair_witness(const SymbolicSpace&, const PingPongCertificate<SymbolicSpace>&,
                                         std::size_t);
template std::string format_certificate(const PLSpace&, const PingPongCertificate<PLSpace>&);
template std::string format_certificate(const SymbolicSpace&, const PingPongCertificate<SymbolicSpace>&);
template MinimalEstimate<PLSpace> minimal_subdendrite_estimate(const PLSpace&, const std::vector<Point>&,
                                                               std::size_t);
template MinimalEstimate<SymbolicSpace> minimal_subdendrite_estimate(const SymbolicSpace&,
                                                                     const std::vector<SymPoint>&, std::size_t);

// ---------------------------------------------------------------------------
// Symbolic measures and proximality

Rational SymbolicMeasure::total() const {
  Rational s = boundary;
  for (const auto& [p, w] : atoms) s += w;
  return s;
}

SymbolicMeasure parse_symbolic_measure(std::string_view text, int rank, const std::string& source) {
  SymbolicMeasure m;
  for (const auto& line : tokenize_lines(text)) {
    const auto& t = line.tokens;
    const auto fail = [&](const std::string& token, const std::string& what) {
      throw ParseError(source, line.number, token, what);
    };
    if (t[0] == "atom") {
      if (t.size() != 3) fail(t[0], "expected: atom <point> <mass>");
      SymPoint p;
      Rational w;
      try {
        p = parse_sym_point(t[1], rank);
      } catch (const InputError& e) {
        fail(t[1], e.what());
      }
      try {
        w = parse_rational(t[2]);
      } catch (const InputError& e) {
        fail(t[2], e.what());
      }
      if (w < 0) fail(t[2], "negative mass");
      m.atoms[p] += w;
    } else if (t[0] == "boundary") {
      if (t.size() != 2) fail(t[0], "expected: boundary <mass>");
      try {
        m.boundary += parse_rational(t[1]);
      } catch (const InputError& e) {
        fail(t[1], e.what());
      }
      if (m.boundary < 0) fail(t[1], "negative mass");
    } else {
      fail(t[0], "unknown keyword");
    }
  }
  if (m.total() != 1) throw ParseError(source, 0, to_string(m.total()), "total mass must be 1");
  return m;
}

namespace {

Rational ends_mass(const SymbolicSpace& space, const Region<SymbolicSpace>& r, const std::vector<SymPoint>& centers,
                   const Word& w, const Rational& weight) {
  const bool split = std::any_of(centers.begin(), centers.end(), [&](const SymPoint& c) { return below(w, c); });
  const int m = space.rank();
  if (!split) {
    int l = 1;
    if (!w.empty() && w.back() == -l) l = -1;
    const SymPoint rep = SymPoint::at_end(EndWord::make(w, {l}));
    return r.contains(space, rep) ? weight : Rational(0);
  }
  const Rational child = weight / (w.empty() ? 2 * m : 2 * m - 1);
  Rational total;
  for (int d : sym_germs_at(SymPoint::vertex({}), m)) {
    if (!w.empty() && d == -w.back()) continue;
    Word c = w;
    c.push_back(d);
    total += ends_mass(space, r, centers, c, child);
  }
  return total;
}

// g = c s c^{-1} with s short, recentring the search at vertex c; plain search
// when c is not expressible in the generators.
std::optional<GenWord> move_off_near(const SymbolicSpace& space, const Region<SymbolicSpace>& y, const Word& c,
                                     std::size_t depth) {
  const auto cw = space.express(c);
  if (!cw) return move_off(space, y, depth);
  std::optional<GenWord> found;
  for_each_word(space, generator_elements(space), depth, [&](const GenWord& s, const Word& s_el) {
    const Word g = multiply(multiply(c, s_el), dendro::inverse(c));
    if (!y.image(space, g).is_disjoint_from(space, y)) return false;
    found = multiply(multiply(*cw, s), dendro::inverse(*cw));
    return true;
  });
  return found;
}

}  // namespace

Rational measure_of(const SymbolicSpace& space, const SymbolicMeasure& m, const Region<SymbolicSpace>& r) {
  Rational total;
  for (const auto& [p, w] : m.atoms)
    if (r.contains(space, p)) total += w;
  if (m.boundary != 0) {
    std::vector<SymPoint> centers;
    for (const auto& c : r.centers())
      if (c.kind != SymPoint::Kind::kEnd) centers.push_back(c);
    total += m.boundary * ends_mass(space, r, centers, {}, Rational(1));
  }
  return total;
}

ProximalityResult proximality_push(const SymbolicSpace& space, const SymbolicMeasure& m, const EndWord& target,
                                   std::size_t steps, std::size_t depth) {
  using R = Region<SymbolicSpace>;
  ProximalityResult out;
  const Rational half(1, 2);
  for (std::size_t n = 1; n <= steps; ++n) {
    Word v;
    for (std::size_t i = 0; i + 1 < n; ++i) v.push_back(target.letter(i));
    const int next = target.letter(n - 1);
    int side = 0;
    for (int d : sym_germs_at(SymPoint::vertex({}), space.rank())) {
      if (d == next || (!v.empty() && d == -v.back())) continue;
      if (side == 0 || letter_rank(d) < letter_rank(side)) side = d;
    }
    const SymPoint yn = SymPoint::at_end(EndWord::make(v, {side}));
    const SymPoint xn = SymPoint::edge(v, next, half);
    const auto atom_at = [&](const SymPoint& p) {
      const auto it = m.atoms.find(p);
      return it == m.atoms.end() ? Rational(0) : it->second;
    };
    const Rational bound = atom_at(yn) + Rational(1, static_cast<long>(n));

    Word u = v;
    std::optional<SymPoint> zn;
    for (int j = 0; j < 64; ++j, u.push_back(side)) {
      const SymPoint z = SymPoint::edge(u, side, half);
      if (measure_of(space, m, R::atom(z, {side}, true)) <= bound) {
        zn = z;
        break;
      }
    }
    if (!zn) {
      out.failure = "step " + std::to_string(n) + ": no regular point z_n within reach";
      return out;
    }
    const R uz_x = R::atom(*zn, {-side}, true), uz_y = R::atom(*zn, {side}, true);
    const auto g = move_off_near(space, uz_x, u, depth);
    if (!g || !uz_x.image(space, space.evaluate(*g)).is_subset_of(space, uz_y)) {
      out.failure = "step " + std::to_string(n) + ": no g_n found";
      return out;
    }
    const R ux_y = R::atom(xn, {-next}, true), ux_x = R::atom(xn, {next}, true);
    const auto h = move_off_near(space, ux_y, v, depth);
    if (!h || !ux_y.image(space, space.evaluate(*h)).is_subset_of(space, ux_x)) {
      out.failure = "step " + std::to_string(n) + ": no h_n found";
      return out;
    }
    const GenWord w = multiply(*h, *g);
    const Word w_el = space.evaluate(w);
    out.steps.push_back({n, w, measure_of(space, m, ux_x.image(space, dendro::inverse(w_el)))});
  }
  return out;
}

// ---------------------------------------------------------------------------
// Action files

ActionFile parse_action_file(std::string_view text, const std::string& source, const std::string& base_dir) {
  std::optional<std::string> backend;
  std::optional<int> rank;
  std::shared_ptr<Dendrite> tree;
  std::vector<std::string> names;
  std::vector<std::pair<TextLine, std::string>> gen_lines;
  std::size_t last_line = 0;
  const auto resolve = [&](const std::string& name) {
    const std::filesystem::path p(name);
    return p.is_absolute() || base_dir.empty() ? p.string() : (std::filesystem::path(base_dir) / p).string();
  };
  for (const auto& line : tokenize_lines(text)) {
    last_line = line.number;
    const auto& t = line.tokens;
    const auto fail = [&](const std::string& token, const std::string& what) {
      throw ParseError(source, line.number, token, what);
    };
    if (t[0] == "backend") {
      if (t.size() != 2 || (t[1] != "pl" && t[1] != "symbolic")) fail(t.size() > 1 ? t[1] : t[0], "expected: backend pl|symbolic");
      backend = t[1];
    } else if (t[0] == "rank") {
      if (t.size() != 2) fail(t[0], "expected: rank <m>");
      try {
        rank = std::stoi(t[1]);
      } catch (const std::exception&) {
        fail(t[1], "rank must be an integer");
      }
    } else if (t[0] == "tree") {
      if (t.size() != 2) fail(t[0], "expected: tree <file>");
      try {
        tree = std::make_shared<Dendrite>(parse_tree(read_file(resolve(t[1])), t[1]));
      } catch (const ParseError&) {
        throw;
      } catch (const InputError& e) {
        fail(t[1], e.what());
      }
    } else if (t[0] == "gen") {
      if (t.size() != 3) fail(t[0], "expected: gen <name> <word-or-mapfile>");
      names.push_back(t[1]);
      gen_lines.emplace_back(line, t[2]);
    } else {
      fail(t[0], "unknown keyword");
    }
  }
  if (!backend) throw ParseError(source, last_line, "", "missing backend line");
  if (*backend == "symbolic") {
    if (!rank) throw ParseError(source, last_line, "", "symbolic backend needs a rank line");
    std::vector<Word> gens;
    for (const auto& [line, word] : gen_lines) {
      try {
        gens.push_back(parse_word(word, *rank));
      } catch (const InputError& e) {
        throw ParseError(source, line.number, word, e.what());
      }
    }
    try {
      return ActionFile{SymbolicSpace(*rank, names, gens)};
    } catch (const ParseError&) {
      throw;
    } catch (const InputError& e) {
      throw ParseError(source, last_line, "", e.what());
    }
  }
  if (!tree) throw ParseError(source, last_line, "", "pl backend needs a tree line");
  std::vector<PLHomeo> gens;
  for (const auto& [line, file] : gen_lines) {
    try {
      gens.push_back(parse_map(*tree, read_file(resolve(file)), file));
    } catch (const ParseError&) {
      throw;
    } catch (const InputError& e) {
      throw ParseError(source, line.number, file, e.what());
    }
  }
  try {
    return ActionFile{PLSpace(tree, names, gens)};
  } catch (const InputError& e) {
    throw ParseError(source, last_line, "", e.what());
  }
}

}  // namespace dendro
