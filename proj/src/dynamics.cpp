#include "dendro/dynamics.hpp"

#include <algorithm>
#include <map>
#include <numeric>

#include "dendro/errors.hpp"
#include "dendro/text_format.hpp"

namespace dendro {

PLMap::PLMap() : points_{{Rational(0), Rational(0)}, {Rational(1), Rational(1)}} {}

PLMap::PLMap(std::vector<std::pair<Rational, Rational>> interior) {
  points_.emplace_back(Rational(0), Rational(0));
  for (auto& bp : interior) {
    bp.first.canonicalize();
    bp.second.canonicalize();
    points_.push_back(std::move(bp));
  }
  points_.emplace_back(Rational(1), Rational(1));
  for (std::size_t i = 0; i + 1 < points_.size(); ++i) {
    if (points_[i + 1].first <= points_[i].first || points_[i + 1].second <= points_[i].second) {
      throw InputError("PL map breakpoints must be strictly increasing inside (0,1)");
    }
  }
  canonicalize();
}

void PLMap::canonicalize() {
  std::vector<std::pair<Rational, Rational>> kept{points_.front()};
  for (std::size_t i = 1; i + 1 < points_.size(); ++i) {
    const auto& a = kept.back();
    const auto& b = points_[i];
    const auto& c = points_[i + 1];
    // Drop b when it lies on the segment from a to c.
    if ((b.second - a.second) * (c.first - b.first) != (c.second - b.second) * (b.first - a.first)) kept.push_back(b);
  }
  kept.push_back(points_.back());
  points_ = std::move(kept);
}

Rational PLMap::operator()(const Rational& t) const {
  if (t < 0 || t > 1) throw InputError("PL map argument outside [0,1]");
  auto it = std::lower_bound(points_.begin(), points_.end(), t,
                             [](const auto& bp, const Rational& v) { return bp.first < v; });
  if (it->first == t) return it->second;
  const auto& hi = *it;
  const auto& lo = *(it - 1);
  Rational s = lo.second + (t - lo.first) * (hi.second - lo.second) / (hi.first - lo.first);
  s.canonicalize();
  return s;
}

PLMap PLMap::inverse() const {
  PLMap out;
  out.points_.clear();
  for (const auto& [t, s] : points_) out.points_.emplace_back(s, t);
  return out;
}

PLMap PLMap::after(const PLMap& inner) const {
  std::vector<Rational> ts;
  for (const auto& bp : inner.points_) ts.push_back(bp.first);
  PLMap inner_inv = inner.inverse();
  for (const auto& bp : points_) ts.push_back(inner_inv(bp.first));
  std::sort(ts.begin(), ts.end());
  ts.erase(std::unique(ts.begin(), ts.end()), ts.end());
  PLMap out;
  out.points_.clear();
  for (const auto& t : ts) out.points_.emplace_back(t, (*this)(inner(t)));
  out.canonicalize();
  return out;
}

PLMap PLMap::reflected() const {
  PLMap out;
  out.points_.clear();
  for (auto it = points_.rbegin(); it != points_.rend(); ++it) out.points_.emplace_back(1 - it->first, 1 - it->second);
  return out;
}

std::vector<Interval> PLMap::fixed_intervals() const {
  std::vector<Interval> raw;
  for (std::size_t i = 0; i + 1 < points_.size(); ++i) {
    const auto& [x0, y0] = points_[i];
    const auto& [x1, y1] = points_[i + 1];
    Rational d0 = y0 - x0;
    Rational d1 = y1 - x1;
    if (d0 == 0 && d1 == 0) {
      raw.push_back({x0, x1});
    } else if (d0 == 0) {
      raw.push_back({x0, x0});
    } else if (d1 == 0) {
      raw.push_back({x1, x1});
    } else if ((d0 < 0) != (d1 < 0)) {
      Rational t = x0 + d0 * (x1 - x0) / (d0 - d1);
      t.canonicalize();
      raw.push_back({t, t});
    }
  }
  std::sort(raw.begin(), raw.end(), [](const Interval& a, const Interval& b) { return a.lo < b.lo; });
  std::vector<Interval> merged;
  for (const auto& iv : raw) {
    if (!merged.empty() && iv.lo <= merged.back().hi) {
      merged.back().hi = std::max(merged.back().hi, iv.hi);
    } else {
      merged.push_back(iv);
    }
  }
  return merged;
}

Rational PLMap::anti_fixed_point() const {
  for (std::size_t i = 0; i + 1 < points_.size(); ++i) {
    const auto& [x0, y0] = points_[i];
    const auto& [x1, y1] = points_[i + 1];
    Rational h0 = y0 + x0 - 1;
    Rational h1 = y1 + x1 - 1;
    if (h0 <= 0 && h1 >= 0) {
      if (h0 == 0) return x0;
      Rational t = x0 - h0 * (x1 - x0) / (h1 - h0);
      t.canonicalize();
      return t;
    }
  }
  throw std::logic_error("anti_fixed_point: no crossing");
}

PLHomeo PLHomeo::identity(const Dendrite& tree) {
  return PLHomeo(tree, TreeAutomorphism::identity(tree), std::vector<PLMap>(tree.edge_count()));
}

PLHomeo::PLHomeo(const Dendrite& tree, TreeAutomorphism sigma, std::vector<PLMap> edge_maps)
    : tree_(&tree), sigma_(std::move(sigma)), phi_(std::move(edge_maps)) {
  if (phi_.size() != tree.edge_count()) throw InputError("one edge map per edge is required");
}

Rational PLHomeo::image_param(EdgeId e, const Rational& t) const {
  Rational s = phi_[e.value](t);
  return sigma_.flips(e) ? Rational(1 - s) : s;
}

Point PLHomeo::apply(const Point& p) const {
  check_point(*tree_, p);
  if (p.is_vertex()) return Point::at_vertex(sigma_(p.vertex()));
  return Point::on_edge(*tree_, sigma_.edge_image(p.edge()), image_param(p.edge(), p.param()));
}

SubDendrite PLHomeo::apply(const SubDendrite& s) const {
  SubDendriteBuilder b(*tree_);
  for (VertexId v : s.vertices()) b.add_vertex(sigma_(v));
  for (std::uint32_t i = 0; i < tree_->edge_count(); ++i) {
    EdgeId e{i};
    const auto& part = s.part(e);
    if (!part) continue;
    Rational a = image_param(e, part->lo);
    Rational c = image_param(e, part->hi);
    b.add_interval(sigma_.edge_image(e), std::min(a, c), std::max(a, c));
  }
  return b.build();
}

PLHomeo PLHomeo::inverse() const {
  TreeAutomorphism inv = sigma_.inverse(*tree_);
  std::vector<PLMap> maps(phi_.size());
  for (std::uint32_t i = 0; i < phi_.size(); ++i) {
    EdgeId e{i};
    PLMap back = phi_[i].inverse();
    maps[sigma_.edge_image(e).value] = sigma_.flips(e) ? back.reflected() : back;
  }
  return PLHomeo(*tree_, std::move(inv), std::move(maps));
}

PLHomeo PLHomeo::after(const PLHomeo& inner) const {
  if (!(*tree_ == *inner.tree_)) throw InputError("composing homeomorphisms of different trees");
  TreeAutomorphism sigma = sigma_.after(*tree_, inner.sigma_);
  std::vector<PLMap> maps(phi_.size());
  for (std::uint32_t i = 0; i < phi_.size(); ++i) {
    EdgeId e{i};
    EdgeId mid = inner.sigma_.edge_image(e);
    const PLMap& outer = phi_[mid.value];
    maps[i] = (inner.sigma_.flips(e) ? outer.reflected() : outer).after(inner.phi_[i]);
  }
  return PLHomeo(*tree_, std::move(sigma), std::move(maps));
}

PLHomeo PLHomeo::power(long n) const {
  PLHomeo base = n < 0 ? inverse() : *this;
  PLHomeo out = identity(*tree_);
  for (long k = 0; k < std::abs(n); ++k) out = base.after(out);
  return out;
}

bool PLHomeo::is_identity() const {
  return sigma_.is_identity() && std::all_of(phi_.begin(), phi_.end(), [](const PLMap& m) { return m.is_identity(); });
}

namespace {

struct UnionFind {
  std::vector<std::size_t> parent;
  explicit UnionFind(std::size_t n) : parent(n) { std::iota(parent.begin(), parent.end(), 0); }
  std::size_t find(std::size_t x) {
    while (parent[x] != x) x = parent[x] = parent[parent[x]];
    return x;
  }
  void join(std::size_t a, std::size_t b) { parent[find(a)] = find(b); }
};

// Fixed intervals of the closed edge e, in e's parameter, sorted and disjoint.
std::vector<Interval> edge_fixed_pieces(const PLHomeo& g, EdgeId e) {
  const Dendrite& tree = g.tree();
  const auto& sigma = g.combinatorics();
  std::vector<Interval> out;
  if (sigma.edge_image(e) == e) {
    if (sigma.flips(e)) {
      Rational t = g.edge_map(e).anti_fixed_point();
      out.push_back({t, t});
    } else {
      out = g.edge_map(e).fixed_intervals();
    }
    return out;
  }
  if (sigma(tree.tail(e)) == tree.tail(e)) out.push_back({Rational(0), Rational(0)});
  if (sigma(tree.head(e)) == tree.head(e)) out.push_back({Rational(1), Rational(1)});
  return out;
}

struct Decomposed {
  std::vector<SubDendrite> fixed;
  std::vector<FreeRegion> regions;
};

Decomposed decompose(const PLHomeo& g) {
  const Dendrite& tree = g.tree();
  const auto& sigma = g.combinatorics();
  const std::size_t nv = tree.vertex_count();

  // Nodes 0..nv-1 are vertices; further nodes are edge pieces (fixed intervals
  // or free gaps).
  struct Piece {
    EdgeId edge;
    Interval span;
    bool fixed;
  };
  std::vector<Piece> pieces;
  for (std::uint32_t i = 0; i < tree.edge_count(); ++i) {
    EdgeId e{i};
    auto fixed = edge_fixed_pieces(g, e);
    Rational cursor(0);
    for (const auto& iv : fixed) {
      if (iv.lo > cursor) pieces.push_back({e, {cursor, iv.lo}, false});
      pieces.push_back({e, iv, true});
      cursor = iv.hi;
    }
    if (fixed.empty() || cursor < 1) pieces.push_back({e, {cursor, Rational(1)}, false});
  }
  std::vector<bool> vertex_fixed(nv);
  for (std::uint32_t v = 0; v < nv; ++v) vertex_fixed[v] = sigma(VertexId{v}) == VertexId{v};

  UnionFind uf(nv + pieces.size());
  for (std::size_t k = 0; k < pieces.size(); ++k) {
    const auto& pc = pieces[k];
    VertexId t = tree.tail(pc.edge);
    VertexId h = tree.head(pc.edge);
    // A piece touches an endpoint vertex of the same kind (fixed or free).
    if (pc.span.lo == 0 && vertex_fixed[t.value] == pc.fixed) uf.join(nv + k, t.value);
    if (pc.span.hi == 1 && vertex_fixed[h.value] == pc.fixed) uf.join(nv + k, h.value);
  }

  std::map<std::size_t, SubDendriteBuilder> fixed_builders;
  std::map<std::size_t, SubDendriteBuilder> free_builders;
  std::map<std::size_t, std::vector<Point>> free_boundary;
  auto builder_for = [&](std::map<std::size_t, SubDendriteBuilder>& m, std::size_t root) -> SubDendriteBuilder& {
    return m.try_emplace(root, tree).first->second;
  };
  for (std::uint32_t v = 0; v < nv; ++v) {
    std::size_t root = uf.find(v);
    builder_for(vertex_fixed[v] ? fixed_builders : free_builders, root).add_vertex(VertexId{v});
  }
  for (std::size_t k = 0; k < pieces.size(); ++k) {
    const auto& pc = pieces[k];
    std::size_t root = uf.find(nv + k);
    builder_for(pc.fixed ? fixed_builders : free_builders, root).add_interval(pc.edge, pc.span.lo, pc.span.hi);
    if (!pc.fixed) {
      auto& bd = free_boundary[root];
      Point a = Point::on_edge(tree, pc.edge, pc.span.lo);
      Point b = Point::on_edge(tree, pc.edge, pc.span.hi);
      bool a_fixed = a.is_vertex() ? vertex_fixed[a.vertex().value] : true;
      bool b_fixed = b.is_vertex() ? vertex_fixed[b.vertex().value] : true;
      if (a_fixed) bd.push_back(a);
      if (b_fixed) bd.push_back(b);
    }
  }
  Decomposed out;
  for (auto& [root, b] : fixed_builders) out.fixed.push_back(b.build());
  for (auto& [root, b] : free_builders) {
    auto bd = free_boundary[root];
    std::sort(bd.begin(), bd.end());
    bd.erase(std::unique(bd.begin(), bd.end()), bd.end());
    out.regions.push_back(FreeRegion{b.build(), std::move(bd)});
  }
  auto by_rep = [&](const SubDendrite& a, const SubDendrite& b) {
    return a.representative(tree) < b.representative(tree);
  };
  std::sort(out.fixed.begin(), out.fixed.end(), by_rep);
  std::sort(out.regions.begin(), out.regions.end(),
            [&](const FreeRegion& a, const FreeRegion& b) { return by_rep(a.closure, b.closure); });
  return out;
}

}  // namespace

bool FixedSet::contains(const Point& p) const {
  return std::any_of(components.begin(), components.end(), [&](const SubDendrite& c) { return c.contains(p); });
}

bool FreeRegion::contains(const Point& p) const {
  return closure.contains(p) && std::find(boundary.begin(), boundary.end(), p) == boundary.end();
}

FixedSet fixed_set(const PLHomeo& g) { return FixedSet{decompose(g).fixed}; }

std::vector<FreeRegion> free_regions(const PLHomeo& g) { return decompose(g).regions; }

std::vector<Arc> austro_boreal_arcs(const PLHomeo& g) {
  std::vector<Arc> out;
  for (const auto& w : free_regions(g)) {
    if (w.boundary.size() == 2) out.push_back(arc(g.tree(), w.boundary[0], w.boundary[1]));
  }
  return out;
}

FixVerdict fix_dichotomy(const PLHomeo& g) {
  return fixed_set(g).connected() ? FixVerdict::kConnectedFix : FixVerdict::kHasAustroBoreal;
}

std::string to_string(FixVerdict v) {
  return v == FixVerdict::kConnectedFix ? "connected-fix" : "has-austro-boreal";
}

TectonicDecomposition tectonic(const PLHomeo& g) {
  const Dendrite& tree = g.tree();
  Decomposed d = decompose(g);
  if (d.fixed.empty()) throw std::logic_error("tectonic: empty fixed set");
  TectonicDecomposition out;
  std::vector<SubDendriteBuilder> kernel;
  for (const auto& f : d.fixed) kernel.emplace_back(tree).add(f);
  for (auto& w : d.regions) {
    if (w.boundary.size() == 2) {
      const Point& x = w.boundary[0];
      const Point& y = w.boundary[1];
      Arc a = arc(tree, x, y);
      Germ start = *germ_toward(tree, x, y);
      const Interval& span = *a.carrier.part(start.edge);
      Point z = Point::on_edge(tree, start.edge, (span.lo + span.hi) / 2);
      Point gz = g.apply(z);
      Point attracting = distance(tree, x, gz) < distance(tree, x, z) ? x : y;
      out.austro_boreal.push_back(AustroBorealPiece{std::move(a), w, attracting, z, gz});
    } else if (w.boundary.size() == 1) {
      for (std::size_t k = 0; k < d.fixed.size(); ++k) {
        if (d.fixed[k].contains(w.boundary[0])) kernel[k].add(w.closure);
      }
    } else {
      throw std::logic_error("tectonic: free region with " + std::to_string(w.boundary.size()) + " boundary points");
    }
  }
  for (std::size_t k = 0; k < d.fixed.size(); ++k) out.kernel.push_back(KernelComponent{kernel[k].build(), d.fixed[k]});
  return out;
}

PLHomeo parse_map(const Dendrite& tree, std::string_view text, const std::string& source) {
  std::vector<VertexId> vm(tree.vertex_count());
  for (std::uint32_t v = 0; v < vm.size(); ++v) vm[v] = VertexId{v};
  struct EmapLine {
    std::size_t line;
    EdgeId from;
    EdgeId to;
    std::vector<std::pair<Rational, Rational>> pairs;
    std::string token;
  };
  std::vector<EmapLine> emaps;
  for (const auto& line : tokenize_lines(text)) {
    const auto& t = line.tokens;
    if (t[0] == "vmap") {
      if (t.size() != 3) throw ParseError(source, line.number, t[0], "expected 'vmap <v> <v'>'");
      auto a = tree.find_vertex(t[1]);
      if (!a) throw ParseError(source, line.number, t[1], "unknown vertex");
      auto b = tree.find_vertex(t[2]);
      if (!b) throw ParseError(source, line.number, t[2], "unknown vertex");
      vm[a->value] = *b;
    } else if (t[0] == "emap") {
      if (t.size() < 3) throw ParseError(source, line.number, t[0], "expected 'emap <e> <e'> <t>:<s> ...'");
      auto a = tree.find_edge(t[1]);
      if (!a) throw ParseError(source, line.number, t[1], "unknown edge");
      auto b = tree.find_edge(t[2]);
      if (!b) throw ParseError(source, line.number, t[2], "unknown edge");
      EmapLine em{line.number, *a, *b, {}, t[1]};
      for (std::size_t k = 3; k < t.size(); ++k) {
        auto colon = t[k].find(':');
        if (colon == std::string::npos) throw ParseError(source, line.number, t[k], "expected <t>:<s>");
        try {
          em.pairs.emplace_back(parse_rational(t[k].substr(0, colon)), parse_rational(t[k].substr(colon + 1)));
        } catch (const InputError&) {
          throw ParseError(source, line.number, t[k], "malformed breakpoint");
        }
      }
      emaps.push_back(std::move(em));
    } else if (t[0] != "vertex" && t[0] != "edge") {
      throw ParseError(source, line.number, t[0], "unknown keyword");
    }
  }
  TreeAutomorphism sigma = TreeAutomorphism::identity(tree);
  try {
    sigma = TreeAutomorphism::from_vertex_map(tree, vm);
  } catch (const InputError& err) {
    throw ParseError(source, 0, "vmap", err.what());
  }
  std::vector<PLMap> maps(tree.edge_count());
  for (auto& em : emaps) {
    if (sigma.edge_image(em.from) != em.to) {
      throw ParseError(source, em.line, em.token, "edge image disagrees with the vertex map");
    }
    bool flip = sigma.flips(em.from);
    std::vector<std::pair<Rational, Rational>> interior;
    for (auto& [t, s] : em.pairs) interior.emplace_back(t, flip ? Rational(1 - s) : s);
    try {
      maps[em.from.value] = PLMap(std::move(interior));
    } catch (const InputError& err) {
      throw ParseError(source, em.line, em.token, err.what());
    }
  }
  return PLHomeo(tree, std::move(sigma), std::move(maps));
}

std::string format_map(const PLHomeo& g) {
  const Dendrite& tree = g.tree();
  const auto& sigma = g.combinatorics();
  std::string out;
  for (std::uint32_t v = 0; v < tree.vertex_count(); ++v) {
    VertexId id{v};
    if (sigma(id) != id) out += "vmap " + tree.vertex_name(id) + " " + tree.vertex_name(sigma(id)) + "\n";
  }
  for (std::uint32_t i = 0; i < tree.edge_count(); ++i) {
    EdgeId e{i};
    const auto& bps = g.edge_map(e).breakpoints();
    if (bps.size() == 2) continue;
    out += "emap " + tree.edge_name(e) + " " + tree.edge_name(sigma.edge_image(e));
    for (std::size_t k = 1; k + 1 < bps.size(); ++k) {
      out += " " + to_string(bps[k].first) + ":" + to_string(g.image_param(e, bps[k].first));
    }
    out += "\n";
  }
  return out;
}

}  // namespace dendro
