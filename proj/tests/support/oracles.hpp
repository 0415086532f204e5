#pragma once

// Brute-force reference computations for the test suites. Nothing here calls
// the library's path, hull or intersection routines; distances come from an
// explicit traversal and set membership from sampling a common subdivision.

#include <algorithm>
#include <functional>
#include <map>
#include <numeric>
#include <random>
#include <set>
#include <string>
#include <vector>

#include "dendro/automorphism.hpp"
#include "dendro/dynamics.hpp"
#include "dendro/subdendrite.hpp"
#include "dendro/tree.hpp"

namespace oracle {

using namespace dendro;
using Rng = std::mt19937_64;

inline int uniform(Rng& rng, int lo, int hi) { return std::uniform_int_distribution<int>(lo, hi)(rng); }

inline Rational q(long n, long d) {
  Rational r(n, d);
  r.canonicalize();
  return r;
}

inline Rational random_length(Rng& rng) { return q(uniform(rng, 1, 6), uniform(rng, 1, 4)); }

inline Rational random_param(Rng& rng) {
  const int d = uniform(rng, 2, 7);
  return q(uniform(rng, 1, d - 1), d);
}

/// Random labelled tree with `n` vertices, random edge orientations and lengths.
inline Dendrite random_tree(Rng& rng, std::size_t n) {
  std::vector<std::string> names;
  std::vector<EdgeRecord> edges;
  for (std::size_t i = 0; i < n; ++i) names.push_back("v" + std::to_string(i));
  for (std::size_t i = 1; i < n; ++i) {
    VertexId a{static_cast<std::uint32_t>(uniform(rng, 0, static_cast<int>(i) - 1))};
    VertexId b{static_cast<std::uint32_t>(i)};
    if (uniform(rng, 0, 1)) std::swap(a, b);
    edges.push_back({"e" + std::to_string(i), a, b, random_length(rng)});
  }
  return Dendrite(names, edges);
}

inline Point random_point(Rng& rng, const Dendrite& tree) {
  if (tree.edge_count() == 0 || uniform(rng, 0, 2) == 0)
    return Point::at_vertex(VertexId{static_cast<std::uint32_t>(uniform(rng, 0, static_cast<int>(tree.vertex_count()) - 1))});
  const EdgeId e{static_cast<std::uint32_t>(uniform(rng, 0, static_cast<int>(tree.edge_count()) - 1))};
  return Point::on_edge(tree, e, random_param(rng));
}

/// Parameters of interest per edge; sample() refines them to a common
/// subdivision and returns its vertices plus one interior point per cell.
class Subdivision {
 public:
  explicit Subdivision(const Dendrite& tree) : tree_(&tree) {}

  void add(const Point& p) {
    if (!p.is_vertex()) params_[p.edge().value].insert(p.param());
  }
  void add(EdgeId e, const Rational& t) { params_[e.value].insert(t); }
  void add(const SubDendrite& s) {
    for (std::uint32_t e = 0; e < tree_->edge_count(); ++e)
      if (const auto& iv = s.part(EdgeId{e})) {
        params_[e].insert(iv->lo);
        params_[e].insert(iv->hi);
      }
  }
  void add(const PLMap& f, EdgeId e) {
    for (const auto& [t, s] : f.breakpoints()) params_[e.value].insert(t);
  }

  std::vector<Point> sample() const {
    std::vector<Point> out;
    for (std::uint32_t v = 0; v < tree_->vertex_count(); ++v) out.push_back(Point::at_vertex(VertexId{v}));
    for (std::uint32_t e = 0; e < tree_->edge_count(); ++e) {
      std::set<Rational> ts{Rational(0), Rational(1)};
      if (auto it = params_.find(e); it != params_.end()) ts.insert(it->second.begin(), it->second.end());
      std::vector<Rational> v(ts.begin(), ts.end());
      for (std::size_t i = 0; i + 1 < v.size(); ++i) {
        if (v[i] > 0) out.push_back(Point::on_edge(*tree_, EdgeId{e}, v[i]));
        out.push_back(Point::on_edge(*tree_, EdgeId{e}, (v[i] + v[i + 1]) / 2));
      }
    }
    std::sort(out.begin(), out.end());
    out.erase(std::unique(out.begin(), out.end()), out.end());
    return out;
  }

 private:
  const Dendrite* tree_;
  std::map<std::uint32_t, std::set<Rational>> params_;
};

/// Vertex-to-vertex distances by explicit traversal.
class Metric {
 public:
  explicit Metric(const Dendrite& tree) : tree_(&tree), d_(tree.vertex_count(), std::vector<Rational>(tree.vertex_count())) {
    for (std::uint32_t s = 0; s < tree.vertex_count(); ++s) {
      std::vector<bool> seen(tree.vertex_count());
      std::vector<VertexId> stack{VertexId{s}};
      seen[s] = true;
      while (!stack.empty()) {
        const VertexId v = stack.back();
        stack.pop_back();
        for (EdgeId e : tree.incident(v)) {
          const VertexId w = tree.other_end(e, v);
          if (seen[w.value]) continue;
          seen[w.value] = true;
          d_[s][w.value] = d_[s][v.value] + tree.length(e);
          stack.push_back(w);
        }
      }
    }
  }

  Rational operator()(const Point& p, const Point& q) const {
    if (!p.is_vertex() && !q.is_vertex() && p.edge() == q.edge())
      return abs(p.param() - q.param()) * tree_->length(p.edge());
    Rational best = -1;
    for (const auto& [a, da] : anchors(p))
      for (const auto& [b, db] : anchors(q)) {
        const Rational d = da + d_[a.value][b.value] + db;
        if (best < 0 || d < best) best = d;
      }
    return best;
  }

  bool on_arc(const Point& a, const Point& x, const Point& b) const { return (*this)(a, x) + (*this)(x, b) == (*this)(a, b); }

  bool in_hull(const std::vector<Point>& pts, const Point& x) const {
    for (const auto& a : pts)
      for (const auto& b : pts)
        if (on_arc(a, x, b)) return true;
    return false;
  }

 private:
  std::vector<std::pair<VertexId, Rational>> anchors(const Point& p) const {
    if (p.is_vertex()) return {{p.vertex(), Rational(0)}};
    const EdgeId e = p.edge();
    return {{tree_->tail(e), p.param() * tree_->length(e)}, {tree_->head(e), (1 - p.param()) * tree_->length(e)}};
  }

  const Dendrite* tree_;
  std::vector<std::vector<Rational>> d_;
};

/// A tree with a nontrivial symmetry: k copies of a random rooted tree hung
/// from a center vertex (rotated by g), or two copies joined by a middle edge
/// (swapped by g, flipping that edge).
struct SymmetricCase {
  Dendrite tree;
  TreeAutomorphism g;
};

inline SymmetricCase random_symmetric(Rng& rng, std::size_t copy_size) {
  const bool edge_center = uniform(rng, 0, 2) == 0;
  const std::size_t k = edge_center ? 2 : static_cast<std::size_t>(uniform(rng, 2, 3));
  std::vector<int> parent(copy_size, -1);
  std::vector<Rational> len(copy_size);
  std::vector<bool> flip(copy_size);
  for (std::size_t i = 1; i < copy_size; ++i) {
    parent[i] = uniform(rng, 0, static_cast<int>(i) - 1);
    len[i] = random_length(rng);
    flip[i] = uniform(rng, 0, 1);
  }
  const Rational hang = random_length(rng);
  std::vector<std::string> names;
  std::vector<EdgeRecord> edges;
  const auto id = [&](std::size_t copy, std::size_t i) {
    return VertexId{static_cast<std::uint32_t>((edge_center ? 0 : 1) + copy * copy_size + i)};
  };
  if (!edge_center) names.push_back("c");
  for (std::size_t c = 0; c < k; ++c)
    for (std::size_t i = 0; i < copy_size; ++i) names.push_back("c" + std::to_string(c) + "_" + std::to_string(i));
  if (edge_center)
    edges.push_back({"mid", id(0, 0), id(1, 0), hang});
  for (std::size_t c = 0; c < k; ++c) {
    if (!edge_center) edges.push_back({"h" + std::to_string(c), VertexId{0}, id(c, 0), hang});
    for (std::size_t i = 1; i < copy_size; ++i) {
      VertexId a = id(c, static_cast<std::size_t>(parent[i])), b = id(c, i);
      if (flip[i]) std::swap(a, b);
      edges.push_back({"d" + std::to_string(c) + "_" + std::to_string(i), a, b, len[i]});
    }
  }
  Dendrite tree(names, edges);
  std::vector<VertexId> perm(names.size());
  if (!edge_center) perm[0] = VertexId{0};
  for (std::size_t c = 0; c < k; ++c)
    for (std::size_t i = 0; i < copy_size; ++i) perm[id(c, i).value] = id((c + 1) % k, i);
  auto g = TreeAutomorphism::from_vertex_map(tree, perm);
  return {std::move(tree), std::move(g)};
}

inline PLMap random_pl_map(Rng& rng) {
  const int n = uniform(rng, 0, 3);
  std::set<Rational> ts, ss;
  while (static_cast<int>(ts.size()) < n) ts.insert(random_param(rng));
  while (static_cast<int>(ss.size()) < n) ss.insert(random_param(rng));
  std::vector<std::pair<Rational, Rational>> pts;
  auto it = ss.begin();
  for (const auto& t : ts) pts.emplace_back(t, *it++);
  return PLMap(pts);
}

/// Random PL homeomorphism: identity, the symmetry g, or its square, with
/// random increasing PL maps on edges.
inline PLHomeo random_homeo(Rng& rng, const SymmetricCase& c) {
  TreeAutomorphism sigma = TreeAutomorphism::identity(c.tree);
  const int which = uniform(rng, 0, 2);
  if (which >= 1) sigma = c.g;
  if (which == 2) sigma = c.g.after(c.tree, c.g);
  std::vector<PLMap> maps;
  for (std::size_t e = 0; e < c.tree.edge_count(); ++e) maps.push_back(uniform(rng, 0, 2) == 0 ? PLMap() : random_pl_map(rng));
  return PLHomeo(c.tree, sigma, maps);
}

/// Unlabelled tree as adjacency lists.
struct Graph {
  std::vector<std::vector<int>> adj;
};

inline Graph graph_of(const Dendrite& tree) {
  Graph g;
  g.adj.resize(tree.vertex_count());
  for (std::uint32_t e = 0; e < tree.edge_count(); ++e) {
    const int a = static_cast<int>(tree.tail(EdgeId{e}).value), b = static_cast<int>(tree.head(EdgeId{e}).value);
    g.adj[a].push_back(b);
    g.adj[b].push_back(a);
  }
  return g;
}

/// Removes degree-two vertices, joining their neighbours; at least two vertices survive.
inline Graph suppress(Graph g) {
  std::vector<bool> alive(g.adj.size(), true);
  std::size_t count = g.adj.size();
  for (bool changed = true; changed;) {
    changed = false;
    for (std::size_t v = 0; v < g.adj.size() && count > 2; ++v) {
      if (!alive[v] || g.adj[v].size() != 2) continue;
      const int a = g.adj[v][0], b = g.adj[v][1];
      std::replace(g.adj[a].begin(), g.adj[a].end(), static_cast<int>(v), b);
      std::replace(g.adj[b].begin(), g.adj[b].end(), static_cast<int>(v), a);
      g.adj[v].clear();
      alive[v] = false;
      --count;
      changed = true;
    }
  }
  std::vector<int> index(g.adj.size(), -1);
  int next = 0;
  for (std::size_t v = 0; v < g.adj.size(); ++v)
    if (alive[v]) index[v] = next++;
  Graph out;
  out.adj.resize(static_cast<std::size_t>(next));
  for (std::size_t v = 0; v < g.adj.size(); ++v)
    if (alive[v])
      for (int w : g.adj[v]) out.adj[static_cast<std::size_t>(index[v])].push_back(index[static_cast<std::size_t>(w)]);
  return out;
}

/// Rooted isomorphism by backtracking over child matchings.
inline bool rooted_iso(const Graph& a, int ra, int pa, const Graph& b, int rb, int pb) {
  std::vector<int> ca, cb;
  for (int w : a.adj[static_cast<std::size_t>(ra)])
    if (w != pa) ca.push_back(w);
  for (int w : b.adj[static_cast<std::size_t>(rb)])
    if (w != pb) cb.push_back(w);
  if (ca.size() != cb.size()) return false;
  std::vector<bool> used(cb.size());
  std::function<bool(std::size_t)> match = [&](std::size_t i) {
    if (i == ca.size()) return true;
    for (std::size_t j = 0; j < cb.size(); ++j) {
      if (used[j] || !rooted_iso(a, ca[i], ra, b, cb[j], rb)) continue;
      used[j] = true;
      if (match(i + 1)) return true;
      used[j] = false;
    }
    return false;
  };
  return match(0);
}

inline bool isomorphic(const Graph& a, const Graph& b) {
  if (a.adj.size() != b.adj.size()) return false;
  if (a.adj.empty()) return true;
  for (std::size_t r = 0; r < b.adj.size(); ++r)
    if (rooted_iso(a, 0, -1, b, static_cast<int>(r), -1)) return true;
  return false;
}

/// Free reduction of words written with lower-case letters and upper-case inverses.
inline std::string reduce_letters(const std::string& w) {
  std::string out;
  for (char c : w) {
    const bool cancels = !out.empty() && out.back() != c && std::tolower(out.back()) == std::tolower(c);
    if (cancels)
      out.pop_back();
    else
      out.push_back(c);
  }
  return out;
}

inline std::string invert_letters(const std::string& w) {
  std::string out(w.rbegin(), w.rend());
  for (char& c : out) c = std::islower(static_cast<unsigned char>(c)) ? static_cast<char>(std::toupper(c)) : static_cast<char>(std::tolower(c));
  return out;
}

}  // namespace oracle
