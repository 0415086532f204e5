#include "dendro/universal.hpp"

#include <algorithm>
#include <functional>
#include <map>
#include <numeric>
#include <random>

#include "dendro/errors.hpp"
#include "dendro/tree_ops.hpp"

namespace dendro {

std::vector<VertexId> TruncatedWazewski::leaves() const {
  std::vector<VertexId> out;
  for (std::uint32_t v = 0; v < tree.vertex_count(); ++v) {
    if (tree.degree(VertexId{v}) == 1) out.push_back(VertexId{v});
  }
  return out;
}

std::vector<VertexId> TruncatedWazewski::branch_vertices() const {
  std::vector<VertexId> out;
  for (std::uint32_t v = 0; v < tree.vertex_count(); ++v) {
    if (tree.degree(VertexId{v}) >= 3) out.push_back(VertexId{v});
  }
  return out;
}

TruncatedWazewski generate(const WazewskiParams& params) {
  if (params.order < 3) throw InputError("Wazewski order must be at least 3");
  struct Piece {
    std::uint32_t a, b;
    std::uint32_t born;
    bool spine;
    Rational length;
  };
  const std::uint32_t pendants = params.order - 2;
  std::vector<std::uint32_t> level{0, 0};
  std::vector<Piece> pieces{{0, 1, 0, true, Rational(1)}};
  for (std::uint32_t gen = 1; gen <= params.depth; ++gen) {
    std::vector<Piece> next;
    for (const auto& pc : pieces) {
      bool split = pc.born + 1 == gen && (params.scheme == WazewskiScheme::kFull || pc.spine);
      if (!split) {
        next.push_back(pc);
        continue;
      }
      Rational half = pc.length / 2;
      auto m = static_cast<std::uint32_t>(level.size());
      level.push_back(gen);
      next.push_back({pc.a, m, gen, true, half});
      next.push_back({m, pc.b, gen, true, half});
      for (std::uint32_t r = 0; r < pendants; ++r) {
        auto leaf = static_cast<std::uint32_t>(level.size());
        level.push_back(gen);
        next.push_back({m, leaf, gen, false, half});
      }
    }
    pieces = std::move(next);
  }
  std::vector<std::string> names;
  for (std::size_t v = 0; v < level.size(); ++v) names.push_back("v" + std::to_string(v));
  std::vector<EdgeRecord> edges;
  for (std::size_t i = 0; i < pieces.size(); ++i) {
    edges.push_back(EdgeRecord{"e" + std::to_string(i), VertexId{pieces[i].a}, VertexId{pieces[i].b}, pieces[i].length});
  }
  return TruncatedWazewski{params, Dendrite(std::move(names), std::move(edges)), std::move(level)};
}

WazewskiCounts predicted_counts(const WazewskiParams& params) {
  const std::uint64_t pendants = params.order - 2;
  std::uint64_t branch = 0;
  std::uint64_t splits = 1;
  for (std::uint32_t gen = 1; gen <= params.depth; ++gen) {
    branch += splits;
    splits *= params.scheme == WazewskiScheme::kSpine ? 2 : pendants + 2;
  }
  return {2 + pendants * branch, branch};
}

LabeledTree suppress_degree_two(const LabeledTree& t) {
  const std::size_t n = t.size();
  std::vector<bool> kept(n);
  std::vector<std::size_t> index(n, 0);
  std::size_t count = 0;
  for (std::size_t v = 0; v < n; ++v) {
    kept[v] = !(t.adj[v].size() == 2 && t.label[v].empty());
    if (kept[v]) index[v] = count++;
  }
  LabeledTree out;
  out.adj.resize(count);
  out.label.resize(count);
  for (std::size_t v = 0; v < n; ++v) {
    if (!kept[v]) continue;
    out.label[index[v]] = t.label[v];
    for (std::size_t w : t.adj[v]) {
      std::size_t prev = v;
      while (!kept[w]) {
        std::size_t step = t.adj[w][0] == prev ? t.adj[w][1] : t.adj[w][0];
        prev = w;
        w = step;
      }
      out.adj[index[v]].push_back(index[w]);
    }
  }
  return out;
}

namespace {

std::string rooted_code(const LabeledTree& t, std::size_t v, std::size_t parent) {
  std::vector<std::string> kids;
  for (std::size_t w : t.adj[v]) {
    if (w != parent) kids.push_back(rooted_code(t, w, v));
  }
  std::sort(kids.begin(), kids.end());
  std::string out = "(" + t.label[v];
  for (const auto& k : kids) out += k;
  return out + ")";
}

}  // namespace

std::string canonical_code(const LabeledTree& t) {
  const std::size_t n = t.size();
  if (n == 0) return "()";
  // Subtree sizes from node 0, iteratively.
  std::vector<std::size_t> parent(n, n), order;
  order.reserve(n);
  std::vector<std::size_t> stack{0};
  parent[0] = 0;
  while (!stack.empty()) {
    std::size_t v = stack.back();
    stack.pop_back();
    order.push_back(v);
    for (std::size_t w : t.adj[v]) {
      if (w != parent[v] && parent[w] == n) {
        parent[w] = v;
        stack.push_back(w);
      }
    }
  }
  std::vector<std::size_t> size(n, 1);
  for (auto it = order.rbegin(); it != order.rend(); ++it) {
    if (*it != 0) size[parent[*it]] += size[*it];
  }
  std::size_t best = n;
  std::vector<std::size_t> centroids;
  for (std::size_t v = 0; v < n; ++v) {
    std::size_t worst = n - size[v];
    for (std::size_t w : t.adj[v]) {
      if (w != parent[v]) worst = std::max(worst, size[w]);
    }
    if (worst < best) {
      best = worst;
      centroids = {v};
    } else if (worst == best) {
      centroids.push_back(v);
    }
  }
  std::string code;
  for (std::size_t c : centroids) {
    std::string candidate = rooted_code(t, c, n);
    if (code.empty() || candidate < code) code = candidate;
  }
  return code;
}

LabeledTree labeled_tree(const Dendrite& tree) {
  LabeledTree out;
  out.adj.resize(tree.vertex_count());
  out.label.resize(tree.vertex_count());
  for (std::uint32_t i = 0; i < tree.edge_count(); ++i) {
    EdgeId e{i};
    out.adj[tree.tail(e).value].push_back(tree.head(e).value);
    out.adj[tree.head(e).value].push_back(tree.tail(e).value);
  }
  return out;
}

namespace {

std::vector<bool> hull_marks(const Dendrite& tree, const std::vector<VertexId>& pts) {
  std::vector<bool> in(tree.vertex_count(), false);
  if (pts.empty()) return in;
  in[pts[0].value] = true;
  for (std::size_t i = 1; i < pts.size(); ++i) {
    for (VertexId v : tree.vertex_path(pts[0], pts[i])) in[v.value] = true;
  }
  return in;
}

std::string code_from_marks(const Dendrite& tree, const std::vector<bool>& in, const std::vector<VertexId>& tuple) {
  std::vector<std::size_t> index(tree.vertex_count(), 0);
  LabeledTree t;
  for (std::uint32_t v = 0; v < tree.vertex_count(); ++v) {
    if (!in[v]) continue;
    index[v] = t.adj.size();
    t.adj.emplace_back();
    t.label.emplace_back();
  }
  for (std::uint32_t i = 0; i < tree.edge_count(); ++i) {
    EdgeId e{i};
    auto a = tree.tail(e).value;
    auto b = tree.head(e).value;
    if (in[a] && in[b]) {
      t.adj[index[a]].push_back(index[b]);
      t.adj[index[b]].push_back(index[a]);
    }
  }
  for (std::size_t pos = 0; pos < tuple.size(); ++pos) {
    auto& l = t.label[index[tuple[pos].value]];
    l += (l.empty() ? "" : ",") + std::to_string(pos + 1);
  }
  return canonical_code(suppress_degree_two(t));
}

}  // namespace

std::string tuple_code(const Dendrite& tree, const std::vector<VertexId>& tuple) {
  if (tuple.empty()) throw InputError("tuple_code of an empty tuple");
  for (VertexId v : tuple) {
    if (v.value >= tree.vertex_count() || tree.degree(v) != 1) {
      throw InputError("tuple_code: entries must be leaves");
    }
  }
  return code_from_marks(tree, hull_marks(tree, tuple), tuple);
}

namespace {

OrbitCount finish_count(std::map<std::string, std::vector<VertexId>> found, bool partial) {
  OrbitCount out;
  out.partial = partial;
  for (auto& [code, rep] : found) out.classes.push_back(OrbitClass{code, std::move(rep)});
  out.count = out.classes.size();
  return out;
}

// Walks away from the hull to any leaf behind the edge from `v` to `w`.
VertexId leaf_behind(const Dendrite& tree, VertexId v, VertexId w) {
  VertexId prev = v;
  while (tree.degree(w) != 1) {
    VertexId next = w;
    for (EdgeId e : tree.incident(w)) {
      VertexId u = tree.other_end(e, w);
      if (u != prev) {
        next = u;
        break;
      }
    }
    prev = w;
    w = next;
  }
  return w;
}

}  // namespace

OrbitCount orbit_count(const TruncatedWazewski& x, std::size_t p, const OrbitOptions& opt) {
  const Dendrite& tree = x.tree;
  auto leaves = x.leaves();
  std::map<std::string, std::vector<VertexId>> found;
  if (p == 0 || p > leaves.size()) return finish_count({}, false);

  if (opt.mode == OrbitMode::kSample) {
    std::mt19937_64 rng(opt.seed);
    std::vector<VertexId> pool = leaves;
    for (std::uint64_t s = 0; s < opt.cap; ++s) {
      for (std::size_t i = 0; i < p; ++i) {
        std::uniform_int_distribution<std::size_t> pick(i, pool.size() - 1);
        std::swap(pool[i], pool[pick(rng)]);
      }
      std::vector<VertexId> tuple(pool.begin(), pool.begin() + static_cast<std::ptrdiff_t>(p));
      found.try_emplace(tuple_code(tree, tuple), tuple);
    }
    return finish_count(std::move(found), true);
  }

  // Every ordered tuple is a prefix of p - 1 leaves plus one more leaf. The code
  // only depends on where the last leaf's arc meets the prefix hull: at a node
  // of the suppressed hull, or somewhere inside one suppressed edge.
  std::uint64_t prefixes = 0;
  bool partial = false;
  std::vector<VertexId> prefix;
  std::vector<bool> used(tree.vertex_count(), false);
  std::function<void()> recurse = [&]() {
    if (partial) return;
    if (prefix.size() + 1 < p) {
      for (VertexId l : leaves) {
        if (used[l.value]) continue;
        used[l.value] = true;
        prefix.push_back(l);
        recurse();
        prefix.pop_back();
        used[l.value] = false;
      }
      return;
    }
    if (++prefixes > opt.cap) {
      partial = true;
      return;
    }
    std::vector<bool> in = prefix.empty() ? std::vector<bool>(tree.vertex_count(), false) : hull_marks(tree, prefix);
    if (prefix.empty()) {
      for (VertexId l : leaves) {
        found.try_emplace(tuple_code(tree, {l}), std::vector<VertexId>{l});
        break;
      }
      return;
    }
    std::vector<std::size_t> hull_degree(tree.vertex_count(), 0);
    for (std::uint32_t i = 0; i < tree.edge_count(); ++i) {
      EdgeId e{i};
      if (in[tree.tail(e).value] && in[tree.head(e).value]) {
        ++hull_degree[tree.tail(e).value];
        ++hull_degree[tree.head(e).value];
      }
    }
    // Group hull vertices of hull-degree two by the suppressed edge they lie on.
    std::vector<std::size_t> group(tree.vertex_count());
    std::iota(group.begin(), group.end(), 0);
    std::function<std::size_t(std::size_t)> find = [&](std::size_t a) {
      return group[a] == a ? a : group[a] = find(group[a]);
    };
    for (std::uint32_t i = 0; i < tree.edge_count(); ++i) {
      EdgeId e{i};
      auto a = tree.tail(e).value;
      auto b = tree.head(e).value;
      if (in[a] && in[b] && hull_degree[a] == 2 && hull_degree[b] == 2) group[find(a)] = find(b);
    }
    std::vector<bool> group_done(tree.vertex_count(), false);
    for (std::uint32_t v = 0; v < tree.vertex_count(); ++v) {
      if (!in[v] || tree.degree(VertexId{v}) <= hull_degree[v]) continue;
      if (hull_degree[v] == 2) {
        std::size_t g = find(v);
        if (group_done[g]) continue;
        group_done[g] = true;
      }
      for (EdgeId e : tree.incident(VertexId{v})) {
        VertexId w = tree.other_end(e, VertexId{v});
        if (in[w.value]) continue;
        std::vector<VertexId> tuple = prefix;
        tuple.push_back(leaf_behind(tree, VertexId{v}, w));
        found.try_emplace(tuple_code(tree, tuple), tuple);
        break;
      }
    }
  };
  recurse();
  return finish_count(std::move(found), partial);
}

OrbitCount orbit_count_brute_force(const TruncatedWazewski& x, std::size_t p) {
  auto leaves = x.leaves();
  std::map<std::string, std::vector<VertexId>> found;
  if (p == 0 || p > leaves.size()) return finish_count({}, false);
  std::vector<VertexId> tuple;
  std::vector<bool> used(x.tree.vertex_count(), false);
  std::function<void()> recurse = [&]() {
    if (tuple.size() == p) {
      found.try_emplace(tuple_code(x.tree, tuple), tuple);
      return;
    }
    for (VertexId l : leaves) {
      if (used[l.value]) continue;
      used[l.value] = true;
      tuple.push_back(l);
      recurse();
      tuple.pop_back();
      used[l.value] = false;
    }
  };
  recurse();
  return finish_count(std::move(found), false);
}

SubDendrite open_subdendrite_set(const Dendrite& tree, const Point& x, const Point& y) {
  if (x == y) throw InputError("open_subdendrite: x and y coincide");
  auto meet = intersect(u_side(tree, x, y), u_side(tree, y, x));
  return *meet;
}

namespace {

std::string point_name(const Dendrite& tree, EdgeId e, const Rational& t) {
  if (t == 0) return tree.vertex_name(tree.tail(e));
  if (t == 1) return tree.vertex_name(tree.head(e));
  return tree.edge_name(e) + "@" + to_string(t);
}

std::string point_name(const Dendrite& tree, const Point& p) {
  return p.is_vertex() ? tree.vertex_name(p.vertex()) : point_name(tree, p.edge(), p.param());
}

}  // namespace

Dendrite extract_subtree(const Dendrite& tree, const SubDendrite& s) {
  if (s.is_empty()) throw InputError("extract_subtree of an empty set");
  std::vector<std::string> names;
  std::map<std::string, std::uint32_t> index;
  auto vertex = [&](const std::string& name) {
    auto [it, fresh] = index.emplace(name, static_cast<std::uint32_t>(names.size()));
    if (fresh) names.push_back(name);
    return VertexId{it->second};
  };
  for (VertexId v : s.vertices()) vertex(tree.vertex_name(v));
  std::vector<EdgeRecord> edges;
  for (EdgeId e : s.full_edges()) {
    edges.push_back(EdgeRecord{tree.edge_name(e), vertex(tree.vertex_name(tree.tail(e))),
                               vertex(tree.vertex_name(tree.head(e))), tree.length(e)});
  }
  for (const auto& [e, iv] : s.partial_intervals()) {
    VertexId a = vertex(point_name(tree, e, iv.lo));
    if (iv.lo == iv.hi) continue;
    VertexId b = vertex(point_name(tree, e, iv.hi));
    edges.push_back(EdgeRecord{tree.edge_name(e), a, b, tree.length(e) * (iv.hi - iv.lo)});
  }
  return Dendrite(std::move(names), std::move(edges));
}

MarkedDendrite open_subdendrite(const Dendrite& tree, const Point& x, const Point& y) {
  Dendrite sub = extract_subtree(tree, open_subdendrite_set(tree, x, y));
  VertexId vx = *sub.find_vertex(point_name(tree, x));
  VertexId vy = *sub.find_vertex(point_name(tree, y));
  return MarkedDendrite{std::move(sub), vx, vy};
}

SimplicialTree tree_correspondence(const Dendrite& tree) {
  SimplicialTree out;
  std::vector<std::size_t> index(tree.vertex_count(), 0);
  std::vector<bool> node(tree.vertex_count(), false);
  for (std::uint32_t v = 0; v < tree.vertex_count(); ++v) {
    if (tree.degree(VertexId{v}) == 2) continue;
    node[v] = true;
    index[v] = out.vertices.size();
    out.vertices.push_back(tree.vertex_name(VertexId{v}));
  }
  for (std::uint32_t v = 0; v < tree.vertex_count(); ++v) {
    if (!node[v]) continue;
    for (EdgeId e : tree.incident(VertexId{v})) {
      EdgeId via = e;
      VertexId w = tree.other_end(e, VertexId{v});
      while (!node[w.value]) {
        auto inc = tree.incident(w);
        via = inc[0] == via ? inc[1] : inc[0];
        w = tree.other_end(via, w);
      }
      if (v < w.value) out.edges.emplace_back(index[v], index[w.value]);
    }
  }
  std::sort(out.edges.begin(), out.edges.end());
  return out;
}

Dendrite realize(const SimplicialTree& t) {
  std::vector<EdgeRecord> edges;
  for (std::size_t i = 0; i < t.edges.size(); ++i) {
    edges.push_back(EdgeRecord{"t" + std::to_string(i), VertexId{static_cast<std::uint32_t>(t.edges[i].first)},
                               VertexId{static_cast<std::uint32_t>(t.edges[i].second)}, Rational(1)});
  }
  return Dendrite(t.vertices, std::move(edges));
}

}  // namespace dendro
