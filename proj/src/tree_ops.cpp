#include "dendro/tree_ops.hpp"

#include <algorithm>
#include <deque>

#include "dendro/errors.hpp"

namespace dendro {

std::size_t order_of_point(const Dendrite& tree, const Point& p) {
  check_point(tree, p);
  return p.is_vertex() ? tree.degree(p.vertex()) : 2;
}

std::vector<Point> ends(const Dendrite& tree) {
  std::vector<Point> out;
  for (std::uint32_t v = 0; v < tree.vertex_count(); ++v) {
    if (tree.degree(VertexId{v}) == 1) out.push_back(Point::at_vertex(VertexId{v}));
  }
  return out;
}

std::vector<Point> branch_points(const Dendrite& tree) {
  std::vector<Point> out;
  for (std::uint32_t v = 0; v < tree.vertex_count(); ++v) {
    if (tree.degree(VertexId{v}) >= 3) out.push_back(Point::at_vertex(VertexId{v}));
  }
  return out;
}

namespace {

// Adds the piece of p's edge between p and the endpoint on the side of `toward`,
// and returns that endpoint. For a vertex p, returns the vertex itself.
VertexId add_exit(const Dendrite& tree, SubDendriteBuilder& b, const Point& p, const Point& toward) {
  if (p.is_vertex()) {
    b.add_vertex(p.vertex());
    return p.vertex();
  }
  auto g = germ_toward(tree, p, toward);
  EdgeId e = p.edge();
  if (g->toward_head) {
    b.add_interval(e, p.param(), Rational(1));
    return tree.head(e);
  }
  b.add_interval(e, Rational(0), p.param());
  return tree.tail(e);
}

void add_arc(const Dendrite& tree, SubDendriteBuilder& b, const Point& x, const Point& y) {
  if (x == y) {
    b.add_point(x);
    return;
  }
  if (!x.is_vertex() && !y.is_vertex() && x.edge() == y.edge()) {
    b.add_interval(x.edge(), std::min(x.param(), y.param()), std::max(x.param(), y.param()));
    return;
  }
  // When one point is an endpoint of the other's edge, the exits meet there.
  VertexId ex = add_exit(tree, b, x, y);
  VertexId ey = add_exit(tree, b, y, x);
  for (EdgeId e : tree.edge_path(ex, ey)) b.add_full_edge(e);
}

}  // namespace

Arc arc(const Dendrite& tree, const Point& x, const Point& y) {
  check_point(tree, x);
  check_point(tree, y);
  SubDendriteBuilder b(tree);
  add_arc(tree, b, x, y);
  return Arc{x, y, b.build()};
}

Rational distance(const Dendrite& tree, const Point& x, const Point& y) {
  return arc(tree, x, y).carrier.total_length(tree);
}

SubDendrite hull(const Dendrite& tree, std::span<const Point> points) {
  if (points.empty()) throw InputError("hull of an empty point set");
  for (const auto& p : points) check_point(tree, p);
  SubDendriteBuilder b(tree);
  const Point& base = points.front();
  b.add_point(base);
  for (const auto& p : points.subspan(1)) add_arc(tree, b, base, p);
  return b.build();
}

SubDendrite component_closure(const Dendrite& tree, const Germ& germ) {
  SubDendriteBuilder b(tree);
  b.add_point(germ.base);
  EdgeId e = germ.edge;
  VertexId start;
  if (germ.base.is_vertex()) {
    b.add_full_edge(e);
    start = tree.other_end(e, germ.base.vertex());
  } else if (germ.toward_head) {
    b.add_interval(e, germ.base.param(), Rational(1));
    start = tree.head(e);
  } else {
    b.add_interval(e, Rational(0), germ.base.param());
    start = tree.tail(e);
  }
  // Everything reachable from `start` without crossing e.
  std::deque<std::pair<VertexId, EdgeId>> queue{{start, e}};
  b.add_vertex(start);
  while (!queue.empty()) {
    auto [v, from] = queue.front();
    queue.pop_front();
    for (EdgeId f : tree.incident(v)) {
      if (f == from) continue;
      b.add_full_edge(f);
      queue.push_back({tree.other_end(f, v), f});
    }
  }
  return b.build();
}

std::vector<Component> components_minus(const Dendrite& tree, const Point& p) {
  std::vector<Component> out;
  for (const auto& g : germs_at(tree, p)) out.push_back(Component{g, component_closure(tree, g)});
  return out;
}

SubDendrite u_side(const Dendrite& tree, const Point& s, const Point& t) {
  auto g = germ_toward(tree, s, t);
  if (!g) throw InputError("u_side: s and t coincide");
  return component_closure(tree, *g);
}

Point median(const Dendrite& tree, const Point& p, const Point& q, const Point& r) {
  auto pq = arc(tree, p, q).carrier;
  auto qr = arc(tree, q, r).carrier;
  auto rp = arc(tree, r, p).carrier;
  auto meet = intersect(pq, qr);
  if (meet) meet = intersect(*meet, rp);
  if (!meet) throw std::logic_error("median: arcs of a tree triple do not meet");
  auto pt = meet->as_single_point(tree);
  if (!pt) throw std::logic_error("median: arcs of a tree triple meet in more than a point");
  return *pt;
}

std::optional<SubDendrite> helly_intersection(std::span<const SubDendrite> family) {
  if (family.empty()) throw InputError("helly_intersection of an empty family");
  std::optional<SubDendrite> acc = family.front();
  for (const auto& y : family.subspan(1)) {
    acc = intersect(*acc, y);
    if (!acc) return std::nullopt;
  }
  return acc;
}

SquareReduction square_reduction(const Dendrite& tree, const std::array<SubDendrite, 4>& z) {
  for (std::size_t i = 0; i < 4; ++i) {
    if (!intersect(z[i], z[(i + 1) % 4])) {
      throw InputError("square_reduction: z" + std::to_string(i) + " and z" + std::to_string((i + 1) % 4) +
                       " are disjoint");
    }
  }
  std::array<SubDendrite, 3> first{z[0], z[1], z[2]};
  if (auto meet = helly_intersection(first)) return {SquareTag::k012, meet->representative(tree)};
  std::array<SubDendrite, 3> second{z[1], z[2], z[3]};
  if (auto meet = helly_intersection(second)) return {SquareTag::k123, meet->representative(tree)};
  throw std::logic_error("square_reduction: neither triple meets");
}

Point first_point_retraction(const Dendrite& tree, const SubDendrite& y, const Point& p) {
  if (y.is_empty()) throw InputError("first_point_retraction onto an empty set");
  check_point(tree, p);
  if (y.contains(p)) return p;
  Point target = y.representative(tree);
  auto meet = intersect(arc(tree, p, target).carrier, y);
  // meet is the subarc [r, target]; r is its extremity nearest to p.
  auto tips = meet->extremities(tree);
  Point best = tips.front();
  Rational best_d = distance(tree, p, best);
  for (const auto& t : tips) {
    Rational d = distance(tree, p, t);
    if (d < best_d) {
      best = t;
      best_d = d;
    }
  }
  return best;
}

}  // namespace dendro
