#include <gtest/gtest.h>

#include <array>

#include "dendro/errors.hpp"
#include "dendro/tree_ops.hpp"
#include "oracles.hpp"

using namespace dendro;

namespace {

std::vector<Point> random_points(oracle::Rng& rng, const Dendrite& t, int lo, int hi) {
  std::vector<Point> pts;
  const int n = oracle::uniform(rng, lo, hi);
  for (int i = 0; i < n; ++i) pts.push_back(oracle::random_point(rng, t));
  return pts;
}

SubDendrite random_subdendrite(oracle::Rng& rng, const Dendrite& t) {
  if (oracle::uniform(rng, 0, 3) == 0) {
    const Point s = oracle::random_point(rng, t);
    const Point x = oracle::random_point(rng, t);
    if (s != x) return u_side(t, s, x);
  }
  const auto pts = random_points(rng, t, 1, 3);
  return hull(t, pts);
}

Dendrite tripod() {
  return Dendrite({"c", "a", "b", "d"}, {{"ea", VertexId{0}, VertexId{1}, Rational(1)},
                                         {"eb", VertexId{0}, VertexId{2}, Rational(1)},
                                         {"ed", VertexId{0}, VertexId{3}, Rational(1)}});
}

}  // namespace

TEST(Distance, MatchesTraversal) {
  oracle::Rng rng(21);
  for (int i = 0; i < 60; ++i) {
    Dendrite t = oracle::random_tree(rng, 1 + i % 12);
    oracle::Metric d(t);
    for (int j = 0; j < 10; ++j) {
      Point p = oracle::random_point(rng, t), q = oracle::random_point(rng, t);
      EXPECT_EQ(distance(t, p, q), d(p, q));
    }
  }
}

TEST(Arc, DegenerateAndCarrierIsHull) {
  Dendrite t = tripod();
  const Point a = Point::at_vertex(VertexId{1});
  EXPECT_EQ(arc(t, a, a).carrier, SubDendrite::point(t, a));
  oracle::Rng rng(22);
  for (int i = 0; i < 40; ++i) {
    Dendrite r = oracle::random_tree(rng, 2 + i % 10);
    Point p = oracle::random_point(rng, r), q = oracle::random_point(rng, r);
    std::vector<Point> two{p, q};
    const Arc ar = arc(r, p, q);
    EXPECT_EQ(ar.carrier, hull(r, two));
    EXPECT_TRUE(ar.carrier.is_arc(r));
  }
}

TEST(Arc, TwoLeavesOfTripod) {
  Dendrite t = tripod();
  const Arc ar = arc(t, Point::at_vertex(VertexId{1}), Point::at_vertex(VertexId{2}));
  EXPECT_TRUE(ar.carrier.contains(Point::at_vertex(VertexId{0})));
  EXPECT_FALSE(ar.carrier.contains(Point::on_edge(t, EdgeId{2}, Rational(1, 2))));
}

TEST(Hull, MatchesPointwiseOracle) {
  oracle::Rng rng(23);
  for (int i = 0; i < 150; ++i) {
    Dendrite t = oracle::random_tree(rng, 1 + i % 13);
    const auto pts = random_points(rng, t, 1, 5);
    const SubDendrite h = hull(t, pts);
    oracle::Metric d(t);
    oracle::Subdivision sub(t);
    for (const auto& p : pts) sub.add(p);
    for (const Point& x : sub.sample()) EXPECT_EQ(h.contains(x), d.in_hull(pts, x));
  }
}

TEST(Hull, EmptyInputThrows) {
  Dendrite t = tripod();
  std::vector<Point> none;
  EXPECT_THROW(hull(t, none), InputError);
}

TEST(Hull, LeavesOfTripodGiveWholeTree) {
  Dendrite t = tripod();
  std::vector<Point> leaves{Point::at_vertex(VertexId{1}), Point::at_vertex(VertexId{2}), Point::at_vertex(VertexId{3})};
  EXPECT_EQ(hull(t, leaves), SubDendrite::whole(t));
}

TEST(Median, LiesOnAllThreeArcs) {
  oracle::Rng rng(24);
  for (int i = 0; i < 200; ++i) {
    Dendrite t = oracle::random_tree(rng, 1 + i % 12);
    oracle::Metric d(t);
    Point p = oracle::random_point(rng, t), q = oracle::random_point(rng, t), r = oracle::random_point(rng, t);
    const Point m = median(t, p, q, r);
    EXPECT_TRUE(d.on_arc(p, m, q));
    EXPECT_TRUE(d.on_arc(q, m, r));
    EXPECT_TRUE(d.on_arc(r, m, p));
    EXPECT_EQ(median(t, p, p, r), p);
  }
}

TEST(Components, PartitionComplement) {
  oracle::Rng rng(25);
  for (int i = 0; i < 60; ++i) {
    Dendrite t = oracle::random_tree(rng, 2 + i % 10);
    const Point p = oracle::random_point(rng, t);
    const auto cs = components_minus(t, p);
    oracle::Subdivision sub(t);
    sub.add(p);
    for (const Point& x : sub.sample()) {
      int n = 0;
      for (const auto& c : cs) n += c.closure.contains(x);
      EXPECT_EQ(n, x == p ? static_cast<int>(cs.size()) : 1);
    }
    for (std::size_t a = 0; a < cs.size(); ++a)
      for (std::size_t b = a + 1; b < cs.size(); ++b)
        EXPECT_EQ(*intersect(cs[a].closure, cs[b].closure), SubDendrite::point(t, p));
  }
}

TEST(USide, MatchesSeparationOracleAndNests) {
  oracle::Rng rng(26);
  for (int i = 0; i < 100; ++i) {
    Dendrite t = oracle::random_tree(rng, 2 + i % 11);
    oracle::Metric d(t);
    const Point s = oracle::random_point(rng, t), tt = oracle::random_point(rng, t);
    if (s == tt) {
      EXPECT_THROW(u_side(t, s, tt), InputError);
      continue;
    }
    const SubDendrite u = u_side(t, s, tt);
    oracle::Subdivision sub(t);
    sub.add(s);
    sub.add(tt);
    for (const Point& x : sub.sample()) EXPECT_EQ(u.contains(x), x == s || !d.on_arc(x, s, tt));
    const Point mid = median(t, s, tt, oracle::random_point(rng, t));
    if (mid != s && mid != tt) EXPECT_TRUE(u_side(t, mid, tt).is_subset_of(u));
  }
}

TEST(USide, EdgeMidpoint) {
  Dendrite t({"a", "b"}, {{"e", VertexId{0}, VertexId{1}, Rational(1)}});
  const SubDendrite u = u_side(t, Point::on_edge(t, EdgeId{0}, Rational(1, 2)), Point::at_vertex(VertexId{0}));
  EXPECT_TRUE(u.contains(Point::on_edge(t, EdgeId{0}, Rational(1, 4))));
  EXPECT_FALSE(u.contains(Point::on_edge(t, EdgeId{0}, Rational(3, 4))));
}

TEST(Helly, TripodLegs) {
  Dendrite t = tripod();
  std::vector<SubDendrite> legs;
  for (std::uint32_t e = 0; e < 3; ++e) {
    std::vector<Point> pts{Point::at_vertex(VertexId{0}), Point::at_vertex(VertexId{e + 1})};
    legs.push_back(hull(t, pts));
  }
  EXPECT_EQ(*helly_intersection(legs), SubDendrite::point(t, Point::at_vertex(VertexId{0})));
  std::vector<SubDendrite> whole{SubDendrite::whole(t), SubDendrite::whole(t)};
  EXPECT_EQ(*helly_intersection(whole), SubDendrite::whole(t));
}

TEST(Helly, PairwiseIntersectingFamiliesMatchPointwiseOracle) {
  oracle::Rng rng(27);
  int tested = 0;
  for (int i = 0; i < 400; ++i) {
    Dendrite t = oracle::random_tree(rng, 2 + i % 12);
    std::vector<SubDendrite> fam;
    const int k = oracle::uniform(rng, 2, 6);
    for (int tries = 0; tries < 40 && static_cast<int>(fam.size()) < k; ++tries) {
      SubDendrite s = random_subdendrite(rng, t);
      bool ok = true;
      for (const auto& f : fam) ok = ok && intersect(f, s).has_value();
      if (ok) fam.push_back(s);
    }
    if (fam.size() < 2) continue;
    ++tested;
    const auto got = helly_intersection(fam);
    ASSERT_TRUE(got.has_value());
    oracle::Subdivision sub(t);
    for (const auto& f : fam) sub.add(f);
    bool any = false;
    for (const Point& x : sub.sample()) {
      bool all = true;
      for (const auto& f : fam) all = all && f.contains(x);
      any = any || all;
      EXPECT_EQ(got->contains(x), all);
    }
    EXPECT_TRUE(any);
  }
  EXPECT_GT(tested, 300);
}

TEST(SquareReduction, TieBreakAndPrecondition) {
  Dendrite t = tripod();
  std::array<SubDendrite, 4> all{SubDendrite::whole(t), SubDendrite::whole(t), SubDendrite::whole(t), SubDendrite::whole(t)};
  EXPECT_EQ(square_reduction(t, all).tag, SquareTag::k012);
  const auto leaf = [&](std::uint32_t v) { return SubDendrite::point(t, Point::at_vertex(VertexId{v})); };
  std::array<SubDendrite, 4> bad{leaf(1), leaf(2), leaf(1), leaf(2)};
  EXPECT_THROW(square_reduction(t, bad), InputError);
}

TEST(SquareReduction, OnlyOneTwoThree) {
  // z0 = [a, mid], z1 = [mid, b], z2 = [c, d], z3 = [d, a]; only z1, z2, z3 meet (at c).
  Dendrite t = tripod();
  const Point a = Point::at_vertex(VertexId{1}), b = Point::at_vertex(VertexId{2}), d = Point::at_vertex(VertexId{3});
  const Point c = Point::at_vertex(VertexId{0});
  const Point mid_a = Point::on_edge(t, EdgeId{0}, Rational(1, 2));
  std::vector<Point> z0p{a, mid_a}, z1p{mid_a, b}, z2p{c, d}, z3p{d, a};
  std::array<SubDendrite, 4> z{hull(t, z0p), hull(t, z1p), hull(t, z2p), hull(t, z3p)};
  const auto r = square_reduction(t, z);
  EXPECT_EQ(r.tag, SquareTag::k123);
  EXPECT_TRUE(z[1].contains(r.witness) && z[2].contains(r.witness) && z[3].contains(r.witness));
  EXPECT_FALSE(z[0].contains(r.witness));
}

TEST(SquareReduction, RandomWitnessesAreValid) {
  oracle::Rng rng(28);
  int tested = 0;
  for (int i = 0; i < 400 && tested < 150; ++i) {
    Dendrite t = oracle::random_tree(rng, 3 + i % 9);
    std::array<SubDendrite, 4> z{random_subdendrite(rng, t), random_subdendrite(rng, t), random_subdendrite(rng, t),
                                 random_subdendrite(rng, t)};
    bool pre = true;
    for (int j = 0; j < 4; ++j) pre = pre && intersect(z[j], z[(j + 1) % 4]).has_value();
    if (!pre) continue;
    ++tested;
    const auto r = square_reduction(t, z);
    const int first = r.tag == SquareTag::k012 ? 0 : 1;
    for (int j = first; j < first + 3; ++j) EXPECT_TRUE(z[j].contains(r.witness));
    oracle::Subdivision sub(t);
    for (const auto& s : z) sub.add(s);
    bool has012 = false;
    for (const Point& x : sub.sample()) has012 = has012 || (z[0].contains(x) && z[1].contains(x) && z[2].contains(x));
    EXPECT_EQ(r.tag == SquareTag::k012, has012);
  }
  EXPECT_GT(tested, 50);
}

TEST(Retraction, MatchesNearestPointOracle) {
  oracle::Rng rng(29);
  for (int i = 0; i < 150; ++i) {
    Dendrite t = oracle::random_tree(rng, 2 + i % 11);
    oracle::Metric d(t);
    const SubDendrite y = random_subdendrite(rng, t);
    const Point p = oracle::random_point(rng, t);
    const Point r = first_point_retraction(t, y, p);
    oracle::Subdivision sub(t);
    sub.add(y);
    sub.add(p);
    std::optional<Point> best;
    for (const Point& x : sub.sample())
      if (y.contains(x) && (!best || d(p, x) < d(p, *best))) best = x;
    ASSERT_TRUE(best);
    EXPECT_EQ(r, *best);
    if (y.contains(p)) EXPECT_EQ(r, p);
  }
}

TEST(Retraction, OppositeLeaf) {
  Dendrite t = tripod();
  std::vector<Point> leg{Point::at_vertex(VertexId{1}), Point::on_edge(t, EdgeId{0}, Rational(1, 3))};
  const SubDendrite y = hull(t, leg);
  EXPECT_EQ(first_point_retraction(t, y, Point::at_vertex(VertexId{2})), Point::on_edge(t, EdgeId{0}, Rational(1, 3)));
}

TEST(Hull, HausdorffSurrogate) {
  oracle::Rng rng(30);
  for (int i = 0; i < 60; ++i) {
    Dendrite t = oracle::random_tree(rng, 2 + i % 9);
    oracle::Metric d(t);
    const auto a = random_points(rng, t, 1, 4);
    std::vector<Point> b;
    for (std::size_t j = 0; j < a.size(); ++j) b.push_back(oracle::uniform(rng, 0, 1) ? a[j] : oracle::random_point(rng, t));
    Rational hab = 0, maxlen = 0;
    for (std::size_t j = 0; j < a.size(); ++j) hab = std::max(hab, d(a[j], b[j]));
    for (std::uint32_t e = 0; e < t.edge_count(); ++e) maxlen = std::max(maxlen, t.length(EdgeId{e}));
    const SubDendrite ha = hull(t, a), hb = hull(t, b);
    oracle::Subdivision sub(t);
    sub.add(ha);
    sub.add(hb);
    const auto grid = sub.sample();
    const auto directed = [&](const SubDendrite& from, const SubDendrite& to) {
      Rational worst = 0;
      for (const Point& x : grid) {
        if (!from.contains(x)) continue;
        Rational best = -1;
        for (const Point& y : grid)
          if (to.contains(y) && (best < 0 || d(x, y) < best)) best = d(x, y);
        worst = std::max(worst, best);
      }
      return worst;
    };
    EXPECT_LE(std::max(directed(ha, hb), directed(hb, ha)), hab + maxlen);
  }
}
