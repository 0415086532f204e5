// Acceptance run: one PASS/FAIL line per criterion, each checked against a
// brute-force reference from oracles.hpp or an independent computation here.

#include <array>
#include <chrono>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <functional>
#include <iostream>
#include <sstream>
#include <sys/wait.h>

#include "dendro/actions.hpp"
#include "dendro/cocycle.hpp"
#include "dendro/dynamics.hpp"
#include "dendro/measures.hpp"
#include "dendro/text_format.hpp"
#include "dendro/tree_ops.hpp"
#include "dendro/universal.hpp"
#include "oracles.hpp"

using namespace dendro;

namespace {

using Clock = std::chrono::steady_clock;

struct Outcome {
  bool ok = true;
  std::string detail;

  void fail(const std::string& why) {
    if (ok) detail = why;
    ok = false;
  }
};

Point V(std::uint32_t v) { return Point::at_vertex(VertexId{v}); }

SubDendrite random_subdendrite(oracle::Rng& rng, const Dendrite& t) {
  if (oracle::uniform(rng, 0, 3) == 0) {
    const Point s = oracle::random_point(rng, t), x = oracle::random_point(rng, t);
    if (s != x) return u_side(t, s, x);
  }
  std::vector<Point> pts;
  const int k = oracle::uniform(rng, 1, 3);
  for (int i = 0; i < k; ++i) pts.push_back(oracle::random_point(rng, t));
  return hull(t, pts);
}

// 1 ---------------------------------------------------------------------------

Outcome helly_equivalence() {
  Outcome out;
  oracle::Rng rng(1001);
  int trials = 0;
  while (trials < 1000) {
    Dendrite t = oracle::random_tree(rng, static_cast<std::size_t>(oracle::uniform(rng, 2, 14)));
    const int k = oracle::uniform(rng, 2, 6);
    std::vector<SubDendrite> fam;
    for (int tries = 0; tries < 60 && static_cast<int>(fam.size()) < k; ++tries) {
      const SubDendrite s = random_subdendrite(rng, t);
      // Pairwise intersection decided on a common subdivision.
      oracle::Subdivision sub(t);
      sub.add(s);
      for (const auto& f : fam) sub.add(f);
      const auto grid = sub.sample();
      bool ok = true;
      for (const auto& f : fam) {
        bool meet = false;
        for (const Point& x : grid) meet = meet || (f.contains(x) && s.contains(x));
        ok = ok && meet;
      }
      if (ok) fam.push_back(s);
    }
    if (fam.size() < 2) continue;
    ++trials;
    const auto got = helly_intersection(fam);
    if (!got) {
      out.fail("empty result at trial " + std::to_string(trials));
      continue;
    }
    oracle::Subdivision sub(t);
    for (const auto& f : fam) sub.add(f);
    sub.add(*got);
    bool any = false;
    for (const Point& x : sub.sample()) {
      bool all = true;
      for (const auto& f : fam) all = all && f.contains(x);
      any = any || all;
      if (got->contains(x) != all) out.fail("pointwise mismatch at " + format_point(t, x));
    }
    if (!any) out.fail("oracle intersection empty");
  }
  out.detail = out.ok ? "1000 families" : out.detail;
  return out;
}

// 2 ---------------------------------------------------------------------------

TreeMeasure random_measure(oracle::Rng& rng, const Dendrite& t) {
  const bool atoms = oracle::uniform(rng, 0, 1);
  const int na = atoms ? oracle::uniform(rng, 1, 4) : 0;
  const int nd = atoms ? oracle::uniform(rng, 0, 3) : oracle::uniform(rng, 1, 4);
  std::vector<int> w;
  int total = 0;
  for (int i = 0; i < na + nd; ++i) {
    w.push_back(oracle::uniform(rng, 1, 3));
    total += w.back();
  }
  std::map<Point, Rational> a;
  std::map<EdgeId, Rational> dens;
  for (int i = 0; i < na; ++i) a[oracle::random_point(rng, t)] += oracle::q(w[static_cast<std::size_t>(i)], total);
  for (int i = 0; i < nd; ++i) {
    const EdgeId e{static_cast<std::uint32_t>(oracle::uniform(rng, 0, static_cast<int>(t.edge_count()) - 1))};
    dens[e] += oracle::q(w[static_cast<std::size_t>(na + i)], total);
  }
  return TreeMeasure(t, a, dens);
}

Outcome median_equivariance() {
  Outcome out;
  oracle::Rng rng(1002);
  for (int i = 0; i < 300; ++i) {
    const auto c = oracle::random_symmetric(rng, static_cast<std::size_t>(1 + i % 5));
    const TreeMeasure mu = random_measure(rng, c.tree);
    const auto before = measure_median(c.tree, mu);
    const auto after = measure_median(c.tree, pushforward(c.tree, mu, c.g));
    std::vector<Point> moved;
    for (const Point& p : before.points) moved.push_back(c.g.apply(c.tree, p));
    std::sort(moved.begin(), moved.end());
    if (after.points != moved) out.fail("median not equivariant at triple " + std::to_string(i));
    if (before.points.empty() || before.points.size() > 2) out.fail("cardinality " + std::to_string(before.points.size()));
  }
  if (out.ok) out.detail = "300 triples";
  return out;
}

// 3 ---------------------------------------------------------------------------

// α and ω evaluated densely at every germ pair, sides decided by distances.
struct DenseCocycle {
  const Dendrite* t;
  oracle::Metric d;
  explicit DenseCocycle(const Dendrite& tree) : t(&tree), d(tree) {}

  int side(VertexId x, EdgeId e, const Point& p) const {
    return p != V(x.value) && !d.on_arc(p, V(x.value), Point::on_edge(*t, e, Rational(1, 2)));
  }
  int alpha(VertexId x, EdgeId c, EdgeId c2, const Point& p, const Point& q) const {
    return side(x, c, p) * side(x, c2, q) - side(x, c, q) * side(x, c2, p);
  }
  int omega(VertexId x, EdgeId c, EdgeId c2, const Point& p, const Point& q, const Point& r) const {
    return alpha(x, c, c2, p, q) + alpha(x, c, c2, q, r) + alpha(x, c, c2, r, p);
  }
  // Entrywise comparison plus dense ℓ¹ and ℓ∞.
  bool equal(const CocycleValue& v, const Point& p, const Point& q, const Point& r, int& l1, int& linf) const {
    l1 = linf = 0;
    bool ok = true;
    for (std::uint32_t x = 0; x < t->vertex_count(); ++x) {
      const VertexId vx{x};
      if (t->degree(vx) < 3) continue;
      for (EdgeId c : t->incident(vx))
        for (EdgeId c2 : t->incident(vx)) {
          if (c == c2) continue;
          const int w = omega(vx, c, c2, p, q, r);
          l1 += std::abs(w);
          linf = std::max(linf, std::abs(w));
          ok = ok && v.at(germ_along(*t, vx, c), germ_along(*t, vx, c2)) == w;
        }
    }
    return ok;
  }
  bool common_arc(const Point& p, const Point& q, const Point& r) const {
    return d.on_arc(p, q, r) || d.on_arc(q, r, p) || d.on_arc(r, p, q);
  }
};

Outcome cocycle_laws() {
  Outcome out;
  oracle::Rng rng(1003);
  const NormExponent l1{false, Rational(1)}, linf{true, Rational(1)};
  int sixes = 0;
  for (int i = 0; i < 500; ++i) {
    Dendrite t = oracle::random_tree(rng, static_cast<std::size_t>(2 + i % 13));
    DenseCocycle dense(t);
    const Point p = oracle::random_point(rng, t), q = oracle::random_point(rng, t), r = oracle::random_point(rng, t);
    const CocycleValue w = omega(t, p, q, r);
    int dl1 = 0, dinf = 0;
    if (!dense.equal(w, p, q, r, dl1, dinf)) out.fail("omega differs from dense coboundary at triple " + std::to_string(i));
    if (w != omega_coboundary(t, p, q, r)) out.fail("localized and coboundary routes differ");
    const Rational n1 = *lp_norm(w, l1).exact, ninf = *lp_norm(w, linf).exact;
    if (n1 != dl1 || ninf != dinf) out.fail("norm mismatch");
    if (!(n1 == 0 || n1 == 2 || n1 == 6)) out.fail("l1 = " + to_string(n1));
    if ((n1 == 6) == dense.common_arc(p, q, r)) out.fail("l1 = 6 iff not on a common arc");
    if (ninf > 1) out.fail("linf > 1");
    sixes += n1 == 6;
  }
  for (int i = 0; i < 200; ++i) {
    Dendrite t = oracle::random_tree(rng, static_cast<std::size_t>(2 + i % 13));
    DenseCocycle dense(t);
    std::vector<Point> x;
    for (int j = 0; j < 4; ++j) x.push_back(oracle::random_point(rng, t));
    if (!cocycle_identity_check(t, x[0], x[1], x[2], x[3])) out.fail("identity check failed");
    // Homogeneous identity, densely.
    for (std::uint32_t v = 0; v < t.vertex_count(); ++v) {
      const VertexId vx{v};
      if (t.degree(vx) < 3) continue;
      for (EdgeId c : t.incident(vx))
        for (EdgeId c2 : t.incident(vx)) {
          if (c == c2) continue;
          const int s = dense.omega(vx, c, c2, x[1], x[2], x[3]) - dense.omega(vx, c, c2, x[0], x[2], x[3]) +
                        dense.omega(vx, c, c2, x[0], x[1], x[3]) - dense.omega(vx, c, c2, x[0], x[1], x[2]);
          if (s != 0) out.fail("dense identity nonzero");
        }
    }
  }
  if (sixes == 0) out.fail("no non-collinear triple sampled");
  if (out.ok) out.detail = "500 triples, 200 quadruples";
  return out;
}

// 4 ---------------------------------------------------------------------------

Outcome dynamics_suite() {
  Outcome out;
  oracle::Rng rng(1004);
  int with_arcs = 0;
  for (int i = 0; i < 300; ++i) {
    const auto c = oracle::random_symmetric(rng, static_cast<std::size_t>(1 + i % 4));
    const PLHomeo g = oracle::random_homeo(rng, c);
    const Dendrite& t = g.tree();
    const std::string tag = " (homeo " + std::to_string(i) + ")";
    const FixedSet fix = fixed_set(g);
    if (fix.empty()) {
      out.fail("empty fixed set" + tag);
      continue;
    }
    const auto arcs = austro_boreal_arcs(g);
    with_arcs += !arcs.empty();
    if (fix.connected() == !arcs.empty()) out.fail("dichotomy is not exclusive" + tag);
    const TectonicDecomposition dec = tectonic(g);

    oracle::Subdivision sub(t);
    for (std::uint32_t e = 0; e < t.edge_count(); ++e) {
      sub.add(g.edge_map(EdgeId{e}), EdgeId{e});
      sub.add(g.inverse().edge_map(EdgeId{e}), EdgeId{e});
    }
    for (const auto& comp : fix.components) sub.add(comp);
    for (const auto& p : dec.austro_boreal) sub.add(p.region.closure);
    for (const auto& k : dec.kernel) sub.add(k.set);
    const auto grid = sub.sample();
    oracle::Metric d(t);

    std::vector<Point> fixed_pts;
    for (const Point& x : grid) {
      const bool fixed = g.apply(x) == x;
      if (fixed) fixed_pts.push_back(x);
      if (fix.contains(x) != fixed) out.fail("fixed set mismatch" + tag);
      int pieces = 0;
      for (const auto& p : dec.austro_boreal) pieces += p.region.contains(x);
      for (const auto& k : dec.kernel) pieces += k.set.contains(x);
      if (pieces != 1) out.fail("tectonic pieces do not partition" + tag);
    }
    // The O(I) are pairwise disjoint.
    for (std::size_t a = 0; a < dec.austro_boreal.size(); ++a)
      for (std::size_t b = a + 1; b < dec.austro_boreal.size(); ++b)
        for (const Point& x : grid)
          if (dec.austro_boreal[a].region.contains(x) && dec.austro_boreal[b].region.contains(x))
            out.fail("O(I) overlap" + tag);
    for (const auto& k : dec.kernel) {
      if (g.apply(k.set) != k.set) out.fail("kernel component not invariant" + tag);
      std::vector<Point> kf;
      for (const Point& x : fixed_pts)
        if (k.set.contains(x)) kf.push_back(x);
      if (kf.empty()) out.fail("kernel component without fixed point" + tag);
      // Connected: every sampled point between two fixed points is fixed.
      for (const Point& a : kf)
        for (const Point& b : kf)
          for (const Point& x : grid)
            if (d.on_arc(a, x, b) && g.apply(x) != x) out.fail("kernel fixed set disconnected" + tag);
    }
  }
  if (with_arcs == 0) out.fail("no austro-boreal arcs sampled");
  if (out.ok) out.detail = "300 homeomorphisms, " + std::to_string(with_arcs) + " with austro-boreal arcs";
  return out;
}

// 5 ---------------------------------------------------------------------------

// Orbit classes by the four-point condition: a quadruple of leaves has one of
// three split shapes or is a star; triples of leaves are always tripods.
std::size_t oracle_orbits(const TruncatedWazewski& x, std::size_t p) {
  oracle::Metric d(x.tree);
  const auto leaves = x.leaves();
  std::vector<Point> pts;
  for (VertexId v : leaves) pts.push_back(Point::at_vertex(v));
  const std::size_t n = pts.size();
  std::vector<std::vector<Rational>> dist(n, std::vector<Rational>(n));
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) dist[i][j] = d(pts[i], pts[j]);
  std::set<int> shapes;
  if (p == 3) {
    for (std::size_t a = 0; a < n; ++a)
      for (std::size_t b = 0; b < n; ++b)
        for (std::size_t c = 0; c < n; ++c) {
          if (a == b || b == c || a == c) continue;
          const bool tripod = dist[a][b] + dist[b][c] != dist[a][c] && dist[b][a] + dist[a][c] != dist[b][c] &&
                              dist[a][c] + dist[c][b] != dist[a][b];
          shapes.insert(tripod ? 0 : 1);
        }
    return shapes.size();
  }
  for (std::size_t a = 0; a < n; ++a)
    for (std::size_t b = 0; b < n; ++b)
      for (std::size_t c = 0; c < n; ++c)
        for (std::size_t e = 0; e < n; ++e) {
          if (a == b || a == c || a == e || b == c || b == e || c == e) continue;
          const Rational s0 = dist[a][b] + dist[c][e], s1 = dist[a][c] + dist[b][e], s2 = dist[a][e] + dist[b][c];
          if (s0 < s1 && s0 < s2)
            shapes.insert(0);
          else if (s1 < s0 && s1 < s2)
            shapes.insert(1);
          else if (s2 < s0 && s2 < s1)
            shapes.insert(2);
          else
            shapes.insert(3);
        }
  return shapes.size();
}

Outcome orbit_counts(double& library_seconds) {
  Outcome out;
  library_seconds = 0;
  struct Case {
    std::uint32_t n;
    std::size_t p;
    std::size_t expect;
  };
  std::ostringstream summary;
  for (std::uint32_t depth : {3u, 4u})
    for (const Case& c : {Case{3, 3, 1}, Case{4, 3, 1}, Case{3, 4, 3}, Case{4, 4, 4}}) {
      const auto x = generate({c.n, false, depth, WazewskiScheme::kSpine});
      const auto start = Clock::now();
      const auto got = orbit_count(x, c.p);
      library_seconds += std::chrono::duration<double>(Clock::now() - start).count();
      const std::size_t brute = oracle_orbits(x, c.p);
      summary << " D" << c.n << "/k" << depth << "/p" << c.p << "=" << got.count;
      if (got.partial) out.fail("enumeration truncated");
      if (got.count != c.expect || brute != c.expect) {
        std::ostringstream s;
        s << "D" << c.n << " depth " << depth << " p=" << c.p << ": got " << got.count << ", oracle " << brute
          << ", expected " << c.expect;
        out.fail(s.str());
      }
    }
  if (library_seconds >= 60) out.fail("over 60 s");
  if (out.ok) out.detail = summary.str().substr(1);
  return out;
}

// 6 ---------------------------------------------------------------------------

std::vector<std::string> reduced_ab_words(std::size_t n) {
  std::vector<std::string> out, layer{""};
  for (std::size_t len = 1; len <= n; ++len) {
    std::vector<std::string> next;
    for (const auto& w : layer)
      for (char c : std::string("aAbB"))
        if (w.empty() || oracle::reduce_letters(w + c).size() == w.size() + 1) next.push_back(w + c);
    out.insert(out.end(), next.begin(), next.end());
    layer = std::move(next);
  }
  return out;
}

Outcome free_pair() {
  Outcome out;
  const std::string path = std::string(DENDRO_SOURCE_DIR) + "/tests/data/free2.act";
  const ActionFile af = parse_action_file(read_file(path), "free2.act", std::string(DENDRO_SOURCE_DIR) + "/tests/data");
  const auto& s = std::get<SymbolicSpace>(af.space);
  std::optional<PingPongCertificate<SymbolicSpace>> cert;
  std::size_t depth = 0;
  for (std::size_t L = 1; L <= 4 && !cert; ++L) {
    auto r = find_free_pair(s, L);
    if (r.certificate) {
      cert = r.certificate;
      depth = L;
    }
  }
  if (!cert) {
    out.fail("no certificate at L <= 4");
    return out;
  }
  if (!verify_pingpong(s, *cert)) out.fail("verify_pingpong rejected the certificate");
  const std::string a = format_word(s.evaluate(cert->a)), b = format_word(s.evaluate(cert->b));
  std::size_t checked = 0, fixing = 0;
  for (const auto& w : reduced_ab_words(6)) {
    std::string img;
    for (char ch : w) {
      if (ch == 'a') img += a;
      if (ch == 'A') img += oracle::invert_letters(a);
      if (ch == 'b') img += b;
      if (ch == 'B') img += oracle::invert_letters(b);
    }
    // The base vertex is the identity; w moves it iff its image is nontrivial.
    fixing += oracle::reduce_letters(img).empty();
    ++checked;
  }
  const auto wit = free_pair_witness(s, *cert, 6);
  if (checked != 1456 || wit.checked != checked) out.fail("word count " + std::to_string(checked));
  if (fixing != 0 || wit.fixing != 0) out.fail(std::to_string(fixing) + " words fix the base vertex");
  if (out.ok)
    out.detail = "L=" + std::to_string(depth) + " a=" + a + " b=" + b + ", " + std::to_string(checked) +
                 " reduced words of length <= 6 move the base vertex";
  return out;
}

// 7 ---------------------------------------------------------------------------

// Boundary mass of g · Cyl(u) for the cylinder below the edge (u', u), from
// the images of the edge endpoints alone.
Rational translated_cylinder_mass(const std::string& g, const std::string& parent, const std::string& child) {
  const std::string a = oracle::reduce_letters(g + parent), b = oracle::reduce_letters(g + child);
  const auto cyl = [](std::size_t len) {
    Rational m(1, 4);
    for (std::size_t i = 1; i < len; ++i) m /= 3;
    return m;
  };
  if (b.size() == a.size() + 1) return cyl(b.size());
  return 1 - cyl(a.size());
}

Outcome proximality() {
  Outcome out;
  const SymbolicSpace s(2, {"x", "y"}, {parse_word("x", 2), parse_word("y", 2)});
  const auto r = proximality_push(s, SymbolicMeasure::cylinder_uniform(), EndWord::make({}, parse_word("x", 2)), 8, 6);
  if (!r.failure.empty()) {
    out.fail(r.failure);
    return out;
  }
  if (r.steps.size() != 8) out.fail("expected 8 steps");
  std::optional<std::size_t> first;
  std::ostringstream masses;
  for (std::size_t i = 0; i < r.steps.size(); ++i) {
    const auto& st = r.steps[i];
    const std::string w = format_word(s.evaluate(st.word));
    const std::string winv = oracle::invert_letters(w == "1" ? "" : w);
    const std::string v(st.n - 1, 'x');
    const Rational expect = translated_cylinder_mass(winv, v, v + "x");
    if (st.mass != expect) out.fail("step " + std::to_string(st.n) + ": mass " + to_string(st.mass) + ", oracle " + to_string(expect));
    if (!first && st.mass >= Rational(99, 100)) first = i;
    if (first && i > *first && st.mass < r.steps[i - 1].mass) out.fail("mass decreased after first success");
    masses << (i ? " " : "") << to_string(st.mass);
  }
  if (!first) out.fail("mass never reached 99/100");
  if (out.ok) out.detail = "first success at n=" + std::to_string(*first + 1) + "; masses " + masses.str();
  return out;
}

// 8 ---------------------------------------------------------------------------

Outcome correspondence_round_trip() {
  Outcome out;
  oracle::Rng rng(1008);
  for (int i = 0; i < 200; ++i) {
    Dendrite t = oracle::random_tree(rng, static_cast<std::size_t>(2 + i % 15));
    const Dendrite r = realize(tree_correspondence(t));
    if (!oracle::isomorphic(oracle::suppress(oracle::graph_of(r)), oracle::suppress(oracle::graph_of(t))))
      out.fail("round trip not isomorphic at tree " + std::to_string(i));
  }
  if (out.ok) out.detail = "200 dendrites";
  return out;
}

// 9 ---------------------------------------------------------------------------

std::string run_cli(const std::string& args) {
  const std::string cmd = "cd '" + std::string(DENDRO_SOURCE_DIR) + "' && '" + DENDROKIT_EXE + "' " + args + " 2>/dev/null";
  FILE* pipe = popen(cmd.c_str(), "r");
  if (!pipe) return "<popen failed>";
  std::string text;
  std::array<char, 4096> buf{};
  std::size_t got = 0;
  while ((got = std::fread(buf.data(), 1, buf.size(), pipe)) > 0) text.append(buf.data(), got);
  const int status = pclose(pipe);
  const int code = WIFEXITED(status) ? WEXITSTATUS(status) : -1;
  return text + "# exit " + std::to_string(code) + "\n";
}

Outcome cli_determinism() {
  Outcome out;
  namespace fs = std::filesystem;
  const fs::path dir = fs::path(DENDRO_SOURCE_DIR) / "tests" / "golden";
  std::vector<fs::path> cases;
  for (const auto& entry : fs::directory_iterator(dir))
    if (entry.path().extension() == ".args") cases.push_back(entry.path());
  std::sort(cases.begin(), cases.end());
  std::set<std::string> subcommands;
  for (const auto& c : cases) {
    std::string args = read_file(c.string());
    args = args.substr(0, args.find('\n'));
    subcommands.insert(args.substr(0, args.find(' ')));
    fs::path expected = c;
    expected.replace_extension(".out");
    const std::string first = run_cli(args), second = run_cli(args);
    if (first != second) out.fail(c.stem().string() + ": repeated runs differ");
    if (!fs::exists(expected) || first != read_file(expected.string())) out.fail(c.stem().string() + ": differs from golden");
  }
  for (const char* sub : {"helly", "hull", "median", "measure-median", "jordan-center", "cocycle", "fix", "tectonic",
                          "wazewski", "tuple-orbits", "tree-correspondence", "pingpong", "proximality", "move-off",
                          "elementarity"})
    if (!subcommands.count(sub)) out.fail(std::string("no golden case for ") + sub);
  if (out.ok) out.detail = std::to_string(cases.size()) + " golden cases, " + std::to_string(subcommands.size()) + " commands";
  return out;
}

}  // namespace

int main() {
  struct Criterion {
    int id;
    const char* name;
    double limit;  // seconds; 0 for none
    std::function<Outcome(double&)> run;
  };
  const auto plain = [](Outcome (*f)()) { return [f](double&) { return f(); }; };
  const std::vector<Criterion> criteria{
      {1, "helly-oracle-equivalence", 30, plain(helly_equivalence)},
      {2, "measure-median-equivariance", 0, plain(median_equivariance)},
      {3, "cocycle-laws", 0, plain(cocycle_laws)},
      {4, "dynamics-suite", 0, plain(dynamics_suite)},
      {5, "orbit-counts", 0, orbit_counts},
      {6, "free-pair-pipeline", 0, plain(free_pair)},
      {7, "proximality", 0, plain(proximality)},
      {8, "tree-correspondence-round-trip", 0, plain(correspondence_round_trip)},
      {9, "cli-determinism", 0, plain(cli_determinism)},
  };
  int failures = 0;
  for (const auto& c : criteria) {
    const auto start = Clock::now();
    double timed = -1;
    Outcome o;
    try {
      o = c.run(timed);
    } catch (const std::exception& e) {
      o.fail(std::string("exception: ") + e.what());
    }
    const double secs = std::chrono::duration<double>(Clock::now() - start).count();
    if (c.limit > 0 && secs >= c.limit) o.fail("took " + std::to_string(secs) + " s");
    failures += !o.ok;
    std::printf("%s %d %s (%.2f s%s) %s\n", o.ok ? "PASS" : "FAIL", c.id, c.name, secs,
                timed >= 0 ? (", library " + std::to_string(timed).substr(0, 5) + " s").c_str() : "", o.detail.c_str());
    std::fflush(stdout);
  }
  return failures == 0 ? 0 : 1;
}
