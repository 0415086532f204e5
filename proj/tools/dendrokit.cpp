#include <CLI11.hpp>

#include <algorithm>
#include <cstdint>
#include <cstdio>
#include <filesystem>
#include <functional>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include "dendro/actions.hpp"
#include "dendro/cocycle.hpp"
#include "dendro/dynamics.hpp"
#include "dendro/errors.hpp"
#include "dendro/measures.hpp"
#include "dendro/text_format.hpp"
#include "dendro/tree_ops.hpp"
#include "dendro/universal.hpp"

namespace {

using namespace dendro;

// FNV-1a, 64 bit.
std::uint64_t fnv1a(std::uint64_t h, std::string_view bytes) {
  for (unsigned char c : bytes) {
    h ^= c;
    h *= 1099511628211ULL;
  }
  return h;
}

struct Report {
  std::vector<std::string> lines;
  std::string summary;

  template <class... Fields>
  void row(const Fields&... fields) {
    std::string s;
    ((s += (s.empty() ? "" : "\t"), s += fields), ...);
    lines.push_back(std::move(s));
  }
};

class Inputs {
 public:
  std::string load(const std::string& path) {
    std::string text = read_file(path);
    digest_ = fnv1a(digest_, path);
    digest_ = fnv1a(digest_, text);
    return text;
  }
  std::string digest() const {
    char buf[17];
    std::snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(digest_));
    return buf;
  }

 private:
  std::uint64_t digest_ = 1469598103934665603ULL;
};

std::string approx(const Rational& r) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.6f", r.get_d());
  return buf;
}

std::string dir_of(const std::string& path) { return std::filesystem::path(path).parent_path().string(); }

Dendrite load_tree(Inputs& in, const std::string& path) { return parse_tree(in.load(path), path); }

std::vector<Point> points_flag(const Dendrite& tree, const std::string& flag, const std::string& text) {
  try {
    return parse_point_list(tree, text);
  } catch (const ParseError&) {
    throw;
  } catch (const InputError& e) {
    throw InputError("--" + flag + ": " + e.what());
  }
}

Point point_flag(const Dendrite& tree, const std::string& flag, const std::string& text) {
  try {
    return parse_point(tree, text);
  } catch (const InputError& e) {
    throw InputError("--" + flag + ": " + e.what());
  }
}

std::string yes_no(bool b) { return b ? "yes" : "no"; }

// Per-subcommand options, filled by CLI11.
struct Options {
  std::string tree, measure, map, action, points, target, region, scheme = "spine", exponent = "1";
  std::string p, q, r;
  std::vector<std::string> sets;
  std::size_t depth = 4, n = 3, k = 3, tuple = 3, steps = 8, witness = 6;
  std::uint64_t seed = 1, cap = 5'000'000;
  bool approx = false, sample = false, infinite = false, emit_tree = false;
};

Report run_hull(const Options& o, Inputs& in) {
  const Dendrite tree = load_tree(in, o.tree);
  const auto pts = points_flag(tree, "points", o.points);
  Report rep;
  const SubDendrite h = hull(tree, pts);
  rep.row("hull", format_subdendrite(tree, h));
  rep.row("length", to_string(h.total_length(tree)));
  rep.summary = "hull of " + std::to_string(pts.size()) + " points";
  return rep;
}

Report run_helly(const Options& o, Inputs& in) {
  const Dendrite tree = load_tree(in, o.tree);
  std::vector<SubDendrite> family;
  for (const auto& s : o.sets) {
    if (s.find('{') != std::string::npos || s == "empty")
      family.push_back(parse_subdendrite(tree, s));
    else
      family.push_back(hull(tree, points_flag(tree, "set", s)));
  }
  bool pairwise = true;
  for (std::size_t i = 0; i < family.size(); ++i)
    for (std::size_t j = i + 1; j < family.size(); ++j) pairwise = pairwise && intersect(family[i], family[j]).has_value();
  Report rep;
  rep.row("pairwise", yes_no(pairwise));
  const auto common = helly_intersection(family);
  rep.row("intersection", common ? format_subdendrite(tree, *common) : "empty");
  rep.summary = std::to_string(family.size()) + " sets, " +
                (common ? "common intersection nonempty" : "no common point");
  return rep;
}

Report run_median(const Options& o, Inputs& in) {
  const Dendrite tree = load_tree(in, o.tree);
  const auto pts = points_flag(tree, "points", o.points);
  if (pts.size() != 3) throw InputError("--points: median takes exactly three points");
  Report rep;
  const Point m = median(tree, pts[0], pts[1], pts[2]);
  rep.row("median", format_point(tree, m));
  rep.row("order", std::to_string(order_of_point(tree, m)));
  rep.summary = "median " + format_point(tree, m);
  return rep;
}

Report run_measure_median(const Options& o, Inputs& in) {
  std::optional<Dendrite> tree;
  std::optional<TreeMeasure> mu;
  if (!o.tree.empty()) {
    tree.emplace(load_tree(in, o.tree));
    mu.emplace(parse_measure(*tree, in.load(o.measure), o.measure));
  } else {
    auto file = parse_measure_file(in.load(o.measure), o.measure);
    tree.emplace(std::move(file.tree));
    mu.emplace(std::move(file.measure));
  }
  const MeasureMedian mm = measure_median(*tree, *mu);
  Report rep;
  rep.row("case", to_string(mm.which));
  for (const auto& p : mm.points) rep.row("point", format_point(*tree, p));
  rep.summary = to_string(mm.which) + " median with " + std::to_string(mm.points.size()) + " point(s)";
  return rep;
}

Report run_jordan_center(const Options& o, Inputs& in) {
  const Dendrite tree = load_tree(in, o.tree);
  const auto pts = o.points.empty() ? ends(tree) : points_flag(tree, "points", o.points);
  Report rep;
  const auto c = jordan_center(tree, pts);
  for (const auto& p : c) rep.row("center", format_point(tree, p));
  rep.summary = std::to_string(c.size()) + "-point Jordan center";
  return rep;
}

Report run_cocycle(const Options& o, Inputs& in) {
  const Dendrite tree = load_tree(in, o.tree);
  const Point p = point_flag(tree, "p", o.p), q = point_flag(tree, "q", o.q), r = point_flag(tree, "r", o.r);
  const CocycleValue w = omega(tree, p, q, r);
  Report rep;
  std::istringstream entries(format_cocycle(tree, w));
  for (std::string line; std::getline(entries, line);) {
    std::istringstream fields(line);
    std::vector<std::string> f;
    for (std::string t; fields >> t;) f.push_back(t);
    if (f.size() == 5 && f[0] == "entry") rep.row(f[0], f[1], f[2], f[3], f[4]);
  }
  const bool agrees = omega_coboundary(tree, p, q, r) == w;
  const LpNorm l1 = lp_norm(w, NormExponent::parse("1"));
  const LpNorm linf = lp_norm(w, NormExponent::parse("inf"));
  if (o.approx) {
    rep.row("l1", to_string(*l1.exact), approx(*l1.exact));
    rep.row("linf", to_string(*linf.exact), approx(*linf.exact));
  } else {
    rep.row("l1", to_string(*l1.exact));
    rep.row("linf", to_string(*linf.exact));
  }
  if (o.exponent != "1") {
    const LpNorm lp = lp_norm(w, NormExponent::parse(o.exponent));
    if (lp.exact)
      rep.row("lp", o.exponent, to_string(*lp.exact), approx(*lp.exact));
    else if (lp.power_sum)
      rep.row("lp", o.exponent, "power-sum", to_string(*lp.power_sum), std::to_string(lp.approx));
    else
      rep.row("lp", o.exponent, "approx", std::to_string(lp.approx));
  }
  rep.row("common-arc", yes_no(on_common_arc(tree, p, q, r)));
  rep.row("coboundary", agrees ? "agrees" : "differs");
  rep.summary = "omega supported on " + std::to_string(w.support_size()) + " ordered germ pairs";
  return rep;
}

PLHomeo load_map(Inputs& in, const Dendrite& tree, const std::string& path) {
  return parse_map(tree, in.load(path), path);
}

Report run_fix(const Options& o, Inputs& in) {
  const Dendrite tree = load_tree(in, o.tree);
  const PLHomeo g = load_map(in, tree, o.map);
  Report rep;
  const FixedSet f = fixed_set(g);
  for (const auto& c : f.components) rep.row("component", format_subdendrite(tree, c));
  const FixVerdict v = fix_dichotomy(g);
  rep.row("verdict", to_string(v));
  for (const auto& a : austro_boreal_arcs(g)) rep.row("austro-boreal", format_point(tree, a.from), format_point(tree, a.to));
  rep.summary = std::to_string(f.components.size()) + " fixed component(s), " + to_string(v);
  return rep;
}

Report run_tectonic(const Options& o, Inputs& in) {
  const Dendrite tree = load_tree(in, o.tree);
  const PLHomeo g = load_map(in, tree, o.map);
  const TectonicDecomposition d = tectonic(g);
  Report rep;
  for (const auto& piece : d.austro_boreal)
    rep.row("austro-boreal", format_point(tree, piece.arc.from), format_point(tree, piece.arc.to),
            format_point(tree, piece.attracting), format_subdendrite(tree, piece.region.closure),
            format_point(tree, piece.segment_start), format_point(tree, piece.segment_end));
  for (const auto& k : d.kernel) rep.row("kernel", format_subdendrite(tree, k.set), format_subdendrite(tree, k.fixed));
  rep.summary = std::to_string(d.austro_boreal.size()) + " austro-boreal piece(s), " +
                std::to_string(d.kernel.size()) + " kernel component(s)";
  return rep;
}

WazewskiParams wazewski_params(const Options& o, std::size_t depth) {
  WazewskiParams p;
  p.order = static_cast<std::uint32_t>(o.n);
  p.infinite = o.infinite;
  p.depth = static_cast<std::uint32_t>(depth);
  if (o.scheme == "spine")
    p.scheme = WazewskiScheme::kSpine;
  else if (o.scheme == "full")
    p.scheme = WazewskiScheme::kFull;
  else
    throw InputError("--scheme: expected spine or full, got '" + o.scheme + "'");
  return p;
}

Report run_wazewski(const Options& o, Inputs&) {
  const WazewskiParams params = wazewski_params(o, o.depth);
  const TruncatedWazewski x = generate(params);
  const WazewskiCounts predicted = predicted_counts(params);
  Report rep;
  rep.row("vertices", std::to_string(x.tree.vertex_count()));
  rep.row("leaves", std::to_string(x.leaves().size()), std::to_string(predicted.leaves));
  rep.row("branch", std::to_string(x.branch_vertices().size()), std::to_string(predicted.branch));
  if (o.emit_tree) {
    std::istringstream lines(format_tree(x.tree));
    for (std::string line; std::getline(lines, line);) rep.row("tree", line);
  }
  rep.summary = "D_" + std::to_string(o.n) + (o.infinite ? " (capped infinite order)" : "") + " at depth " +
                std::to_string(o.depth);
  return rep;
}

Report run_tuple_orbits(const Options& o, Inputs&) {
  const TruncatedWazewski x = generate(wazewski_params(o, o.k));
  OrbitOptions opt;
  opt.mode = o.sample ? OrbitMode::kSample : OrbitMode::kExhaustive;
  opt.cap = o.cap;
  opt.seed = o.seed;
  const OrbitCount c = orbit_count(x, o.tuple, opt);
  Report rep;
  const std::string n = std::to_string(o.n), k = std::to_string(o.k), p = std::to_string(o.tuple);
  for (const auto& cls : c.classes) {
    std::string tuple;
    for (VertexId v : cls.representative) tuple += (tuple.empty() ? "" : ",") + x.tree.vertex_name(v);
    rep.row("code", n, k, p, tuple, cls.code);
  }
  rep.row("orbits", n, k, p, std::to_string(c.count));
  if (c.partial) rep.row("partial", "yes");
  rep.summary = std::to_string(c.count) + " orbit class(es) on " + p + "-tuples of distinct leaves";
  return rep;
}

Report run_tree_correspondence(const Options& o, Inputs& in) {
  const Dendrite tree = load_tree(in, o.tree);
  const SimplicialTree s = tree_correspondence(tree);
  Report rep;
  for (std::size_t i = 0; i < s.vertices.size(); ++i) rep.row("node", std::to_string(i), s.vertices[i]);
  for (const auto& [a, b] : s.edges) rep.row("edge", std::to_string(a), std::to_string(b));
  const bool iso = canonical_code(suppress_degree_two(labeled_tree(realize(s)))) ==
                   canonical_code(suppress_degree_two(labeled_tree(tree)));
  rep.row("roundtrip", iso ? "isomorphic" : "different");
  rep.summary = std::to_string(s.vertices.size()) + " nodes, " + std::to_string(s.edges.size()) + " edges";
  return rep;
}

ActionFile load_action(Inputs& in, const std::string& path) {
  return parse_action_file(in.load(path), path, dir_of(path));
}

template <class Space>
void pingpong_report(const Space& space, const Options& o, Report& rep) {
  const auto res = find_free_pair(space, o.depth);
  static const char* anchor_names[] = {"x", "y", "r", "p", "q"};
  for (std::size_t i = 0; i < res.anchors.size(); ++i)
    rep.row("anchor", anchor_names[i], space.format_point(res.anchors[i]));
  static const char* word_names[] = {"g", "h", "f"};
  for (std::size_t i = 0; i < res.searched.size(); ++i)
    rep.row("search", word_names[i], space.names().format(res.searched[i]));
  if (!res.certificate) {
    rep.row("failure", res.failure);
    rep.summary = "no free pair within depth " + std::to_string(o.depth);
    return;
  }
  std::istringstream lines(format_certificate(space, *res.certificate));
  for (std::string line; std::getline(lines, line);) {
    const auto sp = line.find(' ');
    rep.row("cert", line.substr(0, sp), line.substr(sp + 1));
  }
  rep.row("verify", verify_pingpong(space, *res.certificate) ? "true" : "false");
  const WitnessReport w = free_pair_witness(space, *res.certificate, o.witness);
  rep.row("witness", std::to_string(o.witness), std::to_string(w.checked), std::to_string(w.fixing));
  rep.summary = "free pair a=" + space.names().format(res.certificate->a) +
                " b=" + space.names().format(res.certificate->b);
}

Report run_pingpong(const Options& o, Inputs& in) {
  const ActionFile act = load_action(in, o.action);
  Report rep;
  std::visit([&](const auto& space) { pingpong_report(space, o, rep); }, act.space);
  return rep;
}

Report run_proximality(const Options& o, Inputs& in) {
  const ActionFile act = load_action(in, o.action);
  const auto* space = std::get_if<SymbolicSpace>(&act.space);
  if (!space) throw InputError("proximality needs a symbolic action");
  const SymbolicMeasure m = o.measure.empty() ? SymbolicMeasure::cylinder_uniform()
                                              : parse_symbolic_measure(in.load(o.measure), space->rank(), o.measure);
  const SymPoint target = parse_sym_point(o.target, space->rank());
  if (target.kind != SymPoint::Kind::kEnd) throw InputError("--target: expected an end such as (x)");
  const ProximalityResult res = proximality_push(*space, m, target.end, o.steps, o.depth);
  Report rep;
  for (const auto& s : res.steps) {
    if (o.approx)
      rep.row("step", std::to_string(s.n), space->names().format(s.word), to_string(s.mass), approx(s.mass));
    else
      rep.row("step", std::to_string(s.n), space->names().format(s.word), to_string(s.mass));
  }
  if (!res.failure.empty()) rep.row("failure", res.failure);
  rep.summary = std::to_string(res.steps.size()) + " step(s)" +
                (res.steps.empty() ? "" : ", last mass " + to_string(res.steps.back().mass));
  return rep;
}

Report run_move_off(const Options& o, Inputs& in) {
  const ActionFile act = load_action(in, o.action);
  Report rep;
  std::optional<GenWord> g;
  std::string names;
  if (const auto* sym = std::get_if<SymbolicSpace>(&act.space)) {
    using R = Region<SymbolicSpace>;
    std::optional<R> y;
    if (o.region == "whole")
      y = R::atom(SymPoint::vertex({}), sym->germs_at(SymPoint::vertex({})), true);
    else if (o.region.rfind("cyl:", 0) == 0)
      y = sym->cylinder(parse_word(o.region.substr(4), sym->rank()));
    else
      y = R::singleton(parse_sym_point(o.region, sym->rank()));
    rep.row("region", y->format(*sym));
    g = move_off(*sym, *y, o.depth);
    if (g) rep.row("word", sym->names().format(*g));
  } else {
    const auto& pl = std::get<PLSpace>(act.space);
    const SubDendrite s = o.region == "whole" ? SubDendrite::whole(pl.tree())
                                              : hull(pl.tree(), points_flag(pl.tree(), "region", o.region));
    rep.row("region", format_subdendrite(pl.tree(), s));
    g = move_off(pl, pl.region_of(s), o.depth);
    if (g) rep.row("word", pl.names().format(*g));
  }
  if (!g) rep.row("failure", "no word of length <= " + std::to_string(o.depth) + " moves the region off itself");
  rep.summary = g ? "region moved off itself" : "move-off search exhausted";
  return rep;
}

template <class Space>
void elementarity_report(const Space& space, const Options& o, Report& rep) {
  const auto v = elementarity_certificate(space, o.depth);
  rep.row("verdict", to_string(v.kind));
  for (const auto& p : v.points) rep.row("point", space.format_point(p));
  rep.summary = to_string(v.kind);
}

Report run_elementarity(const Options& o, Inputs& in) {
  const ActionFile act = load_action(in, o.action);
  Report rep;
  std::visit([&](const auto& space) { elementarity_report(space, o, rep); }, act.space);
  return rep;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Exact computations on finite dendrites and group actions"};
  app.require_subcommand(1);
  Options o;
  using Runner = std::function<Report(const Options&, Inputs&)>;
  std::vector<std::pair<CLI::App*, Runner>> commands;

  const auto add = [&](const std::string& name, const std::string& help, Runner run) {
    CLI::App* sub = app.add_subcommand(name, help);
    commands.emplace_back(sub, std::move(run));
    return sub;
  };
  const auto tree_opt = [&](CLI::App* sub) { sub->add_option("--tree", o.tree, "tree file")->required(); };

  auto* helly = add("helly", "common point of pairwise-intersecting sub-dendrites", run_helly);
  tree_opt(helly);
  helly->add_option("--set", o.sets, "point list (hull) or sub-dendrite literal; repeatable")->required();

  auto* hull_cmd = add("hull", "smallest sub-dendrite containing points", run_hull);
  tree_opt(hull_cmd);
  hull_cmd->add_option("--points", o.points, "comma-separated points")->required();

  auto* med = add("median", "median of three points", run_median);
  tree_opt(med);
  med->add_option("--points", o.points, "three comma-separated points")->required();

  auto* mm = add("measure-median", "median of a probability measure", run_measure_median);
  mm->add_option("--tree", o.tree, "tree file (otherwise read from the measure file)");
  mm->add_option("--measure", o.measure, "measure file")->required();

  auto* jc = add("jordan-center", "Jordan center of the hull of points", run_jordan_center);
  tree_opt(jc);
  jc->add_option("--points", o.points, "points (default: the ends)");

  auto* coc = add("cocycle", "the cocycle omega(p, q, r) and its norms", run_cocycle);
  tree_opt(coc);
  coc->add_option("--p", o.p)->required();
  coc->add_option("--q", o.q)->required();
  coc->add_option("--r", o.r)->required();
  coc->add_option("--exponent", o.exponent, "extra l^p exponent (rational or inf)");
  coc->add_flag("--approx", o.approx, "decimal display columns");

  auto* fix = add("fix", "fixed set and the connected-Fix / austro-boreal dichotomy", run_fix);
  tree_opt(fix);
  fix->add_option("--map", o.map, "map file")->required();

  auto* tec = add("tectonic", "tectonic decomposition", run_tectonic);
  tree_opt(tec);
  tec->add_option("--map", o.map, "map file")->required();

  auto* waz = add("wazewski", "truncated universal dendrite", run_wazewski);
  waz->add_option("--n", o.n, "branch order")->check(CLI::Range(3, 1000));
  waz->add_option("--depth", o.depth, "generations");
  waz->add_option("--scheme", o.scheme, "spine or full");
  waz->add_flag("--infinite", o.infinite, "treat --n as the cap for infinite order");
  waz->add_flag("--emit-tree", o.emit_tree, "print the generated tree");

  auto* to = add("tuple-orbits", "orbit classes on tuples of distinct leaves", run_tuple_orbits);
  to->add_option("--n", o.n, "branch order")->check(CLI::Range(3, 1000));
  to->add_option("--k", o.k, "depth");
  to->add_option("--p", o.tuple, "tuple length")->check(CLI::Range(1, 12));
  to->add_option("--scheme", o.scheme, "spine or full");
  to->add_flag("--infinite", o.infinite, "treat --n as the cap for infinite order");
  to->add_flag("--sample", o.sample, "sample tuples instead of enumerating");
  to->add_option("--seed", o.seed, "sampling seed");
  to->add_option("--cap", o.cap, "enumeration or sample cap");

  auto* tc = add("tree-correspondence", "simplicial tree on branch points and ends", run_tree_correspondence);
  tree_opt(tc);

  auto* pp = add("pingpong", "constructive ping-pong free pair", run_pingpong);
  pp->add_option("--action", o.action, "action file")->required();
  pp->add_option("--depth", o.depth, "word search depth");
  pp->add_option("--witness", o.witness, "length bound for the relation check");

  auto* prox = add("proximality", "push a measure toward an end", run_proximality);
  prox->add_option("--action", o.action, "symbolic action file")->required();
  prox->add_option("--measure", o.measure, "atom/boundary measure file (default: cylinder-uniform)");
  prox->add_option("--target", o.target, "target end, e.g. (x)")->required();
  prox->add_option("--steps", o.steps, "number of steps");
  prox->add_option("--depth", o.depth, "word search depth");
  prox->add_flag("--approx", o.approx, "decimal display columns");

  auto* mo = add("move-off", "word moving a region off itself", run_move_off);
  mo->add_option("--action", o.action, "action file")->required();
  mo->add_option("--region", o.region, "whole, cyl:<word>, a point, or a PL point list (hull)")->required();
  mo->add_option("--depth", o.depth, "word search depth");

  auto* el = add("elementarity", "fixed point / invariant pair / finite orbit search", run_elementarity);
  el->add_option("--action", o.action, "action file")->required();
  el->add_option("--depth", o.depth, "orbit search depth");

  if (argc > 1 && argv[1][0] != '-') {
    const std::string name = argv[1];
    const bool known = std::any_of(commands.begin(), commands.end(),
                                   [&](const auto& c) { return c.first->get_name() == name; });
    if (!known) {
      std::cerr << "dendrokit: unknown subcommand '" << name << "'\n";
      return 2;
    }
  }
  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    std::cerr << "dendrokit: " << e.what() << "\n";
    return 2;
  }
  std::string echo = "dendrokit";
  for (int i = 1; i < argc; ++i) echo += std::string(" ") + argv[i];

  for (const auto& [sub, run] : commands) {
    if (!sub->parsed()) continue;
    Inputs in;
    Report rep;
    try {
      rep = run(o, in);
    } catch (const ParseError& e) {
      std::cerr << "dendrokit: parse error: " << e.what() << "\n";
      return 2;
    } catch (const InputError& e) {
      std::cerr << "dendrokit: input error: " << e.what() << "\n";
      return 2;
    }
    std::cout << "# " << echo << "\n";
    std::cout << "# inputs " << in.digest() << "\n";
    for (const auto& line : rep.lines) std::cout << line << "\n";
    std::cout << "# summary: " << rep.summary << "\n";
    return 0;
  }
  return 2;
}
