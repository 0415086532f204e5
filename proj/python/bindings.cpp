#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include <memory>

#include "dendro/actions.hpp"
#include "dendro/cocycle.hpp"
#include "dendro/dynamics.hpp"
#include "dendro/errors.hpp"
#include "dendro/measures.hpp"
#include "dendro/text_format.hpp"
#include "dendro/tree_ops.hpp"
#include "dendro/universal.hpp"

namespace py = pybind11;
using namespace dendro;

namespace {

py::object fraction(const Rational& r) { return py::module_::import("fractions").attr("Fraction")(to_string(r)); }

// A parsed tree kept alive for the sub-dendrites and points formatted against it.
struct Tree {
  std::shared_ptr<Dendrite> tree;

  static Tree parse(const std::string& text) { return {std::make_shared<Dendrite>(parse_tree(text, "<string>"))}; }
  static Tree load(const std::string& path) { return {std::make_shared<Dendrite>(parse_tree(read_file(path), path))}; }

  Point point(const std::string& s) const { return parse_point(*tree, s); }
  std::vector<Point> points(const std::vector<std::string>& specs) const {
    std::vector<Point> out;
    for (const auto& s : specs) out.push_back(point(s));
    return out;
  }
  std::string fmt(const Point& p) const { return format_point(*tree, p); }
  std::vector<std::string> fmt(const std::vector<Point>& ps) const {
    std::vector<std::string> out;
    for (const auto& p : ps) out.push_back(fmt(p));
    return out;
  }
  SubDendrite set(const std::string& s) const {
    if (s.find('{') != std::string::npos || s == "empty") return parse_subdendrite(*tree, s);
    const auto pts = parse_point_list(*tree, s);
    return hull(*tree, pts);
  }
};

WazewskiParams params(std::uint32_t n, std::uint32_t depth, const std::string& scheme, bool infinite) {
  if (scheme != "spine" && scheme != "full") throw InputError("scheme must be spine or full");
  return {n, infinite, depth, scheme == "full" ? WazewskiScheme::kFull : WazewskiScheme::kSpine};
}

SymbolicSpace symbolic(const std::string& action_text, const std::string& base_dir) {
  const ActionFile af = parse_action_file(action_text, "<action>", base_dir);
  if (!std::holds_alternative<SymbolicSpace>(af.space)) throw InputError("expected a symbolic action");
  return std::get<SymbolicSpace>(af.space);
}

template <class Space>
py::object free_pair(const Space& space, std::size_t depth, std::size_t witness) {
  const auto r = find_free_pair(space, depth);
  if (!r.certificate) return py::none();
  const auto& c = *r.certificate;
  const auto wit = free_pair_witness(space, c, witness);
  py::dict d;
  d["a"] = space.names().format(c.a);
  d["b"] = space.names().format(c.b);
  d["verified"] = verify_pingpong(space, c);
  d["words_checked"] = wit.checked;
  d["words_fixing"] = wit.fixing;
  d["certificate"] = format_certificate(space, c);
  return d;
}

}  // namespace

PYBIND11_MODULE(_dendrokit, m) {
  m.doc() = "Exact computations on finite dendrites and group actions";

  py::register_exception<InputError>(m, "InputError", PyExc_ValueError);

  py::class_<Tree>(m, "Tree")
      .def(py::init(&Tree::parse), py::arg("text"))
      .def_static("from_file", &Tree::load, py::arg("path"))
      .def_property_readonly("vertex_count", [](const Tree& t) { return t.tree->vertex_count(); })
      .def_property_readonly("edge_count", [](const Tree& t) { return t.tree->edge_count(); })
      .def("text", [](const Tree& t) { return format_tree(*t.tree); })
      .def("ends", [](const Tree& t) { return t.fmt(ends(*t.tree)); })
      .def("branch_points", [](const Tree& t) { return t.fmt(branch_points(*t.tree)); })
      .def("distance", [](const Tree& t, const std::string& p, const std::string& q) {
        return fraction(distance(*t.tree, t.point(p), t.point(q)));
      })
      .def("median", [](const Tree& t, const std::string& p, const std::string& q, const std::string& r) {
        return t.fmt(median(*t.tree, t.point(p), t.point(q), t.point(r)));
      })
      .def("hull", [](const Tree& t, const std::vector<std::string>& pts) {
        const auto ps = t.points(pts);
        return format_subdendrite(*t.tree, hull(*t.tree, ps));
      })
      .def("helly", [](const Tree& t, const std::vector<std::string>& sets) -> std::optional<std::string> {
        std::vector<SubDendrite> fam;
        for (const auto& s : sets) fam.push_back(t.set(s));
        const auto got = helly_intersection(fam);
        if (!got) return std::nullopt;
        return format_subdendrite(*t.tree, *got);
      }, "Common intersection of sub-dendrite literals or comma-separated point lists (hulls).")
      .def("jordan_center", [](const Tree& t, std::optional<std::vector<std::string>> pts) {
        const auto ps = pts ? t.points(*pts) : ends(*t.tree);
        return t.fmt(jordan_center(*t.tree, ps));
      }, py::arg("points") = py::none())
      .def("measure_median", [](const Tree& t, const std::string& measure_text) {
        const TreeMeasure mu = parse_measure(*t.tree, measure_text, "<measure>");
        const auto med = measure_median(*t.tree, mu);
        return py::make_tuple(to_string(med.which), t.fmt(med.points));
      })
      .def("cocycle", [](const Tree& t, const std::string& p, const std::string& q, const std::string& r) {
        const Point a = t.point(p), b = t.point(q), c = t.point(r);
        const CocycleValue w = omega(*t.tree, a, b, c);
        py::dict d;
        d["entries"] = format_cocycle(*t.tree, w);
        d["l1"] = fraction(*lp_norm(w, {false, Rational(1)}).exact);
        d["linf"] = fraction(*lp_norm(w, {true, Rational(1)}).exact);
        d["common_arc"] = on_common_arc(*t.tree, a, b, c);
        d["coboundary_agrees"] = w == omega_coboundary(*t.tree, a, b, c);
        return d;
      })
      .def("fixed_set", [](const Tree& t, const std::string& map_text) {
        const PLHomeo g = parse_map(*t.tree, map_text, "<map>");
        std::vector<std::string> comps;
        for (const auto& c : fixed_set(g).components) comps.push_back(format_subdendrite(*t.tree, c));
        return py::make_tuple(comps, to_string(fix_dichotomy(g)));
      })
      .def("tectonic", [](const Tree& t, const std::string& map_text) {
        const PLHomeo g = parse_map(*t.tree, map_text, "<map>");
        const TectonicDecomposition dec = tectonic(g);
        py::list ab, kernel;
        for (const auto& p : dec.austro_boreal) {
          py::dict d;
          d["arc"] = py::make_tuple(t.fmt(p.arc.from), t.fmt(p.arc.to));
          d["attracting"] = t.fmt(p.attracting);
          d["closure"] = format_subdendrite(*t.tree, p.region.closure);
          d["segment"] = py::make_tuple(t.fmt(p.segment_start), t.fmt(p.segment_end));
          ab.append(d);
        }
        for (const auto& k : dec.kernel)
          kernel.append(py::make_tuple(format_subdendrite(*t.tree, k.set), format_subdendrite(*t.tree, k.fixed)));
        return py::make_tuple(ab, kernel);
      })
      .def("tree_correspondence", [](const Tree& t) {
        const SimplicialTree s = tree_correspondence(*t.tree);
        return py::make_tuple(s.vertices, s.edges);
      })
      .def("__repr__", [](const Tree& t) {
        return "<Tree " + std::to_string(t.tree->vertex_count()) + " vertices>";
      });

  m.def("wazewski", [](std::uint32_t n, std::uint32_t depth, const std::string& scheme, bool infinite) {
    return Tree{std::make_shared<Dendrite>(generate(params(n, depth, scheme, infinite)).tree)};
  }, py::arg("n"), py::arg("depth"), py::arg("scheme") = "spine", py::arg("infinite") = false);

  m.def("orbit_count", [](std::uint32_t n, std::uint32_t depth, std::size_t p, const std::string& scheme) {
    const auto x = generate(params(n, depth, scheme, false));
    const auto r = orbit_count(x, p);
    std::vector<std::string> codes;
    for (const auto& c : r.classes) codes.push_back(c.code);
    return py::make_tuple(r.count, codes);
  }, py::arg("n"), py::arg("depth"), py::arg("p"), py::arg("scheme") = "spine");

  m.def("reduce_word", [](const std::string& w, int rank) { return format_word(parse_word(w, rank)); },
        py::arg("word"), py::arg("rank") = 2);

  m.def("find_free_pair", [](const std::string& action_text, std::size_t depth, std::size_t witness,
                             const std::string& base_dir) {
    const ActionFile af = parse_action_file(action_text, "<action>", base_dir);
    return std::visit([&](const auto& space) { return free_pair(space, depth, witness); }, af.space);
  }, py::arg("action"), py::arg("depth") = 4, py::arg("witness") = 6, py::arg("base_dir") = ".");

  m.def("proximality", [](const std::string& action_text, const std::string& target, std::size_t steps,
                          std::size_t depth, std::optional<std::string> measure_text) {
    const SymbolicSpace s = symbolic(action_text, ".");
    const SymPoint x = parse_sym_point(target, s.rank());
    if (x.kind != SymPoint::Kind::kEnd) throw InputError("target must be an end, e.g. (x)");
    const SymbolicMeasure mu = measure_text ? parse_symbolic_measure(*measure_text, s.rank(), "<measure>")
                                            : SymbolicMeasure::cylinder_uniform();
    const auto r = proximality_push(s, mu, x.end, steps, depth);
    py::list out;
    for (const auto& st : r.steps) out.append(py::make_tuple(st.n, s.names().format(st.word), fraction(st.mass)));
    return py::make_tuple(out, r.failure);
  }, py::arg("action"), py::arg("target"), py::arg("steps") = 8, py::arg("depth") = 6,
     py::arg("measure") = py::none());
}
