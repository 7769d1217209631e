#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "womega/fixtures.hpp"
#include "womega/io.hpp"
#include "womega/strict.hpp"

namespace py = pybind11;
using namespace womega;

namespace {

std::vector<std::vector<std::string>> class_names(const Span& s, const PiResult& p) {
  const MagmaView& x1 = *s.x1;
  std::vector<Cell> objects = x1.cells(0, 0);
  std::vector<std::vector<std::string>> out;
  for (const auto& cls : p.classes) {
    out.emplace_back();
    for (int k : cls) out.back().push_back(x1.show(objects[k]));
  }
  return out;
}

}  // namespace

PYBIND11_MODULE(_core, m) {
  m.doc() = "Finite presentations of weak omega categories";
  py::register_exception<Error>(m, "Error", PyExc_ValueError);

  py::class_<Violation>(m, "Violation")
      .def_readonly("kind", &Violation::kind)
      .def_readonly("detail", &Violation::detail)
      .def("__repr__", [](const Violation& v) { return "<Violation " + v.kind + ": " + v.detail + ">"; });

  py::class_<Report>(m, "Report")
      .def_property_readonly("ok", &Report::ok)
      .def_readonly("violations", &Report::violations)
      .def_readonly("bound", &Report::bound)
      .def_readonly("notes", &Report::notes)
      .def("has", &Report::has)
      .def("__bool__", &Report::ok);

  py::class_<OmegaGraph>(m, "OmegaGraph")
      .def_readonly("trunc_dim", &OmegaGraph::trunc_dim)
      .def("size", &OmegaGraph::size)
      .def("find", &OmegaGraph::find)
      .def_readonly("names", &OmegaGraph::names);

  py::class_<FiniteMagma, std::shared_ptr<FiniteMagma>>(m, "FiniteMagma")
      .def_readonly("graph", &FiniteMagma::graph)
      .def_property_readonly("top", &FiniteMagma::top)
      .def("count", &FiniteMagma::count)
      .def("name", &FiniteMagma::name)
      .def("find", &FiniteMagma::find)
      .def("dom", &FiniteMagma::dom)
      .def("cod", &FiniteMagma::cod)
      .def("id", &FiniteMagma::id)
      .def("comp", py::overload_cast<int, int, int, int>(&FiniteMagma::comp, py::const_),
           "Index of a ⊙_i b for cells of dimension j, or -1.");

  py::class_<Span, std::shared_ptr<Span>>(m, "Span")
      .def_readonly("name", &Span::name)
      .def_readonly("bound", &Span::bound)
      .def("x1_magma", [](const Span& s) -> std::optional<FiniteMagma> {
        if (const FiniteMagma* t = s.x1->tables()) return *t;
        return std::nullopt;
      });

  py::class_<PseudoFunctorData>(m, "PseudoFunctor").def_readonly("name", &PseudoFunctorData::name);
  py::class_<BicategoryData>(m, "Bicategory")
      .def_readonly("name", &BicategoryData::name)
      .def_readonly("cells", &BicategoryData::cells);

  py::class_<Document>(m, "Document")
      .def_property_readonly("magmas", [](const Document& d) {
        std::vector<std::string> out;
        for (const auto& [k, v] : d.magmas) out.push_back(k);
        return out;
      })
      .def_property_readonly("spans", [](const Document& d) {
        std::vector<std::string> out;
        for (const auto& [k, v] : d.spans) out.push_back(k);
        return out;
      })
      .def_property_readonly("functors", [](const Document& d) {
        std::vector<std::string> out;
        for (const auto& [k, v] : d.functors) out.push_back(k);
        return out;
      })
      .def("graph", &Document::graph, py::return_value_policy::copy)
      .def("magma", [](const Document& d, const std::string& n) { return d.magma(d.pick("magma", n)); },
           py::arg("name") = "")
      .def("span", [](const Document& d, const std::string& n) {
        return std::const_pointer_cast<Span>(d.span(d.pick("span", n)));
      }, py::arg("name") = "")
      .def("functor", &Document::functor)
      .def("bicategory", &Document::bicategory);

  m.def("parse", &parse_presentation, "Parse presentation text.");
  m.def("load", &load_presentation, "Load a presentation file.");
  m.def("serialize", &serialize, "Normalized text of a document.");
  m.def("serialize_span", [](const Span& s) {
    Document d;
    add_span(d, s);
    return serialize(d);
  });

  m.def("nf", [](const OmegaGraph& g, const std::string& term) { return nf(parse_term(g, term)).code(); },
        "Strict normal form code of a term.");
  m.def("strict_eq", [](const OmegaGraph& g, const std::string& a, const std::string& b) {
    return strict_eq(parse_term(g, a), parse_term(g, b));
  });

  m.def("validate_magma", &validate_magma);
  m.def("validate_strict", &validate_strict);
  m.def("validate_weak_omega_category", &validate_weak_omega_category);
  m.def("validate_pseudo_functor", &validate_pseudo_functor);
  m.def("validate_bicategory", &validate_bicategory);

  m.def("penon_category", [](const OmegaGraph& y, int bound) { return std::make_shared<Span>(penon_category(y, bound)); },
        py::arg("graph"), py::arg("bound") = 6);
  m.def("stabilize", [](const Span& s, bool up) {
    return std::make_shared<Span>(stabilize(s, up ? Direction::Up : Direction::Down));
  }, py::arg("span"), py::arg("up") = true);
  m.def("weakify", [](const BicategoryData& b, int bound) {
    return std::make_shared<Span>(weakify_bicategory(b, bound));
  }, py::arg("bicategory"), py::arg("bound") = 5);
  m.def("extract_category", [](const Span& s) { return extract_category(s).category; });
  m.def("extract_bicategory", [](const Span& s) { return extract_bicategory(s).bicategory; });

  m.def("equivalences", [](const FiniteMagma& mg) {
    EquivTable t = compute_eq(std::make_shared<const FiniteMagma>(mg));
    std::vector<std::vector<std::string>> out(mg.top() + 1);
    for (int d = 1; d <= mg.top(); ++d)
      for (int k = 0; k < mg.count(d); ++k)
        if (t.in_eq(d, k)) out[d].push_back(mg.name(d, k));
    return out;
  }, "Names of the internal equivalences, per dimension.");
  m.def("pi", [](const Span& s) { return class_names(s, pi(s)); }, "Classes of equivalent 0-cells.");
  m.def("is_tame", [](const PseudoFunctorData& f) { return is_tame(f).tame; });
  m.def("is_weak_equivalence", [](const PseudoFunctorData& f) { return is_weak_equivalence(f).holds; });
  m.def("is_omega_equivalence",
        [](const PseudoFunctorData& f, const PseudoFunctorData& g) { return is_omega_equivalence(f, g).holds; });

  py::module_ fx = m.def_submodule("fixtures", "Built-in fixtures");
  fx.def("gf", &fixtures::gf);
  fx.def("g2", &fixtures::g2);
  fx.def("one_two_gen", &fixtures::one_two_gen);
  fx.def("ciso", &fixtures::ciso);
  fx.def("arrow_category", &fixtures::arrow_category);
  fx.def("discrete2", &fixtures::discrete2);
  fx.def("strict_two_iso", &fixtures::strict_two_iso);
  fx.def("scalar_z2", &fixtures::scalar_z2);
  fx.def("wb1", &fixtures::wb1_bicategory);
  fx.def("codiscrete_span", [] { return std::make_shared<Span>(fixtures::codiscrete_span()); });
}
