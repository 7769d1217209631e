// Command-line front end. Exit codes: 0 verdict positive, 1 verdict
// negative, 2 input error.
#include <CLI11.hpp>

#include <fstream>
#include <iostream>
#include <sstream>

#include "womega/io.hpp"

using namespace womega;

namespace {

struct Options {
  std::string file, name, span, bicategory, magma, out, cell, src, tgt;
  std::vector<std::string> terms, functors;
  int bound = -1;
  bool up = false, down = false, left = false, oracle = false;
};

// Collects report lines and prints them in the fixed order
// INFO..., VERDICT, WITNESS..., BOUND.
struct Output {
  std::vector<std::string> info, witness;
  std::optional<int> bound;

  void note_bound(const std::optional<int>& b) {
    if (b && (!bound || *b > *bound)) bound = b;
  }
  void absorb(const std::string& scope, const Report& r) {
    for (const auto& v : r.violations) witness.push_back(scope + ": " + v.kind + ": " + v.detail);
    for (const auto& n : r.notes) info.push_back(scope + ": " + n);
    note_bound(r.bound);
  }
  int finish(bool ok, std::ostream& os = std::cout) const {
    for (const auto& l : info) os << "INFO " << l << "\n";
    os << "VERDICT " << (ok ? "ok" : "fail") << "\n";
    for (const auto& l : witness) os << "WITNESS " << l << "\n";
    if (bound) os << "BOUND " << *bound << "\n";
    return ok ? 0 : 1;
  }
};

int bound_or(const Options& o, int fallback) { return o.bound >= 0 ? o.bound : fallback; }

// A span from the document: a named or single span block, else the
// weakification of a bicategory block.
std::shared_ptr<const Span> load_span(const Document& doc, const Options& o) {
  if (!o.span.empty() || (o.bicategory.empty() && !doc.spans.empty())) return doc.span(doc.pick("span", o.span));
  BicategoryData b = doc.bicategory(doc.pick("bicategory", o.bicategory));
  return std::make_shared<Span>(weakify_bicategory(b, bound_or(o, 5)));
}

Cell named_cell(const MagmaView& v, const std::string& name) {
  const FiniteMagma* m = v.tables();
  if (!m) throw Error("cells of " + v.label() + " cannot be named; it is not finite");
  for (int d = 0; d <= m->top(); ++d) {
    int k = m->find(d, name);
    if (k >= 0) return {d, k, nullptr};
  }
  throw Error("unknown cell " + name + " in " + v.label());
}

std::string show_counts(const MagmaView& v, int bound) {
  std::ostringstream os;
  for (int d = 0; d <= v.top(); ++d) os << (d ? " " : "") << "dim" << d << "=" << v.cells(d, bound).size();
  return os.str();
}

void write_out(const Options& o, const std::string& text) {
  std::ofstream f(o.out);
  if (!f) throw Error("cannot write " + o.out);
  f << text;
}

// ------------------------------------------------------------ commands

int cmd_validate(const Document& doc, const Options& o) {
  Output out;
  bool any = false;
  auto wanted = [&](const std::string& n) { return o.name.empty() || o.name == n; };
  for (const auto& [n, g] : doc.graphs)
    if (wanted(n)) any = true, out.absorb("graph " + n, validate_omega_graph(g)), out.info.push_back("graph " + n + " checked");
  for (const auto& [n, m] : doc.magmas)
    if (wanted(n)) {
      any = true;
      Report r = validate_magma(*m);
      out.absorb("magma " + n, r);
      if (r.ok()) out.info.push_back("magma " + n + (validate_strict(*m).ok() ? " is strict" : " is not strict"));
    }
  for (const auto& [n, md] : doc.morphisms)
    if (wanted(n)) {
      any = true;
      GraphMorphism f = doc.morphism(n);
      if (doc.magmas.count(md.src) && doc.magmas.count(md.tgt))
        out.absorb("morphism " + n, validate_magma_morphism(*doc.magma(md.src), *doc.magma(md.tgt), f));
      else
        out.absorb("morphism " + n, validate_graph_morphism(doc.graph(md.src), doc.graph(md.tgt), f));
    }
  for (const auto& [n, rd] : doc.relations)
    if (wanted(n)) {
      any = true;
      auto m = doc.magma(rd.on);
      auto rel = std::make_shared<TableRelation>(m);
      for (const auto& row : rd.rows) {
        Cell a = named_cell(FiniteView(m), row[0]), b = named_cell(FiniteView(m), row[1]);
        Cell c = named_cell(FiniteView(m), row[2]);
        rel->add(a.dim, a.index, b.index, c.index);
      }
      out.absorb("relation " + n, validate_bridge_relation(FiniteView(m, rd.on), *rel));
    }
  for (const auto& [n, bd] : doc.bicategories)
    if (wanted(n)) any = true, out.absorb("bicategory " + n, validate_bicategory(doc.bicategory(n)));
  for (const auto& [n, sd] : doc.spans)
    if (wanted(n)) any = true, out.absorb("span " + n, validate_weak_omega_category(*doc.span(n)));
  for (const auto& [n, fd] : doc.functors)
    if (wanted(n)) any = true, out.absorb("functor " + n, validate_pseudo_functor(doc.functor(n)));
  if (!any) throw Error("nothing named " + o.name);
  return out.finish(out.witness.empty());
}

const OmegaGraph& pick_graph(const Document& doc, const Options& o) {
  return doc.graph(doc.pick("graph", o.name));
}

int cmd_nf(const Document& doc, const Options& o) {
  if (o.terms.size() != 1) throw Error("nf takes exactly one --term");
  Term t = parse_term(pick_graph(doc, o), o.terms[0]);
  StrictNF x = nf(t);
  Output out;
  out.info.push_back("term " + to_string(t));
  out.info.push_back("nf " + x.code());
  out.info.push_back("canonical " + to_string(nf_to_term(pick_graph(doc, o), x)));
  return out.finish(true);
}

int cmd_eq(const Document& doc, const Options& o) {
  if (o.terms.size() != 2) throw Error("eq takes exactly two --term options");
  const OmegaGraph& g = pick_graph(doc, o);
  Term a = parse_term(g, o.terms[0]), b = parse_term(g, o.terms[1]);
  if (a->dim != b->dim) throw Error("terms of different dimensions");
  bool same = strict_eq(a, b);
  Output out;
  if (o.oracle) {
    int s = bound_or(o, 8);
    OracleResult r = oracle_eq(a, b, s);
    out.info.push_back(std::string("oracle ") + to_string(r.verdict) + " explored=" + std::to_string(r.explored));
    out.bound = s;
  }
  if (!same) {
    out.witness.push_back("nf " + to_string(a) + " = " + nf(a).code());
    out.witness.push_back("nf " + to_string(b) + " = " + nf(b).code());
  }
  return out.finish(same);
}

int cmd_stretch(const Document& doc, const Options& o) {
  const OmegaGraph& g = pick_graph(doc, o);
  Output out;
  if (o.terms.size() == 1) {
    Term t = parse_term(g, o.terms[0]);
    out.info.push_back("eta " + stretch_eta(t).code());
    return out.finish(true);
  }
  if (o.terms.size() != 2) throw Error("stretch takes one or two --term options");
  Term u = parse_term(g, o.terms[0]), v = parse_term(g, o.terms[1]);
  auto c = stretch_bridge(u, v);
  if (c) {
    out.info.push_back("bridge " + to_string(*c));
    return out.finish(true);
  }
  if (!terms_parallel(u, v)) out.witness.push_back("not parallel: " + to_string(u) + " , " + to_string(v));
  else out.witness.push_back("eta differs: " + stretch_eta(u).code() + " vs " + stretch_eta(v).code());
  return out.finish(false);
}

int cmd_hom(const Document& doc, const Options& o) {
  auto s = load_span(doc, o);
  Cell a = named_cell(*s->x1, o.src), b = named_cell(*s->x1, o.tgt);
  Span h = hom_category(*s, a, b);
  Output out;
  int bound = h.check_bound(bound_or(o, 4));
  out.info.push_back("X1 " + show_counts(*h.x1, bound));
  out.info.push_back("X2 " + show_counts(*h.x2, bound));
  Report r = validate_weak_omega_category(h);
  out.absorb("hom " + h.name, r);
  if (h.bound) out.note_bound(h.bound);
  if (!o.out.empty()) {
    Document d;
    add_span(d, h);
    write_out(o, serialize(d));
  }
  return out.finish(r.ok());
}

int cmd_stabilize(const Document& doc, const Options& o) {
  if (o.up == o.down) throw Error("give exactly one of --up and --down");
  auto s = load_span(doc, o);
  Span w = stabilize(*s, o.up ? Direction::Up : Direction::Down);
  Document d;
  add_span(d, w);
  std::string text = serialize(d);
  Output out;
  out.absorb("span " + w.name, validate_weak_omega_category(w));
  if (o.out.empty()) {
    std::cout << text;
    return out.finish(out.witness.empty(), std::cerr);
  }
  write_out(o, text);
  return out.finish(out.witness.empty());
}

int cmd_extract_cat(const Document& doc, const Options& o) {
  auto s = load_span(doc, o);
  CategoryExtraction e = extract_category(*s);
  Output out;
  const FiniteMagma& c = e.category;
  for (int a = 0; a < c.count(1); ++a)
    for (int b = 0; b < c.count(1); ++b) {
      int r = c.comp(0, 1, a, b);
      if (r >= 0) out.info.push_back("comp " + c.name(1, a) + " " + c.name(1, b) + " = " + c.name(1, r));
    }
  for (const auto& l : e.log.steps) out.info.push_back("step " + l);
  if (e.log.failure) out.witness.push_back(*e.log.failure);
  out.note_bound(s->bound);
  return out.finish(e.log.ok());
}

int cmd_extract_bicat(const Document& doc, const Options& o) {
  auto s = load_span(doc, o);
  BicategoryExtraction e = extract_bicategory(*s);
  Output out;
  const BicategoryData& b = e.bicategory;
  const FiniteMagma& m = b.cells;
  for (const auto& [fgh, c] : b.assoc)
    out.info.push_back("assoc " + m.name(1, fgh[0]) + " " + m.name(1, fgh[1]) + " " + m.name(1, fgh[2]) + " = " +
                       m.name(2, c));
  for (int f = 0; f < static_cast<int>(b.lunit.size()); ++f)
    if (b.lunit[f] >= 0) out.info.push_back("lunit " + m.name(1, f) + " = " + m.name(2, b.lunit[f]));
  for (int f = 0; f < static_cast<int>(b.runit.size()); ++f)
    if (b.runit[f] >= 0) out.info.push_back("runit " + m.name(1, f) + " = " + m.name(2, b.runit[f]));
  if (e.log.failure) out.witness.push_back(*e.log.failure);
  out.absorb("axioms", e.axioms);
  out.note_bound(s->bound);
  if (!o.out.empty() && e.log.ok()) {
    Document d;
    add_bicategory(d, b);
    write_out(o, serialize(d));
  }
  return out.finish(e.log.ok() && e.axioms.ok());
}

int cmd_weakify(const Document& doc, const Options& o) {
  BicategoryData b = doc.bicategory(doc.pick("bicategory", o.bicategory.empty() ? o.name : o.bicategory));
  int bound = bound_or(o, 5);
  Span s = weakify_bicategory(b, bound);
  Output out;
  out.info.push_back("X2 " + show_counts(*s.x2, bound));
  int bridges = 0;
  for (const auto& t : s.r->triples(1, bound)) bridges += s.x2->same(t[0], t[1]) ? 0 : 1;
  out.info.push_back("non-identity 1-bridges " + std::to_string(bridges));
  out.absorb("span " + s.name, validate_weak_omega_category(s));
  out.bound = bound;
  return out.finish(out.witness.empty());
}

std::shared_ptr<const FiniteMagma> pick_magma(const Document& doc, const Options& o) {
  if (!o.magma.empty() || (o.span.empty() && !doc.magmas.empty() && doc.spans.empty() && doc.bicategories.empty()))
    return doc.magma(doc.pick("magma", o.magma));
  auto s = load_span(doc, o);
  const FiniteMagma* m = s->x1->tables();
  if (!m) throw Error("X1 of " + s->name + " is not finite");
  return std::shared_ptr<const FiniteMagma>(s, m);
}

int cmd_eqtable(const Document& doc, const Options& o) {
  auto m = pick_magma(doc, o);
  EquivTable t = compute_eq(m);
  Output out;
  for (int d = 1; d <= m->top(); ++d)
    for (int k = 0; k < m->count(d); ++k) out.info.push_back(t.describe(d, k));
  out.info.push_back("rounds " + std::to_string(t.rounds) + (t.fixpoint ? " (fixpoint)" : " (round limit)"));
  if (t.search_exhausted) out.info.push_back("clique search budget exhausted; Eq is a lower bound");
  return out.finish(true);
}

std::string show_classes(const FiniteMagma& m, const PiResult& p) {
  std::string s;
  for (const auto& c : p.classes) {
    s += s.empty() ? "{" : " {";
    for (std::size_t i = 0; i < c.size(); ++i) s += (i ? "," : "") + m.name(0, c[i]);
    s += "}";
  }
  return s;
}

int cmd_pi(const Document& doc, const Options& o) {
  auto m = pick_magma(doc, o);
  PiResult p = pi(compute_eq(m));
  Output out;
  out.info.push_back("classes " + std::to_string(p.classes.size()) + " " + show_classes(*m, p));
  if (!p.equivalence_relation) out.witness.push_back("the relation fails symmetry or transitivity");
  return out.finish(p.equivalence_relation);
}

PseudoFunctorData pick_functor(const Document& doc, const Options& o, std::size_t i) {
  std::string n = i < o.functors.size() ? o.functors[i] : "";
  return doc.functor(doc.pick("functor", n));
}

int cmd_tame(const Document& doc, const Options& o) {
  TameResult t = is_tame(pick_functor(doc, o, 0));
  Output out;
  out.info.push_back(std::string("criterion on Contr and el: ") + (t.criterion ? "holds" : "fails"));
  for (const auto& e : t.evidence) (t.tame ? out.info : out.witness).push_back(e);
  return out.finish(t.tame);
}

int cmd_weq(const Document& doc, const Options& o) {
  EquivalenceVerdict v = is_weak_equivalence(pick_functor(doc, o, 0));
  Output out;
  for (const auto& e : v.evidence) (v.holds ? out.info : out.witness).push_back(e);
  return out.finish(v.holds);
}

int cmd_oeq(const Document& doc, const Options& o) {
  if (o.functors.size() != 2) throw Error("oeq takes two --functor options");
  EquivalenceVerdict v = is_omega_equivalence(pick_functor(doc, o, 0), pick_functor(doc, o, 1));
  Output out;
  for (const auto& e : v.evidence) (v.holds ? out.info : out.witness).push_back(e);
  return out.finish(v.holds);
}

int cmd_theta(const Document& doc, const Options& o) {
  auto s = load_span(doc, o);
  Cell h = named_cell(*s->x1, o.cell), a = named_cell(*s->x1, o.src);
  PseudoFunctorData f = theta(s, h, a, o.left ? Side::Left : Side::Right);
  Output out;
  out.absorb(f.name, validate_pseudo_functor(f));
  out.note_bound(s->bound);
  if (out.witness.empty()) {
    TameResult t = is_tame(f);
    out.info.push_back(std::string("tame ") + (t.tame ? "yes" : "no"));
    if (t.tame) {
      const FiniteMagma* src = f.src->x1->tables();
      const FiniteMagma* tgt = f.tgt->x1->tables();
      if (src && tgt) {
        PiResult ps = pi(*f.src), pt = pi(*f.tgt);
        for (const auto& c : ps.classes) {
          int img = f.f1->apply(Cell{0, c[0], nullptr}).index;
          out.info.push_back("pi " + src->name(0, c[0]) + " -> " + tgt->name(0, pt.classes[pt.class_of[img]][0]));
        }
      }
    }
  }
  return out.finish(out.witness.empty());
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"womega: finite presentations of weak omega categories"};
  app.require_subcommand(1);
  Options o;
  struct Cmd {
    const char* name;
    const char* help;
    int (*run)(const Document&, const Options&);
  };
  const std::vector<Cmd> cmds = {
      {"validate", "validate every block (or --name)", cmd_validate},
      {"nf", "strict normal form of a term", cmd_nf},
      {"eq", "equality in the free strict category", cmd_eq},
      {"stretch", "Penon stretching: eta of a term, or the bridge between two", cmd_stretch},
      {"hom", "hom span X(src, tgt)", cmd_hom},
      {"stabilize", "shift a monoidal span --up or --down", cmd_stabilize},
      {"extract-cat", "category of a 1-skeletal span", cmd_extract_cat},
      {"extract-bicat", "bicategory of a 2-skeletal span", cmd_extract_bicat},
      {"weakify", "span of a bicategory, validated at --bound", cmd_weakify},
      {"eqtable", "internal equivalences of a finite magma", cmd_eqtable},
      {"pi", "classes of equivalent 0-cells", cmd_pi},
      {"tame", "tameness of a pseudo-functor", cmd_tame},
      {"weq", "weak equivalence test", cmd_weq},
      {"oeq", "omega equivalence test for a functor pair", cmd_oeq},
      {"theta", "whiskering pseudo-functor by --cell from --src", cmd_theta},
  };
  int (*chosen)(const Document&, const Options&) = nullptr;
  for (const auto& c : cmds) {
    CLI::App* sub = app.add_subcommand(c.name, c.help);
    sub->add_option("file", o.file, "presentation file")->required();
    sub->add_option("--name", o.name, "block to use");
    sub->add_option("--span", o.span, "span block");
    sub->add_option("--bicategory", o.bicategory, "bicategory block");
    sub->add_option("--magma", o.magma, "magma block");
    sub->add_option("--term", o.terms, "term expression (repeatable)");
    sub->add_option("--functor", o.functors, "functor block (repeatable)");
    sub->add_option("--bound", o.bound, "term-size bound");
    sub->add_option("--src", o.src, "source cell");
    sub->add_option("--tgt", o.tgt, "target cell");
    sub->add_option("--cell", o.cell, "cell to whisker by");
    sub->add_option("--out", o.out, "output file");
    sub->add_flag("--up", o.up, "stabilize upwards");
    sub->add_flag("--down", o.down, "stabilize downwards");
    sub->add_flag("--left", o.left, "whisker on the left");
    sub->add_flag("--oracle", o.oracle, "also run the rewriting oracle");
    sub->callback([&chosen, run = c.run] { chosen = run; });
  }
  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    int code = app.exit(e);
    return code == 0 ? 0 : 2;
  }
  try {
    Document doc = load_presentation(o.file);
    return chosen(doc, o);
  } catch (const std::exception& e) {
    std::cout << "ERROR " << e.what() << "\n";
    return 2;
  }
}
