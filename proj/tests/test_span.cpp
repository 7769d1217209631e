#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "support.hpp"

using namespace womega;
namespace fx = womega::fixtures;

namespace {

std::shared_ptr<const FiniteMagma> shared(FiniteMagma m) { return std::make_shared<const FiniteMagma>(std::move(m)); }

GraphMorphism table(const FiniteMagma& src, std::initializer_list<std::pair<std::string, std::string>> pairs,
                    const FiniteMagma& tgt) {
  GraphMorphism f;
  f.map.resize(src.top() + 1);
  for (int d = 0; d <= src.top(); ++d) f.map[d].assign(src.count(d), -1);
  for (const auto& [a, b] : pairs)
    for (int d = 0; d <= src.top(); ++d)
      if (int k = src.graph.find(d, a); k >= 0) f.map[d][k] = tgt.graph.find(std::min(d, tgt.top()), b);
  return f;
}

// X1 = X3 = point, X2 = the iso pair, the two objects bridged by f and g.
Span glued_span() {
  auto pt = shared(fx::category({"p"}, {}, {}));
  auto ci = shared(fx::ciso());
  auto v1 = std::make_shared<FiniteView>(pt, "pt");
  auto v2 = std::make_shared<FiniteView>(ci, "ciso");
  auto lam = std::make_shared<TableMap>(ci, pt, collapse_morphism(*ci), "collapse");
  auto rho = std::make_shared<TableMap>(pt, ci, table(*pt, {{"p", "x"}, {"id_p", "id_x"}}, *ci), "pick");
  auto r = std::make_shared<TableRelation>(ci);
  int x = ci->find(0, "x"), y = ci->find(0, "y");
  r->add(0, x, y, ci->find(1, "f"));
  r->add(0, y, x, ci->find(1, "g"));
  for (int o : {x, y}) r->add(0, o, o, ci->id(0, o));
  for (int c = 0; c < ci->count(1); ++c) r->add(1, c, c, c);
  return Span{"glued", v1, v2, v1, lam, rho, lam, r, std::nullopt};
}

// Bridges erased by hand, for comparison with stretch_eta.
Term erase(const Term& t) {
  switch (t->kind) {
    case TermKind::Gen: return t;
    case TermKind::Idn: return make_idn(erase(t->a));
    case TermKind::Comp: return make_comp(t->axis, erase(t->a), erase(t->b));
    case TermKind::Bridge: return make_idn(erase(t->a));
  }
  return nullptr;
}

Term assoc_left(const OmegaGraph& g) {
  Term f = make_gen(g, "f");
  return term_compose(0, term_compose(0, f, f), f);
}
Term assoc_right(const OmegaGraph& g) {
  Term f = make_gen(g, "f");
  return term_compose(0, f, term_compose(0, f, f));
}

}  // namespace

TEST_CASE("diagonal bridge relations are valid") {
  for (auto& [name, c] : oracle::category_corpus()) {
    CAPTURE(name);
    auto v = std::make_shared<FiniteView>(shared(c), name);
    CHECK(validate_bridge_relation(*v, DiagonalRelation(v)).ok());
  }
  auto terms = std::make_shared<TermView>(fx::gf(), nullptr, 2, "free");
  Report r = validate_bridge_relation(*terms, DiagonalRelation(terms), 5);
  CHECK(r.ok());
  CHECK(r.bound == 5);
}

TEST_CASE("two bridges for one pair break single-valuedness") {
  auto m = shared(fx::scalar_z2());
  FiniteView v(m);
  TableRelation r(m);
  for (int d = 0; d < 2; ++d)
    for (int a = 0; a < m->count(d); ++a) r.add(d, a, a, m->id(d, a));
  for (int a = 0; a < m->count(2); ++a) r.add(2, a, a, a);
  REQUIRE(validate_bridge_relation(v, r).ok());
  int id = m->find(1, "id_*");
  r.add(1, id, id, m->find(2, "s"));
  Report rep = validate_bridge_relation(v, r);
  CHECK(rep.has("condition-3"));
  CHECK_FALSE(rep.has("condition-1"));
}

TEST_CASE("a missing identity bridge breaks condition 2") {
  auto m = shared(fx::codiscrete());
  Span s = fx::codiscrete_span();
  const auto& full = dynamic_cast<const TableRelation&>(*s.r);
  TableRelation r(m);
  int a = m->find(1, "a");
  for (const auto& [d, x, y, c] : full.rows())
    if (!(d == 1 && x == a && y == a)) r.add(d, x, y, c);
  FiniteView v(m);
  CHECK(validate_bridge_relation(v, full).ok());
  Report rep = validate_bridge_relation(v, r);
  CHECK(rep.has("condition-2"));
  CHECK(rep.violations.size() == 1);
}

TEST_CASE("identity is a categorical Penon morphism on a strict category") {
  auto v = std::make_shared<FiniteView>(shared(fx::ciso()));
  CHECK(validate_penon_morphism(*v, DiagonalRelation(v), IdentityMap(), *v).ok());
}

TEST_CASE("the stretching of GF is a Penon morphism at bound 6") {
  Span p = penon_category(fx::gf(), 6);
  Report rep = validate_penon_morphism(*p.x2, *p.r, *p.kappa, *p.x3, 6);
  CHECK(rep.ok());
  CHECK(rep.bound == 6);

  // Independent check: the rewriting oracle decides which bridge-free pairs
  // are equalized, and exactly those carry a bridge.
  std::vector<Term> ones;
  for (const auto& bucket : enumerate_terms(fx::gf(), 6, 1))
    for (const Term& t : bucket)
      if (t->dim == 1) ones.push_back(t);
  int bridged = 0;
  for (const Term& u : ones)
    for (const Term& v : ones) {
      OracleResult o = oracle_eq(u, v, 8);
      REQUIRE(o.verdict != Verdict::Unknown);
      auto b = p.r->bridge(TermView::wrap(u), TermView::wrap(v));
      CHECK(b.has_value() == (o.verdict == Verdict::True));
      bridged += b.has_value() && !term_equal(u, v);
    }
  CHECK(bridged > 0);
}

TEST_CASE("a bridge sent to a non-identity breaks condition 2") {
  auto m = shared(fx::scalar_z2());
  auto v = std::make_shared<FiniteView>(m);
  TableRelation r(m);
  for (int d = 0; d < 2; ++d)
    for (int a = 0; a < m->count(d); ++a) r.add(d, a, a, m->id(d, a));
  for (int a = 0; a < m->count(2); ++a) r.add(2, a, a, a);
  int id = m->find(1, "id_*");
  // replace the identity bridge on id_* by the scalar
  TableRelation bad(m);
  for (const auto& [d, x, y, c] : r.rows())
    bad.add(d, x, y, d == 1 && x == id ? m->find(2, "s") : c);
  CHECK(validate_penon_morphism(*v, r, IdentityMap(), *v).ok());
  CHECK(validate_penon_morphism(*v, bad, IdentityMap(), *v).has("condition-2"));
}

TEST_CASE("weak omega categories") {
  auto ci = oracle::diag("ciso", fx::ciso());
  CHECK(validate_weak_omega_category(*ci).ok());
  CHECK(validate_weak_omega_category(glued_span()).ok());
  CHECK(validate_weak_omega_category(fx::codiscrete_span()).ok());

  Span p = penon_category(fx::gf(), 5);
  Report rep = validate_weak_omega_category(p);
  CHECK(rep.ok());
  CHECK(rep.bound == 5);

  // λ twisted by the automorphism swapping the two objects
  auto m = shared(fx::ciso());
  Span twisted = *ci;
  twisted.lambda = std::make_shared<TableMap>(
      m, m, table(*m, {{"x", "y"}, {"y", "x"}, {"f", "g"}, {"g", "f"}, {"id_x", "id_y"}, {"id_y", "id_x"}}, *m), "swap");
  Report tw = validate_weak_omega_category(twisted);
  CHECK(tw.has("splitting"));
  CHECK_FALSE(tw.has("lambda/composition"));
}

TEST_CASE("omega functors") {
  auto ci = oracle::diag("ciso", fx::ciso());
  auto id = std::make_shared<IdentityMap>();
  CHECK(validate_omega_functor({ci, ci, id, id, id}).ok());

  auto term = oracle::diag("terminal", terminal_magma(1));
  auto collapse = std::make_shared<TableMap>(std::shared_ptr<const FiniteMagma>(ci, ci->x1->tables()),
                                             std::shared_ptr<const FiniteMagma>(term, term->x1->tables()),
                                             collapse_morphism(oracle::x1_of(*ci)), "collapse");
  CHECK(validate_omega_functor({ci, term, collapse, collapse, collapse}).ok());

  // On the glued span, swapping the objects of X2 respects bridges, λ and κ
  // but not the section ρ.
  auto g = std::make_shared<Span>(glued_span());
  auto m = std::shared_ptr<const FiniteMagma>(g, g->x2->tables());
  auto swap = std::make_shared<TableMap>(
      m, m, table(*m, {{"x", "y"}, {"y", "x"}, {"f", "g"}, {"g", "f"}, {"id_x", "id_y"}, {"id_y", "id_x"}}, *m), "swap");
  Report rep = validate_omega_functor({g, g, id, swap, id});
  CHECK(rep.has("condition-4"));
  CHECK_FALSE(rep.has("condition-1"));
  CHECK_FALSE(rep.has("condition-2"));
  CHECK_FALSE(rep.has("condition-3"));
}

TEST_CASE("stretching sends bridges to identities") {
  OmegaGraph g = fx::gf();
  Term l = assoc_left(g), r = assoc_right(g);
  Term br = make_bridge(l, r);
  CHECK(stretch_eta(br) == nf_identity(nf(l)));
  CHECK(stretch_eta(make_gen(g, "f")) == nf(make_gen(g, "f")));

  auto terms = std::make_shared<TermView>(g, [](const Term& u, const Term& v) { return strict_eq(erase(u), erase(v)); },
                                          3, "stretching");
  int bridged = 0;
  for (int d = 0; d <= 3; ++d)
    for (const Cell& c : terms->cells(d, 8)) {
      CHECK(stretch_eta(c.term) == nf(erase(c.term)));
      bridged += has_bridge(c.term);
      if (c.term->kind == TermKind::Bridge) {
        CHECK_FALSE(term_equal(c.term->a, c.term->b));
        CHECK(terms_parallel(c.term->a, c.term->b));
        CHECK(stretch_eta(c.term->a) == stretch_eta(c.term->b));
      }
    }
  CHECK(bridged > 10);
}

TEST_CASE("stretch bridges") {
  OmegaGraph g = fx::gf();
  Term f = make_gen(g, "f");
  auto same = stretch_bridge(f, f);
  REQUIRE(same);
  CHECK(term_equal(*same, make_idn(f)));
  auto b = stretch_bridge(assoc_left(g), assoc_right(g));
  REQUIRE(b);
  CHECK((*b)->kind == TermKind::Bridge);
  Term ff = term_compose(0, f, f);
  REQUIRE(oracle_eq(ff, f).verdict == Verdict::False);
  CHECK_FALSE(stretch_bridge(ff, f));
}

TEST_CASE("the stretching of two points") {
  Span p = penon_category(fx::g2(), 4);
  CHECK(p.x1->cells(0, 4).size() == 2);
  auto ones = p.x1->cells(1, 4);
  CHECK(ones.size() == 2);
  for (const Cell& c : ones) CHECK(c.term->kind == TermKind::Idn);
  for (const Cell& c : p.x1->cells(1, 7)) {
    CHECK_FALSE(has_bridge(c.term));
    CHECK(p.x3->is_identity(p.kappa->apply(c)));
  }
}

TEST_CASE("the stretching of GF holds the associator bridge") {
  OmegaGraph g = fx::gf();
  Span p = penon_category(g, 6);
  auto b = p.r->bridge(TermView::wrap(assoc_left(g)), TermView::wrap(assoc_right(g)));
  REQUIRE(b);
  CHECK(b->term->kind == TermKind::Bridge);
  CHECK(p.x3->is_identity(p.kappa->apply(*b)));
}

TEST_CASE("stretchings of small graphs are weak omega categories") {
  for (const OmegaGraph& y : {fx::g2(), fx::gf(), fx::arrow_graph(), fx::one_two_gen()}) {
    Report r = validate_weak_omega_category(penon_category(y, 4));
    CHECK(r.ok());
    CHECK(r.bound == 4);
  }
}

TEST_CASE("stretching over the terminal category bridges every parallel pair") {
  OmegaGraph y = fx::gf();
  auto t = shared(terminal_magma(1));
  GraphMorphism f;
  f.map = {{0}, {0, 0}};
  Span s = penon_over(y, t, f, 5);
  CHECK(validate_weak_omega_category(s).ok());
  auto ones = s.x2->cells(1, 5);
  for (const Cell& u : ones)
    for (const Cell& v : ones) CHECK(s.r->bridge(u, v).has_value());
}

TEST_CASE("stretching over the free strict category matches the Penon category") {
  for (const OmegaGraph& y : {fx::gf(), fx::arrow_graph()}) {
    auto free = std::make_shared<FreeStrictView>(y, y.trunc_dim + 2);
    Span over = penon_over_view(y, free, [free](const Term& t) { return free->canonical(nf(t)); }, 5);
    Span p = penon_category(y, 5);
    for (int d = 0; d <= 2; ++d) {
      auto a = over.x2->cells(d, 5), b = p.x2->cells(d, 5);
      REQUIRE(a.size() == b.size());
      for (std::size_t k = 0; k < a.size(); ++k) CHECK(term_equal(a[k].term, b[k].term));
      for (const Cell& u : a)
        for (const Cell& v : a) CHECK(over.r->bridge(u, v).has_value() == p.r->bridge(u, v).has_value());
    }
  }
}

TEST_CASE("stretching over a morphism with wrong endpoints is rejected") {
  OmegaGraph y = fx::arrow_graph();
  auto c = shared(fx::ciso());
  GraphMorphism f;
  f.map = {{c->find(0, "x"), c->find(0, "y")}, std::vector<int>(3)};
  for (const char* n : {"id_x", "id_y"}) f.map[1][y.find(1, n)] = c->find(1, n);
  f.map[1][y.find(1, "u")] = c->find(1, "g");
  CHECK_THROWS_AS(penon_over(y, c, f, 4), Error);
  f.map[1][y.find(1, "u")] = c->find(1, "f");
  CHECK_NOTHROW(penon_over(y, c, f, 4));
}

TEST_CASE("the codiscrete bridges witness the total relation") {
  auto m = shared(fx::codiscrete());
  EqRelation e = total_relation(*m);
  EqAnalysis an = analyze_equivalence_relation(*m, e, 5);
  REQUIRE(an.submagma);
  REQUIRE(an.sharp);
  CHECK(an.categorical.value_or(false));
  Quotient q = quotient_magma(*m, e);
  auto qm = shared(q.magma);
  CHECK(validate_strict(*qm).ok());
  Span s = fx::codiscrete_span();
  FiniteView src(m), tgt(qm);
  TableMap proj(m, qm, q.projection, "projection");
  CHECK(validate_penon_morphism(src, *s.r, proj, tgt).ok());
}

TEST_CASE("scholium: associativity up to a bridge") {
  auto l = parse_schedule("c(0,c(0,#0,#1),#2)");
  auto r = parse_schedule("c(0, #0, c(0,#1,#2))");
  CHECK_THROWS_AS(parse_schedule("c(0,#0)"), Error);

  OmegaGraph g = fx::gf();
  Span p = penon_category(g, 6);
  Cell f = TermView::wrap(make_gen(g, "f"));
  ScholiumResult res = scholium(p, {f, f, f}, *l, *r);
  CHECK(p.x1->same(p.x1->dom(res.image), res.lhs));
  CHECK(p.x1->same(p.x1->cod(res.image), res.rhs));
  CHECK(term_equal(res.lhs.term, assoc_left(g)));

  Span cd = fx::codiscrete_span();
  const FiniteMagma& m = *cd.x1->tables();
  Cell a{1, m.find(1, "a"), nullptr};
  ScholiumResult cres = scholium(cd, {a, a, a}, *l, *r);
  CHECK(m.name(1, cres.lhs.index) == "a");
  CHECK(m.name(1, cres.rhs.index) == "b");
  CHECK(m.name(2, cres.image.index) == "a>b");

  auto ci = oracle::diag("ciso", fx::ciso());
  const FiniteMagma& c = oracle::x1_of(*ci);
  std::vector<Cell> fg = {{1, c.find(1, "f"), nullptr}, {1, c.find(1, "g"), nullptr}};
  CHECK_THROWS_AS(scholium(*ci, fg, *parse_schedule("c(0,#0,#1)"), *parse_schedule("c(0,#1,#0)")), Error);
}
