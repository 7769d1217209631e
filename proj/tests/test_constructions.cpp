#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "support.hpp"

using namespace womega;
namespace fx = womega::fixtures;

namespace {

Cell at(const FiniteMagma& m, int d, const std::string& n) { return {d, m.find(d, n), nullptr}; }

bool same_tables(const FiniteMagma& a, const FiniteMagma& b) {
  return a.graph.names == b.graph.names && a.graph.dom == b.graph.dom && a.graph.cod == b.graph.cod &&
         a.graph.id_of == b.graph.id_of && a.table == b.table;
}

// Pentagon for a bicategory with diagrammatic composition and
// α_{f,g,h}: f(gh) => (fg)h, scanned directly on the tables.
bool pentagon(const BicategoryData& b) {
  const FiniteMagma& m = b.cells;
  auto h1 = [&](int f, int g) { return m.comp(0, 1, f, g); };
  auto H = [&](int x, int y) { return m.comp(0, 2, x, y); };
  auto V = [&](int x, int y) { return m.comp(1, 2, x, y); };
  auto id2 = [&](int f) { return m.id(1, f); };
  auto a = [&](int f, int g, int h) { return b.assoc.at({f, g, h}); };
  int n = m.count(1);
  for (int f = 0; f < n; ++f)
    for (int g = 0; g < n; ++g)
      for (int h = 0; h < n; ++h)
        for (int k = 0; k < n; ++k) {
          if (h1(f, g) < 0 || h1(g, h) < 0 || h1(h, k) < 0) continue;
          // f(g(hk)) => (fg)(hk) => ((fg)h)k
          int top = V(a(f, g, h1(h, k)), a(h1(f, g), h, k));
          // f(g(hk)) => f((gh)k) => (f(gh))k => ((fg)h)k
          int bottom = V(V(H(id2(f), a(g, h, k)), a(f, h1(g, h), k)), H(a(f, g, h), id2(k)));
          if (top < 0 || top != bottom) return false;
        }
  return true;
}

// Evaluation of a term over GF in a one-object category, f sent to `image`.
int eval_gf(const FiniteMagma& c, int image, const Term& t) {
  switch (t->kind) {
    case TermKind::Gen: return t->dim == 0 ? 0 : image;
    case TermKind::Idn: return c.id(0, eval_gf(c, image, t->a));
    case TermKind::Comp: return c.comp(0, 1, eval_gf(c, image, t->a), eval_gf(c, image, t->b));
    default: return -1;
  }
}

// The non-identity generators along a 1-term, left to right.
std::string word(const Term& t) {
  switch (t->kind) {
    case TermKind::Gen: return t->dim == 1 ? t->name + "." : "";
    case TermKind::Idn: return "";
    case TermKind::Comp: return word(t->a) + word(t->b);
    default: return "?";
  }
}

}  // namespace

TEST_CASE("hom of a strict 2-category between two objects") {
  auto s = oracle::diag("two-iso", fx::strict_two_iso());
  const FiniteMagma& m = oracle::x1_of(*s);
  Span h = hom_category(*s, at(m, 0, "x"), at(m, 0, "y"));
  REQUIRE(h.x1->tables());
  const FiniteMagma& hm = *h.x1->tables();
  CHECK(hm.count(0) == 2);
  CHECK(hm.count(1) == 4);
  CHECK(validate_weak_omega_category(h).ok());
  CategoryExtraction e = extract_category(h);
  CHECK(e.log.ok());
  CHECK(e.category.comp(0, 1, hm.find(1, "alpha"), hm.find(1, "beta")) == hm.id(0, hm.find(0, "f")));
  // X(a,b)_3 keeps every 1-cell of X3, not only those from x to y
  CHECK(static_cast<int>(h.x3->cells(0, 0).size()) == m.count(1));

  CHECK_THROWS_AS(hom_category(*s, at(m, 1, "f"), at(m, 1, "id_x")), Error);
}

TEST_CASE("hom of the stretching of GF at the object") {
  OmegaGraph g = fx::gf();
  Span p = penon_category(g, 4);
  Cell star = TermView::wrap(make_gen(g, "*"));
  HomSpan hs = hom_span(p, star, star);
  CHECK(hs.shift == 1);
  auto objs = hs.span.x1->cells(0, 4);
  REQUIRE_FALSE(objs.empty());
  std::set<std::string> keys;
  for (const Cell& c : objs) {
    Cell base = hs.to_base[0](c);
    CHECK(base.dim == 1);
    CHECK(base.term->kind != TermKind::Bridge);
    keys.insert(p.x1->key(base));
  }
  std::set<std::string> expected;
  for (const Cell& c : p.x1->cells(1, 4)) expected.insert(p.x1->key(c));
  CHECK(keys == expected);
  CHECK(validate_weak_omega_category(hs.span).ok());
}

TEST_CASE("stabilization shifts a 2-tuply monoidal span and back") {
  auto s = oracle::diag("scalar", fx::scalar_z2());
  Span up = stabilize(*s, Direction::Up);
  const FiniteMagma& u = *up.x1->tables();
  CHECK(u.top() == 3);
  CHECK(u.find(3, "s") >= 0);
  CHECK_FALSE(u.is_identity(3, u.find(3, "s")));
  for (int d = 0; d <= 2; ++d) CHECK(u.count(d) == 1);
  CHECK(validate_weak_omega_category(up).ok());

  Span down = stabilize(up, Direction::Down);
  CHECK(same_tables(*down.x1->tables(), oracle::x1_of(*s)));
  CHECK(same_tables(*down.x2->tables(), *s->x2->tables()));
  CHECK(same_tables(*down.x3->tables(), *s->x3->tables()));

  CHECK_THROWS_AS(stabilize(*oracle::diag("ciso", fx::ciso()), Direction::Up), Error);
  CHECK_THROWS_AS(stabilize(*s, Direction::Down), Error);
  CHECK_THROWS_AS(stabilize(penon_category(fx::gf(), 3), Direction::Up), Error);
}

TEST_CASE("stabilization is a bijection on cells and keeps verdicts") {
  auto check = [](const Span& s) {
    Span up = stabilize(s, Direction::Up);
    const FiniteMagma &a = *s.x2->tables(), &b = *up.x2->tables();
    CHECK(b.count(0) == 1);
    for (int d = 0; d <= a.top(); ++d) CHECK(b.count(d + 1) == a.count(d));
    CHECK(validate_weak_omega_category(up).ok() == validate_weak_omega_category(s).ok());
  };
  check(*oracle::diag("scalar", fx::scalar_z2()));
  check(*oracle::diag("terminal", terminal_magma(2)));

  // a bridge on id_* that κ sends to a non-identity
  auto m = std::make_shared<const FiniteMagma>(fx::scalar_z2());
  Span bad = *oracle::diag("scalar", *m);
  auto r = std::make_shared<TableRelation>(std::shared_ptr<const FiniteMagma>(m));
  r->add(0, 0, 0, m->id(0, 0));
  r->add(1, 0, 0, m->find(2, "s"));
  for (int c = 0; c < m->count(2); ++c) r->add(2, c, c, c);
  auto v = std::make_shared<FiniteView>(m, "scalar");
  bad.x1 = bad.x2 = bad.x3 = v;
  bad.r = r;
  REQUIRE_FALSE(validate_weak_omega_category(bad).ok());
  check(bad);
}

TEST_CASE("suspension gives a 3-skeletal magma") {
  FiniteMagma s = suspend(fx::scalar_z2());
  CHECK(s.top() == 3);
  CHECK(validate_strict(s).ok());
  CHECK(same_tables(desuspend(s), fx::scalar_z2()));
  auto d = oracle::diag("suspended", s);
  CHECK_THROWS_AS(extract_bicategory(*d), Error);
}

TEST_CASE("strict categories as weak ones") {
  for (auto& [name, c] : oracle::category_corpus()) {
    CAPTURE(name);
    auto s = oracle::diag(name, c);
    CHECK(validate_weak_omega_category(*s).ok());
    CategoryExtraction e = extract_category(*s);
    CHECK(e.log.ok());
    CHECK(same_tables(e.category, c));
    CHECK_FALSE(e.log.steps.empty());
  }
  CHECK(validate_weak_omega_category(strict_as_weak(std::make_shared<FiniteMagma>(terminal_magma(3)))).ok());
  CHECK_THROWS_AS(strict_as_weak(std::make_shared<FiniteMagma>(fx::codiscrete())), Error);
}

TEST_CASE("extracting C3 matches normal forms of GF modulo three") {
  FiniteMagma c3 = fx::cyclic_group(3);
  CategoryExtraction e = extract_category(*oracle::diag("c3", c3));
  REQUIRE(e.log.ok());
  CHECK(oracle::associative_1(e.category));
  const FiniteMagma& cat = e.category;
  int r1 = cat.find(1, "r1");
  for (const auto& bucket : enumerate_terms(fx::gf(), 7, 1))
    for (const Term& t : bucket) {
      if (t->dim != 1) continue;
      int len = static_cast<int>(nf(t).path.gens.size());
      int expect = len % 3 == 0 ? cat.id(0, 0) : cat.find(1, "r" + std::to_string(len % 3));
      CHECK(eval_gf(cat, r1, t) == expect);
    }
}

TEST_CASE("category extraction reports a broken splitting") {
  auto m = std::make_shared<const FiniteMagma>(fx::ciso());
  Span s = *oracle::diag("ciso", *m);
  GraphMorphism swap = identity_graph_morphism(m->graph);
  std::swap(swap.map[0][0], swap.map[0][1]);
  swap.map[1][m->find(1, "f")] = m->find(1, "g");
  swap.map[1][m->find(1, "g")] = m->find(1, "f");
  swap.map[1][m->find(1, "id_x")] = m->find(1, "id_y");
  swap.map[1][m->find(1, "id_y")] = m->find(1, "id_x");
  REQUIRE(validate_magma_morphism(*m, *m, swap).ok());
  s.lambda = std::make_shared<TableMap>(m, m, swap, "swap");
  CategoryExtraction e = extract_category(s);
  REQUIRE_FALSE(e.log.ok());
  CHECK(e.log.failure->find("splitting") != std::string::npos);

  CHECK_THROWS_AS(extract_category(fx::codiscrete_span()), Error);
}

TEST_CASE("bicategory extraction from a strict 2-category") {
  FiniteMagma m = fx::strict_two_iso();
  BicategoryExtraction e = extract_bicategory(*oracle::diag("two-iso", m));
  REQUIRE(e.log.ok());
  const BicategoryData& b = e.bicategory;
  CHECK(e.axioms.ok());
  for (const auto& [key, cell] : b.assoc) CHECK(b.cells.is_identity(2, cell));
  for (int f = 0; f < m.count(1); ++f) {
    CHECK(b.lunit[f] == m.id(1, f));
    CHECK(b.runit[f] == m.id(1, f));
  }
}

TEST_CASE("bicategory extraction recovers WB1") {
  BicategoryData wb1 = fx::wb1_bicategory();
  REQUIRE(validate_bicategory(wb1).ok());
  REQUIRE(pentagon(wb1));
  Span w = weakify_bicategory(wb1, 4);
  BicategoryExtraction e = extract_bicategory(w);
  REQUIRE(e.log.ok());
  const BicategoryData& b = e.bicategory;
  CHECK(same_tables(b.cells, wb1.cells));
  CHECK(b.assoc == wb1.assoc);
  CHECK(b.lunit == wb1.lunit);
  CHECK(b.runit == wb1.runit);
  CHECK(pentagon(b));
  int f = b.cells.find(1, "f");
  CHECK(b.cells.name(2, b.assoc.at({f, f, f})) == "s_f");
  int nonidentity = 0;
  for (const auto& [key, cell] : b.assoc) nonidentity += !b.cells.is_identity(2, cell);
  CHECK(nonidentity == 1);
  int logged = 0;
  for (const auto& step : e.log.steps)
    logged += step.rfind("associator", 0) == 0 && step.find("λ-image") != std::string::npos &&
              step.find("quasi-inverse") == std::string::npos;
  CHECK(logged == static_cast<int>(b.assoc.size()));
}

TEST_CASE("weakify then extract is the identity on coherence data") {
  for (const BicategoryData& b : {fx::z2z2_bicategory(), strict_bicategory(fx::strict_two_iso())}) {
    CAPTURE(b.name);
    BicategoryExtraction e = extract_bicategory(weakify_bicategory(b, 4));
    REQUIRE(e.log.ok());
    CHECK(e.bicategory.assoc == b.assoc);
    CHECK(e.bicategory.lunit == b.lunit);
    CHECK(e.bicategory.runit == b.runit);
  }
}

TEST_CASE("weakified bicategories are weak omega categories") {
  Report r = validate_weak_omega_category(weakify_bicategory(fx::wb1_bicategory(), 4));
  CHECK(r.ok());
  CHECK(r.bound == 4);
  // one object, one 1-cell, one 2-cell
  Span t = weakify_bicategory(strict_bicategory(terminal_magma(2)), 4);
  CHECK(validate_weak_omega_category(t).ok());
  CHECK(extract_bicategory(t).log.ok());

  BicategoryData broken = fx::wb1_bicategory();
  int f = broken.cells.find(1, "f");
  broken.assoc[{f, f, f}] = broken.cells.id(1, f);
  broken.assoc[{f, f, 0}] = broken.cells.find(2, "s_f");
  CHECK_THROWS_AS(weakify_bicategory(broken), Error);
}

TEST_CASE("bridges between 1-terms of Z2xZ2 follow the generator words") {
  Span w = weakify_bicategory(fx::z2z2_bicategory(), 5);
  auto ones = w.x2->cells(1, 7);
  int bridged = 0, expected = 0;
  for (const Cell& u : ones)
    for (const Cell& v : ones) {
      bool equal_words = word(u.term) == word(v.term);
      auto b = w.r->bridge(u, v);
      CHECK(b.has_value() == equal_words);
      if (!b) continue;
      CHECK(w.x2->same(w.x2->dom(*b), u));
      CHECK(w.x2->same(w.x2->cod(*b), v));
      expected += equal_words;
      ++bridged;
    }
  CHECK(bridged == expected);
  CHECK(bridged > static_cast<int>(ones.size()));
}

TEST_CASE("identifying isomorphic objects is fully faithful on cliques") {
  // x ≅ y by f, g and one arrow into z from each
  FiniteMagma m = fx::category({"x", "y", "z"}, {{"f", "x", "y"}, {"g", "y", "x"}, {"u", "x", "z"}, {"v", "y", "z"}},
                               {{"f", "g", "id_x"}, {"g", "f", "id_y"}, {"f", "v", "u"}, {"g", "u", "v"}});
  REQUIRE(validate_strict(m).ok());
  auto hom_count = [](const FiniteMagma& c, int a, int b) {
    int n = 0;
    for (int k = 0; k < c.count(1); ++k) n += c.dom(1, k) == a && c.cod(1, k) == b;
    return n;
  };
  auto faithful_full = [&](const FiniteMagma& c, const std::vector<std::array<int, 3>>& glue) {
    EqRelation e = generated_congruence(c, glue);
    Quotient q = quotient_magma(c, e);
    for (int a = 0; a < c.count(0); ++a)
      for (int b = 0; b < c.count(0); ++b) {
        int pa = q.projection.map[0][a], pb = q.projection.map[0][b];
        if (hom_count(c, a, b) != hom_count(q.magma, pa, pb)) return false;
        std::set<int> image;
        for (int k = 0; k < c.count(1); ++k)
          if (c.dom(1, k) == a && c.cod(1, k) == b) image.insert(q.projection.map[1][k]);
        if (static_cast<int>(image.size()) != hom_count(c, a, b)) return false;
      }
    return true;
  };
  CHECK(faithful_full(m, {{0, m.find(0, "x"), m.find(0, "y")}, {1, m.find(1, "f"), m.find(1, "id_x")}}));
  FiniteMagma ci = fx::ciso();
  CHECK(faithful_full(ci, {{0, 0, 1}, {1, ci.find(1, "f"), ci.find(1, "id_x")}}));
  // C2 has two automorphisms of its object, so its isomorphisms are no clique
  FiniteMagma c2 = fx::cyclic_group(2);
  CHECK_FALSE(faithful_full(c2, {{1, c2.find(1, "r1"), c2.find(1, "id_*")}}));
}
