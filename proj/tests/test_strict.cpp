#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <random>

#include "support.hpp"

using namespace womega;
namespace fx = womega::fixtures;

namespace {

// Two composable columns of two composable 2-cells each:
// a: f => g, b: g => h over x -> y and c: p => q, d: q => r over y -> z.
OmegaGraph grid() {
  OmegaGraph g(2);
  for (const char* o : {"x", "y", "z"}) g.add(0, o);
  for (const char* f : {"f", "g", "h"}) g.add(1, f, "x", "y");
  for (const char* p : {"p", "q", "r"}) g.add(1, p, "y", "z");
  g.add(2, "a", "f", "g");
  g.add(2, "b", "g", "h");
  g.add(2, "c", "p", "q");
  g.add(2, "d", "q", "r");
  g.add_identities();
  return g;
}

Term gen(const OmegaGraph& g, const std::string& n) { return make_gen(g, n); }

std::vector<Term> all_terms(const OmegaGraph& g, int size, int dim) {
  std::vector<Term> out;
  for (const auto& bucket : enumerate_terms(g, size, dim)) out.insert(out.end(), bucket.begin(), bucket.end());
  return out;
}

}  // namespace

TEST_CASE("strict categories pass the strict laws") {
  for (auto& [name, c] : oracle::category_corpus()) {
    CAPTURE(name);
    CHECK(validate_strict(c).ok());
  }
  CHECK(validate_strict(fx::strict_two_iso()).ok());
  CHECK(validate_strict(fx::scalar_z2()).ok());
}

TEST_CASE("a non-associative three element table") {
  OmegaGraph g(1);
  g.add(0, "*");
  g.add(1, "e", "*", "*");
  g.id_of[1] = {0};
  g.add(1, "a", "*", "*");
  g.add(1, "b", "*", "*");
  FiniteMagma m(g);
  const int prod[3][3] = {{0, 1, 2}, {1, 2, 2}, {2, 1, 1}};
  for (int x = 0; x < 3; ++x)
    for (int y = 0; y < 3; ++y) m.set_comp(0, 1, x, y, prod[x][y]);
  REQUIRE(validate_magma(m).ok());
  REQUIRE_FALSE(oracle::associative_1(m));
  Report r = validate_strict(m);
  REQUIRE(r.has("associativity"));
  CHECK_FALSE(r.has("identity"));
  CHECK(r.violations.front().detail.find("⊙") != std::string::npos);
}

TEST_CASE("a broken horizontal product violates interchange") {
  FiniteMagma m = fx::scalar_z2();
  int s = m.find(2, "s");
  m.table[2][0][s * m.count(2) + s] = s;
  REQUIRE(validate_magma(m).ok());
  Report r = validate_strict(m);
  CHECK(r.has("interchange"));
  CHECK_FALSE(r.has("associativity"));
}

TEST_CASE("normal form examples") {
  OmegaGraph g = fx::gf();
  Term f = gen(g, "f"), id = make_idn(gen(g, "*"));
  CHECK(nf(term_compose(0, id, f)) == nf(f));
  std::set<std::string> classes;
  for (const Term& x : {f, id})
    for (const Term& y : {f, id}) classes.insert(nf(term_compose(0, x, y)).code());
  CHECK(classes.size() == 3);

  OmegaGraph q = grid();
  Term a = gen(q, "a"), b = gen(q, "b"), c = gen(q, "c"), d = gen(q, "d");
  Term lhs = term_compose(0, term_compose(1, a, b), term_compose(1, c, d));
  Term rhs = term_compose(1, term_compose(0, a, c), term_compose(0, b, d));
  CHECK(nf(lhs) == nf(rhs));
}

TEST_CASE("strict equality examples") {
  OmegaGraph g = fx::gf();
  Term f = gen(g, "f");
  Term ff = term_compose(0, f, f);
  CHECK(strict_eq(term_compose(0, ff, f), term_compose(0, f, ff)));
  CHECK_FALSE(strict_eq(ff, f));
  REQUIRE(oracle_eq(ff, f).verdict != Verdict::True);

  OmegaGraph two = fx::one_two_gen();
  Term f2 = gen(two, "f");
  Term idf = make_idn(f2);
  CHECK(strict_eq(term_compose(0, idf, idf), make_idn(term_compose(0, f2, f2))));
  CHECK_THROWS_AS(nf(make_bridge(f, make_idn(gen(g, "*")))), Error);
}

TEST_CASE("rewriting oracle examples") {
  OmegaGraph g = fx::gf();
  Term f = gen(g, "f");
  Term ff = term_compose(0, f, f);
  CHECK(oracle_eq(term_compose(0, ff, f), term_compose(0, f, ff), 8).verdict == Verdict::True);
  CHECK(oracle_eq(ff, f, 8).verdict == Verdict::False);

  OmegaGraph q = grid();
  Term a = gen(q, "a"), b = gen(q, "b"), c = gen(q, "c"), d = gen(q, "d");
  Term lhs = term_compose(0, term_compose(1, a, b), term_compose(1, c, d));
  Term rhs = term_compose(1, term_compose(0, a, c), term_compose(0, b, d));
  CHECK(oracle_eq(lhs, rhs, 10).verdict == Verdict::True);
  CHECK_THROWS_AS(oracle_eq(lhs, rhs, 5), Error);
}

TEST_CASE("single law rewrites preserve normal forms") {
  std::mt19937 rng(2024);
  std::vector<OmegaGraph> graphs = {fx::gf(), fx::one_two_gen(), fx::arrow_graph(), grid(),
                                    fx::strict_two_iso().graph, fx::scalar_z2().graph};
  std::vector<std::pair<Term, int>> pool;  // term, graph index
  for (std::size_t k = 0; k < graphs.size(); ++k)
    for (const Term& t : all_terms(graphs[k], 7, 3)) pool.push_back({t, static_cast<int>(k)});
  REQUIRE(pool.size() > 1000);
  int pairs = 0, attempts = 0;
  while (pairs < 12000 && attempts < 200000) {
    ++attempts;
    Term t = pool[rng() % pool.size()].first;
    // walk a few rewrites deep so larger shapes are exercised as well
    for (int step = 0; step < 3; ++step) {
      auto rewrites = law_rewrites(t, 30);
      if (rewrites.empty()) break;
      const RewriteStep& r = rewrites[rng() % rewrites.size()];
      CAPTURE(to_string(t));
      CAPTURE(to_string(r.result));
      CAPTURE(r.law);
      CHECK(nf(t) == nf(r.result));
      ++pairs;
      t = r.result;
    }
  }
  CHECK(pairs >= 10000);
}

TEST_CASE("normal forms agree with the rewriting oracle on small terms") {
  std::vector<OmegaGraph> graphs = {fx::gf(), fx::one_two_gen()};
  for (const OmegaGraph& g : graphs) {
    std::vector<Term> terms = all_terms(g, 7, 3);
    int decisive = 0;
    for (std::size_t x = 0; x < terms.size(); ++x)
      for (std::size_t y = x + 1; y < terms.size(); ++y) {
        if (terms[x]->dim != terms[y]->dim) continue;
        OracleResult o = oracle_eq(terms[x], terms[y], 8);
        if (o.verdict == Verdict::Unknown) continue;
        ++decisive;
        CAPTURE(to_string(terms[x]));
        CAPTURE(to_string(terms[y]));
        CHECK(strict_eq(terms[x], terms[y]) == (o.verdict == Verdict::True));
      }
    CHECK(decisive > 300);
  }
}

TEST_CASE("normal forms commute with boundaries and are idempotent") {
  for (const OmegaGraph& g : {fx::one_two_gen(), grid(), fx::strict_two_iso().graph, fx::scalar_z2().graph}) {
    for (const Term& t : all_terms(g, 7, 3)) {
      StrictNF n = nf(t);
      CHECK(n.dim == t->dim);
      if (t->dim >= 1)
        for (bool src : {true, false}) CHECK(nf_boundary(n, src) == nf(term_boundary(t, src, t->dim - 1)));
      CHECK(nf(nf_to_term(g, n)) == n);
      CHECK(nf_identity(n) == nf(make_idn(t)));
    }
  }
}

TEST_CASE("normal form composition matches term composition") {
  std::mt19937 rng(5);
  OmegaGraph g = grid();
  std::vector<Term> terms = all_terms(g, 5, 2);
  int done = 0;
  for (int round = 0; round < 20000 && done < 2000; ++round) {
    const Term& x = terms[rng() % terms.size()];
    const Term& y = terms[rng() % terms.size()];
    if (x->dim != y->dim || x->dim == 0) continue;
    int i = rng() % x->dim;
    Term c = try_comp(i, x, y);
    if (!c) continue;
    ++done;
    CHECK(nf_compose(i, nf(x), nf(y)) == nf(c));
  }
  CHECK(done >= 500);
}
