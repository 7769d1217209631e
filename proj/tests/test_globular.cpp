#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <random>

#include "womega/fixtures.hpp"

using namespace womega;
namespace fx = womega::fixtures;

namespace {

// Random valid reflexive 2-graph: boundaries drawn so that the globular
// relations hold.
OmegaGraph random_graph(std::mt19937& rng) {
  OmegaGraph g(2);
  int n0 = 1 + rng() % 3;
  for (int i = 0; i < n0; ++i) g.add(0, "x" + std::to_string(i));
  int n1 = rng() % 5;
  for (int i = 0; i < n1; ++i) g.add(1, "f" + std::to_string(i), rng() % n0, rng() % n0);
  g.add_identities();
  int n2 = rng() % 5;
  for (int i = 0; i < n2; ++i) {
    int a = rng() % g.size(1);
    std::vector<int> par;
    for (int b = 0; b < g.size(1); ++b)
      if (is_parallel(g, 1, a, b)) par.push_back(b);
    g.add(2, "s" + std::to_string(i), a, par[rng() % par.size()]);
  }
  g.add_identities();
  return g;
}

}  // namespace

TEST_CASE("two discrete objects form a valid graph") {
  OmegaGraph g = fx::g2();
  CHECK(g.size(0) == 2);
  CHECK(validate_omega_graph(g).ok());
}

TEST_CASE("the empty presentation is valid") { CHECK(validate_omega_graph(OmegaGraph(0)).ok()); }

TEST_CASE("a 2-cell between 1-cells with different sources breaks the globular relations") {
  OmegaGraph g(2);
  g.add(0, "x");
  g.add(0, "y");
  g.add(0, "z");
  g.add(1, "f", "x", "z");
  g.add(1, "g", "y", "z");
  g.add(2, "alpha", "f", "g");
  g.add_identities();
  Report r = validate_omega_graph(g);
  REQUIRE_FALSE(r.ok());
  CHECK(r.has("globular"));
  bool named = false;
  for (const auto& v : r.violations) named |= v.detail == "globular relation dom∘dom=dom∘cod at alpha";
  CHECK(named);
}

TEST_CASE("dangling references are their own violation class") {
  OmegaGraph g(1);
  g.add(0, "x");
  g.add(1, "f", 0, 7);
  g.reflexive = false;
  Report r = validate_omega_graph(g);
  CHECK(r.has("unknown-cell"));
  CHECK_FALSE(r.has("globular"));
}

TEST_CASE("identity cells must sit on their base") {
  OmegaGraph g = fx::arrow_graph();
  g.id_of[1][g.find(0, "x")] = g.find(1, "u");  // u ends at y
  CHECK(validate_omega_graph(g).has("identity"));
}

TEST_CASE("parallelism examples") {
  OmegaGraph g2 = fx::g2();
  CHECK(is_parallel(g2, 0, 0, 0, 1));
  OmegaGraph gf = fx::gf();
  CHECK(is_parallel(gf, 1, gf.find(1, "f"), gf.find(1, "id_*")));
  OmegaGraph arrow(1);
  arrow.add(0, "x");
  arrow.add(0, "y");
  arrow.add(1, "u", "x", "y");
  arrow.add(1, "v", "x", "x");
  CHECK_FALSE(is_parallel(arrow, 1, 0, 1));
  CHECK_THROWS_AS(is_parallel(gf, 0, 0, 1, 0), Error);
}

// Identities on parallel cells are parallel exactly when the cells coincide,
// since dom(id x) = cod(id x) = x.
TEST_CASE("parallelism is an equivalence relation and lifts through identities") {
  std::mt19937 rng(7);
  for (int round = 0; round < 200; ++round) {
    OmegaGraph g = random_graph(rng);
    REQUIRE(validate_omega_graph(g).ok());
    for (int d = 0; d <= 2; ++d) {
      int n = g.size(d);
      for (int a = 0; a < n; ++a) {
        CHECK(is_parallel(g, d, a, a));
        for (int b = 0; b < n; ++b) {
          CHECK(is_parallel(g, d, a, b) == is_parallel(g, d, b, a));
          for (int c = 0; c < n; ++c)
            if (is_parallel(g, d, a, b) && is_parallel(g, d, b, c)) CHECK(is_parallel(g, d, a, c));
          if (d < 2 && is_parallel(g, d, a, b))
            CHECK(is_parallel(g, d + 1, g.id_of[d + 1][a], g.id_of[d + 1][b]) == (a == b));
        }
      }
    }
  }
}

TEST_CASE("identity graph morphism is valid") {
  for (const OmegaGraph& g : {fx::g2(), fx::gf(), fx::one_two_gen(), fx::arrow_graph()})
    CHECK(validate_graph_morphism(g, g, identity_graph_morphism(g)).ok());
}

TEST_CASE("a morphism that moves a boundary is rejected") {
  OmegaGraph g = fx::arrow_graph();
  GraphMorphism f = identity_graph_morphism(g);
  f.map[0][1] = 0;  // y -> x but u keeps its target y
  CHECK_FALSE(validate_graph_morphism(g, g, f).ok());
}

TEST_CASE("boundaries and identity towers") {
  OmegaGraph g = fx::one_two_gen();
  int alpha = g.find(2, "alpha");
  CHECK(g.boundary(2, alpha, true, 0) == 0);
  CHECK(g.boundary(2, alpha, false, 1) == g.find(1, "f"));
  int tower = g.identity_tower(0, 0, 2);
  CHECK(g.names[2][tower] == "id_id_*");
  CHECK_THROWS_AS(g.boundary(1, 0, true, 1), Error);
}
