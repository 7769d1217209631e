#include "womega/fixtures.hpp"

#include <map>

namespace womega::fixtures {

OmegaGraph g2() {
  OmegaGraph g(0);
  g.add(0, "1");
  g.add(0, "2");
  return g;
}

OmegaGraph gf() {
  OmegaGraph g(1);
  g.add(0, "*");
  g.add(1, "f", "*", "*");
  g.add_identities();
  return g;
}

OmegaGraph one_two_gen() {
  OmegaGraph g(2);
  g.add(0, "*");
  g.add(1, "f", "*", "*");
  g.add(2, "alpha", "f", "f");
  g.add_identities();
  return g;
}

OmegaGraph arrow_graph() {
  OmegaGraph g(1);
  g.add(0, "x");
  g.add(0, "y");
  g.add(1, "u", "x", "y");
  g.add_identities();
  return g;
}

FiniteMagma category(const std::vector<std::string>& objects, const std::vector<Arrow>& arrows,
                     const std::vector<Arrow>& composites) {
  OmegaGraph g(1);
  for (const auto& o : objects) g.add(0, o);
  g.add_identities();
  for (const auto& [n, s, t] : arrows) g.add(1, n, s, t);
  FiniteMagma m(g);
  int cnt = g.size(1);
  for (int a = 0; a < cnt; ++a)
    for (int b = 0; b < cnt; ++b) {
      if (g.cod[1][a] != g.dom[1][b]) continue;
      if (g.is_identity(1, a))
        m.set_comp(0, 1, a, b, b);
      else if (g.is_identity(1, b))
        m.set_comp(0, 1, a, b, a);
    }
  for (const auto& [a, b, c] : composites) m.set_comp(0, a, b, c);
  return m;
}

FiniteMagma z2m() {
  OmegaGraph g(1);
  g.add(0, "*");
  g.add(1, "e", "*", "*");
  g.id_of[1] = {0};
  g.add(1, "a", "*", "*");
  g.add(1, "b", "*", "*");
  FiniteMagma m(g);
  for (const char* x : {"e", "a", "b"}) {
    m.set_comp(0, "e", x, x);
    m.set_comp(0, x, "e", x);
  }
  m.set_comp(0, "a", "a", "b");
  m.set_comp(0, "a", "b", "a");
  m.set_comp(0, "b", "a", "a");
  m.set_comp(0, "b", "b", "b");
  return m;
}

FiniteMagma ciso() {
  return category({"x", "y"}, {{"f", "x", "y"}, {"g", "y", "x"}}, {{"f", "g", "id_x"}, {"g", "f", "id_y"}});
}

FiniteMagma arrow_category() { return category({"x", "y"}, {{"u", "x", "y"}}, {}); }

FiniteMagma discrete2() { return category({"x", "y"}, {}, {}); }

FiniteMagma walking_idempotent() { return category({"*"}, {{"e", "*", "*"}}, {{"e", "e", "e"}}); }

FiniteMagma cyclic_group(int n) {
  std::vector<Arrow> arrows, comps;
  auto nm = [&](int k) { return k % n == 0 ? std::string("id_*") : "r" + std::to_string(k % n); };
  for (int k = 1; k < n; ++k) arrows.push_back({nm(k), "*", "*"});
  for (int a = 1; a < n; ++a)
    for (int b = 1; b < n; ++b) comps.push_back({nm(a), nm(b), nm(a + b)});
  return category({"*"}, arrows, comps);
}

FiniteMagma strict_two_iso() {
  OmegaGraph g(2);
  g.add(0, "x");
  g.add(0, "y");
  g.add_identities();
  g.add(1, "f", "x", "y");
  g.add(1, "g", "x", "y");
  g.add_identities();
  g.add(2, "alpha", "f", "g");
  g.add(2, "beta", "g", "f");
  FiniteMagma m(g);
  auto id1 = [&](const std::string& x) { return "id_" + x; };
  // 1-cells: horizontal composition only with identities
  for (std::string c : {"id_x", "id_y", "f", "g"}) {
    int k = g.find(1, c);
    std::string s = g.names[0][g.dom[1][k]], t = g.names[0][g.cod[1][k]];
    m.set_comp(0, id1(s), c, c);
    m.set_comp(0, c, id1(t), c);
  }
  // 2-cells: vertical composition
  std::map<std::string, std::pair<std::string, std::string>> two;  // name -> (dom, cod)
  for (int k = 0; k < g.size(2); ++k) two[g.names[2][k]] = {g.names[1][g.dom[2][k]], g.names[1][g.cod[2][k]]};
  auto vert = [&](const std::string& a, const std::string& b) -> std::string {
    if (a.rfind("id_", 0) == 0) return b;
    if (b.rfind("id_", 0) == 0) return a;
    return a == "alpha" ? "id_f" : "id_g";
  };
  for (const auto& [a, ab] : two)
    for (const auto& [b, bb] : two)
      if (ab.second == bb.first) m.set_comp(1, a, b, vert(a, b));
  // horizontal composition of 2-cells: only whiskering by identities on objects
  for (const auto& [a, ab] : two) {
    int k1 = g.find(1, ab.first);
    std::string s = g.names[0][g.dom[1][k1]], t = g.names[0][g.cod[1][k1]];
    m.set_comp(0, "id_id_" + s, a, a);
    m.set_comp(0, a, "id_id_" + t, a);
  }
  return m;
}

FiniteMagma scalar_z2() {
  OmegaGraph g(2);
  g.add(0, "*");
  g.add_identities();
  g.add(2, "s", "id_*", "id_*");
  FiniteMagma m(g);
  int id = g.find(2, "id_id_*"), sc = g.find(2, "s");
  m.set_comp(0, 1, 0, 0, 0);
  for (int i = 0; i < 2; ++i)
    for (int a : {id, sc})
      for (int b : {id, sc}) m.set_comp(i, 2, a, b, (a == sc) != (b == sc) ? sc : id);
  return m;
}

FiniteMagma codiscrete() {
  const std::vector<std::string> ones{"e", "a", "b"};
  // product table over {e, a, b}
  const int prod[3][3] = {{0, 1, 2}, {1, 2, 2}, {2, 1, 1}};
  OmegaGraph g(2);
  g.add(0, "*");
  for (const auto& o : ones) g.add(1, o, 0, 0);
  g.id_of[1] = {0};
  g.add_identities();
  auto two = [&](int p, int q) { return p == q ? "id_" + ones[p] : ones[p] + ">" + ones[q]; };
  for (int p = 0; p < 3; ++p)
    for (int q = 0; q < 3; ++q)
      if (p != q) g.add(2, two(p, q), p, q);
  FiniteMagma m(g);
  auto cell = [&](int p, int q) { return g.find(2, two(p, q)); };
  for (int p = 0; p < 3; ++p)
    for (int q = 0; q < 3; ++q) {
      m.set_comp(0, 1, p, q, prod[p][q]);
      for (int r = 0; r < 3; ++r) m.set_comp(1, 2, cell(p, q), cell(q, r), cell(p, r));
      for (int p2 = 0; p2 < 3; ++p2)
        for (int q2 = 0; q2 < 3; ++q2)
          m.set_comp(0, 2, cell(p, q), cell(p2, q2), cell(prod[p][p2], prod[q][q2]));
    }
  return m;
}

Span codiscrete_span() {
  auto m = std::make_shared<FiniteMagma>(codiscrete());
  auto t = std::make_shared<FiniteMagma>(terminal_magma(2));
  auto x = std::make_shared<FiniteView>(m, "codiscrete");
  auto r = std::make_shared<TableRelation>(m);
  r->add(0, 0, 0, m->id(0, 0));
  for (int p = 0; p < m->count(1); ++p)
    for (int q = 0; q < m->count(1); ++q)
      for (int c = 0; c < m->count(2); ++c)
        if (m->dom(2, c) == p && m->cod(2, c) == q) r->add(1, p, q, c);
  for (int c = 0; c < m->count(2); ++c) r->add(2, c, c, c);
  auto id = std::make_shared<IdentityMap>();
  auto kappa = std::make_shared<TableMap>(m, t, collapse_morphism(*m), "collapse");
  return Span{"codiscrete", x, x, std::make_shared<FiniteView>(t, "terminal"), id, id, kappa, r, std::nullopt};
}

BicategoryData wb1_bicategory() {
  return cocycle_bicategory(1, [](int x, int y, int z) { return x & y & z; }, "wb1");
}

BicategoryData z2z2_bicategory() {
  return cocycle_bicategory(2, [](int x, int y, int z) { return x & y & z & 1; }, "z2z2");
}

}  // namespace womega::fixtures
