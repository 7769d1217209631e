// Test-side oracles: brute-force checks written directly against the raw
// tables, sharing no code with the library algorithms they cross-check.
#pragma once

#include <functional>
#include <map>
#include <numeric>
#include <set>
#include <string>
#include <vector>

#include "womega/fixtures.hpp"
#include "womega/io.hpp"

namespace oracle {

using namespace womega;

inline std::shared_ptr<const Span> diag(const std::string& name, const FiniteMagma& m) {
  return std::make_shared<Span>(strict_as_weak(std::make_shared<FiniteMagma>(m), name));
}

inline const FiniteMagma& x1_of(const Span& s) { return *s.x1->tables(); }

// A pseudo-functor between two diagonal spans given by one table.
inline PseudoFunctorData between(std::shared_ptr<const Span> s, std::shared_ptr<const Span> t, const GraphMorphism& f,
                                 const std::string& name = "F") {
  auto src = std::shared_ptr<const FiniteMagma>(s, s->x1->tables());
  auto tgt = std::shared_ptr<const FiniteMagma>(t, t->x1->tables());
  auto m = std::make_shared<TableMap>(src, tgt, f, name);
  return PseudoFunctorData{name, s, t, m, m, m};
}

// Every reflexive graph morphism src -> tgt (cells above the target's
// truncation go to formal identities), by backtracking over dimensions.
inline std::vector<GraphMorphism> graph_maps(const FiniteMagma& src, const FiniteMagma& tgt, std::size_t cap = 5000) {
  std::vector<GraphMorphism> out;
  GraphMorphism f;
  f.map.resize(src.top() + 1);
  for (int d = 0; d <= src.top(); ++d) f.map[d].assign(src.count(d), -1);
  std::vector<std::pair<int, int>> order;
  for (int d = 0; d <= src.top(); ++d)
    for (int k = 0; k < src.count(d); ++k) order.push_back({d, k});
  std::function<void(std::size_t)> go = [&](std::size_t p) {
    if (out.size() >= cap) return;
    if (p == order.size()) {
      out.push_back(f);
      return;
    }
    auto [d, k] = order[p];
    int td = std::min(d, tgt.top());
    for (int c = 0; c < tgt.count(td); ++c) {
      if (d >= 1) {
        int s = f.map[d - 1][src.dom(d, k)], t = f.map[d - 1][src.cod(d, k)];
        if (d <= tgt.top()) {
          if (tgt.dom(d, c) != s || tgt.cod(d, c) != t) continue;
        } else if (c != s || c != t) {
          continue;
        }
        int base = src.graph.identity_base(d, k);
        if (base >= 0 && d <= tgt.top() && tgt.id(d - 1, f.map[d - 1][base]) != c) continue;
      }
      f.map[d][k] = c;
      go(p + 1);
    }
    f.map[d][k] = -1;
  };
  go(0);
  return out;
}

inline bool preserves_composition(const FiniteMagma& src, const FiniteMagma& tgt, const GraphMorphism& f) {
  for (int j = 1; j <= src.top(); ++j)
    for (int i = 0; i < j; ++i)
      for (int a = 0; a < src.count(j); ++a)
        for (int b = 0; b < src.count(j); ++b) {
          int c = src.comp(i, j, a, b);
          if (c < 0) continue;
          if (map_cell(src, tgt, f, j, c) != tgt.comp(i, j, map_cell(src, tgt, f, j, a), map_cell(src, tgt, f, j, b)))
            return false;
        }
  return true;
}

// Axioms 1-3 for a 1-skeletal table: defined exactly on composable pairs,
// with results between the right endpoints.
inline bool one_skeletal_table_ok(const FiniteMagma& m) {
  const auto& g = m.graph;
  int n = g.size(1);
  for (int a = 0; a < n; ++a)
    for (int b = 0; b < n; ++b) {
      int c = m.table[1][0][a * n + b];
      bool composable = g.cod[1][a] == g.dom[1][b];
      if (composable != (c >= 0)) return false;
      if (c >= 0 && (g.dom[1][c] != g.dom[1][a] || g.cod[1][c] != g.cod[1][b])) return false;
    }
  return true;
}

inline bool associative_1(const FiniteMagma& m) {
  int n = m.graph.size(1);
  for (int a = 0; a < n; ++a)
    for (int b = 0; b < n; ++b)
      for (int c = 0; c < n; ++c) {
        int ab = m.comp(0, 1, a, b), bc = m.comp(0, 1, b, c);
        if (ab < 0 || bc < 0) continue;
        if (m.comp(0, 1, ab, c) != m.comp(0, 1, a, bc)) return false;
      }
  return true;
}

// Congruence on the 1-cells of a one-object 1-skeletal magma generated by
// `pairs`, by naive saturation. Returns a class label per 1-cell.
inline std::vector<int> congruence_1(const FiniteMagma& m, const std::vector<std::pair<int, int>>& pairs) {
  int n = m.graph.size(1);
  std::vector<int> cls(n);
  std::iota(cls.begin(), cls.end(), 0);
  auto merge = [&](int x, int y) {
    int cx = cls[x], cy = cls[y];
    if (cx == cy) return false;
    for (int& c : cls)
      if (c == cy) c = cx;
    return true;
  };
  for (auto [x, y] : pairs) merge(x, y);
  for (bool changed = true; changed;) {
    changed = false;
    for (int a = 0; a < n; ++a)
      for (int a2 = 0; a2 < n; ++a2)
        for (int b = 0; b < n; ++b)
          for (int b2 = 0; b2 < n; ++b2)
            if (cls[a] == cls[a2] && cls[b] == cls[b2]) {
              int c = m.comp(0, 1, a, b), c2 = m.comp(0, 1, a2, b2);
              if (c >= 0 && c2 >= 0) changed |= merge(c, c2);
            }
  }
  return cls;
}

// Inverse of a top-dimensional cell x of dimension j under ⊙_{j-1}, or -1.
inline int inverse_top(const FiniteMagma& m, int j, int x) {
  for (int y = 0; y < m.count(j); ++y) {
    int xy = m.comp(j - 1, j, x, y), yx = m.comp(j - 1, j, y, x);
    if (xy >= 0 && yx >= 0 && xy == m.id(j - 1, m.dom(j, x)) && yx == m.id(j - 1, m.cod(j, x))) return y;
  }
  return -1;
}

// Internal equivalences of a finite magma of dimension 1 or 2 by direct
// search: top cells are equivalences iff invertible; a 1-cell f: a -> b of a
// 2-skeletal magma is one iff some g: b -> a has invertible 2-cells between
// f⊙g and id_a and between g⊙f and id_b.
inline std::vector<std::vector<bool>> eq_bruteforce(const FiniteMagma& m) {
  int n = m.top();
  std::vector<std::vector<bool>> eq(n + 1);
  for (int d = 1; d <= n; ++d) eq[d].assign(m.count(d), false);
  if (n < 1 || n > 2) return eq;
  for (int x = 0; x < m.count(n); ++x) eq[n][x] = m.is_identity(n, x) || inverse_top(m, n, x) >= 0;
  if (n == 1) return eq;
  auto linked = [&](int p, int q) {  // an invertible 2-cell p => q
    for (int x = 0; x < m.count(2); ++x)
      if (m.dom(2, x) == p && m.cod(2, x) == q && eq[2][x]) return true;
    return false;
  };
  for (int f = 0; f < m.count(1); ++f)
    for (int g = 0; g < m.count(1) && !eq[1][f]; ++g) {
      int fg = m.comp(0, 1, f, g), gf = m.comp(0, 1, g, f);
      if (fg < 0 || gf < 0) continue;
      int ia = m.id(0, m.dom(1, f)), ib = m.id(0, m.cod(1, f));
      eq[1][f] = linked(fg, ia) && linked(gf, ib);
    }
  return eq;
}

// Π on 0-cells from the brute-force Eq: union-find over equivalence 1-cells.
inline int pi_count_bruteforce(const FiniteMagma& m) {
  int n0 = m.count(0);
  std::vector<int> p(n0);
  std::iota(p.begin(), p.end(), 0);
  std::function<int(int)> find = [&](int x) { return p[x] == x ? x : p[x] = find(p[x]); };
  if (m.top() >= 1) {
    auto eq = eq_bruteforce(m);
    for (int f = 0; f < m.count(1); ++f)
      if (eq[1][f]) p[find(m.dom(1, f))] = find(m.cod(1, f));
  }
  int c = 0;
  for (int x = 0; x < n0; ++x) c += find(x) == x;
  return c;
}

// Ordinary equivalence of categories: essentially surjective and fully
// faithful, for a functor between 1-skeletal finite categories.
inline bool category_equivalence(const FiniteMagma& c, const FiniteMagma& d, const GraphMorphism& f) {
  auto eq = eq_bruteforce(d);
  auto iso = [&](int x, int y) {
    if (x == y) return true;
    for (int u = 0; u < d.count(1); ++u)
      if (d.dom(1, u) == x && d.cod(1, u) == y && eq[1][u]) return true;
    return false;
  };
  for (int y = 0; y < d.count(0); ++y) {
    bool hit = false;
    for (int x = 0; x < c.count(0) && !hit; ++x) hit = iso(f.map[0][x], y);
    if (!hit) return false;
  }
  for (int a = 0; a < c.count(0); ++a)
    for (int b = 0; b < c.count(0); ++b) {
      std::set<int> image;
      int size = 0;
      for (int u = 0; u < c.count(1); ++u)
        if (c.dom(1, u) == a && c.cod(1, u) == b) ++size, image.insert(f.map[1][u]);
      int target = 0;
      for (int v = 0; v < d.count(1); ++v)
        if (d.dom(1, v) == f.map[0][a] && d.cod(1, v) == f.map[0][b]) ++target;
      if (static_cast<int>(image.size()) != size || size != target) return false;
    }
  return true;
}

// Biequivalence of finite 2-skeletal bicategories: every object equivalent
// to an image object, every hom functor essentially surjective up to
// invertible 2-cells and bijective on each set of 2-cells.
inline bool biequivalence(const FiniteMagma& c, const FiniteMagma& d, const GraphMorphism& f) {
  auto eq = eq_bruteforce(d);
  auto equiv_obj = [&](int x, int y) {
    if (x == y) return true;
    for (int u = 0; u < d.count(1); ++u)
      if (d.dom(1, u) == x && d.cod(1, u) == y && eq[1][u]) return true;
    return false;
  };
  auto iso_1 = [&](int p, int q) {
    if (p == q) return true;
    for (int x = 0; x < d.count(2); ++x)
      if (d.dom(2, x) == p && d.cod(2, x) == q && eq[2][x]) return true;
    return false;
  };
  for (int y = 0; y < d.count(0); ++y) {
    bool hit = false;
    for (int x = 0; x < c.count(0) && !hit; ++x) hit = equiv_obj(f.map[0][x], y);
    if (!hit) return false;
  }
  for (int a = 0; a < c.count(0); ++a)
    for (int b = 0; b < c.count(0); ++b) {
      int fa = f.map[0][a], fb = f.map[0][b];
      for (int v = 0; v < d.count(1); ++v) {
        if (d.dom(1, v) != fa || d.cod(1, v) != fb) continue;
        bool hit = false;
        for (int u = 0; u < c.count(1) && !hit; ++u)
          if (c.dom(1, u) == a && c.cod(1, u) == b) hit = iso_1(f.map[1][u], v);
        if (!hit) return false;
      }
      for (int u = 0; u < c.count(1); ++u)
        for (int u2 = 0; u2 < c.count(1); ++u2) {
          if (c.dom(1, u) != a || c.cod(1, u) != b || c.dom(1, u2) != a || c.cod(1, u2) != b) continue;
          std::set<int> image;
          int size = 0, target = 0;
          for (int x = 0; x < c.count(2); ++x)
            if (c.dom(2, x) == u && c.cod(2, x) == u2) ++size, image.insert(f.map[2][x]);
          for (int y = 0; y < d.count(2); ++y)
            if (d.dom(2, y) == f.map[1][u] && d.cod(2, y) == f.map[1][u2]) ++target;
          if (static_cast<int>(image.size()) != size || size != target) return false;
        }
    }
  return true;
}

// Class map of Π F computed from Π of both ends.
inline std::vector<int> pi_map(const PseudoFunctorData& f) {
  PiResult ps = pi(*f.src), pt = pi(*f.tgt);
  std::vector<int> out;
  for (const auto& c : ps.classes) out.push_back(pt.class_of[f.f1->apply(Cell{0, c.front(), nullptr}).index]);
  return out;
}

// Small categories used across suites.
inline std::vector<std::pair<std::string, FiniteMagma>> category_corpus() {
  namespace fx = womega::fixtures;
  return {{"pt", fx::category({"p"}, {}, {})},
          {"ciso", fx::ciso()},
          {"arrow", fx::arrow_category()},
          {"discrete2", fx::discrete2()},
          {"idempotent", fx::walking_idempotent()},
          {"c2", fx::cyclic_group(2)},
          {"c3", fx::cyclic_group(3)}};
}

}  // namespace oracle
