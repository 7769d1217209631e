#include "womega/magma.hpp"

#include <algorithm>
#include <map>
#include <numeric>
#include <set>

#include "womega/strict.hpp"

namespace womega {

void FiniteMagma::ensure_tables() {
  int n = top();
  table.resize(n + 1);
  for (int j = 0; j <= n; ++j) {
    std::size_t sz = static_cast<std::size_t>(graph.size(j)) * graph.size(j);
    table[j].resize(j);
    for (int i = 0; i < j; ++i) table[j][i].resize(sz, -1);
  }
}

std::string FiniteMagma::name(int d, int k) const {
  int b = std::min(d, top());
  std::string base = (k >= 0 && k < graph.size(b)) ? graph.names[b][k] : "#" + std::to_string(k);
  for (int e = b; e < d; ++e) base = "id_" + base;
  return base;
}

int FiniteMagma::dom(int d, int k) const { return d > top() ? k : graph.dom[d][k]; }
int FiniteMagma::cod(int d, int k) const { return d > top() ? k : graph.cod[d][k]; }
int FiniteMagma::id(int d, int k) const { return d >= top() ? k : graph.id_of[d + 1][k]; }

int FiniteMagma::boundary(int d, int k, bool source, int level) const {
  while (d > level) {
    k = source ? dom(d, k) : cod(d, k);
    --d;
  }
  return k;
}

int FiniteMagma::id_tower(int d, int k, int e) const {
  while (d < e) k = id(d++, k);
  return k;
}

bool FiniteMagma::is_identity(int d, int k) const { return d > top() || graph.is_identity(d, k); }

int FiniteMagma::comp(int i, int j, int a, int b) const {
  if (i >= j || a < 0 || b < 0) return -1;
  if (j > top()) {
    if (i >= top()) return a == b ? a : -1;
    j = top();
  }
  int n = graph.size(j);
  if (a >= n || b >= n) return -1;
  return table[j][i][static_cast<std::size_t>(a) * n + b];
}

void FiniteMagma::set_comp(int i, int j, int a, int b, int c) {
  if (j > top() || i >= j) throw Error("composition outside the stored dimensions");
  if (static_cast<int>(table.size()) <= j || static_cast<int>(table[j].size()) <= i) ensure_tables();
  int n = graph.size(j);
  if (table[j][i].size() != static_cast<std::size_t>(n) * n) ensure_tables();
  int& slot = table[j][i][static_cast<std::size_t>(a) * n + b];
  if (slot >= 0 && slot != c)
    conflicts.push_back("comp " + std::to_string(i) + " " + name(j, a) + " " + name(j, b) + " has values " +
                        name(j, slot) + " and " + name(j, c));
  else
    slot = c;
}

void FiniteMagma::set_comp(int i, const std::string& a, const std::string& b, const std::string& c) {
  for (int j = 0; j <= top(); ++j) {
    int ka = graph.find(j, a);
    if (ka < 0) continue;
    int kb = graph.find(j, b), kc = graph.find(j, c);
    if (kb < 0 || kc < 0) throw Error("comp operands of different dimensions: " + a + " " + b + " " + c);
    set_comp(i, j, ka, kb, kc);
    return;
  }
  throw Error("unknown cell " + a);
}

int map_cell(const FiniteMagma& src, const FiniteMagma& tgt, const GraphMorphism& f, int d, int k) {
  int b = std::min(d, src.top());
  int img = f.map[b][k];
  return tgt.id_tower(b, img, d);
}

Report validate_magma(const FiniteMagma& m) {
  Report rep = validate_omega_graph(m.graph);
  if (!m.graph.reflexive) rep.add("identity", "an omega magma needs identity cells");
  if (!rep.ok()) return rep;
  for (const auto& c : m.conflicts) rep.add("axiom-2", c);
  for (int j = 1; j <= m.top(); ++j) {
    int n = m.graph.size(j);
    if (static_cast<int>(m.table.size()) <= j || static_cast<int>(m.table[j].size()) != j) {
      rep.add("unknown-cell", "composition tables missing for dimension " + std::to_string(j));
      continue;
    }
    for (int i = 0; i < j; ++i) {
      const auto& tab = m.table[j][i];
      if (tab.size() != static_cast<std::size_t>(n) * n) {
        rep.add("unknown-cell", "composition table ⊙_" + std::to_string(i) + "^" + std::to_string(j) + " has wrong size");
        continue;
      }
      for (int a = 0; a < n; ++a) {
        for (int b = 0; b < n; ++b) {
          int c = tab[static_cast<std::size_t>(a) * n + b];
          bool ok = m.composable(i, j, a, b);
          std::string pair = "(" + m.name(j, a) + "," + m.name(j, b) + ") under ⊙_" + std::to_string(i) + "^" + std::to_string(j);
          if (c < -1 || c >= n) {
            rep.add("unknown-cell", "composite of " + pair + " is not a cell");
            continue;
          }
          if (c == -1) {
            if (ok) rep.add("axiom-3", "composite of compatible pair " + pair + " is undefined");
            continue;
          }
          if (!ok) {
            rep.add("axiom-1", "composite defined on incompatible pair " + pair);
            continue;
          }
          if (i == j - 1) {
            if (m.dom(j, c) != m.dom(j, a) || m.cod(j, c) != m.cod(j, b))
              rep.add("axiom-4", "boundary of " + m.name(j, c) + " = " + pair + " is not (dom a, cod b)");
          } else {
            int dc = m.comp(i, j - 1, m.dom(j, a), m.dom(j, b));
            int cc = m.comp(i, j - 1, m.cod(j, a), m.cod(j, b));
            if (dc != m.dom(j, c) || cc != m.cod(j, c))
              rep.add("axiom-5", "boundaries of " + m.name(j, c) + " = " + pair + " are not the composites of the boundaries");
          }
        }
      }
    }
  }
  return rep;
}

Report validate_magma_morphism(const FiniteMagma& src, const FiniteMagma& tgt, const GraphMorphism& f) {
  Report rep = validate_graph_morphism(src.graph, tgt.graph, f);
  if (!rep.ok()) return rep;
  for (int j = 1; j <= src.top(); ++j) {
    int n = src.count(j);
    for (int i = 0; i < j; ++i)
      for (int a = 0; a < n; ++a)
        for (int b = 0; b < n; ++b) {
          int c = src.comp(i, j, a, b);
          if (c < 0) continue;
          int fa = map_cell(src, tgt, f, j, a), fb = map_cell(src, tgt, f, j, b), fc = map_cell(src, tgt, f, j, c);
          int r = tgt.comp(i, j, fa, fb);
          if (r != fc)
            rep.add("composition", "F does not commute with ⊙_" + std::to_string(i) + " at (" + src.name(j, a) + "," +
                                       src.name(j, b) + "): F(a⊙b)=" + tgt.name(j, fc) + ", Fa⊙Fb=" +
                                       (r < 0 ? std::string("undefined") : tgt.name(j, r)));
        }
  }
  return rep;
}

int evaluate(const FiniteMagma& m, const Term& t) {
  switch (t->kind) {
    case TermKind::Gen:
      if (t->dim > m.top() || t->cell >= m.graph.size(t->dim)) throw Error("generator outside the magma");
      return t->cell;
    case TermKind::Idn:
      return m.id(t->a->dim, evaluate(m, t->a));
    case TermKind::Comp: {
      int r = m.comp(t->axis, t->dim, evaluate(m, t->a), evaluate(m, t->b));
      if (r < 0) throw Error("composite undefined while evaluating " + to_string(t));
      return r;
    }
    case TermKind::Bridge:
      throw Error("bridges cannot be evaluated in a finite magma");
  }
  return -1;
}

EqRelation diagonal_relation(const FiniteMagma& m) {
  EqRelation e;
  e.cls.resize(m.top() + 1);
  for (int d = 0; d <= m.top(); ++d) {
    e.cls[d].resize(m.count(d));
    std::iota(e.cls[d].begin(), e.cls[d].end(), 0);
  }
  return e;
}

EqRelation total_relation(const FiniteMagma& m) {
  EqRelation e;
  e.cls.resize(m.top() + 1);
  for (int d = 0; d <= m.top(); ++d) e.cls[d].assign(m.count(d), 0);
  return e;
}

namespace {

struct UnionFind {
  std::vector<int> p;
  explicit UnionFind(int n) : p(n) { std::iota(p.begin(), p.end(), 0); }
  int find(int x) { return p[x] == x ? x : p[x] = find(p[x]); }
  bool unite(int a, int b) {
    a = find(a);
    b = find(b);
    if (a == b) return false;
    p[std::max(a, b)] = std::min(a, b);
    return true;
  }
};

// Labels classes 0,1,.. in order of their least member.
std::vector<int> canonical_labels(const std::vector<int>& cls) {
  std::map<int, int> relabel;
  std::vector<int> out(cls.size());
  for (std::size_t k = 0; k < cls.size(); ++k) {
    auto it = relabel.find(cls[k]);
    if (it == relabel.end()) it = relabel.emplace(cls[k], static_cast<int>(relabel.size())).first;
    out[k] = it->second;
  }
  return out;
}

}  // namespace

EqRelation generated_congruence(const FiniteMagma& m, const std::vector<std::array<int, 3>>& pairs) {
  int n = m.top();
  std::vector<UnionFind> uf;
  for (int d = 0; d <= n; ++d) uf.emplace_back(m.count(d));
  for (const auto& [d, a, b] : pairs) uf[d].unite(a, b);
  bool changed = true;
  while (changed) {
    changed = false;
    for (int d = 1; d <= n; ++d)
      for (int a = 0; a < m.count(d); ++a) {
        int r = uf[d].find(a);
        if (r == a) continue;
        changed |= uf[d - 1].unite(m.dom(d, a), m.dom(d, r));
        changed |= uf[d - 1].unite(m.cod(d, a), m.cod(d, r));
      }
    for (int d = 0; d < n; ++d)
      for (int a = 0; a < m.count(d); ++a) changed |= uf[d + 1].unite(m.id(d, a), m.id(d, uf[d].find(a)));
    for (int j = 1; j <= n; ++j)
      for (int i = 0; i < j; ++i) {
        std::map<std::pair<int, int>, int> seen;
        int cnt = m.count(j);
        for (int a = 0; a < cnt; ++a)
          for (int b = 0; b < cnt; ++b) {
            int c = m.comp(i, j, a, b);
            if (c < 0) continue;
            auto key = std::make_pair(uf[j].find(a), uf[j].find(b));
            auto [it, fresh] = seen.emplace(key, c);
            if (!fresh) changed |= uf[j].unite(it->second, c);
          }
      }
  }
  EqRelation e;
  for (int d = 0; d <= n; ++d) {
    std::vector<int> cls(m.count(d));
    for (int k = 0; k < m.count(d); ++k) cls[k] = uf[d].find(k);
    e.cls.push_back(canonical_labels(cls));
  }
  return e;
}

namespace {

bool check_submagma(const FiniteMagma& m, const EqRelation& e, std::vector<std::string>& why) {
  int n = m.top();
  auto cls = [&](int d, int k) { return e.cls[std::min(d, n)][k]; };
  for (int d = 1; d <= n; ++d)
    for (int a = 0; a < m.count(d); ++a)
      for (int b = a + 1; b < m.count(d); ++b) {
        if (cls(d, a) != cls(d, b)) continue;
        if (cls(d - 1, m.dom(d, a)) != cls(d - 1, m.dom(d, b)) || cls(d - 1, m.cod(d, a)) != cls(d - 1, m.cod(d, b))) {
          why.push_back("related cells " + m.name(d, a) + ", " + m.name(d, b) + " have unrelated boundaries");
          return false;
        }
      }
  for (int d = 0; d < n; ++d)
    for (int a = 0; a < m.count(d); ++a)
      for (int b = a + 1; b < m.count(d); ++b)
        if (cls(d, a) == cls(d, b) && cls(d + 1, m.id(d, a)) != cls(d + 1, m.id(d, b))) {
          why.push_back("identities on related cells " + m.name(d, a) + ", " + m.name(d, b) + " are unrelated");
          return false;
        }
  for (int j = 1; j <= n; ++j)
    for (int i = 0; i < j; ++i) {
      std::map<std::pair<int, int>, std::array<int, 3>> seen;
      for (int a = 0; a < m.count(j); ++a)
        for (int b = 0; b < m.count(j); ++b) {
          int c = m.comp(i, j, a, b);
          if (c < 0) continue;
          auto [it, fresh] = seen.emplace(std::make_pair(cls(j, a), cls(j, b)), std::array<int, 3>{a, b, c});
          if (!fresh && cls(j, it->second[2]) != cls(j, c)) {
            why.push_back("not closed under ⊙_" + std::to_string(i) + ": " + m.name(j, it->second[0]) + "⊙" +
                          m.name(j, it->second[1]) + " vs " + m.name(j, a) + "⊙" + m.name(j, b));
            return false;
          }
        }
    }
  return true;
}

// First (in lexicographic cell order) pair of classes violating sharpness.
std::optional<std::array<int, 4>> sharp_failure(const FiniteMagma& m, const EqRelation& e) {
  int n = m.top();
  for (int j = 1; j <= n; ++j) {
    int cnt = m.count(j);
    for (int i = 0; i < j; ++i)
      for (int a = 0; a < cnt; ++a)
        for (int b = 0; b < cnt; ++b) {
          int ca = m.boundary(j, a, false, i), db = m.boundary(j, b, true, i);
          if (e.cls[i][ca] != e.cls[i][db]) continue;
          bool found = false;
          for (int a2 = 0; a2 < cnt && !found; ++a2) {
            if (e.cls[j][a2] != e.cls[j][a]) continue;
            for (int b2 = 0; b2 < cnt && !found; ++b2)
              if (e.cls[j][b2] == e.cls[j][b] && m.composable(i, j, a2, b2)) found = true;
          }
          if (!found) return std::array<int, 4>{j, i, a, b};
        }
  }
  return std::nullopt;
}

}  // namespace

EqAnalysis analyze_equivalence_relation(const FiniteMagma& m, const EqRelation& e, int bound) {
  EqAnalysis out;
  out.bound = bound;
  out.submagma = check_submagma(m, e, out.witnesses);
  auto fail = sharp_failure(m, e);
  out.sharp = !fail;
  if (fail) {
    auto [j, i, a, b] = *fail;
    out.witnesses.push_back("no composable replacements under ⊙_" + std::to_string(i) + " for (" + m.name(j, a) +
                            "," + m.name(j, b) + ")");
  }
  try {
    auto terms = enumerate_terms(m.graph, bound, m.top());
    std::map<std::string, std::pair<Term, int>> first;
    bool categorical = true;
    for (const auto& bucket : terms) {
      for (const Term& t : bucket) {
        int v = evaluate(m, t);
        std::string key = std::to_string(t->dim) + ":" + nf(t).code();
        auto [it, fresh] = first.emplace(key, std::make_pair(t, v));
        if (!fresh && e.cls[t->dim][it->second.second] != e.cls[t->dim][v]) {
          if (categorical)
            out.witnesses.push_back("strictly equal terms " + to_string(it->second.first) + " and " + to_string(t) +
                                    " evaluate to unrelated cells");
          categorical = false;
        }
      }
    }
    out.categorical = categorical;
  } catch (const Error& err) {
    out.witnesses.push_back(std::string("categorical check unavailable: ") + err.what());
  }
  return out;
}

Quotient quotient_magma(const FiniteMagma& m, const EqRelation& e) {
  std::vector<std::string> why;
  if (!check_submagma(m, e, why)) throw Error("relation is not an omega submagma: " + why.front());
  if (auto fail = sharp_failure(m, e)) {
    auto [j, i, a, b] = *fail;
    throw Error("relation is not sharp: no composable replacements under ⊙_" + std::to_string(i) + " for (" +
                m.name(j, a) + "," + m.name(j, b) + ")");
  }
  int n = m.top();
  Quotient q;
  q.projection.map.resize(n + 1);
  OmegaGraph g(n);
  std::vector<std::vector<std::vector<int>>> members(n + 1);
  for (int d = 0; d <= n; ++d) {
    auto lab = canonical_labels(e.cls[d]);
    q.projection.map[d] = lab;
    int k = lab.empty() ? 0 : *std::max_element(lab.begin(), lab.end()) + 1;
    members[d].resize(k);
    for (int c = 0; c < m.count(d); ++c) members[d][lab[c]].push_back(c);
  }
  const auto& p = q.projection.map;
  for (int d = 0; d <= n; ++d)
    for (const auto& mem : members[d]) {
      int rep = mem.front();
      if (d == 0)
        g.add(0, m.name(0, rep));
      else
        g.add(d, m.name(d, rep), p[d - 1][m.dom(d, rep)], p[d - 1][m.cod(d, rep)]);
    }
  for (int d = 1; d <= n; ++d) {
    g.id_of[d].resize(members[d - 1].size());
    for (std::size_t x = 0; x < members[d - 1].size(); ++x) g.id_of[d][x] = p[d][m.id(d - 1, members[d - 1][x].front())];
  }
  g.reflexive = true;
  q.magma = FiniteMagma(g);
  for (int j = 1; j <= n; ++j)
    for (int i = 0; i < j; ++i)
      for (std::size_t A = 0; A < members[j].size(); ++A)
        for (std::size_t B = 0; B < members[j].size(); ++B) {
          int val = -1;
          for (int a : members[j][A]) {
            for (int b : members[j][B])
              if (m.composable(i, j, a, b)) {
                val = m.comp(i, j, a, b);
                break;
              }
            if (val >= 0) break;
          }
          if (val >= 0) q.magma.set_comp(i, j, static_cast<int>(A), static_cast<int>(B), p[j][val]);
        }
  return q;
}

FiniteMagma terminal_magma(int n) {
  OmegaGraph g(n);
  g.add(0, "u0");
  for (int d = 1; d <= n; ++d) {
    g.add(d, "u" + std::to_string(d), 0, 0);
    g.id_of[d] = {0};
  }
  g.reflexive = true;
  FiniteMagma m(g);
  for (int j = 1; j <= n; ++j)
    for (int i = 0; i < j; ++i) m.set_comp(i, j, 0, 0, 0);
  return m;
}

GraphMorphism collapse_morphism(const FiniteMagma& m) {
  GraphMorphism f;
  for (int d = 0; d <= m.top(); ++d) f.map.emplace_back(m.count(d), 0);
  return f;
}

}  // namespace womega
