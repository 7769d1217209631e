#include "womega/globular.hpp"

#include <set>

namespace womega {

void OmegaGraph::resize(int n) {
  if (n < 0) throw Error("negative truncation dimension");
  trunc_dim = n;
  names.resize(n + 1);
  dom.resize(n + 1);
  cod.resize(n + 1);
  id_of.resize(n + 1);
}

int OmegaGraph::find(int d, const std::string& name) const {
  if (d < 0 || d > trunc_dim) return -1;
  for (std::size_t k = 0; k < names[d].size(); ++k)
    if (names[d][k] == name) return static_cast<int>(k);
  return -1;
}

int OmegaGraph::add(int d, const std::string& name, int dom_cell, int cod_cell) {
  if (d > trunc_dim) resize(d);
  names[d].push_back(name);
  if (d > 0) {
    dom[d].push_back(dom_cell);
    cod[d].push_back(cod_cell);
  }
  return static_cast<int>(names[d].size()) - 1;
}

int OmegaGraph::add(int d, const std::string& name, const std::string& dom_name,
                    const std::string& cod_name) {
  int s = find(d - 1, dom_name), t = find(d - 1, cod_name);
  if (s < 0 || t < 0) throw Error("unknown boundary cell for " + name);
  return add(d, name, s, t);
}

void OmegaGraph::add_identities() {
  for (int d = 1; d <= trunc_dim; ++d) {
    id_of[d].resize(names[d - 1].size(), -1);
    for (std::size_t x = 0; x < names[d - 1].size(); ++x) {
      if (id_of[d][x] >= 0) continue;
      int k = add(d, "id_" + names[d - 1][x], static_cast<int>(x), static_cast<int>(x));
      id_of[d][x] = k;
    }
  }
  reflexive = true;
}

int OmegaGraph::identity_base(int d, int k) const {
  if (!reflexive || d <= 0 || d > trunc_dim) return -1;
  if (k < 0 || k >= size(d)) return -1;
  int x = dom[d][k];
  if (x < 0 || x >= static_cast<int>(id_of[d].size())) return -1;
  return id_of[d][x] == k ? x : -1;
}

int OmegaGraph::boundary(int d, int cell, bool source, int k) const {
  if (k >= d) throw Error("boundary dimension must be below the cell dimension");
  while (d > k) {
    cell = source ? dom[d][cell] : cod[d][cell];
    --d;
  }
  return cell;
}

int OmegaGraph::identity_tower(int d, int cell, int e) const {
  while (d < e) {
    cell = id_of[d + 1][cell];
    ++d;
  }
  return cell;
}

int OmegaGraph::total_cells() const {
  int n = 0;
  for (const auto& v : names) n += static_cast<int>(v.size());
  return n;
}

namespace {

std::string cell_name(const OmegaGraph& g, int d, int k) {
  if (d >= 0 && d <= g.trunc_dim && k >= 0 && k < g.size(d)) return g.names[d][k];
  return "#" + std::to_string(k) + "@" + std::to_string(d);
}

}  // namespace

Report validate_omega_graph(const OmegaGraph& g) {
  Report rep;
  auto known = [&](int d, int k) { return d >= 0 && d <= g.trunc_dim && k >= 0 && k < g.size(d); };
  for (int d = 0; d <= g.trunc_dim; ++d) {
    std::set<std::string> seen;
    for (const auto& n : g.names[d])
      if (!seen.insert(n).second) rep.add("duplicate-id", "cell " + n + " repeated in dimension " + std::to_string(d));
  }
  for (int d = 1; d <= g.trunc_dim; ++d) {
    if (g.dom[d].size() != g.names[d].size() || g.cod[d].size() != g.names[d].size()) {
      rep.add("unknown-cell", "boundary table of dimension " + std::to_string(d) + " has wrong length");
      continue;
    }
    for (int k = 0; k < g.size(d); ++k) {
      if (!known(d - 1, g.dom[d][k])) rep.add("unknown-cell", "dom of " + g.names[d][k] + " is not a cell");
      if (!known(d - 1, g.cod[d][k])) rep.add("unknown-cell", "cod of " + g.names[d][k] + " is not a cell");
    }
  }
  if (!rep.ok()) return rep;
  for (int d = 2; d <= g.trunc_dim; ++d) {
    for (int k = 0; k < g.size(d); ++k) {
      int s = g.dom[d][k], t = g.cod[d][k];
      if (g.dom[d - 1][s] != g.dom[d - 1][t])
        rep.add("globular", "globular relation dom∘dom=dom∘cod at " + g.names[d][k]);
      if (g.cod[d - 1][s] != g.cod[d - 1][t])
        rep.add("globular", "globular relation cod∘dom=cod∘cod at " + g.names[d][k]);
    }
  }
  if (g.reflexive) {
    for (int d = 1; d <= g.trunc_dim; ++d) {
      if (g.id_of[d].size() != g.names[d - 1].size()) {
        rep.add("identity", "identity table of dimension " + std::to_string(d) + " is not total");
        continue;
      }
      std::set<int> images;
      for (int x = 0; x < g.size(d - 1); ++x) {
        int i = g.id_of[d][x];
        if (!known(d, i)) {
          rep.add("unknown-cell", "identity of " + g.names[d - 1][x] + " is not a cell");
          continue;
        }
        if (g.dom[d][i] != x || g.cod[d][i] != x)
          rep.add("identity", "boundary of identity " + g.names[d][i] + " is not " + g.names[d - 1][x]);
        if (!images.insert(i).second)
          rep.add("identity", "identity cell " + g.names[d][i] + " assigned twice");
      }
    }
  }
  return rep;
}

Report validate_graph_morphism(const OmegaGraph& src, const OmegaGraph& tgt, const GraphMorphism& f) {
  Report rep;
  int tn = tgt.trunc_dim;
  // target cells above its truncation are formal identities addressed by their base
  auto tdom = [&](int d, int k) { return d > tn ? k : tgt.dom[d][k]; };
  auto tcod = [&](int d, int k) { return d > tn ? k : tgt.cod[d][k]; };
  auto tid = [&](int d, int x) { return d + 1 > tn ? x : tgt.id_of[d + 1][x]; };
  for (int d = 0; d <= src.trunc_dim; ++d) {
    if (d >= static_cast<int>(f.map.size()) || static_cast<int>(f.map[d].size()) != src.size(d)) {
      rep.add("unknown-cell", "map is not total in dimension " + std::to_string(d));
      return rep;
    }
    for (int k = 0; k < src.size(d); ++k)
      if (f.map[d][k] < 0 || f.map[d][k] >= tgt.size(std::min(d, tn)))
        rep.add("unknown-cell", "image of " + src.names[d][k] + " is not a cell");
  }
  if (!rep.ok()) return rep;
  for (int d = 1; d <= src.trunc_dim; ++d) {
    for (int k = 0; k < src.size(d); ++k) {
      int fk = f.map[d][k];
      if (tdom(d, fk) != f.map[d - 1][src.dom[d][k]]) rep.add("dom", "dom not preserved at " + src.names[d][k]);
      if (tcod(d, fk) != f.map[d - 1][src.cod[d][k]]) rep.add("cod", "cod not preserved at " + src.names[d][k]);
    }
    if (src.reflexive && tgt.reflexive)
      for (int x = 0; x < src.size(d - 1); ++x)
        if (f.map[d][src.id_of[d][x]] != tid(d - 1, f.map[d - 1][x]))
          rep.add("identity", "identity not preserved at " + cell_name(src, d - 1, x));
  }
  return rep;
}

bool is_parallel(const OmegaGraph& g, int da, int a, int db, int b) {
  if (da != db) throw Error("is_parallel: cells of different dimensions");
  return is_parallel(g, da, a, b);
}

bool is_parallel(const OmegaGraph& g, int d, int a, int b) {
  if (d == 0) return true;
  return g.dom[d][a] == g.dom[d][b] && g.cod[d][a] == g.cod[d][b];
}

GraphMorphism identity_graph_morphism(const OmegaGraph& g) {
  GraphMorphism f;
  f.map.resize(g.trunc_dim + 1);
  for (int d = 0; d <= g.trunc_dim; ++d)
    for (int k = 0; k < g.size(d); ++k) f.map[d].push_back(k);
  return f;
}

}  // namespace womega
