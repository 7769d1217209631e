#include "womega/io.hpp"

#include <algorithm>
#include <fstream>
#include <set>
#include <sstream>
#include <tuple>

namespace womega {

namespace {

using Tokens = std::vector<std::string>;

Tokens tokenize(const std::string& line) {
  Tokens out;
  std::istringstream in(line);
  std::string tok;
  while (in >> tok) {
    if (tok[0] == '#') break;
    out.push_back(tok);
  }
  return out;
}

int to_int(const std::string& s, int line) {
  try {
    std::size_t used = 0;
    int v = std::stoi(s, &used);
    if (used == s.size() && v >= 0) return v;
  } catch (const std::exception&) {
  }
  throw ParseError(line, "expected a natural number, got '" + s + "'");
}

struct Loc {
  int d = -1, k = -1;
};

Loc locate(const OmegaGraph& g, const std::string& name) {
  for (int d = 0; d <= g.trunc_dim; ++d) {
    int k = g.find(d, name);
    if (k >= 0) return {d, k};
  }
  return {};
}

struct RawBlock {
  std::string kind, name;
  int line = 0;
  std::vector<std::pair<int, Tokens>> body;
};

void build_graph(Document& doc, const RawBlock& b) {
  bool magma = b.kind == "magma";
  int n = -1;
  for (const auto& [ln, t] : b.body)
    if (t[0] == "dim") {
      if (t.size() != 2) throw ParseError(ln, "usage: dim <N>");
      if (n >= 0) throw ParseError(ln, "dim given twice");
      n = to_int(t[1], ln);
    }
  if (n < 0) {
    n = 0;
    for (const auto& [ln, t] : b.body)
      if (t[0] == "cell" && t.size() == 3) n = std::max(n, to_int(t[1], ln));
  }
  OmegaGraph g(n);
  g.reflexive = n == 0;
  std::set<std::string> seen;
  for (const auto& [ln, t] : b.body) {
    if (t[0] != "cell") continue;
    if (t.size() != 3) throw ParseError(ln, "usage: cell <d> <id>");
    int d = to_int(t[1], ln);
    if (d > n) throw ParseError(ln, "cell " + t[2] + " lies above dim " + std::to_string(n));
    if (!seen.insert(t[2]).second) throw ParseError(ln, "duplicate cell id " + t[2]);
    g.add(d, t[2]);
  }
  for (int d = 1; d <= n; ++d) g.id_of[d].assign(g.size(d - 1), -1);
  auto cell = [&](const std::string& name, int ln) {
    Loc l = locate(g, name);
    if (l.d < 0) throw ParseError(ln, "unknown cell " + name);
    return l;
  };
  std::vector<std::vector<bool>> has_dom(n + 1), has_cod(n + 1);
  for (int d = 1; d <= n; ++d) has_dom[d].assign(g.size(d), false), has_cod[d].assign(g.size(d), false);
  std::vector<std::pair<int, Tokens>> comps;
  for (const auto& [ln, t] : b.body) {
    const std::string& op = t[0];
    if (op == "dim" || op == "cell") continue;
    if (op == "id") {
      if (t.size() != 4 || t[2] != "->") throw ParseError(ln, "usage: id <base> -> <idcell>");
      Loc x = cell(t[1], ln), y = cell(t[3], ln);
      if (y.d != x.d + 1) throw ParseError(ln, "identity " + t[3] + " must lie one dimension above " + t[1]);
      g.id_of[y.d][x.k] = y.k;
      g.reflexive = true;
    } else if (op == "dom" || op == "cod") {
      if (t.size() != 3) throw ParseError(ln, "usage: " + op + " <id> <id>");
      Loc x = cell(t[1], ln), y = cell(t[2], ln);
      if (x.d == 0) throw ParseError(ln, "0-cell " + t[1] + " has no boundary");
      if (y.d != x.d - 1) throw ParseError(ln, op + " of " + t[1] + " must lie one dimension below it");
      (op == "dom" ? g.dom : g.cod)[x.d][x.k] = y.k;
      (op == "dom" ? has_dom : has_cod)[x.d][x.k] = true;
    } else if (op == "comp" && magma) {
      comps.emplace_back(ln, t);
    } else {
      throw ParseError(ln, "unknown directive '" + op + "' in " + b.kind + " " + b.name);
    }
  }
  for (int d = 1; d <= n; ++d)
    for (int k = 0; k < g.size(d); ++k)
      if (!has_dom[d][k] || !has_cod[d][k])
        throw ParseError(b.line, "cell " + g.names[d][k] + " lacks a dom or cod line");
  if (!magma) {
    doc.graphs[b.name] = g;
    return;
  }
  auto m = std::make_shared<FiniteMagma>(g);
  for (const auto& [ln, t] : comps) {
    if (t.size() != 6 || t[4] != "=") throw ParseError(ln, "usage: comp <i> <a> <b> = <c>");
    int i = to_int(t[1], ln);
    Loc a = cell(t[2], ln), c = cell(t[3], ln), r = cell(t[5], ln);
    if (a.d != c.d || a.d != r.d) throw ParseError(ln, "composite operands and result must share a dimension");
    if (i >= a.d) throw ParseError(ln, "composition axis must lie below the cell dimension");
    m->set_comp(i, a.d, a.k, c.k, r.k);
  }
  doc.magmas[b.name] = m;
}

void expect_size(const Tokens& t, std::size_t n, int ln, const std::string& usage) {
  if (t.size() != n) throw ParseError(ln, "usage: " + usage);
}

// key=value fields of a header line
std::map<std::string, std::string> fields(const Tokens& t, std::size_t from, const std::vector<std::string>& keys,
                                          int ln) {
  std::map<std::string, std::string> out;
  for (std::size_t p = from; p < t.size(); ++p) {
    auto eq = t[p].find('=');
    if (eq == std::string::npos) throw ParseError(ln, "expected key=value, got '" + t[p] + "'");
    std::string k = t[p].substr(0, eq);
    if (std::find(keys.begin(), keys.end(), k) == keys.end()) throw ParseError(ln, "unknown field '" + k + "'");
    if (!out.emplace(k, t[p].substr(eq + 1)).second) throw ParseError(ln, "field '" + k + "' given twice");
  }
  for (const auto& k : keys)
    if (!out.count(k)) throw ParseError(ln, "missing field '" + k + "'");
  return out;
}

void check_fresh(const std::map<std::string, int>& used, const std::string& kind, const std::string& name, int ln) {
  if (used.count(kind + ":" + name)) throw ParseError(ln, kind + " " + name + " declared twice");
}

}  // namespace

Document parse_presentation(const std::string& text) {
  Document doc;
  std::istringstream in(text);
  std::string line;
  int ln = 0;
  std::vector<RawBlock> blocks;
  std::vector<std::pair<int, Tokens>> maps;
  std::map<std::string, int> used;
  RawBlock* cur = nullptr;
  while (std::getline(in, line)) {
    ++ln;
    Tokens t = tokenize(line);
    if (t.empty()) continue;
    const std::string& op = t[0];
    if (op == "graph" || op == "magma" || op == "relation" || op == "bicategory") {
      if (op == "graph" || op == "magma") {
        expect_size(t, 2, ln, op + " <name>");
      } else {
        expect_size(t, 4, ln, op + " <name> on <magma>");
        if (t[2] != "on") throw ParseError(ln, "usage: " + op + " <name> on <magma>");
      }
      std::string kind = op == "magma" ? "graph" : op;
      check_fresh(used, kind, t[1], ln);
      used[kind + ":" + t[1]] = ln;
      blocks.push_back({op, t[1], ln, {}});
      cur = &blocks.back();
      if (op == "relation") doc.relations[t[1]] = {t[3], {}, ln};
      if (op == "bicategory") doc.bicategories[t[1]] = {t[3], {}, {}, {}, ln};
    } else if (op == "morphism") {
      expect_size(t, 5, ln, "morphism <F> <src> -> <tgt>");
      if (t[3] != "->") throw ParseError(ln, "usage: morphism <F> <src> -> <tgt>");
      check_fresh(used, "morphism", t[1], ln);
      used["morphism:" + t[1]] = ln;
      doc.morphisms[t[1]] = {t[2], t[4], {}, {}, ln};
      cur = nullptr;
    } else if (op == "map") {
      expect_size(t, 5, ln, "map <F> <id> -> <id>");
      if (t[3] != "->") throw ParseError(ln, "usage: map <F> <id> -> <id>");
      maps.emplace_back(ln, t);
    } else if (op == "span") {
      if (t.size() < 2) throw ParseError(ln, "usage: span <name> x1=.. x2=.. x3=.. lambda=.. rho=.. kappa=.. r=..");
      check_fresh(used, "span", t[1], ln);
      used["span:" + t[1]] = ln;
      auto f = fields(t, 2, {"x1", "x2", "x3", "lambda", "rho", "kappa", "r"}, ln);
      doc.spans[t[1]] = {f["x1"], f["x2"], f["x3"], f["lambda"], f["rho"], f["kappa"], f["r"], ln};
      cur = nullptr;
    } else if (op == "functor") {
      if (t.size() != 8 || t[3] != "->") throw ParseError(ln, "usage: functor <F> <span> -> <span> f1=.. f2=.. f3=..");
      check_fresh(used, "functor", t[1], ln);
      used["functor:" + t[1]] = ln;
      auto f = fields(t, 5, {"f1", "f2", "f3"}, ln);
      doc.functors[t[1]] = {t[2], t[4], f["f1"], f["f2"], f["f3"], ln};
      cur = nullptr;
    } else if (!cur) {
      throw ParseError(ln, "directive '" + op + "' outside of a block");
    } else if (cur->kind == "relation") {
      if (op != "bridge") throw ParseError(ln, "unknown directive '" + op + "' in relation " + cur->name);
      expect_size(t, 4, ln, "bridge <a> <b> <c>");
      doc.relations[cur->name].rows.push_back({t[1], t[2], t[3]});
    } else if (cur->kind == "bicategory") {
      auto& bd = doc.bicategories[cur->name];
      if (op == "assoc") {
        if (t.size() != 6 || t[4] != "=") throw ParseError(ln, "usage: assoc <f> <g> <h> = <c>");
        bd.assoc.push_back({{t[1], t[2], t[3]}, t[5]});
      } else if (op == "lunit" || op == "runit") {
        if (t.size() != 4 || t[2] != "=") throw ParseError(ln, "usage: " + op + " <f> = <c>");
        (op == "lunit" ? bd.lunit : bd.runit).push_back({t[1], t[3]});
      } else {
        throw ParseError(ln, "unknown directive '" + op + "' in bicategory " + cur->name);
      }
    } else {
      cur->body.emplace_back(ln, t);
    }
  }
  for (const auto& b : blocks)
    if (b.kind == "graph" || b.kind == "magma") build_graph(doc, b);
  for (const auto& [l, t] : maps) {
    auto it = doc.morphisms.find(t[1]);
    if (it == doc.morphisms.end()) throw ParseError(l, "map entry for undeclared morphism " + t[1]);
    it->second.entries.push_back({t[2], t[4]});
    it->second.entry_lines.push_back(l);
  }
  // Resolve every reference now so that errors carry line numbers.
  auto known_graph = [&](const std::string& n) { return doc.graphs.count(n) || doc.magmas.count(n); };
  for (const auto& [name, m] : doc.morphisms) {
    if (!known_graph(m.src)) throw ParseError(m.line, "unknown graph " + m.src);
    if (!known_graph(m.tgt)) throw ParseError(m.line, "unknown graph " + m.tgt);
    doc.morphism(name);
  }
  for (const auto& [name, r] : doc.relations)
    if (!doc.magmas.count(r.on)) throw ParseError(r.line, "unknown magma " + r.on);
  for (const auto& [name, b] : doc.bicategories) {
    if (!doc.magmas.count(b.on)) throw ParseError(b.line, "unknown magma " + b.on);
    try {
      doc.bicategory(name);
    } catch (const ParseError&) {
      throw;
    } catch (const Error& e) {
      throw ParseError(b.line, e.what());
    }
  }
  for (const auto& [name, s] : doc.spans) {
    try {
      doc.span(name);
    } catch (const ParseError&) {
      throw;
    } catch (const Error& e) {
      throw ParseError(s.line, e.what());
    }
  }
  for (const auto& [name, f] : doc.functors) {
    try {
      doc.functor(name);
    } catch (const ParseError&) {
      throw;
    } catch (const Error& e) {
      throw ParseError(f.line, e.what());
    }
  }
  return doc;
}

Document load_presentation(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw Error("cannot read " + path);
  std::stringstream ss;
  ss << in.rdbuf();
  return parse_presentation(ss.str());
}

const OmegaGraph& Document::graph(const std::string& name) const {
  if (auto it = magmas.find(name); it != magmas.end()) return it->second->graph;
  if (auto it = graphs.find(name); it != graphs.end()) return it->second;
  throw Error("unknown graph " + name);
}

std::shared_ptr<FiniteMagma> Document::magma(const std::string& name) const {
  auto it = magmas.find(name);
  if (it == magmas.end()) throw Error("unknown magma " + name);
  return it->second;
}

std::string Document::pick(const std::string& kind, const std::string& name) const {
  std::vector<std::string> names;
  auto collect = [&](const auto& m) {
    for (const auto& kv : m) names.push_back(kv.first);
  };
  if (kind == "graph") collect(graphs), collect(magmas);
  else if (kind == "magma") collect(magmas);
  else if (kind == "span") collect(spans);
  else if (kind == "bicategory") collect(bicategories);
  else if (kind == "functor") collect(functors);
  else if (kind == "morphism") collect(morphisms);
  else if (kind == "relation") collect(relations);
  else throw Error("unknown kind " + kind);
  if (!name.empty()) {
    if (std::find(names.begin(), names.end(), name) == names.end()) throw Error("no " + kind + " named " + name);
    return name;
  }
  if (names.size() != 1)
    throw Error("the document has " + std::to_string(names.size()) + " " + kind + " blocks; name one");
  return names[0];
}

GraphMorphism Document::morphism(const std::string& name) const {
  auto it = morphisms.find(name);
  if (it == morphisms.end()) throw Error("unknown morphism " + name);
  const MorphismDecl& md = it->second;
  const OmegaGraph& s = graph(md.src);
  const OmegaGraph& t = graph(md.tgt);
  GraphMorphism f;
  f.map.resize(s.trunc_dim + 1);
  for (int d = 0; d <= s.trunc_dim; ++d) f.map[d].assign(s.size(d), -1);
  for (std::size_t e = 0; e < md.entries.size(); ++e) {
    int ln = md.entry_lines[e];
    Loc a = locate(s, md.entries[e].first), b = locate(t, md.entries[e].second);
    if (a.d < 0) throw ParseError(ln, "unknown cell " + md.entries[e].first + " in " + md.src);
    if (b.d < 0) throw ParseError(ln, "unknown cell " + md.entries[e].second + " in " + md.tgt);
    if (b.d != std::min(a.d, t.trunc_dim)) throw ParseError(ln, "map " + name + " changes the dimension of " + md.entries[e].first);
    if (f.map[a.d][a.k] >= 0) throw ParseError(ln, "map " + name + " assigns " + md.entries[e].first + " twice");
    f.map[a.d][a.k] = b.k;
  }
  for (int d = 0; d <= s.trunc_dim; ++d)
    for (int k = 0; k < s.size(d); ++k)
      if (f.map[d][k] < 0) throw ParseError(md.line, "morphism " + name + " leaves " + s.names[d][k] + " unmapped");
  return f;
}

namespace {

ViewPtr view_of(const Document& doc, const std::string& name) {
  auto it = doc.view_cache.find(name);
  if (it != doc.view_cache.end()) return it->second;
  ViewPtr v = std::make_shared<FiniteView>(doc.magma(name), name);
  doc.view_cache[name] = v;
  return v;
}

MapPtr map_of(const Document& doc, const std::string& name, const std::string& src, const std::string& tgt,
              const std::string& role) {
  if (name == "id") {
    if (src != tgt) throw Error(role + " = id needs equal legs, got " + src + " and " + tgt);
    return std::make_shared<IdentityMap>();
  }
  auto it = doc.morphisms.find(name);
  if (it == doc.morphisms.end()) throw Error("unknown morphism " + name + " for " + role);
  if (it->second.src != src || it->second.tgt != tgt)
    throw Error(role + " must map " + src + " to " + tgt + ", but " + name + " maps " + it->second.src + " to " +
                it->second.tgt);
  return std::make_shared<TableMap>(doc.magma(src), doc.magma(tgt), doc.morphism(name), name);
}

}  // namespace

std::shared_ptr<const Span> Document::span(const std::string& name) const {
  if (auto it = span_cache.find(name); it != span_cache.end()) return it->second;
  auto it = spans.find(name);
  if (it == spans.end()) throw Error("unknown span " + name);
  const SpanDecl& sd = it->second;
  auto s = std::make_shared<Span>();
  s->name = name;
  s->x1 = view_of(*this, sd.x1);
  s->x2 = view_of(*this, sd.x2);
  s->x3 = view_of(*this, sd.x3);
  s->lambda = map_of(*this, sd.lambda, sd.x2, sd.x1, "lambda");
  s->rho = map_of(*this, sd.rho, sd.x1, sd.x2, "rho");
  s->kappa = map_of(*this, sd.kappa, sd.x2, sd.x3, "kappa");
  if (sd.r == "diag") {
    s->r = std::make_shared<DiagonalRelation>(s->x2);
  } else {
    auto rit = relations.find(sd.r);
    if (rit == relations.end()) throw Error("unknown relation " + sd.r);
    if (rit->second.on != sd.x2) throw Error("relation " + sd.r + " is on " + rit->second.on + ", not on X2 " + sd.x2);
    auto m = magma(sd.x2);
    auto rel = std::make_shared<TableRelation>(m);
    for (const auto& row : rit->second.rows) {
      Loc a = locate(m->graph, row[0]), b = locate(m->graph, row[1]), c = locate(m->graph, row[2]);
      if (a.d < 0 || b.d < 0 || c.d < 0)
        throw ParseError(rit->second.line, "bridge " + row[0] + " " + row[1] + " " + row[2] + " names an unknown cell");
      // Bridges between top cells are formal identities, named by their base.
      int cd = std::min(a.d + 1, m->top());
      if (b.d != a.d || c.d != cd)
        throw ParseError(rit->second.line, "bridge " + row[0] + " " + row[1] + " " + row[2] + " has mismatched dimensions");
      rel->add(a.d, a.k, b.k, c.k);
    }
    s->r = rel;
  }
  span_cache[name] = s;
  return s;
}

BicategoryData Document::bicategory(const std::string& name) const {
  auto it = bicategories.find(name);
  if (it == bicategories.end()) throw Error("unknown bicategory " + name);
  const BicategoryDecl& bd = it->second;
  BicategoryData b;
  b.name = name;
  b.cells = *magma(bd.on);
  const FiniteMagma& m = b.cells;
  auto one = [&](const std::string& n) {
    int k = m.find(1, n);
    if (k < 0) throw ParseError(bd.line, "unknown 1-cell " + n + " in bicategory " + name);
    return k;
  };
  auto two = [&](const std::string& n) {
    int k = m.find(2, n);
    if (k < 0) throw ParseError(bd.line, "unknown 2-cell " + n + " in bicategory " + name);
    return k;
  };
  for (const auto& [fgh, c] : bd.assoc) b.assoc[{one(fgh[0]), one(fgh[1]), one(fgh[2])}] = two(c);
  b.lunit.assign(m.count(1), -1);
  b.runit.assign(m.count(1), -1);
  for (const auto& [f, c] : bd.lunit) b.lunit[one(f)] = two(c);
  for (const auto& [f, c] : bd.runit) b.runit[one(f)] = two(c);
  return b;
}

PseudoFunctorData Document::functor(const std::string& name) const {
  auto it = functors.find(name);
  if (it == functors.end()) throw Error("unknown functor " + name);
  const FunctorDecl& fd = it->second;
  PseudoFunctorData f;
  f.name = name;
  f.src = span(fd.src);
  f.tgt = span(fd.tgt);
  const SpanDecl& s = spans.at(fd.src);
  const SpanDecl& t = spans.at(fd.tgt);
  f.f1 = map_of(*this, fd.f1, s.x1, t.x1, "f1");
  f.f2 = map_of(*this, fd.f2, s.x2, t.x2, "f2");
  f.f3 = map_of(*this, fd.f3, s.x3, t.x3, "f3");
  return f;
}

// ------------------------------------------------------------- serializing

namespace {

void write_graph(std::ostream& out, const std::string& kind, const std::string& name, const OmegaGraph& g,
                 const FiniteMagma* m) {
  out << kind << " " << name << "\n";
  out << "dim " << g.trunc_dim << "\n";
  for (int d = 0; d <= g.trunc_dim; ++d)
    for (int k = 0; k < g.size(d); ++k) out << "cell " << d << " " << g.names[d][k] << "\n";
  for (int d = 1; d <= g.trunc_dim; ++d)
    for (int k = 0; k < g.size(d); ++k) {
      out << "dom " << g.names[d][k] << " " << g.names[d - 1][g.dom[d][k]] << "\n";
      out << "cod " << g.names[d][k] << " " << g.names[d - 1][g.cod[d][k]] << "\n";
    }
  if (g.reflexive)
    for (int d = 1; d <= g.trunc_dim; ++d)
      for (std::size_t x = 0; x < g.id_of[d].size(); ++x)
        if (g.id_of[d][x] >= 0) out << "id " << g.names[d - 1][x] << " -> " << g.names[d][g.id_of[d][x]] << "\n";
  if (m)
    for (int j = 1; j <= m->top(); ++j)
      for (int i = 0; i < j; ++i) {
        int n = m->count(j);
        for (int a = 0; a < n; ++a)
          for (int b = 0; b < n; ++b) {
            int c = m->comp(i, j, a, b);
            if (c >= 0)
              out << "comp " << i << " " << g.names[j][a] << " " << g.names[j][b] << " = " << g.names[j][c] << "\n";
          }
      }
  out << "\n";
}

}  // namespace

std::string serialize(const Document& doc) {
  std::ostringstream out;
  for (const auto& [name, g] : doc.graphs) write_graph(out, "graph", name, g, nullptr);
  for (const auto& [name, m] : doc.magmas) write_graph(out, "magma", name, m->graph, m.get());
  for (const auto& [name, md] : doc.morphisms) {
    out << "morphism " << name << " " << md.src << " -> " << md.tgt << "\n";
    GraphMorphism f = doc.morphism(name);
    const OmegaGraph& s = doc.graph(md.src);
    const OmegaGraph& t = doc.graph(md.tgt);
    for (int d = 0; d <= s.trunc_dim; ++d)
      for (int k = 0; k < s.size(d); ++k)
        out << "map " << name << " " << s.names[d][k] << " -> " << t.names[std::min(d, t.trunc_dim)][f.map[d][k]]
            << "\n";
    out << "\n";
  }
  for (const auto& [name, r] : doc.relations) {
    out << "relation " << name << " on " << r.on << "\n";
    auto rows = r.rows;
    const OmegaGraph& g = doc.graph(r.on);
    std::sort(rows.begin(), rows.end(), [&](const auto& x, const auto& y) {
      Loc a = locate(g, x[0]), b = locate(g, y[0]), a2 = locate(g, x[1]), b2 = locate(g, y[1]);
      return std::tie(a.d, a.k, a2.k) < std::tie(b.d, b.k, b2.k);
    });
    for (const auto& row : rows) out << "bridge " << row[0] << " " << row[1] << " " << row[2] << "\n";
    out << "\n";
  }
  for (const auto& [name, bd] : doc.bicategories) {
    BicategoryData b = doc.bicategory(name);
    const FiniteMagma& m = b.cells;
    out << "bicategory " << name << " on " << bd.on << "\n";
    for (const auto& [fgh, c] : b.assoc)
      out << "assoc " << m.name(1, fgh[0]) << " " << m.name(1, fgh[1]) << " " << m.name(1, fgh[2]) << " = "
          << m.name(2, c) << "\n";
    for (int f = 0; f < m.count(1); ++f)
      if (b.lunit[f] >= 0) out << "lunit " << m.name(1, f) << " = " << m.name(2, b.lunit[f]) << "\n";
    for (int f = 0; f < m.count(1); ++f)
      if (b.runit[f] >= 0) out << "runit " << m.name(1, f) << " = " << m.name(2, b.runit[f]) << "\n";
    out << "\n";
  }
  for (const auto& [name, s] : doc.spans)
    out << "span " << name << " x1=" << s.x1 << " x2=" << s.x2 << " x3=" << s.x3 << " lambda=" << s.lambda
        << " rho=" << s.rho << " kappa=" << s.kappa << " r=" << s.r << "\n";
  for (const auto& [name, f] : doc.functors)
    out << "functor " << name << " " << f.src << " -> " << f.tgt << " f1=" << f.f1 << " f2=" << f.f2
        << " f3=" << f.f3 << "\n";
  std::string text = out.str();
  while (text.size() >= 2 && text[text.size() - 1] == '\n' && text[text.size() - 2] == '\n') text.pop_back();
  return text;
}

void add_graph(Document& doc, const std::string& name, const OmegaGraph& g) { doc.graphs[name] = g; }

void add_magma(Document& doc, const std::string& name, const FiniteMagma& m) {
  doc.magmas[name] = std::make_shared<FiniteMagma>(m);
}

namespace {

std::string magma_text(const FiniteMagma& m) {
  std::ostringstream out;
  write_graph(out, "magma", "", m.graph, &m);
  return out.str();
}

// Registers a span leg under its label, reusing an equal magma of the same
// name and suffixing the name otherwise.
std::string add_leg(Document& doc, const MagmaView& v, std::map<const FiniteMagma*, std::string>& seen) {
  const FiniteMagma* m = v.tables();
  if (!m) throw Error("span leg " + v.label() + " is not a finite magma");
  if (auto it = seen.find(m); it != seen.end()) return it->second;
  std::string base = v.label(), name = base;
  for (int n = 2;; ++n) {
    auto it = doc.magmas.find(name);
    if (it == doc.magmas.end()) {
      add_magma(doc, name, *m);
      break;
    }
    if (magma_text(*it->second) == magma_text(*m)) break;
    name = base + "_" + std::to_string(n);
  }
  seen[m] = name;
  return name;
}

std::string add_map(Document& doc, const CellMap& f, const MagmaView& sv, const MagmaView& tv, const std::string& src,
                    const std::string& tgt, const std::string& fallback) {
  if (dynamic_cast<const IdentityMap*>(&f) && src == tgt) return "id";
  std::string name = f.label().empty() || f.label() == "table" || f.label() == "map" ? fallback : f.label();
  if (name == "id") name = fallback;
  MorphismDecl md{src, tgt, {}, {}, 0};
  const FiniteMagma& s = *sv.tables();
  const FiniteMagma& t = *tv.tables();
  for (int d = 0; d <= s.top(); ++d)
    for (int k = 0; k < s.count(d); ++k) {
      Cell c = f.apply(Cell{d, k, nullptr});
      if (c.index < 0) throw Error("map " + f.label() + " is not a finite table");
      md.entries.push_back({s.name(d, k), t.name(std::min(d, t.top()), c.index)});
      md.entry_lines.push_back(0);
    }
  std::string base = name;
  for (int n = 2; doc.morphisms.count(name); ++n) {
    const auto& old = doc.morphisms[name];
    if (old.src == md.src && old.tgt == md.tgt && old.entries == md.entries) return name;
    name = base + "_" + std::to_string(n);
  }
  doc.morphisms[name] = md;
  return name;
}

}  // namespace

void add_span(Document& doc, const Span& s) {
  if (!s.finite()) throw Error("only finite spans can be written out");
  std::map<const FiniteMagma*, std::string> seen;
  std::string x1 = add_leg(doc, *s.x1, seen), x2 = add_leg(doc, *s.x2, seen), x3 = add_leg(doc, *s.x3, seen);
  SpanDecl sd;
  sd.x1 = x1, sd.x2 = x2, sd.x3 = x3;
  sd.lambda = add_map(doc, *s.lambda, *s.x2, *s.x1, x2, x1, s.name + "_lambda");
  sd.rho = add_map(doc, *s.rho, *s.x1, *s.x2, x1, x2, s.name + "_rho");
  sd.kappa = add_map(doc, *s.kappa, *s.x2, *s.x3, x2, x3, s.name + "_kappa");
  if (dynamic_cast<const DiagonalRelation*>(s.r.get())) {
    sd.r = "diag";
  } else {
    const FiniteMagma& m = *s.x2->tables();
    RelationDecl rd{x2, {}, 0};
    for (int d = 0; d <= m.top(); ++d)
      for (const auto& [a, b, c] : s.r->triples(d, 0))
        rd.rows.push_back({m.name(d, a.index), m.name(d, b.index), m.name(std::min(d + 1, m.top()), c.index)});
    sd.r = s.name + "_r";
    doc.relations[sd.r] = rd;
  }
  doc.spans[s.name] = sd;
}

void add_bicategory(Document& doc, const BicategoryData& b) {
  add_magma(doc, b.name, b.cells);
  BicategoryDecl bd{b.name, {}, {}, {}, 0};
  const FiniteMagma& m = b.cells;
  for (const auto& [fgh, c] : b.assoc)
    bd.assoc.push_back({{m.name(1, fgh[0]), m.name(1, fgh[1]), m.name(1, fgh[2])}, m.name(2, c)});
  for (int f = 0; f < m.count(1); ++f) {
    if (f < static_cast<int>(b.lunit.size()) && b.lunit[f] >= 0) bd.lunit.push_back({m.name(1, f), m.name(2, b.lunit[f])});
    if (f < static_cast<int>(b.runit.size()) && b.runit[f] >= 0) bd.runit.push_back({m.name(1, f), m.name(2, b.runit[f])});
  }
  doc.bicategories[b.name] = bd;
}

}  // namespace womega
