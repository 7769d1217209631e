#include "womega/constructions.hpp"

#include <mutex>
#include <set>

namespace womega {

// ---------------------------------------------------------------- hom spans

int FiniteHom::hom_index(int base_dim, int base_index) const {
  int d = std::min(base_dim - shift, magma->top());
  if (d < 0) return -1;
  auto it = from_base[d].find(base_index);
  return it == from_base[d].end() ? -1 : it->second;
}

FiniteHom hom_magma(const FiniteMagma& m, int shift, const std::function<bool(int, int)>& keep) {
  int top = m.top() - shift;
  if (top < 0) throw Error("hom: no cells above dimension " + std::to_string(shift - 1));
  FiniteHom h;
  h.shift = shift;
  h.to_base.resize(top + 1);
  h.from_base.resize(top + 1);
  OmegaGraph g(top);
  g.reflexive = m.graph.reflexive;
  for (int d = 0; d <= top; ++d) {
    int bd = d + shift;
    for (int k = 0; k < m.count(bd); ++k) {
      if (!keep(bd, k)) continue;
      int dom = -1, cod = -1;
      if (d > 0) {
        dom = h.from_base[d - 1].at(m.dom(bd, k));
        cod = h.from_base[d - 1].at(m.cod(bd, k));
      }
      int idx = g.add(d, m.graph.names[bd][k], dom, cod);
      h.to_base[d].push_back(k);
      h.from_base[d][k] = idx;
    }
  }
  for (int d = 1; d <= top; ++d) {
    g.id_of[d].assign(g.size(d - 1), -1);
    for (int x = 0; x < g.size(d - 1); ++x) {
      int bid = m.id(d - 1 + shift, h.to_base[d - 1][x]);
      auto it = h.from_base[d].find(bid);
      if (it != h.from_base[d].end()) g.id_of[d][x] = it->second;
    }
  }
  h.magma = std::make_shared<FiniteMagma>(g);
  for (int j = 1; j <= top; ++j)
    for (int i = 0; i < j; ++i)
      for (int a = 0; a < g.size(j); ++a)
        for (int b = 0; b < g.size(j); ++b) {
          int c = m.comp(i + shift, j + shift, h.to_base[j][a], h.to_base[j][b]);
          if (c < 0) continue;
          int hc = h.hom_index(j + shift, c);
          if (hc < 0) throw Error("hom: composite leaves the hom");
          h.magma->set_comp(i, j, a, b, hc);
        }
  return h;
}

namespace {

class HomView : public MagmaView {
 public:
  HomView(ViewPtr base, int shift, std::function<bool(const Cell&)> keep)
      : base_(std::move(base)), shift_(shift), keep_(std::move(keep)) {}
  std::string label() const override { return "hom(" + base_->label() + ")"; }
  int top() const override { return base_->top() - shift_; }
  bool finite() const override { return base_->finite(); }
  std::vector<Cell> cells(int d, int bound) const override {
    std::vector<Cell> out;
    for (const auto& c : base_->cells(d + shift_, bound))
      if (keep_(c)) out.push_back(down(c));
    return out;
  }
  Cell dom(const Cell& c) const override { return down(base_->dom(up(c))); }
  Cell cod(const Cell& c) const override { return down(base_->cod(up(c))); }
  Cell id(const Cell& c) const override { return down(base_->id(up(c))); }
  std::optional<Cell> comp(int i, const Cell& a, const Cell& b) const override {
    auto c = base_->comp(i + shift_, up(a), up(b));
    if (!c) return std::nullopt;
    return down(*c);
  }
  std::string key(const Cell& c) const override { return base_->key(up(c)); }
  std::string show(const Cell& c) const override { return base_->show(up(c)); }
  bool same(const Cell& a, const Cell& b) const override { return base_->same(up(a), up(b)); }
  bool is_identity(const Cell& c) const override { return c.dim > 0 && base_->is_identity(up(c)); }
  bool strict_by_construction() const override { return base_->strict_by_construction(); }
  Cell up(Cell c) const {
    c.dim += shift_;
    return c;
  }
  Cell down(Cell c) const {
    c.dim -= shift_;
    return c;
  }

 private:
  ViewPtr base_;
  int shift_;
  std::function<bool(const Cell&)> keep_;
};

struct Leg {
  ViewPtr view;
  std::function<Cell(const Cell&)> to_base, from_base;
  std::function<bool(const Cell&)> keep;
};

Leg make_leg(const ViewPtr& base, int shift, std::function<bool(const Cell&)> keep) {
  Leg leg;
  leg.keep = keep;
  if (const FiniteMagma* m = base->tables()) {
    auto h = std::make_shared<FiniteHom>(
        hom_magma(*m, shift, [&](int d, int k) { return keep(Cell{d, k, nullptr}); }));
    leg.view = std::make_shared<FiniteView>(h->magma, "hom(" + base->label() + ")");
    leg.to_base = [h](const Cell& c) {
      int d = std::min(c.dim, h->magma->top());
      return Cell{c.dim + h->shift, h->to_base[d].at(c.index), nullptr};
    };
    leg.from_base = [h](const Cell& c) {
      int k = h->hom_index(c.dim, c.index);
      if (k < 0) throw Error("hom: cell outside the hom");
      return Cell{c.dim - h->shift, k, nullptr};
    };
  } else {
    leg.view = std::make_shared<HomView>(base, shift, keep);
    leg.to_base = [shift](Cell c) {
      c.dim += shift;
      return c;
    };
    leg.from_base = [shift](Cell c) {
      c.dim -= shift;
      return c;
    };
  }
  return leg;
}

MapPtr hom_map(const Leg& src, MapPtr base, const Leg& tgt) {
  return std::make_shared<FunctionMap>(
      [src, base, tgt](const Cell& c) { return tgt.from_base(base->apply(src.to_base(c))); }, base->label());
}

class LegRelation : public BridgeRelation {
 public:
  LegRelation(Leg leg, RelPtr base, int shift) : leg_(std::move(leg)), base_(std::move(base)), shift_(shift) {}
  std::optional<Cell> bridge(const Cell& a, const Cell& b) const override {
    auto c = base_->bridge(leg_.to_base(a), leg_.to_base(b));
    if (!c) return std::nullopt;
    return leg_.from_base(*c);
  }
  std::vector<std::array<Cell, 3>> triples(int d, int bound) const override {
    std::vector<std::array<Cell, 3>> out;
    for (const auto& [a, b, c] : base_->triples(d + shift_, bound))
      if (leg_.keep(a) && leg_.keep(b)) out.push_back({leg_.from_base(a), leg_.from_base(b), leg_.from_base(c)});
    return out;
  }

 private:
  Leg leg_;
  RelPtr base_;
  int shift_;
};

}  // namespace

HomSpan hom_span(const Span& s, const Cell& a, const Cell& b) {
  const MagmaView& x1 = *s.x1;
  if (a.dim != b.dim || !x1.parallel(a, b)) throw Error("hom: " + x1.show(a) + " and " + x1.show(b) + " are not parallel");
  int level = a.dim, shift = a.dim + 1;
  if (x1.top() < shift) throw Error("hom: X1 has no cells in dimension " + std::to_string(shift));
  auto x1p = s.x1;
  auto in_hom = [x1p, a, b, level](const Cell& c) {
    return x1p->same(x1p->boundary(c, true, level), a) && x1p->same(x1p->boundary(c, false, level), b);
  };
  auto lambda = s.lambda;
  Leg l1 = make_leg(s.x1, shift, in_hom);
  Leg l2 = make_leg(s.x2, shift, [in_hom, lambda](const Cell& c) { return in_hom(lambda->apply(c)); });
  Leg l3 = make_leg(s.x3, shift, [](const Cell&) { return true; });
  Span h;
  h.name = s.name + "(" + x1.show(a) + "," + x1.show(b) + ")";
  h.x1 = l1.view;
  h.x2 = l2.view;
  h.x3 = l3.view;
  h.lambda = hom_map(l2, s.lambda, l1);
  h.rho = hom_map(l1, s.rho, l2);
  h.kappa = hom_map(l2, s.kappa, l3);
  h.r = std::make_shared<LegRelation>(l2, s.r, shift);
  h.bound = s.bound;
  return HomSpan{h, shift, {l1.to_base, l2.to_base, l3.to_base}, {l1.from_base, l2.from_base, l3.from_base}};
}

Span hom_category(const Span& s, const Cell& a, const Cell& b) { return hom_span(s, a, b).span; }

// ---------------------------------------------------------- stabilization

namespace {

void require_monoidal(const FiniteMagma& m, int k, const std::string& what) {
  for (int d = 0; d < k; ++d)
    if (m.count(d) != 1)
      throw Error(what + " is not " + std::to_string(k) + "-tuply monoidal: dimension " + std::to_string(d) + " has " +
                  std::to_string(m.count(d)) + " cells");
}

std::string fresh_point(const FiniteMagma& m) {
  std::string p = "*";
  for (;;) {
    bool clash = false;
    for (const auto& layer : m.graph.names)
      for (const auto& n : layer) clash = clash || n == p;
    if (!clash) return p;
    p += "'";
  }
}

GraphMorphism tabulate(const FiniteMagma& src, const CellMap& f) {
  GraphMorphism g;
  g.map.resize(src.top() + 1);
  for (int d = 0; d <= src.top(); ++d)
    for (int k = 0; k < src.count(d); ++k) g.map[d].push_back(f.apply(Cell{d, k, nullptr}).index);
  return g;
}

GraphMorphism shift_morphism(const GraphMorphism& f, Direction dir) {
  GraphMorphism g;
  if (dir == Direction::Up) {
    g.map.push_back({0});
    for (const auto& layer : f.map) g.map.push_back(layer);
  } else {
    g.map.assign(f.map.begin() + 1, f.map.end());
  }
  return g;
}

}  // namespace

FiniteMagma suspend(const FiniteMagma& m) {
  require_monoidal(m, 2, "magma");
  int n = m.top();
  OmegaGraph g(n + 1);
  g.add(0, fresh_point(m));
  for (int d = 0; d <= n; ++d)
    for (int k = 0; k < m.graph.size(d); ++k)
      g.add(d + 1, m.graph.names[d][k], d == 0 ? 0 : m.graph.dom[d][k], d == 0 ? 0 : m.graph.cod[d][k]);
  g.id_of[1] = {0};
  for (int d = 1; d <= n; ++d) g.id_of[d + 1] = m.graph.id_of[d];
  g.reflexive = m.graph.reflexive;
  FiniteMagma w(g);
  if (n + 1 >= 1) w.table[1][0] = {0};
  for (int j = 2; j <= n + 1; ++j)
    for (int i = 0; i < j; ++i) w.table[j][i] = m.table[j - 1][i == 0 ? 0 : i - 1];
  return w;
}

FiniteMagma desuspend(const FiniteMagma& m) {
  require_monoidal(m, 3, "magma");
  int n = m.top() - 1;
  if (n < 0) throw Error("desuspension needs cells in dimension 1");
  OmegaGraph g(n);
  for (int d = 0; d <= n; ++d)
    for (int k = 0; k < m.graph.size(d + 1); ++k)
      g.add(d, m.graph.names[d + 1][k], d == 0 ? -1 : m.graph.dom[d + 1][k], d == 0 ? -1 : m.graph.cod[d + 1][k]);
  for (int d = 1; d <= n; ++d) g.id_of[d] = m.graph.id_of[d + 1];
  g.reflexive = m.graph.reflexive;
  FiniteMagma w(g);
  for (int j = 1; j <= n; ++j)
    for (int i = 0; i < j; ++i) w.table[j][i] = m.table[j + 1][i + 1];
  return w;
}

Span stabilize(const Span& s, Direction dir) {
  if (!s.finite()) throw Error("stabilize: the span must be finite");
  const FiniteMagma* m1 = s.x1->tables();
  const FiniteMagma* m2 = s.x2->tables();
  const FiniteMagma* m3 = s.x3->tables();
  if (!m1 || !m2 || !m3) throw Error("stabilize: every leg must be a finite magma");
  int k = dir == Direction::Up ? 2 : 3;
  require_monoidal(*m1, k, "X1");
  require_monoidal(*m2, k, "X2");
  require_monoidal(*m3, k, "X3");
  auto shift = [dir](const FiniteMagma& m) { return std::make_shared<FiniteMagma>(dir == Direction::Up ? suspend(m) : desuspend(m)); };
  auto w1 = shift(*m1);
  auto w2 = m2 == m1 ? w1 : shift(*m2);
  auto w3 = m3 == m1 ? w1 : m3 == m2 ? w2 : shift(*m3);
  auto map = [&](const FiniteMagma& src, std::shared_ptr<FiniteMagma> ws, std::shared_ptr<FiniteMagma> wt,
                 const CellMap& f) -> MapPtr {
    if (dynamic_cast<const IdentityMap*>(&f) && ws == wt) return std::make_shared<IdentityMap>();
    return std::make_shared<TableMap>(ws, wt, shift_morphism(tabulate(src, f), dir), f.label());
  };
  Span w;
  // Names and labels are kept so that down(up(s)) serializes exactly like s.
  w.name = s.name;
  w.x1 = std::make_shared<FiniteView>(w1, s.x1->label());
  w.x2 = w2 == w1 ? w.x1 : std::make_shared<FiniteView>(w2, s.x2->label());
  w.x3 = w3 == w1 ? w.x1 : w3 == w2 ? w.x2 : std::make_shared<FiniteView>(w3, s.x3->label());
  w.lambda = map(*m2, w2, w1, *s.lambda);
  w.rho = map(*m1, w1, w2, *s.rho);
  w.kappa = map(*m2, w2, w3, *s.kappa);
  if (dynamic_cast<const DiagonalRelation*>(s.r.get())) {
    w.r = std::make_shared<DiagonalRelation>(w.x2);
    return w;
  }
  auto r = std::make_shared<TableRelation>(w2);
  if (dir == Direction::Up) r->add(0, 0, 0, 0);
  for (int d = 0; d <= m2->top(); ++d)
    for (const auto& [a, b, c] : s.r->triples(d, 0)) {
      if (dir == Direction::Up)
        r->add(d + 1, a.index, b.index, c.index);
      else if (d >= 1)
        r->add(d - 1, a.index, b.index, c.index);
    }
  w.r = r;
  return w;
}

// -------------------------------------------------------------- extraction

namespace {

void require_skeletal(const FiniteMagma& m, int n) {
  for (int d = n + 1; d <= m.top(); ++d)
    for (int k = 0; k < m.count(d); ++k)
      if (!m.is_identity(d, k))
        throw Error("X1 is not " + std::to_string(n) + "-skeletal: " + m.name(d, k) + " in dimension " +
                    std::to_string(d));
}

FiniteMagma truncate(const FiniteMagma& m, int n) {
  OmegaGraph g(std::min(n, m.top()));
  for (int d = 0; d <= g.trunc_dim; ++d) {
    g.names[d] = m.graph.names[d];
    g.dom[d] = m.graph.dom[d];
    g.cod[d] = m.graph.cod[d];
    g.id_of[d] = m.graph.id_of[d];
  }
  g.reflexive = m.graph.reflexive;
  FiniteMagma t(g);
  for (int j = 1; j <= g.trunc_dim; ++j) t.table[j] = m.table[j];
  return t;
}

// Runs one Scholium instance and logs it; returns the λ-image or nothing on
// failure (recorded in the log).
std::optional<Cell> instance(const Span& s, ExtractionLog& log, const std::string& tag, const std::vector<Cell>& leaves,
                             const std::string& lhs, const std::string& rhs, bool expect_identity) {
  if (log.failure) return std::nullopt;
  const MagmaView& x1 = *s.x1;
  try {
    ScholiumResult r = scholium(s, leaves, *parse_schedule(lhs), *parse_schedule(rhs));
    if (!x1.same(x1.dom(r.image), r.lhs) || !x1.same(x1.cod(r.image), r.rhs)) {
      log.failure = tag + ": λ-image " + x1.show(r.image) + " does not run from " + x1.show(r.lhs) + " to " +
                    x1.show(r.rhs) + " (splitting fails)";
      return std::nullopt;
    }
    if (expect_identity && !x1.same(r.lhs, r.rhs)) {
      log.failure = tag + ": " + x1.show(r.lhs) + " and " + x1.show(r.rhs) + " differ although the bridge image " +
                    x1.show(r.image) + " lies above the skeleton";
      return std::nullopt;
    }
    log.steps.push_back(tag + ": lift " + s.x2->show(r.lift_lhs) + " and " + s.x2->show(r.lift_rhs) +
                        ", κ-equal, bridge " + s.x2->show(r.bridge) + ", λ-image " + x1.show(r.image));
    return r.image;
  } catch (const Error& e) {
    log.failure = tag + ": " + e.what();
    return std::nullopt;
  }
}

}  // namespace

FiniteMagma pad_magma(const FiniteMagma& m, int n) {
  if (n <= m.top()) return m;
  OmegaGraph g = m.graph;
  int top = m.top();
  g.resize(n);
  for (int d = top + 1; d <= n; ++d) {
    g.id_of[d].assign(g.size(d - 1), -1);
    for (int x = 0; x < g.size(d - 1); ++x) g.id_of[d][x] = g.add(d, "id_" + g.names[d - 1][x], x, x);
  }
  FiniteMagma p(g);
  for (int j = 1; j <= n; ++j)
    for (int i = 0; i < j; ++i)
      for (int a = 0; a < p.count(j); ++a)
        for (int b = 0; b < p.count(j); ++b) {
          int c = m.comp(i, j, a, b);
          if (c >= 0) p.set_comp(i, j, a, b, c);
        }
  return p;
}

CategoryExtraction extract_category(const Span& s) {
  const FiniteMagma* m = s.x1->tables();
  if (!m) throw Error("extract_category: X1 must be finite");
  require_skeletal(*m, 1);
  CategoryExtraction out{truncate(*m, 1), {}};
  const MagmaView& x1 = *s.x1;
  int n1 = m->count(1);
  auto c1 = [](int k) { return Cell{1, k, nullptr}; };
  for (int f = 0; f < n1; ++f)
    for (int g = 0; g < n1; ++g) {
      if (!m->composable(0, 1, f, g)) continue;
      for (int h = 0; h < n1; ++h) {
        if (!m->composable(0, 1, g, h)) continue;
        instance(s, out.log, "assoc (" + m->name(1, f) + ", " + m->name(1, g) + ", " + m->name(1, h) + ")",
                 {c1(f), c1(g), c1(h)}, "c(0,c(0,#0,#1),#2)", "c(0,#0,c(0,#1,#2))", true);
      }
    }
  for (int f = 0; f < n1; ++f) {
    Cell cf = c1(f);
    Cell ia = x1.id(x1.dom(cf)), ib = x1.id(x1.cod(cf));
    instance(s, out.log, "left unit (" + m->name(1, f) + ")", {ia, cf}, "c(0,#0,#1)", "#1", true);
    instance(s, out.log, "right unit (" + m->name(1, f) + ")", {cf, ib}, "c(0,#0,#1)", "#0", true);
  }
  return out;
}

// ------------------------------------------------------------- bicategories

int inverse_cell(const FiniteMagma& m, int x) {
  for (int y = 0; y < m.count(2); ++y) {
    if (m.dom(2, y) != m.cod(2, x) || m.cod(2, y) != m.dom(2, x)) continue;
    if (m.comp(1, 2, x, y) == m.id(1, m.dom(2, x)) && m.comp(1, 2, y, x) == m.id(1, m.cod(2, x))) return y;
  }
  return -1;
}

Report validate_bicategory(const BicategoryData& b) {
  const FiniteMagma& m = b.cells;
  Report rep;
  if (m.top() != 2) {
    rep.add("shape", "a bicategory needs cells up to dimension 2");
    return rep;
  }
  rep.absorb(validate_magma(m), "magma");
  int n1 = m.count(1), n2 = m.count(2);
  auto h1 = [&](int f, int g) { return m.comp(0, 1, f, g); };
  auto H = [&](int x, int y) { return x < 0 || y < 0 ? -1 : m.comp(0, 2, x, y); };
  auto V = [&](int x, int y) { return x < 0 || y < 0 ? -1 : m.comp(1, 2, x, y); };
  auto id2 = [&](int f) { return m.id(1, f); };
  auto I = [&](int a) { return m.id(0, a); };
  auto nm1 = [&](int f) { return m.name(1, f); };
  auto nm2 = [&](int x) { return m.name(2, x); };
  auto check = [&](bool ok, const std::string& kind, const std::string& what) {
    if (!ok && rep.violations.size() < 200) rep.add(kind, what);
  };
  auto assoc = [&](int f, int g, int h) {
    auto it = b.assoc.find({f, g, h});
    return it == b.assoc.end() ? -1 : it->second;
  };
  auto comp1 = [&](int f, int g) { return m.cod(1, f) == m.dom(1, g); };
  if (static_cast<int>(b.lunit.size()) != n1 || static_cast<int>(b.runit.size()) != n1) {
    rep.add("boundary", "unitor tables must have one entry per 1-cell");
    return rep;
  }
  // coherence cells have the right boundaries and are invertible
  for (int f = 0; f < n1; ++f)
    for (int g = 0; g < n1; ++g)
      for (int h = 0; h < n1; ++h) {
        if (!comp1(f, g) || !comp1(g, h)) continue;
        std::string tag = "(" + nm1(f) + ", " + nm1(g) + ", " + nm1(h) + ")";
        int a = assoc(f, g, h);
        if (a < 0) {
          check(false, "boundary", "missing associator " + tag);
          continue;
        }
        check(m.dom(2, a) == h1(f, h1(g, h)) && m.cod(2, a) == h1(h1(f, g), h), "boundary",
              "associator " + tag + " = " + nm2(a) + " has wrong boundary");
        check(inverse_cell(m, a) >= 0, "invertible", "associator " + tag + " = " + nm2(a));
      }
  for (int f = 0; f < n1; ++f) {
    int l = b.lunit[f], r = b.runit[f];
    int ia = I(m.dom(1, f)), ib = I(m.cod(1, f));
    check(l >= 0 && l < n2 && m.dom(2, l) == h1(ia, f) && m.cod(2, l) == f, "boundary", "left unitor of " + nm1(f));
    check(r >= 0 && r < n2 && m.dom(2, r) == h1(f, ib) && m.cod(2, r) == f, "boundary", "right unitor of " + nm1(f));
    if (l >= 0 && l < n2) check(inverse_cell(m, l) >= 0, "invertible", "left unitor of " + nm1(f));
    if (r >= 0 && r < n2) check(inverse_cell(m, r) >= 0, "invertible", "right unitor of " + nm1(f));
  }
  if (!rep.ok()) return rep;
  // hom categories
  for (int x = 0; x < n2; ++x) {
    check(V(id2(m.dom(2, x)), x) == x && V(x, id2(m.cod(2, x))) == x, "hom-category", "unit law at " + nm2(x));
    for (int y = 0; y < n2; ++y) {
      if (m.cod(2, x) != m.dom(2, y)) continue;
      for (int z = 0; z < n2; ++z) {
        if (m.cod(2, y) != m.dom(2, z)) continue;
        check(V(V(x, y), z) == V(x, V(y, z)), "hom-category",
              "vertical associativity at (" + nm2(x) + ", " + nm2(y) + ", " + nm2(z) + ")");
      }
    }
  }
  // composition is a functor
  for (int f = 0; f < n1; ++f)
    for (int g = 0; g < n1; ++g)
      if (comp1(f, g))
        check(H(id2(f), id2(g)) == id2(h1(f, g)), "functoriality", "identities at (" + nm1(f) + ", " + nm1(g) + ")");
  for (int x = 0; x < n2; ++x)
    for (int y = 0; y < n2; ++y) {
      if (m.cod(2, x) != m.dom(2, y)) continue;
      for (int z = 0; z < n2; ++z) {
        if (!comp1(m.dom(2, x), m.dom(2, z))) continue;
        for (int w = 0; w < n2; ++w) {
          if (m.cod(2, z) != m.dom(2, w)) continue;
          check(H(V(x, y), V(z, w)) == V(H(x, z), H(y, w)), "functoriality",
                "interchange at (" + nm2(x) + ", " + nm2(y) + ", " + nm2(z) + ", " + nm2(w) + ")");
        }
      }
    }
  // naturality
  for (int x = 0; x < n2; ++x)
    for (int y = 0; y < n2; ++y) {
      if (!comp1(m.dom(2, x), m.dom(2, y))) continue;
      for (int z = 0; z < n2; ++z) {
        if (!comp1(m.dom(2, y), m.dom(2, z))) continue;
        int f = m.dom(2, x), g = m.dom(2, y), h = m.dom(2, z);
        int f2 = m.cod(2, x), g2 = m.cod(2, y), h2 = m.cod(2, z);
        check(V(H(x, H(y, z)), assoc(f2, g2, h2)) == V(assoc(f, g, h), H(H(x, y), z)), "naturality",
              "associator at (" + nm2(x) + ", " + nm2(y) + ", " + nm2(z) + ")");
      }
    }
  for (int x = 0; x < n2; ++x) {
    int f = m.dom(2, x), f2 = m.cod(2, x);
    int ia = I(m.dom(1, f)), ib = I(m.cod(1, f));
    check(V(H(id2(ia), x), b.lunit[f2]) == V(b.lunit[f], x), "naturality", "left unitor at " + nm2(x));
    check(V(H(x, id2(ib)), b.runit[f2]) == V(b.runit[f], x), "naturality", "right unitor at " + nm2(x));
  }
  // pentagon and triangle
  for (int f = 0; f < n1; ++f)
    for (int g = 0; g < n1; ++g) {
      if (!comp1(f, g)) continue;
      int ib = I(m.cod(1, f));
      check(V(assoc(f, ib, g), H(b.runit[f], id2(g))) == H(id2(f), b.lunit[g]), "triangle",
            "at (" + nm1(f) + ", " + nm1(g) + ")");
      for (int h = 0; h < n1; ++h) {
        if (!comp1(g, h)) continue;
        for (int k = 0; k < n1; ++k) {
          if (!comp1(h, k)) continue;
          int lhs = V(assoc(f, g, h1(h, k)), assoc(h1(f, g), h, k));
          int rhs = V(V(H(id2(f), assoc(g, h, k)), assoc(f, h1(g, h), k)), H(assoc(f, g, h), id2(k)));
          check(lhs >= 0 && lhs == rhs, "pentagon",
                "at (" + nm1(f) + ", " + nm1(g) + ", " + nm1(h) + ", " + nm1(k) + ")");
        }
      }
    }
  return rep;
}

BicategoryData strict_bicategory(const FiniteMagma& m, const std::string& name) {
  if (m.top() != 2) throw Error("strict_bicategory: expected cells up to dimension 2");
  Report r = validate_strict(m);
  if (!r.ok()) throw Error("strict_bicategory: not strict: " + r.violations.front().detail);
  BicategoryData b{name, m, {}, {}, {}};
  int n1 = m.count(1);
  for (int f = 0; f < n1; ++f) {
    b.lunit.push_back(m.id(1, f));
    b.runit.push_back(m.id(1, f));
    for (int g = 0; g < n1; ++g)
      for (int h = 0; h < n1; ++h)
        if (m.composable(0, 1, f, g) && m.composable(0, 1, g, h))
          b.assoc[{f, g, h}] = m.id(1, m.comp(0, 1, f, m.comp(0, 1, g, h)));
  }
  return b;
}

BicategoryExtraction extract_bicategory(const Span& s) {
  const FiniteMagma* m = s.x1->tables();
  if (!m) throw Error("extract_bicategory: X1 must be finite");
  require_skeletal(*m, 2);
  BicategoryExtraction out;
  out.bicategory.name = s.name;
  out.bicategory.cells = m->top() < 2 ? pad_magma(*m, 2) : truncate(*m, 2);
  bool flat = m->top() < 2;
  m = &out.bicategory.cells;
  ExtractionLog& log = out.log;
  const MagmaView& x1 = *s.x1;
  int n0 = m->count(0), n1 = m->count(1), n2 = m->count(2);
  auto c = [](int d, int k) { return Cell{d, k, nullptr}; };

  if (flat) log.steps.push_back("X1 has only identity 2-cells; hom categories are discrete");
  for (int a = 0; a < n0 && !log.failure && !flat; ++a)
    for (int b = 0; b < n0 && !log.failure; ++b) {
      Span h = hom_category(s, c(0, a), c(0, b));
      CategoryExtraction e = extract_category(h);
      std::string tag = "hom(" + m->name(0, a) + ", " + m->name(0, b) + ") ";
      for (const auto& step : e.log.steps) log.steps.push_back(tag + step);
      if (e.log.failure) log.failure = tag + *e.log.failure;
    }
  // interchange through 3-dimensional bridges
  for (int x = 0; x < n2 && !log.failure; ++x)
    for (int y = 0; y < n2; ++y) {
      if (m->comp(1, 2, x, y) < 0) continue;
      for (int z = 0; z < n2; ++z) {
        if (m->comp(0, 2, x, z) < 0) continue;
        for (int w = 0; w < n2; ++w) {
          if (m->comp(1, 2, z, w) < 0) continue;
          instance(s, log,
                   "interchange (" + m->name(2, x) + ", " + m->name(2, y) + ", " + m->name(2, z) + ", " +
                       m->name(2, w) + ")",
                   {c(2, x), c(2, y), c(2, z), c(2, w)}, "c(0,c(1,#0,#1),c(1,#2,#3))", "c(1,c(0,#0,#2),c(0,#1,#3))",
                   true);
        }
      }
    }
  // a quasi-inverse bridge composed with the bridge is bridged to an identity
  auto inverse_by_bridges = [&](const std::string& tag, const std::vector<Cell>& leaves, const std::string& lhs,
                                const std::string& rhs, const Cell& image) {
    if (log.failure) return;
    auto back = instance(s, log, tag + " quasi-inverse", leaves, rhs, lhs, false);
    if (!back) return;
    try {
      std::vector<Cell> lifted;
      for (const auto& l : leaves) lifted.push_back(s.rho->apply(l));
      Cell u = run_schedule(*s.x2, lifted, *parse_schedule(lhs));
      Cell v = run_schedule(*s.x2, lifted, *parse_schedule(rhs));
      Cell there = *s.r->bridge(u, v), back2 = *s.r->bridge(v, u);
      for (const auto& [p, q, src] : {std::tuple{there, back2, u}, std::tuple{back2, there, v}}) {
        auto loop = s.x2->comp(1, p, q);
        if (!loop) throw Error("bridges do not compose");
        Cell unit = s.x2->id(src);
        if (!s.x3->same(s.kappa->apply(*loop), s.kappa->apply(unit))) throw Error("κ separates the loop from the identity");
        auto b3 = s.r->bridge(*loop, unit);
        if (!b3) throw Error("no 3-dimensional bridge from the loop to the identity");
        if (!x1.same(s.lambda->apply(*loop), s.lambda->apply(unit))) throw Error("λ-image of the loop is not an identity");
        log.steps.push_back(tag + ": " + s.x2->show(*loop) + " bridged to " + s.x2->show(unit) + " by " +
                            s.x2->show(*b3));
      }
      if (!x1.same(*x1.comp(1, image, *back), x1.id(x1.dom(image))))
        throw Error("quasi-inverse " + x1.show(*back) + " does not invert " + x1.show(image));
    } catch (const std::exception& e) {
      log.failure = tag + " inverse: " + e.what();
    }
  };

  BicategoryData& bd = out.bicategory;
  for (int f = 0; f < n1 && !log.failure; ++f)
    for (int g = 0; g < n1; ++g) {
      if (!m->composable(0, 1, f, g)) continue;
      for (int h = 0; h < n1; ++h) {
        if (!m->composable(0, 1, g, h)) continue;
        std::string tag = "associator (" + m->name(1, f) + ", " + m->name(1, g) + ", " + m->name(1, h) + ")";
        std::vector<Cell> leaves{c(1, f), c(1, g), c(1, h)};
        auto img = instance(s, log, tag, leaves, "c(0,#0,c(0,#1,#2))", "c(0,c(0,#0,#1),#2)", false);
        if (!img) break;
        bd.assoc[{f, g, h}] = img->index;
        inverse_by_bridges(tag, leaves, "c(0,#0,c(0,#1,#2))", "c(0,c(0,#0,#1),#2)", *img);
      }
    }
  bd.lunit.assign(n1, -1);
  bd.runit.assign(n1, -1);
  for (int f = 0; f < n1 && !log.failure; ++f) {
    Cell cf = c(1, f);
    Cell ia = x1.id(x1.dom(cf)), ib = x1.id(x1.cod(cf));
    std::string lt = "left unitor (" + m->name(1, f) + ")", rt = "right unitor (" + m->name(1, f) + ")";
    if (auto l = instance(s, log, lt, {ia, cf}, "c(0,#0,#1)", "#1", false)) {
      bd.lunit[f] = l->index;
      inverse_by_bridges(lt, {ia, cf}, "c(0,#0,#1)", "#1", *l);
    }
    if (auto r = instance(s, log, rt, {cf, ib}, "c(0,#0,#1)", "#0", false)) {
      bd.runit[f] = r->index;
      inverse_by_bridges(rt, {cf, ib}, "c(0,#0,#1)", "#0", *r);
    }
  }
  if (!log.failure) {
    out.axioms = validate_bicategory(bd);
    if (!out.axioms.ok()) log.failure = "bicategory axiom " + out.axioms.violations.front().kind + ": " +
                                        out.axioms.violations.front().detail;
  }
  return out;
}

// --------------------------------------------------------------- weakify

namespace {

struct Coherence {
  const BicategoryData& b;
  const FiniteMagma& m;

  int H(int x, int y) const { return need(m.comp(0, 2, x, y)); }
  int V(int x, int y) const { return need(m.comp(1, 2, x, y)); }
  int h1(int f, int g) const { return need(m.comp(0, 1, f, g)); }
  static int need(int x) {
    if (x < 0) throw Error("bicategory tables are incomplete");
    return x;
  }
  int gen(const std::string& name) const { return need(m.graph.find(1, name)); }
  // value of the left-nested composite of a path starting at object x
  int left_nested(const std::vector<std::string>& p, int x, size_t n) const {
    if (n == 0) return m.id(0, x);
    int v = gen(p[0]);
    for (size_t i = 1; i < n; ++i) v = h1(v, gen(p[i]));
    return v;
  }
  // L(P)⊙L(Q) => L(PQ); x is the source of P, y the source of Q
  int merge(const std::vector<std::string>& p, int x, const std::vector<std::string>& q, int y, size_t nq) const {
    int lp = left_nested(p, x, p.size());
    if (nq == 0) return b.runit.at(lp);
    if (p.empty()) return b.lunit.at(left_nested(q, y, nq));
    int last = gen(q[nq - 1]);
    if (nq == 1) return m.id(1, h1(lp, last));
    auto it = b.assoc.find({lp, left_nested(q, y, nq - 1), last});
    if (it == b.assoc.end()) throw Error("missing associator component");
    return V(it->second, H(merge(p, x, q, y, nq - 1), m.id(1, last)));
  }
  // canonical 2-cell from the value of a 1-term to its left-nested normal form
  int canon(const Term& t) const {
    switch (t->kind) {
      case TermKind::Gen: return m.id(1, t->cell);
      case TermKind::Idn: return m.id(1, m.id(0, t->a->cell));
      case TermKind::Comp: {
        StrictNF p = nf(t->a), q = nf(t->b);
        int x = m.graph.find(0, p.path.src), y = m.graph.find(0, q.path.src);
        return V(H(canon(t->a), canon(t->b)), merge(p.path.gens, x, q.path.gens, y, q.path.gens.size()));
      }
      default: throw Error("coherence: not a 1-term: " + to_string(t));
    }
  }
};

class FreeBicategoryView : public MagmaView {
 public:
  FreeBicategoryView(OmegaGraph g, std::string name) : g_(std::move(g)), name_(std::move(name)) {}
  std::string label() const override { return name_; }
  int top() const override { return 2; }
  bool finite() const override { return false; }
  std::vector<Cell> cells(int d, int bound) const override {
    std::vector<Cell> out;
    std::set<std::string> seen;
    for (const auto& group : terms(bound))
      for (const auto& t : group) {
        if (t->dim != std::min(d, 2)) continue;
        Cell c = TermView::wrap(womega::id_tower(t, d));
        if (seen.insert(key(c)).second) out.push_back(c);
      }
    return out;
  }
  Cell dom(const Cell& c) const override { return TermView::wrap(c.term->dom1); }
  Cell cod(const Cell& c) const override { return TermView::wrap(c.term->cod1); }
  Cell id(const Cell& c) const override { return TermView::wrap(make_idn(c.term)); }
  std::optional<Cell> comp(int i, const Cell& a, const Cell& b) const override {
    if (a.dim != b.dim || i < 0 || i >= a.dim) return std::nullopt;
    if (a.dim <= 2) {
      Term t = try_comp(i, a.term, b.term);
      if (!t) return std::nullopt;
      return TermView::wrap(t);
    }
    Term x = base(a.term), y = base(b.term);
    if (i >= 2) {
      if (key2(x) != key2(y)) return std::nullopt;
      return a;
    }
    Term t = try_comp(i, x, y);
    if (!t) return std::nullopt;
    return TermView::wrap(womega::id_tower(t, a.dim));
  }
  std::string key(const Cell& c) const override {
    if (c.dim <= 1) return to_string(c.term);
    return std::string(c.dim - 2, '^') + key2(base(c.term));
  }
  std::string show(const Cell& c) const override { return to_string(c.term); }
  static Term base(Term t) {
    while (t->dim > 2) t = t->dom1;
    return t;
  }
  static std::string key2(const Term& t) {
    return to_string(t->dom1) + " | " + to_string(t->cod1) + " | " + stretch_eta(t).code();
  }

 private:
  const std::vector<std::vector<Term>>& terms(int bound) const {
    std::lock_guard<std::mutex> lock(mu_);
    auto it = cache_.find(bound);
    if (it == cache_.end()) {
      BridgeFilter ok = [](const Term& u, const Term& v) { return u->dim == 1 && stretch_eta(u) == stretch_eta(v); };
      it = cache_.emplace(bound, enumerate_terms(g_, bound, 2, ok)).first;
    }
    return it->second;
  }
  OmegaGraph g_;
  std::string name_;
  mutable std::mutex mu_;
  mutable std::map<int, std::vector<std::vector<Term>>> cache_;
};

}  // namespace

int coherence_cell(const BicategoryData& b, const Term& u, const Term& v) {
  if (u->dim != 1 || v->dim != 1 || !terms_parallel(u, v) || nf(u) != nf(v))
    throw Error("coherence: " + to_string(u) + " and " + to_string(v) + " are not identified by strictification");
  Coherence c{b, b.cells};
  int inv = inverse_cell(b.cells, c.canon(v));
  if (inv < 0) throw Error("coherence: canonical cell is not invertible");
  return c.V(c.canon(u), inv);
}

Span weakify_bicategory(const BicategoryData& b, int bound) {
  Report r = validate_bicategory(b);
  if (!r.ok()) throw Error("weakify: " + r.violations.front().kind + ": " + r.violations.front().detail);
  auto bp = std::make_shared<BicategoryData>(b);
  auto cells = std::shared_ptr<const FiniteMagma>(bp, &bp->cells);
  const OmegaGraph& y = b.cells.graph;
  auto x1 = std::make_shared<FiniteView>(cells, b.name);
  auto x2 = std::make_shared<FreeBicategoryView>(y, "free-bicategory(" + b.name + ")");
  auto x3 = std::make_shared<FreeStrictView>(y, 2, "free-strict(" + b.name + ")");
  auto rho = std::make_shared<FunctionMap>(
      [y](const Cell& c) { return TermView::wrap(id_tower(make_gen(y, std::min(c.dim, 2), c.index), c.dim)); },
      "unit");
  auto eval2 = std::make_shared<std::function<int(const Term&)>>();
  *eval2 = [bp, eval2](const Term& t) -> int {
    const FiniteMagma& m = bp->cells;
    switch (t->kind) {
      case TermKind::Gen: return t->cell;
      case TermKind::Idn: return m.id(1, evaluate(m, t->a));
      case TermKind::Comp: {
        int c = m.comp(t->axis, 2, (*eval2)(t->a), (*eval2)(t->b));
        if (c < 0) throw Error("evaluation undefined at " + to_string(t));
        return c;
      }
      case TermKind::Bridge: return coherence_cell(*bp, t->a, t->b);
    }
    throw Error("malformed term");
  };
  auto lambda = std::make_shared<FunctionMap>(
      [bp, eval2](const Cell& c) {
        if (c.dim <= 1) return Cell{c.dim, evaluate(bp->cells, c.term), nullptr};
        return Cell{c.dim, (*eval2)(FreeBicategoryView::base(c.term)), nullptr};
      },
      "evaluation");
  auto kappa = std::make_shared<FunctionMap>([x3](const Cell& c) { return x3->canonical(stretch_eta(c.term)); },
                                             "strictification");
  auto rel = std::make_shared<FunctionRelation>(x2, [x2](const Cell& a, const Cell& b) -> std::optional<Cell> {
    if (a.dim == 1 && b.dim == 1) {
      auto t = stretch_bridge(a.term, b.term);
      if (!t) return std::nullopt;
      return TermView::wrap(*t);
    }
    if (!x2->same(a, b)) return std::nullopt;
    return x2->id(a);
  });
  return Span{b.name, x1, x2, x3, lambda, rho, kappa, rel, bound};
}

BicategoryData cocycle_bicategory(int bits, const std::function<int(int, int, int)>& omega, const std::string& name) {
  int n = 1 << bits;
  auto elem = [&](int x) -> std::string {
    if (x == 0) return "e";
    if (bits == 1) return "f";
    if (bits == 2) return std::string(1, "abc"[x - 1]);
    return "g" + std::to_string(x);
  };
  OmegaGraph g(2);
  g.add(0, "*");
  for (int x = 0; x < n; ++x) g.add(1, elem(x), 0, 0);
  g.id_of[1] = {0};
  g.add_identities();
  for (int x = 0; x < n; ++x) g.add(2, "s_" + elem(x), x, x);
  auto two = [&](int x, int p) { return g.find(2, (p ? "s_" : "id_") + elem(x)); };
  FiniteMagma m(g);
  for (int x = 0; x < n; ++x)
    for (int y = 0; y < n; ++y) {
      m.set_comp(0, 1, x, y, x ^ y);
      for (int p = 0; p < 2; ++p)
        for (int q = 0; q < 2; ++q) {
          m.set_comp(0, 2, two(x, p), two(y, q), two(x ^ y, p ^ q));
          if (x == y) m.set_comp(1, 2, two(x, p), two(x, q), two(x, p ^ q));
        }
    }
  BicategoryData b{name, m, {}, {}, {}};
  for (int x = 0; x < n; ++x) {
    b.lunit.push_back(two(x, 0));
    b.runit.push_back(two(x, 0));
    for (int y = 0; y < n; ++y)
      for (int z = 0; z < n; ++z) b.assoc[{x, y, z}] = two(x ^ y ^ z, omega(x, y, z) & 1);
  }
  return b;
}

}  // namespace womega
