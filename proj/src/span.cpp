#include "womega/span.hpp"

#include <map>
#include <mutex>
#include <set>

namespace womega {

namespace {

constexpr int kListed = 20;  // violations listed per kind before summarizing

struct Sink {
  Report& rep;
  std::map<std::string, int> seen;
  explicit Sink(Report& r) : rep(r) {}
  void add(const std::string& kind, const std::string& detail) {
    int n = ++seen[kind];
    if (n <= kListed) rep.add(kind, detail);
    if (n == kListed + 1) rep.notes.push_back(kind + ": further violations not listed");
  }
};

int dims_of(const MagmaView& v) { return v.top(); }

}  // namespace

Report validate_bridge_relation(const MagmaView& base, const BridgeRelation& r, int bound) {
  Report rep;
  if (!base.finite()) rep.bound = bound;
  Sink sink{rep};
  for (int d = 0; d <= dims_of(base); ++d) {
    auto ts = r.triples(d, bound);
    std::map<std::pair<std::string, std::string>, std::vector<Cell>> by_pair;
    for (const auto& [a, b, c] : ts) {
      std::string where = "(" + base.show(a) + ", " + base.show(b) + ", " + base.show(c) + ")";
      if (a.dim != d || b.dim != d || c.dim != d + 1) {
        sink.add("condition-1", "dimensions of " + where);
        continue;
      }
      if (!base.parallel(a, b)) sink.add("condition-1", "endpoints not parallel in " + where);
      if (!base.same(base.dom(c), a) || !base.same(base.cod(c), b))
        sink.add("condition-1", "bridge boundary mismatch in " + where);
      auto& cs = by_pair[{base.key(a), base.key(b)}];
      bool known = false;
      for (const auto& x : cs) known = known || base.same(x, c);
      if (!known) {
        cs.push_back(c);
        if (cs.size() == 2) sink.add("condition-3", "several bridges from " + base.show(a) + " to " + base.show(b));
      }
    }
    for (const auto& a : base.cells(d, bound)) {
      auto it = by_pair.find({base.key(a), base.key(a)});
      bool found = false;
      if (it != by_pair.end())
        for (const auto& c : it->second) found = found || base.same(c, base.id(a));
      if (!found) sink.add("condition-2", "missing identity bridge on " + base.show(a));
    }
  }
  return rep;
}

Report validate_graph_map(const MagmaView& src, const CellMap& f, const MagmaView& tgt, int bound) {
  Report rep;
  if (!src.finite()) rep.bound = bound;
  Sink sink{rep};
  for (int d = 0; d <= src.top(); ++d)
    for (const auto& c : src.cells(d, bound)) {
      Cell fc = f.apply(c);
      if (fc.dim != d) {
        sink.add("graph-map", src.show(c) + " changes dimension");
        continue;
      }
      if (d >= 1) {
        if (!tgt.same(f.apply(src.dom(c)), tgt.dom(fc)))
          sink.add("graph-map", "source of " + src.show(c) + " not preserved");
        if (!tgt.same(f.apply(src.cod(c)), tgt.cod(fc)))
          sink.add("graph-map", "target of " + src.show(c) + " not preserved");
      }
      if (d < src.top() && !tgt.same(f.apply(src.id(c)), tgt.id(fc)))
        sink.add("graph-map", "identity on " + src.show(c) + " not preserved");
    }
  return rep;
}

Report validate_magma_map(const MagmaView& src, const CellMap& f, const MagmaView& tgt, int bound) {
  Report rep = validate_graph_map(src, f, tgt, bound);
  Sink sink{rep};
  for (int j = 1; j <= src.top(); ++j)
    for (const auto& [i, a, b, c] : composites(src, j, bound)) {
      auto fc = tgt.comp(i, f.apply(a), f.apply(b));
      if (!fc || !tgt.same(*fc, f.apply(c)))
        sink.add("composition", "(" + src.show(a) + " ⊙" + std::to_string(i) + " " + src.show(b) + ") not preserved");
    }
  return rep;
}

Report validate_penon_morphism(const MagmaView& src, const BridgeRelation& r, const CellMap& f,
                               const MagmaView& tgt, int bound) {
  Report rep;
  if (!src.finite()) rep.bound = bound;
  if (tgt.strict_by_construction()) {
    rep.notes.push_back("target is a free strict category");
  } else if (const FiniteMagma* t = tgt.tables()) {
    rep.absorb(validate_strict(*t), "condition-1");
  } else {
    rep.add("condition-1", "strictness of " + tgt.label() + " cannot be checked");
  }
  rep.absorb(validate_magma_map(src, f, tgt, bound), "morphism");
  Sink sink{rep};
  for (int d = 0; d <= src.top(); ++d) {
    for (const auto& [a, b, c] : r.triples(d, bound)) {
      Cell fa = f.apply(a);
      if (!tgt.same(fa, f.apply(b)) || !tgt.same(f.apply(c), tgt.id(fa)))
        sink.add("condition-2", "bridge " + src.show(c) + " is not sent to an identity");
    }
    auto cs = src.cells(d, bound);
    std::vector<Cell> images;
    for (const auto& c : cs) images.push_back(f.apply(c));
    for (size_t x = 0; x < cs.size(); ++x)
      for (size_t y = 0; y < cs.size(); ++y) {
        if (!src.parallel(cs[x], cs[y]) || !tgt.same(images[x], images[y])) continue;
        if (!r.bridge(cs[x], cs[y]))
          sink.add("condition-3", "no bridge from " + src.show(cs[x]) + " to " + src.show(cs[y]));
      }
  }
  return rep;
}

Report validate_weak_omega_category(const Span& s) {
  Report rep;
  int bound = s.check_bound();
  if (s.bound) rep.bound = bound;
  if (const FiniteMagma* m = s.x1->tables()) rep.absorb(validate_magma(*m), "x1");
  if (const FiniteMagma* m = s.x2->tables()) rep.absorb(validate_magma(*m), "x2");
  rep.absorb(validate_magma_map(*s.x2, *s.lambda, *s.x1, bound), "lambda");
  rep.absorb(validate_graph_map(*s.x1, *s.rho, *s.x2, bound), "rho");
  {
    Sink sink{rep};
    for (int d = 0; d <= s.x1->top(); ++d)
      for (const auto& c : s.x1->cells(d, bound))
        if (!s.x1->same(s.lambda->apply(s.rho->apply(c)), c))
          sink.add("splitting", "λ(ρ(" + s.x1->show(c) + ")) differs from " + s.x1->show(c));
  }
  rep.absorb(validate_bridge_relation(*s.x2, *s.r, bound), "bridge");
  rep.absorb(validate_penon_morphism(*s.x2, *s.r, *s.kappa, *s.x3, bound), "kappa");
  return rep;
}

Report validate_omega_functor(const OmegaFunctorData& f) {
  const Span& x = *f.src;
  const Span& y = *f.tgt;
  int bound = std::max(x.check_bound(), y.check_bound());
  Report rep;
  if (x.bound || y.bound) rep.bound = bound;
  rep.absorb(validate_magma_map(*x.x1, *f.f1, *y.x1, bound), "f1");
  rep.absorb(validate_magma_map(*x.x2, *f.f2, *y.x2, bound), "f2");
  rep.absorb(validate_magma_map(*x.x3, *f.f3, *y.x3, bound), "f3");
  Sink sink{rep};
  for (int d = 0; d <= x.x2->top(); ++d) {
    for (const auto& [a, b, c] : x.r->triples(d, bound)) {
      auto fc = y.r->bridge(f.f2->apply(a), f.f2->apply(b));
      if (!fc || !y.x2->same(*fc, f.f2->apply(c)))
        sink.add("condition-1", "bridge " + x.x2->show(c) + " not sent to a bridge");
    }
    for (const auto& a : x.x2->cells(d, bound)) {
      Cell fa = f.f2->apply(a);
      if (!y.x1->same(y.lambda->apply(fa), f.f1->apply(x.lambda->apply(a))))
        sink.add("condition-2", "λ square fails at " + x.x2->show(a));
      if (!y.x3->same(y.kappa->apply(fa), f.f3->apply(x.kappa->apply(a))))
        sink.add("condition-3", "κ square fails at " + x.x2->show(a));
    }
  }
  for (int d = 0; d <= x.x1->top(); ++d)
    for (const auto& c : x.x1->cells(d, bound))
      if (!y.x2->same(f.f2->apply(x.rho->apply(c)), y.rho->apply(f.f1->apply(c))))
        sink.add("condition-4", "ρ square fails at " + x.x1->show(c));
  return rep;
}

Span strict_as_weak(std::shared_ptr<const FiniteMagma> c, const std::string& name) {
  Report r = validate_strict(*c);
  if (!r.ok()) throw Error(name + " is not a strict omega category: " + r.violations.front().detail);
  auto v = std::make_shared<FiniteView>(c, name);
  auto id = std::make_shared<IdentityMap>();
  return Span{name, v, v, v, id, id, id, std::make_shared<DiagonalRelation>(v), std::nullopt};
}

StrictNF stretch_eta(const Term& t) {
  static std::mutex mu;
  static TermMap<StrictNF> memo;
  {
    std::lock_guard<std::mutex> lock(mu);
    auto it = memo.find(t);
    if (it != memo.end()) return it->second;
  }
  StrictNF r;
  switch (t->kind) {
    case TermKind::Gen: r = nf(t); break;
    case TermKind::Idn: r = nf_identity(stretch_eta(t->a)); break;
    case TermKind::Comp: r = nf_compose(t->axis, stretch_eta(t->a), stretch_eta(t->b)); break;
    case TermKind::Bridge: r = nf_identity(stretch_eta(t->a)); break;
  }
  std::lock_guard<std::mutex> lock(mu);
  if (memo.size() > 2000000) memo.clear();
  memo.emplace(t, r);
  return r;
}

std::optional<Term> stretch_bridge(const Term& u, const Term& v) {
  if (u->dim != v->dim || !terms_parallel(u, v)) return std::nullopt;
  if (stretch_eta(u) != stretch_eta(v)) return std::nullopt;
  if (term_equal(u, v)) return make_idn(u);
  return make_bridge(u, v);
}

namespace {

void require_reflexive(const OmegaGraph& y) {
  Report r = validate_omega_graph(y);
  if (!r.ok()) throw Error("invalid omega graph: " + r.violations.front().detail);
  if (!y.reflexive) throw Error("the generating omega graph must be reflexive");
}

}  // namespace

Span penon_category(const OmegaGraph& y, int bound) {
  require_reflexive(y);
  int cap = y.trunc_dim + 2;
  BridgeFilter ok = [](const Term& u, const Term& v) { return stretch_eta(u) == stretch_eta(v); };
  auto x = std::make_shared<TermView>(y, ok, cap, "stretching");
  auto c = std::make_shared<FreeStrictView>(y, cap, "free-strict");
  auto kappa = std::make_shared<FunctionMap>([c](const Cell& t) { return c->canonical(stretch_eta(t.term)); },
                                             "eta");
  auto r = std::make_shared<FunctionRelation>(x, [](const Cell& a, const Cell& b) -> std::optional<Cell> {
    auto t = stretch_bridge(a.term, b.term);
    if (!t) return std::nullopt;
    return TermView::wrap(*t);
  });
  auto id = std::make_shared<IdentityMap>();
  return Span{"penon", x, x, c, id, id, kappa, r, bound};
}

Span penon_over_view(const OmegaGraph& y, ViewPtr a, std::function<Cell(const Term&)> gen, int bound,
                     const std::string& name) {
  require_reflexive(y);
  auto eval = std::make_shared<std::function<Cell(const Term&)>>();
  *eval = [a, gen, eval](const Term& t) -> Cell {
    switch (t->kind) {
      case TermKind::Gen: return gen(t);
      case TermKind::Idn:
      case TermKind::Bridge: return a->id((*eval)(t->a));
      case TermKind::Comp: {
        auto c = a->comp(t->axis, (*eval)(t->a), (*eval)(t->b));
        if (!c) throw Error("composite undefined in the target: " + to_string(t));
        return *c;
      }
    }
    throw Error("malformed term");
  };
  BridgeFilter ok = [a, eval](const Term& u, const Term& v) { return a->same((*eval)(u), (*eval)(v)); };
  auto x = std::make_shared<TermView>(y, ok, y.trunc_dim + 2, name);
  auto kappa = std::make_shared<FunctionMap>([eval](const Cell& t) { return (*eval)(t.term); }, "evaluation");
  auto r = std::make_shared<FunctionRelation>(x, [ok](const Cell& u, const Cell& v) -> std::optional<Cell> {
    if (u.dim != v.dim || !terms_parallel(u.term, v.term) || !ok(u.term, v.term)) return std::nullopt;
    if (term_equal(u.term, v.term)) return TermView::wrap(make_idn(u.term));
    return TermView::wrap(make_bridge(u.term, v.term));
  });
  auto id = std::make_shared<IdentityMap>();
  return Span{name, x, x, a, id, id, kappa, r, bound};
}

Span penon_over(const OmegaGraph& y, std::shared_ptr<const FiniteMagma> a, const GraphMorphism& f, int bound) {
  Report strict = validate_strict(*a);
  if (!strict.ok()) throw Error("target is not strict: " + strict.violations.front().detail);
  Report fr = validate_graph_morphism(y, a->graph, f);
  if (!fr.ok()) throw Error("morphism is not boundary-compatible: " + fr.violations.front().detail);
  auto view = std::make_shared<FiniteView>(a, "target");
  auto gen = [f](const Term& t) { return Cell{t->dim, f.map[t->dim][t->cell], nullptr}; };
  return penon_over_view(y, view, gen, bound);
}

namespace {

struct ScheduleParser {
  const std::string& s;
  size_t p = 0;
  void ws() {
    while (p < s.size() && std::isspace(static_cast<unsigned char>(s[p]))) ++p;
  }
  void expect(char c) {
    ws();
    if (p >= s.size() || s[p] != c) throw Error(std::string("schedule: expected '") + c + "' in " + s);
    ++p;
  }
  int number() {
    ws();
    size_t q = p;
    while (p < s.size() && std::isdigit(static_cast<unsigned char>(s[p]))) ++p;
    if (q == p) throw Error("schedule: expected a number in " + s);
    return std::stoi(s.substr(q, p - q));
  }
  std::shared_ptr<const Schedule> parse() {
    ws();
    auto node = std::make_shared<Schedule>();
    if (p < s.size() && s[p] == '#') {
      ++p;
      node->leaf = number();
      return node;
    }
    expect('c');
    expect('(');
    node->axis = number();
    expect(',');
    node->left = parse();
    expect(',');
    node->right = parse();
    expect(')');
    return node;
  }
};

}  // namespace

std::shared_ptr<const Schedule> parse_schedule(const std::string& text) {
  ScheduleParser p{text};
  auto r = p.parse();
  p.ws();
  if (p.p != text.size()) throw Error("schedule: trailing input in " + text);
  return r;
}

Cell run_schedule(const MagmaView& v, const std::vector<Cell>& leaves, const Schedule& s) {
  if (s.leaf >= 0) {
    if (s.leaf >= static_cast<int>(leaves.size())) throw Error("schedule leaf out of range");
    return leaves[s.leaf];
  }
  Cell a = run_schedule(v, leaves, *s.left), b = run_schedule(v, leaves, *s.right);
  auto c = v.comp(s.axis, a, b);
  if (!c) throw Error("schedule composite undefined: " + v.show(a) + " ⊙" + std::to_string(s.axis) + " " + v.show(b));
  return *c;
}

ScholiumResult scholium(const Span& s, const std::vector<Cell>& leaves, const Schedule& lhs, const Schedule& rhs) {
  ScholiumResult r;
  r.lhs = run_schedule(*s.x1, leaves, lhs);
  r.rhs = run_schedule(*s.x1, leaves, rhs);
  std::vector<Cell> lifted;
  for (const auto& c : leaves) lifted.push_back(s.rho->apply(c));
  r.lift_lhs = run_schedule(*s.x2, lifted, lhs);
  r.lift_rhs = run_schedule(*s.x2, lifted, rhs);
  if (!s.x3->same(s.kappa->apply(r.lift_lhs), s.kappa->apply(r.lift_rhs)))
    throw Error("κ does not identify " + s.x2->show(r.lift_lhs) + " and " + s.x2->show(r.lift_rhs));
  auto b = s.r->bridge(r.lift_lhs, r.lift_rhs);
  if (!b) throw Error("no bridge from " + s.x2->show(r.lift_lhs) + " to " + s.x2->show(r.lift_rhs));
  r.bridge = *b;
  r.image = s.lambda->apply(*b);
  return r;
}

}  // namespace womega
