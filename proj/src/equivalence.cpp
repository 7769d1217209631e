#include "womega/equivalence.hpp"

#include <numeric>
#include <set>
#include <sstream>

namespace womega {

namespace {

constexpr int kListed = 20;

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

void check_globular(const MagmaView& src, const CellMap& f, const MagmaView& tgt, int bound, const std::string& kind,
                    Sink& sink) {
  for (int d = 0; d <= src.top(); ++d)
    for (const auto& c : src.cells(d, bound)) {
      Cell fc = f.apply(c);
      if (fc.dim != d) {
        sink.add(kind, src.show(c) + " changes dimension");
        continue;
      }
      if (d >= 1 && (!tgt.same(f.apply(src.dom(c)), tgt.dom(fc)) || !tgt.same(f.apply(src.cod(c)), tgt.cod(fc))))
        sink.add(kind, "boundary of " + src.show(c) + " not preserved");
    }
}

int span_bound(const PseudoFunctorData& f) { return std::max(f.src->check_bound(), f.tgt->check_bound()); }

}  // namespace

Report validate_pseudo_functor(const PseudoFunctorData& f) {
  const Span& x = *f.src;
  const Span& y = *f.tgt;
  int bound = span_bound(f);
  Report rep;
  if (x.bound || y.bound) rep.bound = bound;
  rep.absorb(validate_graph_map(*x.x3, *f.f3, *y.x3, bound), "condition-1");
  Sink sink(rep);
  check_globular(*x.x1, *f.f1, *y.x1, bound, "globular-f1", sink);
  check_globular(*x.x2, *f.f2, *y.x2, bound, "globular-f2", sink);
  for (int d = 0; d <= x.x2->top(); ++d)
    for (const auto& a : x.x2->cells(d, bound)) {
      Cell fa = f.f2->apply(a);
      if (!y.x1->same(y.lambda->apply(fa), f.f1->apply(x.lambda->apply(a))))
        sink.add("condition-2", "λ square fails at " + x.x2->show(a));
      if (!y.x3->same(y.kappa->apply(fa), f.f3->apply(x.kappa->apply(a))))
        sink.add("condition-2", "κ square fails at " + x.x2->show(a));
    }
  for (int j = 1; j <= x.x2->top(); ++j)
    for (const auto& [i, a, b, c] : composites(*x.x2, j, bound)) {
      if (i != j - 1) continue;
      auto fab = y.x2->comp(i, f.f2->apply(a), f.f2->apply(b));
      if (!fab) {
        sink.add("condition-3", "images of " + x.x2->show(a) + " and " + x.x2->show(b) + " do not compose");
        continue;
      }
      if (!y.x3->same(y.kappa->apply(*fab), y.kappa->apply(f.f2->apply(c))))
        sink.add("condition-3", "κ separates F(" + x.x2->show(a) + ") ⊙ F(" + x.x2->show(b) + ") from F of the composite");
    }
  return rep;
}

PseudoFunctorData identity_pseudo(std::shared_ptr<const Span> s) {
  auto id = std::make_shared<IdentityMap>();
  return PseudoFunctorData{"id", s, s, id, id, id};
}

PseudoFunctorData as_pseudo(const OmegaFunctorData& f, const std::string& name) {
  return PseudoFunctorData{name, f.src, f.tgt, f.f1, f.f2, f.f3};
}

PseudoFunctorData compose_pseudo(const PseudoFunctorData& g, const PseudoFunctorData& f) {
  // Hom spans are rebuilt on demand, so spans with equal names are the same.
  if (f.tgt != g.src && f.tgt->name != g.src->name)
    throw Error("compose: target " + f.tgt->name + " of " + f.name + " is not the source " + g.src->name + " of " + g.name);
  return PseudoFunctorData{g.name + "∘" + f.name, f.src, g.tgt, compose_maps(f.f1, g.f1), compose_maps(f.f2, g.f2),
                           compose_maps(f.f3, g.f3)};
}

PseudoFunctorData theta(std::shared_ptr<const Span> s, const Cell& h, const Cell& a, Side side) {
  const MagmaView& x1 = *s->x1;
  int i = h.dim;
  if (i < 1) throw Error("theta: h must have dimension at least 1");
  Cell b = x1.boundary(h, true, i - 1), c = x1.boundary(h, false, i - 1);
  const Cell& match = side == Side::Right ? b : c;
  if (a.dim != i - 1 || !x1.parallel(a, match))
    throw Error("theta: " + x1.show(a) + " is not parallel to the boundary " + x1.show(match) + " of " + x1.show(h));
  HomSpan src = side == Side::Right ? hom_span(*s, a, b) : hom_span(*s, c, a);
  HomSpan tgt = side == Side::Right ? hom_span(*s, a, c) : hom_span(*s, b, a);
  Cell h2 = s->rho->apply(h);
  Cell h3 = s->kappa->apply(h2);
  std::array<ViewPtr, 3> legs{s->x1, s->x2, s->x3};
  std::array<Cell, 3> hs{h, h2, h3};
  std::array<MapPtr, 3> comps;
  for (int k = 0; k < 3; ++k) {
    ViewPtr v = legs[k];
    Cell hk = hs[k];
    auto to = src.to_base[k];
    auto from = tgt.from_base[k];
    bool partial = k == 2;
    comps[k] = std::make_shared<FunctionMap>(
        [v, hk, to, from, i, side, partial](const Cell& f) {
          Cell base = to(f);
          Cell tower = v->id_tower(hk, base.dim);
          auto r = side == Side::Right ? v->comp(i - 1, base, tower) : v->comp(i - 1, tower, base);
          if (!r) {
            // X(a,b)_3 holds every cell of X3; cells off the whiskering boundary stay put.
            if (partial) return from(base);
            throw Error("theta: whiskering undefined at " + v->show(base));
          }
          return from(*r);
        },
        "theta");
  }
  std::string nm = std::string("theta") + (side == Side::Right ? "" : "-left") + "(" + x1.show(h) + ")";
  return PseudoFunctorData{nm, std::make_shared<Span>(src.span), std::make_shared<Span>(tgt.span), comps[0],
                           comps[1], comps[2]};
}

// ------------------------------------------------------ homomorphism data

CoherenceData homomorphism_coherence(const PseudoFunctorData& f) {
  const Span& x = *f.src;
  const Span& y = *f.tgt;
  CoherenceData out;
  const FiniteMagma* mx = x.x1->tables();
  const FiniteMagma* my = y.x1->tables();
  if (!mx || !my) throw Error("homomorphism_coherence: X1 and Y1 must be finite");
  Report valid = validate_pseudo_functor(f);
  if (!valid.ok()) {
    out.failure = f.name + " is not a pseudo-functor: " + valid.violations.front().kind + ": " +
                  valid.violations.front().detail;
    return out;
  }
  BicategoryExtraction bx = extract_bicategory(x), by = extract_bicategory(y);
  if (bx.log.failure) {
    out.failure = "source is not a bicategory: " + *bx.log.failure;
    return out;
  }
  if (by.log.failure) {
    out.failure = "target is not a bicategory: " + *by.log.failure;
    return out;
  }
  const FiniteMagma& X = bx.bicategory.cells;
  const FiniteMagma& Y = by.bicategory.cells;
  auto F = [&](int d, int k) { return f.f1->apply(Cell{d, k, nullptr}).index; };
  auto bridge_image = [&](const Cell& u, const Cell& v, const std::string& tag) -> int {
    auto c = y.r->bridge(u, v);
    if (!c) {
      out.failure = tag + ": no bridge from " + y.x2->show(u) + " to " + y.x2->show(v);
      return -1;
    }
    out.log.push_back(tag + ": bridge " + y.x2->show(*c) + ", φ = " + y.x1->show(y.lambda->apply(*c)));
    return y.lambda->apply(*c).index;
  };
  int n0 = X.count(0), n1 = X.count(1), n2 = X.count(2);
  for (int a = 0; a < n1 && !out.failure; ++a)
    for (int b = 0; b < n1 && !out.failure; ++b) {
      if (!X.composable(0, 1, a, b)) continue;
      std::string tag = "φ(" + X.name(1, a) + ", " + X.name(1, b) + ")";
      Cell pa = x.rho->apply(Cell{1, a, nullptr}), pb = x.rho->apply(Cell{1, b, nullptr});
      auto u = y.x2->comp(0, f.f2->apply(pa), f.f2->apply(pb));
      if (!u) {
        out.failure = tag + ": F2ρ images do not compose";
        break;
      }
      Cell v = f.f2->apply(x.rho->apply(Cell{1, X.comp(0, 1, a, b), nullptr}));
      if (!y.x3->same(y.kappa->apply(*u), y.kappa->apply(v))) {
        // κ need not identify ρ(f⊙g) with ρf⊙ρg; F2(ρf⊙ρg) has the same λ-image
        // and is equalized with u by the pseudo-functor condition.
        auto w = x.x2->comp(0, pa, pb);
        if (!w) {
          out.failure = tag + ": ρ images do not compose";
          break;
        }
        v = f.f2->apply(*w);
        out.log.push_back(tag + ": F2ρ(f⊙g) not κ-equalized with F2ρf ⊙ F2ρg; using F2(ρf⊙ρg)");
      }
      int phi = bridge_image(*u, v, tag);
      if (phi >= 0) out.comp[{a, b}] = phi;
    }
  for (int a = 0; a < n0 && !out.failure; ++a) {
    std::string tag = "φ(" + X.name(0, a) + ")";
    Cell pa = x.rho->apply(Cell{0, a, nullptr});
    Cell u = f.f2->apply(x.x2->id(pa));
    Cell v = y.x2->id(f.f2->apply(pa));
    int phi = bridge_image(u, v, tag);
    if (phi >= 0) out.unit[a] = phi;
  }
  if (out.failure) return out;

  const BicategoryData& BX = bx.bicategory;
  const BicategoryData& BY = by.bicategory;
  auto H = [&](int p, int q) { return p < 0 || q < 0 ? -1 : Y.comp(0, 2, p, q); };
  auto V = [&](int p, int q) { return p < 0 || q < 0 ? -1 : Y.comp(1, 2, p, q); };
  auto id2 = [&](int g) { return Y.id(1, g); };
  auto phi = [&](int p, int q) { return out.comp.at({p, q}); };
  auto ay = [&](int p, int q, int r) {
    auto it = BY.assoc.find({p, q, r});
    return it == BY.assoc.end() ? -1 : it->second;
  };
  Sink ax(out.axioms);
  for (int p = 0; p < n2; ++p)
    for (int q = 0; q < n2; ++q) {
      int fa = X.dom(2, p), fb = X.dom(2, q);
      if (!X.composable(0, 1, fa, fb)) continue;
      int fa2 = X.cod(2, p), fb2 = X.cod(2, q);
      if (V(H(F(2, p), F(2, q)), phi(fa2, fb2)) != V(phi(fa, fb), F(2, X.comp(0, 2, p, q))))
        ax.add("naturality", "φ at (" + X.name(2, p) + ", " + X.name(2, q) + ")");
    }
  for (int a = 0; a < n1; ++a)
    for (int b = 0; b < n1; ++b) {
      if (!X.composable(0, 1, a, b)) continue;
      for (int c = 0; c < n1; ++c) {
        if (!X.composable(0, 1, b, c)) continue;
        int bc = X.comp(0, 1, b, c), ab = X.comp(0, 1, a, b);
        int lhs = V(V(H(id2(F(1, a)), phi(b, c)), phi(a, bc)), F(2, BX.assoc.at({a, b, c})));
        int rhs = V(V(ay(F(1, a), F(1, b), F(1, c)), H(phi(a, b), id2(F(1, c)))), phi(ab, c));
        if (lhs < 0 || lhs != rhs)
          ax.add("associativity", "at (" + X.name(1, a) + ", " + X.name(1, b) + ", " + X.name(1, c) + ")");
      }
    }
  for (int a = 0; a < n1; ++a) {
    int s = X.dom(1, a), t = X.cod(1, a);
    int is = X.id(0, s), it = X.id(0, t);
    int lhs = V(phi(is, a), F(2, BX.lunit[a]));
    int rhs = V(H(out.unit.at(s), id2(F(1, a))), BY.lunit[F(1, a)]);
    if (lhs < 0 || lhs != rhs) ax.add("unit", "left at " + X.name(1, a));
    lhs = V(phi(a, it), F(2, BX.runit[a]));
    rhs = V(H(id2(F(1, a)), out.unit.at(t)), BY.runit[F(1, a)]);
    if (lhs < 0 || lhs != rhs) ax.add("unit", "right at " + X.name(1, a));
  }
  Sink pr(out.proper);
  for (const auto& [fg, p] : out.comp) {
    auto [a, b] = fg;
    int ab = X.comp(0, 1, a, b);
    if (Y.comp(0, 1, F(1, a), F(1, b)) == F(1, ab) && p != id2(F(1, ab)))
      pr.add("condition-1", "φ(" + X.name(1, a) + ", " + X.name(1, b) + ") is not an identity");
    for (const auto& [fg2, p2] : out.comp) {
      auto [a2, b2] = fg2;
      if (X.comp(0, 1, a2, b2) == ab && Y.comp(0, 1, F(1, a2), F(1, b2)) == Y.comp(0, 1, F(1, a), F(1, b)) && p != p2)
        pr.add("condition-3", "φ(" + X.name(1, a) + ", " + X.name(1, b) + ") differs from φ(" + X.name(1, a2) + ", " +
                                  X.name(1, b2) + ")");
    }
  }
  for (const auto& [a, p] : out.unit) {
    if (Y.id(0, F(0, a)) == F(1, X.id(0, a)) && p != id2(F(1, X.id(0, a))))
      pr.add("condition-2", "φ(" + X.name(0, a) + ") is not an identity");
    for (const auto& [b, p2] : out.unit)
      if (F(0, a) == F(0, b) && F(1, X.id(0, a)) == F(1, X.id(0, b)) && p != p2)
        pr.add("condition-4", "φ(" + X.name(0, a) + ") differs from φ(" + X.name(0, b) + ")");
  }
  return out;
}

// ------------------------------------------------------ internal equivalences

namespace {

// Cells of one dimension tagged with a type (i, j) in {0,1}^2 encoded 2i+j.
using Typed = std::set<std::pair<int, int>>;

Typed closure(const FiniteMagma& m, int level, Typed s) {
  bool grew = true;
  while (grew) {
    grew = false;
    std::vector<std::pair<int, int>> items(s.begin(), s.end());
    for (const auto& [t1, p] : items)
      for (const auto& [t2, q] : items)
        for (int i = 0; i < level; ++i) {
          int t;
          if (i == 0) {
            if ((t1 & 1) != (t2 >> 1)) continue;
            t = (t1 & 2) | (t2 & 1);
          } else {
            if (t1 != t2) continue;
            t = t1;
          }
          int c = m.comp(i, level, p, q);
          if (c >= 0 && s.insert({t, c}).second) grew = true;
        }
  }
  return s;
}

struct CliqueSearch {
  const FiniteMagma& m;
  long budget;
  bool exhausted = false;

  // Is the typed set at `level` extendable to a witness up to the top?
  bool extend(int level, const Typed& cells) {
    std::vector<std::array<int, 3>> pairs;  // type, p, q
    for (const auto& [t, p] : cells)
      for (const auto& [t2, q] : cells) {
        if (t != t2 || p == q) continue;
        if (level >= 2 && (m.dom(level, p) != m.dom(level, q) || m.cod(level, p) != m.cod(level, q))) continue;
        pairs.push_back({t, p, q});
      }
    if (pairs.empty()) return true;
    if (level + 1 > m.top()) return false;
    std::vector<std::vector<int>> cand(pairs.size());
    for (size_t k = 0; k < pairs.size(); ++k) {
      for (int c = 0; c < m.count(level + 1); ++c)
        if (m.dom(level + 1, c) == pairs[k][1] && m.cod(level + 1, c) == pairs[k][2]) cand[k].push_back(c);
      if (cand[k].empty()) return false;
    }
    Typed base;
    for (const auto& [t, p] : cells) base.insert({t, m.id(level, p)});
    std::vector<int> pick(pairs.size(), 0);
    for (;;) {
      if (--budget < 0) {
        exhausted = true;
        return false;
      }
      Typed next = base;
      for (size_t k = 0; k < pairs.size(); ++k) next.insert({pairs[k][0], cand[k][pick[k]]});
      if (extend(level + 1, closure(m, level + 1, next))) return true;
      if (exhausted) return false;
      size_t k = 0;
      while (k < pick.size() && ++pick[k] == static_cast<int>(cand[k].size())) pick[k++] = 0;
      if (k == pick.size()) return false;
    }
  }
};

}  // namespace

int clique_witness(const FiniteMagma& m, int f, long budget, bool* exhausted) {
  if (m.top() < 1) return -1;
  int x = m.dom(1, f), y = m.cod(1, f);
  CliqueSearch search{m, budget};
  for (int g = 0; g < m.count(1); ++g) {
    if (m.dom(1, g) != y || m.cod(1, g) != x) continue;
    Typed start{{1, f}, {2, g}, {0, m.id(0, x)}, {3, m.id(0, y)}};
    if (search.extend(1, closure(m, 1, start))) return g;
    if (search.exhausted) break;
  }
  if (exhausted) *exhausted = *exhausted || search.exhausted;
  return -1;
}

bool EquivTable::in_eq(int d, int k) const {
  if (d < 1) return false;
  if (d > magma->top()) return true;  // formal identities
  return eq[d][k].has_value();
}

bool EquivTable::is_elementary(int d, int k) const {
  if (d > magma->top()) return true;
  return d >= 1 && elementary[d][k];
}

bool EquivTable::is_contraction(int d, int k) const {
  if (!in_eq(d, k) || d < 2) return false;
  return magma->is_identity(d - 1, magma->dom(d, k)) || magma->is_identity(d - 1, magma->cod(d, k));
}

std::vector<int> EquivTable::members(int d) const {
  std::vector<int> out;
  for (int k = 0; k < magma->count(d); ++k)
    if (in_eq(d, k)) out.push_back(k);
  return out;
}

std::string EquivTable::describe(int d, int k) const {
  const FiniteMagma& m = *magma;
  if (!in_eq(d, k)) return m.name(d, k) + ": not an internal equivalence";
  if (d > m.top()) return m.name(d, k) + ": identity";
  const EqWitness& w = *eq[d][k];
  std::ostringstream os;
  os << m.name(d, k) << ": S" << w.stratum << " ";
  switch (w.reason) {
    case EqReason::Identity: os << "identity"; break;
    case EqReason::Elementary: os << "elementary, clique partner " << m.name(d, clique_partner[d][k]); break;
    case EqReason::Composite:
      os << "composite " << m.name(d, w.a) << " ⊙" << w.axis << " " << m.name(d, w.b);
      break;
    case EqReason::QuasiInverse:
      os << "quasi-inverse " << m.name(d, w.a) << ", h = " << (w.h < 0 ? "identity" : m.name(d + 1, w.h))
         << ", h' = " << (w.h2 < 0 ? "identity" : m.name(d + 1, w.h2));
      break;
  }
  return os.str();
}

EquivTable compute_eq(std::shared_ptr<const FiniteMagma> mp, int max_rounds) {
  const FiniteMagma& m = *mp;
  int top = m.top();
  EquivTable t;
  t.magma = mp;
  t.eq.assign(top + 1, {});
  t.elementary.assign(top + 1, {});
  t.clique_partner.assign(top + 1, {});
  const long budget = 200000;
  for (int d = 1; d <= top; ++d) {
    t.eq[d].assign(m.count(d), std::nullopt);
    t.elementary[d].assign(m.count(d), false);
    t.clique_partner[d].assign(m.count(d), -1);
    std::map<std::pair<int, int>, FiniteHom> homs;
    for (int k = 0; k < m.count(d); ++k) {
      if (m.is_identity(d, k)) {
        t.eq[d][k] = EqWitness{0, EqReason::Identity};
        t.elementary[d][k] = true;
        continue;
      }
      int g = -1;
      if (d == 1) {
        g = clique_witness(m, k, budget, &t.search_exhausted);
      } else {
        int a = m.boundary(d, k, true, d - 2), b = m.boundary(d, k, false, d - 2);
        auto it = homs.find({a, b});
        if (it == homs.end()) {
          auto keep = [&m, a, b, d](int bd, int c) {
            return m.boundary(bd, c, true, d - 2) == a && m.boundary(bd, c, false, d - 2) == b;
          };
          it = homs.emplace(std::pair{a, b}, hom_magma(m, d - 1, keep)).first;
        }
        const FiniteHom& h = it->second;
        int hg = clique_witness(*h.magma, h.hom_index(d, k), budget, &t.search_exhausted);
        if (hg >= 0) g = h.to_base[1][hg];
      }
      if (g >= 0) {
        t.elementary[d][k] = true;
        t.clique_partner[d][k] = g;
        t.eq[d][k] = EqWitness{0, EqReason::Elementary};
      }
    }
  }
  auto member = [&](int d, int k) { return t.in_eq(d, k); };
  auto close = [&](int stratum) {
    bool grew = true;
    while (grew) {
      grew = false;
      for (int j = 1; j <= top; ++j) {
        auto ms = t.members(j);
        for (int i = 0; i < j; ++i)
          for (int a : ms)
            for (int b : ms) {
              int c = m.comp(i, j, a, b);
              if (c < 0 || member(j, c)) continue;
              EqWitness w{stratum, EqReason::Composite, i, a, b};
              t.eq[j][c] = w;
              grew = true;
            }
      }
    }
  };
  close(1);
  for (int round = 1; round <= max_rounds; ++round) {
    t.rounds = round;
    std::vector<std::pair<std::pair<int, int>, EqWitness>> admitted;
    for (int j = 1; j <= top; ++j)
      for (int f = 0; f < m.count(j); ++f) {
        if (member(j, f)) continue;
        int sf = m.dom(j, f), tf = m.cod(j, f);
        for (int g = 0; g < m.count(j); ++g) {
          if (m.dom(j, g) != tf || m.cod(j, g) != sf) continue;
          int fg = m.comp(j - 1, j, f, g), gf = m.comp(j - 1, j, g, f);
          if (fg < 0 || gf < 0) continue;
          // witnesses h: f⊙g => id(dom f), h': g⊙f => id(cod f) in S
          auto find_h = [&](int from, int to) -> std::optional<int> {
            if (j == top) {
              if (from == to) return -1;
              return std::nullopt;
            }
            for (int h = 0; h < m.count(j + 1); ++h)
              if (m.dom(j + 1, h) == from && m.cod(j + 1, h) == to && member(j + 1, h)) return h;
            return std::nullopt;
          };
          auto h = find_h(fg, m.id(j - 1, sf));
          if (!h) continue;
          auto h2 = find_h(gf, m.id(j - 1, tf));
          if (!h2) continue;
          EqWitness w{round + 1, EqReason::QuasiInverse, -1, g, -1, *h, *h2};
          admitted.push_back({{j, f}, w});
          break;
        }
      }
    if (admitted.empty()) {
      t.fixpoint = true;
      break;
    }
    for (const auto& [cell, w] : admitted) t.eq[cell.first][cell.second] = w;
    close(round + 1);
  }
  return t;
}

// ------------------------------------------------------------------- Π

PiResult pi(const EquivTable& t) {
  const FiniteMagma& m = *t.magma;
  int n0 = m.count(0);
  std::vector<int> parent(n0);
  std::iota(parent.begin(), parent.end(), 0);
  std::function<int(int)> find = [&](int x) { return parent[x] == x ? x : parent[x] = find(parent[x]); };
  PiResult r;
  if (m.top() >= 1)
    for (int f : t.members(1)) {
      parent[find(m.dom(1, f))] = find(m.cod(1, f));
      bool back = false;
      for (int g : t.members(1)) back = back || (m.dom(1, g) == m.cod(1, f) && m.cod(1, g) == m.dom(1, f));
      r.equivalence_relation = r.equivalence_relation && back;
    }
  std::map<int, int> label;
  r.class_of.resize(n0);
  for (int x = 0; x < n0; ++x) {
    int root = find(x);
    if (!label.count(root)) {
      label[root] = static_cast<int>(r.classes.size());
      r.classes.push_back({});
    }
    r.class_of[x] = label[root];
    r.classes[label[root]].push_back(x);
  }
  return r;
}

PiResult pi(const Span& s) {
  const FiniteMagma* m = s.x1->tables();
  if (!m) throw Error("pi: X1 must be finite");
  return pi(compute_eq(std::make_shared<FiniteMagma>(*m)));
}

TameResult is_tame(const PseudoFunctorData& f) {
  const FiniteMagma* mx = f.src->x1->tables();
  const FiniteMagma* my = f.tgt->x1->tables();
  if (!mx || !my) throw Error("is_tame: X1 and Y1 must be finite");
  EquivTable ex = compute_eq(std::make_shared<FiniteMagma>(*mx));
  EquivTable ey = compute_eq(std::make_shared<FiniteMagma>(*my));
  TameResult r{true, true, {}};
  for (int d = 1; d <= mx->top(); ++d)
    for (int k = 0; k < mx->count(d); ++k) {
      if (!ex.in_eq(d, k)) continue;
      Cell img = f.f1->apply(Cell{d, k, nullptr});
      if (ey.in_eq(d, img.index)) continue;
      std::string line = mx->name(d, k) + " ↦ " + my->name(d, img.index) + " leaves Eq";
      r.tame = false;
      if (ex.is_elementary(d, k) || ex.is_contraction(d, k)) {
        r.criterion = false;
        line += " (elementary or contraction)";
      }
      r.evidence.push_back(line);
    }
  if (r.evidence.empty()) r.evidence.push_back("F1 maps Eq(X1) into Eq(Y1)");
  return r;
}

PseudoFunctorData restrict_functor(const PseudoFunctorData& f, const Cell& a, const Cell& b) {
  const MagmaView& x1 = *f.src->x1;
  if (a.dim != b.dim || !x1.parallel(a, b)) throw Error("restrict: " + x1.show(a) + " and " + x1.show(b) + " are not parallel");
  Cell fa = f.f1->apply(a), fb = f.f1->apply(b);
  HomSpan hs = hom_span(*f.src, a, b);
  HomSpan ht = hom_span(*f.tgt, fa, fb);
  std::array<MapPtr, 3> base{f.f1, f.f2, f.f3};
  std::array<MapPtr, 3> comps;
  for (int k = 0; k < 3; ++k) {
    auto to = hs.to_base[k];
    auto from = ht.from_base[k];
    MapPtr g = base[k];
    comps[k] = std::make_shared<FunctionMap>([to, from, g](const Cell& c) { return from(g->apply(to(c))); },
                                             g->label());
  }
  std::string nm = f.name + "(" + x1.show(a) + "," + x1.show(b) + ")";
  return PseudoFunctorData{nm, std::make_shared<Span>(hs.span), std::make_shared<Span>(ht.span), comps[0], comps[1],
                           comps[2]};
}

namespace {

// Π F and Π F(a,b) bijective at every level.
bool pi_tower(const PseudoFunctorData& f, const std::string& label, std::vector<std::string>& evidence) {
  const FiniteMagma* mx = f.src->x1->tables();
  const FiniteMagma* my = f.tgt->x1->tables();
  if (!mx || !my) throw Error("equivalence checks need finite X1 and Y1");
  PiResult px = pi(*f.src), py = pi(*f.tgt);
  std::vector<int> img(px.classes.size(), -1);
  bool ok = true;
  for (size_t c = 0; c < px.classes.size(); ++c) {
    int x = px.classes[c].front();
    img[c] = py.class_of[f.f1->apply(Cell{0, x, nullptr}).index];
  }
  std::set<int> hit(img.begin(), img.end());
  ok = hit.size() == img.size() && hit.size() == py.classes.size();
  std::ostringstream os;
  os << label << ": Π " << px.classes.size() << " -> " << py.classes.size() << " classes, map";
  for (size_t c = 0; c < img.size(); ++c) os << " [" << mx->name(0, px.classes[c].front()) << "]→" << img[c];
  os << (ok ? " bijective" : " not bijective");
  evidence.push_back(os.str());
  if (!ok || mx->top() < 1) return ok;
  for (int a = 0; a < mx->count(0); ++a)
    for (int b = 0; b < mx->count(0); ++b) {
      PseudoFunctorData r = restrict_functor(f, Cell{0, a, nullptr}, Cell{0, b, nullptr});
      if (!pi_tower(r, label + "(" + mx->name(0, a) + "," + mx->name(0, b) + ")", evidence)) return false;
    }
  return true;
}

}  // namespace

EquivalenceVerdict is_weak_equivalence(const PseudoFunctorData& f) {
  TameResult t = is_tame(f);
  if (!t.tame) throw Error("is_weak_equivalence: " + f.name + " is not tame: " + t.evidence.front());
  EquivalenceVerdict v;
  v.holds = pi_tower(f, f.name, v.evidence);
  return v;
}

EquivalenceVerdict is_omega_equivalence(const PseudoFunctorData& f, const PseudoFunctorData& g) {
  PseudoFunctorData gf = compose_pseudo(g, f);
  PseudoFunctorData fg = compose_pseudo(f, g);
  for (const auto* p : {&f, &g}) {
    TameResult t = is_tame(*p);
    if (!t.tame) throw Error("is_omega_equivalence: " + p->name + " is not tame: " + t.evidence.front());
  }
  EquivalenceVerdict v;
  bool a = pi_tower(gf, gf.name, v.evidence);
  bool b = a && pi_tower(fg, fg.name, v.evidence);
  v.holds = a && b;
  return v;
}

}  // namespace womega
