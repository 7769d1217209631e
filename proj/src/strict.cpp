#include "womega/strict.hpp"

#include <algorithm>
#include <deque>
#include <map>

namespace womega {

namespace {

constexpr char kSep = '\x1f';

void put_chain(std::string& out, const std::vector<std::string>& chain) {
  for (const auto& g : chain) {
    out += g;
    out += ',';
  }
}

void put_path(std::string& out, const NfPath& p) {
  out += p.src;
  out += '>';
  out += p.tgt;
  out += ':';
  put_chain(out, p.gens);
}

NfPath empty_path(const std::string& obj) { return NfPath{obj, obj, {}}; }

NfPath concat(const NfPath& a, const NfPath& b) {
  NfPath r{a.src, b.tgt, a.gens};
  r.gens.insert(r.gens.end(), b.gens.begin(), b.gens.end());
  return r;
}

std::vector<std::string> join(const std::vector<std::string>& a, const std::vector<std::string>& b) {
  std::vector<std::string> r = a;
  r.insert(r.end(), b.begin(), b.end());
  return r;
}

void sort_diagram(NfDiagram& d) {
  auto by_in = [](const NfStrand& x, const NfStrand& y) { return x.in < y.in; };
  auto by_out = [](const NfStrand& x, const NfStrand& y) { return x.out < y.out; };
  std::sort(d.through.begin(), d.through.end(), by_in);
  std::sort(d.bottom.begin(), d.bottom.end(), by_in);
  std::sort(d.top.begin(), d.top.end(), by_out);
  for (auto& gap : d.closed) std::sort(gap.begin(), gap.end());
}

NfDiagram identity_diagram(const NfPath& p) {
  NfDiagram d;
  d.s = d.t = p;
  for (int k = 0; k < static_cast<int>(p.gens.size()); ++k) d.through.push_back({k, k, {}});
  d.closed.assign(p.gens.size() + 1, {});
  return d;
}

NfDiagram horizontal(const NfDiagram& a, const NfDiagram& b) {
  NfDiagram r;
  r.s = concat(a.s, b.s);
  r.t = concat(a.t, b.t);
  int si = static_cast<int>(a.s.gens.size()), ti = static_cast<int>(a.t.gens.size());
  r.through = a.through;
  for (auto st : b.through) r.through.push_back({st.in + si, st.out + ti, st.chain});
  r.bottom = a.bottom;
  for (auto st : b.bottom) r.bottom.push_back({st.in + si, -1, st.chain});
  r.top = a.top;
  for (auto st : b.top) r.top.push_back({-1, st.out + ti, st.chain});
  r.closed.assign(a.closed.begin(), a.closed.end() - 1);
  auto merged = a.closed.back();
  merged.insert(merged.end(), b.closed.front().begin(), b.closed.front().end());
  r.closed.push_back(merged);
  r.closed.insert(r.closed.end(), b.closed.begin() + 1, b.closed.end());
  sort_diagram(r);
  return r;
}

NfDiagram vertical(const NfDiagram& a, const NfDiagram& b) {
  int m = static_cast<int>(a.t.gens.size());
  // what meets the middle boundary from below (A) and from above (B)
  std::vector<int> a_through(m, -1), a_top(m, -1), b_through(m, -1), b_bottom(m, -1);
  for (std::size_t k = 0; k < a.through.size(); ++k) a_through[a.through[k].out] = static_cast<int>(k);
  for (std::size_t k = 0; k < a.top.size(); ++k) a_top[a.top[k].out] = static_cast<int>(k);
  for (std::size_t k = 0; k < b.through.size(); ++k) b_through[b.through[k].in] = static_cast<int>(k);
  for (std::size_t k = 0; k < b.bottom.size(); ++k) b_bottom[b.bottom[k].in] = static_cast<int>(k);

  NfDiagram r;
  r.s = a.s;
  r.t = b.t;
  std::vector<int> via_a, via_b, via_mid;  // for each result through strand
  for (std::size_t ka = 0; ka < a.through.size(); ++ka) {
    const auto& st = a.through[ka];
    int j = st.out;
    if (b_through[j] >= 0) {
      const auto& up = b.through[b_through[j]];
      r.through.push_back({st.in, up.out, join(st.chain, up.chain)});
      via_a.push_back(static_cast<int>(ka));
      via_b.push_back(b_through[j]);
      via_mid.push_back(j);
    } else {
      r.bottom.push_back({st.in, -1, join(st.chain, b.bottom[b_bottom[j]].chain)});
    }
  }
  r.bottom.insert(r.bottom.end(), a.bottom.begin(), a.bottom.end());
  r.top = b.top;
  r.closed.assign(r.through.size() + 1, {});
  auto count_below = [](const std::vector<int>& v, int x) {
    return static_cast<int>(std::count_if(v.begin(), v.end(), [x](int y) { return y < x; }));
  };
  for (std::size_t ka = 0; ka < a.top.size(); ++ka) {
    const auto& st = a.top[ka];
    int j = st.out;
    if (b_through[j] >= 0) {
      const auto& up = b.through[b_through[j]];
      r.top.push_back({-1, up.out, join(st.chain, up.chain)});
    } else {
      r.closed[count_below(via_mid, j)].push_back(join(st.chain, b.bottom[b_bottom[j]].chain));
    }
  }
  for (std::size_t g = 0; g < a.closed.size(); ++g)
    for (const auto& c : a.closed[g]) r.closed[count_below(via_a, static_cast<int>(g))].push_back(c);
  for (std::size_t g = 0; g < b.closed.size(); ++g)
    for (const auto& c : b.closed[g]) r.closed[count_below(via_b, static_cast<int>(g))].push_back(c);
  sort_diagram(r);
  return r;
}

// Decodes the 1-dimensional boundary of a generating 2-cell.
NfPath one_cell_path(const Term& one) {
  if (one->kind == TermKind::Gen) return NfPath{one->dom1->name, one->cod1->name, {one->name}};
  return empty_path(one->a->name);
}

StrictNF from_generator(const Term& t) {
  StrictNF x;
  x.dim = t->dim;
  if (t->dim == 0) {
    x.obj = t->name;
  } else if (t->dim == 1) {
    x.path = NfPath{t->dom1->name, t->cod1->name, {t->name}};
  } else if (t->dim == 2) {
    NfDiagram& d = x.diagram;
    d.s = one_cell_path(t->dom1);
    d.t = one_cell_path(t->cod1);
    bool has_in = !d.s.gens.empty(), has_out = !d.t.gens.empty();
    std::vector<std::string> chain{t->name};
    if (has_in && has_out) {
      d.through.push_back({0, 0, chain});
      d.closed.assign(2, {});
    } else {
      d.closed.assign(1, {});
      if (has_in)
        d.bottom.push_back({0, -1, chain});
      else if (has_out)
        d.top.push_back({-1, 0, chain});
      else
        d.closed[0].push_back(chain);
    }
  } else {
    throw Error("normal forms support generators up to dimension 2; " + t->name + " has dimension " +
                std::to_string(t->dim));
  }
  x.seal();
  return x;
}

}  // namespace

void StrictNF::seal() {
  code_ = std::to_string(dim);
  code_ += kSep;
  if (dim == 0) {
    code_ += obj;
  } else if (dim == 1) {
    put_path(code_, path);
  } else {
    const auto& d = diagram;
    put_path(code_, d.s);
    code_ += kSep;
    put_path(code_, d.t);
    code_ += kSep;
    for (const auto& st : d.through) {
      code_ += "T" + std::to_string(st.in) + "-" + std::to_string(st.out) + ":";
      put_chain(code_, st.chain);
    }
    for (const auto& st : d.bottom) {
      code_ += "B" + std::to_string(st.in) + ":";
      put_chain(code_, st.chain);
    }
    for (const auto& st : d.top) {
      code_ += "P" + std::to_string(st.out) + ":";
      put_chain(code_, st.chain);
    }
    for (std::size_t g = 0; g < d.closed.size(); ++g) {
      code_ += "G" + std::to_string(g) + "[";
      for (const auto& c : d.closed[g]) {
        put_chain(code_, c);
        code_ += ';';
      }
      code_ += "]";
    }
  }
}

StrictNF nf_identity(const StrictNF& x) {
  StrictNF r;
  r.dim = x.dim + 1;
  if (x.dim == 0)
    r.path = empty_path(x.obj);
  else if (x.dim == 1)
    r.diagram = identity_diagram(x.path);
  else
    r.diagram = x.diagram;
  r.seal();
  return r;
}

StrictNF nf_boundary(const StrictNF& x, bool source) {
  if (x.dim == 0) throw Error("0-cells have no boundary");
  StrictNF r;
  r.dim = x.dim - 1;
  if (x.dim == 1)
    r.obj = source ? x.path.src : x.path.tgt;
  else if (x.dim == 2)
    r.path = source ? x.diagram.s : x.diagram.t;
  else
    r.diagram = x.diagram;
  r.seal();
  return r;
}

StrictNF nf_compose(int i, const StrictNF& a, const StrictNF& b) {
  if (a.dim != b.dim || i < 0 || i >= a.dim) throw Error("nf_compose: bad dimensions");
  StrictNF r;
  r.dim = a.dim;
  if (a.dim == 1) {
    r.path = concat(a.path, b.path);
  } else if (i >= 2) {
    r.diagram = a.diagram;
  } else if (i == 0) {
    r.diagram = horizontal(a.diagram, b.diagram);
  } else {
    r.diagram = vertical(a.diagram, b.diagram);
  }
  r.seal();
  return r;
}

StrictNF nf(const Term& t) {
  switch (t->kind) {
    case TermKind::Gen:
      return from_generator(t);
    case TermKind::Idn:
      return nf_identity(nf(t->a));
    case TermKind::Comp:
      return nf_compose(t->axis, nf(t->a), nf(t->b));
    case TermKind::Bridge:
      throw Error("not a strict-category term: " + to_string(t));
  }
  throw Error("malformed term");
}

bool strict_eq(const Term& a, const Term& b) {
  if (a->dim != b->dim) throw Error("strict_eq: terms of different dimensions");
  return nf(a) == nf(b);
}

namespace {

Term path_term(const OmegaGraph& g, const NfPath& p) {
  if (p.gens.empty()) return make_idn(make_gen(g, p.src));
  Term r = make_gen(g, p.gens.front());
  for (std::size_t k = 1; k < p.gens.size(); ++k) r = make_comp(0, r, make_gen(g, p.gens[k]));
  return r;
}

Term chain_term(const OmegaGraph& g, const std::vector<std::string>& chain) {
  Term r = make_gen(g, chain.front());
  for (std::size_t k = 1; k < chain.size(); ++k) r = make_comp(1, r, make_gen(g, chain[k]));
  return r;
}

}  // namespace

Term nf_to_term(const OmegaGraph& g, const StrictNF& x) {
  if (x.dim == 0) return make_gen(g, x.obj);
  if (x.dim == 1) return path_term(g, x.path);
  const NfDiagram& d = x.diagram;
  std::vector<Term> columns;
  std::size_t nb = 0, nt = 0;
  for (std::size_t gap = 0; gap <= d.through.size(); ++gap) {
    int in_limit = gap < d.through.size() ? d.through[gap].in : 1 << 30;
    int out_limit = gap < d.through.size() ? d.through[gap].out : 1 << 30;
    while (nb < d.bottom.size() && d.bottom[nb].in < in_limit) columns.push_back(chain_term(g, d.bottom[nb++].chain));
    while (nt < d.top.size() && d.top[nt].out < out_limit) columns.push_back(chain_term(g, d.top[nt++].chain));
    for (const auto& c : d.closed[gap]) columns.push_back(chain_term(g, c));
    if (gap < d.through.size()) {
      const auto& st = d.through[gap];
      columns.push_back(st.chain.empty() ? make_idn(make_gen(g, d.s.gens[st.in])) : chain_term(g, st.chain));
    }
  }
  Term r;
  if (columns.empty()) {
    r = make_idn(make_idn(make_gen(g, d.s.src)));
  } else {
    r = columns.front();
    for (std::size_t k = 1; k < columns.size(); ++k) r = make_comp(0, r, columns[k]);
  }
  return id_tower(r, x.dim);
}

Report validate_strict(const FiniteMagma& m) {
  Report rep;
  const int cap = 50;
  std::map<std::string, int> counts;
  auto fail = [&](const std::string& law, const std::string& detail) {
    if (++counts[law] <= cap) rep.add(law, detail);
  };
  auto sub = [](int i) { return "⊙_" + std::to_string(i); };
  int n = m.top();
  for (int j = 1; j <= n; ++j) {
    int cnt = m.count(j);
    for (int i = 0; i < j; ++i) {
      // associativity
      for (int a = 0; a < cnt; ++a)
        for (int b = 0; b < cnt; ++b) {
          int ab = m.comp(i, j, a, b);
          if (ab < 0) continue;
          for (int c = 0; c < cnt; ++c) {
            int bc = m.comp(i, j, b, c);
            if (bc < 0) continue;
            int l = m.comp(i, j, ab, c), r = m.comp(i, j, a, bc);
            if (l != r)
              fail("associativity", "(" + m.name(j, a) + sub(i) + m.name(j, b) + ")" + sub(i) + m.name(j, c) +
                                        " != " + m.name(j, a) + sub(i) + "(" + m.name(j, b) + sub(i) + m.name(j, c) + ")");
          }
        }
      // identity
      for (int a = 0; a < cnt; ++a) {
        int left = m.id_tower(i, m.boundary(j, a, true, i), j);
        int right = m.id_tower(i, m.boundary(j, a, false, i), j);
        if (m.comp(i, j, left, a) != a) fail("identity", "left unit fails for " + m.name(j, a) + " under " + sub(i));
        if (m.comp(i, j, a, right) != a) fail("identity", "right unit fails for " + m.name(j, a) + " under " + sub(i));
      }
      // identity interchange: id(a) ⊙_i id(b) = id(a ⊙_i b) for j-cells a, b
      if (j + 1 <= n)
        for (int a = 0; a < cnt; ++a)
          for (int b = 0; b < cnt; ++b) {
            int ab = m.comp(i, j, a, b);
            if (ab < 0) continue;
            if (m.comp(i, j + 1, m.id(j, a), m.id(j, b)) != m.id(j, ab))
              fail("identity-interchange", "id(" + m.name(j, a) + ")" + sub(i) + "id(" + m.name(j, b) + ") != id(" +
                                               m.name(j, a) + sub(i) + m.name(j, b) + ")");
          }
      // interchange for i < k < j
      for (int k = i + 1; k < j; ++k) {
        std::vector<std::array<int, 3>> kpairs;
        for (int a = 0; a < cnt; ++a)
          for (int b = 0; b < cnt; ++b) {
            int ab = m.comp(k, j, a, b);
            if (ab >= 0) kpairs.push_back({a, b, ab});
          }
        for (const auto& [a, b, ab] : kpairs)
          for (const auto& [c, d, cd] : kpairs) {
            int lhs = m.comp(i, j, ab, cd);
            if (lhs < 0) continue;
            int ac = m.comp(i, j, a, c), bd = m.comp(i, j, b, d);
            int rhs = (ac < 0 || bd < 0) ? -1 : m.comp(k, j, ac, bd);
            if (lhs != rhs)
              fail("interchange", "(" + m.name(j, a) + sub(k) + m.name(j, b) + ")" + sub(i) + "(" + m.name(j, c) + sub(k) +
                                      m.name(j, d) + ") != (" + m.name(j, a) + sub(i) + m.name(j, c) + ")" + sub(k) + "(" +
                                      m.name(j, b) + sub(i) + m.name(j, d) + ")");
          }
      }
    }
  }
  for (const auto& [law, c] : counts)
    if (c > cap) rep.notes.push_back(law + ": " + std::to_string(c - cap) + " further violations not listed");
  return rep;
}

const char* to_string(Verdict v) {
  switch (v) {
    case Verdict::False:
      return "false";
    case Verdict::True:
      return "true";
    case Verdict::Unknown:
      return "unknown";
  }
  return "?";
}

namespace {

// Rewrites at the root of t. `slack` is how many nodes the whole term may grow.
void root_rewrites(const Term& t, int slack, std::vector<RewriteStep>& out, bool& pruned) {
  auto push = [&](Term r, const char* law) {
    if (!r) return;
    if (r->size - t->size > slack) {
      pruned = true;
      return;
    }
    out.push_back({std::move(r), law});
  };
  int j = t->dim;
  if (t->kind == TermKind::Comp) {
    int i = t->axis;
    const Term &x = t->a, &y = t->b;
    if (x->kind == TermKind::Comp && x->axis == i) {
      Term inner = try_comp(i, x->b, y);
      if (inner) push(try_comp(i, x->a, inner), "associativity");
    }
    if (y->kind == TermKind::Comp && y->axis == i) {
      Term inner = try_comp(i, x, y->a);
      if (inner) push(try_comp(i, inner, y->b), "associativity");
    }
    if (x->kind == TermKind::Comp && y->kind == TermKind::Comp && x->axis == y->axis) {
      int k = x->axis;
      if (i < k) {
        Term ac = try_comp(i, x->a, y->a), bd = try_comp(i, x->b, y->b);
        if (ac && bd) push(try_comp(k, ac, bd), "interchange");
      } else if (k < i) {
        // t = (a ⊙_k c) ⊙_i (b ⊙_k d)  ->  (a ⊙_i b) ⊙_k (c ⊙_i d)
        Term ab = try_comp(i, x->a, y->a), cd = try_comp(i, x->b, y->b);
        if (ab && cd) push(try_comp(k, ab, cd), "interchange");
      }
    }
    if (term_equal(x, id_tower(term_boundary(y, true, i), j))) push(y, "identity");
    if (term_equal(y, id_tower(term_boundary(x, false, i), j))) push(x, "identity");
    if (x->kind == TermKind::Idn && y->kind == TermKind::Idn && i < j - 1) {
      Term inner = try_comp(i, x->a, y->a);
      if (inner) push(make_idn(inner), "identity-interchange");
    }
  }
  if (t->kind == TermKind::Idn && t->a->kind == TermKind::Comp) {
    const Term& c = t->a;
    push(try_comp(c->axis, make_idn(c->a), make_idn(c->b)), "identity-interchange");
  }
  for (int i = 0; i < j; ++i) {
    Term lo = term_boundary(t, true, i), hi = term_boundary(t, false, i);
    int grow_l = 1 + lo->size + (j - i), grow_r = 1 + hi->size + (j - i);
    if (grow_l <= slack)
      push(try_comp(i, id_tower(lo, j), t), "identity");
    else
      pruned = true;
    if (grow_r <= slack)
      push(try_comp(i, t, id_tower(hi, j)), "identity");
    else
      pruned = true;
  }
}

void all_rewrites(const Term& t, int slack, std::vector<RewriteStep>& out, bool& pruned) {
  root_rewrites(t, slack, out, pruned);
  if (t->kind == TermKind::Idn) {
    std::vector<RewriteStep> inner;
    all_rewrites(t->a, slack, inner, pruned);
    for (auto& s : inner) out.push_back({make_idn(s.result), s.law});
  } else if (t->kind == TermKind::Comp) {
    std::vector<RewriteStep> inner;
    all_rewrites(t->a, slack, inner, pruned);
    for (auto& s : inner)
      if (Term r = try_comp(t->axis, s.result, t->b)) out.push_back({r, s.law});
    inner.clear();
    all_rewrites(t->b, slack, inner, pruned);
    for (auto& s : inner)
      if (Term r = try_comp(t->axis, t->a, s.result)) out.push_back({r, s.law});
  }
}

// Generator leaves of the term's own dimension; no law changes this multiset.
std::map<std::string, int> top_leaves(const Term& t, int dim, std::map<std::string, int> acc = {}) {
  switch (t->kind) {
    case TermKind::Gen:
      if (t->dim == dim) ++acc[t->name];
      break;
    case TermKind::Idn:
      break;
    case TermKind::Comp:
    case TermKind::Bridge:
      acc = top_leaves(t->a, dim, std::move(acc));
      acc = top_leaves(t->b, dim, std::move(acc));
      break;
  }
  return acc;
}

}  // namespace

std::vector<RewriteStep> law_rewrites(const Term& t, int bound, bool* pruned) {
  if (has_bridge(t)) throw Error("not a strict-category term: " + to_string(t));
  std::vector<RewriteStep> out;
  bool p = false;
  all_rewrites(t, bound - t->size, out, p);
  if (pruned) *pruned = p;
  return out;
}

OracleResult oracle_eq(const Term& a, const Term& b, int size_bound) {
  if (a->size > size_bound || b->size > size_bound)
    throw Error("oracle_eq: input exceeds the size bound " + std::to_string(size_bound));
  if (has_bridge(a) || has_bridge(b)) throw Error("not a strict-category term");
  OracleResult res;
  if (a->dim != b->dim || top_leaves(a, a->dim) != top_leaves(b, b->dim)) {
    res.verdict = Verdict::False;
    return res;
  }
  if (term_equal(a, b)) {
    res.verdict = Verdict::True;
    return res;
  }
  if (a->dim > 0) {
    for (bool src : {true, false}) {
      const Term& x = src ? a->dom1 : a->cod1;
      const Term& y = src ? b->dom1 : b->cod1;
      // boundaries can outgrow the cell (scalars on identities); skip then
      if (x->size > size_bound || y->size > size_bound) continue;
      auto sub = oracle_eq(x, y, size_bound);
      if (sub.verdict == Verdict::False) {
        res.verdict = Verdict::False;
        return res;
      }
    }
  }
  const std::size_t cap = 2'000'000;
  TermSet seen{a};
  std::deque<Term> queue{a};
  while (!queue.empty()) {
    Term t = queue.front();
    queue.pop_front();
    ++res.explored;
    bool pruned = false;
    for (auto& step : law_rewrites(t, size_bound, &pruned)) {
      if (term_equal(step.result, b)) {
        res.verdict = Verdict::True;
        return res;
      }
      if (seen.insert(step.result).second) queue.push_back(step.result);
    }
    res.bound_hit |= pruned;
    if (seen.size() > cap) {
      res.bound_hit = true;
      break;
    }
  }
  res.verdict = res.bound_hit ? Verdict::Unknown : Verdict::False;
  return res;
}

}  // namespace womega
