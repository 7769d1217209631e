#include "womega/term.hpp"

#include <algorithm>
#include <cctype>
#include <map>

namespace womega {

namespace {

std::size_t mix(std::size_t h, std::size_t v) {
  return h ^ (v + 0x9e3779b97f4a7c15ULL + (h << 6) + (h >> 2));
}

}  // namespace

Term make_gen(const OmegaGraph& g, int d, int k) {
  if (d < 0 || d > g.trunc_dim || k < 0 || k >= g.size(d)) throw Error("unknown generator");
  int base = g.identity_base(d, k);
  if (base >= 0) return make_idn(make_gen(g, d - 1, base));
  auto n = std::make_shared<TermNode>();
  n->kind = TermKind::Gen;
  n->dim = d;
  n->cell = k;
  n->name = g.names[d][k];
  n->hash = mix(std::hash<std::string>{}(n->name), static_cast<std::size_t>(d));
  if (d > 0) {
    n->dom1 = make_gen(g, d - 1, g.dom[d][k]);
    n->cod1 = make_gen(g, d - 1, g.cod[d][k]);
  }
  return n;
}

Term make_gen(const OmegaGraph& g, const std::string& name) {
  for (int d = 0; d <= g.trunc_dim; ++d) {
    int k = g.find(d, name);
    if (k >= 0) return make_gen(g, d, k);
  }
  throw Error("unknown cell '" + name + "'");
}

Term make_idn(const Term& t) {
  auto n = std::make_shared<TermNode>();
  n->kind = TermKind::Idn;
  n->dim = t->dim + 1;
  n->a = t;
  n->dom1 = t;
  n->cod1 = t;
  n->size = t->size + 1;
  n->hash = mix(0x1d, t->hash);
  return n;
}

Term make_comp(int i, const Term& a, const Term& b) {
  if (a->dim != b->dim) throw Error("composition of cells of different dimensions");
  int j = a->dim;
  if (i < 0 || i >= j) throw Error("composition axis " + std::to_string(i) + " out of range for dimension " + std::to_string(j));
  Term ca = term_boundary(a, false, i), db = term_boundary(b, true, i);
  if (!term_equal(ca, db))
    throw Error("boundary mismatch in comp(" + std::to_string(i) + "): cod " + to_string(ca) + " vs dom " + to_string(db));
  return try_comp(i, a, b);
}

Term try_comp(int i, const Term& a, const Term& b) {
  if (a->dim != b->dim) return nullptr;
  int j = a->dim;
  if (i < 0 || i >= j) return nullptr;
  if (!term_equal(term_boundary(a, false, i), term_boundary(b, true, i))) return nullptr;
  auto n = std::make_shared<TermNode>();
  n->kind = TermKind::Comp;
  n->dim = j;
  n->axis = i;
  n->a = a;
  n->b = b;
  n->size = a->size + b->size + 1;
  n->hash = mix(mix(mix(0xc0, static_cast<std::size_t>(i)), a->hash), b->hash);
  if (i == j - 1) {
    n->dom1 = a->dom1;
    n->cod1 = b->cod1;
  } else {
    n->dom1 = try_comp(i, a->dom1, b->dom1);
    n->cod1 = try_comp(i, a->cod1, b->cod1);
  }
  return n;
}

Term make_bridge(const Term& u, const Term& v) {
  if (!terms_parallel(u, v)) throw Error("bridge between non-parallel cells " + to_string(u) + ", " + to_string(v));
  if (term_equal(u, v)) throw Error("bridge on equal cells; use the identity instead");
  auto n = std::make_shared<TermNode>();
  n->kind = TermKind::Bridge;
  n->dim = u->dim + 1;
  n->a = u;
  n->b = v;
  n->dom1 = u;
  n->cod1 = v;
  n->size = u->size + v->size + 1;
  n->hash = mix(mix(0xb1, u->hash), v->hash);
  return n;
}

bool term_equal(const Term& x, const Term& y) {
  if (x.get() == y.get()) return true;
  if (!x || !y) return false;
  if (x->hash != y->hash || x->size != y->size || x->kind != y->kind || x->dim != y->dim) return false;
  switch (x->kind) {
    case TermKind::Gen:
      return x->cell == y->cell && x->name == y->name;
    case TermKind::Idn:
      return term_equal(x->a, y->a);
    case TermKind::Comp:
      return x->axis == y->axis && term_equal(x->a, y->a) && term_equal(x->b, y->b);
    case TermKind::Bridge:
      return term_equal(x->a, y->a) && term_equal(x->b, y->b);
  }
  return false;
}

namespace {

int compare(const Term& x, const Term& y) {
  if (x.get() == y.get()) return 0;
  if (x->size != y->size) return x->size < y->size ? -1 : 1;
  if (x->dim != y->dim) return x->dim < y->dim ? -1 : 1;
  if (x->kind != y->kind) return x->kind < y->kind ? -1 : 1;
  switch (x->kind) {
    case TermKind::Gen:
      if (x->name != y->name) return x->name < y->name ? -1 : 1;
      return 0;
    case TermKind::Idn:
      return compare(x->a, y->a);
    case TermKind::Comp:
      if (x->axis != y->axis) return x->axis < y->axis ? -1 : 1;
      [[fallthrough]];
    case TermKind::Bridge: {
      int c = compare(x->a, y->a);
      return c != 0 ? c : compare(x->b, y->b);
    }
  }
  return 0;
}

}  // namespace

bool term_less(const Term& x, const Term& y) { return compare(x, y) < 0; }

Term term_boundary(const Term& t, bool source, int k) {
  if (k < 0 || k >= t->dim)
    throw Error("boundary dimension " + std::to_string(k) + " not below term dimension " + std::to_string(t->dim));
  Term r = t;
  while (r->dim > k) r = source ? r->dom1 : r->cod1;
  return r;
}

Term term_compose(int i, const Term& a, const Term& b) { return make_comp(i, a, b); }

Term id_tower(const Term& t, int e) {
  Term r = t;
  while (r->dim < e) r = make_idn(r);
  return r;
}

bool terms_parallel(const Term& x, const Term& y) {
  if (x->dim != y->dim) return false;
  if (x->dim == 0) return true;
  return term_equal(x->dom1, y->dom1) && term_equal(x->cod1, y->cod1);
}

bool has_bridge(const Term& t) {
  switch (t->kind) {
    case TermKind::Gen:
      return false;
    case TermKind::Idn:
      return has_bridge(t->a);
    case TermKind::Comp:
      return has_bridge(t->a) || has_bridge(t->b);
    case TermKind::Bridge:
      return true;
  }
  return false;
}

int leaf_count(const Term& t) {
  switch (t->kind) {
    case TermKind::Gen:
      return 1;
    case TermKind::Idn:
      return leaf_count(t->a);
    default:
      return leaf_count(t->a) + leaf_count(t->b);
  }
}

std::string to_string(const Term& t) {
  switch (t->kind) {
    case TermKind::Gen:
      return "gen:" + t->name;
    case TermKind::Idn:
      return "id(" + to_string(t->a) + ")";
    case TermKind::Comp:
      return "comp(" + std::to_string(t->axis) + "," + to_string(t->a) + "," + to_string(t->b) + ")";
    case TermKind::Bridge:
      return "br(" + to_string(t->a) + "," + to_string(t->b) + ")";
  }
  return "?";
}

namespace {

struct TermParser {
  const OmegaGraph& g;
  const std::string& s;
  std::size_t pos = 0;

  void skip() {
    while (pos < s.size() && std::isspace(static_cast<unsigned char>(s[pos]))) ++pos;
  }
  [[noreturn]] void fail(const std::string& what) {
    throw Error("term syntax error at column " + std::to_string(pos + 1) + ": " + what);
  }
  bool eat(const std::string& tok) {
    skip();
    if (s.compare(pos, tok.size(), tok) == 0) {
      pos += tok.size();
      return true;
    }
    return false;
  }
  void expect(const std::string& tok) {
    if (!eat(tok)) fail("expected '" + tok + "'");
  }
  std::string ident() {
    skip();
    std::size_t start = pos;
    while (pos < s.size() && s[pos] != ',' && s[pos] != '(' && s[pos] != ')' &&
           !std::isspace(static_cast<unsigned char>(s[pos])))
      ++pos;
    if (start == pos) fail("expected a cell identifier");
    return s.substr(start, pos - start);
  }
  int number() {
    skip();
    std::size_t start = pos;
    while (pos < s.size() && std::isdigit(static_cast<unsigned char>(s[pos]))) ++pos;
    if (start == pos) fail("expected a dimension");
    return std::stoi(s.substr(start, pos - start));
  }
  Term term() {
    if (eat("gen:")) return make_gen(g, ident());
    if (eat("id(")) {
      Term t = term();
      expect(")");
      return make_idn(t);
    }
    if (eat("comp(")) {
      int i = number();
      expect(",");
      Term a = term();
      expect(",");
      Term b = term();
      expect(")");
      return make_comp(i, a, b);
    }
    if (eat("br(")) {
      Term a = term();
      expect(",");
      Term b = term();
      expect(")");
      return make_bridge(a, b);
    }
    fail("expected gen:, id(, comp( or br(");
  }
};

}  // namespace

Term parse_term(const OmegaGraph& g, const std::string& text) {
  TermParser p{g, text};
  Term t = p.term();
  p.skip();
  if (p.pos != text.size()) p.fail("trailing input");
  return t;
}

std::vector<std::vector<Term>> enumerate_terms(const OmegaGraph& g, int max_size, int max_dim,
                                               const BridgeFilter& bridge_ok) {
  std::vector<std::vector<Term>> by_size(max_size + 1);
  if (max_size < 1) return by_size;
  for (int d = 0; d <= std::min(g.trunc_dim, max_dim); ++d)
    for (int k = 0; k < g.size(d); ++k)
      if (!g.is_identity(d, k)) by_size[1].push_back(make_gen(g, d, k));

  // dom_i / cod_i keyed indexes per size for fast compatible-pair lookup
  using Key = std::pair<int, std::string>;  // (axis, boundary string)
  std::vector<std::map<Key, std::vector<Term>>> by_dom(max_size + 1);
  std::vector<std::map<std::string, std::vector<Term>>> by_frame(max_size + 1);
  auto index = [&](int n) {
    for (const Term& t : by_size[n]) {
      for (int i = 0; i < t->dim; ++i) by_dom[n][{i, to_string(term_boundary(t, true, i))}].push_back(t);
      if (bridge_ok) {
        std::string frame = std::to_string(t->dim);
        if (t->dim > 0) frame += "|" + to_string(t->dom1) + "|" + to_string(t->cod1);
        by_frame[n][frame].push_back(t);
      }
    }
  };
  index(1);
  for (int n = 2; n <= max_size; ++n) {
    auto& out = by_size[n];
    for (const Term& t : by_size[n - 1])
      if (t->dim < max_dim) out.push_back(make_idn(t));
    for (int sa = 1; sa + 1 < n; ++sa) {
      int sb = n - 1 - sa;
      for (const Term& a : by_size[sa]) {
        for (int i = 0; i < a->dim; ++i) {
          auto it = by_dom[sb].find({i, to_string(term_boundary(a, false, i))});
          if (it == by_dom[sb].end()) continue;
          for (const Term& b : it->second)
            if (b->dim == a->dim) out.push_back(make_comp(i, a, b));
        }
      }
      if (bridge_ok) {
        for (const auto& [frame, us] : by_frame[sa]) {
          auto it = by_frame[sb].find(frame);
          if (it == by_frame[sb].end()) continue;
          for (const Term& u : us) {
            if (u->dim + 1 > max_dim) continue;
            for (const Term& v : it->second)
              if (!term_equal(u, v) && bridge_ok(u, v)) out.push_back(make_bridge(u, v));
          }
        }
      }
    }
    index(n);
  }
  return by_size;
}

}  // namespace womega
