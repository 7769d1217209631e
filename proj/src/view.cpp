#include "womega/view.hpp"

#include <set>

namespace womega {

bool MagmaView::is_identity(const Cell& c) const {
  if (c.dim == 0) return false;
  return same(c, id(dom(c)));
}

Cell MagmaView::boundary(const Cell& c, bool source, int level) const {
  if (level < 0 || level > c.dim) throw Error("boundary: bad level");
  Cell x = c;
  while (x.dim > level) x = source ? dom(x) : cod(x);
  return x;
}

Cell MagmaView::id_tower(const Cell& c, int e) const {
  Cell x = c;
  while (x.dim < e) x = id(x);
  return x;
}

bool MagmaView::parallel(const Cell& a, const Cell& b) const {
  if (a.dim != b.dim) return false;
  if (a.dim == 0) return true;
  return same(dom(a), dom(b)) && same(cod(a), cod(b));
}

FiniteView::FiniteView(std::shared_ptr<const FiniteMagma> m, std::string name)
    : m_(std::move(m)), name_(std::move(name)) {}

std::vector<Cell> FiniteView::cells(int d, int) const {
  std::vector<Cell> out;
  for (int k = 0; k < m_->count(d); ++k) out.push_back({d, k, nullptr});
  return out;
}

std::optional<Cell> FiniteView::comp(int i, const Cell& a, const Cell& b) const {
  if (a.dim != b.dim || i < 0 || i >= a.dim) return std::nullopt;
  int c = m_->comp(i, a.dim, a.index, b.index);
  if (c < 0) return std::nullopt;
  return Cell{a.dim, c, nullptr};
}

Cell FiniteView::cell(int d, const std::string& name) const {
  int k = m_->find(d, name);
  if (k < 0) throw Error("unknown cell " + name + " in dimension " + std::to_string(d));
  return {d, k, nullptr};
}

TermView::TermView(OmegaGraph g, BridgeFilter bridge_ok, int dim_cap, std::string name)
    : g_(std::move(g)), bridge_ok_(std::move(bridge_ok)), dim_cap_(dim_cap), name_(std::move(name)) {}

std::vector<Cell> TermView::cells(int d, int bound) const {
  std::lock_guard<std::mutex> lock(mu_);
  auto it = cache_.find(bound);
  if (it == cache_.end()) it = cache_.emplace(bound, enumerate_terms(g_, bound, dim_cap_, bridge_ok_)).first;
  std::vector<Cell> out;
  for (const auto& group : it->second)
    for (const auto& t : group)
      if (t->dim == d) out.push_back(wrap(t));
  return out;
}

std::optional<Cell> TermView::comp(int i, const Cell& a, const Cell& b) const {
  Term t = try_comp(i, a.term, b.term);
  if (!t) return std::nullopt;
  return wrap(t);
}

FreeStrictView::FreeStrictView(OmegaGraph g, int dim_cap, std::string name)
    : g_(std::move(g)), dim_cap_(dim_cap), name_(std::move(name)) {}

std::vector<Cell> FreeStrictView::cells(int d, int bound) const {
  std::vector<Cell> out;
  std::set<std::string> seen;
  for (const auto& group : enumerate_terms(g_, bound, std::max(d, 0)))
    for (const auto& t : group) {
      if (t->dim != d) continue;
      StrictNF x = nf(t);
      if (seen.insert(x.code()).second) out.push_back(canonical(x));
    }
  return out;
}

namespace {
StrictNF nf_face(StrictNF x, bool source, int level) {
  while (x.dim > level) x = nf_boundary(x, source);
  return x;
}
}  // namespace

std::optional<Cell> FreeStrictView::comp(int i, const Cell& a, const Cell& b) const {
  if (a.dim != b.dim || i < 0 || i >= a.dim) return std::nullopt;
  StrictNF x = nf(a.term), y = nf(b.term);
  if (nf_face(x, false, i) != nf_face(y, true, i)) return std::nullopt;
  return canonical(nf_compose(i, x, y));
}

bool FreeStrictView::is_identity(const Cell& c) const {
  if (c.dim == 0) return false;
  StrictNF x = nf(c.term);
  return nf_identity(nf_boundary(x, true)) == x;
}

TableMap::TableMap(std::shared_ptr<const FiniteMagma> src, std::shared_ptr<const FiniteMagma> tgt, GraphMorphism f,
                   std::string name)
    : src_(std::move(src)), tgt_(std::move(tgt)), f_(std::move(f)), name_(std::move(name)) {}

Cell TableMap::apply(const Cell& c) const { return {c.dim, map_cell(*src_, *tgt_, f_, c.dim, c.index), nullptr}; }

MapPtr compose_maps(MapPtr first, MapPtr second) {
  std::string name = second->label() + "∘" + first->label();
  return std::make_shared<FunctionMap>([first, second](const Cell& c) { return second->apply(first->apply(c)); },
                                       name);
}

std::optional<Cell> DiagonalRelation::bridge(const Cell& a, const Cell& b) const {
  if (!base_->same(a, b)) return std::nullopt;
  return base_->id(a);
}

std::vector<std::array<Cell, 3>> DiagonalRelation::triples(int d, int bound) const {
  std::vector<std::array<Cell, 3>> out;
  for (const auto& a : base_->cells(d, bound)) out.push_back({a, a, base_->id(a)});
  return out;
}

std::optional<Cell> TableRelation::bridge(const Cell& a, const Cell& b) const {
  for (const auto& r : rows_)
    if (r[0] == a.dim && r[1] == a.index && r[2] == b.index) return Cell{a.dim + 1, r[3], nullptr};
  return std::nullopt;
}

std::vector<std::array<Cell, 3>> TableRelation::triples(int d, int) const {
  std::vector<std::array<Cell, 3>> out;
  for (const auto& r : rows_)
    if (r[0] == d) out.push_back({Cell{d, r[1], nullptr}, Cell{d, r[2], nullptr}, Cell{d + 1, r[3], nullptr}});
  return out;
}

std::vector<std::array<Cell, 3>> FunctionRelation::triples(int d, int bound) const {
  std::vector<std::array<Cell, 3>> out;
  auto cs = base_->cells(d, bound);
  for (const auto& a : cs)
    for (const auto& b : cs) {
      if (!base_->parallel(a, b)) continue;
      if (auto c = fn_(a, b)) out.push_back({a, b, *c});
    }
  return out;
}

std::vector<Composite> composites(const MagmaView& v, int j, int bound) {
  std::vector<Composite> out;
  auto cs = v.cells(j, bound);
  for (int i = 0; i < j; ++i)
    for (const auto& a : cs)
      for (const auto& b : cs)
        if (auto c = v.comp(i, a, b)) out.push_back({i, a, b, *c});
  return out;
}

}  // namespace womega
