#pragma once

#include <array>
#include <functional>
#include <map>
#include <mutex>
#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "womega/magma.hpp"
#include "womega/strict.hpp"
#include "womega/term.hpp"

namespace womega {

// A cell of some omega magma: finite magmas use `index`, term-backed magmas
// use `term`. Which one is meaningful is decided by the owning view.
struct Cell {
  int dim = 0;
  int index = -1;
  Term term;
};

// Uniform read access to finite and term-backed (virtual) omega magmas.
// Virtual magmas are infinite; `cells` enumerates those built from terms of at
// most `bound` nodes. Finite magmas ignore the bound.
class MagmaView {
 public:
  virtual ~MagmaView() = default;
  virtual std::string label() const = 0;
  // Finite: truncation dimension (cells above are formal identities).
  // Virtual: the largest dimension enumerated by `cells`.
  virtual int top() const = 0;
  virtual bool finite() const = 0;
  virtual std::vector<Cell> cells(int d, int bound) const = 0;
  virtual Cell dom(const Cell& c) const = 0;
  virtual Cell cod(const Cell& c) const = 0;
  virtual Cell id(const Cell& c) const = 0;
  virtual std::optional<Cell> comp(int i, const Cell& a, const Cell& b) const = 0;
  virtual std::string key(const Cell& c) const = 0;  // equal keys iff equal cells
  virtual std::string show(const Cell& c) const { return key(c); }
  virtual bool same(const Cell& a, const Cell& b) const { return a.dim == b.dim && key(a) == key(b); }
  virtual bool is_identity(const Cell& c) const;
  // True when the strict laws hold by construction (free strict categories).
  virtual bool strict_by_construction() const { return false; }
  // Finite magma behind the view, when there is one.
  virtual const FiniteMagma* tables() const { return nullptr; }

  Cell boundary(const Cell& c, bool source, int level) const;
  Cell id_tower(const Cell& c, int e) const;
  bool parallel(const Cell& a, const Cell& b) const;
};

using ViewPtr = std::shared_ptr<const MagmaView>;

class FiniteView : public MagmaView {
 public:
  FiniteView(std::shared_ptr<const FiniteMagma> m, std::string name = "finite");
  std::string label() const override { return name_; }
  int top() const override { return m_->top(); }
  bool finite() const override { return true; }
  std::vector<Cell> cells(int d, int bound) const override;
  Cell dom(const Cell& c) const override { return {c.dim - 1, m_->dom(c.dim, c.index), nullptr}; }
  Cell cod(const Cell& c) const override { return {c.dim - 1, m_->cod(c.dim, c.index), nullptr}; }
  Cell id(const Cell& c) const override { return {c.dim + 1, m_->id(c.dim, c.index), nullptr}; }
  std::optional<Cell> comp(int i, const Cell& a, const Cell& b) const override;
  std::string key(const Cell& c) const override { return std::to_string(c.index); }
  std::string show(const Cell& c) const override { return m_->name(c.dim, c.index); }
  bool same(const Cell& a, const Cell& b) const override { return a.dim == b.dim && a.index == b.index; }
  bool is_identity(const Cell& c) const override { return m_->is_identity(c.dim, c.index); }
  const FiniteMagma* tables() const override { return m_.get(); }
  const FiniteMagma& magma() const { return *m_; }
  Cell cell(int d, int k) const { return {d, k, nullptr}; }
  Cell cell(int d, const std::string& name) const;

 private:
  std::shared_ptr<const FiniteMagma> m_;
  std::string name_;
};

// Free magma on an omega graph with bridges adjoined between parallel,
// distinct cells accepted by `bridge_ok` (a stretching when bridge_ok is
// "same strict image").
class TermView : public MagmaView {
 public:
  TermView(OmegaGraph g, BridgeFilter bridge_ok, int dim_cap, std::string name);
  std::string label() const override { return name_; }
  int top() const override { return dim_cap_; }
  bool finite() const override { return false; }
  std::vector<Cell> cells(int d, int bound) const override;
  Cell dom(const Cell& c) const override { return wrap(c.term->dom1); }
  Cell cod(const Cell& c) const override { return wrap(c.term->cod1); }
  Cell id(const Cell& c) const override { return wrap(make_idn(c.term)); }
  std::optional<Cell> comp(int i, const Cell& a, const Cell& b) const override;
  std::string key(const Cell& c) const override { return to_string(c.term); }
  bool same(const Cell& a, const Cell& b) const override { return term_equal(a.term, b.term); }
  bool is_identity(const Cell& c) const override { return c.term->kind == TermKind::Idn; }
  const OmegaGraph& graph() const { return g_; }
  const BridgeFilter& bridge_ok() const { return bridge_ok_; }
  static Cell wrap(const Term& t) { return {t->dim, -1, t}; }

 private:
  OmegaGraph g_;
  BridgeFilter bridge_ok_;
  int dim_cap_;
  std::string name_;
  mutable std::mutex mu_;
  mutable std::map<int, std::vector<std::vector<Term>>> cache_;  // bound -> terms by size
};

// Free strict omega category on an omega graph; cells are canonical terms
// of normal forms, composition goes through normal forms.
class FreeStrictView : public MagmaView {
 public:
  FreeStrictView(OmegaGraph g, int dim_cap, std::string name = "free-strict");
  std::string label() const override { return name_; }
  int top() const override { return dim_cap_; }
  bool finite() const override { return false; }
  std::vector<Cell> cells(int d, int bound) const override;
  Cell dom(const Cell& c) const override { return canonical(nf_boundary(nf(c.term), true)); }
  Cell cod(const Cell& c) const override { return canonical(nf_boundary(nf(c.term), false)); }
  Cell id(const Cell& c) const override { return canonical(nf_identity(nf(c.term))); }
  std::optional<Cell> comp(int i, const Cell& a, const Cell& b) const override;
  std::string key(const Cell& c) const override { return nf(c.term).code(); }
  std::string show(const Cell& c) const override { return to_string(c.term); }
  bool is_identity(const Cell& c) const override;
  bool strict_by_construction() const override { return true; }
  Cell canonical(const StrictNF& x) const { return {x.dim, -1, nf_to_term(g_, x)}; }
  const OmegaGraph& graph() const { return g_; }

 private:
  OmegaGraph g_;
  int dim_cap_;
  std::string name_;
};

// Morphisms and graph maps between views.
class CellMap {
 public:
  virtual ~CellMap() = default;
  virtual Cell apply(const Cell& c) const = 0;
  virtual std::string label() const { return "map"; }
};
using MapPtr = std::shared_ptr<const CellMap>;

class IdentityMap : public CellMap {
 public:
  Cell apply(const Cell& c) const override { return c; }
  std::string label() const override { return "id"; }
};

class FunctionMap : public CellMap {
 public:
  FunctionMap(std::function<Cell(const Cell&)> f, std::string name) : f_(std::move(f)), name_(std::move(name)) {}
  Cell apply(const Cell& c) const override { return f_(c); }
  std::string label() const override { return name_; }

 private:
  std::function<Cell(const Cell&)> f_;
  std::string name_;
};

// Table morphism between finite magmas (formal cells handled).
class TableMap : public CellMap {
 public:
  TableMap(std::shared_ptr<const FiniteMagma> src, std::shared_ptr<const FiniteMagma> tgt, GraphMorphism f,
           std::string name = "table");
  Cell apply(const Cell& c) const override;
  std::string label() const override { return name_; }
  const GraphMorphism& morphism() const { return f_; }
  const FiniteMagma& source() const { return *src_; }
  const FiniteMagma& target() const { return *tgt_; }

 private:
  std::shared_ptr<const FiniteMagma> src_, tgt_;
  GraphMorphism f_;
  std::string name_;
};

MapPtr compose_maps(MapPtr first, MapPtr second);  // second ∘ first

// Bridge relation R = (R_i): triples (a, b, c) with c a bridge from a to b.
class BridgeRelation {
 public:
  virtual ~BridgeRelation() = default;
  // The c with (a, b, c) in R, if any.
  virtual std::optional<Cell> bridge(const Cell& a, const Cell& b) const = 0;
  // All triples whose a, b have dimension d and size within the bound.
  virtual std::vector<std::array<Cell, 3>> triples(int d, int bound) const = 0;
};
using RelPtr = std::shared_ptr<const BridgeRelation>;

class DiagonalRelation : public BridgeRelation {
 public:
  explicit DiagonalRelation(ViewPtr base) : base_(std::move(base)) {}
  std::optional<Cell> bridge(const Cell& a, const Cell& b) const override;
  std::vector<std::array<Cell, 3>> triples(int d, int bound) const override;

 private:
  ViewPtr base_;
};

// Explicit table on a finite magma. Repeated (a, b) entries are kept so that
// validation can report them.
class TableRelation : public BridgeRelation {
 public:
  explicit TableRelation(std::shared_ptr<const FiniteMagma> base) : base_(std::move(base)) {}
  void add(int d, int a, int b, int c) { rows_.push_back({d, a, b, c}); }
  std::optional<Cell> bridge(const Cell& a, const Cell& b) const override;
  std::vector<std::array<Cell, 3>> triples(int d, int bound) const override;
  const std::vector<std::array<int, 4>>& rows() const { return rows_; }
  const FiniteMagma& base() const { return *base_; }

 private:
  std::shared_ptr<const FiniteMagma> base_;
  std::vector<std::array<int, 4>> rows_;
};

class FunctionRelation : public BridgeRelation {
 public:
  using Fn = std::function<std::optional<Cell>(const Cell&, const Cell&)>;
  FunctionRelation(ViewPtr base, Fn fn) : base_(std::move(base)), fn_(std::move(fn)) {}
  std::optional<Cell> bridge(const Cell& a, const Cell& b) const override { return fn_(a, b); }
  std::vector<std::array<Cell, 3>> triples(int d, int bound) const override;

 private:
  ViewPtr base_;
  Fn fn_;
};

// Every composite a ⊙_i b of cells of dimension j within the bound.
struct Composite {
  int axis;
  Cell a, b, c;
};
std::vector<Composite> composites(const MagmaView& v, int j, int bound);

}  // namespace womega
