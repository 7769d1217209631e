#pragma once

#include <optional>
#include <string>
#include <vector>

#include "womega/view.hpp"

namespace womega {

// A weak omega category presented as a span X1 <-λ- X2 -κ-> X3 with a
// section ρ of λ and a bridge relation R on X2.
struct Span {
  std::string name;
  ViewPtr x1, x2, x3;
  MapPtr lambda, rho, kappa;
  RelPtr r;
  std::optional<int> bound;  // set for virtual spans: term-size bound of checks

  bool finite() const { return !bound; }
  int check_bound(int fallback = 6) const { return bound.value_or(fallback); }
};

Report validate_bridge_relation(const MagmaView& base, const BridgeRelation& r, int bound = 6);
// Categorical Penon morphism (X, R) -> (target, diagonal).
Report validate_penon_morphism(const MagmaView& src, const BridgeRelation& r, const CellMap& f,
                               const MagmaView& tgt, int bound = 6);
// F commutes with dom, cod and identities on source cells.
Report validate_graph_map(const MagmaView& src, const CellMap& f, const MagmaView& tgt, int bound = 6);
// Graph map that also preserves every composite.
Report validate_magma_map(const MagmaView& src, const CellMap& f, const MagmaView& tgt, int bound = 6);
Report validate_weak_omega_category(const Span& s);

struct OmegaFunctorData {
  std::shared_ptr<const Span> src, tgt;
  MapPtr f1, f2, f3;
};
Report validate_omega_functor(const OmegaFunctorData& f);

// The diagonal span on a finite strict omega category.
Span strict_as_weak(std::shared_ptr<const FiniteMagma> c, const std::string& name = "strict");

// Penon stretching: bridges are erased to identities, then normalized.
StrictNF stretch_eta(const Term& t);
std::optional<Term> stretch_bridge(const Term& u, const Term& v);

Span penon_category(const OmegaGraph& y, int bound = 6);
// Stretching over a strict target: f sends Y's cells to A's cells.
Span penon_over(const OmegaGraph& y, std::shared_ptr<const FiniteMagma> a, const GraphMorphism& f, int bound = 6);
// Same construction over any strict view, generators sent by `gen`.
Span penon_over_view(const OmegaGraph& y, ViewPtr a, std::function<Cell(const Term&)> gen, int bound = 6,
                     const std::string& name = "penon-over");

// Composition schedule over numbered leaves, e.g. "c(0,c(0,#0,#1),#2)".
struct Schedule {
  int leaf = -1;
  int axis = -1;
  std::shared_ptr<const Schedule> left, right;
};
std::shared_ptr<const Schedule> parse_schedule(const std::string& text);

// Lifts X1 cells through ρ, composes them in X2 along both schedules, checks
// that κ identifies the composites and reads the bridge from R. λ of that
// bridge relates the two X1 composites.
struct ScholiumResult {
  Cell lhs, rhs;            // X1 composites
  Cell lift_lhs, lift_rhs;  // X2 composites
  Cell bridge;              // in X2
  Cell image;               // λ(bridge) in X1, from lhs to rhs
};
ScholiumResult scholium(const Span& s, const std::vector<Cell>& leaves, const Schedule& lhs, const Schedule& rhs);

// Evaluates a schedule in a view; throws when some composite is undefined.
Cell run_schedule(const MagmaView& v, const std::vector<Cell>& leaves, const Schedule& s);

}  // namespace womega
