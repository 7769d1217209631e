#pragma once

#include <array>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "womega/span.hpp"

namespace womega {

// Cells of dimensions >= level+1 of a finite magma whose level-boundaries
// pass `keep`, reindexed down by level+1. to_base[d][k] is the base index of
// hom cell (d, k).
struct FiniteHom {
  std::shared_ptr<FiniteMagma> magma;
  int shift = 0;
  std::vector<std::vector<int>> to_base;
  std::vector<std::map<int, int>> from_base;
  int hom_index(int base_dim, int base_index) const;  // -1 when filtered out
};
FiniteHom hom_magma(const FiniteMagma& m, int shift, const std::function<bool(int d, int k)>& keep);

// The hom span X(a, b) of a span at parallel cells a, b of X1, with the
// conversions between hom cells and cells of the original legs.
struct HomSpan {
  Span span;
  int shift = 0;
  std::array<std::function<Cell(const Cell&)>, 3> to_base, from_base;  // per leg X1, X2, X3
};
HomSpan hom_span(const Span& s, const Cell& a, const Cell& b);
Span hom_category(const Span& s, const Cell& a, const Cell& b);

enum class Direction { Up, Down };
// Shifts a finite span one dimension up (new unique 0-cell) or back down.
Span stabilize(const Span& s, Direction dir);
// The same construction on a single finite magma.
FiniteMagma suspend(const FiniteMagma& m);
FiniteMagma desuspend(const FiniteMagma& m);

struct ExtractionLog {
  std::vector<std::string> steps;        // lift -> equalize -> bridge -> project
  std::optional<std::string> failure;    // first failing instance
  bool ok() const { return !failure; }
};

// Materializes the formal identity cells of m up to dimension n; indices of
// the new cells agree with the formal addressing.
FiniteMagma pad_magma(const FiniteMagma& m, int n);

struct CategoryExtraction {
  FiniteMagma category;
  ExtractionLog log;
};
CategoryExtraction extract_category(const Span& s);

// Bicategory on a finite 2-skeletal magma. assoc[(f,g,h)]: f⊙(g⊙h) => (f⊙g)⊙h,
// lunit[f]: I⊙f => f, runit[f]: f⊙I => f. Composition is diagrammatic.
struct BicategoryData {
  std::string name = "bicategory";
  FiniteMagma cells;
  std::map<std::array<int, 3>, int> assoc;
  std::vector<int> lunit, runit;
};
Report validate_bicategory(const BicategoryData& b);
// Inverse of a 2-cell in its hom category, or -1.
int inverse_cell(const FiniteMagma& m, int x);
// A strict 2-category with identity coherence cells.
BicategoryData strict_bicategory(const FiniteMagma& m, const std::string& name = "strict");

struct BicategoryExtraction {
  BicategoryData bicategory;
  ExtractionLog log;
  Report axioms;
};
BicategoryExtraction extract_bicategory(const Span& s);

// Span whose X2 is the free bicategory on b's graph and X1 = b.
Span weakify_bicategory(const BicategoryData& b, int bound = 5);

// The canonical coherence 2-cell of b between two 1-terms over its graph
// whose strict images agree.
int coherence_cell(const BicategoryData& b, const Term& u, const Term& v);

// One-object bicategory: 1-cells are the elements of (Z/2)^bits, every hom is
// Z/2, associator components given by a normalized 3-cocycle.
BicategoryData cocycle_bicategory(int bits, const std::function<int(int, int, int)>& omega, const std::string& name);

}  // namespace womega
