#pragma once

#include <array>
#include <optional>
#include <string>
#include <vector>

#include "womega/globular.hpp"
#include "womega/term.hpp"

namespace womega {

// Omega magma given by finite composition tables. table[j][i][a * n_j + b] is
// a ⊙_i^j b, or -1 when undefined. Cells above trunc_dim are formal
// identities, addressed by the index of their base cell in dimension N.
struct FiniteMagma {
  OmegaGraph graph;
  std::vector<std::vector<std::vector<int>>> table;
  std::vector<std::string> conflicts;  // rejected duplicate assignments

  FiniteMagma() = default;
  explicit FiniteMagma(OmegaGraph g) : graph(std::move(g)) { ensure_tables(); }

  int top() const { return graph.trunc_dim; }
  int count(int d) const { return graph.size(std::min(d, top())); }
  void ensure_tables();
  std::string name(int d, int k) const;
  int find(int d, const std::string& n) const { return graph.find(std::min(d, top()), n); }

  int dom(int d, int k) const;  // d >= 1
  int cod(int d, int k) const;
  int id(int d, int k) const;   // identity on (d,k), a cell of dimension d+1
  int boundary(int d, int k, bool source, int level) const;
  int id_tower(int d, int k, int e) const;
  bool is_identity(int d, int k) const;

  int comp(int i, int j, int a, int b) const;
  void set_comp(int i, int j, int a, int b, int c);
  // Named form; the dimension is looked up from the operands.
  void set_comp(int i, const std::string& a, const std::string& b, const std::string& c);
  bool composable(int i, int j, int a, int b) const {
    return boundary(j, a, false, i) == boundary(j, b, true, i);
  }
};

// Images of formal cells (above either truncation) are handled uniformly.
int map_cell(const FiniteMagma& src, const FiniteMagma& tgt, const GraphMorphism& f, int d, int k);

Report validate_magma(const FiniteMagma& m);
Report validate_magma_morphism(const FiniteMagma& src, const FiniteMagma& tgt, const GraphMorphism& f);

// Value of a bridge-free term over m.graph; throws when undefined.
int evaluate(const FiniteMagma& m, const Term& t);

struct EqRelation {
  std::vector<std::vector<int>> cls;  // class label per cell, per dimension
};

EqRelation diagonal_relation(const FiniteMagma& m);
EqRelation total_relation(const FiniteMagma& m);
// Smallest equivalence containing `pairs` (cells given as (d, a, b)) that is
// closed under boundaries, identities and composition.
EqRelation generated_congruence(const FiniteMagma& m, const std::vector<std::array<int, 3>>& pairs);

struct EqAnalysis {
  bool submagma = false;
  bool sharp = false;
  std::optional<bool> categorical;  // empty when the bounded check is unavailable
  int bound = 0;
  std::vector<std::string> witnesses;
};

EqAnalysis analyze_equivalence_relation(const FiniteMagma& m, const EqRelation& e, int bound = 7);

struct Quotient {
  FiniteMagma magma;
  GraphMorphism projection;
};

Quotient quotient_magma(const FiniteMagma& m, const EqRelation& e);

FiniteMagma terminal_magma(int n);
GraphMorphism collapse_morphism(const FiniteMagma& m);

}  // namespace womega
