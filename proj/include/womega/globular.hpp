#pragma once

#include <string>
#include <vector>

#include "womega/report.hpp"

namespace womega {

// Finite truncated globular set, optionally reflexive (an omega graph).
// Cells are addressed by (dimension, index). Above trunc_dim every cell is a
// formal identity and is not stored.
struct OmegaGraph {
  int trunc_dim = 0;
  bool reflexive = true;
  std::vector<std::vector<std::string>> names;  // names[d][k]
  std::vector<std::vector<int>> dom, cod;       // [d][k] -> index in d-1; empty for d = 0
  std::vector<std::vector<int>> id_of;          // [d][x] -> index in d of the identity on x in d-1

  OmegaGraph() { resize(0); }
  explicit OmegaGraph(int n) { resize(n); }

  void resize(int n);
  int size(int d) const { return d >= 0 && d <= trunc_dim ? static_cast<int>(names[d].size()) : 0; }
  int find(int d, const std::string& name) const;  // -1 when absent
  int add(int d, const std::string& name, int dom_cell = -1, int cod_cell = -1);
  int add(int d, const std::string& name, const std::string& dom_name, const std::string& cod_name);
  // Creates identity cells id_<x> for every cell below trunc_dim that lacks one.
  void add_identities();

  // Index of x when cell (d,k) is the identity on x, else -1.
  int identity_base(int d, int k) const;
  bool is_identity(int d, int k) const { return identity_base(d, k) >= 0; }
  // Iterated boundary down to dimension k < d.
  int boundary(int d, int cell, bool source, int k) const;
  // Identity tower from dimension d up to dimension e (e <= trunc_dim).
  int identity_tower(int d, int cell, int e) const;
  int total_cells() const;
};

struct GraphMorphism {
  // map[d][k] for every source dimension d; the value indexes target cells of
  // dimension min(d, target trunc_dim) (formal identities above it).
  std::vector<std::vector<int>> map;
};

Report validate_omega_graph(const OmegaGraph& g);
Report validate_graph_morphism(const OmegaGraph& src, const OmegaGraph& tgt, const GraphMorphism& f);
bool is_parallel(const OmegaGraph& g, int da, int a, int db, int b);
bool is_parallel(const OmegaGraph& g, int d, int a, int b);

GraphMorphism identity_graph_morphism(const OmegaGraph& g);

}  // namespace womega
