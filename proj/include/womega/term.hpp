#pragma once

#include <functional>
#include <memory>
#include <string>
#include <unordered_map>
#include <unordered_set>
#include <vector>

#include "womega/globular.hpp"

namespace womega {

enum class TermKind { Gen, Idn, Comp, Bridge };

struct TermNode;
using Term = std::shared_ptr<const TermNode>;

// Immutable syntax tree of the free omega magma on an omega graph, with the
// bridge constructor used by stretchings. Boundaries are computed once at
// construction, so every operation after that is graph-free.
struct TermNode {
  TermKind kind;
  int dim = 0;
  int cell = -1;     // Gen: index of the generator in its dimension
  std::string name;  // Gen: generator name
  int axis = -1;     // Comp: composition dimension i
  Term a, b;         // Idn: a; Comp/Bridge: a, b
  Term dom1, cod1;   // codimension-one boundaries, null for 0-cells
  std::size_t hash = 0;
  int size = 1;      // node count
};

// Generators that are identity cells of the graph become identities, so the
// graph's identities and the magma's identities coincide.
Term make_gen(const OmegaGraph& g, int d, int k);
Term make_gen(const OmegaGraph& g, const std::string& name);
Term make_idn(const Term& t);
Term make_comp(int i, const Term& a, const Term& b);
// Null instead of throwing when the operands are not composable.
Term try_comp(int i, const Term& a, const Term& b);
Term make_bridge(const Term& u, const Term& v);

bool term_equal(const Term& x, const Term& y);
bool term_less(const Term& x, const Term& y);  // total order, size first
struct TermHash {
  std::size_t operator()(const Term& t) const { return t->hash; }
};
struct TermEq {
  bool operator()(const Term& x, const Term& y) const { return term_equal(x, y); }
};
using TermSet = std::unordered_set<Term, TermHash, TermEq>;
template <class V>
using TermMap = std::unordered_map<Term, V, TermHash, TermEq>;

Term term_boundary(const Term& t, bool source, int k);
Term term_compose(int i, const Term& a, const Term& b);
Term id_tower(const Term& t, int e);  // identities up to dimension e
bool terms_parallel(const Term& x, const Term& y);
bool has_bridge(const Term& t);
int leaf_count(const Term& t);  // generator leaves

std::string to_string(const Term& t);
Term parse_term(const OmegaGraph& g, const std::string& text);

// All well-formed terms with at most max_size nodes and dimension at most
// max_dim, grouped by size (result[n] holds the terms of exactly n nodes).
// Bridge(u,v) is produced for parallel, distinct u, v accepted by `bridge_ok`.
using BridgeFilter = std::function<bool(const Term&, const Term&)>;
std::vector<std::vector<Term>> enumerate_terms(const OmegaGraph& g, int max_size, int max_dim,
                                               const BridgeFilter& bridge_ok = nullptr);

}  // namespace womega
