#pragma once

#include <string>
#include <vector>

#include "womega/magma.hpp"
#include "womega/term.hpp"

namespace womega {

// A 1-cell of the free strict category: a path of non-identity generators.
struct NfPath {
  std::string src, tgt;
  std::vector<std::string> gens;
  bool operator==(const NfPath&) const = default;
};

// A connected component of a 2-cell's string diagram. Generating 2-cells have
// at most one input and one output wire, so every component is a chain.
// `in` indexes the source path and `out` the target path; -1 when the chain
// starts or ends inside the diagram.
struct NfStrand {
  int in = -1, out = -1;
  std::vector<std::string> chain;  // generators, bottom to top
  bool operator==(const NfStrand&) const = default;
};

// Isotopy class of a planar diagram: strands that cross the whole diagram
// split it into gaps; chains closed at both ends float freely inside their gap
// and are kept as a sorted multiset.
struct NfDiagram {
  NfPath s, t;
  std::vector<NfStrand> through, bottom, top;
  std::vector<std::vector<std::vector<std::string>>> closed;  // closed[gap]
  bool operator==(const NfDiagram&) const = default;
};

// Canonical form of a cell of the free strict omega category on an omega
// graph whose non-identity cells live in dimensions <= 2. Cells of dimension
// above 2 are identities on their 2-dimensional base diagram.
class StrictNF {
 public:
  int dim = 0;
  std::string obj;     // dim 0
  NfPath path;         // dim 1
  NfDiagram diagram;   // dim >= 2

  const std::string& code() const { return code_; }
  bool operator==(const StrictNF& o) const { return dim == o.dim && code_ == o.code_; }
  bool operator!=(const StrictNF& o) const { return !(*this == o); }
  void seal();  // recomputes the canonical code

 private:
  std::string code_;
};

StrictNF nf(const Term& t);
bool strict_eq(const Term& a, const Term& b);
StrictNF nf_boundary(const StrictNF& x, bool source);
StrictNF nf_identity(const StrictNF& x);
StrictNF nf_compose(int i, const StrictNF& a, const StrictNF& b);
// A term whose normal form is x.
Term nf_to_term(const OmegaGraph& g, const StrictNF& x);

Report validate_strict(const FiniteMagma& m);

// Rewriting oracle: connected components of single applications of the
// strict-category laws (associativity, interchange, identity, identity
// interchange) in both directions, through terms of at most `bound` nodes.
enum class Verdict { False, True, Unknown };
const char* to_string(Verdict v);

struct RewriteStep {
  Term result;
  std::string law;
};
// One-step rewrites of t anywhere inside it; results larger than `bound` are
// dropped and reported through `pruned`.
std::vector<RewriteStep> law_rewrites(const Term& t, int bound, bool* pruned = nullptr);

struct OracleResult {
  Verdict verdict = Verdict::Unknown;
  std::size_t explored = 0;
  bool bound_hit = false;
};
OracleResult oracle_eq(const Term& a, const Term& b, int size_bound = 8);

}  // namespace womega
