#pragma once

#include <map>
#include <optional>
#include <string>
#include <vector>

#include "womega/constructions.hpp"

namespace womega {

// Globular-set maps between the legs of two spans. Unlike omega functors,
// F2∘ρ = ρ∘F1 is not required.
struct PseudoFunctorData {
  std::string name = "F";
  std::shared_ptr<const Span> src, tgt;
  MapPtr f1, f2, f3;
};

Report validate_pseudo_functor(const PseudoFunctorData& f);
PseudoFunctorData identity_pseudo(std::shared_ptr<const Span> s);
// Every omega functor, read as a pseudo-functor.
PseudoFunctorData as_pseudo(const OmegaFunctorData& f, const std::string& name = "F");
PseudoFunctorData compose_pseudo(const PseudoFunctorData& g, const PseudoFunctorData& f);  // g after f

enum class Side { Right, Left };
// Whiskering by an i-cell h of X1. Right: X(a, b) -> X(a, c) for h: b -> c,
// f |-> f ⊙ h. Left: X(c, a) -> X(b, a), f |-> h ⊙ f. `a` must be parallel to
// the matching boundary of h.
PseudoFunctorData theta(std::shared_ptr<const Span> s, const Cell& h, const Cell& a, Side side = Side::Right);

struct CoherenceData {
  std::map<std::pair<int, int>, int> comp;  // (f, g) -> φ: F f ⊙ F g => F(f ⊙ g)
  std::map<int, int> unit;                  // a -> φ: F(id a) => id(F a)
  std::vector<std::string> log;
  std::optional<std::string> failure;
  Report axioms;  // naturality and homomorphism coherence in Y1
  Report proper;  // properness conditions 1-4
};
CoherenceData homomorphism_coherence(const PseudoFunctorData& f);

// Internal equivalences of a finite magma.
enum class EqReason { Identity, Elementary, Composite, QuasiInverse };
struct EqWitness {
  int stratum = -1;  // 0: seed, i >= 1: admitted while building S_i
  EqReason reason = EqReason::Identity;
  int axis = -1;             // Composite: a ⊙_axis b
  int a = -1, b = -1;        // Composite operands; QuasiInverse: g in a
  int h = -1, h2 = -1;       // QuasiInverse witnesses in dimension + 1 (-1: formal identity)
};
struct EquivTable {
  std::shared_ptr<const FiniteMagma> magma;
  std::vector<std::vector<std::optional<EqWitness>>> eq;  // [d][k], d >= 1
  std::vector<std::vector<bool>> elementary;               // [d][k]
  std::vector<std::vector<int>> clique_partner;            // g found by the clique search, or -1
  int rounds = 0;
  bool fixpoint = false;
  bool search_exhausted = false;  // clique search hit its budget somewhere

  bool in_eq(int d, int k) const;
  bool is_elementary(int d, int k) const;
  bool is_contraction(int d, int k) const;
  std::vector<int> members(int d) const;
  std::string describe(int d, int k) const;
};
EquivTable compute_eq(std::shared_ptr<const FiniteMagma> m, int max_rounds = 64);
// Bounded search for a clique witness for the 1-cell f of m; returns the
// partner g or -1. `budget` caps the number of closure computations; when it
// is exhausted `exhausted` is set.
int clique_witness(const FiniteMagma& m, int f, long budget, bool* exhausted = nullptr);

struct TameResult {
  bool tame = false;       // F1(Eq X1) ⊆ Eq Y1
  bool criterion = false;  // F1(Contr X1 ∪ el X1) ⊆ Eq Y1
  std::vector<std::string> evidence;
};
TameResult is_tame(const PseudoFunctorData& f);

struct PiResult {
  std::vector<int> class_of;              // per 0-cell of X1
  std::vector<std::vector<int>> classes;  // sorted members
  bool equivalence_relation = true;       // symmetry and transitivity verified through Eq
};
PiResult pi(const Span& s);
PiResult pi(const EquivTable& t);

PseudoFunctorData restrict_functor(const PseudoFunctorData& f, const Cell& a, const Cell& b);

struct EquivalenceVerdict {
  bool holds = false;
  std::vector<std::string> evidence;  // one line per level checked
};
EquivalenceVerdict is_weak_equivalence(const PseudoFunctorData& f);
EquivalenceVerdict is_omega_equivalence(const PseudoFunctorData& f, const PseudoFunctorData& g);

}  // namespace womega
