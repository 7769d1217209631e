#pragma once

#include <string>
#include <tuple>
#include <vector>

#include "womega/constructions.hpp"

namespace womega::fixtures {

// Omega graphs
OmegaGraph g2();            // two 0-cells 1, 2; nothing else
OmegaGraph gf();            // one 0-cell *, one endomorphism f
OmegaGraph one_two_gen();   // *, f: * -> *, alpha: f => f
OmegaGraph arrow_graph();   // x, y, u: x -> y

// A finite category from its objects, non-identity arrows and the composites
// of non-identity arrows (diagrammatic order: (f, g, h) means f then g is h).
// Identities are named id_<x> and act as units.
using Arrow = std::tuple<std::string, std::string, std::string>;  // name, src, tgt
FiniteMagma category(const std::vector<std::string>& objects, const std::vector<Arrow>& arrows,
                     const std::vector<Arrow>& composites);

FiniteMagma z2m();             // one object, 1-cells e, a, b; a⊙a=b, a⊙b=a, b⊙a=a, b⊙b=b
FiniteMagma ciso();            // x, y, f: x -> y, g: y -> x mutually inverse
FiniteMagma arrow_category();  // x, y, u: x -> y
FiniteMagma discrete2();       // two objects, identities only
FiniteMagma walking_idempotent();  // one object, e with e⊙e = e
FiniteMagma cyclic_group(int n);   // one object, rotations r0..r{n-1}

// Strict 2-category with two objects x, y, 1-cells f, g: x -> y,
// 2-cells alpha: f => g, beta: g => f mutually inverse.
FiniteMagma strict_two_iso();

// One object, 2-cells: identities and one scalar s on id_* with s⊙s = id
// for both compositions (2-tuply monoidal).
FiniteMagma scalar_z2();

// One object, 1-cells e (unit), a, b with a⊙a=b, a⊙b=b, b⊙a=a, b⊙b=a (not
// associative); exactly one 2-cell p=>q for every ordered pair of 1-cells.
FiniteMagma codiscrete();
// X1 = X2 = codiscrete(), X3 terminal, every parallel pair bridged.
Span codiscrete_span();

// One-object bicategory on Z/2 with associator from ω(x,y,z) = xyz.
BicategoryData wb1_bicategory();
// (Z/2)^2 with ω = product of first coordinates.
BicategoryData z2z2_bicategory();

}  // namespace womega::fixtures
