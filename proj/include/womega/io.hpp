#pragma once

#include <array>
#include <map>
#include <memory>
#include <string>
#include <vector>

#include "womega/equivalence.hpp"

namespace womega {

// Syntax or dangling-reference error in a presentation document.
class ParseError : public Error {
 public:
  ParseError(int line, const std::string& msg)
      : Error("line " + std::to_string(line) + ": " + msg), line_(line) {}
  int line() const { return line_; }

 private:
  int line_;
};

// Line-based presentation format. Blocks open with a header line and hold
// the directives that follow until the next header:
//
//   graph <name> | magma <name>      dim, cell, id, dom, cod (+ comp for magmas)
//   morphism <F> <src> -> <tgt>      entries are top-level `map <F> <a> -> <b>`
//   relation <R> on <magma>          bridge <a> <b> <c>
//   bicategory <B> on <magma>        assoc <f> <g> <h> = <c>, lunit <f> = <c>, runit <f> = <c>
//   span <S> x1=.. x2=.. x3=.. lambda=.. rho=.. kappa=.. r=..
//   functor <F> <span> -> <span> f1=.. f2=.. f3=..
//
// Cell names are unique inside one graph. `id` may stand for an identity
// morphism and `diag` for the diagonal bridge relation.
struct MorphismDecl {
  std::string src, tgt;
  std::vector<std::pair<std::string, std::string>> entries;
  std::vector<int> entry_lines;
  int line = 0;
};
struct RelationDecl {
  std::string on;
  std::vector<std::array<std::string, 3>> rows;
  int line = 0;
};
struct BicategoryDecl {
  std::string on;
  std::vector<std::pair<std::array<std::string, 3>, std::string>> assoc;
  std::vector<std::pair<std::string, std::string>> lunit, runit;
  int line = 0;
};
struct SpanDecl {
  std::string x1, x2, x3, lambda, rho, kappa, r;
  int line = 0;
};
struct FunctorDecl {
  std::string src, tgt, f1, f2, f3;
  int line = 0;
};

struct Document {
  std::map<std::string, OmegaGraph> graphs;
  std::map<std::string, std::shared_ptr<FiniteMagma>> magmas;
  std::map<std::string, MorphismDecl> morphisms;
  std::map<std::string, RelationDecl> relations;
  std::map<std::string, BicategoryDecl> bicategories;
  std::map<std::string, SpanDecl> spans;
  std::map<std::string, FunctorDecl> functors;

  // Graph of a graph or magma block.
  const OmegaGraph& graph(const std::string& name) const;
  std::shared_ptr<FiniteMagma> magma(const std::string& name) const;
  // The single graph/magma/... of the document when `name` is empty.
  std::string pick(const std::string& kind, const std::string& name) const;

  GraphMorphism morphism(const std::string& name) const;
  std::shared_ptr<const Span> span(const std::string& name) const;
  BicategoryData bicategory(const std::string& name) const;
  PseudoFunctorData functor(const std::string& name) const;

  // Built spans and views are cached so that functors between spans share
  // objects with them.
  mutable std::map<std::string, std::shared_ptr<const Span>> span_cache;
  mutable std::map<std::string, ViewPtr> view_cache;
};

Document parse_presentation(const std::string& text);
Document load_presentation(const std::string& path);
// Normalized text: blocks sorted by kind then name, cells by dimension and
// index, tables in index order.
std::string serialize(const Document& doc);

void add_graph(Document& doc, const std::string& name, const OmegaGraph& g);
void add_magma(Document& doc, const std::string& name, const FiniteMagma& m);
// Adds a finite span (table or identity maps, table or diagonal relation)
// with its magmas, morphisms and relation.
void add_span(Document& doc, const Span& s);
void add_bicategory(Document& doc, const BicategoryData& b);

}  // namespace womega
