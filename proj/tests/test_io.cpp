#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <filesystem>

#include "support.hpp"

using namespace womega;
namespace fx = womega::fixtures;

namespace {

std::string fixture(const std::string& f) { return std::string(WOMEGA_FIXTURES) + "/" + f; }

std::string magma_text(const std::string& name, const FiniteMagma& m) {
  Document d;
  add_magma(d, name, m);
  return serialize(d);
}

std::string graph_text(const std::string& name, const OmegaGraph& g) {
  Document d;
  add_graph(d, name, g);
  return serialize(d);
}

int parse_error_line(const std::string& text) {
  try {
    parse_presentation(text);
  } catch (const ParseError& e) {
    return e.line();
  }
  return -1;
}

}  // namespace

TEST_CASE("serialization is a normal form") {
  int files = 0;
  for (const auto& entry : std::filesystem::directory_iterator(WOMEGA_FIXTURES)) {
    if (entry.path().extension() != ".omg") continue;
    CAPTURE(entry.path().string());
    Document d = load_presentation(entry.path().string());
    std::string once = serialize(d);
    std::string twice = serialize(parse_presentation(once));
    CHECK(once == twice);
    ++files;
  }
  CHECK(files >= 15);
}

TEST_CASE("fixture files hold the library fixtures") {
  const std::vector<std::tuple<std::string, std::string, FiniteMagma>> magmas = {
      {"arrow.omg", "arrow", fx::arrow_category()},
      {"c3.omg", "c3", fx::cyclic_group(3)},
      {"ciso.omg", "ciso", fx::ciso()},
      {"codiscrete.omg", "codiscrete", fx::codiscrete()},
      {"discrete2.omg", "discrete2", fx::discrete2()},
      {"idempotent.omg", "idempotent", fx::walking_idempotent()},
      {"mono2.omg", "mono2", fx::scalar_z2()},
      {"two_iso.omg", "two_iso", fx::strict_two_iso()},
      {"z2m.omg", "z2m", fx::z2m()},
      {"wb1.omg", "wb1", fx::wb1_bicategory().cells},
      {"z2z2.omg", "z2z2", fx::z2z2_bicategory().cells},
  };
  for (const auto& [file, name, m] : magmas) {
    CAPTURE(file);
    Document d = load_presentation(fixture(file));
    CHECK(magma_text(name, *d.magma(name)) == magma_text(name, m));
  }
  const std::vector<std::tuple<std::string, std::string, OmegaGraph>> graphs = {
      {"arrow_graph.omg", "arrow", fx::arrow_graph()},
      {"g2.omg", "g2", fx::g2()},
      {"gf.omg", "gf", fx::gf()},
      {"one_two.omg", "one_two", fx::one_two_gen()},
  };
  for (const auto& [file, name, g] : graphs) {
    CAPTURE(file);
    Document d = load_presentation(fixture(file));
    CHECK(graph_text(name, d.graph(name)) == graph_text(name, g));
  }
}

TEST_CASE("documents build working objects") {
  Document d = load_presentation(fixture("equiv.omg"));
  for (const char* f : {"point", "squash", "include"}) {
    CAPTURE(f);
    CHECK(validate_pseudo_functor(d.functor(f)).ok());
  }
  CHECK(validate_weak_omega_category(*d.span("ciso")).ok());
  // functors share span objects with the document
  CHECK(d.functor("squash").src == d.span("ciso"));

  Document c = load_presentation(fixture("codiscrete.omg"));
  CHECK(validate_weak_omega_category(*c.span("codiscrete")).ok());

  Document w = load_presentation(fixture("wb1.omg"));
  CHECK(validate_bicategory(w.bicategory("wb1")).ok());
}

TEST_CASE("spans and bicategories round trip") {
  Document d;
  add_span(d, fx::codiscrete_span());
  add_bicategory(d, fx::wb1_bicategory());
  Document back = parse_presentation(serialize(d));
  CHECK(serialize(back) == serialize(d));
  CHECK(validate_weak_omega_category(*back.span("codiscrete")).ok());
  BicategoryData b = back.bicategory("wb1");
  CHECK(validate_bicategory(b).ok());
  CHECK(magma_text("wb1", b.cells) == magma_text("wb1", fx::wb1_bicategory().cells));
}

TEST_CASE("parse errors carry line numbers") {
  CHECK(parse_error_line("magma m\ndim 1\ncell 0 x\ncell 0 x\n") == 4);
  CHECK(parse_error_line("graph g\ndim 1\ncell 0 x\ncell 1 u\ndom u x\ncod u y\n") == 6);
  CHECK(parse_error_line("graph g\ndim 1\ncell 0 x\nfrobnicate x\n") == 4);
  CHECK(parse_error_line("bridge a b c\n") == 1);
  CHECK(parse_error_line("graph g\ndim 1\ncell 0 x\ncell 1 u\ndom u x\n") == 1);
  CHECK(parse_error_line("magma m\ndim 1\ncell 0 x\ncell 1 i\ndom i x\ncod i x\nid x -> i\ncomp 1 i i = i\n") == 8);
  CHECK(parse_error_line("span s x1=a x2=b\n") == 1);
  try {
    parse_presentation("graph g\ndim 1\ncell 0 x\nfrobnicate x\n");
  } catch (const ParseError& e) {
    CHECK(std::string(e.what()).find("frobnicate") != std::string::npos);
  }
}

TEST_CASE("dangling references are reported") {
  CHECK(parse_error_line("span s x1=a x2=a x3=a lambda=id rho=id kappa=id r=diag\n") == 1);
  CHECK(parse_error_line("magma a\ndim 0\ncell 0 p\n\nmorphism F a -> a\nmap F p -> q\n") == 6);
  Document d = load_presentation(fixture("ciso.omg"));
  CHECK_THROWS_AS(d.span("nothing"), Error);
  CHECK_THROWS_AS(load_presentation(fixture("no-such-file.omg")), Error);
}
