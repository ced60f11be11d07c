#include "doctest.h"

#include <filesystem>

#include "eds/dsl.hpp"
#include "eds/error.hpp"
#include "support.hpp"

using namespace eds;
using namespace eds::testing;

namespace {

// Structural comparison of two documents, independent of the printer.
void check_same(const Document& a, const Document& b) {
  REQUIRE(a.charts.size() == b.charts.size());
  for (std::size_t i = 0; i < a.charts.size(); ++i) {
    CHECK(a.charts[i].first == b.charts[i].first);
    CHECK(a.charts[i].second->names() == b.charts[i].second->names());
  }
  REQUIRE(a.systems.size() == b.systems.size());
  for (std::size_t i = 0; i < a.systems.size(); ++i) {
    const auto& s = a.systems[i];
    const auto& t = b.systems[i];
    CHECK(s.name == t.name);
    CHECK(s.labels == t.labels);
    REQUIRE(s.generators.size() == t.generators.size());
    for (std::size_t k = 0; k < s.generators.size(); ++k)
      CHECK(transport(s.generators[k], t.chart) == t.generators[k]);
    CHECK(s.tau.has_value() == t.tau.has_value());
  }
  REQUIRE(a.maps.size() == b.maps.size());
  for (std::size_t i = 0; i < a.maps.size(); ++i) {
    CHECK(a.maps[i].name == b.maps[i].name);
    CHECK(a.maps[i].images == b.maps[i].images);
  }
  CHECK(a.assumes.size() == b.assumes.size());
  CHECK(a.renames.size() == b.renames.size());
  CHECK(a.coframes.size() == b.coframes.size());
  CHECK(a.filtrations.size() == b.filtrations.size());
}

}  // namespace

TEST_CASE("minimal document") {
  Document d = parse("chart x u t; system I { th = d(x) - u*d(t); } indep d(t);");
  REQUIRE(d.systems.size() == 1);
  const auto& I = d.system("I");
  CHECK(I.generators.size() == 1);
  CHECK(I.tau);
  CHECK(I.chart->names() == std::vector<std::string>{"x", "u", "t"});
  CHECK(I.generators[0] == one_form(I.chart, {{Scalar(1), "x"}, {-var("u"), "t"}}));
}

TEST_CASE("relative extension sample") {
  Document d = load("brunovsky_chain.eds");
  CHECK(d.system("I").generators.size() == 3);
  CHECK(d.system("J").generators.size() == 6);
  // shared chart prefix
  const auto& m = d.system("I").chart->names();
  const auto& n = d.system("J").chart->names();
  CHECK(std::equal(m.begin(), m.begin() + 3, n.begin()));
}

TEST_CASE("undeclared coordinate") {
  try {
    parse("chart x t;\nsystem I { th = d(w); }");
    FAIL("expected an error");
  } catch (const ParseFailure& e) {
    CHECK(e.code() == ErrorCode::UnknownCoordinate);
    CHECK(e.line() == 2);
    CHECK(e.column() == 19);
    CHECK(e.length() == 1);
  }
}

TEST_CASE("syntax errors report expected tokens") {
  try {
    parse("chart x t;\nsystem I { th = d(x) - ; }");
    FAIL("expected an error");
  } catch (const ParseFailure& e) {
    CHECK(e.code() == ErrorCode::ParseError);
    CHECK(e.line() == 2);
    CHECK_FALSE(e.expected().empty());
  }
  CHECK_THROWS_AS(parse("chart x x;"), ParseFailure);
  CHECK_THROWS_AS(parse("chart x; system I { a = d(x); } system I { a = d(x); }"), ParseFailure);
  CHECK_THROWS_AS(parse("chart x; flarp;"), ParseFailure);
}

TEST_CASE("assumptions, maps, renames") {
  Document d = parse(
      "chart A : a b; chart B : x y;\n"
      "assume a - b != 0;\n"
      "assume sin(a)^2 + cos(a)^2 = 1;\n"
      "map phi : A -> B { x = a*b; y = b; }\n"
      "rename z = a + q;\n");
  CHECK(d.assumes.size() == 2);
  CHECK(d.assumptions.items().size() == 2);
  const SmoothMap& phi = d.map("phi");
  CHECK(phi.images[0] == var("a") * var("b"));
  CHECK_THROWS_AS(parse("chart A : a b; chart B : x y; map phi : A -> B { x = a; }"), ParseFailure);
  CHECK(d.renames.size() == 1);
  CHECK(d.renames[0].expr == var("a") + var("q"));
}

TEST_CASE("map defaults to same-named coordinates") {
  Document d = parse("chart A : x y t; chart B : x t; map pi : A -> B {}");
  const SmoothMap& pi = d.map("pi");
  CHECK(pi.images[0] == var("x"));
  CHECK(pi.images[1] == var("t"));
}

TEST_CASE("formal functions and partials") {
  Document d = parse("chart x y; system S { a = D[0](F)(x, y)*d(x) + F(x, y)*d(y); };");
  Scalar F = Scalar::function("F", {var("x"), var("y")});
  const auto& s = d.system("S");
  CHECK(s.generators[0] == one_form(s.chart, {{F.diff("x"), "x"}, {F, "y"}}));
}

TEST_CASE("wedge products in forms") {
  auto c = chart({"x", "y"});
  Form w = parse_form("d(x)^d(y)", c);
  CHECK(w == two_form(c, {{Scalar(1), "x", "y"}}));
  CHECK(parse_form("x*d(y)^d(x)", c) == two_form(c, {{-var("x"), "x", "y"}}));
  CHECK(parse_scalar("x^3 - 2/3*y", c) == var("x").pow(3) - Scalar(mpq_class(2, 3)) * var("y"));
}

TEST_CASE("parse print parse is the identity on every sample") {
  for (const auto& entry : std::filesystem::directory_iterator(EDS_SYSTEMS_DIR)) {
    if (entry.path().extension() != ".eds") continue;
    CAPTURE(entry.path().filename().string());
    Document a = load(entry.path().filename().string());
    std::string printed = print(a);
    Document b = parse(printed);
    check_same(a, b);
    CHECK(print(b) == printed);
  }
}
