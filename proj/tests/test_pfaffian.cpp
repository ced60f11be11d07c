#include "doctest.h"

#include "eds/error.hpp"
#include "eds/pfaffian.hpp"
#include "support.hpp"

using namespace eds;
using namespace eds::testing;

namespace {

// Brute-force oracle for the derived system: a combination sum l_i theta^i
// lies in I^(1) iff sum l_i d(theta^i) vanishes mod I. For constant-coefficient
// combinations it is enough to test the residues one by one and pairwise.
bool closed_mod(const Form& th, const PfaffianSystem& s, const Domain& dom) {
  return mod_reduce(ext_d(th), s.generators, dom).is_zero();
}

}  // namespace

TEST_CASE("rank of simple systems") {
  auto c = chart({"x", "y", "u", "v", "t"});
  Domain dom;
  auto s = make_system("S", c, {one_form(c, {{Scalar(1), "x"}, {-var("u"), "t"}}),
                                one_form(c, {{Scalar(1), "y"}, {-var("v"), "t"}})});
  CHECK(rank(s, dom) == 2);
  Form dx = Form::d(c, "x");
  CHECK(rank(make_system("D", c, {dx, Scalar(2) * dx}), dom) == 1);
  CHECK(rank(load("brunovsky_chain.eds").system("I"), dom) == 3);
}

TEST_CASE("derived system of the (3,2) chain") {
  Domain dom;
  Document doc = load("brunovsky_chain.eds");
  const auto& I = doc.system("I");
  PfaffianSystem d1 = derived(I, dom);
  REQUIRE(d1.generators.size() == 1);
  // oracle: only th1_0 is closed modulo I, and it spans the result
  CHECK(closed_mod(I.generators[0], I, dom));
  CHECK_FALSE(closed_mod(I.generators[1], I, dom));
  CHECK_FALSE(closed_mod(I.generators[2], I, dom));
  CHECK_FALSE(closed_mod(I.generators[1] + I.generators[2], I, dom));
  CHECK(span_equal(d1.generators, {I.generators[0]}, I.chart, dom));

  DerivedFlag f = derived_flag(I, dom);
  CHECK(f.ranks == std::vector<std::size_t>{3, 1, 0});
  CHECK(infinite_derived(I, dom).generators.empty());
}

TEST_CASE("derived flag of Hilbert-Cartan") {
  Domain dom;
  Document doc = load("hilbert_cartan.eds");
  const auto& I = doc.system("I");
  PfaffianSystem d1 = derived(I, dom);
  CHECK(d1.generators.size() == 2);
  CHECK(in_span(I.generators[1], d1.generators, I.chart, dom));
  // theta1 - 2q theta3 is the second element: d of it is -2 dq^theta3 = 0 mod I
  Form k = I.generators[0] - Scalar(2) * var("q") * I.generators[2];
  CHECK(closed_mod(k, I, dom));
  CHECK(in_span(k, d1.generators, I.chart, dom));
  CHECK(derived_flag(I, dom).ranks == std::vector<std::size_t>{3, 2, 0});
}

TEST_CASE("Frobenius systems are their own derived system") {
  auto c = chart({"x", "y", "z"});
  Domain dom;
  auto s = make_system("F", c, {Form::d(c, "x"), Form::d(c, "y")});
  CHECK(is_frobenius(s, dom) == Truth::Yes);
  auto f = derived_flag(s, dom);
  CHECK(f.ranks.front() == 2);
  CHECK(f.ranks.back() == 2);
  CHECK(span_equal(f.infinite().generators, s.generators, c, dom));
  auto contact = make_system("C", c, {one_form(c, {{Scalar(1), "y"}, {-var("z"), "x"}})});
  CHECK(is_frobenius(contact, dom) == Truth::No);
}

TEST_CASE("Cartan system of the contact form is everything") {
  auto c = chart({"x", "y", "z"});
  Domain dom;
  auto contact = make_system("C", c, {one_form(c, {{Scalar(1), "y"}, {-var("z"), "x"}})});
  PfaffianSystem cs = cartan_system(contact, dom);
  CHECK(cs.generators.size() == 3);
  CHECK(cartan_rank(contact, dom) == 3);
}

TEST_CASE("Frobenius with tau for the first derived (3,2) system") {
  Domain dom;
  Document doc = load("brunovsky_chain.eds");
  const auto& I = doc.system("I");
  PfaffianSystem d1 = derived(I, dom);
  CHECK(is_frobenius_with_tau(d1, dom) == Truth::Yes);
  auto bare = make_system("B", I.chart, I.generators);
  CHECK_THROWS_AS(is_frobenius_with_tau(bare, dom), Error);
}

TEST_CASE("systemhood checks") {
  Domain dom;
  SystemReport hc = is_system(load("hilbert_cartan.eds").system("I"), dom);
  CHECK(hc.no_cauchy_characteristics == Check::Yes);
  CHECK(hc.tau_exact == Check::Yes);
  CHECK(hc.integral_curves == Check::Yes);
  SystemReport br = is_system(load("brunovsky_chain.eds").system("I"), dom);
  CHECK(br.accepted());
  CHECK(br.control_rank == 2);
  SystemReport cc = is_system(load("cauchychar.eds").system("I"), dom);
  CHECK(cc.integral_curves == Check::Unchecked);
  auto c = chart({"x", "t"});
  CHECK_THROWS_AS(is_system(make_system("S", c, {Form::d(c, "x")}), dom), Error);
}

TEST_CASE("corank two class") {
  Domain dom;
  auto c = chart({"x", "u", "t"});
  auto chain = make_system("S", c, {one_form(c, {{Scalar(1), "x"}, {-var("u"), "t"}})}, Form::d(c, "t"));
  CartanClassReport r0 = cartan_class(chain, dom);
  CHECK_FALSE(r0.positive);
  CHECK(r0.value == 0);

  CartanClassReport hc = cartan_class(load("hilbert_cartan.eds").system("I"), dom);
  CHECK(hc.positive);
  CHECK(hc.value == 2);
  CHECK(hc.ell == 1);
  REQUIRE(hc.normal_system);
  CHECK(hc.normal_system->generators.size() == 3);

  auto f = chart({"x", "y", "z"});
  CartanClassReport fr = cartan_class(make_system("F", f, {Form::d(f, "x")}), dom);
  CHECK_FALSE(fr.positive);
  CHECK(fr.value == 1);

  CHECK_THROWS_AS(cartan_class(load("brunovsky_chain.eds").system("I"), dom), Error);
}

TEST_CASE("tau-equivalence") {
  Domain dom;
  Document doc = load("brunovsky_chain.eds");
  const auto& I = doc.system("I");
  CHECK(verify_tau_equivalence(SmoothMap::identity(I.chart), I, I, dom).verdict == Truth::Yes);

  Document sl = load("singular_sluis.eds");
  Domain adom(sl.assumptions);
  auto r = verify_tau_equivalence(sl.map("phi"), sl.system("J3"), sl.system("pr3I"), adom);
  CHECK(r.verdict == Truth::Yes);
  CHECK(r.diffeomorphism == Truth::Yes);

  Document ic = load("independence.eds");
  Domain idom(ic.assumptions);
  auto e = verify_tau_equivalence(ic.map("phi"), ic.system("I"), ic.system("Ibar"), idom);
  CHECK(e.systems == Truth::Yes);
  CHECK(e.derived == Truth::Yes);
  CHECK(e.tau == Truth::No);
}
