#include "doctest.h"

#include "eds/error.hpp"
#include "eds/prolong.hpp"
#include "support.hpp"

using namespace eds;
using namespace eds::testing;

namespace {

// Same span after matching coordinates by name.
bool same_by_names(const PfaffianSystem& a, const PfaffianSystem& b, const Domain& dom) {
  if (a.chart->dim() != b.chart->dim()) return false;
  auto moved = SmoothMap::projection(a.chart, b.chart);
  return span_equal(a.generators, pullback_system(moved, b, dom).generators, a.chart, dom);
}

std::size_t rank_of(const PfaffianSystem& s) {
  Domain dom;
  return rank(s, dom);
}

}  // namespace

TEST_CASE("total prolongation of a single chain") {
  Domain dom;
  auto c = chart({"x", "u", "t"});
  auto s = make_system("S", c, {one_form(c, {{Scalar(1), "x"}, {-var("u"), "t"}})}, Form::d(c, "t"));
  FiberNames names({"lambda"});
  ProlongationStep p = total_prolongation(s, dom, &names);
  auto n = p.result.chart;
  REQUIRE(n->dim() == 4);
  CHECK(p.fibers == std::vector<std::string>{"lambda"});
  std::vector<Form> expected{one_form(n, {{Scalar(1), "x"}, {-var("u"), "t"}}),
                             one_form(n, {{Scalar(1), "u"}, {-var("lambda"), "t"}})};
  CHECK(span_equal(p.result.generators, expected, n, dom));
  CHECK(p.projection.target->dim() == 3);
}

TEST_CASE("derived system of a total prolongation recovers the base") {
  Domain dom;
  Document doc = load("brunovsky_chain.eds");
  const auto& I = doc.system("I");
  ProlongationStep p = total_prolongation(I, dom);
  PfaffianSystem d = derived(p.result, dom);
  PfaffianSystem pulled = pullback_system(p.projection, I, dom);
  CHECK(span_equal(d.generators, pulled.generators, p.result.chart, dom));
}

TEST_CASE("third total prolongation of the singular base") {
  Domain dom;
  Document doc = load("singular.eds");
  PfaffianSystem s = doc.system("I");
  for (int k = 0; k < 3; ++k) s = total_prolongation(s, dom).result;
  CHECK(s.generators.size() == 8);
  CHECK(s.chart->dim() == 11);
}

TEST_CASE("partial prolongation along every control is the total one") {
  Domain dom;
  Document doc = load("brunovsky_chain.eds");
  const auto& I = doc.system("I");
  auto m = I.chart;
  ProlongationStep tp = total_prolongation(I, dom);
  FiberNames names(tp.fibers);
  PartialProlongation pp = partial_prolongation(I, {Form::d(m, "x1_2"), Form::d(m, "x2_1")}, dom, &names);
  CHECK(same_by_names(pp.step.result, tp.result, dom));
  CHECK(pp.system.accepted());
}

TEST_CASE("partial prolongation that is not control-type") {
  Domain dom;
  Document doc = load("partial_not_cts.eds");
  const auto& I = doc.system("I");
  FiberNames names({"lambda"});
  Form mu = parse_form("d(p1) + p2*d(p3)", I.chart);
  PartialProlongation pp = partial_prolongation(I, {mu}, dom, &names);
  CHECK(pp.system.accepted());
  CHECK(same_by_names(pp.step.result, doc.system("J"), dom));
  CHECK(is_frobenius_with_tau(pp.step.result, dom) == Truth::No);
}

TEST_CASE("partial prolongation can create Cauchy characteristics") {
  Domain dom;
  Document doc = load("cauchychar.eds");
  const auto& I = doc.system("I");
  PartialProlongation pp = partial_prolongation(I, {Form::d(I.chart, "x")}, dom);
  CHECK(pp.system.no_cauchy_characteristics == Check::No);
  CHECK_FALSE(pp.system.accepted());
  // the characteristic directions annihilate dz, d(lambda p + q), dx, dlambda, dt
  auto n = pp.step.result.chart;
  const std::string& lam = pp.step.fibers.at(0);
  Form dlpq = parse_form("d(" + lam + "*p + q)", n);
  std::vector<Form> oracle{Form::d(n, "z"), dlpq, Form::d(n, "x"), Form::d(n, lam), Form::d(n, "t")};
  CHECK(span_equal(cartan_system(pp.step.result, dom).generators, oracle, n, dom));
  CHECK_THROWS_AS(partial_prolongation(I, {Form::d(I.chart, "t")}, dom), Error);
}

TEST_CASE("prolongation by differentiation") {
  Domain dom;
  Document rel = load("brunovsky_chain.eds");
  PfaffianSystem s = rel.system("I");
  FiberNames names({"x1_3", "x2_2", "x1_4"});
  s = prolong_by_diff(s, {"x1_2", "x2_1"}, dom, &names).result;
  s = prolong_by_diff(s, {"x1_3"}, dom, &names).result;
  const auto& J = rel.system("J");
  auto moved = SmoothMap::projection(J.chart, s.chart);
  CHECK(s.chart->dim() == J.chart->dim());
  CHECK(span_equal(pullback_system(moved, s, dom).generators, J.generators, J.chart, dom));

  Document sg = load("singular.eds");
  FiberNames a({"alpha"});
  // J itself is not control-type; differentiating u2 is still well defined
  CHECK_THROWS_AS(prolong_by_diff(sg.system("J"), {"u2"}, dom), Error);
  ProlongationStep p = prolong_by_diff(sg.system("J"), {"u2"}, dom, &a, false);
  auto n1 = p.result.chart;
  CHECK(p.adjoined.size() == 1);
  CHECK(span_equal(p.adjoined, {one_form(n1, {{Scalar(1), "u2"}, {-var("alpha"), "t"}})}, n1, dom));

  ProlongationStep id = prolong_by_diff(sg.system("I"), {}, dom);
  CHECK(id.result.chart->dim() == sg.system("I").chart->dim());
  CHECK(id.adjoined.empty());

  CHECK_THROWS_AS(prolong_by_diff(load("partial_not_cts.eds").system("J"), {"p2"}, dom), Error);
}

TEST_CASE("Cartan prolongation necessary checks") {
  Domain dom;
  Document sg = load("singular.eds");
  ProlongationCheck bad = check_cartan_prolongation(sg.map("pi"), sg.system("I1"), sg.system("I"), dom);
  CHECK(bad.verdict == Truth::No);
  CHECK(bad.rank_identity == Truth::No);
  CHECK(bad.cartan_rank_top - bad.cartan_rank_base == 2);
  CHECK(bad.rank_top - bad.rank_base == 1);
  REQUIRE_FALSE(bad.reasons.empty());
  CHECK(bad.reasons[0].find("rank identity") != std::string::npos);

  Document rc = load("regular_filtration.eds");
  CHECK(check_cartan_prolongation(rc.map("pi"), rc.system("J"), rc.system("I"), dom).verdict == Truth::Yes);

  const auto& I = sg.system("I");
  ProlongationStep tp = total_prolongation(I, dom);
  CHECK(check_cartan_prolongation(tp.projection, tp.result, I, dom).verdict == Truth::Yes);
}

TEST_CASE("hat J ranks") {
  Domain dom;
  Document sg = load("singular.eds");
  HatJ h = hatJ_rank(sg.map("pi"), sg.system("J"), sg.system("I"), dom);
  CHECK(h.q == 1);
  auto n = sg.system("J").chart;
  CHECK(span_equal(h.basis, {parse_form("d(u1) + f*d(u2) - g*d(t)", n)}, n, dom));

  Document lf = load("lifting.eds");
  const auto& J1 = lf.system("J1");
  HatJ h1 = hatJ_rank(SmoothMap::projection(J1.chart, lf.system("I").chart), J1, lf.system("I"), dom);
  CHECK(h1.q == 2);
  auto n1 = J1.chart;
  CHECK(span_equal(h1.basis,
                   {parse_form("d(u) - lambda*mu*d(t)", n1), parse_form("d(v) - mu*d(t)", n1)}, n1, dom));

  const auto& I = sg.system("I");
  ProlongationStep tp = total_prolongation(I, dom);
  CHECK(hatJ_rank(tp.projection, tp.result, I, dom).q == 2);
}

TEST_CASE("relative extensions of the (3,2) chain") {
  Domain dom;
  Document rel = load("brunovsky_chain.eds");
  const auto& J = rel.system("J");
  RelativeExtensionChain ch = relative_extensions(rel.map("pi"), J, rel.system("I"), dom);
  CHECK(ch.length == 2);
  CHECK(ch.reaches_top);
  auto n = J.chart;
  std::vector<Form> i1 = pullback_system(rel.map("pi"), rel.system("I"), dom).generators;
  i1.push_back(parse_form("d(x1_2) - x1_3*d(t)", n));
  i1.push_back(parse_form("d(x2_1) - x2_2*d(t)", n));
  CHECK(span_equal(ch.steps[1].system.generators, i1, n, dom));
  CHECK(span_equal(ch.steps[2].system.generators, J.generators, n, dom));
  CHECK(ch.steps[1].jump == 2);
  CHECK(ch.steps[2].jump == 1);
  CHECK(ch.steps[1].total_shaped);
  CHECK_FALSE(is_simple(ch));
  CHECK(is_c_regular(ch, dom).verdict == Truth::Yes);
  Corank3Report sh = verify_corank3_shape(ch, dom);
  CHECK(sh.verdict == Truth::Yes);
  CHECK(sh.shapes == std::vector<StepShape>{StepShape::TotalShaped, StepShape::RankOne});
  // recomputing the extension at the top reproduces it
  PfaffianSystem cs = cartan_system(ch.steps[2].system, dom);
  CHECK(span_equal(span_intersection(cs.generators, J.generators, n, dom), J.generators, n, dom));
}

TEST_CASE("relative extensions of the singular example") {
  Domain dom;
  Document sg = load("singular.eds");
  RelativeExtensionChain ch = relative_extensions(sg.map("pi"), sg.system("J"), sg.system("I"), dom);
  REQUIRE(ch.steps.size() >= 2);
  CHECK(span_equal(ch.steps[1].system.generators, sg.system("I1").generators, sg.system("J").chart, dom));
  CHECK(ch.steps[0].cartan_rank == 5);
  CHECK(ch.steps[1].cartan_rank == 7);
  CHECK(is_c_regular(ch, dom).verdict == Truth::No);
}

TEST_CASE("regular but not C-regular") {
  Domain dom;
  Document rc = load("regular_filtration.eds");
  RelativeExtensionChain ch = relative_extensions(rc.map("pi"), rc.system("J"), rc.system("I"), dom);
  auto n = rc.system("J").chart;
  std::vector<Form> i1 = rc.system("F0").generators;
  i1.push_back(rc.system("J").generators[3]);
  i1.push_back(rc.system("J").generators[4]);
  CHECK(span_equal(ch.steps[1].system.generators, i1, n, dom));
  CHECK(ch.length == 2);
  CHECK(ch.steps[1].cartan_jump == 3);
  CRegularReport r = is_c_regular(ch, dom);
  CHECK(r.verdict == Truth::No);
  CHECK(verify_corank3_shape(ch, dom).verdict == Truth::No);

  std::vector<PfaffianSystem> f;
  for (const auto& name : rc.filtration("simple").systems) f.push_back(rc.system(name));
  FiltrationReport fr = check_filtration(f, dom);
  CHECK(fr.verdict == Truth::Yes);
  CHECK(fr.steps.size() == 4);
  for (Truth t : fr.simple) CHECK(t == Truth::Yes);
}

TEST_CASE("trivial chain") {
  Domain dom;
  Document rel = load("brunovsky_chain.eds");
  const auto& I = rel.system("I");
  RelativeExtensionChain ch = relative_extensions(SmoothMap::identity(I.chart), I, I, dom);
  CHECK(ch.length == 0);
  CHECK(verify_corank3_shape(ch, dom).verdict == Truth::Yes);
}

TEST_CASE("Sluis extension of the singular example") {
  Document sg = load("singular.eds");
  Domain dom(sg.assumptions);
  FiberNames names({"alpha", "beta", "gamma"});
  auto stages = sluis_extend(sg.map("pi"), sg.system("J"), sg.system("I"), dom, 8, &names);
  REQUIRE(stages.size() == 3);
  CHECK(stages[2].isomorphism);
  Document ref = load("singular_sluis.eds");
  const auto& j3 = stages[2].next.top;
  CHECK(j3.chart->dim() == 11);
  auto n3 = ref.system("J3").chart;
  auto moved = SmoothMap::projection(n3, j3.chart);
  CHECK(span_equal(pullback_system(moved, j3, dom).generators, ref.system("J3").generators, n3, dom));
  for (const auto& s : stages) CHECK(s.hat.q == 1);
  // Case I functions of the last stage are the kappa components of the reference map
  CHECK(stages[2].f[0] == ref.map("phi").images[ref.map("phi").target->index("kappa1")]);
}

TEST_CASE("Sluis extension of the n = 3 example with renames") {
  Document rc = load("regular_filtration.eds");
  Domain dom;
  FiberNames names({"alpha", "beta", "gamma", "xi"});
  auto stages = sluis_extend(rc.map("pi"), rc.system("J"), rc.system("I"), dom, 8, &names, nullptr, rc.renames);
  REQUIRE(stages.size() == 3);
  CHECK(stages.back().isomorphism);
  CHECK(stages[1].fibers == std::vector<std::string>{"zeta", "beta"});
  CHECK(stages.back().next.top.chart->dim() == 16);
}

TEST_CASE("Sluis extension of a total prolongation is immediate") {
  Domain dom;
  Document sg = load("singular.eds");
  const auto& I = sg.system("I");
  ProlongationStep tp = total_prolongation(I, dom);
  auto stages = sluis_extend(tp.projection, tp.result, I, dom, 4);
  REQUIRE(stages.size() == 1);
  CHECK_FALSE(stages[0].case_two);
  CHECK(stages[0].isomorphism);
}

TEST_CASE("Sluis extension with a degenerate lifting set") {
  Document lf = load("lifting.eds");
  Domain dom;
  FiberNames names({"mu"});
  const auto& J = lf.system("J");
  auto stages = sluis_extend(SmoothMap::projection(J.chart, lf.system("I").chart), J, lf.system("I"), dom, 4, &names);
  REQUIRE(stages.size() == 1);
  CHECK(stages[0].case_two);
  REQUIRE(stages[0].f.size() == 2);
  CHECK(stages[0].f[0] == var("lambda") * var("mu"));
  CHECK(stages[0].f[1] == var("mu"));
  CHECK(rank_of(stages[0].next.top) == 4);
}
