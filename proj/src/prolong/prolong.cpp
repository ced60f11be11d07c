#include "eds/prolong.hpp"

#include <algorithm>
#include <set>

#include "eds/error.hpp"

namespace eds {

std::string FiberNames::next(const Chart& chart, const std::string& base) {
  if (used_ < names_.size()) {
    const std::string& n = names_[used_++];
    if (chart.contains(n)) throw Error(ErrorCode::DuplicateName, "fiber name " + n + " already in use");
    return n;
  }
  return fiber_name(chart, base);
}

const char* to_string(StepKind k) {
  switch (k) {
    case StepKind::Total: return "total";
    case StepKind::Partial: return "partial";
    case StepKind::ByDifferentiation: return "by_differentiation";
    case StepKind::CartanClaimed: return "cartan_claimed";
  }
  return "total";
}

namespace {

void require_tau(const PfaffianSystem& s) {
  if (!s.tau) throw Error(ErrorCode::MissingIndependence, "system " + s.name + " has no independence condition");
}

// The coordinate a scalar consists of, if it is a bare coordinate.
std::optional<std::string> bare_coordinate(const Scalar& f) {
  if (!f.is_polynomial() || f.numerator().size() != 1) return std::nullopt;
  const Term& t = f.numerator().leading_term();
  if (t.coefficient != 1 || t.monomial.factors().size() != 1 || t.monomial.factors()[0].second != 1)
    return std::nullopt;
  Atom a = t.monomial.factors()[0].first;
  if (a->kind != AtomKind::Coordinate) return std::nullopt;
  return a->name;
}

struct Adjoin {
  Form form;          // on the source chart; the new generator is form - lambda * tau
  std::string base;   // naming base
  std::optional<std::size_t> after;  // insert after this source coordinate
};

ProlongationStep adjoin(const PfaffianSystem& s, const std::vector<Adjoin>& items, StepKind kind,
                        FiberNames* names) {
  require_tau(s);
  FiberNames automatic;
  FiberNames& fn = names ? *names : automatic;
  std::vector<std::pair<std::size_t, std::string>> additions;
  std::vector<std::string> all = s.chart->names();
  std::vector<std::string> fibers;
  for (const auto& it : items) {
    std::string n = fn.next(Chart(all), it.base);
    all.push_back(n);
    fibers.push_back(n);
    additions.emplace_back(it.after ? *it.after + 1 : s.chart->dim(), n);
  }
  std::string label = s.chart->label().empty() ? std::string() : s.chart->label() + "'";
  auto chart = std::make_shared<const Chart>(s.chart->with_inserted(additions, label));

  ProlongationStep step;
  step.kind = kind;
  step.source = s;
  step.fibers = fibers;
  std::vector<Form> gens;
  for (const auto& g : s.generators) gens.push_back(transport(g, chart));
  Form tau = transport(*s.tau, chart);
  for (std::size_t k = 0; k < items.size(); ++k) {
    Form f = transport(items[k].form, chart) - Scalar::coordinate(fibers[k]) * tau;
    gens.push_back(f);
    step.adjoined.push_back(f);
  }
  std::string prefix = kind == StepKind::Total ? "pr(" : "P(";
  step.result = make_system(prefix + s.name + ")", chart, gens, tau);
  step.result.labels = s.labels;
  step.result.labels.resize(s.generators.size());
  for (std::size_t k = 0; k < items.size(); ++k) step.result.labels.push_back({});
  step.projection = SmoothMap::projection(chart, s.chart);
  return step;
}

}  // namespace

ProlongationStep adjoin_derivatives(const PfaffianSystem& s, const std::vector<Scalar>& fns,
                                    StepKind kind, const Domain&, FiberNames* names) {
  std::vector<Adjoin> items;
  for (const auto& f : fns) {
    Adjoin a{ext_d(Form::function(s.chart, f)), "y", std::nullopt};
    if (auto c = bare_coordinate(f)) {
      a.base = *c;
      a.after = s.chart->find(*c);
    }
    items.push_back(std::move(a));
  }
  return adjoin(s, items, kind, names);
}

ProlongationStep total_prolongation(const PfaffianSystem& s, const Domain& dom, FiberNames* names) {
  Complement comp = complement(s, dom);
  std::vector<Scalar> fns;
  for (std::size_t j : comp.controls) fns.push_back(Scalar::coordinate(s.chart->name(j)));
  return adjoin_derivatives(s, fns, StepKind::Total, dom, names);
}

PartialProlongation partial_prolongation(const PfaffianSystem& s, const std::vector<Form>& mu,
                                         const Domain& dom, FiberNames* names) {
  require_tau(s);
  std::vector<Form> base = s.with_tau();
  std::size_t r0 = span_rank(base, s.chart, dom);
  std::vector<Form> all = base;
  all.insert(all.end(), mu.begin(), mu.end());
  if (span_rank(all, s.chart, dom) != r0 + mu.size())
    throw Error(ErrorCode::NotIndependent, "adjoined forms are not independent modulo " + s.name + " and tau");
  std::vector<Adjoin> items;
  for (const auto& m : mu) items.push_back({m, "lambda", std::nullopt});
  PartialProlongation out;
  out.step = adjoin(s, items, StepKind::Partial, names);
  out.system = is_system(out.step.result, dom);
  return out;
}

ProlongationStep prolong_by_diff(const PfaffianSystem& s, const std::vector<std::string>& controls,
                                 const Domain& dom, FiberNames* names, bool require_cts) {
  require_tau(s);
  if (require_cts && is_frobenius_with_tau(s, dom) != Truth::Yes)
    throw Error(ErrorCode::NotCTS, "system " + s.name + " is not control-type");
  std::vector<Form> all = s.with_tau();
  std::size_t r0 = span_rank(all, s.chart, dom);
  std::vector<Scalar> fns;
  for (const auto& c : controls) {
    s.chart->index(c);
    all.push_back(Form::d(s.chart, c));
    fns.push_back(Scalar::coordinate(c));
  }
  if (span_rank(all, s.chart, dom) != r0 + controls.size())
    throw Error(ErrorCode::NotIndependent, "selected coordinates are not independent controls of " + s.name);
  return adjoin_derivatives(s, fns, StepKind::ByDifferentiation, dom, names);
}

PfaffianSystem pullback_system(const SmoothMap& pi, const PfaffianSystem& s, const Domain& dom) {
  std::vector<Form> gens;
  for (const auto& g : s.generators) gens.push_back(simplify(pullback(pi, g), dom));
  std::optional<Form> tau;
  if (s.tau) tau = simplify(pullback(pi, *s.tau), dom);
  PfaffianSystem out = make_system(s.name, pi.source, gens, tau);
  out.labels = s.labels;
  return out;
}

HatJ hatJ_rank(const SmoothMap& pi, const PfaffianSystem& top, const PfaffianSystem& base,
               const Domain& dom) {
  PfaffianSystem pulled = pullback_system(pi, base, dom);
  PfaffianSystem cb = pullback_system(pi, cartan_system(base, dom), dom);
  std::vector<Form> common = span_intersection(top.generators, cb.generators, top.chart, dom);
  std::vector<Form> ibase = independent_generators(pulled, dom);
  std::vector<Form> reduced;
  if (ibase.empty()) {
    reduced = common;
  } else {
    Reducer red(ibase, top.chart, dom);
    for (const auto& f : common) {
      Form r = red.reduce(f);
      if (!r.is_zero()) reduced.push_back(r);
    }
  }
  HatJ out;
  out.basis = span_basis(reduced, top.chart, dom);
  out.q = out.basis.size();
  return out;
}

ProlongationCheck check_cartan_prolongation(const SmoothMap& pi, const PfaffianSystem& top,
                                            const PfaffianSystem& base, const Domain& dom) {
  require_same_chart(pi.source, top.chart);
  require_same_chart(pi.target, base.chart);
  ProlongationCheck rep;
  PfaffianSystem pulled = pullback_system(pi, base, dom);
  rep.contains_base = span_contains(top.generators, pulled.generators, top.chart, dom) ? Truth::Yes : Truth::No;
  if (rep.contains_base == Truth::No) rep.reasons.push_back("pullback of the base is not contained in the top system");
  if (top.tau && base.tau) {
    rep.tau_matches = form_is_zero(pullback(pi, *base.tau) - *top.tau, dom);
    if (rep.tau_matches == Truth::No) rep.reasons.push_back("pullback of tau differs from sigma");
  } else {
    rep.tau_matches = Truth::Unknown;
    rep.reasons.push_back("independence condition missing");
  }
  rep.rank_top = rank(top, dom);
  rep.rank_base = rank(base, dom);
  rep.cartan_rank_top = cartan_rank(top, dom);
  rep.cartan_rank_base = cartan_rank(base, dom);
  long drank = static_cast<long>(rep.rank_top) - static_cast<long>(rep.rank_base);
  long ddim = static_cast<long>(rep.cartan_rank_top) - static_cast<long>(rep.cartan_rank_base);
  rep.rank_identity = drank == ddim ? Truth::Yes : Truth::No;
  if (rep.rank_identity == Truth::No)
    rep.reasons.push_back("rank identity violated: rank C(top) - rank C(base) = " +
                          std::to_string(rep.cartan_rank_top) + "-" + std::to_string(rep.cartan_rank_base) +
                          " = " + std::to_string(ddim) + (ddim > drank ? " > " : " < ") +
                          std::to_string(drank) + " = rank(top) - rank(base)");
  rep.controls = rep.cartan_rank_base - rep.rank_base - (base.tau ? 1 : 0);
  rep.hat = hatJ_rank(pi, top, base, dom);
  rep.hat_rank_ok = (rep.hat.q != 0 && rep.hat.q != rep.controls + 1) ? Truth::Yes : Truth::No;
  if (rep.hat_rank_ok == Truth::No)
    rep.reasons.push_back("rank of hat J is " + std::to_string(rep.hat.q));
  rep.verdict = all_of({rep.contains_base, rep.tau_matches, rep.rank_identity, rep.hat_rank_ok});
  return rep;
}

std::vector<std::string> describe(const PfaffianSystem& s, const PfaffianSystem& base_pulled,
                                  const std::string& base_name, const PfaffianSystem& top,
                                  const Domain& dom) {
  std::vector<std::string> items;
  std::vector<Form> cur = base_pulled.generators;
  std::size_t target = rank(s, dom);
  if (target == rank(top, dom) && span_contains(s.generators, top.generators, s.chart, dom)) return {top.name};
  if (!cur.empty()) items.push_back(base_name);
  std::size_t r = span_rank(cur, s.chart, dom);
  for (std::size_t i = 0; i < top.generators.size() && r < target; ++i) {
    const Form& g = top.generators[i];
    if (!in_span(g, s.generators, s.chart, dom)) continue;
    cur.push_back(g);
    std::size_t r2 = span_rank(cur, s.chart, dom);
    if (r2 == r) {
      cur.pop_back();
      continue;
    }
    r = r2;
    items.push_back(top.label(i));
  }
  for (const auto& g : span_basis(s.generators, s.chart, dom)) {
    if (r >= target) break;
    if (in_span(g, cur, s.chart, dom)) continue;
    cur.push_back(g);
    r = span_rank(cur, s.chart, dom);
    items.push_back(g.str());
  }
  return items;
}

RelativeExtensionChain relative_extensions(const SmoothMap& pi, const PfaffianSystem& top,
                                           const PfaffianSystem& base, const Domain& dom) {
  require_same_chart(pi.source, top.chart);
  RelativeExtensionChain chain;
  chain.base = base;
  chain.top = top;
  chain.pi = pi;
  PfaffianSystem pulled = pullback_system(pi, base, dom);
  PfaffianSystem cur = with_generators(top, span_basis(pulled.generators, top.chart, dom), "I0");
  ExtensionStep first;
  first.system = cur;
  first.rank = cur.generators.size();
  first.cartan_rank = cartan_rank(cur, dom);
  first.cts = cur.tau ? is_frobenius_with_tau(cur, dom) : Truth::Unknown;
  first.description = {base.name};
  chain.steps.push_back(first);
  for (std::size_t k = 1; k <= top.dim(); ++k) {
    PfaffianSystem c = cartan_system(cur, dom);
    std::vector<Form> next = span_intersection(c.generators, top.generators, top.chart, dom);
    if (next.size() == cur.generators.size()) break;
    ExtensionStep st;
    st.system = with_generators(top, next, "I" + std::to_string(k));
    st.rank = next.size();
    st.cartan_rank = cartan_rank(st.system, dom);
    const ExtensionStep& prev = chain.steps.back();
    st.jump = st.rank - prev.rank;
    st.cartan_jump = st.cartan_rank - prev.cartan_rank;
    st.rank_condition = st.jump == st.cartan_jump;
    std::size_t prev_controls = prev.cartan_rank - prev.rank - (top.tau ? 1 : 0);
    st.total_shaped = st.jump == prev_controls;
    st.cts = st.system.tau ? is_frobenius_with_tau(st.system, dom) : Truth::Unknown;
    st.description = describe(st.system, pulled, base.name, top, dom);
    cur = st.system;
    chain.steps.push_back(std::move(st));
  }
  chain.length = chain.steps.size() - 1;
  chain.reaches_top = chain.steps.back().rank == rank(top, dom);
  return chain;
}

bool is_simple(const RelativeExtensionChain& chain) {
  std::size_t k = std::min<std::size_t>(1, chain.length);
  return chain.reaches_top && chain.steps[k].rank == chain.steps.back().rank;
}

namespace {

// Systemhood of I_k on the leaf space of its Cartan system.
Check effective_system(const PfaffianSystem& s, const Domain& dom) {
  if (!s.tau) return Check::Unchecked;
  PfaffianSystem c = cartan_system(s, dom);
  if (!in_span(*s.tau, c.generators, s.chart, dom)) return Check::No;
  if (in_span(*s.tau, s.generators, s.chart, dom)) return Check::No;
  if (is_frobenius_with_tau(s, dom) != Truth::Yes) return Check::Unchecked;
  std::size_t m = c.generators.size() - rank(s, dom) - 1;
  return control_rank(s, dom) == m ? Check::Yes : Check::Unchecked;
}

}  // namespace

CRegularReport is_c_regular(const RelativeExtensionChain& chain, const Domain& dom) {
  CRegularReport rep;
  rep.reaches_top = chain.reaches_top ? Truth::Yes : Truth::No;
  if (!chain.reaches_top) rep.reasons.push_back("relative extensions stop before the top system");
  const auto& top = chain.top;
  SmoothMap id = SmoothMap::identity(top.chart);
  std::vector<Truth> all{rep.reaches_top};
  for (std::size_t k = 0; k < chain.steps.size(); ++k) {
    const PfaffianSystem& s = chain.steps[k].system;
    Truth sig = Truth::Unknown;
    if (top.tau) sig = in_span(*top.tau, cartan_system(s, dom).generators, s.chart, dom) ? Truth::Yes : Truth::No;
    rep.sigma_in_cartan.push_back(sig);
    if (sig == Truth::No) rep.reasons.push_back("sigma is not in C(I" + std::to_string(k) + ")");
    all.push_back(sig);
    Check sys = effective_system(s, dom);
    rep.systems.push_back(sys);
    if (sys == Check::No) {
      rep.reasons.push_back("I" + std::to_string(k) + " is not a system");
      all.push_back(Truth::No);
    }
    if (k == 0) continue;
    ProlongationCheck inc = check_cartan_prolongation(id, s, chain.steps[k - 1].system, dom);
    for (const auto& r : inc.reasons)
      rep.reasons.push_back("I" + std::to_string(k - 1) + " in I" + std::to_string(k) + ": " + r);
    all.push_back(inc.verdict);
    rep.inclusions.push_back(std::move(inc));
  }
  Truth v = Truth::Yes;
  for (Truth t : all) {
    if (t == Truth::No) {
      v = Truth::No;
      break;
    }
    if (t == Truth::Unknown) v = Truth::Unknown;
  }
  rep.verdict = v;
  return rep;
}

FiltrationReport check_filtration(const std::vector<PfaffianSystem>& filtration, const Domain& dom) {
  FiltrationReport rep;
  Truth v = Truth::Yes;
  for (std::size_t l = 0; l + 1 < filtration.size(); ++l) {
    const PfaffianSystem& lo = filtration[l];
    const PfaffianSystem& hi = filtration[l + 1];
    SmoothMap id = SmoothMap::identity(hi.chart);
    ProlongationCheck c = check_cartan_prolongation(id, hi, lo, dom);
    RelativeExtensionChain ch = relative_extensions(id, hi, lo, dom);
    Truth simple = is_simple(ch) ? Truth::Yes : Truth::No;
    for (const auto& r : c.reasons) rep.reasons.push_back(lo.name + " in " + hi.name + ": " + r);
    if (simple == Truth::No) rep.reasons.push_back(lo.name + " in " + hi.name + " is not simple");
    v = all_of({v, c.verdict, simple});
    rep.steps.push_back(std::move(c));
    rep.simple.push_back(simple);
  }
  rep.verdict = v;
  return rep;
}

const char* to_string(StepShape s) {
  switch (s) {
    case StepShape::TotalShaped: return "total_shaped";
    case StepShape::RankOne: return "rank_one";
    case StepShape::Violation: return "violation";
  }
  return "violation";
}

Corank3Report verify_corank3_shape(const RelativeExtensionChain& chain, const Domain&) {
  Corank3Report rep;
  const ExtensionStep& b = chain.steps.front();
  rep.corank = b.cartan_rank - b.rank;
  bool ok = rep.corank == 3;
  if (!ok) rep.reasons.push_back("base corank is " + std::to_string(rep.corank) + ", not 3");
  bool seen_rank_one = false;
  for (std::size_t k = 1; k < chain.steps.size(); ++k) {
    const ExtensionStep& st = chain.steps[k];
    StepShape shape = StepShape::Violation;
    std::string why;
    if (!st.rank_condition) {
      why = "rank identity fails (" + std::to_string(st.cartan_jump) + " != " + std::to_string(st.jump) + ")";
    } else if (st.jump == 1) {
      shape = StepShape::RankOne;
      seen_rank_one = true;
    } else if (st.total_shaped) {
      if (seen_rank_one)
        why = "total-shaped step after a rank-1 step";
      else
        shape = StepShape::TotalShaped;
    } else {
      why = "rank jump " + std::to_string(st.jump) + " is neither 1 nor total";
    }
    if (shape == StepShape::Violation) {
      ok = false;
      rep.reasons.push_back("step " + std::to_string(k) + ": " + why);
    }
    rep.shapes.push_back(shape);
  }
  rep.verdict = ok ? Truth::Yes : Truth::No;
  return rep;
}

// ---------------------------------------------------------------- Sluis

namespace {

struct HatCoefficients {
  Matrix du;  // q x m
  Row dt;     // q
};

// Expresses reduced hat-J representatives through pi* du^alpha and pi* dt.
HatCoefficients hat_coefficients(const HatJ& hat, const SluisState& st, const Complement& comp,
                                 const Domain& dom) {
  const PfaffianSystem& base = st.base;
  std::vector<Form> basis;
  for (const auto& g : independent_generators(base, dom)) basis.push_back(pullback(st.pi, g));
  std::size_t offset = basis.size();
  for (std::size_t a : comp.controls) basis.push_back(pullback(st.pi, Form::basis(base.chart, a)));
  basis.push_back(pullback(st.pi, *base.tau));
  HatCoefficients out;
  for (const auto& h : hat.basis) {
    auto c = coordinates_in(basis, h, st.top.chart, dom);
    if (!c) throw Error(ErrorCode::InvalidArgument, "hat J representative " + h.str() + " not expressible");
    out.du.emplace_back(c->begin() + static_cast<std::ptrdiff_t>(offset),
                        c->begin() + static_cast<std::ptrdiff_t>(offset + comp.controls.size()));
    out.dt.push_back(c->back());
  }
  return out;
}

}  // namespace

SluisStage sluis_extend_step(const SluisState& state, const Domain& dom, FiberNames* names,
                             FiberNames* base_names, const std::vector<RenameHint>& hints) {
  require_tau(state.top);
  require_tau(state.base);
  SluisStage stage;
  const PfaffianSystem& base = state.base;
  Complement comp = complement(base, dom);
  const std::size_t m = comp.controls.size();

  stage.hat = hatJ_rank(state.pi, state.top, base, dom);
  const std::size_t q = stage.hat.q;
  if (q == 0) throw Error(ErrorCode::InvalidArgument, "rank of hat J is 0: not a Cartan prolongation");
  HatCoefficients hc = hat_coefficients(stage.hat, state, comp, dom);
  if (q > m || rank(hc.du, m, dom) != q)
    throw Error(ErrorCode::InvalidArgument, "the top system contains the independence condition");

  SluisState cur = state;
  if (q < m) {
    stage.case_two = true;
    Echelon e = rref(hc.du, m, dom);
    for (std::size_t a : e.free_columns()) {
      Scalar f = state.pi.images[comp.controls[a]];
      stage.differentiated.push_back(f);
      std::string label;
      for (const auto& h : hints)
        if (h.expr == f) label = h.name;
      stage.labels.push_back(label);
    }
    // Hint names take precedence; the rest come from the caller's names.
    std::vector<std::string> chosen;
    std::vector<std::string> all = state.top.chart->names();
    for (std::size_t k = 0; k < stage.differentiated.size(); ++k) {
      std::string n = stage.labels[k];
      if (n.empty() || std::find(all.begin(), all.end(), n) != all.end()) {
        auto c = bare_coordinate(stage.differentiated[k]);
        std::string base = c ? *c : "y";
        n = names ? names->next(Chart(all), base) : fiber_name(Chart(all), base);
      }
      all.push_back(n);
      chosen.push_back(n);
    }
    FiberNames local(chosen);
    ProlongationStep step =
        adjoin_derivatives(state.top, stage.differentiated, StepKind::ByDifferentiation, dom, &local);
    stage.adjoined = step.adjoined;
    stage.fibers = step.fibers;
    cur.top = step.result;
    cur.top.name = state.top.name + "'";
    cur.pi = compose(state.pi, step.projection);
    HatJ h2 = hatJ_rank(cur.pi, cur.top, base, dom);
    if (h2.q != m)
      throw Error(ErrorCode::InvalidArgument, "differentiated system is not in Case I (rank hat J = " +
                                                  std::to_string(h2.q) + ")");
    hc = hat_coefficients(h2, cur, comp, dom);
  }

  // Case I: du^alpha - f^alpha dt in J.
  for (std::size_t a = 0; a < m; ++a) {
    Matrix at = transpose(hc.du, m);  // m x q
    Row target(m);
    target[a] = Scalar(1);
    auto c = solve(at, target, hc.du.size(), dom);
    if (!c) throw Error(ErrorCode::InvalidArgument, "cannot isolate du^alpha in hat J");
    Scalar g;
    for (std::size_t mu = 0; mu < c->size(); ++mu) g += (*c)[mu] * hc.dt[mu];
    stage.f.push_back(-g);
  }

  ProlongationStep pr = total_prolongation(base, dom, base_names);
  SmoothMap map;
  map.name = "pi" ;
  map.source = cur.top.chart;
  map.target = pr.result.chart;
  map.kind = MapKind::Submersion;
  for (std::size_t i = 0; i < pr.result.dim(); ++i) {
    const std::string& n = pr.result.chart->name(i);
    auto fi = std::find(pr.fibers.begin(), pr.fibers.end(), n);
    if (fi != pr.fibers.end()) {
      map.images.push_back(stage.f[static_cast<std::size_t>(fi - pr.fibers.begin())]);
    } else {
      map.images.push_back(cur.pi.images[base.chart->index(n)]);
    }
  }
  Matrix jac;
  for (const auto& img : map.images) {
    Row r;
    for (const auto& n : map.source->names()) r.push_back(img.diff(n));
    jac.push_back(std::move(r));
  }
  Echelon je = rref(jac, map.source->dim(), dom);
  if (je.rank() != map.target->dim()) {
    std::string fs;
    for (const auto& f : stage.f) fs += (fs.empty() ? "" : ", ") + f.str();
    throw Error(ErrorCode::NeedsAssumption, "functions f = (" + fs + ") are functionally dependent");
  }
  PfaffianSystem pulled = pullback_system(map, pr.result, dom);
  if (!span_contains(cur.top.generators, pulled.generators, cur.top.chart, dom) ||
      form_is_zero(*pulled.tau - *cur.top.tau, dom) != Truth::Yes)
    throw Error(ErrorCode::InvalidArgument, "constructed map does not pull back the prolonged base into the top");
  stage.isomorphism = map.source->dim() == map.target->dim();
  if (stage.isomorphism) map.kind = MapKind::Diffeomorphism;
  stage.next = {cur.top, pr.result, map};
  return stage;
}

std::vector<SluisStage> sluis_extend(const SmoothMap& pi, const PfaffianSystem& top,
                                     const PfaffianSystem& base, const Domain& dom,
                                     std::size_t max_stages, FiberNames* names, FiberNames* base_names,
                                     const std::vector<RenameHint>& hints) {
  std::vector<SluisStage> out;
  SluisState st{top, base, pi};
  for (std::size_t k = 0; k < max_stages; ++k) {
    out.push_back(sluis_extend_step(st, dom, names, base_names, hints));
    if (out.back().isomorphism) break;
    st = out.back().next;
  }
  return out;
}

}  // namespace eds
