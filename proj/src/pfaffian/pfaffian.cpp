#include "eds/pfaffian.hpp"

#include <algorithm>
#include <set>

#include "eds/error.hpp"

namespace eds {

std::vector<Form> PfaffianSystem::with_tau() const {
  std::vector<Form> out = generators;
  if (tau) out.push_back(*tau);
  return out;
}

std::string PfaffianSystem::label(std::size_t i) const {
  if (i < labels.size() && !labels[i].empty()) return labels[i];
  return generators[i].str();
}

PfaffianSystem make_system(std::string name, ChartPtr chart, std::vector<Form> generators,
                           std::optional<Form> tau) {
  for (const auto& g : generators) {
    if (g.chart()) require_same_chart(g.chart(), chart);
    if (g.degree() != 1 && !g.is_zero()) throw Error(ErrorCode::DegreeError, "generators must be one-forms");
  }
  if (tau) require_same_chart(tau->chart(), chart);
  PfaffianSystem s{std::move(name), std::move(chart), std::move(generators), {}, std::move(tau)};
  return s;
}

PfaffianSystem with_generators(const PfaffianSystem& s, std::vector<Form> generators, std::string name) {
  return make_system(name.empty() ? s.name : std::move(name), s.chart, std::move(generators), s.tau);
}

std::vector<Form> independent_generators(const PfaffianSystem& s, const Domain& dom) {
  Echelon e = rref(component_matrix(s.generators, s.dim()), s.dim(), dom);
  if (e.rank() == s.generators.size()) return s.generators;
  return forms_from_rows(s.chart, e.rows);
}

std::size_t rank(const PfaffianSystem& s, const Domain& dom) {
  return span_rank(s.generators, s.chart, dom);
}

namespace {

// Residues of d(theta) modulo the generators, as a matrix with one column per
// generator and one row per 2-form basis element.
Matrix residue_matrix(const std::vector<Form>& gens, const Reducer& red) {
  std::vector<Form> residues;
  std::set<Index> keys;
  for (const auto& g : gens) {
    residues.push_back(red.reduce(ext_d(g)));
    for (const auto& [i, c] : residues.back().terms()) keys.insert(i);
  }
  Matrix m;
  for (const auto& k : keys) {
    Row r;
    for (const auto& res : residues) r.push_back(res.coefficient(k));
    m.push_back(std::move(r));
  }
  return m;
}

}  // namespace

PfaffianSystem derived(const PfaffianSystem& s, const Domain& dom) {
  std::vector<Form> gens = independent_generators(s, dom);
  if (gens.empty()) return with_generators(s, {}, s.name + "'");
  Reducer red(gens, s.chart, dom);
  Matrix m = residue_matrix(gens, red);
  Matrix ker = nullspace(m, gens.size(), dom);
  std::vector<Form> out;
  for (const auto& v : ker) {
    Form f(s.chart, 1);
    for (std::size_t i = 0; i < gens.size(); ++i)
      if (!v[i].is_zero()) f += v[i] * gens[i];
    out.push_back(f);
  }
  if (out.size() == gens.size()) return with_generators(s, gens, s.name + "'");
  return with_generators(s, span_basis(out, s.chart, dom), s.name + "'");
}

DerivedFlag derived_flag(const PfaffianSystem& s, const Domain& dom) {
  DerivedFlag flag;
  PfaffianSystem cur = with_generators(s, independent_generators(s, dom));
  flag.systems.push_back(cur);
  flag.ranks.push_back(cur.generators.size());
  for (;;) {
    PfaffianSystem next = derived(cur, dom);
    std::size_t r = next.generators.size();
    if (r == flag.ranks.back()) break;
    flag.drops.push_back(flag.ranks.back() - r);
    flag.ranks.push_back(r);
    flag.systems.push_back(next);
    cur = std::move(next);
  }
  flag.stabilization = flag.ranks.size() - 1;
  return flag;
}

PfaffianSystem infinite_derived(const PfaffianSystem& s, const Domain& dom) {
  return derived_flag(s, dom).infinite();
}

PfaffianSystem cartan_system(const PfaffianSystem& s, const Domain& dom) {
  std::vector<Form> gens = independent_generators(s, dom);
  if (gens.empty()) return with_generators(s, {}, "C(" + s.name + ")");
  Reducer red(gens, s.chart, dom);
  std::vector<Form> all = gens;
  for (const auto& g : gens) {
    Form r = red.reduce(ext_d(g));
    if (r.is_zero()) continue;
    for (std::size_t j : red.free_columns()) {
      Form c = contract(VectorField::coordinate(s.chart, j), r);
      if (!c.is_zero()) all.push_back(c);
    }
  }
  return with_generators(s, span_basis(all, s.chart, dom), "C(" + s.name + ")");
}

std::size_t cartan_rank(const PfaffianSystem& s, const Domain& dom) {
  return cartan_system(s, dom).generators.size();
}

namespace {

Truth frobenius_of(const std::vector<Form>& forms, const ChartPtr& chart, const Domain& dom) {
  Echelon e = rref(component_matrix(forms, chart->dim()), chart->dim(), dom);
  std::vector<Form> gens = forms;
  if (e.rank() != forms.size()) gens = forms_from_rows(chart, e.rows);
  if (gens.empty()) return Truth::Yes;
  Reducer red(gens, chart, dom);
  Truth out = Truth::Yes;
  for (const auto& g : gens) {
    Truth t = form_is_zero(red.reduce(ext_d(g)), dom);
    if (t == Truth::No) return Truth::No;
    if (t == Truth::Unknown) out = Truth::Unknown;
  }
  return out;
}

void require_tau(const PfaffianSystem& s) {
  if (!s.tau)
    throw Error(ErrorCode::MissingIndependence, "system " + s.name + " has no independence condition");
}

}  // namespace

Truth is_frobenius(const PfaffianSystem& s, const Domain& dom) {
  return frobenius_of(s.generators, s.chart, dom);
}

Truth is_frobenius_with_tau(const PfaffianSystem& s, const Domain& dom) {
  require_tau(s);
  return frobenius_of(s.with_tau(), s.chart, dom);
}

const char* to_string(Check c) {
  switch (c) {
    case Check::Yes: return "yes";
    case Check::No: return "no";
    case Check::Unknown: return "unknown";
    case Check::Unchecked: return "unchecked";
  }
  return "unchecked";
}

Check to_check(Truth t) {
  switch (t) {
    case Truth::Yes: return Check::Yes;
    case Truth::No: return Check::No;
    case Truth::Unknown: return Check::Unknown;
  }
  return Check::Unknown;
}

Truth all_of(std::initializer_list<Truth> ts) {
  Truth out = Truth::Yes;
  for (Truth t : ts) {
    if (t == Truth::No) return Truth::No;
    if (t == Truth::Unknown) out = Truth::Unknown;
  }
  return out;
}

Complement complement(const PfaffianSystem& s, const Domain& dom) {
  require_tau(s);
  std::vector<Form> gens = independent_generators(s, dom);
  Reducer red(gens, s.chart, dom);
  Form t = red.reduce(*s.tau);
  const auto& free = red.free_columns();
  std::optional<std::size_t> col;
  auto time = s.chart->time();
  if (time && !t.coefficient({static_cast<std::uint16_t>(*time)}).is_zero() &&
      std::find(free.begin(), free.end(), *time) != free.end())
    col = *time;
  for (std::size_t j : free) {
    if (col) break;
    Scalar c = t.coefficient({static_cast<std::uint16_t>(j)});
    if (c.is_constant() && !c.is_zero()) col = j;
  }
  for (std::size_t j : free) {
    if (col) break;
    Scalar c = t.coefficient({static_cast<std::uint16_t>(j)});
    if (dom.is_zero(c) != Truth::Yes) col = j;
  }
  if (!col)
    throw Error(ErrorCode::ComplementNotFound, "independence condition lies in the span of " + s.name);
  Complement out;
  out.tau_column = *col;
  for (std::size_t j : free)
    if (j != *col) out.controls.push_back(j);
  return out;
}

std::size_t control_rank(const PfaffianSystem& s, const Domain& dom) {
  require_tau(s);
  std::vector<Form> gens = independent_generators(s, dom);
  if (gens.empty()) return 0;
  // Contract the residues with a vector T having tau(T) = 1 and theta(T) = 0.
  Reducer red(gens, s.chart, dom);
  Form t = red.reduce(*s.tau);
  std::optional<std::size_t> col;
  for (std::size_t j : red.free_columns()) {
    Scalar c = t.coefficient({static_cast<std::uint16_t>(j)});
    if (c.is_constant() && !c.is_zero()) {
      col = j;
      break;
    }
  }
  for (std::size_t j : red.free_columns()) {
    if (col) break;
    Scalar c = t.coefficient({static_cast<std::uint16_t>(j)});
    if (dom.is_zero(c) != Truth::Yes) col = j;
  }
  if (!col) throw Error(ErrorCode::ComplementNotFound, "independence condition lies in " + s.name);
  Scalar tc = t.coefficient({static_cast<std::uint16_t>(*col)});
  VectorField T = VectorField::coordinate(s.chart, *col);
  T.components[*col] = Scalar(1) / tc;
  std::vector<Form> betas{t};
  for (const auto& g : gens) {
    Form r = red.reduce(ext_d(g));
    if (!r.is_zero()) betas.push_back(contract(T, r));
  }
  return span_rank(betas, s.chart, dom) - 1;
}

SystemReport is_system(const PfaffianSystem& s, const Domain& dom) {
  require_tau(s);
  SystemReport rep;
  rep.dim = s.dim();
  rep.cartan_rank = cartan_rank(s, dom);
  rep.no_cauchy_characteristics = rep.cartan_rank == s.dim() ? Check::Yes : Check::No;
  rep.tau_exact = to_check(form_is_zero(ext_d(*s.tau), dom));
  std::vector<Form> gens = independent_generators(s, dom);
  if (in_span(*s.tau, gens, s.chart, dom)) {
    rep.integral_curves = Check::No;
    return rep;
  }
  rep.controls = s.dim() - gens.size() - 1;
  rep.cts = is_frobenius_with_tau(s, dom);
  if (rep.cts != Truth::Yes) return rep;
  rep.control_rank = control_rank(s, dom);
  rep.integral_curves = rep.control_rank == rep.controls ? Check::Yes : Check::Unchecked;
  return rep;
}

CartanClassReport cartan_class(const PfaffianSystem& s, const Domain& dom) {
  CartanClassReport rep;
  std::size_t r = rank(s, dom);
  rep.corank = s.dim() - r;
  if (rep.corank != 2)
    throw Error(ErrorCode::WrongCorank,
                "class is defined for corank 2, " + s.name + " has corank " + std::to_string(rep.corank));
  rep.cartan_corank = cartan_rank(s, dom) - r;
  rep.flag = derived_flag(s, dom);
  const auto& drops = rep.flag.drops;
  auto it = std::find_if(drops.begin(), drops.end(), [](std::size_t d) { return d >= 2; });
  if (it == drops.end()) {
    rep.positive = false;
    rep.value = rep.flag.ranks.back();
    return rep;
  }
  rep.positive = true;
  rep.ell = static_cast<std::size_t>(it - drops.begin());
  rep.value = rep.flag.ranks[rep.ell];
  rep.normal_system = rep.flag.systems[rep.ell == 0 ? 0 : rep.ell - 1];
  return rep;
}

EquivalenceReport verify_tau_equivalence(const SmoothMap& phi, const PfaffianSystem& s,
                                         const PfaffianSystem& target, const Domain& dom,
                                         bool check_tau) {
  require_same_chart(phi.source, s.chart);
  require_same_chart(phi.target, target.chart);
  EquivalenceReport rep;
  rep.tau_checked = check_tau;

  std::vector<Form> pulled;
  for (const auto& g : target.generators) pulled.push_back(simplify(pullback(phi, g), dom));
  rep.systems = span_equal(pulled, s.generators, s.chart, dom) ? Truth::Yes : Truth::No;

  if (check_tau) {
    if (!s.tau || !target.tau)
      throw Error(ErrorCode::MissingIndependence, "both systems need an independence condition");
    rep.tau = form_is_zero(pullback(phi, *target.tau) - *s.tau, dom);
    if (rep.tau == Truth::No)
      rep.notes.push_back("pullback of tau is " + simplify(pullback(phi, *target.tau), dom).str());
  }

  PfaffianSystem ds = derived(s, dom);
  PfaffianSystem dt = derived(target, dom);
  std::vector<Form> dpulled;
  for (const auto& g : dt.generators) dpulled.push_back(simplify(pullback(phi, g), dom));
  rep.derived = span_equal(dpulled, ds.generators, s.chart, dom) ? Truth::Yes : Truth::No;

  if (phi.source->dim() != phi.target->dim()) {
    rep.diffeomorphism = Truth::No;
  } else {
    Matrix jac;
    for (const auto& img : phi.images) {
      Row r;
      for (const auto& n : phi.source->names()) r.push_back(img.diff(n));
      jac.push_back(std::move(r));
    }
    rep.diffeomorphism = rank(jac, phi.source->dim(), dom) == phi.source->dim() ? Truth::Yes : Truth::No;
  }

  rep.verdict = check_tau ? all_of({rep.systems, rep.tau, rep.diffeomorphism})
                          : all_of({rep.systems, rep.diffeomorphism});
  return rep;
}

}  // namespace eds
