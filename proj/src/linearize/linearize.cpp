#include "eds/linearize.hpp"

#include <algorithm>
#include <deque>
#include <set>

#include "eds/error.hpp"

namespace eds {

Truth is_cts(const PfaffianSystem& s, const Domain& dom) { return is_frobenius_with_tau(s, dom); }

Truth is_strongly_linear(const PfaffianSystem& s, const Domain& dom) {
  if (!s.tau) throw Error(ErrorCode::MissingIndependence, "system " + s.name + " has no independence condition");
  DerivedFlag flag = derived_flag(s, dom);
  if (!flag.infinite().generators.empty()) return Truth::No;
  Truth out = Truth::Yes;
  for (const auto& sys : flag.systems) {
    Truth t = is_frobenius_with_tau(sys, dom);
    if (t == Truth::No) return Truth::No;
    if (t == Truth::Unknown) out = Truth::Unknown;
  }
  return out;
}

std::vector<std::size_t> brunovsky_indices(const PfaffianSystem& s, const Domain& dom) {
  if (is_strongly_linear(s, dom) != Truth::Yes)
    throw Error(ErrorCode::NotStronglyLinear, "system " + s.name + " is not strongly linear");
  std::vector<std::size_t> d = derived_flag(s, dom).ranks;
  d.push_back(0);
  d.push_back(0);
  // d_k - d_{k+1} counts the chains with r >= k.
  std::vector<std::size_t> out;
  for (std::size_t k = 0; k + 2 < d.size(); ++k) {
    std::size_t here = d[k] - d[k + 1], next = d[k + 1] - d[k + 2];
    for (std::size_t c = next; c < here; ++c) out.push_back(k);
  }
  std::sort(out.rbegin(), out.rend());
  return out;
}

const char* to_string(LinVerdict v) {
  switch (v) {
    case LinVerdict::AlreadyStronglyLinear: return "AlreadyStronglyLinear";
    case LinVerdict::LinearizableWithChain: return "LinearizableWithChain";
    case LinVerdict::UnknownUpToDepth: return "UnknownUpToDepth";
    case LinVerdict::NotCTS: return "NotCTS";
  }
  return "UnknownUpToDepth";
}

namespace {

Truth worst(Truth a, Truth b) {
  if (a == Truth::No || b == Truth::No) return Truth::No;
  if (a == Truth::Unknown || b == Truth::Unknown) return Truth::Unknown;
  return Truth::Yes;
}

}  // namespace

WitnessCheck validate_witness(const SmoothMap& pi, const PfaffianSystem& witness,
                              const PfaffianSystem& base, const Domain& dom) {
  WitnessCheck w;
  w.system = witness;
  for (;;) {
    w.chain = relative_extensions(pi, w.system, base, dom);
    w.reasons.clear();
    w.strongly_linear = is_strongly_linear(w.system, dom);
    CRegularReport creg = is_c_regular(w.chain, dom);
    w.c_regular = creg.verdict;
    w.cts.clear();
    for (const auto& st : w.chain.steps) w.cts.push_back(st.cts);
    bool ones = true;
    for (std::size_t k = 1; k < w.chain.steps.size(); ++k) ones = ones && w.chain.steps[k].jump == 1;
    w.rank_one = ones ? Truth::Yes : Truth::No;

    // A leading rank-2 step followed by rank-1 steps: pass to the first derived system.
    bool leading_two = w.chain.length >= 1 && w.chain.steps[1].jump == 2;
    for (std::size_t k = 2; k < w.chain.steps.size(); ++k) leading_two = leading_two && w.chain.steps[k].jump == 1;
    if (!ones && leading_two && w.chain.reaches_top && w.strongly_linear == Truth::Yes &&
        w.c_regular == Truth::Yes) {
      PfaffianSystem next = derived(w.system, dom);
      PfaffianSystem pulled = pullback_system(pi, base, dom);
      if (span_contains(next.generators, pulled.generators, next.chart, dom) &&
          next.generators.size() < w.system.generators.size()) {
        next.name = w.system.name + "'";
        w.system = next;
        ++w.reductions;
        continue;
      }
      w.reasons.push_back("first derived system of the witness does not contain the base");
    }
    break;
  }
  if (!w.chain.reaches_top) w.reasons.push_back("relative extensions do not reach the witness");
  if (w.strongly_linear != Truth::Yes)
    w.reasons.push_back(std::string("witness strongly linear: ") + to_string(w.strongly_linear));
  if (w.c_regular != Truth::Yes) w.reasons.push_back(std::string("c-regular: ") + to_string(w.c_regular));
  Truth cts = Truth::Yes;
  for (std::size_t k = 0; k < w.cts.size(); ++k) {
    cts = worst(cts, w.cts[k]);
    if (w.cts[k] != Truth::Yes)
      w.reasons.push_back("I" + std::to_string(k) + " control-type: " + to_string(w.cts[k]));
  }
  if (w.rank_one != Truth::Yes) w.reasons.push_back("some relative extension step has rank > 1");
  w.verdict = w.chain.reaches_top ? Truth::Yes : Truth::No;
  w.verdict = worst(worst(worst(w.verdict, w.strongly_linear), worst(w.c_regular, cts)), w.rank_one);
  return w;
}

namespace {

std::string node_key(const PfaffianSystem& s, const Domain& dom) {
  std::vector<std::string> names = s.chart->names();
  std::sort(names.begin(), names.end());
  auto sorted = std::make_shared<const Chart>(names);
  std::vector<Form> gens;
  for (const auto& g : s.generators) gens.push_back(transport(g, sorted));
  std::string key;
  for (const auto& n : names) key += n + ",";
  key += "|";
  for (const auto& g : span_basis(gens, sorted, dom)) key += g.str() + ";";
  return key;
}

bool independent_mod(const PfaffianSystem& s, const Form& f, const Domain& dom) {
  std::vector<Form> all = s.with_tau();
  std::size_t r = span_rank(all, s.chart, dom);
  all.push_back(f);
  return span_rank(all, s.chart, dom) == r + 1;
}

}  // namespace

LinearizationReport dynlin_search(const PfaffianSystem& s, std::size_t max_depth, const Domain& dom,
                                  const std::vector<Scalar>& hints) {
  LinearizationReport rep;
  rep.depth = max_depth;
  if (!s.tau) throw Error(ErrorCode::MissingIndependence, "system " + s.name + " has no independence condition");
  if (is_cts(s, dom) != Truth::Yes) {
    rep.verdict = LinVerdict::NotCTS;
    rep.ledger = dom.ledger();
    return rep;
  }
  if (is_strongly_linear(s, dom) == Truth::Yes) {
    rep.verdict = LinVerdict::AlreadyStronglyLinear;
    rep.depth = 0;
    rep.class_upper_bound = 0;
    rep.brunovsky = brunovsky_indices(s, dom);
    rep.ledger = dom.ledger();
    return rep;
  }

  std::vector<SearchNode> frontier{{s, SmoothMap::identity(s.chart), {}}};
  std::set<std::string> seen{node_key(s, dom)};
  for (std::size_t depth = 1; depth <= max_depth && !frontier.empty(); ++depth) {
    std::vector<SearchNode> next;
    std::vector<std::pair<SearchNode, WitnessCheck>> found;
    for (const auto& node : frontier) {
      std::vector<std::pair<std::string, ProlongationStep>> children;
      Complement comp;
      try {
        comp = complement(node.system, dom);
      } catch (const Error&) {
        continue;
      }
      for (std::size_t c : comp.controls) {
        const std::string& name = node.system.chart->name(c);
        try {
          children.emplace_back(name, prolong_by_diff(node.system, {name}, dom));
        } catch (const Error&) {
        }
      }
      for (const auto& h : hints) {
        bool on_chart = true;
        for (const auto& n : h.coordinates()) on_chart = on_chart && node.system.chart->contains(n);
        if (!on_chart) continue;
        Form dh = ext_d(Form::function(node.system.chart, h));
        if (!independent_mod(node.system, dh, dom)) continue;
        try {
          ProlongationStep st = adjoin_derivatives(node.system, {h}, StepKind::ByDifferentiation, dom);
          if (is_cts(st.result, dom) == Truth::Yes) children.emplace_back(h.str(), std::move(st));
        } catch (const Error&) {
        }
      }
      for (auto& [move, step] : children) {
        ++rep.nodes_visited;
        std::string key = node_key(step.result, dom);
        if (!seen.insert(key).second) continue;
        SearchNode child{step.result, compose(node.pi, step.projection), node.moves};
        child.moves.push_back(move);
        child.system.name = s.name + "[" + std::to_string(depth) + "." + std::to_string(next.size()) + "]";
        if (is_strongly_linear(child.system, dom) == Truth::Yes) {
          WitnessCheck w = validate_witness(child.pi, child.system, s, dom);
          if (w.verdict == Truth::Yes) found.emplace_back(child, std::move(w));
        }
        next.push_back(std::move(child));
      }
    }
    if (!found.empty()) {
      auto best = std::min_element(found.begin(), found.end(), [](const auto& a, const auto& b) {
        return a.second.extension_length() < b.second.extension_length();
      });
      rep.verdict = LinVerdict::LinearizableWithChain;
      rep.depth = depth;
      rep.node = best->first;
      rep.witness = best->second;
      rep.class_upper_bound = best->second.extension_length();
      rep.brunovsky = brunovsky_indices(best->second.system, dom);
      rep.ledger = dom.ledger();
      return rep;
    }
    frontier = std::move(next);
  }
  rep.verdict = LinVerdict::UnknownUpToDepth;
  rep.ledger = dom.ledger();
  return rep;
}

std::optional<std::size_t> class_upper_bound(const PfaffianSystem& s, std::size_t max_depth,
                                             const Domain& dom) {
  return dynlin_search(s, max_depth, dom).class_upper_bound;
}

CoframingReport verify_coframing(const AdaptedCoframing& c, const PfaffianSystem& j, const Domain& dom,
                                 bool report_only) {
  require_same_chart(c.chart, j.chart);
  const std::size_t n = c.theta.size(), K = c.eta.size();
  if (n < 2) throw Error(ErrorCode::InvalidArgument, "an adapted coframing needs at least two theta forms");
  std::vector<Form> all = c.theta;
  all.insert(all.end(), c.eta.begin(), c.eta.end());
  std::vector<Form> te = all;
  all.push_back(c.omega1);
  all.push_back(c.omega2);
  all.push_back(c.sigma);
  CoframingReport rep;
  rep.coframe_rank = span_rank(all, c.chart, dom);
  if (rep.coframe_rank != c.chart->dim() || all.size() != c.chart->dim())
    throw Error(ErrorCode::RankDeficient, "the " + std::to_string(all.size()) + " forms have rank " +
                                              std::to_string(rep.coframe_rank) + " on a chart of dimension " +
                                              std::to_string(c.chart->dim()));
  rep.spans_system = span_equal(te, j.generators, c.chart, dom) ? Truth::Yes : Truth::No;

  auto check = [&](const std::string& name, const Form& x, const Form& rhs, std::size_t mod_eta) {
    std::vector<Form> gens = c.theta;
    gens.insert(gens.end(), c.eta.begin(), c.eta.begin() + static_cast<std::ptrdiff_t>(mod_eta));
    Form r = simplify(mod_reduce(ext_d(x) - rhs, gens, dom), dom);
    rep.residuals.push_back({name, r});
  };
  Form zero(c.chart, 2);
  check("d(theta1) = sigma^omega1", c.theta[0], wedge(c.sigma, c.omega1), 0);
  for (std::size_t a = 1; a + 1 < n; ++a) check("d(theta" + std::to_string(a + 1) + ") = 0", c.theta[a], zero, 0);
  if (K > 0)
    check("d(theta" + std::to_string(n) + ") = sigma^eta1", c.theta[n - 1], wedge(c.sigma, c.eta[0]), 0);
  else
    check("d(theta" + std::to_string(n) + ") = sigma^omega2", c.theta[n - 1], wedge(c.sigma, c.omega2), 0);
  for (std::size_t k = 0; k + 1 < K; ++k)
    check("d(eta" + std::to_string(k + 1) + ") = sigma^eta" + std::to_string(k + 2), c.eta[k],
          wedge(c.sigma, c.eta[k + 1]), k + 1);
  if (K > 0)
    check("d(eta" + std::to_string(K) + ") = sigma^omega2", c.eta[K - 1], wedge(c.sigma, c.omega2), K);

  rep.structure = Truth::Yes;
  for (const auto& r : rep.residuals) {
    Truth z = form_is_zero(r.residual, dom);
    if (z == Truth::No && !report_only)
      throw Error(ErrorCode::StructureEquationFailure, r.equation + " fails, residual " + r.residual.str());
    rep.structure = worst(rep.structure, z);
  }
  PfaffianSystem jj = j;
  if (!jj.tau) jj.tau = c.sigma;
  rep.strongly_linear = is_strongly_linear(jj, dom);
  rep.verdict = worst(worst(rep.spans_system, rep.structure), rep.strongly_linear);
  if (rep.verdict == Truth::Yes) rep.class_upper_bound = K;
  return rep;
}

}  // namespace eds
