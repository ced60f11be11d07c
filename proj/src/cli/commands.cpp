#include <algorithm>
#include <chrono>
#include <fstream>
#include <functional>
#include <iostream>
#include <map>
#include <sstream>

#include "CLI11.hpp"
#include "eds/cli.hpp"
#include "eds/dsl.hpp"
#include "eds/linearize.hpp"
#include "json.hpp"

namespace eds {

namespace {

using json = nlohmann::ordered_json;

struct Options {
  std::string command, file, format = "text";
  std::string system, base, top, map, target, filtration, witness, coframe, kind = "total";
  std::vector<std::string> hints, names, base_names, controls, mu, assume;
  std::size_t max_depth = 4, stages = 8, order = 1;
  std::uint64_t seed = 0;
  bool no_tau = false, abort_policy = false;
};

const char* str(Truth t) { return to_string(t); }

json forms_json(const std::vector<Form>& fs) {
  json a = json::array();
  for (const auto& f : fs) a.push_back(f.is_zero() ? "0" : f.str());
  return a;
}

json system_json(const PfaffianSystem& s) {
  json j;
  j["name"] = s.name;
  j["chart"] = s.chart->names();
  j["rank"] = s.generators.size();
  j["generators"] = forms_json(s.generators);
  if (s.tau) j["tau"] = s.tau->str();
  return j;
}

json map_json(const SmoothMap& m) {
  json j = json::object();
  for (std::size_t i = 0; i < m.images.size(); ++i) j[m.target->name(i)] = m.images[i].str();
  return j;
}

json check_json(const ProlongationCheck& c) {
  json j;
  j["verdict"] = str(c.verdict);
  j["contains_base"] = str(c.contains_base);
  j["tau_matches"] = str(c.tau_matches);
  j["rank_identity"] = str(c.rank_identity);
  j["hat_rank_ok"] = str(c.hat_rank_ok);
  j["rank_top"] = c.rank_top;
  j["rank_base"] = c.rank_base;
  j["cartan_rank_top"] = c.cartan_rank_top;
  j["cartan_rank_base"] = c.cartan_rank_base;
  j["controls"] = c.controls;
  j["hat_rank"] = c.hat.q;
  j["hat_basis"] = forms_json(c.hat.basis);
  j["reasons"] = c.reasons;
  return j;
}

json chain_json(const RelativeExtensionChain& ch) {
  json steps = json::array();
  for (std::size_t k = 0; k < ch.steps.size(); ++k) {
    const auto& st = ch.steps[k];
    json j;
    j["k"] = k;
    j["rank"] = st.rank;
    j["cartan_rank"] = st.cartan_rank;
    j["jump"] = st.jump;
    j["cartan_jump"] = st.cartan_jump;
    j["rank_condition"] = st.rank_condition;
    j["total_shaped"] = st.total_shaped;
    j["cts"] = str(st.cts);
    j["description"] = st.description;
    j["generators"] = forms_json(st.system.generators);
    steps.push_back(j);
  }
  return steps;
}

json witness_json(const WitnessCheck& w) {
  json j;
  j["verdict"] = str(w.verdict);
  j["system"] = system_json(w.system);
  j["reductions"] = w.reductions;
  j["extension_length"] = w.extension_length();
  j["strongly_linear"] = str(w.strongly_linear);
  j["c_regular"] = str(w.c_regular);
  json cts = json::array();
  for (Truth t : w.cts) cts.push_back(str(t));
  j["cts"] = cts;
  j["rank_one"] = str(w.rank_one);
  j["chain"] = chain_json(w.chain);
  j["reasons"] = w.reasons;
  return j;
}

const std::string& need(const std::string& v, const char* flag) {
  if (v.empty()) throw Error(ErrorCode::InvalidArgument, std::string("missing ") + flag);
  return v;
}

// Map pi from the top chart to the base chart: the named map, else the
// projection forgetting coordinates absent from the base.
SmoothMap map_for(const Document& doc, const Options& o, const PfaffianSystem& top,
                  const PfaffianSystem& base) {
  if (!o.map.empty()) return doc.map(o.map);
  return SmoothMap::projection(top.chart, base.chart);
}

std::vector<std::string> split_list(const std::vector<std::string>& in) {
  std::vector<std::string> out;
  for (const auto& s : in) {
    std::stringstream ss(s);
    std::string item;
    while (std::getline(ss, item, ','))
      if (!item.empty()) out.push_back(item);
  }
  return out;
}

AdaptedCoframing coframing_of(const Document& doc, const CoframeDecl& c) {
  AdaptedCoframing a;
  a.chart = doc.system(c.system).chart;
  bool o1 = false, o2 = false, sg = false;
  for (std::size_t i = 0; i < c.labels.size(); ++i) {
    const std::string& l = c.labels[i];
    if (l.rfind("theta", 0) == 0) {
      a.theta.push_back(c.forms[i]);
    } else if (l.rfind("eta", 0) == 0) {
      a.eta.push_back(c.forms[i]);
    } else if (l == "omega1") {
      a.omega1 = c.forms[i];
      o1 = true;
    } else if (l == "omega2") {
      a.omega2 = c.forms[i];
      o2 = true;
    } else if (l == "sigma") {
      a.sigma = c.forms[i];
      sg = true;
    } else {
      throw Error(ErrorCode::InvalidArgument, "coframe entry '" + l + "' is not theta*, eta*, omega1, omega2 or sigma");
    }
  }
  if (!o1 || !o2 || !sg) throw Error(ErrorCode::InvalidArgument, "coframe " + c.name + " needs omega1, omega2 and sigma");
  return a;
}

using Handler = std::function<json(const Document&, const Options&, const Domain&)>;

json cmd_check_system(const Document& doc, const Options& o, const Domain& dom) {
  const auto& s = doc.system(need(o.system, "--system"));
  SystemReport r = is_system(s, dom);
  json j;
  j["system"] = system_json(s);
  Truth v = r.accepted() ? Truth::Yes : Truth::No;
  if (r.no_cauchy_characteristics == Check::Unknown || r.tau_exact == Check::Unknown ||
      r.integral_curves == Check::Unknown)
    v = Truth::Unknown;
  j["verdict"] = str(v);
  j["no_cauchy_characteristics"] = to_string(r.no_cauchy_characteristics);
  j["tau_exact"] = to_string(r.tau_exact);
  j["integral_curves"] = to_string(r.integral_curves);
  j["cartan_rank"] = r.cartan_rank;
  j["dim"] = r.dim;
  j["cts"] = str(r.cts);
  j["control_rank"] = r.control_rank;
  j["controls"] = r.controls;
  return j;
}

json cmd_frobenius(const Document& doc, const Options& o, const Domain& dom) {
  const auto& s = doc.system(need(o.system, "--system"));
  json j;
  j["system"] = s.name;
  j["verdict"] = str(is_frobenius(s, dom));
  if (s.tau) j["with_tau"] = str(is_frobenius_with_tau(s, dom));
  return j;
}

json cmd_derived_flag(const Document& doc, const Options& o, const Domain& dom) {
  const auto& s = doc.system(need(o.system, "--system"));
  DerivedFlag f = derived_flag(s, dom);
  json j;
  j["system"] = s.name;
  j["ranks"] = f.ranks;
  j["drops"] = f.drops;
  j["stabilization"] = f.stabilization;
  json sys = json::array();
  for (const auto& x : f.systems) sys.push_back(forms_json(x.generators));
  j["flag"] = sys;
  return j;
}

json cmd_cartan_system(const Document& doc, const Options& o, const Domain& dom) {
  const auto& s = doc.system(need(o.system, "--system"));
  PfaffianSystem c = cartan_system(s, dom);
  json j;
  j["system"] = s.name;
  j["rank"] = c.generators.size();
  j["corank"] = c.generators.size() - rank(s, dom);
  j["generators"] = forms_json(c.generators);
  return j;
}

json cmd_cartan_class(const Document& doc, const Options& o, const Domain& dom) {
  const auto& s = doc.system(need(o.system, "--system"));
  CartanClassReport r = cartan_class(s, dom);
  json j;
  j["system"] = s.name;
  j["positive"] = r.positive;
  j["class"] = r.value;
  j["class_zero"] = !r.positive && r.value == 0;
  j["ell"] = r.ell;
  j["ranks"] = r.flag.ranks;
  j["corank"] = r.corank;
  j["cartan_corank"] = r.cartan_corank;
  if (r.normal_system) j["normal_system"] = forms_json(r.normal_system->generators);
  return j;
}

json cmd_cts(const Document& doc, const Options& o, const Domain& dom) {
  const auto& s = doc.system(need(o.system, "--system"));
  json j;
  j["system"] = s.name;
  j["verdict"] = str(is_cts(s, dom));
  return j;
}

json cmd_strongly_linear(const Document& doc, const Options& o, const Domain& dom) {
  const auto& s = doc.system(need(o.system, "--system"));
  json j;
  j["system"] = s.name;
  Truth t = is_strongly_linear(s, dom);
  j["verdict"] = str(t);
  j["ranks"] = derived_flag(s, dom).ranks;
  if (t == Truth::Yes) j["brunovsky"] = brunovsky_indices(s, dom);
  return j;
}

json cmd_prolong(const Document& doc, const Options& o, const Domain& dom) {
  const auto& s = doc.system(need(o.system, "--system"));
  FiberNames names(split_list(o.names));
  json j;
  j["kind"] = o.kind;
  ProlongationStep step;
  if (o.kind == "total") {
    PfaffianSystem cur = s;
    json fibers = json::array();
    for (std::size_t k = 0; k < std::max<std::size_t>(1, o.order); ++k) {
      step = total_prolongation(cur, dom, &names);
      for (const auto& f : step.fibers) fibers.push_back(f);
      cur = step.result;
    }
    j["fibers"] = fibers;
  } else if (o.kind == "partial") {
    std::vector<Form> mu;
    for (const auto& m : o.mu) mu.push_back(parse_form(m, s.chart));
    PartialProlongation p = partial_prolongation(s, mu, dom, &names);
    step = p.step;
    j["fibers"] = step.fibers;
    json sys;
    sys["verdict"] = p.system.accepted() ? "yes" : "no";
    sys["no_cauchy_characteristics"] = to_string(p.system.no_cauchy_characteristics);
    sys["tau_exact"] = to_string(p.system.tau_exact);
    sys["integral_curves"] = to_string(p.system.integral_curves);
    j["system_check"] = sys;
  } else if (o.kind == "diff") {
    step = prolong_by_diff(s, split_list(o.controls), dom, &names);
    j["fibers"] = step.fibers;
  } else {
    throw Error(ErrorCode::InvalidArgument, "--kind must be total, partial or diff");
  }
  j["result"] = system_json(step.result);
  j["adjoined"] = forms_json(step.adjoined);
  return j;
}

json cmd_relext(const Document& doc, const Options& o, const Domain& dom) {
  const auto& base = doc.system(need(o.base, "--base"));
  const auto& top = doc.system(need(o.top, "--top"));
  RelativeExtensionChain ch = relative_extensions(map_for(doc, o, top, base), top, base, dom);
  json j;
  j["base"] = base.name;
  j["top"] = top.name;
  j["extension_length"] = ch.length;
  j["reaches_top"] = ch.reaches_top;
  j["simple"] = is_simple(ch);
  j["chain"] = chain_json(ch);
  return j;
}

json cmd_check_prolongation(const Document& doc, const Options& o, const Domain& dom) {
  const auto& base = doc.system(need(o.base, "--base"));
  const auto& top = doc.system(need(o.top, "--top"));
  json j;
  j["base"] = base.name;
  j["top"] = top.name;
  json c = check_json(check_cartan_prolongation(map_for(doc, o, top, base), top, base, dom));
  for (auto& [k, v] : c.items()) j[k] = v;
  return j;
}

json cmd_sluis(const Document& doc, const Options& o, const Domain& dom) {
  const auto& base = doc.system(need(o.base, "--base"));
  const auto& top = doc.system(need(o.top, "--top"));
  FiberNames names(split_list(o.names)), base_names(split_list(o.base_names));
  auto stages = sluis_extend(map_for(doc, o, top, base), top, base, dom, o.stages, &names, &base_names,
                             doc.renames);
  json j;
  j["base"] = base.name;
  j["top"] = top.name;
  json arr = json::array();
  for (std::size_t k = 0; k < stages.size(); ++k) {
    const auto& s = stages[k];
    json x;
    x["stage"] = k + 1;
    x["hat_rank"] = s.hat.q;
    x["case_two"] = s.case_two;
    json diffs = json::array();
    for (const auto& f : s.differentiated) diffs.push_back(f.str());
    x["differentiated"] = diffs;
    x["fibers"] = s.fibers;
    x["adjoined"] = forms_json(s.adjoined);
    json fs = json::array();
    for (const auto& f : s.f) fs.push_back(f.str());
    x["f"] = fs;
    x["isomorphism"] = s.isomorphism;
    x["top"] = system_json(s.next.top);
    x["base_prolongation"] = system_json(s.next.base);
    x["map"] = map_json(s.next.pi);
    arr.push_back(x);
  }
  j["stages"] = arr;
  j["verdict"] = !stages.empty() && stages.back().isomorphism ? "yes" : "no";
  return j;
}

json cmd_c_regular(const Document& doc, const Options& o, const Domain& dom) {
  json j;
  if (!o.filtration.empty()) {
    const auto& f = doc.filtration(o.filtration);
    std::vector<PfaffianSystem> systems;
    for (const auto& n : f.systems) systems.push_back(doc.system(n));
    FiltrationReport r = check_filtration(systems, dom);
    json steps = json::array();
    for (std::size_t k = 0; k < r.steps.size(); ++k) {
      json s = check_json(r.steps[k]);
      s["lower"] = f.systems[k];
      s["upper"] = f.systems[k + 1];
      s["simple"] = str(r.simple[k]);
      steps.push_back(s);
    }
    json fj;
    fj["name"] = f.name;
    fj["verdict"] = str(r.verdict);
    fj["steps"] = steps;
    fj["reasons"] = r.reasons;
    j["filtration"] = fj;
    if (o.base.empty() && o.top.empty()) {
      j["verdict"] = str(r.verdict);
      return j;
    }
  }
  const auto& base = doc.system(need(o.base, "--base"));
  const auto& top = doc.system(need(o.top, "--top"));
  RelativeExtensionChain ch = relative_extensions(map_for(doc, o, top, base), top, base, dom);
  CRegularReport r = is_c_regular(ch, dom);
  j["base"] = base.name;
  j["top"] = top.name;
  j["verdict"] = str(r.verdict);
  j["reaches_top"] = str(r.reaches_top);
  j["extension_length"] = ch.length;
  json sig = json::array(), sys = json::array(), inc = json::array();
  for (Truth t : r.sigma_in_cartan) sig.push_back(str(t));
  for (Check c : r.systems) sys.push_back(to_string(c));
  for (const auto& c : r.inclusions) inc.push_back(check_json(c));
  j["sigma_in_cartan"] = sig;
  j["systems"] = sys;
  j["inclusions"] = inc;
  j["chain"] = chain_json(ch);
  j["reasons"] = r.reasons;
  return j;
}

json cmd_corank3(const Document& doc, const Options& o, const Domain& dom) {
  const auto& base = doc.system(need(o.base, "--base"));
  const auto& top = doc.system(need(o.top, "--top"));
  RelativeExtensionChain ch = relative_extensions(map_for(doc, o, top, base), top, base, dom);
  Corank3Report r = verify_corank3_shape(ch, dom);
  json j;
  j["base"] = base.name;
  j["top"] = top.name;
  j["verdict"] = str(r.verdict);
  j["corank"] = r.corank;
  json shapes = json::array();
  for (auto s : r.shapes) shapes.push_back(to_string(s));
  j["shapes"] = shapes;
  j["reasons"] = r.reasons;
  return j;
}

json cmd_verify_equiv(const Document& doc, const Options& o, const Domain& dom) {
  const auto& s = doc.system(need(o.system, "--system"));
  const auto& t = doc.system(need(o.target, "--target"));
  const auto& m = doc.map(need(o.map, "--map"));
  EquivalenceReport r = verify_tau_equivalence(m, s, t, dom, !o.no_tau);
  json j;
  j["system"] = s.name;
  j["target"] = t.name;
  j["map"] = m.name;
  j["verdict"] = str(r.verdict);
  j["systems"] = str(r.systems);
  j["tau"] = r.tau_checked ? str(r.tau) : "unchecked";
  j["derived"] = str(r.derived);
  j["diffeomorphism"] = str(r.diffeomorphism);
  j["notes"] = r.notes;
  return j;
}

json cmd_verify_coframing(const Document& doc, const Options& o, const Domain& dom) {
  const auto& c = doc.coframe(need(o.coframe, "--coframe"));
  const auto& s = doc.system(c.system);
  CoframingReport r = verify_coframing(coframing_of(doc, c), s, dom, true);
  json j;
  j["coframe"] = c.name;
  j["system"] = s.name;
  j["verdict"] = str(r.verdict);
  j["coframe_rank"] = r.coframe_rank;
  j["spans_system"] = str(r.spans_system);
  j["structure"] = str(r.structure);
  json res = json::array();
  for (const auto& x : r.residuals) {
    json e;
    e["equation"] = x.equation;
    e["residual"] = x.residual.is_zero() ? "0" : x.residual.str();
    res.push_back(e);
    if (!x.residual.is_zero() && !j.contains("failure")) {
      json f;
      f["code"] = to_string(ErrorCode::StructureEquationFailure);
      f["equation"] = x.equation;
      f["residual"] = x.residual.str();
      j["failure"] = f;
    }
  }
  j["residuals"] = res;
  j["strongly_linear"] = str(r.strongly_linear);
  if (r.class_upper_bound) j["class_upper_bound"] = *r.class_upper_bound;
  return j;
}

json cmd_dynlin(const Document& doc, const Options& o, const Domain& dom) {
  const auto& s = doc.system(need(o.system, "--system"));
  json j;
  j["system"] = s.name;
  if (!o.witness.empty()) {
    const auto& w = doc.system(o.witness);
    WitnessCheck c = validate_witness(map_for(doc, o, w, s), w, s, dom);
    j["verdict"] = c.verdict == Truth::Yes ? "LinearizableWithChain" : str(c.verdict);
    j["witness"] = witness_json(c);
    if (c.verdict == Truth::Yes) j["class_upper_bound"] = c.extension_length();
    return j;
  }
  std::vector<Scalar> hints;
  for (const auto& h : o.hints) hints.push_back(parse_scalar(h, s.chart));
  auto start = std::chrono::steady_clock::now();
  LinearizationReport r = dynlin_search(s, o.max_depth, dom, hints);
  (void)start;
  j["verdict"] = to_string(r.verdict);
  j["max_depth"] = o.max_depth;
  j["depth"] = r.depth;
  j["nodes_visited"] = r.nodes_visited;
  if (r.node) j["moves"] = r.node->moves;
  if (r.witness) j["witness"] = witness_json(*r.witness);
  if (r.class_upper_bound)
    j["class_upper_bound"] = *r.class_upper_bound;
  else
    j["class_upper_bound"] = "UnknownUpToDepth(" + std::to_string(o.max_depth) + ")";
  j["brunovsky"] = r.brunovsky;
  return j;
}

json cmd_print(const Document& doc, const Options&, const Domain&) {
  json j;
  j["document"] = print(doc);
  return j;
}

const std::map<std::string, Handler>& handlers() {
  static const std::map<std::string, Handler> h{
      {"check-system", cmd_check_system},
      {"frobenius", cmd_frobenius},
      {"derived-flag", cmd_derived_flag},
      {"cartan-system", cmd_cartan_system},
      {"cartan-class", cmd_cartan_class},
      {"cts", cmd_cts},
      {"strongly-linear", cmd_strongly_linear},
      {"prolong", cmd_prolong},
      {"relext", cmd_relext},
      {"check-prolongation", cmd_check_prolongation},
      {"sluis-extend", cmd_sluis},
      {"c-regular", cmd_c_regular},
      {"corank3-shape", cmd_corank3},
      {"verify-equiv", cmd_verify_equiv},
      {"verify-coframing", cmd_verify_coframing},
      {"dynlin", cmd_dynlin},
      {"print", cmd_print},
  };
  return h;
}

bool has_unknown(const json& j) {
  if (j.is_string()) {
    const auto& s = j.get_ref<const std::string&>();
    return s == "unknown" || s == "UnknownUpToDepth";
  }
  if (j.is_structured())
    for (const auto& v : j)
      if (has_unknown(v)) return true;
  return false;
}

void render_text(const json& j, std::ostream& out, const std::string& indent) {
  std::size_t idx = 0;
  for (auto it = j.begin(); it != j.end(); ++it, ++idx) {
    const json& v = it.value();
    std::string key = j.is_object() ? it.key() : "[" + std::to_string(idx) + "]";
    if (v.is_object() || (v.is_array() && !v.empty() && v.front().is_structured())) {
      out << indent << key << ":\n";
      render_text(v, out, indent + "  ");
    } else if (v.is_array()) {
      out << indent << key << ": [";
      for (std::size_t i = 0; i < v.size(); ++i) {
        out << (i ? ", " : "");
        if (v[i].is_string())
          out << v[i].get<std::string>();
        else
          out << v[i].dump();
      }
      out << "]\n";
    } else if (v.is_string()) {
      std::string s = v.get<std::string>();
      if (s.find('\n') != std::string::npos) {
        out << indent << key << ":\n" << s;
      } else {
        out << indent << key << ": " << s << "\n";
      }
    } else {
      out << indent << key << ": " << v.dump() << "\n";
    }
  }
}

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error(ErrorCode::InvalidArgument, "cannot read " + path);
  std::stringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  Options o;
  CLI::App app{"Pfaffian systems with independence condition: prolongations and linearization", "eds"};
  app.add_option("command", o.command, "command to run")->required();
  app.add_option("file", o.file, "system description (.eds)")->required();
  app.add_option("--system", o.system, "system name");
  app.add_option("--base", o.base, "base system");
  app.add_option("--top", o.top, "top system");
  app.add_option("--map", o.map, "smooth map (top chart to base chart, or source to target)");
  app.add_option("--target", o.target, "target system for verify-equiv");
  app.add_option("--max-depth", o.max_depth, "dynlin search depth");
  app.add_option("--hint", o.hints, "function to differentiate during dynlin");
  app.add_option("--format", o.format, "text or json")->check(CLI::IsMember({"text", "json"}));
  app.add_option("--seed", o.seed, "seed for randomized zero tests");
  app.add_option("--names", o.names, "fiber coordinate names (comma separated)");
  app.add_option("--base-names", o.base_names, "names for total prolongation coordinates");
  app.add_option("--stages", o.stages, "maximum sluis-extend stages");
  app.add_option("--filtration", o.filtration, "filtration to check stepwise");
  app.add_option("--witness", o.witness, "candidate strongly linear prolongation for dynlin");
  app.add_option("--coframe", o.coframe, "coframing for verify-coframing");
  app.add_option("--kind", o.kind, "prolongation kind: total, partial, diff");
  app.add_option("--order", o.order, "number of total prolongations");
  app.add_option("--controls", o.controls, "control coordinates for prolong --kind diff");
  app.add_option("--mu", o.mu, "one-forms for prolong --kind partial");
  app.add_option("--assume", o.assume, "extra assumption, e.g. 'a - b != 0'");
  app.add_flag("--no-tau", o.no_tau, "verify-equiv: skip the independence condition");
  app.add_flag("--abort-on-unknown", o.abort_policy, "fail instead of assuming undecided pivots nonzero");

  std::vector<std::string> rev(args.rbegin(), args.rend());
  try {
    app.parse(rev);
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    out << "commands:";
    for (const auto& [name, h] : handlers()) out << " " << name;
    out << "\n";
    return 0;
  } catch (const CLI::ParseError& e) {
    err << e.what() << "\n";
    return 1;
  }

  json report;
  report["schema"] = "eds-report/1";
  report["command"] = o.command;
  report["file"] = o.file;
  int code = 0;
  try {
    auto h = handlers().find(o.command);
    if (h == handlers().end()) throw Error(ErrorCode::UnknownName, "unknown command '" + o.command + "'");
    std::string text = read_file(o.file);
    for (const auto& a : o.assume) text += "\nassume " + a + ";";
    Document doc = parse(text);
    Domain dom(doc.assumptions, o.abort_policy ? PivotPolicy::Abort : PivotPolicy::Assume, o.seed);
    json body = h->second(doc, o, dom);
    for (auto& [k, v] : body.items()) report[k] = v;
    json assumptions;
    json user = json::array();
    for (const auto& a : doc.assumes) user.push_back(a.lhs.str() + (a.nonzero ? " != " : " = ") + a.rhs.str());
    assumptions["user"] = user;
    assumptions["pivots"] = dom.ledger();
    report["assumptions"] = assumptions;
    if (has_unknown(body)) report["undecided"] = dom.undecided();
    code = has_unknown(body) ? 2 : 0;
  } catch (const Error& e) {
    json ej;
    ej["code"] = to_string(e.code());
    ej["message"] = e.what();
    if (const auto* pf = dynamic_cast<const ParseFailure*>(&e)) {
      ej["line"] = pf->line();
      ej["column"] = pf->column();
      ej["expected"] = pf->expected();
    }
    if (const auto* ir = dynamic_cast<const IndeterminateRank*>(&e)) ej["scalar"] = ir->scalar();
    report["error"] = ej;
    code = 1;
  }

  if (o.format == "json") {
    out << report.dump(2) << "\n";
  } else if (code == 1) {
    err << "error: " << report["error"]["code"].get<std::string>() << ": "
        << report["error"]["message"].get<std::string>() << "\n";
  } else if (o.command == "print") {
    out << report["document"].get<std::string>();
  } else {
    render_text(report, out, "");
  }
  return code;
}

}  // namespace eds
