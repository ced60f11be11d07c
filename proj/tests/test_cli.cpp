#include "doctest.h"

#include <filesystem>
#include <fstream>
#include <sstream>

#include "eds/cli.hpp"
#include "json.hpp"
#include "support.hpp"

using namespace eds;
using json = nlohmann::json;

namespace {

struct Run {
  int code;
  std::string out, err;
};

Run eds_run(std::vector<std::string> args) {
  std::ostringstream out, err;
  int code = run(args, out, err);
  return {code, out.str(), err.str()};
}

std::string sample(const char* name) { return std::string(EDS_SYSTEMS_DIR) + "/" + name; }

std::string scratch(const std::string& name, const std::string& text) {
  auto p = std::filesystem::temp_directory_path() / name;
  std::ofstream(p) << text;
  return p.string();
}

json run_json(std::vector<std::string> args) {
  args.push_back("--format");
  args.push_back("json");
  return json::parse(eds_run(args).out);
}

}  // namespace

TEST_CASE("derived flag command") {
  json j = run_json({"derived-flag", sample("hilbert_cartan.eds"), "--system", "I"});
  CHECK(j["schema"] == "eds-report/1");
  CHECK(j["ranks"] == json::array({3, 2, 0}));
}

TEST_CASE("relext command") {
  json j = run_json({"relext", sample("brunovsky_chain.eds"), "--base", "I", "--top", "J", "--map", "pi"});
  CHECK(j["extension_length"] == 2);
  CHECK(j["chain"].size() == 3);
  CHECK(j["chain"][1]["description"] == json::array({"I", "th2_1", "th1_2"}));
  CHECK(j["chain"][2]["description"] == json::array({"J"}));
}

TEST_CASE("dynlin command") {
  Run r = eds_run({"dynlin", sample("uv.eds"), "--system", "I", "--max-depth", "4", "--format", "json"});
  CHECK(r.code == 0);
  json j = json::parse(r.out);
  CHECK(j["verdict"] == "LinearizableWithChain");
  CHECK(j["class_upper_bound"] == 2);
  json shallow = run_json({"dynlin", sample("uv.eds"), "--system", "I", "--max-depth", "1"});
  CHECK(shallow["verdict"] == "UnknownUpToDepth");
  CHECK(shallow["class_upper_bound"] == "UnknownUpToDepth(1)");
  CHECK(eds_run({"dynlin", sample("uv.eds"), "--system", "I", "--max-depth", "1"}).code == 2);
  // hints widen the search but do not change the answer
  json hinted = run_json({"dynlin", sample("uv.eds"), "--system", "I", "--hint", "u*v", "--max-depth", "2"});
  CHECK(hinted["verdict"] == "LinearizableWithChain");
  CHECK(hinted["nodes_visited"].get<int>() > j["nodes_visited"].get<int>());
}

TEST_CASE("frobenius yes fragment") {
  std::string f = scratch("eds_cli_frob.eds", "chart x y z; system F { a = d(x); b = d(y); };");
  json j = run_json({"frobenius", f, "--system", "F"});
  CHECK(j["verdict"] == "yes");
}

TEST_CASE("unknown verdicts exit with 2 and name the scalar") {
  std::string f = scratch("eds_cli_unknown.eds",
                          "chart x y z;\nsystem S { a = d(x) + (sin(z)^2 + cos(z)^2 - 1)*z*d(y); };\n");
  Run r = eds_run({"frobenius", f, "--system", "S", "--format", "json"});
  CHECK(r.code == 2);
  json j = json::parse(r.out);
  CHECK(j["verdict"] == "unknown");
  REQUIRE(j["undecided"].size() == 1);
  CHECK(j["undecided"][0] == "-cos(z)^2 - sin(z)^2 + 1");
  // with the relation the question is decided
  Run ok = eds_run({"frobenius", f, "--system", "S", "--assume", "sin(z)^2 + cos(z)^2 = 1"});
  CHECK(ok.code == 0);
}

TEST_CASE("errors exit with 1") {
  std::string bad = scratch("eds_cli_bad.eds", "chart x t;\nsystem I { th = d(w); };\n");
  Run r = eds_run({"check-system", bad, "--system", "I", "--format", "json"});
  CHECK(r.code == 1);
  json j = json::parse(r.out);
  CHECK(j["error"]["code"] == "UnknownCoordinate");
  CHECK(j["error"]["line"] == 2);
  CHECK(eds_run({"no-such-command", sample("uv.eds")}).code == 1);
  CHECK(eds_run({"frobenius", sample("uv.eds"), "--system", "Nope"}).code == 1);
  CHECK(eds_run({"frobenius"}).code == 1);
  Run e = eds_run({"frobenius", sample("uv.eds"), "--system", "Nope"});
  CHECK(e.err.find("UnknownName") != std::string::npos);
}

TEST_CASE("coframing failures are reported, not thrown") {
  Run r = eds_run({"verify-coframing", sample("coframe.eds"), "--coframe", "Cbad", "--format", "json"});
  CHECK(r.code == 0);
  json j = json::parse(r.out);
  CHECK(j["verdict"] == "no");
  CHECK(j["failure"]["code"] == "StructureEquationFailure");
}

TEST_CASE("runs are deterministic") {
  std::vector<std::vector<std::string>> cmds{
      {"sluis-extend", sample("singular.eds"), "--base", "I", "--top", "J", "--map", "pi"},
      {"c-regular", sample("regular_filtration.eds"), "--base", "I", "--top", "J", "--map", "pi"},
      {"dynlin", sample("uv.eds"), "--system", "I"},
      {"verify-equiv", sample("independence.eds"), "--system", "I", "--target", "Ibar", "--map", "phi"},
  };
  for (const auto& c : cmds) {
    Run a = eds_run(c), b = eds_run(c);
    CHECK(a.out == b.out);
    auto cj = c;
    cj.insert(cj.end(), {"--format", "json", "--seed", "7"});
    CHECK(eds_run(cj).out == eds_run(cj).out);
  }
}

TEST_CASE("print command round trips") {
  Run r = eds_run({"print", sample("singular_sluis.eds")});
  CHECK(r.code == 0);
  std::string f = scratch("eds_cli_print.eds", r.out);
  CHECK(eds_run({"print", f}).out == r.out);
}

TEST_CASE("help lists commands") {
  Run r = eds_run({"--help"});
  CHECK(r.code == 0);
  CHECK(r.out.find("verify-coframing") != std::string::npos);
}
