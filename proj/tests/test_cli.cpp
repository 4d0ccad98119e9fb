#include <catch_amalgamated.hpp>

#include <cmath>
#include <cstdio>
#include <fstream>
#include <map>
#include <sstream>

#include "omegafract/cli.hpp"
#include "support/fixtures.hpp"

using namespace omegafract;
using namespace fixtures;
using Catch::Matchers::WithinAbs;
using nlohmann::ordered_json;

namespace {

struct Outcome {
  int status;
  std::string text;
  ordered_json doc;
};

Outcome invoke(std::vector<std::string> args, std::map<std::string, std::string> env = {}) {
  std::ostringstream out, err;
  auto lookup = [env](const std::string& name) -> std::optional<std::string> {
    auto it = env.find(name);
    if (it == env.end()) return std::nullopt;
    return it->second;
  };
  const int status = run(args, out, err, lookup);
  Outcome o{status, out.str(), {}};
  o.doc = ordered_json::parse(o.text);
  return o;
}

std::string temp_file(const std::string& name, const std::string& contents) {
  const std::string path = std::string(OMEGAFRACT_BINARY_DIR) + "/" + name;
  std::ofstream(path) << contents;
  return path;
}

}  // namespace

TEST_CASE("dim reports", "[cli]") {
  const Outcome c = invoke({"dim", data_path("cantor.json")});
  REQUIRE(c.status == 0);
  const auto& r = c.doc["result"];
  CHECK_THAT(r["hausdorff"].get<double>(), WithinAbs(0.63093, 1e-5));
  CHECK_THAT(r["box"].get<double>(), WithinAbs(r["hausdorff"].get<double>(), 1e-12));
  CHECK(r["gap"] == false);
  CHECK(r["density"]["somewhere_dense"] == false);
  CHECK(c.doc["command"] == "dim");
  CHECK(c.doc["automaton"]["hash"] == canonical_hash(cantor()));
  CHECK(c.doc["config"]["enumeration_cap"] == kDefaultEnumerationCap);

  const Outcome d = invoke({"dim", data_path("dyadic.json")});
  REQUIRE(d.status == 0);
  CHECK(d.doc["result"]["hausdorff"] == 0.0);
  CHECK_THAT(d.doc["result"]["box"].get<double>(), WithinAbs(1.0, 1e-9));
  CHECK(d.doc["result"]["gap"] == true);
  CHECK(d.doc["result"]["gap_witness"] == "q0");
  CHECK(d.doc["result"]["density"]["dense_interval"] == ordered_json::array({"0/1", "1/1"}));
}

TEST_CASE("measure reports", "[cli]") {
  const Outcome c = invoke({"measure", data_path("cantor.json")});
  REQUIRE(c.status == 0);
  CHECK_THAT(c.doc["result"]["alpha"].get<double>(), WithinAbs(0.63093, 1e-5));
  CHECK_THAT(c.doc["result"]["total"].get<double>(), WithinAbs(1.0, 1e-9));
  CHECK(c.doc["result"]["dimension_consistent"] == true);

  const Outcome d = invoke({"measure", data_path("dyadic_unambiguous.json")});
  REQUIRE(d.status == 0);
  CHECK(d.doc["result"]["total"] == "inf");

  const Outcome amb = invoke({"measure", data_path("dyadic.json")});
  CHECK(amb.status == 2);
  CHECK(amb.doc["error"]["code"] == "ambiguous-input");
  CHECK_FALSE(amb.doc.contains("result"));
}

TEST_CASE("check, entropy, raster and oracle reports", "[cli]") {
  const Outcome chk = invoke({"check", data_path("two_cantors.json")});
  REQUIRE(chk.status == 0);
  CHECK(chk.doc["result"]["unambiguous"] == false);
  CHECK(chk.doc["result"]["ambiguity_witness"] == ordered_json::array());
  CHECK(chk.doc["result"]["deterministic"] == false);

  const Outcome ent = invoke({"entropy", data_path("golden_mean.json")});
  REQUIRE(ent.status == 0);
  CHECK_THAT(ent.doc["result"]["entropy"].get<double>(), WithinAbs(std::log((1 + std::sqrt(5.0)) / 2), 1e-12));
  CHECK(ent.doc["result"]["estimate"]["depth"] == 12);
  CHECK(ent.doc["result"]["prefix_growth"][5] == 13);

  const Outcome ras = invoke({"raster", data_path("cantor.json"), "--depth", "2"});
  REQUIRE(ras.status == 0);
  CHECK(ras.doc["result"]["document"] == "0/1 1/9\n2/9 1/3\n2/3 7/9\n8/9 1/1\n");
  const Outcome pbm = invoke({"raster", data_path("cantor.json"), "--depth", "1", "--format", "pbm"});
  CHECK(pbm.doc["result"]["document"] == "P1\n3 1\n101\n");

  const Outcome ora = invoke({"oracle", data_path("full_interval.json"), "--depths", "2,6"});
  REQUIRE(ora.status == 0);
  CHECK(ora.doc["result"]["table"].size() == 5);
  CHECK(ora.doc["result"]["table"][0]["box_count"] == 4);
  CHECK(ora.doc["result"]["estimate"] == 1.0);
}

TEST_CASE("exit codes", "[cli]") {
  CHECK(invoke({"dim", data_path("cantor.json")}).status == 0);

  const Outcome missing = invoke({"dim", "/nonexistent/automaton.json"});
  CHECK(missing.status == 1);
  CHECK(missing.doc["error"]["code"] == "file-not-found");

  const Outcome bad = invoke({"dim", temp_file("broken.json", "{\"base\": 2,")});
  CHECK(bad.status == 1);
  CHECK(bad.doc["error"]["code"] == "syntax-error");

  const Outcome untrimmed = invoke({"dim", temp_file("untrimmed.json",
                                                     R"({"base": 2, "arity": 1, "states": ["q"], "start": ["q"],
                                                         "accept": ["q"], "transitions": []})")});
  CHECK(untrimmed.status == 2);
  CHECK(untrimmed.doc["error"]["code"] == "not-trim");

  const Outcome unknown = invoke({"frobnicate", data_path("cantor.json")});
  CHECK(unknown.status == 64);
  CHECK(unknown.doc["error"]["code"] == "usage-error");

  CHECK(invoke({"dim", data_path("cantor.json"), "--tol", "nope"}).status == 64);
  CHECK(invoke({"dim", data_path("cantor.json"), "--tol", "1e-15"}).status == 64);
  CHECK(invoke({"oracle", data_path("cantor.json"), "--depths", "5,3"}).status == 64);
  CHECK(invoke({"raster", data_path("cantor.json"), "--format", "svg"}).status == 64);

  const Outcome capped = invoke({"oracle", data_path("full_interval.json"), "--cap", "100"});
  CHECK(capped.status == 2);
  CHECK(capped.doc["error"]["code"] == "cap-exceeded");
}

TEST_CASE("configuration precedence", "[cli]") {
  const std::string file = data_path("cantor.json");
  CHECK(invoke({"dim", file}).doc["config"]["enumeration_cap"] == kDefaultEnumerationCap);
  CHECK(invoke({"dim", file}, {{"OMEGAFRACT_CAP", "5000"}}).doc["config"]["enumeration_cap"] == 5000);
  CHECK(invoke({"dim", file, "--cap", "7000"}, {{"OMEGAFRACT_CAP", "5000"}}).doc["config"]["enumeration_cap"] == 7000);
  CHECK(invoke({"dim", file}, {{"OMEGAFRACT_TOL", "1e-6"}}).doc["config"]["report_tolerance"] == 1e-6);
  CHECK(invoke({"dim", file, "--tol", "1e-3"}, {{"OMEGAFRACT_TOL", "1e-6"}}).doc["config"]["report_tolerance"] == 1e-3);
  CHECK(invoke({"dim", file}, {{"OMEGAFRACT_CAP", "lots"}}).status == 64);
  CHECK(invoke({"dim", file}, {{"OMEGAFRACT_CAP", "3"}}).status == 0);
  CHECK(invoke({"dim", file}, {{"OMEGAFRACT_CAP", "2"}}).status == 64);
}

TEST_CASE("reports are deterministic", "[cli]") {
  for (const std::string& name : bundled_names())
    for (const char* command : {"check", "entropy", "dim", "measure", "raster", "oracle"}) {
      const Outcome a = invoke({command, data_path(name)});
      const Outcome b = invoke({command, data_path(name)});
      CHECK(a.status == b.status);
      CHECK(a.text == b.text);
    }
}

TEST_CASE("pretty output", "[cli]") {
  const Outcome plain = invoke({"dim", data_path("cantor.json")});
  const Outcome pretty = invoke({"dim", data_path("cantor.json"), "--pretty"});
  CHECK(plain.text.find('\n') == plain.text.size() - 1);
  CHECK(pretty.text.find("\n  ") != std::string::npos);
  CHECK(plain.doc == pretty.doc);
}
