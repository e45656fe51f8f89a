// End-to-end checks of the loopfock executable: exit codes, report shapes, config handling.

#include <sys/wait.h>

#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>

#include "doctest.h"
#include "json.hpp"

namespace fs = std::filesystem;
using Json = nlohmann::json;

namespace {

struct Run {
  int code = -1;
  std::string out;
};

std::string cli_path() {
  const char* p = std::getenv("LOOPFOCK_CLI");
  REQUIRE_MESSAGE(p != nullptr, "LOOPFOCK_CLI is not set");
  return p;
}

Run run_cli(const std::string& args) {
  const std::string cmd = "\"" + cli_path() + "\" " + args + " 2>/dev/null";
  Run r;
  FILE* pipe = popen(cmd.c_str(), "r");
  REQUIRE(pipe != nullptr);
  char buf[4096];
  std::size_t got;
  while ((got = fread(buf, 1, sizeof buf, pipe)) > 0) r.out.append(buf, got);
  const int status = pclose(pipe);
  r.code = WIFEXITED(status) ? WEXITSTATUS(status) : -1;
  return r;
}

Run run_cli_stderr(const std::string& args) {
  const std::string cmd = "\"" + cli_path() + "\" " + args + " 2>&1 >/dev/null";
  Run r;
  FILE* pipe = popen(cmd.c_str(), "r");
  REQUIRE(pipe != nullptr);
  char buf[4096];
  std::size_t got;
  while ((got = fread(buf, 1, sizeof buf, pipe)) > 0) r.out.append(buf, got);
  const int status = pclose(pipe);
  r.code = WIFEXITED(status) ? WEXITSTATUS(status) : -1;
  return r;
}

fs::path temp_file(const std::string& name, const std::string& content) {
  const fs::path p = fs::temp_directory_path() / ("loopfock_test_cli_" + name);
  std::ofstream(p, std::ios::binary) << content;
  return p;
}

std::string slurp(const fs::path& p) {
  std::ifstream in(p, std::ios::binary);
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

// Checks the subset of JSON Schema used by docs/report.schema.json:
// type, enum, required, properties, items.
bool type_matches(const Json& v, const std::string& t) {
  if (t == "object") return v.is_object();
  if (t == "array") return v.is_array();
  if (t == "string") return v.is_string();
  if (t == "integer") return v.is_number_integer();
  if (t == "number") return v.is_number();
  if (t == "boolean") return v.is_boolean();
  if (t == "null") return v.is_null();
  return false;
}

void check_schema(const Json& v, const Json& s, const std::string& where) {
  if (s.contains("type")) {
    bool ok = false;
    if (s["type"].is_array()) {
      for (const auto& t : s["type"]) ok = ok || type_matches(v, t.get<std::string>());
    } else {
      ok = type_matches(v, s["type"].get<std::string>());
    }
    CHECK_MESSAGE(ok, where << " has wrong type");
    if (!ok) return;
  }
  if (s.contains("enum")) {
    bool found = false;
    for (const auto& e : s["enum"]) found = found || e == v;
    CHECK_MESSAGE(found, where << " not in enum");
  }
  if (s.contains("required")) {
    for (const auto& key : s["required"]) {
      CHECK_MESSAGE(v.contains(key.get<std::string>()), where << " lacks " << key);
    }
  }
  if (s.contains("properties")) {
    for (const auto& [key, sub] : s["properties"].items()) {
      if (v.contains(key)) check_schema(v[key], sub, where + "." + key);
    }
  }
  if (s.contains("items")) {
    for (std::size_t i = 0; i < v.size(); ++i) check_schema(v[i], s["items"], where + "[" + std::to_string(i) + "]");
  }
}

const char* kFastSuites = "--suite kfixed,snf,chevalley";

}  // namespace

TEST_CASE("verify exits 0 when every case passes") {
  const Run r = run_cli(std::string("verify ") + kFastSuites + " --format json");
  CHECK(r.code == 0);
  const Json j = Json::parse(r.out);
  CHECK(j["summary"]["failed"] == 0);
  CHECK(j["summary"]["total"].get<int>() == j["cases"].size());
}

TEST_CASE("configuration errors exit 2") {
  CHECK(run_cli("verify --suite nosuch").code == 2);
  CHECK(run_cli("verify --suite ,").code == 2);
  CHECK(run_cli("verify --suite kfixed --n 9").code == 2);
  CHECK(run_cli("verify --suite kfixed --depth 3 --window 5").code == 2);
  CHECK(run_cli("verify --suite kfixed --format yaml").code == 2);
  CHECK(run_cli("verify --suite kfixed --bogus-flag").code == 2);
  CHECK(run_cli("frobnicate").code == 2);
}

TEST_CASE("empty suite list in a config file exits 2") {
  const fs::path cfg = temp_file("empty.json", R"({"suites": []})");
  CHECK(run_cli("verify --config " + cfg.string()).code == 2);
}

TEST_CASE("runtime failures exit 1") {
  const std::string singular = R"('{"n":2,"T":null,"entries":[[[[0,"1"]],[[0,"1"]]],[[[0,"1"]],[[0,"1"]]]]}')";
  CHECK(run_cli("decompose --matrix " + singular).code == 1);
}

TEST_CASE("json report conforms to the schema") {
  const Json schema = Json::parse(slurp(fs::path(LOOPFOCK_SOURCE_DIR) / "docs" / "report.schema.json"));
  const Run r = run_cli(std::string("verify ") + kFastSuites + ",semigroup --format json");
  REQUIRE(r.code == 0);
  const Json j = Json::parse(r.out);
  check_schema(j, schema, "report");
  // Only exact cases on truncated Fock vectors carry a stability flag.
  for (const auto& c : j["cases"]) {
    if (c["provenance"] == "numeric" || c["suite"] == "semigroup" || c["suite"] == "snf") {
      CHECK(c["stable_at_D_plus_2"].is_null());
    } else {
      CHECK(c["stable_at_D_plus_2"] == true);
    }
  }
  // Round trip through the serializer leaves the document unchanged.
  CHECK(Json::parse(j.dump()) == j);
}

TEST_CASE("reruns are byte identical in every format") {
  for (const char* fmt : {"json", "csv", "text"}) {
    const std::string args = std::string("verify ") + kFastSuites + " --seed 5 --format " + fmt;
    const Run a = run_cli(args);
    const Run b = run_cli(args);
    CHECK(a.code == 0);
    CHECK(a.out == b.out);
  }
}

TEST_CASE("csv has a header and one row per case") {
  const Run j = run_cli(std::string("verify ") + kFastSuites + " --format json");
  const Run c = run_cli(std::string("verify ") + kFastSuites + " --format csv");
  REQUIRE(c.code == 0);
  std::istringstream in(c.out);
  std::string line;
  std::getline(in, line);
  CHECK(line == "suite,id,provenance,residual,tolerance,stable_at_D_plus_2,pass");
  std::size_t rows = 0;
  while (std::getline(in, line)) ++rows;
  CHECK(rows == Json::parse(j.out)["cases"].size());
}

TEST_CASE("text report shows the weight table and levels") {
  const Run r = run_cli("verify --suite levels --format text");
  CHECK(r.code == 0);
  CHECK(r.out.find("Highest weight pairings") != std::string::npos);
  CHECK(r.out.find("<Lambda_k, K> = -1") != std::string::npos);
  CHECK(r.out.find("Measured levels") != std::string::npos);
}

TEST_CASE("config file keys apply and flags override them") {
  const fs::path cfg = temp_file("cfg.json", R"({"suites": ["kfixed"], "seed": 3, "probes": 7, "format": "json"})");
  Run r = run_cli("verify --config " + cfg.string());
  REQUIRE(r.code == 0);
  Json j = Json::parse(r.out);
  CHECK(j["config"]["seed"] == 3);
  CHECK(j["config"]["probes"] == 7);
  r = run_cli("verify --config " + cfg.string() + " --seed 11");
  REQUIRE(r.code == 0);
  j = Json::parse(r.out);
  CHECK(j["config"]["seed"] == 11);
  CHECK(j["config"]["probes"] == 7);
}

TEST_CASE("json syntax errors report their line") {
  const fs::path cfg = temp_file("bad.json", "{\n  \"suites\": [\"kfixed\"],\n  \"seed\": ,\n}\n");
  const Run r = run_cli_stderr("verify --config " + cfg.string());
  CHECK(r.code == 2);
  CHECK(r.out.find("line 3") != std::string::npos);
}

TEST_CASE("out writes the report to a file") {
  const fs::path out = fs::temp_directory_path() / "loopfock_test_cli_out.csv";
  fs::remove(out);
  const Run r = run_cli("verify --suite kfixed --format csv --out " + out.string());
  CHECK(r.code == 0);
  CHECK(r.out.empty());
  CHECK(slurp(out).rfind("suite,id,", 0) == 0);
}

TEST_CASE("decompose returns the Smith data") {
  // diag(t, 2 + t^2): invariant exponents 0 and 1, quotient of dimension 1.
  const std::string m = R"('{"n":2,"T":null,"entries":[[[[1,"1"]],[]],[[],[[0,"2"],[2,"1"]]]]}')";
  const Run r = run_cli("decompose --matrix " + m);
  REQUIRE(r.code == 0);
  const Json j = Json::parse(r.out);
  CHECK(j["k"] == Json::array({0, 1}));
  CHECK(j["dim_V"] == 1);
  CHECK(j["basis_V"].size() == 1);
  const fs::path f = temp_file("m.json", m.substr(1, m.size() - 2));
  CHECK(run_cli("decompose --matrix @" + f.string()).out == r.out);
}

TEST_CASE("compute emits the tables") {
  const Run r = run_cli("compute --format json");
  REQUIRE(r.code == 0);
  const Json j = Json::parse(r.out);
  CHECK(j["dual_level"] == "-1");
  CHECK(!j["weights"].empty());
  CHECK(!j["cocycles"].empty());
}
