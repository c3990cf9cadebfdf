#include <sys/wait.h>

#include <cstdio>
#include <fstream>
#include <string>

#include "doctest.h"

#include "gerst/json_io.hpp"

using gerst::Json;

namespace {

struct Run {
  int code = -1;
  std::string out;
};

Run run(const std::string& args, const std::string& env = "") {
  const std::string cmd = env + " " GERST_CLI_PATH " " + args + " 2>&1";
  Run r;
  FILE* pipe = popen(cmd.c_str(), "r");
  REQUIRE(pipe != nullptr);
  char buf[4096];
  std::size_t n;
  while ((n = std::fread(buf, 1, sizeof buf, pipe)) > 0) r.out.append(buf, n);
  const int status = pclose(pipe);
  r.code = WIFEXITED(status) ? WEXITSTATUS(status) : -1;
  return r;
}

std::string data(const std::string& name) { return std::string(GERST_DATA_DIR) + "/" + name; }

std::string temp_file(const std::string& name, const std::string& content) {
  const std::string path = "/tmp/gerst_test_" + name;
  std::ofstream(path) << content;
  return path;
}

std::vector<std::size_t> hh_table(const Json& report) {
  return report["artifacts"]["hh"].get<std::vector<std::size_t>>();
}

const Json* find_check(const Json& report, const std::string& name) {
  for (const auto& c : report["checks"])
    if (c["name"] == name) return &c;
  return nullptr;
}

}  // namespace

TEST_SUITE("cli-report") {
  TEST_CASE("hh dimension tables") {
    const std::pair<const char*, std::vector<std::size_t>> cases[] = {
        {"mat2.json", {1, 0, 0}}, {"dual.json", {2, 1, 1}}, {"one.json", {1, 0, 0}}, {"mat2_dual.json", {2, 1, 1}}};
    for (const auto& [file, dims] : cases) {
      const Run r = run("hh " + data(file) + " --kmax 2");
      CHECK(r.code == 0);
      const Json j = gerst::parse_json(r.out);
      CHECK(hh_table(j) == dims);
      CHECK(j["schema_version"] == gerst::kReportSchemaVersion);
    }
  }

  TEST_CASE("deform with the Moyal element") {
    const Run r = run("--no-times deform " + data("qxp3.json") + " --mc moyal --order 3");
    CHECK(r.code == 0);
    const Json j = gerst::parse_json(r.out);
    const Json* comm = find_check(j, "x*p - p*x = t");
    REQUIRE(comm != nullptr);
    CHECK((*comm)["status"] == "pass");
    CHECK((*comm)["defect"] == "0/1");
    CHECK(j["artifacts"]["star"].size() > 0);
    // The same element read from a file.
    const Run f = run("--no-times deform " + data("qxp3.json") + " --mc " + data("moyal_mc.json") + " --order 3");
    CHECK(f.code == 0);
  }

  TEST_CASE("zero MC element leaves the product alone") {
    const Run r = run("--no-times deform " + data("mat2.json") + " --mc " + data("zero_mc.json") + " --order 3");
    CHECK(r.code == 0);
    const Json j = gerst::parse_json(r.out);
    for (const auto& e : j["artifacts"]["star"]) CHECK(e[4] == 0);
  }

  TEST_CASE("a corrupted MC element fails with a nonzero defect") {
    const Run r = run("--no-times deform " + data("qxp3.json") + " --mc " + data("moyal_flipped_mc.json"));
    const Json j = gerst::parse_json(r.out);
    CHECK(r.code == 2);
    CHECK(j["summary"]["failures"] == 2);
    const Json* assoc = find_check(j, "associativity");
    REQUIRE(assoc != nullptr);
    CHECK((*assoc)["status"] == "fail");
    CHECK((*assoc)["defect"] != "0/1");
    CHECK(assoc->contains("witness"));
    const Json* agree = find_check(j, "associativity defect = delta lambda + 1/2 [lambda, lambda]");
    REQUIRE(agree != nullptr);
    CHECK((*agree)["status"] == "pass");
  }

  TEST_CASE("reports are deterministic") {
    const std::string config = temp_file("small.json", R"({"x_weight_cap": 1, "y_weight_cap": 1})");
    for (const std::string suite : {"commutators", "formula-F", "choices"}) {
      const std::string args = "--no-times verify " + suite + " --config " + config + " --seed 7";
      const Run a = run(args), b = run(args), c = run(args, "GERST_THREADS=1");
      CHECK(a.code == 0);
      CHECK(a.out == b.out);
      CHECK(a.out == c.out);
      const Json j = gerst::parse_json(a.out);
      CHECK(j["seed"] == 7);
      std::vector<std::string> names;
      for (const auto& ch : j["checks"]) names.push_back(ch["name"]);
      CHECK(std::is_sorted(names.begin(), names.end()));
    }
    // Timed reports differ at most in wall-time fields.
    Json t = gerst::parse_json(run("verify dgla-axioms --seed 3").out);
    for (auto& ch : t["checks"]) ch.erase("wall_time_s");
    CHECK(t.dump() == gerst::parse_json(run("--no-times verify dgla-axioms --seed 3").out).dump());
  }

  TEST_CASE("seed and field are echoed") {
    const Json j = gerst::parse_json(run("--no-times --field Fp:10007 verify dgla-axioms --seed 5").out);
    CHECK(j["config"]["field"] == "Fp:10007");
    CHECK(j["config"]["seed"] == 5);
  }

  TEST_CASE("input errors") {
    const Run unknown = run("verify no-such-suite");
    CHECK(unknown.code == 255);
    CHECK(unknown.out.find("unknown suite") != std::string::npos);

    const Run malformed = run("hh " + temp_file("bad.json", "{\"dim\": 2,\n  \"basis\": [\"1\" \"x\"]}"));
    CHECK(malformed.code == 255);
    CHECK(malformed.out.find("line 2") != std::string::npos);

    const Run key = run("verify adiota --config " + temp_file("badkey.json", R"({"colour": 3})"));
    CHECK(key.code == 255);
    CHECK(key.out.find("/colour") != std::string::npos);

    const Run field = run("--field Fp:9 hh " + data("dual.json"));
    CHECK(field.code == 255);
  }

  TEST_CASE("pretty output is a table") {
    const Run r = run("--pretty --no-times hh " + data("dual.json") + " --kmax 1");
    CHECK(r.code == 0);
    CHECK(r.out.find("HH^1") != std::string::npos);
    CHECK(r.out.find("checks passed") != std::string::npos);
  }
}
