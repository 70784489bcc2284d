#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <sys/wait.h>

#include <cstdio>
#include <filesystem>
#include <fstream>
#include <set>
#include <string>

#include <json.hpp>

namespace fs = std::filesystem;
using Json = nlohmann::json;

namespace {

struct Run {
  int status = -1;
  std::string out;
};

Run run(const std::string& args) {
  const std::string cmd = std::string(ACCAUSE_BIN) + " " + args + " 2>/dev/null";
  Run r;
  FILE* p = popen(cmd.c_str(), "r");
  REQUIRE(p != nullptr);
  char buf[4096];
  for (std::size_t n; (n = fread(buf, 1, sizeof buf, p)) > 0;) r.out.append(buf, n);
  const int st = pclose(p);
  r.status = WIFEXITED(st) ? WEXITSTATUS(st) : -1;
  return r;
}

fs::path scratch() {
  const fs::path d = fs::temp_directory_path() / "accause_cli_test";
  fs::create_directories(d);
  return d;
}

std::set<std::set<std::string>> cause_names(const Json& causes) {
  std::set<std::set<std::string>> out;
  for (const Json& c : causes) {
    std::set<std::string> names;
    for (const auto& [name, value] : c.at("cause").items()) names.insert(name);
    out.insert(names);
  }
  return out;
}

}  // namespace

TEST_CASE("identify on rock-throwing") {
  const Run r = run("identify --builtin rock-throwing --seed 1");
  REQUIRE(r.status == 0);
  const Json j = Json::parse(r.out);
  CHECK(cause_names(j["causes"]) == std::set<std::set<std::string>>{{"ST"}, {"SH"}});
  CHECK(j["seed"] == 1);
  CHECK_FALSE(j.contains("runtime_s"));
  CHECK(j["stats"]["oracle_calls"].get<int>() > 0);
}

TEST_CASE("ISI on the three-attacker reference context") {
  const Run r = run("identify --builtin smk:3 --algorithm isi --seed 0");
  REQUIRE(r.status == 0);
  const Json j = Json::parse(r.out);
  CHECK(cause_names(j["causes"]) == std::set<std::set<std::string>>{
                                        {"DK"}, {"DK2"}, {"GP2"}, {"GK2"}, {"FS2", "FN2"}, {"FF2", "FDB2"}});
}

TEST_CASE("same seed, same bytes") {
  const std::string args = "identify --builtin smk-noisy:2 --context-seed 4 --beam 3 --stochastic lucb --seed 11";
  const Run a = run(args);
  const Run b = run(args);
  REQUIRE(a.status == 0);
  CHECK(a.out == b.out);
}

TEST_CASE("exact agrees with unbounded beam") {
  const std::string sys = "--builtin smk:2 --context-seed 3 --context-index 2";
  const Run e = run("exact " + sys + " --max-size 4");
  const Run i = run("identify " + sys + " --beam -1 --max-steps 4 --seed 0");
  REQUIRE(e.status == 0);
  REQUIRE(i.status == 0);
  const Json je = Json::parse(e.out);
  CHECK(je["method"] == "enumeration");
  CHECK(cause_names(je["causes"]) == cause_names(Json::parse(i.out)["causes"]));
}

TEST_CASE("reference metrics") {
  const fs::path ref = scratch() / "ref.json";
  std::ofstream(ref) << R"([["ST"], ["SH"], ["BT"]])";
  const Run r = run("identify --builtin rock-throwing --seed 1 --reference " + ref.string());
  REQUIRE(r.status == 0);
  const Json m = Json::parse(r.out)["metrics"];
  CHECK(m["precision"] == 1.0);
  CHECK(m["recall"].get<double>() == doctest::Approx(2.0 / 3));
}

TEST_CASE("gen round trip") {
  const fs::path scm = scratch() / "rt.json";
  const fs::path ctx = scratch() / "ctx.json";
  REQUIRE(run("gen --builtin rock-throwing -o " + scm.string()).status == 0);
  std::ofstream(ctx) << R"({"st": true, "bt": true})";
  const Run r = run("identify --scm " + scm.string() + " --context " + ctx.string() + " --seed 1");
  REQUIRE(r.status == 0);
  CHECK(cause_names(Json::parse(r.out)["causes"]) == std::set<std::set<std::string>>{{"ST"}, {"SH"}});
}

TEST_CASE("bench writes the documented files") {
  const fs::path dir = scratch() / "bench";
  const fs::path grid = scratch() / "grid.json";
  fs::remove_all(dir);
  std::ofstream(grid) << R"({"scm": "smk", "attackers": [2], "beam_sizes": [1, 3], "contexts": 2})";
  const Run r = run("bench " + grid.string() + " -o " + dir.string() + " --no-timing");
  REQUIRE(r.status == 0);
  std::ifstream rows(dir / "rows.csv");
  std::string header;
  std::getline(rows, header);
  CHECK(header ==
        "scm,k,algorithm,beam,stochastic_mode,samples,batch,seed,context_id,precision,recall,f1,"
        "missed,overshoot,runtime_s,oracle_calls,n_causes");
  int n = 0;
  for (std::string line; std::getline(rows, line);) ++n;
  CHECK(n == 4);
  CHECK(fs::exists(dir / "summary.csv"));
  CHECK(fs::exists(dir / "runtime_vs_k.csv"));
}

TEST_CASE("failures and exit codes") {
  CHECK(run("identify --builtin rock-throwing --context /nonexistent.json").status == 2);
  CHECK(run("identify --builtin smk:0").status == 2);
  CHECK(run("identify --builtin rock-throwing --beam 0").status == 2);
  CHECK(run("identify --scm /nonexistent.json").status == 2);
  CHECK(run("frobnicate").status == 2);
  CHECK(run("exact --builtin smk:4 --max-size 0").status == 3);
  const fs::path scm = scratch() / "rt2.json";
  REQUIRE(run("gen --builtin rock-throwing -o " + scm.string()).status == 0);
  CHECK(run("identify --scm " + scm.string()).status == 2);
}
