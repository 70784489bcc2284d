#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <filesystem>
#include <fstream>
#include <sstream>

#include "accause/benchmarks.hpp"
#include "accause/error.hpp"
#include "accause/harness.hpp"
#include "accause/metrics.hpp"
#include "accause/report.hpp"
#include "naive.hpp"

using namespace accause;

namespace {

const VariableId A{0}, B{1}, C{2}, D{3};

CauseResult cause_of(VarSet vars) {
  CauseResult c;
  c.cause_vars = std::move(vars);
  c.counterfactual_values.assign(c.cause_vars.size(), 0);
  return c;
}

std::vector<std::string> lines(const std::string& text) {
  std::vector<std::string> out;
  std::istringstream s(text);
  for (std::string l; std::getline(s, l);) out.push_back(l);
  return out;
}

}  // namespace

TEST_CASE("precision, recall and F1") {
  const std::vector<VarSet> ref{{A}, {B}};

  SUBCASE("perfect") {
    const auto m = precision_recall_f1(ref, ref);
    CHECK(m.precision == 1.0);
    CHECK(m.recall == 1.0);
    CHECK(m.f1 == 1.0);
  }
  SUBCASE("one right, one superset") {
    const std::vector<VarSet> id{{A}, {B, C}};
    const auto m = precision_recall_f1(id, ref);
    CHECK(m.precision == 0.5);
    CHECK(m.recall == 0.5);
    CHECK(m.f1 == 0.5);
  }
  SUBCASE("nothing found") {
    const auto m = precision_recall_f1({}, ref);
    CHECK(m.precision == 1.0);
    CHECK(m.recall == 0.0);
    CHECK(m.f1 == 0.0);
    const auto none = precision_recall_f1({}, {});
    CHECK(none.recall == 1.0);
    CHECK(none.precision == 1.0);
  }
  SUBCASE("all wrong") {
    const std::vector<VarSet> id{{C}, {D}};
    const auto m = precision_recall_f1(id, ref);
    CHECK(m.precision == 0.0);
    CHECK(m.recall == 0.0);
    CHECK(m.f1 == 0.0);
  }
  SUBCASE("order and duplicates do not matter") {
    const std::vector<VarSet> id{{C}, {B}, {A}, {B}};
    const std::vector<VarSet> ref2{{B}, {A}, {D}};
    const auto m = precision_recall_f1(id, ref2);
    CHECK(m.precision == doctest::Approx(2.0 / 3));
    CHECK(m.recall == doctest::Approx(2.0 / 3));
  }
  SUBCASE("means") {
    // 1 of 4 identified is right, 1 of 2 reference found: p = 1/4, r = 1/2.
    const std::vector<VarSet> id{{A}, {C}, {D}, {B, C}};
    const auto h = precision_recall_f1(id, ref, F1Mode::kHarmonic);
    const auto g = precision_recall_f1(id, ref, F1Mode::kGeometric);
    CHECK(h.f1 == doctest::Approx(2 * 0.25 * 0.5 / 0.75));
    CHECK(g.f1 == doctest::Approx(std::sqrt(0.125)));
    CHECK(h.f1 <= g.f1);
    CHECK(g.f1 <= (h.precision + h.recall) / 2);
  }
}

TEST_CASE("missed and overshoot") {
  const std::vector<VarSet> ref{{A}, {B}};
  CHECK(missed_overshoot(ref, ref) == std::pair{0.0, 0.0});
  const std::vector<VarSet> id{{A}, {B, C}};
  CHECK(missed_overshoot(id, ref) == std::pair{0.0, 0.5});
  CHECK(missed_overshoot({}, ref) == std::pair{1.0, 0.0});
  const std::vector<VarSet> other{{C, D}};
  CHECK(missed_overshoot(other, ref) == std::pair{1.0, 0.0});

  const auto m = score_causes({cause_of({A}), cause_of({B, C})}, {cause_of({A}), cause_of({B})});
  CHECK(m.precision == 0.5);
  CHECK(m.overshoot == 0.5);
  CHECK(m.missed == 0.0);
}

TEST_CASE("smallest-cause accuracy") {
  CHECK(expected_smallest_size({true, false}) == 1);
  CHECK(expected_smallest_size({false, true}) == 1);
  CHECK(expected_smallest_size({true, true}) == 2);
  try {
    expected_smallest_size({false, false});
    FAIL("accepted");
  } catch (const Error& e) {
    CHECK(e.code() == ErrorCode::kContextInconsistent);
  }
  CHECK(smallest_cause_accuracy(cause_of({A}), {false, true}) == 1);
  CHECK(smallest_cause_accuracy(cause_of({A, B}), {false, true}) == 0);
  CHECK(smallest_cause_accuracy(cause_of({A, B}), {true, true}) == 1);
  CHECK(smallest_cause_accuracy(cause_of({A}), {true, true}) == 0);

  const Scm scm = make_smk_base(2);
  const SmkFacts f = smk_facts(scm, context_with_true(scm, {"fs1", "ff1"}));
  CHECK(f.dk);
  CHECK_FALSE(f.sd);
}

TEST_CASE("summary statistics") {
  const Summary s = summarize({4, 1, 3, 2, std::nan("")});
  CHECK(s.count == 4);
  CHECK(s.mean == 2.5);
  CHECK(s.median == 2.5);
  CHECK(s.min == 1);
  CHECK(s.max == 4);
  CHECK(s.q1 == 1.75);
  CHECK(s.q3 == 3.25);
  const Summary one = summarize({7});
  CHECK(one.q1 == 7);
  CHECK(one.q3 == 7);
  CHECK(summarize({}).count == 0);
}

TEST_CASE("report JSON") {
  const Scm scm = make_rock_throwing();
  const Context u = context_with_true(scm, {"st", "bt"});
  const SearchSpace space = space_from_scm(scm, u);
  CauseResult c;
  c.cause_vars = naive::vars(scm, {"ST"});
  c.counterfactual_values = {0};
  c.contingency_vars = naive::vars(scm, {"BT"});
  c.depth_found = 2;
  const Json j = cause_to_json(space, c);
  CHECK(j["cause"]["ST"] == 0);
  CHECK(j["contingency"]["BT"] == 1);
  CHECK(j["depth"] == 2);
  const CauseResult back = cause_from_json(space, j);
  CHECK(back.cause_vars == c.cause_vars);
  CHECK(back.contingency_vars == c.contingency_vars);
  CHECK(back.counterfactual_values == c.counterfactual_values);

  const auto list = causes_from_json(space, Json::parse(R"({"causes": [["ST"], ["SH", "BT"]]})"));
  REQUIRE(list.size() == 2);
  CHECK(list[1].cause_vars == naive::vars(scm, {"BT", "SH"}));
  CHECK_THROWS_AS(causes_from_json(space, Json::parse(R"([["XX"]])")), Error);
}

TEST_CASE("grid configuration") {
  const Json j = Json::parse(R"({"scm": "smk", "attackers": [2, 3], "beam_sizes": [1, 5],
                                 "algorithms": ["base", "isi"], "seeds": [1, 2], "contexts": 4,
                                 "task": "smallest", "f1_mode": "geometric"})");
  const ExperimentGrid g = grid_from_json(j);
  CHECK(g.attackers == std::vector<int>{2, 3});
  CHECK(g.task == Task::kSmallest);
  CHECK(g.f1_mode == F1Mode::kGeometric);
  CHECK(grid_to_json(grid_from_json(grid_to_json(g))) == grid_to_json(g));

  const auto cells = grid_cells(g);
  CHECK(cells.size() == 2 * 2 * 2 * 2);
  CHECK(cells[0].k == 2);
  CHECK(cells[1].seed == 2);
  CHECK(cells[2].beam == 5);
  CHECK(cells.back().k == 3);
  CHECK(cell_settings(g, cells[0], 9).beam.early_stop);

  try {
    grid_from_json(Json::parse(R"({"beams": [1]})"));
    FAIL("accepted");
  } catch (const Error& e) {
    CHECK(e.code() == ErrorCode::kSchema);
  }
  CHECK_THROWS_AS(grid_from_json(Json::parse(R"({"contexts": 0})")), Error);
  CHECK_THROWS_AS(grid_from_json(Json::parse(R"({"algorithms": ["dfs"]})")), Error);

  ExperimentGrid noisy;
  noisy.scm = "smk-noisy";
  noisy.noise = 0.05;
  CHECK(builtin_name(noisy, 3) == "smk-noisy:3:0.05");
}

TEST_CASE("experiment runs") {
  ExperimentGrid g;
  g.attackers = {2};
  g.beam_sizes = {-1, 2};
  g.contexts = 3;
  g.max_steps = 4;
  const ExperimentResult r = run_experiment(g);
  REQUIRE(r.rows.size() == 6);
  CHECK(r.reference_source.at(2) == std::vector<std::string>(3, "exact"));
  for (const ExperimentRow& row : r.rows) {
    CHECK(row.error.empty());
    if (r.cells[row.cell].beam == -1) {
      CHECK(row.metrics.f1 == 1.0);
      CHECK(row.metrics.missed == 0.0);
    }
    CHECK(row.metrics.precision >= 0.0);
    CHECK(row.metrics.precision <= 1.0);
    CHECK(row.metrics.oracle_calls > 0);
  }

  const auto rows = lines(rows_csv(r, false));
  CHECK(rows[0] ==
        "scm,k,algorithm,beam,stochastic_mode,samples,batch,seed,context_id,precision,recall,f1,"
        "missed,overshoot,runtime_s,oracle_calls,n_causes");
  CHECK(rows.size() == 7);
  const auto summary = lines(summary_csv(r, false));
  CHECK(summary[0] == "scm,k,algorithm,beam,stochastic_mode,samples,batch,seed,metric,count,mean,median,min,q1,q3,max");
  CHECK(summary.size() > 2);

  SUBCASE("reproducible and independent of threads") {
    const ExperimentResult again = run_experiment(g, 3);
    CHECK(rows_csv(again, false) == rows_csv(r, false));
    CHECK(summary_csv(again, false) == summary_csv(r, false));
  }
  SUBCASE("files") {
    const auto dir = std::filesystem::temp_directory_path() / "accause_metrics_test";
    std::filesystem::remove_all(dir);
    write_experiment(r, dir, false);
    for (const char* f : {"rows.csv", "summary.csv", "f1_vs_beam.csv", "runtime_vs_beam.csv", "runtime_vs_k.csv"}) {
      CHECK(std::filesystem::exists(dir / f));
    }
    std::ifstream in(dir / "f1_vs_beam.csv");
    std::string header;
    std::getline(in, header);
    CHECK(header == "scm,k,algorithm,stochastic_mode,beam,count,mean_f1,median_f1");
    std::filesystem::remove_all(dir);
  }
}

TEST_CASE("smallest-cause task") {
  ExperimentGrid g;
  g.attackers = {2};
  g.algorithms = {Algorithm::kBase, Algorithm::kIsi};
  g.beam_sizes = {25};
  g.contexts = 5;
  g.task = Task::kSmallest;
  const ExperimentResult r = run_experiment(g);
  REQUIRE(r.rows.size() == 10);
  for (const ExperimentRow& row : r.rows) {
    CHECK(row.error.empty());
    CHECK((row.accuracy == 0.0 || row.accuracy == 1.0));
    CHECK(std::isnan(row.metrics.f1));
  }
  CHECK(lines(rows_csv(r, false))[0].ends_with(",accuracy"));
}

TEST_CASE("union reference") {
  const Problem p = Problem::builtin("smk:2");
  const Scm& scm = p.system();
  const Context u = context_with_true(scm, {"fs1", "ff1", "a2", "ad2"});
  // A non-minimal identified set is dropped, a redundant one is minimized.
  std::vector<std::vector<CauseResult>> runs(2);
  runs[0].push_back(cause_of(naive::vars(scm, {"DK", "SD"})));
  runs[0].push_back(cause_of(naive::vars(scm, {"DK", "SD", "GP1"})));
  runs[1].push_back(cause_of(naive::vars(scm, {"DK", "SD"})));
  for (auto& run : runs) {
    for (auto& c : run) {
      const Assignment actual = scm.actual_values(u);
      for (std::size_t i = 0; i < c.cause_vars.size(); ++i)
        c.counterfactual_values[i] = 1 - actual[c.cause_vars[i].index];
    }
  }
  const auto ref = union_reference(p, u, runs);
  REQUIRE(ref.size() == 1);
  CHECK(ref[0].cause_vars == naive::vars(scm, {"DK", "SD"}));
}
