#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <set>

#include "accause/benchmarks.hpp"
#include "accause/error.hpp"
#include "accause/isi.hpp"
#include "naive.hpp"

using namespace accause;

namespace {

std::set<VarSet> as_sets(const std::vector<CauseResult>& causes) {
  std::set<VarSet> out;
  for (const CauseResult& c : causes) out.insert(c.cause_vars);
  return out;
}

}  // namespace

TEST_CASE("inclusion check against memory") {
  IsiMemory memory;
  memory.insert({{1}, {2}, {3}});
  CHECK_FALSE(check_inclusion({{1}, {3}}, memory));
  CHECK_FALSE(check_inclusion({{1}, {2}, {3}}, memory));
  CHECK(check_inclusion({{0}, {1}}, memory));
  CHECK(check_inclusion({{1}, {2}, {3}, {4}}, memory));
  CHECK(check_inclusion({{5}}, IsiMemory{}));
}

TEST_CASE("cause expansion replaces each subset by its parents") {
  // 0 <- {3, 4}, 1 <- {5}, 2 has no parents.
  const std::vector<VarSet> parents{{{3}, {4}}, {{5}}, {}, {}, {}, {}};
  const VarSet cause{{0}, {1}};
  const auto tasks = expand_cause_instances(cause, {{9}}, parents);
  REQUIRE(tasks.size() == 3);
  CHECK(tasks[0].instance_vars == VarSet{{1}, {3}, {4}});
  CHECK(tasks[1].instance_vars == VarSet{{0}, {5}});
  CHECK(tasks[2].instance_vars == VarSet{{3}, {4}, {5}});
  for (const auto& t : tasks) CHECK(t.base_contingency == VarSet{{9}});

  SUBCASE("leaf causes produce no empty instances") {
    const auto leaf = expand_cause_instances({{2}}, {}, parents);
    CHECK(leaf.empty());
  }
  SUBCASE("prior-instance mode keeps the rest of the instance") {
    const auto prior =
        expand_cause_instances({{0}}, {}, parents, IsiExpansion::kPriorInstance, VarSet{{0}, {2}});
    REQUIRE(prior.size() == 1);
    CHECK(prior[0].instance_vars == VarSet{{2}, {3}, {4}});
  }
  SUBCASE("oversized causes are refused") {
    VarSet big;
    std::vector<VarSet> many(20);
    for (std::uint32_t i = 0; i < 17; ++i) big.push_back({i});
    try {
      expand_cause_instances(big, {}, many);
      FAIL("accepted");
    } catch (const Error& e) {
      CHECK(e.code() == ErrorCode::kCauseTooLargeForExpansion);
    }
  }
}

TEST_CASE("ISI walks the three-attacker reference context instance by instance") {
  const Scm scm = make_smk_base(3);
  const Context u = smk3_reference_context();
  ScmOracle oracle(scm, u);
  const SearchSpace space = space_from_scm(scm, u);
  const Heuristic h = make_heuristic(HeuristicKind::kPositive, space);
  std::vector<IsiStep> trace;
  const SearchResult r = identify_causes_isi(scm, space, oracle, h, IsiConfig{}, &trace);

  auto v = [&](std::initializer_list<const char*> n) { return naive::vars(scm, n); };
  REQUIRE(trace.size() == 5);
  CHECK(trace[0].task.instance_vars == v({"DK", "SD"}));
  CHECK(as_sets(trace[0].causes) == std::set<VarSet>{v({"DK"})});
  CHECK(trace[1].task.instance_vars == v({"DK1", "DK2", "DK3"}));
  CHECK(as_sets(trace[1].causes) == std::set<VarSet>{v({"DK2"})});
  CHECK(trace[2].task.instance_vars == v({"DK1", "GP2", "GK2"}));
  CHECK(trace[2].task.base_contingency == v({"DK3"}));
  CHECK(as_sets(trace[2].causes) == std::set<VarSet>{v({"GP2"}), v({"GK2"})});
  CHECK(trace[3].task.instance_vars == v({"FS2", "FN2"}));
  CHECK(trace[4].task.instance_vars == v({"FF2", "FDB2"}));

  const std::set<VarSet> expected{v({"DK"}), v({"DK2"}), v({"GP2"}), v({"GK2"}), v({"FS2", "FN2"}),
                                  v({"FF2", "FDB2"})};
  CHECK(as_sets(r.causes) == expected);
  Rng rng(0);
  for (const CauseResult& c : r.causes) {
    CHECK_FALSE(oracle.query(c.witness(space.actual), rng));
    if (c.cause_vars != v({"DK"})) CHECK(c.contingency_vars == v({"DK3"}));
  }
}

TEST_CASE("ISI outputs satisfy AC2 and are mutually minimal") {
  const Scm scm = make_smk_base(2);
  Rng rng(0);
  for (const Context& u : sample_contexts(scm, 15, 21)) {
    ScmOracle oracle(scm, u);
    const SearchSpace space = space_from_scm(scm, u);
    for (int b : {1, 5, -1}) {
      IsiConfig cfg;
      cfg.beam.beam_size = b;
      const SearchResult r =
          identify_causes_isi(scm, space, oracle, make_heuristic(HeuristicKind::kPositive, space), cfg);
      for (const CauseResult& a : r.causes) {
        CHECK_FALSE(oracle.query(a.witness(space.actual), rng));
        for (const CauseResult& c : r.causes) {
          if (&a != &c) CHECK_FALSE(is_subset(c.cause_vars, a.cause_vars));
        }
      }
    }
  }
}

TEST_CASE("ISI with a coarser graph still returns true causes") {
  const Scm scm = make_smk_base(2);
  // Every variable is declared a parent of DK and SD besides their real parents.
  std::vector<VarSet> parents(scm.parents().begin(), scm.parents().end());
  const VariableId dk = scm.id("DK");
  const VariableId sd = scm.id("SD");
  for (VariableId target : {dk, sd}) {
    for (std::uint32_t i = 0; i < scm.num_endogenous(); ++i) {
      const VariableId v{i};
      if (v != scm.id("SMK") && v != dk && v != sd) parents[target.index].push_back(v);
    }
    parents[target.index] = make_varset(parents[target.index]);
  }
  Rng rng(0);
  for (const Context& u : sample_contexts(scm, 6, 2)) {
    ScmOracle oracle(scm, u);
    const SearchSpace space = space_from_scm(scm, u);
    IsiConfig cfg;
    cfg.beam.beam_size = 25;
    const SearchResult r = identify_causes_isi(space, parents, scm.target_inputs(), oracle,
                                               make_heuristic(HeuristicKind::kPositive, space), cfg);
    CHECK_FALSE(r.causes.empty());
    for (const CauseResult& c : r.causes) CHECK_FALSE(oracle.query(c.witness(space.actual), rng));
  }
}

TEST_CASE("ISI early stop ends after the first run with causes") {
  const Scm scm = make_smk_base(3);
  const Context u = smk3_reference_context();
  ScmOracle oracle(scm, u);
  const SearchSpace space = space_from_scm(scm, u);
  IsiConfig cfg;
  cfg.beam.early_stop = true;
  std::vector<IsiStep> trace;
  const SearchResult r =
      identify_causes_isi(scm, space, oracle, make_heuristic(HeuristicKind::kPositive, space), cfg, &trace);
  CHECK(trace.size() == 1);
  REQUIRE(r.causes.size() == 1);
  CHECK(r.causes[0].cause_vars == naive::vars(scm, {"DK"}));
  CHECK(r.stats.runs == 1);
}

TEST_CASE("ISI on rock-throwing") {
  const Scm scm = make_rock_throwing();
  const Context u = context_with_true(scm, {"st", "bt"});
  ScmOracle oracle(scm, u);
  const SearchSpace space = space_from_scm(scm, u);
  const SearchResult r =
      identify_causes_isi(scm, space, oracle, make_heuristic(HeuristicKind::kPositive, space), IsiConfig{});
  const std::set<VarSet> found = as_sets(r.causes);
  CHECK(found.count(naive::vars(scm, {"SH"})) == 1);
  CHECK(found.count(naive::vars(scm, {"ST"})) == 1);
  for (const VarSet& c : found) CHECK(naive::is_hp_cause(scm, u, c));
}
