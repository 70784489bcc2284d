#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <algorithm>

#include "accause/benchmarks.hpp"
#include "accause/error.hpp"
#include "accause/hp_check.hpp"
#include "accause/scm.hpp"
#include "accause/scm_json.hpp"
#include "naive.hpp"

using namespace accause;

namespace {

ErrorCode code_of(const std::function<void()>& fn) {
  try {
    fn();
  } catch (const Error& e) {
    return e.code();
  }
  FAIL("no error raised");
  return ErrorCode::kIo;
}

std::size_t position(std::span<const VariableId> order, VariableId v) {
  return static_cast<std::size_t>(std::find(order.begin(), order.end(), v) - order.begin());
}

}  // namespace

TEST_CASE("rock-throwing order puts throws before hits and the shatter last") {
  const Scm scm = make_rock_throwing();
  const auto order = scm.order();
  REQUIRE(order.size() == 5);
  for (const char* thrower : {"ST", "BT"}) {
    for (const char* hit : {"SH", "BH"}) CHECK(position(order, scm.id(thrower)) < position(order, scm.id(hit)));
  }
  CHECK(order.back() == scm.id("BS"));
}

TEST_CASE("topological order of no variables is empty") {
  CHECK(topological_order(std::span<const VarSet>{}).empty());
}

TEST_CASE("random DAGs: every edge goes forward in the order") {
  for (std::uint64_t seed = 0; seed < 50; ++seed) {
    Rng rng(seed);
    std::vector<std::uint32_t> perm(8);
    std::iota(perm.begin(), perm.end(), 0);
    std::shuffle(perm.begin(), perm.end(), rng);
    std::vector<VarSet> parents(8);
    for (int a = 0; a < 8; ++a) {
      for (int b = a + 1; b < 8; ++b) {
        if (bernoulli(rng, 0.3)) parents[perm[b]].push_back(VariableId{perm[a]});
      }
    }
    for (auto& p : parents) std::sort(p.begin(), p.end());
    const auto order = topological_order(parents);
    REQUIRE(order.size() == 8);
    for (std::uint32_t v = 0; v < 8; ++v) {
      for (VariableId p : parents[v]) CHECK(position(order, p) < position(order, VariableId{v}));
    }
    // Deterministic.
    CHECK(topological_order(parents) == order);
  }
}

TEST_CASE("ties in the order go to the smaller index") {
  const std::vector<VarSet> parents{{}, {}, {VariableId{0}}, {}};
  const auto order = topological_order(parents);
  CHECK(order == std::vector<VariableId>{{0}, {1}, {2}, {3}});
}

TEST_CASE("a cycle is reported with a variable on it") {
  const std::vector<VarSet> parents{{}, {VariableId{2}}, {VariableId{1}}, {VariableId{0}}};
  CHECK(code_of([&] { topological_order(parents); }) == ErrorCode::kCycleDetected);

  ScmSpec s;
  s.endogenous = {{"A", Domain::boolean()}, {"B", Domain::boolean()}, {"C", Domain::boolean()}};
  s.parents = {{}, {"C"}, {"B"}};
  s.equations = {Expr::literal(Value::scalar(1)), Expr::var("C"), Expr::var("B")};
  s.target = Expr::var("A");
  try {
    Scm scm(s);
    FAIL("cycle accepted");
  } catch (const Error& e) {
    CHECK(e.code() == ErrorCode::kCycleDetected);
    const std::string msg = e.what();
    CHECK((msg.find(" B") != std::string::npos || msg.find(" C") != std::string::npos));
  }
}

TEST_CASE("rock-throwing evaluation") {
  const Scm scm = make_rock_throwing();
  auto value = [&](const Assignment& a, const char* n) { return a[scm.id(n).index]; };

  const Assignment both = scm.actual_values(context_with_true(scm, {"st", "bt"}));
  CHECK(value(both, "ST") == 1);
  CHECK(value(both, "BT") == 1);
  CHECK(value(both, "SH") == 1);
  CHECK(value(both, "BH") == 0);
  CHECK(value(both, "BS") == 1);

  const Assignment none = scm.actual_values(context_with_true(scm, {}));
  CHECK(value(none, "BS") == 0);

  const Assignment billy = scm.actual_values(context_with_true(scm, {"bt"}));
  CHECK(value(billy, "BH") == 1);
  CHECK(value(billy, "BS") == 1);
}

TEST_CASE("interventions override equations and propagate") {
  const Scm scm = make_rock_throwing();
  const Context u = context_with_true(scm, {"st", "bt"});

  SUBCASE("empty intervention is the actual world") {
    CHECK(scm.evaluate(u, Intervention{}) == scm.actual_values(u));
  }
  SUBCASE("forcing SH off lets Billy hit") {
    const Assignment a = scm.evaluate(u, Intervention({{scm.id("SH"), 0}}));
    CHECK(a[scm.id("SH").index] == 0);
    CHECK(a[scm.id("BH").index] == 1);
    CHECK(a[scm.id("BS").index] == 1);
  }
  SUBCASE("forcing SH off and BH off at the same time") {
    const Assignment a = scm.evaluate(u, Intervention({{scm.id("SH"), 0}, {scm.id("BH"), 0}}));
    CHECK(a[scm.id("BS").index] == 0);
  }
}

TEST_CASE("interventions are validated") {
  const Scm scm = make_rock_throwing();
  CHECK(code_of([&] { scm.validate(Intervention({{VariableId{9}, 0}})); }) == ErrorCode::kUnknownVariable);
  CHECK(code_of([&] { scm.validate(Intervention({{scm.id("ST"), 2}})); }) == ErrorCode::kValueOutsideDomain);
  CHECK(code_of([&] { Intervention({{scm.id("ST"), 0}, {scm.id("ST"), 1}}); }) ==
        ErrorCode::kInvalidIntervention);
  CHECK(code_of([&] { scm.id("nope"); }) == ErrorCode::kUnknownVariable);
  CHECK(code_of([&] { scm.validate(Context{{1}}); }) == ErrorCode::kSchema);
}

TEST_CASE("domains") {
  CHECK(code_of([] { Domain(std::vector<Value>{}); }) == ErrorCode::kSchema);
  CHECK(code_of([] { Domain({Value::scalar(1), Value::scalar(1)}); }) == ErrorCode::kSchema);
  CHECK(code_of([] { Domain({Value::scalar(1), Value::set_mask(1)}); }) == ErrorCode::kSchema);

  const Domain d = Domain::integers(-1, 2);
  CHECK(d.size() == 4);
  CHECK(d.index_of(-1) == 0u);
  CHECK(d.index_of(2) == 3u);
  CHECK_FALSE(d.index_of(3).has_value());

  const Domain sparse({Value::scalar(10), Value::scalar(3), Value::scalar(-7)});
  CHECK(sparse.index_of(3) == 1u);
  CHECK(sparse.index_of(-7) == 2u);
  CHECK_FALSE(sparse.index_of(4).has_value());

  // Binary counting: index i has characteristic vector i.
  const Domain s = Domain::subsets(3);
  REQUIRE(s.size() == 8);
  for (ValueIndex i = 0; i < 8; ++i) CHECK(s.at(i).bits == static_cast<std::int64_t>(i));
  const int members[] = {0, 2};
  CHECK(Value::set_of(members).bits == 5);
  CHECK(Value::set_mask(5).members() == std::vector<int>{0, 2});
  CHECK(Value::set_mask(5).set_size() == 2);
}

TEST_CASE("e_C and e_W split") {
  const Assignment actual{1, 1, 1, 0, 1};
  const Intervention e({{VariableId{0}, 0}, {VariableId{3}, 0}, {VariableId{2}, 1}});
  const SplitSets s = split_sets(e, actual);
  CHECK(s.cause_vars == VarSet{{0}});
  CHECK(s.contingency_vars == VarSet{{2}, {3}});
  CHECK(counterfactual_vars(e, actual) == s.cause_vars);
}

TEST_CASE("set helpers") {
  const VarSet a{{1}, {3}};
  const VarSet b{{1}, {2}, {3}};
  CHECK(is_subset(a, b));
  CHECK(is_strict_subset(a, b));
  CHECK_FALSE(is_strict_subset(b, b));
  CHECK(is_subset(VarSet{}, a));
  CHECK(set_union(a, VarSet{{0}}) == VarSet{{0}, {1}, {3}});
  CHECK(set_difference(b, a) == VarSet{{2}});
  CHECK(set_intersection(b, VarSet{{2}, {5}}) == VarSet{{2}});
  const std::vector<VarSet> sets{a};
  CHECK(contains_any_subset(sets, b));
  CHECK_FALSE(contains_any_subset(sets, VarSet{{1}}));
}

TEST_CASE("HP check on rock-throwing agrees with a brute-force definition") {
  const Scm scm = make_rock_throwing();
  const Context u = context_with_true(scm, {"st", "bt"});
  const Assignment actual = scm.actual_values(u);

  const HpVerdict st = check_hp_cause(scm, u, Intervention({{scm.id("ST"), 0}}), naive::vars(scm, {"BH"}));
  CHECK(st.holds());
  const HpVerdict bt = check_hp_cause(scm, u, Intervention({{scm.id("BT"), 0}}), {});
  CHECK(bt.ac1);
  CHECK_FALSE(bt.ac2);
  const HpVerdict pair =
      check_hp_cause(scm, u, Intervention({{scm.id("ST"), 0}, {scm.id("BT"), 0}}), {});
  CHECK(pair.ac2);
  CHECK_FALSE(pair.ac3);

  // Every candidate set over the search variables.
  const VarSet& sv = scm.search_variables();
  for (std::uint64_t mask = 1; mask < (std::uint64_t{1} << sv.size()); ++mask) {
    VarSet c;
    std::vector<VarValue> pairs;
    for (std::size_t j = 0; j < sv.size(); ++j) {
      if (mask >> j & 1) {
        c.push_back(sv[j]);
        pairs.push_back({sv[j], 1 - actual[sv[j].index]});
      }
    }
    std::uint64_t budget = kDefaultHpBudget;
    const auto w = find_contingency(scm, u, actual, Intervention(pairs), set_difference(sv, c), true, budget);
    const bool ours = w && check_hp_cause(scm, u, Intervention(pairs), *w).holds();
    CHECK_MESSAGE(ours == naive::is_hp_cause(scm, u, c), "mask " << mask);
  }
}

TEST_CASE("HP check agrees with the brute-force definition on random Boolean systems") {
  int causes_seen = 0;
  for (std::uint64_t seed = 0; seed < 25; ++seed) {
    const Scm scm = naive::random_boolean_scm(seed, 7);
    for (const Context& u : naive::true_contexts(scm)) {
      const Assignment actual = scm.actual_values(u);
      const VarSet& sv = scm.search_variables();
      for (std::uint64_t mask = 1; mask < (std::uint64_t{1} << sv.size()); ++mask) {
        VarSet c;
        std::vector<VarValue> pairs;
        for (std::size_t j = 0; j < sv.size(); ++j) {
          if (mask >> j & 1) {
            c.push_back(sv[j]);
            pairs.push_back({sv[j], 1 - actual[sv[j].index]});
          }
        }
        if (c.size() > 3) continue;
        std::uint64_t budget = kDefaultHpBudget;
        const auto w = find_contingency(scm, u, actual, Intervention(pairs), set_difference(sv, c), true, budget);
        const bool ours = w && check_hp_cause(scm, u, Intervention(pairs), *w).holds();
        const bool expected = naive::is_hp_cause(scm, u, c);
        causes_seen += expected;
        CHECK_MESSAGE(ours == expected, "seed " << seed << " mask " << mask);
      }
    }
  }
  CHECK(causes_seen > 20);
}

TEST_CASE("smallest contingency is of minimum size") {
  const Scm scm = make_smk_base(3);
  const Context u = smk3_reference_context();
  const Assignment actual = scm.actual_values(u);
  std::uint64_t budget = kDefaultHpBudget;
  const auto w = find_contingency(scm, u, actual, Intervention({{scm.id("GP2"), 0}}),
                                  set_difference(scm.search_variables(), naive::vars(scm, {"GP2"})), true, budget);
  REQUIRE(w.has_value());
  CHECK(*w == naive::vars(scm, {"DK3"}));
}

TEST_CASE("SCM JSON round trip") {
  for (const Scm& scm : {make_rock_throwing(), make_smk_base(2), make_smk_nonboolean(3), make_smk_noisy(1, 0.05, true)}) {
    const Json j = scm_to_json(scm);
    const Scm back = scm_from_json(Json::parse(j.dump()));
    CHECK(scm_to_json(back) == j);
    CHECK(back.spec().endogenous.size() == scm.spec().endogenous.size());
    CHECK(back.spec().equations == scm.spec().equations);
    CHECK(back.noise() == scm.noise());
    const auto ctx = sample_contexts(scm, 2, 5);
    for (const Context& u : ctx) {
      CHECK(back.actual_values(u) == scm.actual_values(u));
      CHECK(context_from_json(back, context_to_json(scm, u)) == u);
    }
  }
}

TEST_CASE("SCM JSON schema errors") {
  CHECK(code_of([] { scm_from_json(Json::parse(R"({"variables": []})")); }) == ErrorCode::kSchema);
  CHECK(code_of([] { scm_from_json(Json::parse("[1, 2]")); }) == ErrorCode::kSchema);
  Json rt = scm_to_json(make_rock_throwing());
  rt["equations"]["SH"] = {{"op", "bogus"}};
  CHECK(code_of([&] { scm_from_json(rt); }) == ErrorCode::kSchema);
  Json cyc = scm_to_json(make_rock_throwing());
  cyc["edges"]["ST"] = {"BS"};
  CHECK(code_of([&] { scm_from_json(cyc); }) == ErrorCode::kCycleDetected);
}

TEST_CASE("values outside a domain are rejected in contexts") {
  const Scm scm = make_rock_throwing();
  CHECK(code_of([&] { context_from_json(scm, Json::parse(R"({"st": 2, "bt": 1})")); }) ==
        ErrorCode::kValueOutsideDomain);
  CHECK(code_of([&] { context_from_json(scm, Json::parse(R"({"st": 1, "zz": 1})")); }) ==
        ErrorCode::kUnknownVariable);
}
