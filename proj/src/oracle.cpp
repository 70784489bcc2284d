#include "accause/oracle.hpp"

#include "accause/error.hpp"

namespace accause {

SearchSpace SearchSpace::restricted(VarSet vars) const {
  SearchSpace out = *this;
  out.variables = std::move(vars);
  return out;
}

Assignment Oracle::observe(const Intervention&, Rng&) const {
  throw Error(ErrorCode::kIncompatibleHeuristic, "oracle exposes only the target");
}

ScmOracle::ScmOracle(const Scm& scm, Context u)
    : scm_(scm), u_(std::move(u)), actual_(scm.actual_values(u_)) {
  if (!scm_.target_holds(actual_)) {
    throw Error(ErrorCode::kTargetNotActual, "target is false in the actual world");
  }
}

bool ScmOracle::query(const Intervention& e, Rng& rng) const {
  count_call();
  return scm_.target_holds(scm_.evaluate(u_, e, rng));
}

Assignment ScmOracle::observe(const Intervention& e, Rng& rng) const {
  if (scm_.opaque()) return Oracle::observe(e, rng);
  return scm_.evaluate(u_, e, rng);
}

PinnedOracle::PinnedOracle(const Oracle& inner, Intervention pins)
    : inner_(inner), pins_(std::move(pins)) {}

bool PinnedOracle::query(const Intervention& e, Rng& rng) const {
  count_call();
  return inner_.query(e.merged_with(pins_), rng);
}

Assignment PinnedOracle::observe(const Intervention& e, Rng& rng) const {
  return inner_.observe(e.merged_with(pins_), rng);
}

FunctionOracle::FunctionOracle(Fn fn, bool stochastic, bool reentrant)
    : fn_(std::move(fn)), stochastic_(stochastic), reentrant_(reentrant) {}

bool FunctionOracle::query(const Intervention& e, Rng& rng) const {
  count_call();
  return fn_(e, rng);
}

SearchSpace space_from_scm(const Scm& scm, const Context& u) {
  SearchSpace s;
  for (std::size_t i = 0; i < scm.num_endogenous(); ++i) {
    const VariableId v{static_cast<std::uint32_t>(i)};
    s.names.push_back(scm.name(v));
    s.domains.push_back(scm.domain(v));
  }
  s.actual = scm.actual_values(u);
  s.variables = scm.search_variables();
  return s;
}

Intervention pin_actual(const VarSet& vars, const Assignment& actual) {
  std::vector<VarValue> pairs;
  pairs.reserve(vars.size());
  for (VariableId v : vars) pairs.push_back({v, actual.at(v.index)});
  return Intervention(std::move(pairs));
}

}  // namespace accause
