#include "accause/report.hpp"

#include <algorithm>

#include "accause/error.hpp"

namespace accause {
namespace {

VariableId lookup(const SearchSpace& space, const std::string& name) {
  auto it = std::find(space.names.begin(), space.names.end(), name);
  if (it == space.names.end()) throw Error(ErrorCode::kUnknownVariable, "unknown variable " + name);
  return VariableId{static_cast<std::uint32_t>(it - space.names.begin())};
}

ValueIndex lookup_value(const SearchSpace& space, VariableId v, const Json& j) {
  auto idx = space.domains[v.index].index_of(value_from_json(j));
  if (!idx) {
    throw Error(ErrorCode::kValueOutsideDomain, "value " + j.dump() + " outside the domain of " +
                                                    space.names[v.index]);
  }
  return *idx;
}

}  // namespace

Json cause_to_json(const SearchSpace& space, const CauseResult& cause) {
  Json c = Json::object();
  for (std::size_t i = 0; i < cause.cause_vars.size(); ++i) {
    const VariableId v = cause.cause_vars[i];
    c[space.names[v.index]] = value_to_json(space.domains[v.index].at(cause.counterfactual_values[i]));
  }
  Json w = Json::object();
  for (VariableId v : cause.contingency_vars) {
    w[space.names[v.index]] = value_to_json(space.domains[v.index].at(space.actual[v.index]));
  }
  return {{"cause", c}, {"contingency", w}, {"depth", cause.depth_found}};
}

CauseResult cause_from_json(const SearchSpace& space, const Json& j) {
  if (!j.is_array() && (!j.is_object() || !j.contains("cause"))) {
    throw Error(ErrorCode::kSchema, "cause entry needs 'cause'");
  }
  CauseResult out;
  std::vector<VarValue> pairs;
  const Json& c = j.is_array() ? j : j.at("cause");
  if (c.is_array()) {
    for (const Json& n : c) {
      const VariableId v = lookup(space, n.get<std::string>());
      const std::size_t size = space.domains[v.index].size();
      // Boolean-style flip: the first value other than the actual one.
      const ValueIndex x = space.actual[v.index] == 0 && size > 1 ? 1 : 0;
      pairs.push_back({v, x});
    }
  } else if (c.is_object()) {
    for (const auto& [name, value] : c.items()) {
      const VariableId v = lookup(space, name);
      pairs.push_back({v, lookup_value(space, v, value)});
    }
  } else {
    throw Error(ErrorCode::kSchema, "'cause' must be an object or an array");
  }
  std::sort(pairs.begin(), pairs.end());
  for (const VarValue& p : pairs) {
    out.cause_vars.push_back(p.var);
    out.counterfactual_values.push_back(p.value);
  }
  if (j.contains("contingency")) {
    const Json& w = j.at("contingency");
    std::vector<VariableId> vars;
    if (w.is_object()) {
      for (const auto& [name, value] : w.items()) vars.push_back(lookup(space, name));
    } else {
      for (const Json& n : w) vars.push_back(lookup(space, n.get<std::string>()));
    }
    out.contingency_vars = make_varset(std::move(vars));
  }
  const int size = static_cast<int>(out.cause_vars.size() + out.contingency_vars.size());
  out.depth_found = j.is_object() ? j.value("depth", size) : size;
  return out;
}

Json causes_to_json(const SearchSpace& space, const std::vector<CauseResult>& causes) {
  Json a = Json::array();
  for (const CauseResult& c : causes) a.push_back(cause_to_json(space, c));
  return a;
}

std::vector<CauseResult> causes_from_json(const SearchSpace& space, const Json& j) {
  const Json& list = j.is_object() ? j.at("causes") : j;
  if (!list.is_array()) throw Error(ErrorCode::kSchema, "causes must be an array");
  std::vector<CauseResult> out;
  for (const Json& c : list) out.push_back(cause_from_json(space, c));
  return out;
}

Json stats_to_json(const SearchStats& stats) {
  return {{"nodes_per_depth", stats.nodes_per_depth},
          {"causes_per_depth", stats.causes_per_depth},
          {"nodes", stats.nodes()},
          {"oracle_calls", stats.oracle_calls},
          {"runs", stats.runs},
          {"lucb_calls", stats.lucb_calls},
          {"lucb_converged", stats.lucb_converged},
          {"lucb_violations", stats.lucb_violations}};
}

Json metrics_to_json(const IdentificationMetrics& m, bool timing) {
  Json j = {{"precision", m.precision}, {"recall", m.recall},       {"f1", m.f1},
            {"missed", m.missed},       {"overshoot", m.overshoot}, {"oracle_calls", m.oracle_calls}};
  if (timing) j["runtime_s"] = m.runtime_seconds;
  return j;
}

}  // namespace accause
