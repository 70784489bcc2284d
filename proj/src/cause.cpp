#include "accause/cause.hpp"

#include <algorithm>
#include <set>

#include "accause/scm.hpp"

namespace accause {

Intervention CauseResult::witness(const Assignment& actual) const {
  return make_witness(cause_vars, counterfactual_values, contingency_vars, actual);
}

CauseResult cause_from_intervention(const Intervention& e, const Assignment& actual, int depth) {
  CauseResult c;
  for (const auto& p : e.pairs()) {
    if (p.value != actual.at(p.var.index)) {
      c.cause_vars.push_back(p.var);
      c.counterfactual_values.push_back(p.value);
    } else {
      c.contingency_vars.push_back(p.var);
    }
  }
  c.depth_found = depth;
  return c;
}

std::vector<VarSet> cause_sets(std::span<const CauseResult> causes) {
  std::vector<VarSet> out;
  out.reserve(causes.size());
  for (const auto& c : causes) out.push_back(c.cause_vars);
  return out;
}

std::vector<CauseResult> keep_minimal(std::vector<CauseResult> causes) {
  std::vector<CauseResult> unique;
  std::set<VarSet> seen;
  for (auto& c : causes) {
    if (seen.insert(c.cause_vars).second) unique.push_back(std::move(c));
  }
  std::vector<bool> dominated(unique.size(), false);
  for (std::size_t i = 0; i < unique.size(); ++i) {
    for (std::size_t j = 0; j < unique.size() && !dominated[i]; ++j) {
      dominated[i] = is_strict_subset(unique[j].cause_vars, unique[i].cause_vars);
    }
  }
  std::vector<CauseResult> out;
  for (std::size_t i = 0; i < unique.size(); ++i) {
    if (!dominated[i]) out.push_back(std::move(unique[i]));
  }
  return out;
}

}  // namespace accause
