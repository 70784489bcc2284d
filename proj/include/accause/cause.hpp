#pragma once

#include <span>
#include <vector>

#include "accause/intervention.hpp"

namespace accause {

struct CauseResult {
  VarSet cause_vars;
  VarSet contingency_vars;
  std::vector<ValueIndex> counterfactual_values;  // aligned with cause_vars
  int depth_found = 0;

  // Counterfactual values on the cause, actual values on the contingency.
  Intervention witness(const Assignment& actual) const;

  friend bool operator==(const CauseResult&, const CauseResult&) = default;
};

CauseResult cause_from_intervention(const Intervention& e, const Assignment& actual, int depth);

std::vector<VarSet> cause_sets(std::span<const CauseResult> causes);

// Keeps the first result per cause set, then drops every result whose cause set
// strictly contains another one.
std::vector<CauseResult> keep_minimal(std::vector<CauseResult> causes);

}  // namespace accause
