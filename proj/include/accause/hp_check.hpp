#pragma once

#include <cstdint>
#include <optional>

#include "accause/intervention.hpp"
#include "accause/scm.hpp"

namespace accause {

struct HpVerdict {
  bool ac1 = false;  // the target holds in the actual world
  bool ac2 = false;  // the given witness cancels the target
  bool ac3 = false;  // no proper subset of the cause admits a cancelling witness

  bool holds() const { return ac1 && ac2 && ac3; }
};

inline constexpr std::uint64_t kDefaultHpBudget = 1'000'000;

// Searches W ⊆ allowed (minus the forced variables) such that pinning W to its
// actual values together with `forced` makes the target false. Only variables
// whose value departs from the actual world need a branch, so the search is
// complete over every W. With `smallest`, a minimum-size W is returned.
// `budget` counts explored leaves and is decremented; exhausting it throws
// Error(kCandidateTooLarge).
std::optional<VarSet> find_contingency(const Scm& scm, const Context& u, const Assignment& actual,
                                       const Intervention& forced, const VarSet& allowed,
                                       bool smallest, std::uint64_t& budget);

// `candidate` carries the counterfactual values of C; `contingency` is pinned to
// actual values. Contingencies for AC3 range over the search variables.
HpVerdict check_hp_cause(const Scm& scm, const Context& u, const Intervention& candidate,
                         const VarSet& contingency, std::uint64_t budget = kDefaultHpBudget);

}  // namespace accause
