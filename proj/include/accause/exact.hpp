#pragma once

#include <cstdint>

#include "accause/cause.hpp"
#include "accause/oracle.hpp"
#include "accause/scm.hpp"

namespace accause {

inline constexpr std::uint64_t kDefaultExactBudget = std::uint64_t{1} << 24;

// Interventions over `space.variables` with at most `max_size` pairs (0: no
// bound); saturates at UINT64_MAX.
std::uint64_t intervention_count(const SearchSpace& space, std::size_t max_size = 0);

// Every intervention by size, variable subset and value odometer; keeps those
// that cancel the target and whose e_C is minimal among all cancelling ones,
// with the first (smallest) witness per e_C. Throws kBudgetExceeded when the
// intervention count exceeds `budget`.
std::vector<CauseResult> enumerate_causes(const SearchSpace& space, const Oracle& oracle,
                                          std::size_t max_size = 0,
                                          std::uint64_t budget = kDefaultExactBudget);

// Same causes from the structural equations: every cause set of size at most
// `max_cause_size` over the search variables, contingencies unrestricted and
// chosen of minimum size. `budget` bounds contingency-search leaves.
std::vector<CauseResult> enumerate_causes_structural(const Scm& scm, const Context& u,
                                                     std::size_t max_cause_size = 4,
                                                     std::uint64_t budget = kDefaultExactBudget);

}  // namespace accause
