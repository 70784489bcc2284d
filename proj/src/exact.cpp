#include "accause/exact.hpp"

#include <limits>

#include "accause/error.hpp"
#include "accause/hp_check.hpp"

namespace accause {
namespace {

constexpr std::uint64_t kSaturated = std::numeric_limits<std::uint64_t>::max();

std::uint64_t sat_add(std::uint64_t a, std::uint64_t b) { return a > kSaturated - b ? kSaturated : a + b; }
std::uint64_t sat_mul(std::uint64_t a, std::uint64_t b) {
  if (a == 0 || b == 0) return 0;
  return a > kSaturated / b ? kSaturated : a * b;
}

// Calls fn(subset) for each `size`-subset of `vars` in lexicographic order; stops when fn returns false.
template <class Fn>
bool for_each_combination(const VarSet& vars, std::size_t size, Fn&& fn) {
  const std::size_t n = vars.size();
  if (size > n) return true;
  std::vector<std::size_t> idx(size);
  for (std::size_t i = 0; i < size; ++i) idx[i] = i;
  VarSet subset(size);
  while (true) {
    for (std::size_t i = 0; i < size; ++i) subset[i] = vars[idx[i]];
    if (!fn(subset)) return false;
    std::size_t i = size;
    while (i > 0 && idx[i - 1] == n - size + i - 1) --i;
    if (i == 0) return true;
    ++idx[i - 1];
    for (std::size_t j = i; j < size; ++j) idx[j] = idx[j - 1] + 1;
  }
}

}  // namespace

std::uint64_t intervention_count(const SearchSpace& space, std::size_t max_size) {
  const std::size_t n = space.variables.size();
  const std::size_t limit = max_size == 0 ? n : std::min(max_size, n);
  // coef[s] = number of interventions with s pairs.
  std::vector<std::uint64_t> coef(limit + 1, 0);
  coef[0] = 1;
  for (VariableId v : space.variables) {
    const std::uint64_t d = space.domains[v.index].size();
    for (std::size_t s = limit; s >= 1; --s) coef[s] = sat_add(coef[s], sat_mul(coef[s - 1], d));
  }
  std::uint64_t total = 0;
  for (std::size_t s = 1; s <= limit; ++s) total = sat_add(total, coef[s]);
  return total;
}

std::vector<CauseResult> enumerate_causes(const SearchSpace& space, const Oracle& oracle,
                                          std::size_t max_size, std::uint64_t budget) {
  if (oracle.stochastic()) {
    throw Error(ErrorCode::kInvalidConfig, "exact enumeration needs a deterministic oracle");
  }
  const std::uint64_t count = intervention_count(space, max_size);
  if (count > budget) {
    const std::string size = count == kSaturated ? "more than 2^64" : std::to_string(count);
    throw Error(ErrorCode::kBudgetExceeded,
                size + " interventions exceed the budget of " + std::to_string(budget));
  }
  const std::size_t n = space.variables.size();
  const std::size_t limit = max_size == 0 ? n : std::min(max_size, n);
  Rng rng(0);
  std::vector<CauseResult> found;
  std::vector<VarSet> found_sets;
  for (std::size_t size = 1; size <= limit; ++size) {
    for_each_combination(space.variables, size, [&](const VarSet& vars) {
      std::vector<ValueIndex> digit(size, 0);
      std::vector<VarValue> pairs(size);
      while (true) {
        VarSet ec;
        for (std::size_t i = 0; i < size; ++i) {
          pairs[i] = {vars[i], digit[i]};
          if (digit[i] != space.actual[vars[i].index]) ec.push_back(vars[i]);
        }
        if (!ec.empty() && !contains_any_subset(found_sets, ec)) {
          Intervention e(pairs);
          if (!oracle.query(e, rng)) {
            found.push_back(cause_from_intervention(e, space.actual, static_cast<int>(size)));
            found_sets.push_back(std::move(ec));
          }
        }
        std::size_t i = size;
        while (i > 0 && ++digit[i - 1] == space.domains[vars[i - 1].index].size()) digit[--i] = 0;
        if (i == 0) break;
      }
      return true;
    });
  }
  return keep_minimal(std::move(found));
}

std::vector<CauseResult> enumerate_causes_structural(const Scm& scm, const Context& u,
                                                     std::size_t max_cause_size,
                                                     std::uint64_t budget) {
  const Assignment actual = scm.actual_values(u);
  if (!scm.target_holds(actual)) {
    throw Error(ErrorCode::kTargetNotActual, "target is false in the actual world");
  }
  const VarSet& vars = scm.search_variables();
  std::vector<CauseResult> found;
  std::vector<VarSet> found_sets;
  const std::size_t limit = max_cause_size == 0 ? vars.size() : std::min(max_cause_size, vars.size());
  try {
    for (std::size_t size = 1; size <= limit; ++size) {
      for_each_combination(vars, size, [&](const VarSet& cause) {
        if (contains_any_subset(found_sets, cause)) return true;
        std::vector<std::vector<ValueIndex>> options(size);
        for (std::size_t i = 0; i < size; ++i) {
          for (ValueIndex x = 0; x < scm.domain(cause[i]).size(); ++x) {
            if (x != actual[cause[i].index]) options[i].push_back(x);
          }
          if (options[i].empty()) return true;
        }
        const VarSet allowed = set_difference(vars, cause);
        std::vector<std::size_t> digit(size, 0);
        while (true) {
          std::vector<ValueIndex> values(size);
          std::vector<VarValue> pairs(size);
          for (std::size_t i = 0; i < size; ++i) {
            values[i] = options[i][digit[i]];
            pairs[i] = {cause[i], values[i]};
          }
          auto w = find_contingency(scm, u, actual, Intervention(pairs), allowed, true, budget);
          if (w) {
            found.push_back({cause, *w, values, static_cast<int>(size + w->size())});
            found_sets.push_back(cause);
            return true;
          }
          std::size_t i = size;
          while (i > 0 && ++digit[i - 1] == options[i - 1].size()) digit[--i] = 0;
          if (i == 0) return true;
        }
      });
    }
  } catch (const Error& e) {
    if (e.code() == ErrorCode::kCandidateTooLarge) throw Error(ErrorCode::kBudgetExceeded, e.what());
    throw;
  }
  return found;
}

}  // namespace accause
