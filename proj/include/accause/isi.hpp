#pragma once

#include <span>
#include <vector>

#include "accause/beam_search.hpp"

namespace accause {

// How a found cause C, inside an instance, becomes new instances for each
// non-empty s ⊆ C: parents of s plus C \ s (kCauseVariables), or parents of s
// plus the rest of the searched instance (kPriorInstance).
enum class IsiExpansion { kCauseVariables, kPriorInstance };

struct IsiConfig {
  BeamConfig beam;                       // early_stop ends ISI after the first run with causes
  IsiExpansion expansion = IsiExpansion::kCauseVariables;
  std::size_t max_cause_for_expansion = 16;
};

struct InstanceTask {
  VarSet instance_vars;
  VarSet base_contingency;

  friend bool operator==(const InstanceTask&, const InstanceTask&) = default;
};

class IsiMemory {
 public:
  const std::vector<VarSet>& instances() const { return stored_; }
  void insert(VarSet instance) { stored_.push_back(std::move(instance)); }

 private:
  std::vector<VarSet> stored_;
};

// True iff `candidate` is not a subset of any stored instance.
bool check_inclusion(const VarSet& candidate, const IsiMemory& memory);

// One task per non-empty subset of `cause` (size, then lexicographic order), each
// carrying `contingency`. Empty instances are dropped. Throws
// kCauseTooLargeForExpansion above `max_cause`.
std::vector<InstanceTask> expand_cause_instances(const VarSet& cause, const VarSet& contingency,
                                                 std::span<const VarSet> parents,
                                                 IsiExpansion mode = IsiExpansion::kCauseVariables,
                                                 const VarSet& prior_instance = {},
                                                 std::size_t max_cause = 16);

struct IsiStep {
  InstanceTask task;
  std::vector<CauseResult> causes;  // contingencies include the task's base contingency
};

// `parents` may be a superset of the true parent relation. The first instance is
// `root` with an empty contingency.
SearchResult identify_causes_isi(const SearchSpace& space, std::span<const VarSet> parents,
                                 const VarSet& root, const Oracle& oracle,
                                 const Heuristic& heuristic, const IsiConfig& config,
                                 std::vector<IsiStep>* trace = nullptr);

// Parents and root taken from the SCM (root: the inputs of the target).
SearchResult identify_causes_isi(const Scm& scm, const SearchSpace& space, const Oracle& oracle,
                                 const Heuristic& heuristic, const IsiConfig& config,
                                 std::vector<IsiStep>* trace = nullptr);

}  // namespace accause
