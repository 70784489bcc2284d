#include "accause/isi.hpp"

#include <algorithm>
#include <deque>

#include "accause/error.hpp"

namespace accause {

bool check_inclusion(const VarSet& candidate, const IsiMemory& memory) {
  return std::none_of(memory.instances().begin(), memory.instances().end(),
                      [&](const VarSet& m) { return is_subset(candidate, m); });
}

std::vector<InstanceTask> expand_cause_instances(const VarSet& cause, const VarSet& contingency,
                                                 std::span<const VarSet> parents,
                                                 IsiExpansion mode, const VarSet& prior_instance,
                                                 std::size_t max_cause) {
  if (cause.empty()) throw Error(ErrorCode::kInvalidConfig, "cannot expand an empty cause");
  if (cause.size() > max_cause) {
    throw Error(ErrorCode::kCauseTooLargeForExpansion,
                "cause of size " + std::to_string(cause.size()) + " exceeds " +
                    std::to_string(max_cause));
  }
  const VarSet& kept_from = mode == IsiExpansion::kCauseVariables ? cause : prior_instance;
  const std::size_t m = cause.size();
  std::vector<std::uint32_t> masks;
  for (std::uint32_t mask = 1; mask < (std::uint32_t{1} << m); ++mask) masks.push_back(mask);
  // Size first; among equal sizes, lexicographic order of the selected positions.
  auto positions = [m](std::uint32_t mask) {
    std::vector<std::size_t> p;
    for (std::size_t i = 0; i < m; ++i) {
      if (mask & (1u << i)) p.push_back(i);
    }
    return p;
  };
  std::stable_sort(masks.begin(), masks.end(), [&](std::uint32_t a, std::uint32_t b) {
    const auto pa = positions(a), pb = positions(b);
    if (pa.size() != pb.size()) return pa.size() < pb.size();
    return pa < pb;
  });

  std::vector<InstanceTask> out;
  for (std::uint32_t mask : masks) {
    VarSet subset;
    std::vector<VariableId> q;
    for (std::size_t i = 0; i < m; ++i) {
      if (mask & (1u << i)) {
        subset.push_back(cause[i]);
        const VarSet& pa = parents[cause[i].index];
        q.insert(q.end(), pa.begin(), pa.end());
      }
    }
    for (VariableId v : set_difference(kept_from, subset)) q.push_back(v);
    VarSet instance = make_varset(std::move(q));
    if (instance.empty()) continue;
    out.push_back({std::move(instance), contingency});
  }
  return out;
}

SearchResult identify_causes_isi(const SearchSpace& space, std::span<const VarSet> parents,
                                 const VarSet& root, const Oracle& oracle,
                                 const Heuristic& heuristic, const IsiConfig& config,
                                 std::vector<IsiStep>* trace) {
  config.beam.validate();
  if (parents.size() != space.universe_size()) {
    throw Error(ErrorCode::kInvalidConfig, "parent map must cover the universe");
  }
  SearchResult result;
  std::vector<CauseResult> all;
  std::deque<InstanceTask> queue;
  IsiMemory memory;
  queue.push_back({root, {}});
  memory.insert(root);
  BeamConfig beam = config.beam;
  std::uint64_t run_index = 0;

  while (!queue.empty()) {
    InstanceTask task = std::move(queue.front());
    queue.pop_front();
    const VarSet instance = set_intersection(task.instance_vars, space.variables);
    const VarSet base = set_difference(task.base_contingency, instance);
    PinnedOracle pinned(oracle, pin_actual(base, space.actual));
    beam.seed = mix_seed(config.beam.seed, run_index++);
    SearchResult run = identify_causes(space.restricted(instance), pinned, heuristic, beam);
    result.stats.merge(run.stats);

    for (CauseResult& c : run.causes) {
      const VarSet local_w = c.contingency_vars;
      c.contingency_vars = set_union(local_w, base);
      for (InstanceTask& next :
           expand_cause_instances(c.cause_vars, c.contingency_vars, parents, config.expansion,
                                  instance, config.max_cause_for_expansion)) {
        if (!check_inclusion(next.instance_vars, memory)) continue;
        memory.insert(next.instance_vars);
        queue.push_back(std::move(next));
      }
    }
    if (trace) trace->push_back({task, run.causes});
    all.insert(all.end(), run.causes.begin(), run.causes.end());
    if (config.beam.early_stop && !all.empty()) break;
  }
  result.causes = keep_minimal(std::move(all));
  return result;
}

SearchResult identify_causes_isi(const Scm& scm, const SearchSpace& space, const Oracle& oracle,
                                 const Heuristic& heuristic, const IsiConfig& config,
                                 std::vector<IsiStep>* trace) {
  return identify_causes_isi(space, scm.parents(), scm.target_inputs(), oracle, heuristic, config,
                             trace);
}

}  // namespace accause
