#pragma once

#include <functional>
#include <string>
#include <string_view>

#include "accause/oracle.hpp"

namespace accause {

enum class HeuristicKind { kPositive, kChanged, kNegative, kOccam, kRandom, kConstant, kNonBooleanSmk };

HeuristicKind parse_heuristic(std::string_view name);  // throws kInvalidConfig
const char* to_string(HeuristicKind kind);

// kPost: values after propagating the intervention through the system.
// kRaw: actual values overwritten by the intervention, nothing propagated.
enum class StateMode { kPost, kRaw };

// Scores are minimized.
struct Heuristic {
  std::string name;
  bool needs_state = true;
  StateMode mode = StateMode::kPost;
  std::function<double(const Intervention&, const Assignment& state)> score;

  bool requires_downstream() const { return needs_state && mode == StateMode::kPost; }
};

struct HeuristicOptions {
  StateMode mode = StateMode::kPost;
  bool all_variables = false;  // count over the whole universe instead of the search variables
  std::uint64_t seed = 0;      // for kRandom
};

Heuristic make_heuristic(HeuristicKind kind, const SearchSpace& space,
                         const HeuristicOptions& options = {});

double positive_count(const Assignment& state, std::span<const Domain> domains, const VarSet& scope);
double negative_count(const Assignment& state, std::span<const Domain> domains, const VarSet& scope);
double changed_count(const Assignment& state, const Assignment& actual, const VarSet& scope);
double occam_count(const Assignment& state, const Assignment& actual, const VarSet& scope);

// Sizes of A, AD, KMS, FF, FDB, GP, GK, FS, FN plus the values of SD and DK,
// looked up by name in the universe.
double nonboolean_smk_score(const Assignment& state, const SearchSpace& space);

}  // namespace accause
