#pragma once

#include <cstdint>
#include <string_view>
#include <vector>

#include "accause/cause.hpp"
#include "accause/heuristics.hpp"
#include "accause/oracle.hpp"
#include "accause/stochastic.hpp"

namespace accause {

enum class StochasticMode { kOff, kNaive, kLucb };
StochasticMode parse_stochastic_mode(std::string_view name);
const char* to_string(StochasticMode mode);

// Beam score used when the oracle is stochastic.
enum class StochasticScore {
  kPhiBar,            // estimated probability that the target still holds
  kHeuristic,         // heuristic on one sampled state
  kSampledHeuristic,  // heuristic averaged over `samples` sampled states
};

// phi, heuristic, sampled-heuristic
StochasticScore parse_stochastic_score(std::string_view name);
const char* to_string(StochasticScore score);

struct BeamConfig {
  int beam_size = -1;       // -1: no truncation
  int max_steps = 0;        // 0: number of search variables
  bool early_stop = false;
  double epsilon = 0.3;     // cancelling threshold on the estimate
  StochasticMode stochastic = StochasticMode::kOff;
  int samples = 20;         // naive samples per element, LUCB budget per element
  LucbConfig lucb;          // epsilon and beam size are taken from this config
  StochasticScore score = StochasticScore::kPhiBar;
  std::uint64_t seed = 0;
  int threads = 1;

  void validate() const;  // throws kInvalidConfig
};

struct SearchStats {
  std::vector<std::uint64_t> nodes_per_depth;
  std::vector<std::uint64_t> causes_per_depth;
  std::uint64_t oracle_calls = 0;
  std::uint64_t runs = 0;
  std::uint64_t lucb_calls = 0;
  std::uint64_t lucb_converged = 0;
  std::uint64_t lucb_violations = 0;  // converged calls whose bounds break a stop condition

  void merge(const SearchStats& other);
  std::uint64_t nodes() const;
};

struct SearchResult {
  std::vector<CauseResult> causes;
  SearchStats stats;
};

std::vector<Intervention> init_candidates(const SearchSpace& space);

// Children of every beam element over the missing variables, in parent, variable,
// value order. Counterfactual extensions whose e_C would contain a known cause are
// skipped; repeated children are emitted once.
std::vector<Intervention> expand_beam(const std::vector<Intervention>& beam,
                                      const SearchSpace& space,
                                      const std::vector<VarSet>& known_causes);

SearchResult identify_causes(const SearchSpace& space, const Oracle& oracle,
                             const Heuristic& heuristic, const BeamConfig& config);

// Replaces each cause by the minimal sub-causes found with an unlimited beam over
// its own variables, its contingency pinned.
std::vector<CauseResult> minimize_causes(const std::vector<CauseResult>& causes,
                                         const SearchSpace& space, const Oracle& oracle,
                                         const Heuristic& heuristic, const BeamConfig& config,
                                         SearchStats* stats = nullptr);

}  // namespace accause
