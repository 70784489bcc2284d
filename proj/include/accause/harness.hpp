#pragma once

#include <cstdint>
#include <filesystem>
#include <map>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "accause/beam_search.hpp"
#include "accause/exact.hpp"
#include "accause/heuristics.hpp"
#include "accause/isi.hpp"
#include "accause/metrics.hpp"
#include "accause/problem.hpp"
#include "accause/scm_json.hpp"

namespace accause {

enum class Algorithm { kBase, kIsi };
Algorithm parse_algorithm(std::string_view name);  // throws kInvalidConfig
const char* to_string(Algorithm a);

struct RunSettings {
  Algorithm algorithm = Algorithm::kBase;
  BeamConfig beam;
  HeuristicKind heuristic = HeuristicKind::kPositive;
  HeuristicOptions heuristic_options;  // seed is taken from beam.seed
  IsiExpansion expansion = IsiExpansion::kCauseVariables;
  bool minimize = false;
};

struct RunOutcome {
  std::vector<CauseResult> causes;
  SearchStats stats;
  double runtime_s = 0.0;  // identifier (and minimization) only
};

// Throws kInvalidConfig for ISI on a system without a causal graph.
RunOutcome run_identifier(const Problem& problem, const Context& u, const RunSettings& settings,
                          std::vector<IsiStep>* trace = nullptr);

// The cause of least size among `causes`, first on ties.
const CauseResult* smallest_cause(const std::vector<CauseResult>& causes);

struct ReferenceOptions {
  std::size_t max_size = 4;  // bound on |e| for exact enumeration
  std::uint64_t budget = kDefaultExactBudget;
};

// Exact enumeration on the noise-free system; nullopt when over budget.
std::optional<std::vector<CauseResult>> exact_reference(const Problem& problem, const Context& u,
                                                        const ReferenceOptions& options);

// Union of identified causes, non-minimal sets dropped, each one minimized.
std::vector<CauseResult> union_reference(const Problem& problem, const Context& u,
                                         std::span<const std::vector<CauseResult>> runs);

enum class Task { kFull, kSmallest };

struct ExperimentGrid {
  std::string scm = "smk";  // rock-throwing, smk, smk-nonboolean, smk-blackbox, smk-noisy
  std::vector<int> attackers{2};
  std::vector<int> beam_sizes{-1};
  std::vector<Algorithm> algorithms{Algorithm::kBase};
  std::vector<StochasticMode> stochastic_modes{StochasticMode::kOff};
  std::vector<std::uint64_t> seeds{0};
  std::size_t contexts = 20;
  std::uint64_t context_seed = 0;
  int samples = 20;
  int batch = 10;
  double t_c = 0.01;
  double t_nc = 0.01;
  double t_b = 0.1;
  std::uint64_t n_max = 0;
  double epsilon = 0.3;
  double noise = 0.01;
  HeuristicKind heuristic = HeuristicKind::kPositive;
  StochasticScore score = StochasticScore::kPhiBar;
  int max_steps = 0;
  bool early_stop = false;
  bool minimize = false;
  Task task = Task::kFull;  // kSmallest forces early_stop and reports accuracy
  ReferenceOptions reference;
  F1Mode f1_mode = F1Mode::kHarmonic;

  void validate() const;
};

ExperimentGrid grid_from_json(const Json& j);  // throws kSchema / kInvalidConfig
Json grid_to_json(const ExperimentGrid& grid);

struct ExperimentCell {
  int k = 0;
  Algorithm algorithm = Algorithm::kBase;
  StochasticMode stochastic = StochasticMode::kOff;
  int beam = -1;
  std::uint64_t seed = 0;
};

// Cartesian product, ordered by k, algorithm, stochastic mode, beam, seed.
std::vector<ExperimentCell> grid_cells(const ExperimentGrid& grid);
std::string builtin_name(const ExperimentGrid& grid, int k);
RunSettings cell_settings(const ExperimentGrid& grid, const ExperimentCell& cell, std::uint64_t run_seed);

struct ExperimentRow {
  std::size_t cell = 0;
  std::size_t context_id = 0;
  std::uint64_t run_seed = 0;
  IdentificationMetrics metrics;
  double accuracy = 0.0;  // smallest-cause task only
  std::size_t n_causes = 0;
  std::vector<CauseResult> causes;
  std::string error;  // non-empty when the run failed; metrics are then NaN
};

struct ExperimentResult {
  ExperimentGrid grid;
  std::vector<ExperimentCell> cells;
  std::vector<ExperimentRow> rows;  // cell-major, then context
  std::map<int, std::vector<std::string>> reference_source;  // per k and context: "exact" or "union"
};

// Runs every (cell, context); each owns the seed mix(mix(cell seed, cell index), context index).
ExperimentResult run_experiment(const ExperimentGrid& grid, int jobs = 1);

// Row and summary CSVs. With timing off, runtime columns are written as 0.
std::string rows_csv(const ExperimentResult& r, bool timing = true);
std::string summary_csv(const ExperimentResult& r, bool timing = true);
// f1_vs_beam.csv, runtime_vs_beam.csv, runtime_vs_k.csv
std::map<std::string, std::string> plot_csvs(const ExperimentResult& r, bool timing = true);
// Writes rows.csv, summary.csv and the plot files into `dir` (created if needed).
void write_experiment(const ExperimentResult& r, const std::filesystem::path& dir, bool timing = true);

}  // namespace accause
