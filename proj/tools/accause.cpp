#include <CLI11.hpp>

#include <fstream>
#include <iostream>
#include <optional>
#include <random>

#include "accause/error.hpp"
#include "accause/exact.hpp"
#include "accause/harness.hpp"
#include "accause/report.hpp"
#include "accause/scm_json.hpp"

using namespace accause;

namespace {

struct SystemArgs {
  std::string builtin;
  std::string scm_file;
  std::string context_file;
  std::size_t context_index = 0;
  std::uint64_t context_seed = 0;

  void add(CLI::App* cmd) {
    auto* b = cmd->add_option("--builtin", builtin,
                              "rock-throwing, smk:K, smk-nonboolean:K, smk-blackbox:K or smk-noisy:K[:LEVEL]");
    auto* s = cmd->add_option("--scm", scm_file, "SCM JSON file");
    b->excludes(s);
    cmd->add_option("--context", context_file, "context JSON file {exogenous: value}");
    cmd->add_option("--context-index", context_index, "without --context: index of a sampled context");
    cmd->add_option("--context-seed", context_seed, "without --context: sampling seed");
  }

  Problem problem() const {
    if (!builtin.empty()) return Problem::builtin(builtin);
    if (scm_file.empty()) throw Error(ErrorCode::kInvalidConfig, "one of --builtin or --scm is required");
    return Problem::from_scm(scm_from_json(read_json_file(scm_file)), scm_file);
  }

  Context context(const Problem& p) const {
    if (!context_file.empty()) return context_from_json(p.system(), read_json_file(context_file));
    if (context_index == 0 && context_seed == 0) {
      if (p.kind() == "rock-throwing") return context_with_true(p.system(), {"st", "bt"});
      if (p.attackers() == 3 && p.kind() != "smk-nonboolean" && p.kind() != "custom") {
        return smk3_reference_context();
      }
    }
    if (p.kind() == "custom") throw Error(ErrorCode::kInvalidConfig, "--context is required with --scm");
    return sample_contexts(p.system(), context_index + 1, context_seed).back();
  }
};

void emit(const Json& j, const std::string& out) {
  const std::string text = j.dump(2) + "\n";
  if (out.empty()) {
    std::cout << text;
    return;
  }
  std::ofstream f(out, std::ios::binary);
  f << text;
  if (!f) throw Error(ErrorCode::kIo, "cannot write " + out);
}

int exit_code(ErrorCode code) {
  switch (code) {
    case ErrorCode::kBudgetExceeded:
    case ErrorCode::kCandidateTooLarge:
    case ErrorCode::kCauseTooLargeForExpansion:
    case ErrorCode::kSamplingExhausted:
      return 3;
    default:
      return 2;
  }
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Actual-cause identification in structural causal models"};
  app.require_subcommand(1);

  // identify
  auto* identify = app.add_subcommand("identify", "identify the causes of the target under one context");
  SystemArgs id_sys;
  id_sys.add(identify);
  std::string algorithm = "base";
  int beam = -1;
  int max_steps = 0;
  bool early_stop = false;
  std::string heuristic = "positive";
  bool raw_state = false;
  bool all_variables = false;
  double epsilon = 0.3;
  std::string stochastic = "off";
  std::string score = "phi";
  int samples = 20;
  LucbConfig lucb;
  std::optional<std::uint64_t> seed;
  bool minimize = false;
  std::string expansion = "cause";
  int jobs = 1;
  bool timing = false;
  std::string reference_file;
  std::string out;
  identify->add_option("--algorithm", algorithm, "base or isi")->check(CLI::IsMember({"base", "isi"}));
  identify->add_option("--beam", beam, "beam size, -1 for unlimited");
  identify->add_option("--max-steps", max_steps, "largest intervention size, 0 for no bound");
  identify->add_flag("--early-stop", early_stop, "stop at the first depth that yields a cause");
  identify->add_option("--heuristic", heuristic,
                       "positive, changed, negative, occam, random, constant or nonboolean-smk");
  identify->add_flag("--raw-state", raw_state, "score the intervened actual state without propagation");
  identify->add_flag("--all-variables", all_variables, "score over every variable, not only searchable ones");
  identify->add_option("--epsilon", epsilon, "cancelling threshold for stochastic estimates");
  identify->add_option("--stochastic", stochastic, "off, naive or lucb")
      ->check(CLI::IsMember({"off", "naive", "lucb"}));
  identify->add_option("--score", score, "stochastic beam score: phi, heuristic or sampled-heuristic");
  identify->add_option("--samples", samples, "samples per candidate (naive) or per arm budget (lucb)");
  identify->add_option("--batch", lucb.batch_size, "LUCB batch size");
  identify->add_option("--tc", lucb.t_c, "LUCB cause tolerance");
  identify->add_option("--tnc", lucb.t_nc, "LUCB non-cause tolerance");
  identify->add_option("--tb", lucb.t_b, "LUCB beam tolerance");
  identify->add_option("--nmax", lucb.n_max, "LUCB total sample budget, 0 for samples times arms");
  identify->add_option("--seed", seed, "random seed; chosen and printed when omitted");
  identify->add_flag("--minimize", minimize, "minimize every cause found");
  identify->add_option("--expansion", expansion, "ISI instance expansion: cause or prior")
      ->check(CLI::IsMember({"cause", "prior"}));
  identify->add_option("--jobs", jobs, "threads for deterministic oracle queries");
  identify->add_flag("--timing", timing, "include the runtime in the report");
  identify->add_option("--reference", reference_file, "reference causes JSON; adds metrics to the report");
  identify->add_option("-o,--output", out, "output file (default stdout)");

  // exact
  auto* exact = app.add_subcommand("exact", "enumerate every cause by brute force");
  SystemArgs ex_sys;
  ex_sys.add(exact);
  std::size_t max_size = 4;
  std::uint64_t budget = kDefaultExactBudget;
  bool structural = false;
  std::string ex_out;
  exact->add_option("--max-size", max_size, "largest intervention size, 0 for no bound");
  exact->add_option("--budget", budget, "largest number of interventions to enumerate");
  exact->add_flag("--structural", structural,
                  "use the structural equations; --max-size then bounds the cause size");
  exact->add_option("-o,--output", ex_out, "output file (default stdout)");

  // gen
  auto* gen = app.add_subcommand("gen", "write a builtin system as SCM JSON");
  std::string gen_builtin;
  std::string gen_out;
  gen->add_option("--builtin", gen_builtin, "builtin system")->required();
  gen->add_option("-o,--output", gen_out, "output file (default stdout)");

  // bench
  auto* bench = app.add_subcommand("bench", "run an experiment grid");
  std::string grid_file;
  std::string bench_out = ".";
  int bench_jobs = 1;
  bool no_timing = false;
  bench->add_option("grid", grid_file, "grid JSON file")->required();
  bench->add_option("-o,--output", bench_out, "output directory");
  bench->add_option("--jobs", bench_jobs, "parallel runs");
  bench->add_flag("--no-timing", no_timing, "write runtimes as 0 for reproducible files");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : 2;
  }

  try {
    if (*identify) {
      const Problem p = id_sys.problem();
      const Context u = id_sys.context(p);
      if (!seed) {
        seed = std::random_device{}();
        std::cerr << "seed: " << *seed << "\n";
      }
      RunSettings s;
      s.algorithm = parse_algorithm(algorithm);
      s.heuristic = parse_heuristic(heuristic);
      s.heuristic_options.mode = raw_state ? StateMode::kRaw : StateMode::kPost;
      s.heuristic_options.all_variables = all_variables;
      s.expansion = expansion == "prior" ? IsiExpansion::kPriorInstance : IsiExpansion::kCauseVariables;
      s.minimize = minimize;
      s.beam.beam_size = beam;
      s.beam.max_steps = max_steps;
      s.beam.early_stop = early_stop;
      s.beam.epsilon = epsilon;
      s.beam.stochastic = parse_stochastic_mode(stochastic);
      s.beam.score = parse_stochastic_score(score);
      s.beam.samples = samples;
      s.beam.lucb = lucb;
      s.beam.seed = *seed;
      s.beam.threads = jobs;
      const RunOutcome r = run_identifier(p, u, s);
      const SearchSpace space = p.space(u);

      Json report = {{"system", p.label()},
                     {"algorithm", algorithm},
                     {"seed", *seed},
                     {"context", context_to_json(p.system(), u)},
                     {"causes", causes_to_json(space, r.causes)},
                     {"stats", stats_to_json(r.stats)}};
      report["config"] = {{"beam", beam},
                          {"max_steps", max_steps},
                          {"early_stop", early_stop},
                          {"heuristic", heuristic},
                          {"state", raw_state ? "raw" : "post"},
                          {"all_variables", all_variables},
                          {"epsilon", epsilon},
                          {"stochastic", stochastic},
                          {"score", score},
                          {"samples", samples},
                          {"batch", lucb.batch_size},
                          {"tc", lucb.t_c},
                          {"tnc", lucb.t_nc},
                          {"tb", lucb.t_b},
                          {"nmax", lucb.n_max},
                          {"minimize", minimize},
                          {"expansion", expansion}};
      if (!reference_file.empty()) {
        const auto ref = causes_from_json(space, read_json_file(reference_file));
        IdentificationMetrics m = score_causes(r.causes, ref);
        m.runtime_seconds = r.runtime_s;
        m.oracle_calls = r.stats.oracle_calls;
        report["metrics"] = metrics_to_json(m, timing);
      }
      if (timing) report["runtime_s"] = r.runtime_s;
      emit(report, out);
    } else if (*exact) {
      const Problem p = ex_sys.problem();
      const Context u = ex_sys.context(p);
      const SearchSpace space = p.space(u);
      std::vector<CauseResult> causes;
      if (structural) {
        if (p.dag() == nullptr) throw Error(ErrorCode::kInvalidConfig, "--structural needs a causal graph");
        causes = enumerate_causes_structural(p.reference_system(), u, max_size, budget);
      } else {
        causes = enumerate_causes(space, *p.reference_oracle(u), max_size, budget);
      }
      emit({{"system", p.label()},
            {"context", context_to_json(p.system(), u)},
            {"method", structural ? "structural" : "enumeration"},
            {"max_size", max_size},
            {"causes", causes_to_json(space, causes)}},
           ex_out);
    } else if (*gen) {
      emit(scm_to_json(Problem::builtin(gen_builtin).system()), gen_out);
    } else if (*bench) {
      const ExperimentGrid grid = grid_from_json(read_json_file(grid_file));
      const ExperimentResult r = run_experiment(grid, bench_jobs);
      write_experiment(r, bench_out, !no_timing);
      std::size_t failed = 0;
      for (const ExperimentRow& row : r.rows) {
        if (!row.error.empty()) {
          ++failed;
          std::cerr << "cell " << row.cell << " context " << row.context_id << ": " << row.error << "\n";
        }
      }
      std::cout << r.rows.size() << " runs over " << r.cells.size() << " cells written to " << bench_out;
      if (failed) std::cout << " (" << failed << " failed)";
      std::cout << "\n";
    }
  } catch (const Error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return exit_code(e.code());
  } catch (const Json::exception& e) {
    std::cerr << "error: Schema: " << e.what() << "\n";
    return 2;
  }
  return 0;
}
