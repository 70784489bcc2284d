#include "accause/harness.hpp"

#include <chrono>
#include <cmath>
#include <fstream>
#include <iomanip>
#include <set>
#include <sstream>
#include <tuple>

#include "accause/error.hpp"
#include "accause/parallel.hpp"

namespace accause {

Algorithm parse_algorithm(std::string_view name) {
  if (name == "base") return Algorithm::kBase;
  if (name == "isi") return Algorithm::kIsi;
  throw Error(ErrorCode::kInvalidConfig, "unknown algorithm " + std::string(name));
}

const char* to_string(Algorithm a) { return a == Algorithm::kBase ? "base" : "isi"; }

RunOutcome run_identifier(const Problem& problem, const Context& u, const RunSettings& settings,
                          std::vector<IsiStep>* trace) {
  const SearchSpace space = problem.space(u);
  const std::unique_ptr<Oracle> oracle = problem.oracle(u);
  HeuristicOptions hopts = settings.heuristic_options;
  hopts.seed = settings.beam.seed;
  const Heuristic heuristic = make_heuristic(settings.heuristic, space, hopts);
  if (settings.algorithm == Algorithm::kIsi && problem.dag() == nullptr) {
    throw Error(ErrorCode::kInvalidConfig, "ISI needs a causal graph; " + problem.label() + " has none");
  }

  RunOutcome out;
  const auto start = std::chrono::steady_clock::now();
  SearchResult r;
  if (settings.algorithm == Algorithm::kBase) {
    r = identify_causes(space, *oracle, heuristic, settings.beam);
  } else {
    IsiConfig cfg;
    cfg.beam = settings.beam;
    cfg.expansion = settings.expansion;
    r = identify_causes_isi(*problem.dag(), space, *oracle, heuristic, cfg, trace);
  }
  out.stats = std::move(r.stats);
  out.causes = std::move(r.causes);
  if (settings.minimize) {
    const std::uint64_t before = oracle->calls();
    out.causes = minimize_causes(out.causes, space, *oracle, heuristic, settings.beam, nullptr);
    out.stats.oracle_calls += oracle->calls() - before;
  }
  out.runtime_s = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  return out;
}

const CauseResult* smallest_cause(const std::vector<CauseResult>& causes) {
  const CauseResult* best = nullptr;
  for (const CauseResult& c : causes) {
    if (!best || c.cause_vars.size() < best->cause_vars.size()) best = &c;
  }
  return best;
}

std::optional<std::vector<CauseResult>> exact_reference(const Problem& problem, const Context& u,
                                                        const ReferenceOptions& options) {
  const SearchSpace space = problem.space(u);
  if (intervention_count(space, options.max_size) > options.budget) return std::nullopt;
  const std::unique_ptr<Oracle> oracle = problem.reference_oracle(u);
  return enumerate_causes(space, *oracle, options.max_size, options.budget);
}

std::vector<CauseResult> union_reference(const Problem& problem, const Context& u,
                                         std::span<const std::vector<CauseResult>> runs) {
  std::vector<CauseResult> all;
  for (const auto& run : runs) all.insert(all.end(), run.begin(), run.end());
  all = keep_minimal(std::move(all));
  const SearchSpace space = problem.space(u);
  const std::unique_ptr<Oracle> oracle = problem.reference_oracle(u);
  const Heuristic h = make_heuristic(HeuristicKind::kConstant, space);
  return minimize_causes(all, space, *oracle, h, BeamConfig{}, nullptr);
}

void ExperimentGrid::validate() const {
  auto fail = [](const std::string& m) { throw Error(ErrorCode::kInvalidConfig, m); };
  if (attackers.empty() || beam_sizes.empty() || algorithms.empty() || stochastic_modes.empty() ||
      seeds.empty()) {
    fail("every grid dimension needs at least one value");
  }
  if (contexts == 0) fail("contexts must be positive");
  for (int k : attackers) {
    if (k < 1 && scm != "rock-throwing") fail("attacker counts must be positive");
  }
  if (!(noise >= 0.0 && noise < 0.5)) fail("noise must lie in [0, 0.5)");
  for (int b : beam_sizes) {
    BeamConfig c;
    c.beam_size = b;
    c.max_steps = max_steps;
    c.epsilon = epsilon;
    c.samples = samples;
    c.validate();
  }
  LucbConfig l;
  l.batch_size = batch;
  l.epsilon = epsilon;
  l.t_c = t_c;
  l.t_nc = t_nc;
  l.t_b = t_b;
  l.n_max = n_max;
  l.samples_per_arm = samples;
  l.validate();
}

namespace {

template <class T, class Parse>
std::vector<T> parse_list(const Json& j, Parse parse) {
  std::vector<T> out;
  if (!j.is_array()) return {parse(j)};
  for (const Json& x : j) out.push_back(parse(x));
  return out;
}

Task parse_task(std::string_view name) {
  if (name == "full") return Task::kFull;
  if (name == "smallest") return Task::kSmallest;
  throw Error(ErrorCode::kInvalidConfig, "unknown task " + std::string(name));
}

F1Mode parse_f1_mode(std::string_view name) {
  if (name == "harmonic") return F1Mode::kHarmonic;
  if (name == "geometric") return F1Mode::kGeometric;
  throw Error(ErrorCode::kInvalidConfig, "unknown f1 mode " + std::string(name));
}

}  // namespace

ExperimentGrid grid_from_json(const Json& j) {
  if (!j.is_object()) throw Error(ErrorCode::kSchema, "grid must be a JSON object");
  ExperimentGrid g;
  try {
    for (const auto& [key, v] : j.items()) {
      if (key == "scm") g.scm = v.get<std::string>();
      else if (key == "attackers") g.attackers = parse_list<int>(v, [](const Json& x) { return x.get<int>(); });
      else if (key == "beam_sizes") g.beam_sizes = parse_list<int>(v, [](const Json& x) { return x.get<int>(); });
      else if (key == "algorithms")
        g.algorithms = parse_list<Algorithm>(v, [](const Json& x) { return parse_algorithm(x.get<std::string>()); });
      else if (key == "stochastic_modes")
        g.stochastic_modes = parse_list<StochasticMode>(
            v, [](const Json& x) { return parse_stochastic_mode(x.get<std::string>()); });
      else if (key == "seeds")
        g.seeds = parse_list<std::uint64_t>(v, [](const Json& x) { return x.get<std::uint64_t>(); });
      else if (key == "contexts") g.contexts = v.get<std::size_t>();
      else if (key == "context_seed") g.context_seed = v.get<std::uint64_t>();
      else if (key == "samples") g.samples = v.get<int>();
      else if (key == "batch") g.batch = v.get<int>();
      else if (key == "tc") g.t_c = v.get<double>();
      else if (key == "tnc") g.t_nc = v.get<double>();
      else if (key == "tb") g.t_b = v.get<double>();
      else if (key == "nmax") g.n_max = v.get<std::uint64_t>();
      else if (key == "epsilon") g.epsilon = v.get<double>();
      else if (key == "noise") g.noise = v.get<double>();
      else if (key == "heuristic") g.heuristic = parse_heuristic(v.get<std::string>());
      else if (key == "score") g.score = parse_stochastic_score(v.get<std::string>());
      else if (key == "max_steps") g.max_steps = v.get<int>();
      else if (key == "early_stop") g.early_stop = v.get<bool>();
      else if (key == "minimize") g.minimize = v.get<bool>();
      else if (key == "task") g.task = parse_task(v.get<std::string>());
      else if (key == "reference_max_size") g.reference.max_size = v.get<std::size_t>();
      else if (key == "reference_budget") g.reference.budget = v.get<std::uint64_t>();
      else if (key == "f1_mode") g.f1_mode = parse_f1_mode(v.get<std::string>());
      else throw Error(ErrorCode::kSchema, "unknown grid key '" + key + "'");
    }
  } catch (const Json::exception& e) {
    throw Error(ErrorCode::kSchema, std::string("bad grid: ") + e.what());
  }
  g.validate();
  return g;
}

Json grid_to_json(const ExperimentGrid& g) {
  Json algorithms = Json::array();
  for (Algorithm a : g.algorithms) algorithms.push_back(to_string(a));
  Json modes = Json::array();
  for (StochasticMode m : g.stochastic_modes) modes.push_back(to_string(m));
  return {{"scm", g.scm},
          {"attackers", g.attackers},
          {"beam_sizes", g.beam_sizes},
          {"algorithms", algorithms},
          {"stochastic_modes", modes},
          {"seeds", g.seeds},
          {"contexts", g.contexts},
          {"context_seed", g.context_seed},
          {"samples", g.samples},
          {"batch", g.batch},
          {"tc", g.t_c},
          {"tnc", g.t_nc},
          {"tb", g.t_b},
          {"nmax", g.n_max},
          {"epsilon", g.epsilon},
          {"noise", g.noise},
          {"heuristic", to_string(g.heuristic)},
          {"score", to_string(g.score)},
          {"max_steps", g.max_steps},
          {"early_stop", g.early_stop},
          {"minimize", g.minimize},
          {"task", g.task == Task::kFull ? "full" : "smallest"},
          {"reference_max_size", g.reference.max_size},
          {"reference_budget", g.reference.budget},
          {"f1_mode", g.f1_mode == F1Mode::kHarmonic ? "harmonic" : "geometric"}};
}

std::vector<ExperimentCell> grid_cells(const ExperimentGrid& g) {
  std::vector<ExperimentCell> out;
  for (int k : g.attackers)
    for (Algorithm a : g.algorithms)
      for (StochasticMode m : g.stochastic_modes)
        for (int b : g.beam_sizes)
          for (std::uint64_t s : g.seeds) out.push_back({k, a, m, b, s});
  return out;
}

std::string builtin_name(const ExperimentGrid& g, int k) {
  if (g.scm == "rock-throwing") return g.scm;
  std::string name = g.scm + ":" + std::to_string(k);
  if (g.scm == "smk-noisy") {
    std::ostringstream level;
    level << g.noise;
    name += ":" + level.str();
  }
  return name;
}

RunSettings cell_settings(const ExperimentGrid& g, const ExperimentCell& cell, std::uint64_t run_seed) {
  RunSettings s;
  s.algorithm = cell.algorithm;
  s.heuristic = g.heuristic;
  s.minimize = g.minimize;
  BeamConfig& b = s.beam;
  b.beam_size = cell.beam;
  b.max_steps = g.max_steps;
  b.early_stop = g.early_stop || g.task == Task::kSmallest;
  b.epsilon = g.epsilon;
  b.stochastic = cell.stochastic;
  b.samples = g.samples;
  b.score = g.score;
  b.seed = run_seed;
  b.lucb.batch_size = g.batch;
  b.lucb.t_c = g.t_c;
  b.lucb.t_nc = g.t_nc;
  b.lucb.t_b = g.t_b;
  b.lucb.n_max = g.n_max;
  return s;
}

ExperimentResult run_experiment(const ExperimentGrid& grid, int jobs) {
  grid.validate();
  ExperimentResult result;
  result.grid = grid;
  result.cells = grid_cells(grid);

  std::map<int, Problem> problems;
  std::map<int, std::vector<Context>> contexts;
  for (int k : grid.attackers) {
    if (problems.count(k)) continue;
    Problem p = Problem::builtin(builtin_name(grid, k));
    contexts[k] = sample_contexts(p.system(), grid.contexts, mix_seed(grid.context_seed, k));
    problems.emplace(k, std::move(p));
  }

  struct Job {
    std::size_t cell;
    std::size_t context;
  };
  std::vector<Job> work;
  for (std::size_t c = 0; c < result.cells.size(); ++c) {
    for (std::size_t i = 0; i < contexts[result.cells[c].k].size(); ++i) work.push_back({c, i});
  }
  result.rows.resize(work.size());
  parallel_for(work.size(), jobs, [&](std::size_t w) {
    const ExperimentCell& cell = result.cells[work[w].cell];
    ExperimentRow& row = result.rows[w];
    row.cell = work[w].cell;
    row.context_id = work[w].context;
    row.run_seed = mix_seed(mix_seed(cell.seed, row.cell), row.context_id);
    try {
      RunOutcome out = run_identifier(problems.at(cell.k), contexts.at(cell.k)[row.context_id],
                                      cell_settings(grid, cell, row.run_seed));
      row.causes = std::move(out.causes);
      row.n_causes = row.causes.size();
      row.metrics.runtime_seconds = out.runtime_s;
      row.metrics.oracle_calls = out.stats.oracle_calls;
    } catch (const Error& e) {
      row.error = e.what();
    }
  });

  const double nan = std::nan("");
  auto fail_metrics = [&](ExperimentRow& row) {
    row.metrics.precision = row.metrics.recall = row.metrics.f1 = nan;
    row.metrics.missed = row.metrics.overshoot = nan;
  };

  if (grid.task == Task::kSmallest) {
    for (ExperimentRow& row : result.rows) {
      fail_metrics(row);
      if (!row.error.empty()) {
        row.accuracy = nan;
        continue;
      }
      const ExperimentCell& cell = result.cells[row.cell];
      const Problem& p = problems.at(cell.k);
      try {
        const SmkFacts facts = smk_facts(p.reference_system(), contexts.at(cell.k)[row.context_id]);
        const CauseResult* c = smallest_cause(row.causes);
        row.accuracy = c ? smallest_cause_accuracy(*c, facts) : 0.0;
      } catch (const Error& e) {
        row.accuracy = nan;
        row.error = e.what();
      }
    }
    return result;
  }

  for (auto& [k, ctxs] : contexts) {
    const Problem& p = problems.at(k);
    auto& sources = result.reference_source[k];
    for (std::size_t i = 0; i < ctxs.size(); ++i) {
      std::optional<std::vector<CauseResult>> ref = exact_reference(p, ctxs[i], grid.reference);
      sources.push_back(ref ? "exact" : "union");
      if (!ref) {
        std::vector<std::vector<CauseResult>> runs;
        for (const ExperimentRow& row : result.rows) {
          if (row.error.empty() && result.cells[row.cell].k == k && row.context_id == i) runs.push_back(row.causes);
        }
        ref = union_reference(p, ctxs[i], runs);
      }
      for (ExperimentRow& row : result.rows) {
        if (result.cells[row.cell].k != k || row.context_id != i) continue;
        row.accuracy = nan;
        if (!row.error.empty()) {
          fail_metrics(row);
          continue;
        }
        IdentificationMetrics m = score_causes(row.causes, *ref, grid.f1_mode);
        m.runtime_seconds = row.metrics.runtime_seconds;
        m.oracle_calls = row.metrics.oracle_calls;
        row.metrics = m;
      }
    }
  }
  return result;
}

namespace {

std::string num(double v) {
  if (std::isnan(v)) return "nan";
  std::ostringstream s;
  s << std::setprecision(10) << v;
  return s.str();
}

std::string cell_prefix(const ExperimentGrid& g, const ExperimentCell& c) {
  std::ostringstream s;
  s << g.scm << ',' << c.k << ',' << to_string(c.algorithm) << ',' << c.beam << ','
    << to_string(c.stochastic) << ',' << g.samples << ',' << g.batch << ',' << c.seed;
  return s.str();
}

const char* const kRowHeader =
    "scm,k,algorithm,beam,stochastic_mode,samples,batch,seed,context_id,precision,recall,f1,"
    "missed,overshoot,runtime_s,oracle_calls,n_causes";

std::vector<std::pair<std::string, double>> row_metrics(const ExperimentResult& r, const ExperimentRow& row,
                                                        bool timing) {
  const IdentificationMetrics& m = row.metrics;
  std::vector<std::pair<std::string, double>> out = {
      {"precision", m.precision},
      {"recall", m.recall},
      {"f1", m.f1},
      {"missed", m.missed},
      {"overshoot", m.overshoot},
      {"runtime_s", timing ? m.runtime_seconds : 0.0},
      {"oracle_calls", row.error.empty() ? static_cast<double>(m.oracle_calls) : std::nan("")},
      {"n_causes", row.error.empty() ? static_cast<double>(row.n_causes) : std::nan("")}};
  if (r.grid.task == Task::kSmallest) out.emplace_back("accuracy", row.accuracy);
  return out;
}

}  // namespace

std::string rows_csv(const ExperimentResult& r, bool timing) {
  std::ostringstream s;
  const bool smallest = r.grid.task == Task::kSmallest;
  s << kRowHeader << (smallest ? ",accuracy" : "") << '\n';
  for (const ExperimentRow& row : r.rows) {
    s << cell_prefix(r.grid, r.cells[row.cell]) << ',' << row.context_id;
    for (const auto& [name, v] : row_metrics(r, row, timing)) s << ',' << num(v);
    s << '\n';
  }
  return s.str();
}

std::string summary_csv(const ExperimentResult& r, bool timing) {
  std::ostringstream s;
  s << "scm,k,algorithm,beam,stochastic_mode,samples,batch,seed,metric,count,mean,median,min,q1,q3,max\n";
  for (std::size_t c = 0; c < r.cells.size(); ++c) {
    std::map<std::string, std::vector<double>> values;
    std::vector<std::string> order;
    for (const ExperimentRow& row : r.rows) {
      if (row.cell != c) continue;
      for (const auto& [name, v] : row_metrics(r, row, timing)) {
        if (!values.count(name)) order.push_back(name);
        values[name].push_back(v);
      }
    }
    for (const std::string& name : order) {
      const Summary sm = summarize(values[name]);
      s << cell_prefix(r.grid, r.cells[c]) << ',' << name << ',' << sm.count << ',' << num(sm.mean) << ','
        << num(sm.median) << ',' << num(sm.min) << ',' << num(sm.q1) << ',' << num(sm.q3) << ','
        << num(sm.max) << '\n';
    }
  }
  return s.str();
}

std::map<std::string, std::string> plot_csvs(const ExperimentResult& r, bool timing) {
  using Key = std::tuple<int, std::string, std::string, int>;  // k, algorithm, mode, beam
  std::map<Key, std::vector<double>> quality;
  std::map<Key, std::vector<double>> runtime;
  const bool smallest = r.grid.task == Task::kSmallest;
  for (const ExperimentRow& row : r.rows) {
    const ExperimentCell& c = r.cells[row.cell];
    const Key key{c.k, to_string(c.algorithm), to_string(c.stochastic), c.beam};
    quality[key].push_back(smallest ? row.accuracy : row.metrics.f1);
    const double t = timing ? row.metrics.runtime_seconds : 0.0;
    runtime[key].push_back(row.error.empty() ? t : std::nan(""));
  }
  const std::string metric = smallest ? "accuracy" : "f1";
  std::ostringstream f1;
  std::ostringstream rb;
  std::ostringstream rk;
  f1 << "scm,k,algorithm,stochastic_mode,beam,count,mean_" << metric << ",median_" << metric << '\n';
  rb << "scm,k,algorithm,stochastic_mode,beam,count,mean_runtime_s,median_runtime_s\n";
  rk << "scm,algorithm,stochastic_mode,beam,k,count,mean_runtime_s,median_runtime_s\n";
  for (const auto& [key, v] : quality) {
    const auto& [k, alg, mode, beam] = key;
    const Summary q = summarize(v);
    const Summary t = summarize(runtime.at(key));
    f1 << r.grid.scm << ',' << k << ',' << alg << ',' << mode << ',' << beam << ',' << q.count << ','
       << num(q.mean) << ',' << num(q.median) << '\n';
    rb << r.grid.scm << ',' << k << ',' << alg << ',' << mode << ',' << beam << ',' << t.count << ','
       << num(t.mean) << ',' << num(t.median) << '\n';
  }
  std::map<std::tuple<std::string, std::string, int, int>, Summary> by_k;
  for (const auto& [key, v] : runtime) {
    const auto& [k, alg, mode, beam] = key;
    by_k[{alg, mode, beam, k}] = summarize(v);
  }
  for (const auto& [key, t] : by_k) {
    const auto& [alg, mode, beam, k] = key;
    rk << r.grid.scm << ',' << alg << ',' << mode << ',' << beam << ',' << k << ',' << t.count << ','
       << num(t.mean) << ',' << num(t.median) << '\n';
  }
  return {{"f1_vs_beam.csv", f1.str()}, {"runtime_vs_beam.csv", rb.str()}, {"runtime_vs_k.csv", rk.str()}};
}

void write_experiment(const ExperimentResult& r, const std::filesystem::path& dir, bool timing) {
  std::error_code ec;
  std::filesystem::create_directories(dir, ec);
  if (ec) throw Error(ErrorCode::kIo, "cannot create " + dir.string() + ": " + ec.message());
  auto write = [&](const std::string& name, const std::string& content) {
    std::ofstream f(dir / name, std::ios::binary);
    f << content;
    if (!f) throw Error(ErrorCode::kIo, "cannot write " + (dir / name).string());
  };
  write("rows.csv", rows_csv(r, timing));
  write("summary.csv", summary_csv(r, timing));
  for (const auto& [name, content] : plot_csvs(r, timing)) write(name, content);
}

}  // namespace accause
