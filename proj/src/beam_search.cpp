#include "accause/beam_search.hpp"

#include <algorithm>
#include <numeric>
#include <unordered_set>

#include "accause/error.hpp"
#include "accause/parallel.hpp"

namespace accause {

StochasticMode parse_stochastic_mode(std::string_view name) {
  if (name == "off") return StochasticMode::kOff;
  if (name == "naive") return StochasticMode::kNaive;
  if (name == "lucb") return StochasticMode::kLucb;
  throw Error(ErrorCode::kInvalidConfig, "unknown stochastic mode " + std::string(name));
}

const char* to_string(StochasticMode mode) {
  switch (mode) {
    case StochasticMode::kOff: return "off";
    case StochasticMode::kNaive: return "naive";
    case StochasticMode::kLucb: return "lucb";
  }
  return "?";
}

StochasticScore parse_stochastic_score(std::string_view name) {
  if (name == "phi") return StochasticScore::kPhiBar;
  if (name == "heuristic") return StochasticScore::kHeuristic;
  if (name == "sampled-heuristic") return StochasticScore::kSampledHeuristic;
  throw Error(ErrorCode::kInvalidConfig, "unknown stochastic score " + std::string(name));
}

const char* to_string(StochasticScore score) {
  switch (score) {
    case StochasticScore::kPhiBar: return "phi";
    case StochasticScore::kHeuristic: return "heuristic";
    case StochasticScore::kSampledHeuristic: return "sampled-heuristic";
  }
  return "?";
}

void BeamConfig::validate() const {
  if (beam_size == 0 || beam_size < -1) {
    throw Error(ErrorCode::kInvalidConfig, "beam size must be positive or -1");
  }
  if (max_steps < 0) throw Error(ErrorCode::kInvalidConfig, "max_steps must be non-negative");
  if (!(epsilon > 0.0 && epsilon < 1.0)) {
    throw Error(ErrorCode::kInvalidConfig, "epsilon must lie in (0, 1)");
  }
  if (samples < 1) throw Error(ErrorCode::kInvalidConfig, "samples must be positive");
  if (threads < 1) throw Error(ErrorCode::kInvalidConfig, "threads must be positive");
  if (stochastic == StochasticMode::kLucb) {
    LucbConfig l = lucb;
    l.epsilon = epsilon;
    l.beam_size = beam_size;
    l.samples_per_arm = samples;
    l.validate();
  }
}

void SearchStats::merge(const SearchStats& other) {
  auto add = [](std::vector<std::uint64_t>& a, const std::vector<std::uint64_t>& b) {
    if (a.size() < b.size()) a.resize(b.size(), 0);
    for (std::size_t i = 0; i < b.size(); ++i) a[i] += b[i];
  };
  add(nodes_per_depth, other.nodes_per_depth);
  add(causes_per_depth, other.causes_per_depth);
  oracle_calls += other.oracle_calls;
  runs += other.runs;
  lucb_calls += other.lucb_calls;
  lucb_converged += other.lucb_converged;
  lucb_violations += other.lucb_violations;
}

std::uint64_t SearchStats::nodes() const {
  return std::accumulate(nodes_per_depth.begin(), nodes_per_depth.end(), std::uint64_t{0});
}

std::vector<Intervention> init_candidates(const SearchSpace& space) {
  std::vector<Intervention> out;
  for (VariableId v : space.variables) {
    for (ValueIndex x = 0; x < space.domains[v.index].size(); ++x) {
      if (x != space.actual[v.index]) out.push_back(Intervention({{v, x}}));
    }
  }
  return out;
}

std::vector<Intervention> expand_beam(const std::vector<Intervention>& beam,
                                      const SearchSpace& space,
                                      const std::vector<VarSet>& known_causes) {
  if (beam.empty()) return init_candidates(space);
  std::vector<Intervention> out;
  std::unordered_set<Intervention, InterventionHash> seen;
  for (const Intervention& parent : beam) {
    const VarSet ec = counterfactual_vars(parent, space.actual);
    for (VariableId v : space.variables) {
      if (parent.contains(v)) continue;
      VarSet extended = ec;
      extended.insert(std::upper_bound(extended.begin(), extended.end(), v), v);
      const bool blocked = contains_any_subset(known_causes, extended);
      for (ValueIndex x = 0; x < space.domains[v.index].size(); ++x) {
        if (x != space.actual[v.index] && blocked) continue;
        Intervention child = parent.with(v, x);
        if (seen.insert(child).second) out.push_back(std::move(child));
      }
    }
  }
  return out;
}

namespace {

class Evaluator {
 public:
  Evaluator(const SearchSpace& space, const Oracle& oracle, const Heuristic& heuristic,
            const BeamConfig& config, SearchStats& stats)
      : space_(space), oracle_(oracle), heuristic_(heuristic), config_(config), stats_(stats),
        rng_(config.seed) {}

  bool sampling() const { return config_.stochastic != StochasticMode::kOff; }

  // Estimated probability that the target still holds, per candidate.
  std::vector<double> phi(const std::vector<Intervention>& cand) {
    std::vector<double> out(cand.size(), 0.0);
    auto sampler = [&](std::size_t a, Rng& r) { return oracle_.query(cand[a], r); };
    switch (config_.stochastic) {
      case StochasticMode::kOff: {
        const bool concurrent =
            config_.threads > 1 && oracle_.reentrant() && !oracle_.stochastic();
        if (concurrent) {
          parallel_for(cand.size(), config_.threads, [&](std::size_t i) {
            thread_local Rng local;
            out[i] = oracle_.query(cand[i], local) ? 1.0 : 0.0;
          });
        } else {
          for (std::size_t i = 0; i < cand.size(); ++i) {
            out[i] = oracle_.query(cand[i], rng_) ? 1.0 : 0.0;
          }
        }
        return out;
      }
      case StochasticMode::kNaive:
        return naive_evaluate(cand.size(), sampler, config_.samples, rng_);
      case StochasticMode::kLucb: {
        LucbConfig l = config_.lucb;
        l.epsilon = config_.epsilon;
        l.beam_size = config_.beam_size;
        l.samples_per_arm = config_.samples;
        const LucbResult r = lucb_evaluate(cand.size(), sampler, l, rng_);
        ++stats_.lucb_calls;
        if (r.converged) {
          ++stats_.lucb_converged;
          if (!lucb_conditions_hold(r.arms, l)) ++stats_.lucb_violations;
        }
        return r.estimates();
      }
    }
    return out;
  }

  bool cancels(double estimate) const {
    return sampling() ? estimate < config_.epsilon : estimate < 0.5;
  }

  double score(const Intervention& e, double estimate) {
    if (sampling() && config_.score == StochasticScore::kPhiBar) return estimate;
    if (!heuristic_.needs_state) return heuristic_.score(e, {});
    if (heuristic_.mode == StateMode::kRaw) return heuristic_.score(e, overwrite(space_.actual, e));
    if (sampling() && config_.score == StochasticScore::kSampledHeuristic) {
      double total = 0.0;
      for (int i = 0; i < config_.samples; ++i) {
        total += heuristic_.score(e, oracle_.observe(e, rng_));
      }
      return total / config_.samples;
    }
    return heuristic_.score(e, oracle_.observe(e, rng_));
  }

 private:
  const SearchSpace& space_;
  const Oracle& oracle_;
  const Heuristic& heuristic_;
  const BeamConfig& config_;
  SearchStats& stats_;
  Rng rng_;
};

}  // namespace

SearchResult identify_causes(const SearchSpace& space, const Oracle& oracle,
                             const Heuristic& heuristic, const BeamConfig& config) {
  config.validate();
  if (heuristic.requires_downstream() && !oracle.observable()) {
    throw Error(ErrorCode::kIncompatibleHeuristic,
                "heuristic '" + heuristic.name + "' needs downstream values the oracle hides");
  }
  SearchResult result;
  SearchStats& stats = result.stats;
  stats.runs = 1;
  const std::uint64_t calls_before = oracle.calls();
  Evaluator eval(space, oracle, heuristic, config, stats);

  const std::size_t n_vars = space.variables.size();
  const std::size_t max_steps =
      config.max_steps == 0 ? n_vars : std::min<std::size_t>(config.max_steps, n_vars);

  std::vector<CauseResult> causes;
  std::vector<VarSet> known;
  std::vector<Intervention> beam;
  for (std::size_t t = 1; t <= max_steps; ++t) {
    std::vector<Intervention> cand = t == 1 ? init_candidates(space)
                                            : expand_beam(beam, space, known);
    if (cand.empty()) break;
    stats.nodes_per_depth.push_back(cand.size());
    const std::vector<double> phi = eval.phi(cand);

    std::vector<std::size_t> neg;
    std::vector<std::size_t> pos;
    for (std::size_t i = 0; i < cand.size(); ++i) (eval.cancels(phi[i]) ? neg : pos).push_back(i);

    // Minimality: against known causes first, then within this depth in insertion order.
    std::vector<std::size_t> kept;
    std::vector<VarSet> kept_ec;
    for (std::size_t i : neg) {
      VarSet ec = counterfactual_vars(cand[i], space.actual);
      if (!contains_any_subset(known, ec)) {
        kept.push_back(i);
        kept_ec.push_back(std::move(ec));
      }
    }
    std::uint64_t found = 0;
    for (std::size_t a = 0; a < kept.size(); ++a) {
      bool minimal = true;
      for (std::size_t b = 0; b < kept.size() && minimal; ++b) {
        if (b == a) continue;
        if (kept_ec[b] == kept_ec[a]) {
          minimal = b > a;
        } else if (is_strict_subset(kept_ec[b], kept_ec[a])) {
          minimal = false;
        }
      }
      if (!minimal) continue;
      causes.push_back(cause_from_intervention(cand[kept[a]], space.actual, static_cast<int>(t)));
      ++found;
    }
    for (std::size_t c = causes.size() - found; c < causes.size(); ++c) {
      known.push_back(causes[c].cause_vars);
    }
    stats.causes_per_depth.push_back(found);
    if (config.early_stop && !causes.empty()) break;
    if (t == max_steps) break;

    std::vector<std::size_t> open;
    for (std::size_t i : pos) {
      if (!contains_any_subset(known, counterfactual_vars(cand[i], space.actual))) open.push_back(i);
    }
    if (config.beam_size >= 0) {
      std::vector<double> score(open.size());
      for (std::size_t j = 0; j < open.size(); ++j) score[j] = eval.score(cand[open[j]], phi[open[j]]);
      std::vector<std::size_t> order(open.size());
      std::iota(order.begin(), order.end(), 0);
      std::stable_sort(order.begin(), order.end(),
                       [&](std::size_t a, std::size_t b) { return score[a] < score[b]; });
      order.resize(std::min<std::size_t>(order.size(), config.beam_size));
      std::vector<std::size_t> chosen;
      for (std::size_t j : order) chosen.push_back(open[j]);
      open = std::move(chosen);
    }
    beam.clear();
    for (std::size_t i : open) beam.push_back(std::move(cand[i]));
    if (beam.empty()) break;
  }

  result.causes = keep_minimal(std::move(causes));
  stats.oracle_calls = oracle.calls() - calls_before;
  return result;
}

std::vector<CauseResult> minimize_causes(const std::vector<CauseResult>& causes,
                                         const SearchSpace& space, const Oracle& oracle,
                                         const Heuristic& heuristic, const BeamConfig& config,
                                         SearchStats* stats) {
  BeamConfig sub = config;
  sub.beam_size = -1;
  sub.max_steps = 0;
  sub.early_stop = false;
  std::vector<CauseResult> out;
  for (const CauseResult& c : causes) {
    PinnedOracle pinned(oracle, pin_actual(c.contingency_vars, space.actual));
    SearchResult r = identify_causes(space.restricted(c.cause_vars), pinned, heuristic, sub);
    if (stats) stats->merge(r.stats);
    if (r.causes.empty()) {
      out.push_back(c);
      continue;
    }
    for (CauseResult& found : r.causes) {
      found.contingency_vars = set_union(found.contingency_vars, c.contingency_vars);
      found.depth_found = c.depth_found;
      out.push_back(std::move(found));
    }
  }
  return keep_minimal(std::move(out));
}

}  // namespace accause
