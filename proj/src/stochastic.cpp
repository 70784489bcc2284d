#include "accause/stochastic.hpp"

#include <algorithm>
#include <cmath>
#include <ostream>

#include "accause/error.hpp"

namespace accause {

void LucbConfig::validate() const {
  auto in_unit = [](double x) { return x > 0.0 && x < 1.0; };
  if (batch_size < 1) throw Error(ErrorCode::kInvalidConfig, "batch size must be at least 1");
  if (!in_unit(epsilon)) throw Error(ErrorCode::kInvalidConfig, "epsilon must lie in (0, 1)");
  if (!in_unit(t_c) || !in_unit(t_nc) || !in_unit(t_b)) {
    throw Error(ErrorCode::kInvalidConfig, "tolerances must lie in (0, 1)");
  }
  if (samples_per_arm < 1) throw Error(ErrorCode::kInvalidConfig, "samples per arm must be positive");
  if (beam_size == 0 || beam_size < -1) throw Error(ErrorCode::kInvalidConfig, "bad beam size");
  if (tolerance_scale <= 0.0) throw Error(ErrorCode::kInvalidConfig, "tolerance scale must be positive");
}

std::vector<double> LucbResult::estimates() const {
  std::vector<double> out;
  out.reserve(arms.size());
  for (const auto& a : arms) out.push_back(a.mean());
  return out;
}

std::pair<double, double> confidence_bounds(std::uint64_t positives, std::uint64_t samples,
                                            std::uint64_t t, std::size_t n_arms,
                                            double tolerance_scale) {
  const double p = static_cast<double>(positives) / static_cast<double>(samples);
  const double step = static_cast<double>(t) + 1.0;
  const double w = std::sqrt(std::log(static_cast<double>(n_arms) * step * step / tolerance_scale) /
                             (2.0 * static_cast<double>(samples)));
  return {std::max(0.0, p - w), std::min(1.0, p + w)};
}

std::vector<double> naive_evaluate(std::size_t n_arms, const ArmSampler& sample, int n_samples,
                                   Rng& rng) {
  if (n_samples < 1) throw Error(ErrorCode::kInvalidConfig, "n_samples must be at least 1");
  std::vector<double> out(n_arms, 0.0);
  for (std::size_t a = 0; a < n_arms; ++a) {
    int positives = 0;
    for (int i = 0; i < n_samples; ++i) positives += sample(a, rng) ? 1 : 0;
    out[a] = static_cast<double>(positives) / n_samples;
  }
  return out;
}

LucbRound::LucbRound(std::vector<ArmState>& arms, const LucbConfig& config,
                     const ArmSampler& sample, Rng& rng, std::vector<LucbTraceRow>* trace)
    : arms_(arms), config_(config), sample_(sample), rng_(rng), trace_(trace) {}

void LucbRound::action_arm(std::size_t arm, std::uint64_t t) {
  ArmState& a = arms_[arm];
  for (int i = 0; i < config_.batch_size; ++i) a.positives += sample_(arm, rng_) ? 1 : 0;
  a.samples += static_cast<std::uint64_t>(config_.batch_size);
  total_ += static_cast<std::uint64_t>(config_.batch_size);
  if (trace_) trace_->push_back({arm, t, a.positives, a.samples, a.lb, a.ub});
}

void LucbRound::refresh_ub(std::size_t arm, std::uint64_t t) {
  ArmState& a = arms_[arm];
  a.ub = confidence_bounds(a.positives, a.samples, t, arms_.size(), config_.tolerance_scale).second;
}

void LucbRound::refresh_lb(std::size_t arm, std::uint64_t t) {
  ArmState& a = arms_[arm];
  a.lb = confidence_bounds(a.positives, a.samples, t, arms_.size(), config_.tolerance_scale).first;
}

std::pair<std::vector<std::size_t>, std::vector<std::size_t>> beam_partition(
    const std::vector<ArmState>& arms, const LucbConfig& config) {
  std::vector<std::size_t> nc;
  for (std::size_t i = 0; i < arms.size(); ++i) {
    if (arms[i].mean() >= config.epsilon) nc.push_back(i);
  }
  std::stable_sort(nc.begin(), nc.end(),
                   [&](std::size_t a, std::size_t b) { return arms[a].mean() < arms[b].mean(); });
  const std::size_t b = config.beam_size < 0 ? nc.size()
                                             : std::min(nc.size(), std::size_t(config.beam_size));
  std::vector<std::size_t> beam(nc.begin(), nc.begin() + b);
  std::vector<std::size_t> rest(nc.begin() + b, nc.end());
  return {beam, rest};
}

double LucbRound::update_tb(std::uint64_t t) {
  auto [beam, rest] = beam_partition(arms_, config_);
  if (beam.empty() || rest.empty()) return 0.0;
  for (std::size_t a : beam) refresh_ub(a, t);
  for (std::size_t a : rest) refresh_lb(a, t);
  std::size_t hi = beam.front();
  for (std::size_t a : beam) {
    if (arms_[a].ub > arms_[hi].ub) hi = a;
  }
  std::size_t lo = rest.front();
  for (std::size_t a : rest) {
    if (arms_[a].lb < arms_[lo].lb) lo = a;
  }
  const double conf = arms_[hi].ub - arms_[lo].lb;
  if (conf >= config_.t_b) {
    action_arm(hi, t);
    action_arm(lo, t);
  }
  return conf;
}

double LucbRound::update_tc(std::uint64_t t) {
  std::vector<std::size_t> c;
  for (std::size_t i = 0; i < arms_.size(); ++i) {
    if (arms_[i].mean() < config_.epsilon) c.push_back(i);
  }
  if (c.empty()) return 0.0;
  for (std::size_t a : c) refresh_ub(a, t);
  std::size_t hi = c.front();
  for (std::size_t a : c) {
    if (arms_[a].ub > arms_[hi].ub) hi = a;
  }
  const double conf = arms_[hi].ub - config_.epsilon;
  if (conf >= config_.t_c) action_arm(hi, t);
  return conf;
}

double LucbRound::update_tnc(std::uint64_t t) {
  std::vector<std::size_t> nc;
  for (std::size_t i = 0; i < arms_.size(); ++i) {
    if (arms_[i].mean() >= config_.epsilon) nc.push_back(i);
  }
  if (nc.empty()) return 0.0;
  for (std::size_t a : nc) refresh_lb(a, t);
  std::size_t lo = nc.front();
  for (std::size_t a : nc) {
    if (arms_[a].lb < arms_[lo].lb) lo = a;
  }
  const double conf = config_.epsilon - arms_[lo].lb;
  if (conf >= config_.t_nc) action_arm(lo, t);
  return conf;
}

LucbResult lucb_evaluate(std::size_t n_arms, const ArmSampler& sample, const LucbConfig& config,
                         Rng& rng, std::vector<LucbTraceRow>* trace) {
  config.validate();
  LucbResult result;
  result.arms.assign(n_arms, ArmState{});
  if (n_arms == 0) {
    result.converged = true;
    return result;
  }
  const std::uint64_t floor = static_cast<std::uint64_t>(config.batch_size) * n_arms;
  std::uint64_t n_max = config.n_max != 0
                            ? config.n_max
                            : static_cast<std::uint64_t>(config.samples_per_arm) * n_arms;
  n_max = std::max(n_max, floor);

  LucbRound round(result.arms, config, sample, rng, trace);
  for (std::size_t a = 0; a < n_arms; ++a) round.action_arm(a, 0);

  double tb = 1.0;
  double tc = 1.0;
  double tnc = 1.0;
  std::uint64_t t = 0;
  auto over_budget = [&] { return round.total_samples() > n_max; };
  while (tb >= config.t_b || tc >= config.t_c || tnc >= config.t_nc) {
    tb = round.update_tb(t);
    if (over_budget()) break;
    tc = round.update_tc(t);
    if (over_budget()) break;
    tnc = round.update_tnc(t);
    ++t;
    if (over_budget()) break;
  }
  result.converged = tb < config.t_b && tc < config.t_c && tnc < config.t_nc && !over_budget();
  result.total_samples = round.total_samples();
  result.steps = t;
  return result;
}

bool lucb_conditions_hold(const std::vector<ArmState>& arms, const LucbConfig& config) {
  for (const auto& a : arms) {
    if (a.samples == 0) return false;
    if (a.mean() < config.epsilon && !(a.ub - config.epsilon < config.t_c)) return false;
    if (a.mean() >= config.epsilon && !(config.epsilon - a.lb < config.t_nc)) return false;
  }
  auto [beam, rest] = beam_partition(arms, config);
  if (beam.empty() || rest.empty()) return true;
  double max_ub = 0.0;
  for (std::size_t a : beam) max_ub = std::max(max_ub, arms[a].ub);
  double min_lb = 1.0;
  for (std::size_t a : rest) min_lb = std::min(min_lb, arms[a].lb);
  return max_ub - min_lb < config.t_b;
}

void write_lucb_trace_csv(std::ostream& out, const std::vector<LucbTraceRow>& rows) {
  out << "arm,step,P,S,lb,ub\n";
  for (const auto& r : rows) {
    out << r.arm << ',' << r.step << ',' << r.positives << ',' << r.samples << ',' << r.lb << ','
        << r.ub << '\n';
  }
}

}  // namespace accause
