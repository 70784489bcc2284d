#pragma once

#include <cstdint>
#include <functional>
#include <iosfwd>
#include <utility>
#include <vector>

#include "accause/rng.hpp"

namespace accause {

struct ArmState {
  std::uint64_t positives = 0;
  std::uint64_t samples = 0;
  double lb = 0.0;
  double ub = 1.0;

  double mean() const { return samples == 0 ? 0.0 : static_cast<double>(positives) / samples; }
};

struct LucbConfig {
  int batch_size = 10;
  double epsilon = 0.3;
  double t_c = 0.01;
  double t_nc = 0.01;
  double t_b = 0.1;
  std::uint64_t n_max = 0;  // 0: samples_per_arm × number of arms
  int samples_per_arm = 20;
  int beam_size = -1;       // -1: every non-cancelling arm is in the beam
  double tolerance_scale = 0.05;

  void validate() const;  // throws kInvalidConfig
};

// Draws one Bernoulli sample of arm `arm`.
using ArmSampler = std::function<bool(std::size_t arm, Rng& rng)>;

struct LucbTraceRow {
  std::size_t arm;
  std::uint64_t step;
  std::uint64_t positives;
  std::uint64_t samples;
  double lb;
  double ub;
};

struct LucbResult {
  std::vector<ArmState> arms;
  bool converged = false;
  std::uint64_t total_samples = 0;
  std::uint64_t steps = 0;

  std::vector<double> estimates() const;
};

// Hoeffding-style bounds with an exploration term over arms and steps, clipped to [0, 1].
std::pair<double, double> confidence_bounds(std::uint64_t positives, std::uint64_t samples,
                                            std::uint64_t t, std::size_t n_arms,
                                            double tolerance_scale);

std::vector<double> naive_evaluate(std::size_t n_arms, const ArmSampler& sample, int n_samples,
                                   Rng& rng);

// One update round each; they refresh the relevant bounds, return the new
// confidence and draw one batch from the extremal arm(s) when it is not below tolerance.
class LucbRound {
 public:
  LucbRound(std::vector<ArmState>& arms, const LucbConfig& config, const ArmSampler& sample,
            Rng& rng, std::vector<LucbTraceRow>* trace = nullptr);

  double update_tb(std::uint64_t t);
  double update_tc(std::uint64_t t);
  double update_tnc(std::uint64_t t);
  void action_arm(std::size_t arm, std::uint64_t t);
  std::uint64_t total_samples() const { return total_; }

 private:
  void refresh_ub(std::size_t arm, std::uint64_t t);
  void refresh_lb(std::size_t arm, std::uint64_t t);

  std::vector<ArmState>& arms_;
  const LucbConfig& config_;
  const ArmSampler& sample_;
  Rng& rng_;
  std::vector<LucbTraceRow>* trace_;
  std::uint64_t total_ = 0;
};

LucbResult lucb_evaluate(std::size_t n_arms, const ArmSampler& sample, const LucbConfig& config,
                         Rng& rng, std::vector<LucbTraceRow>* trace = nullptr);

// Non-cancelling arms split into the b best by mean (ties by index) and the rest.
std::pair<std::vector<std::size_t>, std::vector<std::size_t>> beam_partition(
    const std::vector<ArmState>& arms, const LucbConfig& config);

// Re-checks the three stop conditions against stored arm states.
bool lucb_conditions_hold(const std::vector<ArmState>& arms, const LucbConfig& config);

void write_lucb_trace_csv(std::ostream& out, const std::vector<LucbTraceRow>& rows);

}  // namespace accause
