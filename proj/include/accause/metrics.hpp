#pragma once

#include <cstdint>
#include <span>
#include <utility>
#include <vector>

#include "accause/cause.hpp"
#include "accause/scm.hpp"

namespace accause {

enum class F1Mode { kHarmonic, kGeometric };

struct IdentificationMetrics {
  double precision = 0.0;
  double recall = 0.0;
  double f1 = 0.0;
  double missed = 0.0;
  double overshoot = 0.0;
  double runtime_seconds = 0.0;
  std::uint64_t oracle_calls = 0;
};

// Causes compared as variable sets; duplicates count once. An empty
// identified list has precision 1, an empty reference recall 1.
IdentificationMetrics precision_recall_f1(std::span<const VarSet> identified,
                                          std::span<const VarSet> reference,
                                          F1Mode mode = F1Mode::kHarmonic);

// missed: reference causes with no identified superset (equal included).
// overshoot: reference causes with an identified strict superset.
std::pair<double, double> missed_overshoot(std::span<const VarSet> identified,
                                           std::span<const VarSet> reference);

// Both together, witnesses ignored.
IdentificationMetrics score_causes(const std::vector<CauseResult>& identified,
                                   const std::vector<CauseResult>& reference,
                                   F1Mode mode = F1Mode::kHarmonic);

struct SmkFacts {
  bool sd = false;
  bool dk = false;
};

// Actual SD and DK of a base SMK system under u.
SmkFacts smk_facts(const Scm& scm, const Context& u);

// Expected size 1 when exactly one of SD, DK holds, 2 when both do.
// Throws kContextInconsistent when neither holds.
int expected_smallest_size(const SmkFacts& facts);
int smallest_cause_accuracy(const CauseResult& cause, const SmkFacts& facts);

struct Summary {
  std::size_t count = 0;
  double mean = 0.0;
  double median = 0.0;
  double min = 0.0;
  double q1 = 0.0;
  double q3 = 0.0;
  double max = 0.0;
};

// Quartiles by linear interpolation between order statistics. NaNs are skipped.
Summary summarize(std::vector<double> values);

}  // namespace accause
