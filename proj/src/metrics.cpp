#include "accause/metrics.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <set>

#include "accause/error.hpp"

namespace accause {
namespace {

std::set<VarSet> unique(std::span<const VarSet> sets) { return {sets.begin(), sets.end()}; }

std::vector<VarSet> cause_vars(const std::vector<CauseResult>& causes) {
  std::vector<VarSet> out;
  out.reserve(causes.size());
  for (const CauseResult& c : causes) out.push_back(c.cause_vars);
  return out;
}

}  // namespace

IdentificationMetrics precision_recall_f1(std::span<const VarSet> identified,
                                          std::span<const VarSet> reference, F1Mode mode) {
  const std::set<VarSet> id = unique(identified);
  const std::set<VarSet> ref = unique(reference);
  std::size_t hits = 0;
  for (const VarSet& s : id) hits += ref.count(s);
  IdentificationMetrics m;
  m.precision = id.empty() ? 1.0 : static_cast<double>(hits) / id.size();
  m.recall = ref.empty() ? 1.0 : static_cast<double>(hits) / ref.size();
  if (m.precision + m.recall > 0.0) {
    m.f1 = mode == F1Mode::kHarmonic ? 2.0 * m.precision * m.recall / (m.precision + m.recall)
                                     : std::sqrt(m.precision * m.recall);
  }
  return m;
}

std::pair<double, double> missed_overshoot(std::span<const VarSet> identified,
                                           std::span<const VarSet> reference) {
  const std::set<VarSet> ref = unique(reference);
  if (ref.empty()) return {0.0, 0.0};
  std::size_t missed = 0;
  std::size_t over = 0;
  for (const VarSet& r : ref) {
    bool covered = false;
    bool strict = false;
    for (const VarSet& s : identified) {
      if (is_subset(r, s)) {
        covered = true;
        if (s.size() > r.size()) strict = true;
      }
    }
    missed += !covered;
    over += strict;
  }
  return {static_cast<double>(missed) / ref.size(), static_cast<double>(over) / ref.size()};
}

IdentificationMetrics score_causes(const std::vector<CauseResult>& identified,
                                   const std::vector<CauseResult>& reference, F1Mode mode) {
  const std::vector<VarSet> id = cause_vars(identified);
  const std::vector<VarSet> ref = cause_vars(reference);
  IdentificationMetrics m = precision_recall_f1(id, ref, mode);
  std::tie(m.missed, m.overshoot) = missed_overshoot(id, ref);
  return m;
}

SmkFacts smk_facts(const Scm& scm, const Context& u) {
  const Assignment actual = scm.actual_values(u);
  const VariableId sd = scm.id("SD");
  const VariableId dk = scm.id("DK");
  return {scm.domain(sd).at(actual[sd.index]).truthy(), scm.domain(dk).at(actual[dk.index]).truthy()};
}

int expected_smallest_size(const SmkFacts& facts) {
  if (!facts.sd && !facts.dk) {
    throw Error(ErrorCode::kContextInconsistent, "SD and DK are both false, so SMK cannot hold");
  }
  return facts.sd && facts.dk ? 2 : 1;
}

int smallest_cause_accuracy(const CauseResult& cause, const SmkFacts& facts) {
  return static_cast<int>(cause.cause_vars.size()) == expected_smallest_size(facts) ? 1 : 0;
}

Summary summarize(std::vector<double> values) {
  std::erase_if(values, [](double v) { return std::isnan(v); });
  Summary s;
  s.count = values.size();
  if (values.empty()) {
    s.mean = s.median = s.min = s.q1 = s.q3 = s.max = std::nan("");
    return s;
  }
  std::sort(values.begin(), values.end());
  auto quantile = [&](double q) {
    const double pos = q * static_cast<double>(values.size() - 1);
    const auto lo = static_cast<std::size_t>(std::floor(pos));
    const std::size_t hi = std::min(lo + 1, values.size() - 1);
    return values[lo] + (pos - static_cast<double>(lo)) * (values[hi] - values[lo]);
  };
  s.mean = std::accumulate(values.begin(), values.end(), 0.0) / static_cast<double>(values.size());
  s.min = values.front();
  s.max = values.back();
  s.median = quantile(0.5);
  s.q1 = quantile(0.25);
  s.q3 = quantile(0.75);
  return s;
}

}  // namespace accause
