#include "accause/hp_check.hpp"

#include <limits>

#include "accause/error.hpp"

namespace accause {
namespace {

struct ContingencyDfs {
  const Scm& scm;
  const Context& u;
  const Assignment& actual;
  std::vector<int> forced;
  std::vector<char> allowed;
  std::vector<std::int64_t> bits;
  std::vector<VariableId> pinned;
  std::size_t max_pins = 0;
  std::uint64_t& budget;

  void assign(VariableId v, ValueIndex x) { bits[v.index] = scm.bits(v, x); }

  bool search(std::size_t pos) {
    const auto order = scm.order();
    for (; pos < order.size(); ++pos) {
      const VariableId v = order[pos];
      if (forced[v.index] >= 0) {
        assign(v, static_cast<ValueIndex>(forced[v.index]));
        continue;
      }
      const ValueIndex x = scm.apply_equation(v, bits, u);
      const ValueIndex a = actual[v.index];
      if (x != a && allowed[v.index] && pinned.size() < max_pins) {
        assign(v, x);
        if (search(pos + 1)) return true;
        assign(v, a);
        pinned.push_back(v);
        if (search(pos + 1)) return true;
        pinned.pop_back();
        return false;
      }
      assign(v, x);
    }
    if (budget == 0) throw Error(ErrorCode::kCandidateTooLarge, "contingency search budget exhausted");
    --budget;
    return !scm.target_holds_bits(bits);
  }
};

}  // namespace

std::optional<VarSet> find_contingency(const Scm& scm, const Context& u, const Assignment& actual,
                                       const Intervention& forced, const VarSet& allowed,
                                       bool smallest, std::uint64_t& budget) {
  const std::size_t n = scm.num_endogenous();
  ContingencyDfs dfs{scm, u, actual, std::vector<int>(n, -1), std::vector<char>(n, 0),
                     std::vector<std::int64_t>(n, 0), {}, 0, budget};
  for (const auto& p : forced.pairs()) dfs.forced[p.var.index] = static_cast<int>(p.value);
  std::size_t free_count = 0;
  for (VariableId v : allowed) {
    if (dfs.forced[v.index] < 0 && !dfs.allowed[v.index]) {
      dfs.allowed[v.index] = 1;
      ++free_count;
    }
  }
  const std::size_t lo = smallest ? 0 : free_count;
  for (std::size_t k = lo; k <= free_count; ++k) {
    dfs.max_pins = k;
    dfs.pinned.clear();
    if (dfs.search(0)) return make_varset(dfs.pinned);
  }
  return std::nullopt;
}

HpVerdict check_hp_cause(const Scm& scm, const Context& u, const Intervention& candidate,
                         const VarSet& contingency, std::uint64_t budget) {
  scm.validate(candidate);
  const VarSet cause = candidate.variables();
  for (VariableId w : contingency) {
    if (candidate.contains(w)) {
      throw Error(ErrorCode::kInvalidIntervention, "cause and contingency overlap on " + scm.name(w));
    }
  }
  const Assignment actual = scm.actual_values(u);
  HpVerdict verdict;
  verdict.ac1 = scm.target_holds(actual);

  bool counterfactual = !cause.empty();
  for (const auto& p : candidate.pairs()) counterfactual &= p.value != actual[p.var.index];
  if (counterfactual) {
    std::vector<VarValue> pairs(candidate.pairs().begin(), candidate.pairs().end());
    for (VariableId w : contingency) pairs.push_back({w, actual[w.index]});
    verdict.ac2 = !scm.target_holds(scm.evaluate(u, Intervention(std::move(pairs))));
  }

  // AC3: every proper non-empty subset, every all-counterfactual value tuple.
  verdict.ac3 = true;
  const std::size_t m = cause.size();
  if (m >= 64) throw Error(ErrorCode::kCandidateTooLarge, "cause too large for subset enumeration");
  for (std::uint64_t mask = 1; m > 1 && mask + 1 < (std::uint64_t{1} << m); ++mask) {
    VarSet sub;
    for (std::size_t i = 0; i < m; ++i) {
      if (mask & (std::uint64_t{1} << i)) sub.push_back(cause[i]);
    }
    std::vector<std::vector<ValueIndex>> options;
    for (VariableId v : sub) {
      std::vector<ValueIndex> alt;
      for (ValueIndex x = 0; x < scm.domain(v).size(); ++x) {
        if (x != actual[v.index]) alt.push_back(x);
      }
      options.push_back(std::move(alt));
    }
    bool empty_option = false;
    for (const auto& o : options) empty_option |= o.empty();
    if (empty_option) continue;
    const VarSet allowed = set_difference(scm.search_variables(), sub);
    std::vector<std::size_t> digit(sub.size(), 0);
    while (true) {
      if (budget == 0) throw Error(ErrorCode::kCandidateTooLarge, "AC3 enumeration budget exhausted");
      --budget;
      std::vector<VarValue> pairs;
      for (std::size_t i = 0; i < sub.size(); ++i) pairs.push_back({sub[i], options[i][digit[i]]});
      if (find_contingency(scm, u, actual, Intervention(std::move(pairs)), allowed, false, budget)) {
        verdict.ac3 = false;
        return verdict;
      }
      std::size_t i = 0;
      while (i < digit.size() && ++digit[i] == options[i].size()) digit[i++] = 0;
      if (i == digit.size()) break;
    }
  }
  return verdict;
}

}  // namespace accause
