#include "accause/intervention.hpp"

#include <algorithm>
#include <string>

#include "accause/error.hpp"

namespace accause {

Intervention::Intervention(std::vector<VarValue> pairs) : pairs_(std::move(pairs)) {
  std::sort(pairs_.begin(), pairs_.end());
  for (std::size_t i = 1; i < pairs_.size(); ++i) {
    if (pairs_[i].var == pairs_[i - 1].var) {
      throw Error(ErrorCode::kInvalidIntervention,
                  "variable " + std::to_string(pairs_[i].var.index) + " assigned twice");
    }
  }
}

bool Intervention::contains(VariableId var) const { return value_of(var).has_value(); }

std::optional<ValueIndex> Intervention::value_of(VariableId var) const {
  auto it = std::lower_bound(pairs_.begin(), pairs_.end(), var,
                             [](const VarValue& p, VariableId v) { return p.var < v; });
  if (it == pairs_.end() || it->var != var) return std::nullopt;
  return it->value;
}

VarSet Intervention::variables() const {
  VarSet out;
  out.reserve(pairs_.size());
  for (const auto& p : pairs_) out.push_back(p.var);
  return out;
}

Intervention Intervention::with(VariableId var, ValueIndex value) const {
  Intervention out;
  out.pairs_.reserve(pairs_.size() + 1);
  auto it = std::lower_bound(pairs_.begin(), pairs_.end(), var,
                             [](const VarValue& p, VariableId v) { return p.var < v; });
  if (it != pairs_.end() && it->var == var) {
    throw Error(ErrorCode::kInvalidIntervention,
                "variable " + std::to_string(var.index) + " assigned twice");
  }
  out.pairs_.insert(out.pairs_.end(), pairs_.begin(), it);
  out.pairs_.push_back({var, value});
  out.pairs_.insert(out.pairs_.end(), it, pairs_.end());
  return out;
}

Intervention Intervention::merged_with(const Intervention& other) const {
  Intervention out;
  out.pairs_.reserve(pairs_.size() + other.pairs_.size());
  auto a = pairs_.begin();
  auto b = other.pairs_.begin();
  while (a != pairs_.end() || b != other.pairs_.end()) {
    if (b == other.pairs_.end() || (a != pairs_.end() && a->var < b->var)) {
      out.pairs_.push_back(*a++);
    } else if (a == pairs_.end() || b->var < a->var) {
      out.pairs_.push_back(*b++);
    } else {
      out.pairs_.push_back(*a++);
      ++b;
    }
  }
  return out;
}

std::size_t Intervention::hash() const {
  std::uint64_t h = 0xcbf29ce484222325ULL;
  for (const auto& p : pairs_) {
    h ^= (static_cast<std::uint64_t>(p.var.index) << 32) | p.value;
    h *= 0x100000001b3ULL;
    h ^= h >> 29;
  }
  return static_cast<std::size_t>(h);
}

SplitSets split_sets(const Intervention& e, const Assignment& actual) {
  SplitSets out;
  for (const auto& p : e.pairs()) {
    if (p.value != actual.at(p.var.index)) {
      out.cause_vars.push_back(p.var);
    } else {
      out.contingency_vars.push_back(p.var);
    }
  }
  return out;
}

VarSet counterfactual_vars(const Intervention& e, const Assignment& actual) {
  VarSet out;
  for (const auto& p : e.pairs()) {
    if (p.value != actual[p.var.index]) out.push_back(p.var);
  }
  return out;
}

Assignment overwrite(Assignment state, const Intervention& e) {
  for (const auto& p : e.pairs()) state.at(p.var.index) = p.value;
  return state;
}

bool is_subset(std::span<const VariableId> a, std::span<const VariableId> b) {
  if (a.size() > b.size()) return false;
  return std::includes(b.begin(), b.end(), a.begin(), a.end());
}

bool is_strict_subset(std::span<const VariableId> a, std::span<const VariableId> b) {
  return a.size() < b.size() && is_subset(a, b);
}

bool contains_any_subset(std::span<const VarSet> sets, std::span<const VariableId> b) {
  return std::any_of(sets.begin(), sets.end(),
                     [&](const VarSet& s) { return is_subset(s, b); });
}

VarSet make_varset(std::vector<VariableId> vars) {
  std::sort(vars.begin(), vars.end());
  vars.erase(std::unique(vars.begin(), vars.end()), vars.end());
  return vars;
}

VarSet set_union(std::span<const VariableId> a, std::span<const VariableId> b) {
  VarSet out;
  out.reserve(a.size() + b.size());
  std::set_union(a.begin(), a.end(), b.begin(), b.end(), std::back_inserter(out));
  return out;
}

VarSet set_intersection(std::span<const VariableId> a, std::span<const VariableId> b) {
  VarSet out;
  std::set_intersection(a.begin(), a.end(), b.begin(), b.end(), std::back_inserter(out));
  return out;
}

VarSet set_difference(std::span<const VariableId> a, std::span<const VariableId> b) {
  VarSet out;
  std::set_difference(a.begin(), a.end(), b.begin(), b.end(), std::back_inserter(out));
  return out;
}

}  // namespace accause
