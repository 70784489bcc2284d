#pragma once

#include <compare>
#include <cstddef>
#include <cstdint>
#include <optional>
#include <span>
#include <vector>

namespace accause {

// Dense handle of a variable inside one system (0..n-1).
struct VariableId {
  std::uint32_t index = 0;

  auto operator<=>(const VariableId&) const = default;
};

// Position of a value inside the variable's ordered domain.
using ValueIndex = std::uint32_t;

// One value index per variable of the system.
using Assignment = std::vector<ValueIndex>;

// Sorted, duplicate-free set of variables.
using VarSet = std::vector<VariableId>;

struct VarValue {
  VariableId var;
  ValueIndex value = 0;

  auto operator<=>(const VarValue&) const = default;
};

// A set of (variable, value) pairs, at most one per variable, kept sorted by variable.
class Intervention {
 public:
  Intervention() = default;
  // Sorts the pairs; throws Error(kInvalidIntervention) on a repeated variable.
  explicit Intervention(std::vector<VarValue> pairs);

  std::span<const VarValue> pairs() const { return pairs_; }
  std::size_t size() const { return pairs_.size(); }
  bool empty() const { return pairs_.empty(); }

  bool contains(VariableId var) const;
  std::optional<ValueIndex> value_of(VariableId var) const;
  VarSet variables() const;

  // Copy with one more pair; `var` must not already be present.
  Intervention with(VariableId var, ValueIndex value) const;
  // Pairs of `other` whose variable is absent here are added.
  Intervention merged_with(const Intervention& other) const;

  std::size_t hash() const;

  friend bool operator==(const Intervention&, const Intervention&) = default;
  friend auto operator<=>(const Intervention& a, const Intervention& b) {
    return a.pairs_ <=> b.pairs_;
  }

 private:
  std::vector<VarValue> pairs_;
};

struct InterventionHash {
  std::size_t operator()(const Intervention& e) const { return e.hash(); }
};

struct SplitSets {
  VarSet cause_vars;        // e_C: pairs whose value differs from the actual one
  VarSet contingency_vars;  // e_W: pairs pinned to the actual value
};

SplitSets split_sets(const Intervention& e, const Assignment& actual);

// e_C alone, without allocating e_W.
VarSet counterfactual_vars(const Intervention& e, const Assignment& actual);

// Applies the intervention to a copy of `state`.
Assignment overwrite(Assignment state, const Intervention& e);

// a ⊆ b for sorted sets.
bool is_subset(std::span<const VariableId> a, std::span<const VariableId> b);
bool is_strict_subset(std::span<const VariableId> a, std::span<const VariableId> b);
bool contains_any_subset(std::span<const VarSet> sets, std::span<const VariableId> b);

VarSet make_varset(std::vector<VariableId> vars);
VarSet set_union(std::span<const VariableId> a, std::span<const VariableId> b);
VarSet set_intersection(std::span<const VariableId> a, std::span<const VariableId> b);
VarSet set_difference(std::span<const VariableId> a, std::span<const VariableId> b);

}  // namespace accause
