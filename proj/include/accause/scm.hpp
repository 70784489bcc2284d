#pragma once

#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <unordered_map>
#include <vector>

#include "accause/intervention.hpp"
#include "accause/rng.hpp"

namespace accause {

// A discrete domain value: an integer, or a finite set of small non-negative
// integers (members 0..62) stored as a bitmask.
struct Value {
  enum class Kind : std::uint8_t { kScalar, kSet };

  Kind kind = Kind::kScalar;
  std::int64_t bits = 0;

  static Value scalar(std::int64_t v) { return {Kind::kScalar, v}; }
  static Value set_mask(std::int64_t mask) { return {Kind::kSet, mask}; }
  static Value set_of(std::span<const int> members);

  bool truthy() const { return bits != 0; }
  int set_size() const;
  std::vector<int> members() const;

  auto operator<=>(const Value&) const = default;
};

class Domain {
 public:
  // Throws Error(kSchema) when empty, heterogeneous or with duplicates.
  explicit Domain(std::vector<Value> values);
  static Domain boolean();
  static Domain integers(std::int64_t lo, std::int64_t hi);
  // Every subset of {0..k-1}, in binary-counting order of characteristic vectors.
  static Domain subsets(int k);

  std::size_t size() const { return values_.size(); }
  const Value& at(ValueIndex i) const { return values_.at(i); }
  std::span<const Value> values() const { return values_; }
  bool is_boolean() const;

  std::optional<ValueIndex> index_of(std::int64_t bits) const;
  std::optional<ValueIndex> index_of(const Value& v) const;

  friend bool operator==(const Domain& a, const Domain& b) { return a.values_ == b.values_; }

 private:
  std::vector<Value> values_;
  bool contiguous_ = false;  // values_[i].bits == offset_ + i
  std::int64_t offset_ = 0;
  std::unordered_map<std::int64_t, ValueIndex> lookup_;
};

// Structural equation as an expression tree over parent and exogenous values.
struct Expr {
  enum class Op : std::uint8_t {
    kVar,           // endogenous value, `name`
    kExo,           // exogenous value, `name`
    kConst,         // `constant`
    kNot,           // 1 if the argument is falsy
    kAnd,
    kOr,
    kUnion,         // set union of the arguments
    kIntersection,  // set intersection of the arguments
    kIndicatorSet,  // {i : argument i truthy}
    kMinElse,       // smallest member of a set argument, `param` when empty
    kThreshold,     // 1 if the scalar argument is > `param`
    kIdentity,
  };

  Op op = Op::kConst;
  std::string name;
  Value constant;
  std::int64_t param = 0;
  std::vector<Expr> args;

  static Expr var(std::string name);
  static Expr exo(std::string name);
  static Expr literal(Value v);
  static Expr negate(Expr e);
  static Expr all_of(std::vector<Expr> args);
  static Expr any_of(std::vector<Expr> args);
  static Expr set_union(std::vector<Expr> args);
  static Expr set_intersection(std::vector<Expr> args);
  static Expr indicator_set(std::vector<Expr> args);
  static Expr min_else(Expr set, std::int64_t fallback);
  static Expr threshold(Expr e, std::int64_t above);
  static Expr identity(Expr e);

  friend bool operator==(const Expr&, const Expr&) = default;
};

struct VariableSpec {
  std::string name;
  Domain domain;
};

struct NoiseSpec {
  double level = 0.0;          // flip probability of every Boolean assignment
  bool exempt_leaves = false;  // leaves (no endogenous parents) never flip

  friend bool operator==(const NoiseSpec&, const NoiseSpec&) = default;
};

struct ScmSpec {
  std::vector<VariableSpec> endogenous;
  std::vector<VariableSpec> exogenous;
  std::vector<std::vector<std::string>> parents;  // per endogenous variable
  std::vector<Expr> equations;                    // per endogenous variable
  Expr target;                                    // truthy when the predicate holds
  std::vector<std::string> search_variables;      // empty: every variable but the target
  bool opaque = false;                            // only the target is observable
  NoiseSpec noise;
};

// Values of the exogenous variables, one index per exogenous variable.
struct Context {
  std::vector<ValueIndex> values;

  friend bool operator==(const Context&, const Context&) = default;
  friend auto operator<=>(const Context&, const Context&) = default;
};

// Parent-before-child order, ties broken by ascending index.
// Throws Error(kCycleDetected) naming one variable on a cycle.
std::vector<VariableId> topological_order(std::span<const VarSet> parents);

class Scm {
 public:
  // Validates names, domains, parent lists and equations; compiles the equations.
  explicit Scm(ScmSpec spec);

  const ScmSpec& spec() const { return spec_; }
  std::size_t num_endogenous() const { return spec_.endogenous.size(); }
  std::size_t num_exogenous() const { return spec_.exogenous.size(); }

  const std::string& name(VariableId v) const { return spec_.endogenous.at(v.index).name; }
  const Domain& domain(VariableId v) const { return spec_.endogenous.at(v.index).domain; }
  std::optional<VariableId> find(std::string_view name) const;
  VariableId id(std::string_view name) const;  // throws kUnknownVariable
  std::optional<std::size_t> find_exogenous(std::string_view name) const;

  std::span<const VarSet> parents() const { return parents_; }
  const VarSet& parents(VariableId v) const { return parents_.at(v.index); }
  std::span<const VariableId> order() const { return order_; }

  // Variable named by a bare `var` target, if any.
  std::optional<VariableId> target_variable() const { return target_var_; }
  // Variables the target reads; for a bare variable target, that variable's parents.
  const VarSet& target_inputs() const { return target_inputs_; }
  const VarSet& search_variables() const { return search_vars_; }
  bool opaque() const { return spec_.opaque; }
  const NoiseSpec& noise() const { return spec_.noise; }
  bool stochastic() const { return spec_.noise.level > 0.0; }

  // Throws kUnknownVariable / kValueOutsideDomain.
  void validate(const Intervention& e) const;
  void validate(const Context& u) const;

  Assignment evaluate(const Context& u, const Intervention& e) const;
  // Stochastic evaluation: each non-intervened Boolean variable flips with the noise level.
  Assignment evaluate(const Context& u, const Intervention& e, Rng& rng) const;
  Assignment actual_values(const Context& u) const { return evaluate(u, Intervention{}); }

  bool target_holds(const Assignment& state) const;
  bool target_holds_bits(std::span<const std::int64_t> endo_bits) const;

  // Structural equation of one variable given the full current state.
  ValueIndex apply_equation(VariableId v, std::span<const std::int64_t> endo_bits,
                            const Context& u) const;
  std::int64_t bits(VariableId v, ValueIndex i) const { return domain(v).at(i).bits; }
  bool is_leaf(VariableId v) const { return parents_.at(v.index).empty(); }

 private:
  struct Instr {
    Expr::Op op;
    std::uint32_t arg = 0;  // variable index or argument count
    std::int64_t imm = 0;
  };
  using Program = std::vector<Instr>;

  void compile(const Expr& e, Program& out, const VarSet* allowed_parents) const;
  std::int64_t run(const Program& p, std::span<const std::int64_t> endo,
                   const Context& u) const;
  template <class Noise>
  Assignment evaluate_impl(const Context& u, const Intervention& e, Noise&& noise) const;

  ScmSpec spec_;
  std::vector<VarSet> parents_;
  std::vector<VariableId> order_;
  std::vector<Program> programs_;
  Program target_program_;
  std::optional<VariableId> target_var_;
  VarSet target_inputs_;
  VarSet search_vars_;
  std::unordered_map<std::string, std::uint32_t> endo_index_;
  std::unordered_map<std::string, std::uint32_t> exo_index_;
};

// (variable, counterfactual value) with the actual values of `cause_vars` replaced.
Intervention make_witness(const VarSet& cause_vars, std::span<const ValueIndex> cf_values,
                          const VarSet& contingency, const Assignment& actual);

}  // namespace accause
