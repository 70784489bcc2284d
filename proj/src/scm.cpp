#include "accause/scm.hpp"

#include <algorithm>
#include <bit>
#include <functional>
#include <queue>

#include "accause/error.hpp"

namespace accause {

Value Value::set_of(std::span<const int> members) {
  std::int64_t mask = 0;
  for (int m : members) {
    if (m < 0 || m > 62) throw Error(ErrorCode::kSchema, "set member out of range 0..62");
    mask |= std::int64_t{1} << m;
  }
  return set_mask(mask);
}

int Value::set_size() const { return std::popcount(static_cast<std::uint64_t>(bits)); }

std::vector<int> Value::members() const {
  std::vector<int> out;
  for (int i = 0; i < 63; ++i) {
    if (bits & (std::int64_t{1} << i)) out.push_back(i);
  }
  return out;
}

Domain::Domain(std::vector<Value> values) : values_(std::move(values)) {
  if (values_.empty()) throw Error(ErrorCode::kSchema, "empty domain");
  const auto kind = values_.front().kind;
  contiguous_ = true;
  offset_ = values_.front().bits;
  for (std::size_t i = 0; i < values_.size(); ++i) {
    if (values_[i].kind != kind) throw Error(ErrorCode::kSchema, "domain mixes scalars and sets");
    if (!lookup_.emplace(values_[i].bits, static_cast<ValueIndex>(i)).second) {
      throw Error(ErrorCode::kSchema, "duplicate domain value");
    }
    if (values_[i].bits != offset_ + static_cast<std::int64_t>(i)) contiguous_ = false;
  }
  if (contiguous_) lookup_.clear();
}

Domain Domain::boolean() { return integers(0, 1); }

Domain Domain::integers(std::int64_t lo, std::int64_t hi) {
  std::vector<Value> v;
  for (std::int64_t x = lo; x <= hi; ++x) v.push_back(Value::scalar(x));
  return Domain(std::move(v));
}

Domain Domain::subsets(int k) {
  std::vector<Value> v;
  for (std::int64_t mask = 0; mask < (std::int64_t{1} << k); ++mask) v.push_back(Value::set_mask(mask));
  return Domain(std::move(v));
}

bool Domain::is_boolean() const {
  return values_.size() == 2 && values_[0] == Value::scalar(0) && values_[1] == Value::scalar(1);
}

std::optional<ValueIndex> Domain::index_of(std::int64_t bits) const {
  if (contiguous_) {
    const std::int64_t i = bits - offset_;
    if (i < 0 || i >= static_cast<std::int64_t>(values_.size())) return std::nullopt;
    return static_cast<ValueIndex>(i);
  }
  auto it = lookup_.find(bits);
  if (it == lookup_.end()) return std::nullopt;
  return it->second;
}

std::optional<ValueIndex> Domain::index_of(const Value& v) const {
  if (v.kind != values_.front().kind) return std::nullopt;
  return index_of(v.bits);
}

Expr Expr::var(std::string name) {
  Expr e;
  e.op = Op::kVar;
  e.name = std::move(name);
  return e;
}

Expr Expr::exo(std::string name) {
  Expr e;
  e.op = Op::kExo;
  e.name = std::move(name);
  return e;
}

Expr Expr::literal(Value v) {
  Expr e;
  e.op = Op::kConst;
  e.constant = v;
  return e;
}

namespace {

Expr make(Expr::Op op, std::vector<Expr> args, std::int64_t param = 0) {
  Expr e;
  e.op = op;
  e.args = std::move(args);
  e.param = param;
  return e;
}

}  // namespace

Expr Expr::negate(Expr e) { return make(Op::kNot, {std::move(e)}); }
Expr Expr::all_of(std::vector<Expr> args) { return make(Op::kAnd, std::move(args)); }
Expr Expr::any_of(std::vector<Expr> args) { return make(Op::kOr, std::move(args)); }
Expr Expr::set_union(std::vector<Expr> args) { return make(Op::kUnion, std::move(args)); }
Expr Expr::set_intersection(std::vector<Expr> args) {
  return make(Op::kIntersection, std::move(args));
}
Expr Expr::indicator_set(std::vector<Expr> args) {
  return make(Op::kIndicatorSet, std::move(args));
}
Expr Expr::min_else(Expr set, std::int64_t fallback) {
  return make(Op::kMinElse, {std::move(set)}, fallback);
}
Expr Expr::threshold(Expr e, std::int64_t above) {
  return make(Op::kThreshold, {std::move(e)}, above);
}
Expr Expr::identity(Expr e) { return make(Op::kIdentity, {std::move(e)}); }

namespace {

// Kahn's algorithm; on a cycle returns the partial order and sets `cycle_var`
// to a variable lying on a cycle.
std::vector<VariableId> topo_impl(std::span<const VarSet> parents,
                                  std::optional<std::uint32_t>& cycle_var) {
  const std::size_t n = parents.size();
  std::vector<std::vector<std::uint32_t>> children(n);
  std::vector<std::size_t> indegree(n, 0);
  for (std::size_t v = 0; v < n; ++v) {
    for (VariableId p : parents[v]) {
      if (p.index >= n) throw Error(ErrorCode::kUnknownVariable, "parent index out of range");
      children[p.index].push_back(static_cast<std::uint32_t>(v));
      ++indegree[v];
    }
  }
  std::priority_queue<std::uint32_t, std::vector<std::uint32_t>, std::greater<>> ready;
  for (std::size_t v = 0; v < n; ++v) {
    if (indegree[v] == 0) ready.push(static_cast<std::uint32_t>(v));
  }
  std::vector<VariableId> order;
  order.reserve(n);
  while (!ready.empty()) {
    const std::uint32_t v = ready.top();
    ready.pop();
    order.push_back(VariableId{v});
    for (std::uint32_t c : children[v]) {
      if (--indegree[c] == 0) ready.push(c);
    }
  }
  if (order.size() != n) {
    // Walking unresolved parents n times from an unresolved node ends on a cycle.
    std::uint32_t v = 0;
    while (indegree[v] == 0) ++v;
    for (std::size_t step = 0; step < n; ++step) {
      for (VariableId p : parents[v]) {
        if (indegree[p.index] > 0) {
          v = p.index;
          break;
        }
      }
    }
    cycle_var = v;
  }
  return order;
}

}  // namespace

std::vector<VariableId> topological_order(std::span<const VarSet> parents) {
  std::optional<std::uint32_t> cycle;
  auto order = topo_impl(parents, cycle);
  if (cycle) throw Error(ErrorCode::kCycleDetected, "cycle through variable " + std::to_string(*cycle));
  return order;
}

Scm::Scm(ScmSpec spec) : spec_(std::move(spec)) {
  const std::size_t n = spec_.endogenous.size();
  for (std::size_t i = 0; i < n; ++i) {
    if (!endo_index_.emplace(spec_.endogenous[i].name, static_cast<std::uint32_t>(i)).second) {
      throw Error(ErrorCode::kSchema, "duplicate variable name " + spec_.endogenous[i].name);
    }
  }
  for (std::size_t i = 0; i < spec_.exogenous.size(); ++i) {
    const auto& name = spec_.exogenous[i].name;
    if (endo_index_.contains(name) ||
        !exo_index_.emplace(name, static_cast<std::uint32_t>(i)).second) {
      throw Error(ErrorCode::kSchema, "duplicate variable name " + name);
    }
  }
  if (spec_.parents.size() != n || spec_.equations.size() != n) {
    throw Error(ErrorCode::kSchema, "parents and equations must cover every endogenous variable");
  }

  parents_.resize(n);
  for (std::size_t i = 0; i < n; ++i) {
    std::vector<VariableId> ps;
    for (const auto& p : spec_.parents[i]) ps.push_back(id(p));
    parents_[i] = make_varset(std::move(ps));
  }
  std::optional<std::uint32_t> cycle;
  order_ = topo_impl(parents_, cycle);
  if (cycle) {
    throw Error(ErrorCode::kCycleDetected, "cycle through " + spec_.endogenous[*cycle].name);
  }

  programs_.resize(n);
  for (std::size_t i = 0; i < n; ++i) compile(spec_.equations[i], programs_[i], &parents_[i]);
  compile(spec_.target, target_program_, nullptr);
  for (const Instr& in : target_program_) {
    if (in.op == Expr::Op::kExo) throw Error(ErrorCode::kSchema, "target may not read exogenous");
  }

  if (spec_.target.op == Expr::Op::kVar) {
    target_var_ = id(spec_.target.name);
    target_inputs_ = parents_[target_var_->index];
  } else {
    std::vector<VariableId> reads;
    std::function<void(const Expr&)> walk = [&](const Expr& e) {
      if (e.op == Expr::Op::kVar) reads.push_back(id(e.name));
      for (const auto& a : e.args) walk(a);
    };
    walk(spec_.target);
    target_inputs_ = make_varset(std::move(reads));
  }

  if (spec_.search_variables.empty()) {
    for (std::size_t i = 0; i < n; ++i) {
      VariableId v{static_cast<std::uint32_t>(i)};
      if (!target_var_ || *target_var_ != v) search_vars_.push_back(v);
    }
  } else {
    std::vector<VariableId> vs;
    for (const auto& s : spec_.search_variables) vs.push_back(id(s));
    search_vars_ = make_varset(std::move(vs));
    if (search_vars_.size() != spec_.search_variables.size()) {
      throw Error(ErrorCode::kSchema, "duplicate search variable");
    }
  }

  if (spec_.noise.level < 0.0 || spec_.noise.level >= 0.5) {
    throw Error(ErrorCode::kSchema, "noise level must lie in [0, 0.5)");
  }
}

std::optional<VariableId> Scm::find(std::string_view name) const {
  auto it = endo_index_.find(std::string(name));
  if (it == endo_index_.end()) return std::nullopt;
  return VariableId{it->second};
}

VariableId Scm::id(std::string_view name) const {
  auto v = find(name);
  if (!v) throw Error(ErrorCode::kUnknownVariable, "unknown variable " + std::string(name));
  return *v;
}

std::optional<std::size_t> Scm::find_exogenous(std::string_view name) const {
  auto it = exo_index_.find(std::string(name));
  if (it == exo_index_.end()) return std::nullopt;
  return it->second;
}

void Scm::compile(const Expr& e, Program& out, const VarSet* allowed) const {
  using Op = Expr::Op;
  switch (e.op) {
    case Op::kVar: {
      const VariableId v = id(e.name);
      if (allowed && !std::binary_search(allowed->begin(), allowed->end(), v)) {
        throw Error(ErrorCode::kSchema, "equation reads " + e.name + " which is not a parent");
      }
      out.push_back({Op::kVar, v.index, 0});
      return;
    }
    case Op::kExo: {
      auto x = find_exogenous(e.name);
      if (!x) throw Error(ErrorCode::kUnknownVariable, "unknown exogenous variable " + e.name);
      out.push_back({Op::kExo, static_cast<std::uint32_t>(*x), 0});
      return;
    }
    case Op::kConst:
      out.push_back({Op::kConst, 0, e.constant.bits});
      return;
    case Op::kNot:
    case Op::kMinElse:
    case Op::kThreshold:
    case Op::kIdentity:
      if (e.args.size() != 1) throw Error(ErrorCode::kSchema, "unary operator needs one argument");
      break;
    case Op::kIndicatorSet:
      if (e.args.size() > 63) throw Error(ErrorCode::kSchema, "indicator set too wide");
      break;
    default:
      break;
  }
  for (const auto& a : e.args) compile(a, out, allowed);
  out.push_back({e.op, static_cast<std::uint32_t>(e.args.size()), e.param});
}

std::int64_t Scm::run(const Program& p, std::span<const std::int64_t> endo,
                      const Context& u) const {
  using Op = Expr::Op;
  // Programs are small; a fixed stack keeps evaluation allocation-free.
  std::int64_t stack[128];
  std::size_t sp = 0;
  for (const Instr& in : p) {
    switch (in.op) {
      case Op::kVar:
        stack[sp++] = endo[in.arg];
        break;
      case Op::kExo:
        stack[sp++] = spec_.exogenous[in.arg].domain.at(u.values[in.arg]).bits;
        break;
      case Op::kConst:
        stack[sp++] = in.imm;
        break;
      case Op::kNot:
        stack[sp - 1] = stack[sp - 1] == 0 ? 1 : 0;
        break;
      case Op::kIdentity:
        break;
      case Op::kThreshold:
        stack[sp - 1] = stack[sp - 1] > in.imm ? 1 : 0;
        break;
      case Op::kMinElse: {
        const auto bits = static_cast<std::uint64_t>(stack[sp - 1]);
        stack[sp - 1] = bits == 0 ? in.imm : std::countr_zero(bits);
        break;
      }
      case Op::kAnd:
      case Op::kOr:
      case Op::kUnion:
      case Op::kIntersection:
      case Op::kIndicatorSet: {
        const std::size_t n = in.arg;
        const std::int64_t* a = stack + sp - n;
        std::int64_t r = 0;
        if (in.op == Op::kAnd) {
          r = 1;
          for (std::size_t i = 0; i < n; ++i) r &= a[i] != 0 ? 1 : 0;
        } else if (in.op == Op::kOr) {
          for (std::size_t i = 0; i < n; ++i) r |= a[i] != 0 ? 1 : 0;
        } else if (in.op == Op::kUnion) {
          for (std::size_t i = 0; i < n; ++i) r |= a[i];
        } else if (in.op == Op::kIntersection) {
          r = n == 0 ? 0 : a[0];
          for (std::size_t i = 1; i < n; ++i) r &= a[i];
        } else {
          for (std::size_t i = 0; i < n; ++i) {
            if (a[i] != 0) r |= std::int64_t{1} << i;
          }
        }
        sp -= n;
        stack[sp++] = r;
        break;
      }
    }
    if (sp >= 128) throw Error(ErrorCode::kSchema, "expression too deep");
  }
  return stack[0];
}

void Scm::validate(const Intervention& e) const {
  for (const auto& p : e.pairs()) {
    if (p.var.index >= num_endogenous()) {
      throw Error(ErrorCode::kUnknownVariable, "variable index " + std::to_string(p.var.index));
    }
    if (p.value >= domain(p.var).size()) {
      throw Error(ErrorCode::kValueOutsideDomain, "value index out of range for " + name(p.var));
    }
  }
}

void Scm::validate(const Context& u) const {
  if (u.values.size() != num_exogenous()) {
    throw Error(ErrorCode::kSchema, "context must assign every exogenous variable");
  }
  for (std::size_t i = 0; i < u.values.size(); ++i) {
    if (u.values[i] >= spec_.exogenous[i].domain.size()) {
      throw Error(ErrorCode::kValueOutsideDomain,
                  "context value out of range for " + spec_.exogenous[i].name);
    }
  }
}

ValueIndex Scm::apply_equation(VariableId v, std::span<const std::int64_t> endo_bits,
                               const Context& u) const {
  const std::int64_t out = run(programs_[v.index], endo_bits, u);
  auto idx = domain(v).index_of(out);
  if (!idx) {
    throw Error(ErrorCode::kValueOutsideDomain,
                "equation of " + name(v) + " produced " + std::to_string(out));
  }
  return *idx;
}

template <class Noise>
Assignment Scm::evaluate_impl(const Context& u, const Intervention& e, Noise&& noise) const {
  validate(u);
  validate(e);
  const std::size_t n = num_endogenous();
  Assignment state(n, 0);
  std::vector<std::int64_t> bits(n, 0);
  std::vector<int> forced(n, -1);
  for (const auto& p : e.pairs()) forced[p.var.index] = static_cast<int>(p.value);
  for (VariableId v : order_) {
    ValueIndex x;
    if (forced[v.index] >= 0) {
      x = static_cast<ValueIndex>(forced[v.index]);
    } else {
      x = noise(v, apply_equation(v, bits, u));
    }
    state[v.index] = x;
    bits[v.index] = domain(v).at(x).bits;
  }
  return state;
}

Assignment Scm::evaluate(const Context& u, const Intervention& e) const {
  return evaluate_impl(u, e, [](VariableId, ValueIndex x) { return x; });
}

Assignment Scm::evaluate(const Context& u, const Intervention& e, Rng& rng) const {
  const double level = spec_.noise.level;
  if (level <= 0.0) return evaluate(u, e);
  return evaluate_impl(u, e, [&](VariableId v, ValueIndex x) -> ValueIndex {
    if (!domain(v).is_boolean()) return x;
    if (spec_.noise.exempt_leaves && is_leaf(v)) return x;
    return bernoulli(rng, level) ? 1 - x : x;
  });
}

bool Scm::target_holds(const Assignment& state) const {
  std::vector<std::int64_t> bits(state.size());
  for (std::size_t i = 0; i < state.size(); ++i) {
    bits[i] = spec_.endogenous[i].domain.at(state[i]).bits;
  }
  return target_holds_bits(bits);
}

bool Scm::target_holds_bits(std::span<const std::int64_t> endo_bits) const {
  return run(target_program_, endo_bits, Context{}) != 0;
}

Intervention make_witness(const VarSet& cause_vars, std::span<const ValueIndex> cf_values,
                          const VarSet& contingency, const Assignment& actual) {
  if (cause_vars.size() != cf_values.size()) {
    throw Error(ErrorCode::kInvalidIntervention, "one counterfactual value per cause variable");
  }
  std::vector<VarValue> pairs;
  for (std::size_t i = 0; i < cause_vars.size(); ++i) pairs.push_back({cause_vars[i], cf_values[i]});
  for (VariableId w : contingency) pairs.push_back({w, actual.at(w.index)});
  return Intervention(std::move(pairs));
}

}  // namespace accause
