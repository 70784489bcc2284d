#pragma once

#include <atomic>
#include <cstdint>
#include <functional>
#include <memory>
#include <string>
#include <vector>

#include "accause/intervention.hpp"
#include "accause/rng.hpp"
#include "accause/scm.hpp"

namespace accause {

// Variables an identifier may intervene on, together with their domains and
// actual values. Indices refer to a universe of `names.size()` variables.
struct SearchSpace {
  std::vector<std::string> names;
  std::vector<Domain> domains;
  Assignment actual;
  VarSet variables;

  std::size_t universe_size() const { return names.size(); }
  // Same universe, restricted to `vars`.
  SearchSpace restricted(VarSet vars) const;
};

class Oracle {
 public:
  virtual ~Oracle() = default;

  // True when the target still holds under `e`. Stochastic oracles draw from `rng`.
  virtual bool query(const Intervention& e, Rng& rng) const = 0;
  virtual bool stochastic() const { return false; }
  virtual bool reentrant() const { return true; }
  // Whether observe() exposes downstream variable values.
  virtual bool observable() const { return false; }
  // Post-intervention state of the universe; not counted as a query.
  virtual Assignment observe(const Intervention& e, Rng& rng) const;

  std::uint64_t calls() const { return calls_.load(std::memory_order_relaxed); }

 protected:
  void count_call() const { calls_.fetch_add(1, std::memory_order_relaxed); }

 private:
  mutable std::atomic<std::uint64_t> calls_{0};
};

// Target predicate of an SCM under a fixed context.
class ScmOracle : public Oracle {
 public:
  // Throws Error(kTargetNotActual) if the target is false without intervention.
  ScmOracle(const Scm& scm, Context u);

  bool query(const Intervention& e, Rng& rng) const override;
  bool stochastic() const override { return scm_.stochastic(); }
  bool observable() const override { return !scm_.opaque(); }
  Assignment observe(const Intervention& e, Rng& rng) const override;

  const Scm& scm() const { return scm_; }
  const Context& context() const { return u_; }
  const Assignment& actual() const { return actual_; }

 private:
  const Scm& scm_;
  Context u_;
  Assignment actual_;
};

// Appends a fixed set of pins to every query; pairs already in the query win.
class PinnedOracle : public Oracle {
 public:
  PinnedOracle(const Oracle& inner, Intervention pins);

  bool query(const Intervention& e, Rng& rng) const override;
  bool stochastic() const override { return inner_.stochastic(); }
  bool reentrant() const override { return inner_.reentrant(); }
  bool observable() const override { return inner_.observable(); }
  Assignment observe(const Intervention& e, Rng& rng) const override;

 private:
  const Oracle& inner_;
  Intervention pins_;
};

class FunctionOracle : public Oracle {
 public:
  using Fn = std::function<bool(const Intervention&, Rng&)>;

  explicit FunctionOracle(Fn fn, bool stochastic = false, bool reentrant = true);

  bool query(const Intervention& e, Rng& rng) const override;
  bool stochastic() const override { return stochastic_; }
  bool reentrant() const override { return reentrant_; }

 private:
  Fn fn_;
  bool stochastic_;
  bool reentrant_;
};

// Search space of an SCM: its search variables, all endogenous variables as universe.
SearchSpace space_from_scm(const Scm& scm, const Context& u);

// Pins `vars` to their actual values.
Intervention pin_actual(const VarSet& vars, const Assignment& actual);

}  // namespace accause
