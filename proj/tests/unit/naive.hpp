#pragma once

// Slow reference implementations used to check the library. They only rely on
// Scm::evaluate and Oracle::query.

#include <functional>
#include <set>
#include <vector>

#include "accause/oracle.hpp"
#include "accause/scm.hpp"

namespace naive {

using namespace accause;

// Every intervention over space.variables up to max_size pairs, visited by
// recursion over include/skip choices.
inline void for_each_intervention(const SearchSpace& space, std::size_t max_size,
                                  const std::function<void(const std::vector<VarValue>&)>& fn) {
  std::vector<VarValue> cur;
  std::function<void(std::size_t)> rec = [&](std::size_t i) {
    if (i == space.variables.size()) {
      if (!cur.empty()) fn(cur);
      return;
    }
    rec(i + 1);
    if (cur.size() == max_size) return;
    const VariableId v = space.variables[i];
    for (ValueIndex x = 0; x < space.domains[v.index].size(); ++x) {
      cur.push_back({v, x});
      rec(i + 1);
      cur.pop_back();
    }
  };
  rec(0);
}

// Minimal counterfactual sets among all cancelling interventions.
inline std::set<VarSet> causes(const SearchSpace& space, const Oracle& oracle, std::size_t max_size) {
  std::set<VarSet> cancelling;
  Rng rng(0);
  for_each_intervention(space, max_size, [&](const std::vector<VarValue>& pairs) {
    VarSet ec;
    for (const auto& p : pairs) {
      if (p.value != space.actual[p.var.index]) ec.push_back(p.var);
    }
    if (ec.empty() || cancelling.count(ec)) return;
    if (!oracle.query(Intervention(pairs), rng)) cancelling.insert(ec);
  });
  std::set<VarSet> out;
  for (const VarSet& a : cancelling) {
    bool minimal = true;
    for (const VarSet& b : cancelling) {
      if (b.size() < a.size() && std::includes(a.begin(), a.end(), b.begin(), b.end())) minimal = false;
    }
    if (minimal) out.insert(a);
  }
  return out;
}

// Some counterfactual setting of `c` with some set of other variables held at
// their actual values makes the target false.
inline bool satisfies_ac2(const Scm& scm, const Context& u, const VarSet& c) {
  const Assignment actual = scm.actual_values(u);
  std::vector<VariableId> others;
  for (std::uint32_t i = 0; i < scm.num_endogenous(); ++i) {
    const VariableId v{i};
    if (!std::binary_search(c.begin(), c.end(), v)) others.push_back(v);
  }
  std::vector<ValueIndex> x(c.size(), 0);
  std::function<bool(std::size_t)> values = [&](std::size_t i) -> bool {
    if (i == c.size()) {
      for (std::uint64_t mask = 0; mask < (std::uint64_t{1} << others.size()); ++mask) {
        std::vector<VarValue> pairs;
        for (std::size_t j = 0; j < c.size(); ++j) pairs.push_back({c[j], x[j]});
        for (std::size_t j = 0; j < others.size(); ++j) {
          if (mask >> j & 1) pairs.push_back({others[j], actual[others[j].index]});
        }
        if (!scm.target_holds(scm.evaluate(u, Intervention(pairs)))) return true;
      }
      return false;
    }
    for (ValueIndex v = 0; v < scm.domain(c[i]).size(); ++v) {
      if (v == actual[c[i].index]) continue;
      x[i] = v;
      if (values(i + 1)) return true;
    }
    return false;
  };
  return values(0);
}

// AC2 for c and for no proper non-empty subset of c.
inline bool is_hp_cause(const Scm& scm, const Context& u, const VarSet& c) {
  if (!scm.target_holds(scm.actual_values(u)) || !satisfies_ac2(scm, u, c)) return false;
  for (std::uint64_t mask = 1; mask + 1 < (std::uint64_t{1} << c.size()); ++mask) {
    VarSet s;
    for (std::size_t j = 0; j < c.size(); ++j) {
      if (mask >> j & 1) s.push_back(c[j]);
    }
    if (satisfies_ac2(scm, u, s)) return false;
  }
  return true;
}

// Boolean system of n variables over a random DAG; leaves copy an exogenous
// variable, inner nodes are and/or of possibly negated parents. The last
// variable is the target.
inline Scm random_boolean_scm(std::uint64_t seed, int n) {
  Rng rng(seed);
  ScmSpec s;
  const Domain b = Domain::boolean();
  for (int i = 0; i < n; ++i) {
    const std::string name = "V" + std::to_string(i);
    std::vector<std::string> parents;
    std::vector<Expr> terms;
    for (int j = 0; j < i; ++j) {
      if (bernoulli(rng, i == n - 1 ? 0.6 : 0.4)) {
        parents.push_back("V" + std::to_string(j));
        Expr t = Expr::var(parents.back());
        terms.push_back(bernoulli(rng, 0.25) ? Expr::negate(std::move(t)) : std::move(t));
      }
    }
    s.endogenous.push_back({name, b});
    if (parents.empty()) {
      s.exogenous.push_back({"u" + std::to_string(i), b});
      s.equations.push_back(Expr::identity(Expr::exo("u" + std::to_string(i))));
    } else {
      s.equations.push_back(bernoulli(rng, 0.5) ? Expr::all_of(std::move(terms)) : Expr::any_of(std::move(terms)));
    }
    s.parents.push_back(std::move(parents));
  }
  s.target = Expr::var("V" + std::to_string(n - 1));
  return Scm(std::move(s));
}

// All contexts of `scm` under which the target holds.
inline std::vector<Context> true_contexts(const Scm& scm) {
  std::vector<Context> out;
  const std::size_t m = scm.num_exogenous();
  for (std::uint64_t mask = 0; mask < (std::uint64_t{1} << m); ++mask) {
    Context u;
    for (std::size_t j = 0; j < m; ++j) u.values.push_back(mask >> j & 1);
    if (scm.target_holds(scm.actual_values(u))) out.push_back(u);
  }
  return out;
}

inline VarSet vars(const Scm& scm, std::initializer_list<const char*> names) {
  VarSet out;
  for (const char* n : names) out.push_back(scm.id(n));
  std::sort(out.begin(), out.end());
  return out;
}

}  // namespace naive
