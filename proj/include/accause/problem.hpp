#pragma once

#include <memory>
#include <string>
#include <string_view>

#include "accause/benchmarks.hpp"
#include "accause/oracle.hpp"
#include "accause/scm.hpp"

namespace accause {

// A system to analyse: an SCM, or the black-box SMK whose oracle hides the
// equations. Cheap to copy; oracles borrow from it.
class Problem {
 public:
  // rock-throwing, smk:K, smk-nonboolean:K, smk-blackbox:K, smk-noisy:K[:LEVEL]
  static Problem builtin(std::string_view name);
  static Problem from_scm(Scm scm, std::string label = "custom");

  const std::string& label() const { return label_; }
  const std::string& kind() const { return kind_; }
  int attackers() const { return k_; }

  // SCM that contexts belong to (the hidden one for the black box).
  const Scm& system() const { return *system_; }
  // Noise-free counterpart used for ground truth.
  const Scm& reference_system() const { return *reference_; }
  // Null when no causal graph is available.
  const Scm* dag() const { return box_ ? nullptr : system_.get(); }

  SearchSpace space(const Context& u) const;
  std::unique_ptr<Oracle> oracle(const Context& u) const;
  std::unique_ptr<Oracle> reference_oracle(const Context& u) const;

 private:
  std::string label_;
  std::string kind_;
  int k_ = 0;
  std::shared_ptr<const Scm> system_;
  std::shared_ptr<const Scm> reference_;
  std::shared_ptr<const BlackBoxSmk> box_;
};

}  // namespace accause
