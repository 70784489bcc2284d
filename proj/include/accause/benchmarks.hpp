#pragma once

#include <cstdint>
#include <memory>
#include <string>
#include <vector>

#include "accause/oracle.hpp"
#include "accause/scm.hpp"

namespace accause {

// ST=st, BT=bt, SH=ST, BH=BT∧¬SH, BS=BH∨SH; target BS.
Scm make_rock_throwing();

// Endogenous order: SMK, DK, SD, then per attacker i (names suffixed 1..k)
// DK, SD, GP, GK, KMS, FS, FN, FF, FDB, A, AD. Exogenous per attacker: fs, fn,
// ff, fdb, a, ad. Every variable but SMK is searchable.
Scm make_smk_base(int k);

// FS, FN, FF, FDB, A, AD, KMS, GP, GK range over subsets of the 0-based attacker
// indices; DK and SD over {-1, .., k-1}. Throws kKTooLargeForSetDomains above max_k.
Scm make_smk_nonboolean(int k, int max_k = 12);

// Noisy base system: every non-intervened Boolean assignment flips with `level`.
Scm make_smk_noisy(int k, double level = 0.01, bool exempt_leaves = false);

// The base system behind an oracle that only exposes the 6k leaves.
class BlackBoxSmk {
 public:
  explicit BlackBoxSmk(int k);

  int attackers() const { return k_; }
  const Scm& hidden() const { return base_; }
  // Leaf universe: FS1, FN1, FF1, FDB1, A1, AD1, FS2, ...
  const std::vector<std::string>& leaf_names() const { return names_; }
  VariableId hidden_id(VariableId leaf) const { return leaves_.at(leaf.index); }

  SearchSpace space(const Context& u) const;
  // Throws kTargetNotActual when SMK is false under u.
  std::unique_ptr<Oracle> oracle(const Context& u) const;

 private:
  int k_;
  Scm base_;
  std::vector<std::string> names_;
  std::vector<VariableId> leaves_;
};

// n distinct contexts with ⌊m/2⌋ or ⌈m/2⌉ true Boolean exogenous values under
// which the target holds. Throws kSamplingExhausted after max_attempts draws.
std::vector<Context> sample_contexts(const Scm& scm, std::size_t n, std::uint64_t seed,
                                     std::uint64_t max_attempts = 1'000'000);

// Context for the 3-attacker base system where attacker 2 decrypts the key
// through both password and key sources and attacker 3 is blocked by attacker 2.
Context smk3_reference_context();

// Builds a context of Boolean exogenous values from the names set to 1.
Context context_with_true(const Scm& scm, const std::vector<std::string>& true_names);

}  // namespace accause
