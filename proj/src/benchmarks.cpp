#include "accause/benchmarks.hpp"

#include <algorithm>
#include <set>

#include "accause/error.hpp"

namespace accause {
namespace {

const char* const kLeaves[] = {"FS", "FN", "FF", "FDB", "A", "AD"};
const char* const kExo[] = {"fs", "fn", "ff", "fdb", "a", "ad"};

std::string indexed(const char* base, int i) { return std::string(base) + std::to_string(i); }

void add(ScmSpec& s, std::string name, Domain d, std::vector<std::string> parents, Expr eq) {
  s.endogenous.push_back({std::move(name), std::move(d)});
  s.parents.push_back(std::move(parents));
  s.equations.push_back(std::move(eq));
}

ScmSpec smk_base_spec(int k) {
  if (k < 1) throw Error(ErrorCode::kInvalidConfig, "at least one attacker is required");
  ScmSpec s;
  const Domain b = Domain::boolean();
  add(s, "SMK", b, {"DK", "SD"}, Expr::any_of({Expr::var("DK"), Expr::var("SD")}));
  std::vector<std::string> dks;
  std::vector<std::string> sds;
  for (int i = 1; i <= k; ++i) {
    dks.push_back(indexed("DK", i));
    sds.push_back(indexed("SD", i));
  }
  auto any = [](const std::vector<std::string>& names) {
    std::vector<Expr> args;
    for (const auto& n : names) args.push_back(Expr::var(n));
    return Expr::any_of(std::move(args));
  };
  add(s, "DK", b, dks, any(dks));
  add(s, "SD", b, sds, any(sds));
  for (int i = 1; i <= k; ++i) {
    const std::string gp = indexed("GP", i), gk = indexed("GK", i), kms = indexed("KMS", i);
    std::vector<std::string> dk_parents{gp, gk};
    std::vector<Expr> dk_terms{Expr::var(gp), Expr::var(gk)};
    std::vector<std::string> sd_parents{kms};
    std::vector<Expr> sd_terms{Expr::var(kms)};
    for (int j = 1; j < i; ++j) {
      dk_parents.push_back(indexed("DK", j));
      dk_terms.push_back(Expr::negate(Expr::var(indexed("DK", j))));
      sd_parents.push_back(indexed("SD", j));
      sd_terms.push_back(Expr::negate(Expr::var(indexed("SD", j))));
    }
    add(s, indexed("DK", i), b, dk_parents, Expr::all_of(std::move(dk_terms)));
    add(s, indexed("SD", i), b, sd_parents, Expr::all_of(std::move(sd_terms)));
    const std::string fs = indexed("FS", i), fn = indexed("FN", i), ff = indexed("FF", i),
                      fdb = indexed("FDB", i), a = indexed("A", i), ad = indexed("AD", i);
    add(s, gp, b, {fs, fn}, Expr::any_of({Expr::var(fs), Expr::var(fn)}));
    add(s, gk, b, {ff, fdb}, Expr::any_of({Expr::var(ff), Expr::var(fdb)}));
    add(s, kms, b, {a, ad}, Expr::all_of({Expr::var(a), Expr::var(ad)}));
    for (int l = 0; l < 6; ++l) {
      add(s, indexed(kLeaves[l], i), b, {}, Expr::identity(Expr::exo(indexed(kExo[l], i))));
    }
  }
  for (int i = 1; i <= k; ++i) {
    for (const char* x : kExo) s.exogenous.push_back({indexed(x, i), b});
  }
  s.target = Expr::var("SMK");
  return s;
}

}  // namespace

Scm make_rock_throwing() {
  ScmSpec s;
  const Domain b = Domain::boolean();
  s.exogenous = {{"st", b}, {"bt", b}};
  add(s, "ST", b, {}, Expr::identity(Expr::exo("st")));
  add(s, "BT", b, {}, Expr::identity(Expr::exo("bt")));
  add(s, "SH", b, {"ST"}, Expr::identity(Expr::var("ST")));
  add(s, "BH", b, {"BT", "SH"}, Expr::all_of({Expr::var("BT"), Expr::negate(Expr::var("SH"))}));
  add(s, "BS", b, {"BH", "SH"}, Expr::any_of({Expr::var("BH"), Expr::var("SH")}));
  s.target = Expr::var("BS");
  return Scm(std::move(s));
}

Scm make_smk_base(int k) { return Scm(smk_base_spec(k)); }

Scm make_smk_noisy(int k, double level, bool exempt_leaves) {
  ScmSpec s = smk_base_spec(k);
  s.noise = {level, exempt_leaves};
  return Scm(std::move(s));
}

Scm make_smk_nonboolean(int k, int max_k) {
  if (k < 1) throw Error(ErrorCode::kInvalidConfig, "at least one attacker is required");
  if (k > max_k || k > 62) {
    throw Error(ErrorCode::kKTooLargeForSetDomains,
                "2^" + std::to_string(k) + " set values exceed the domain budget");
  }
  ScmSpec s;
  const Domain b = Domain::boolean();
  const Domain sets = Domain::subsets(k);
  const Domain index = Domain::integers(-1, k - 1);
  add(s, "SMK", b, {"DK", "SD"},
      Expr::any_of({Expr::threshold(Expr::var("DK"), -1), Expr::threshold(Expr::var("SD"), -1)}));
  add(s, "DK", index, {"GP", "GK"},
      Expr::min_else(Expr::set_intersection({Expr::var("GP"), Expr::var("GK")}), -1));
  add(s, "SD", index, {"KMS"}, Expr::min_else(Expr::var("KMS"), -1));
  add(s, "GP", sets, {"FS", "FN"}, Expr::set_union({Expr::var("FS"), Expr::var("FN")}));
  add(s, "GK", sets, {"FF", "FDB"}, Expr::set_union({Expr::var("FF"), Expr::var("FDB")}));
  add(s, "KMS", sets, {"A", "AD"}, Expr::set_intersection({Expr::var("A"), Expr::var("AD")}));
  for (int l = 0; l < 6; ++l) {
    std::vector<Expr> members;
    for (int i = 1; i <= k; ++i) members.push_back(Expr::exo(indexed(kExo[l], i)));
    add(s, kLeaves[l], sets, {}, Expr::indicator_set(std::move(members)));
  }
  for (int i = 1; i <= k; ++i) {
    for (const char* x : kExo) s.exogenous.push_back({indexed(x, i), b});
  }
  s.target = Expr::var("SMK");
  return Scm(std::move(s));
}

namespace {

class LeafOracle : public Oracle {
 public:
  LeafOracle(const BlackBoxSmk& box, const Context& u) : box_(box), inner_(box.hidden(), u) {}

  bool query(const Intervention& e, Rng& rng) const override {
    count_call();
    std::vector<VarValue> pairs;
    pairs.reserve(e.size());
    for (const auto& p : e.pairs()) pairs.push_back({box_.hidden_id(p.var), p.value});
    return inner_.query(Intervention(std::move(pairs)), rng);
  }

 private:
  const BlackBoxSmk& box_;
  ScmOracle inner_;
};

}  // namespace

BlackBoxSmk::BlackBoxSmk(int k) : k_(k), base_(make_smk_base(k)) {
  for (int i = 1; i <= k; ++i) {
    for (const char* l : kLeaves) {
      names_.push_back(indexed(l, i));
      leaves_.push_back(base_.id(names_.back()));
    }
  }
}

SearchSpace BlackBoxSmk::space(const Context& u) const {
  const Assignment actual = base_.actual_values(u);
  SearchSpace s;
  s.names = names_;
  for (std::size_t j = 0; j < leaves_.size(); ++j) {
    s.domains.push_back(base_.domain(leaves_[j]));
    s.actual.push_back(actual[leaves_[j].index]);
    s.variables.push_back(VariableId{static_cast<std::uint32_t>(j)});
  }
  return s;
}

std::unique_ptr<Oracle> BlackBoxSmk::oracle(const Context& u) const {
  return std::make_unique<LeafOracle>(*this, u);
}

std::vector<Context> sample_contexts(const Scm& scm, std::size_t n, std::uint64_t seed,
                                     std::uint64_t max_attempts) {
  const auto& exo = scm.spec().exogenous;
  for (const auto& x : exo) {
    if (!x.domain.is_boolean()) {
      throw Error(ErrorCode::kInvalidConfig, "context sampling needs Boolean exogenous variables");
    }
  }
  const std::size_t m = exo.size();
  Rng rng(seed);
  std::vector<Context> out;
  std::set<Context> seen;
  std::vector<std::size_t> perm(m);
  for (std::uint64_t attempt = 0; out.size() < n; ++attempt) {
    if (attempt >= max_attempts) {
      throw Error(ErrorCode::kSamplingExhausted,
                  "found " + std::to_string(out.size()) + " of " + std::to_string(n) + " contexts");
    }
    std::size_t trues = m / 2;
    if (m % 2 == 1 && bernoulli(rng, 0.5)) ++trues;
    for (std::size_t i = 0; i < m; ++i) perm[i] = i;
    for (std::size_t i = 0; i < trues; ++i) {
      std::swap(perm[i], perm[i + uniform_index(rng, m - i)]);
    }
    Context u;
    u.values.assign(m, 0);
    for (std::size_t i = 0; i < trues; ++i) u.values[perm[i]] = 1;
    if (seen.contains(u)) continue;
    if (!scm.target_holds(scm.actual_values(u))) continue;
    seen.insert(u);
    out.push_back(std::move(u));
  }
  return out;
}

Context context_with_true(const Scm& scm, const std::vector<std::string>& true_names) {
  Context u;
  u.values.assign(scm.num_exogenous(), 0);
  for (const auto& name : true_names) {
    auto idx = scm.find_exogenous(name);
    if (!idx) throw Error(ErrorCode::kUnknownVariable, "unknown exogenous variable " + name);
    u.values[*idx] = 1;
  }
  return u;
}

Context smk3_reference_context() {
  static const Scm scm = make_smk_base(3);
  return context_with_true(scm, {"fs1", "a1", "fs2", "fn2", "ff2", "fdb2", "ad2", "fs3", "ff3"});
}

}  // namespace accause
