#include "accause/problem.hpp"

#include <charconv>
#include <vector>

#include "accause/error.hpp"

namespace accause {
namespace {

std::vector<std::string_view> split(std::string_view s) {
  std::vector<std::string_view> out;
  std::size_t start = 0;
  while (true) {
    const std::size_t colon = s.find(':', start);
    out.push_back(s.substr(start, colon - start));
    if (colon == std::string_view::npos) return out;
    start = colon + 1;
  }
}

int parse_k(std::string_view name, std::string_view text) {
  int k = 0;
  auto [ptr, ec] = std::from_chars(text.data(), text.data() + text.size(), k);
  if (ec != std::errc() || ptr != text.data() + text.size() || k < 1) {
    throw Error(ErrorCode::kInvalidConfig, "bad attacker count in '" + std::string(name) + "'");
  }
  return k;
}

}  // namespace

Problem Problem::builtin(std::string_view name) {
  const std::vector<std::string_view> parts = split(name);
  Problem p;
  p.label_ = std::string(name);
  p.kind_ = std::string(parts[0]);
  if (parts[0] == "rock-throwing" && parts.size() == 1) {
    p.system_ = std::make_shared<const Scm>(make_rock_throwing());
    p.reference_ = p.system_;
    return p;
  }
  const bool noisy = parts[0] == "smk-noisy";
  if (parts.size() != 2 && !(noisy && parts.size() == 3)) {
    throw Error(ErrorCode::kInvalidConfig, "unknown builtin '" + std::string(name) + "'");
  }
  p.k_ = parse_k(name, parts[1]);
  if (parts[0] == "smk") {
    p.system_ = std::make_shared<const Scm>(make_smk_base(p.k_));
    p.reference_ = p.system_;
  } else if (parts[0] == "smk-nonboolean") {
    p.system_ = std::make_shared<const Scm>(make_smk_nonboolean(p.k_));
    p.reference_ = p.system_;
  } else if (parts[0] == "smk-blackbox") {
    p.box_ = std::make_shared<const BlackBoxSmk>(p.k_);
    p.system_ = std::shared_ptr<const Scm>(p.box_, &p.box_->hidden());
    p.reference_ = p.system_;
  } else if (noisy) {
    double level = 0.01;
    if (parts.size() == 3) {
      try {
        level = std::stod(std::string(parts[2]));
      } catch (const std::exception&) {
        throw Error(ErrorCode::kInvalidConfig, "bad noise level in '" + std::string(name) + "'");
      }
    }
    p.system_ = std::make_shared<const Scm>(make_smk_noisy(p.k_, level));
    p.reference_ = std::make_shared<const Scm>(make_smk_base(p.k_));
  } else {
    throw Error(ErrorCode::kInvalidConfig, "unknown builtin '" + std::string(name) + "'");
  }
  return p;
}

Problem Problem::from_scm(Scm scm, std::string label) {
  Problem p;
  p.label_ = std::move(label);
  p.kind_ = "custom";
  p.system_ = std::make_shared<const Scm>(std::move(scm));
  if (p.system_->stochastic()) {
    ScmSpec quiet = p.system_->spec();
    quiet.noise = {};
    p.reference_ = std::make_shared<const Scm>(std::move(quiet));
  } else {
    p.reference_ = p.system_;
  }
  return p;
}

SearchSpace Problem::space(const Context& u) const {
  return box_ ? box_->space(u) : space_from_scm(*system_, u);
}

std::unique_ptr<Oracle> Problem::oracle(const Context& u) const {
  if (box_) return box_->oracle(u);
  return std::make_unique<ScmOracle>(*system_, u);
}

std::unique_ptr<Oracle> Problem::reference_oracle(const Context& u) const {
  if (box_) return box_->oracle(u);
  return std::make_unique<ScmOracle>(*reference_, u);
}

}  // namespace accause
