#include "accause/heuristics.hpp"

#include <memory>

#include "accause/error.hpp"

namespace accause {
namespace {

struct KindName {
  HeuristicKind kind;
  const char* name;
};

constexpr KindName kNames[] = {
    {HeuristicKind::kPositive, "positive"},     {HeuristicKind::kChanged, "changed"},
    {HeuristicKind::kNegative, "negative"},     {HeuristicKind::kOccam, "occam"},
    {HeuristicKind::kRandom, "random"},         {HeuristicKind::kConstant, "constant"},
    {HeuristicKind::kNonBooleanSmk, "nonboolean-smk"},
};

std::vector<VariableId> nonboolean_layout(const SearchSpace& space) {
  static const char* const kSets[] = {"A", "AD", "KMS", "FF", "FDB", "GP", "GK", "FS", "FN"};
  std::vector<VariableId> ids;
  auto find = [&](std::string_view name) {
    for (std::size_t i = 0; i < space.names.size(); ++i) {
      if (space.names[i] == name) return VariableId{static_cast<std::uint32_t>(i)};
    }
    throw Error(ErrorCode::kIncompatibleHeuristic,
                "nonboolean-smk needs variable " + std::string(name));
  };
  for (const char* s : kSets) ids.push_back(find(s));
  ids.push_back(find("SD"));
  ids.push_back(find("DK"));
  return ids;
}

}  // namespace

HeuristicKind parse_heuristic(std::string_view name) {
  for (const auto& k : kNames) {
    if (name == k.name) return k.kind;
  }
  throw Error(ErrorCode::kInvalidConfig, "unknown heuristic " + std::string(name));
}

const char* to_string(HeuristicKind kind) {
  for (const auto& k : kNames) {
    if (k.kind == kind) return k.name;
  }
  return "?";
}

double positive_count(const Assignment& state, std::span<const Domain> domains, const VarSet& scope) {
  double n = 0;
  for (VariableId v : scope) n += domains[v.index].at(state[v.index]).truthy() ? 1 : 0;
  return n;
}

double negative_count(const Assignment& state, std::span<const Domain> domains, const VarSet& scope) {
  return static_cast<double>(scope.size()) - positive_count(state, domains, scope);
}

double changed_count(const Assignment& state, const Assignment& actual, const VarSet& scope) {
  double n = 0;
  for (VariableId v : scope) n += state[v.index] != actual[v.index] ? 1 : 0;
  return n;
}

double occam_count(const Assignment& state, const Assignment& actual, const VarSet& scope) {
  return static_cast<double>(scope.size()) - changed_count(state, actual, scope);
}

namespace {

double layout_score(const Assignment& state, std::span<const Domain> domains,
                    const std::vector<VariableId>& ids) {
  double total = 0;
  for (std::size_t i = 0; i < ids.size(); ++i) {
    const Value& v = domains[ids[i].index].at(state[ids[i].index]);
    total += i < 9 ? v.set_size() : static_cast<double>(v.bits);
  }
  return total;
}

}  // namespace

double nonboolean_smk_score(const Assignment& state, const SearchSpace& space) {
  return layout_score(state, space.domains, nonboolean_layout(space));
}

Heuristic make_heuristic(HeuristicKind kind, const SearchSpace& space,
                         const HeuristicOptions& options) {
  VarSet scope = space.variables;
  if (options.all_variables) {
    scope.clear();
    for (std::size_t i = 0; i < space.universe_size(); ++i) {
      scope.push_back(VariableId{static_cast<std::uint32_t>(i)});
    }
  }
  const auto domains = std::make_shared<const std::vector<Domain>>(space.domains);
  const auto actual = std::make_shared<const Assignment>(space.actual);
  const double size = static_cast<double>(scope.size());

  Heuristic h;
  h.name = to_string(kind);
  h.mode = options.mode;
  switch (kind) {
    case HeuristicKind::kPositive:
      h.score = [domains, scope](const Intervention&, const Assignment& s) {
        return positive_count(s, *domains, scope);
      };
      break;
    case HeuristicKind::kNegative:
      h.score = [domains, scope](const Intervention&, const Assignment& s) {
        return negative_count(s, *domains, scope);
      };
      break;
    case HeuristicKind::kChanged:
      h.score = [actual, scope](const Intervention&, const Assignment& s) {
        return changed_count(s, *actual, scope);
      };
      break;
    case HeuristicKind::kOccam:
      h.score = [actual, scope](const Intervention&, const Assignment& s) {
        return occam_count(s, *actual, scope);
      };
      break;
    case HeuristicKind::kRandom: {
      if (scope.empty()) throw Error(ErrorCode::kInvalidConfig, "random heuristic needs variables");
      auto rng = std::make_shared<Rng>(options.seed);
      h.needs_state = false;
      h.score = [rng, size](const Intervention&, const Assignment&) {
        return 1.0 + uniform01(*rng) * (size - 1.0);
      };
      break;
    }
    case HeuristicKind::kConstant:
      h.needs_state = false;
      h.score = [size](const Intervention&, const Assignment&) { return size / 2.0; };
      break;
    case HeuristicKind::kNonBooleanSmk: {
      auto ids = nonboolean_layout(space);
      h.score = [domains, ids](const Intervention&, const Assignment& s) {
        return layout_score(s, *domains, ids);
      };
      break;
    }
  }
  return h;
}

}  // namespace accause
