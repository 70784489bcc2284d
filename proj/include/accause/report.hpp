#pragma once

#include <optional>
#include <string>
#include <vector>

#include "accause/beam_search.hpp"
#include "accause/cause.hpp"
#include "accause/metrics.hpp"
#include "accause/oracle.hpp"
#include "accause/scm_json.hpp"

namespace accause {

// {"cause": {name: value}, "contingency": {name: actual value}, "depth": d}
Json cause_to_json(const SearchSpace& space, const CauseResult& cause);
// Reads "cause" (an object of counterfactual values or a list of names) and
// optional "contingency", or a bare list of names; throws kSchema / kUnknownVariable.
CauseResult cause_from_json(const SearchSpace& space, const Json& j);

Json causes_to_json(const SearchSpace& space, const std::vector<CauseResult>& causes);
// Accepts a bare array or an object with a "causes" array.
std::vector<CauseResult> causes_from_json(const SearchSpace& space, const Json& j);

Json stats_to_json(const SearchStats& stats);
Json metrics_to_json(const IdentificationMetrics& m, bool timing);

}  // namespace accause
