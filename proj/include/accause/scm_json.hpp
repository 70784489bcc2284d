#pragma once

#include <json.hpp>

#include "accause/scm.hpp"

namespace accause {

using Json = nlohmann::json;

// Schema: variables/exogenous [{name, domain}], edges {name: [parents]},
// equations {name: expr}, target (name or expr), optional search_variables,
// opaque and noise {level, exempt_leaves}. Scalars are numbers, sets are arrays.
Json scm_to_json(const Scm& scm);
Scm scm_from_json(const Json& j);  // throws Error(kSchema)

Json expr_to_json(const Expr& e);
Expr expr_from_json(const Json& j);

Json value_to_json(const Value& v);
Value value_from_json(const Json& j);

// Object {exogenous name: value}; an array of values in declaration order is also accepted.
Context context_from_json(const Scm& scm, const Json& j);
Json context_to_json(const Scm& scm, const Context& u);

// Object {variable name: value}.
Intervention intervention_from_json(const Scm& scm, const Json& j);
Json intervention_to_json(const Scm& scm, const Intervention& e);
Json assignment_to_json(const Scm& scm, const Assignment& a);

Json read_json_file(const std::string& path);  // throws Error(kIo / kSchema)

}  // namespace accause
