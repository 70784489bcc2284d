#include "accause/scm_json.hpp"

#include <fstream>
#include <map>

#include "accause/error.hpp"

namespace accause {
namespace {

const std::map<std::string, Expr::Op>& op_names() {
  static const std::map<std::string, Expr::Op> names = {
      {"var", Expr::Op::kVar},
      {"exo", Expr::Op::kExo},
      {"const", Expr::Op::kConst},
      {"not", Expr::Op::kNot},
      {"and", Expr::Op::kAnd},
      {"or", Expr::Op::kOr},
      {"set-union", Expr::Op::kUnion},
      {"set-intersection", Expr::Op::kIntersection},
      {"indicator-set", Expr::Op::kIndicatorSet},
      {"min-else", Expr::Op::kMinElse},
      {"threshold", Expr::Op::kThreshold},
      {"identity", Expr::Op::kIdentity},
  };
  return names;
}

std::string op_name(Expr::Op op) {
  for (const auto& [name, o] : op_names()) {
    if (o == op) return name;
  }
  return "?";
}

[[noreturn]] void schema(const std::string& what) { throw Error(ErrorCode::kSchema, what); }

const Json& field(const Json& j, const char* key) {
  if (!j.is_object() || !j.contains(key)) schema(std::string("missing field '") + key + "'");
  return j.at(key);
}

std::string name_of(const Json& j) {
  if (!j.is_string()) schema("expected a name string");
  return j.get<std::string>();
}

std::vector<VariableSpec> variables_from_json(const Json& j) {
  if (!j.is_array()) schema("variable list must be an array");
  std::vector<VariableSpec> out;
  for (const auto& v : j) {
    const Json& dom = field(v, "domain");
    if (!dom.is_array()) schema("domain must be an array");
    std::vector<Value> values;
    for (const auto& x : dom) values.push_back(value_from_json(x));
    out.push_back({name_of(field(v, "name")), Domain(std::move(values))});
  }
  return out;
}

Json variables_to_json(const std::vector<VariableSpec>& vars) {
  Json out = Json::array();
  for (const auto& v : vars) {
    Json dom = Json::array();
    for (const auto& x : v.domain.values()) dom.push_back(value_to_json(x));
    out.push_back({{"name", v.name}, {"domain", dom}});
  }
  return out;
}

Value value_for(const Domain& d, const Json& j, const std::string& who) {
  const Value v = value_from_json(j);
  if (!d.index_of(v)) throw Error(ErrorCode::kValueOutsideDomain, "value outside domain of " + who);
  return v;
}

}  // namespace

Json value_to_json(const Value& v) {
  if (v.kind == Value::Kind::kScalar) return v.bits;
  return v.members();
}

Value value_from_json(const Json& j) {
  if (j.is_boolean()) return Value::scalar(j.get<bool>() ? 1 : 0);
  if (j.is_number_integer()) return Value::scalar(j.get<std::int64_t>());
  if (j.is_array()) {
    std::vector<int> members;
    for (const auto& m : j) {
      if (!m.is_number_integer()) schema("set members must be integers");
      members.push_back(m.get<int>());
    }
    return Value::set_of(members);
  }
  schema("values are integers, booleans or arrays of integers");
}

Json expr_to_json(const Expr& e) {
  Json j = {{"op", op_name(e.op)}};
  switch (e.op) {
    case Expr::Op::kVar:
    case Expr::Op::kExo:
      j["name"] = e.name;
      return j;
    case Expr::Op::kConst:
      j["value"] = value_to_json(e.constant);
      return j;
    case Expr::Op::kMinElse:
      j["default"] = e.param;
      break;
    case Expr::Op::kThreshold:
      j["above"] = e.param;
      break;
    default:
      break;
  }
  Json args = Json::array();
  for (const auto& a : e.args) args.push_back(expr_to_json(a));
  j["args"] = args;
  return j;
}

Expr expr_from_json(const Json& j) {
  if (j.is_string()) return Expr::var(j.get<std::string>());
  const std::string op = name_of(field(j, "op"));
  auto it = op_names().find(op);
  if (it == op_names().end()) schema("unknown operator '" + op + "'");
  Expr e;
  e.op = it->second;
  switch (e.op) {
    case Expr::Op::kVar:
    case Expr::Op::kExo:
      e.name = name_of(field(j, "name"));
      return e;
    case Expr::Op::kConst:
      e.constant = value_from_json(field(j, "value"));
      return e;
    case Expr::Op::kMinElse:
      e.param = field(j, "default").get<std::int64_t>();
      break;
    case Expr::Op::kThreshold:
      e.param = field(j, "above").get<std::int64_t>();
      break;
    default:
      break;
  }
  const Json& args = field(j, "args");
  if (!args.is_array()) schema("'args' must be an array");
  for (const auto& a : args) e.args.push_back(expr_from_json(a));
  return e;
}

Json scm_to_json(const Scm& scm) {
  const ScmSpec& s = scm.spec();
  Json edges = Json::object();
  Json equations = Json::object();
  for (std::size_t i = 0; i < s.endogenous.size(); ++i) {
    edges[s.endogenous[i].name] = s.parents[i];
    equations[s.endogenous[i].name] = expr_to_json(s.equations[i]);
  }
  Json j = {
      {"variables", variables_to_json(s.endogenous)},
      {"exogenous", variables_to_json(s.exogenous)},
      {"edges", edges},
      {"equations", equations},
      {"target", s.target.op == Expr::Op::kVar ? Json(s.target.name) : expr_to_json(s.target)},
  };
  if (!s.search_variables.empty()) j["search_variables"] = s.search_variables;
  if (s.opaque) j["opaque"] = true;
  if (s.noise.level > 0.0 || s.noise.exempt_leaves) {
    j["noise"] = {{"level", s.noise.level}, {"exempt_leaves", s.noise.exempt_leaves}};
  }
  return j;
}

Scm scm_from_json(const Json& j) {
  try {
    ScmSpec s;
    s.endogenous = variables_from_json(field(j, "variables"));
    s.exogenous = j.contains("exogenous") ? variables_from_json(j.at("exogenous"))
                                          : std::vector<VariableSpec>{};
    const Json& edges = j.contains("edges") ? j.at("edges") : Json::object();
    const Json& equations = field(j, "equations");
    if (!edges.is_object() || !equations.is_object()) schema("edges and equations are objects");
    for (auto it = edges.begin(); it != edges.end(); ++it) {
      bool known = false;
      for (const auto& v : s.endogenous) known |= v.name == it.key();
      if (!known) throw Error(ErrorCode::kUnknownVariable, "edges name unknown variable " + it.key());
    }
    for (const auto& v : s.endogenous) {
      std::vector<std::string> ps;
      if (edges.contains(v.name)) {
        for (const auto& p : edges.at(v.name)) ps.push_back(name_of(p));
      }
      s.parents.push_back(std::move(ps));
      if (!equations.contains(v.name)) schema("missing equation for " + v.name);
      s.equations.push_back(expr_from_json(equations.at(v.name)));
    }
    if (equations.size() != s.endogenous.size()) schema("equation for an unknown variable");
    s.target = expr_from_json(field(j, "target"));
    if (j.contains("search_variables")) {
      for (const auto& n : j.at("search_variables")) s.search_variables.push_back(name_of(n));
    }
    s.opaque = j.value("opaque", false);
    if (j.contains("noise")) {
      s.noise.level = j.at("noise").value("level", 0.0);
      s.noise.exempt_leaves = j.at("noise").value("exempt_leaves", false);
    }
    return Scm(std::move(s));
  } catch (const Json::exception& e) {
    schema(e.what());
  }
}

Context context_from_json(const Scm& scm, const Json& j) {
  const auto& exo = scm.spec().exogenous;
  Context u;
  u.values.resize(exo.size());
  if (j.is_array()) {
    if (j.size() != exo.size()) schema("context must assign every exogenous variable");
    for (std::size_t i = 0; i < exo.size(); ++i) {
      u.values[i] = *exo[i].domain.index_of(value_for(exo[i].domain, j[i], exo[i].name));
    }
    return u;
  }
  if (!j.is_object()) schema("context must be an object or an array");
  std::vector<bool> seen(exo.size(), false);
  for (auto it = j.begin(); it != j.end(); ++it) {
    auto idx = scm.find_exogenous(it.key());
    if (!idx) throw Error(ErrorCode::kUnknownVariable, "unknown exogenous variable " + it.key());
    u.values[*idx] = *exo[*idx].domain.index_of(value_for(exo[*idx].domain, it.value(), it.key()));
    seen[*idx] = true;
  }
  for (std::size_t i = 0; i < exo.size(); ++i) {
    if (!seen[i]) schema("context leaves " + exo[i].name + " unassigned");
  }
  return u;
}

Json context_to_json(const Scm& scm, const Context& u) {
  const auto& exo = scm.spec().exogenous;
  Json j = Json::object();
  for (std::size_t i = 0; i < exo.size(); ++i) {
    j[exo[i].name] = value_to_json(exo[i].domain.at(u.values.at(i)));
  }
  return j;
}

Intervention intervention_from_json(const Scm& scm, const Json& j) {
  if (!j.is_object()) schema("intervention must be an object");
  std::vector<VarValue> pairs;
  for (auto it = j.begin(); it != j.end(); ++it) {
    const VariableId v = scm.id(it.key());
    pairs.push_back({v, *scm.domain(v).index_of(value_for(scm.domain(v), it.value(), it.key()))});
  }
  return Intervention(std::move(pairs));
}

Json intervention_to_json(const Scm& scm, const Intervention& e) {
  Json j = Json::object();
  for (const auto& p : e.pairs()) j[scm.name(p.var)] = value_to_json(scm.domain(p.var).at(p.value));
  return j;
}

Json assignment_to_json(const Scm& scm, const Assignment& a) {
  Json j = Json::object();
  for (std::size_t i = 0; i < a.size(); ++i) {
    const VariableId v{static_cast<std::uint32_t>(i)};
    j[scm.name(v)] = value_to_json(scm.domain(v).at(a[i]));
  }
  return j;
}

Json read_json_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw Error(ErrorCode::kIo, "cannot open " + path);
  try {
    return Json::parse(in);
  } catch (const Json::exception& e) {
    throw Error(ErrorCode::kSchema, path + ": " + e.what());
  }
}

}  // namespace accause
