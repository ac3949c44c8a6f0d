#include "tsem/docs.hpp"

#include <fstream>

#include "tsem/errors.hpp"

namespace tsem {

namespace {

const Json& field(const Json& j, const char* name, const char* where) {
  auto it = j.find(name);
  if (it == j.end())
    fail(ErrorKind::Validation, std::string(where) + " is missing the \"" + name + "\" field");
  return *it;
}

std::string string_field(const Json& j, const char* name, const char* where) {
  const Json& f = field(j, name, where);
  if (!f.is_string())
    fail(ErrorKind::Validation, std::string(where) + " field \"" + name + "\" must be a string");
  return f.get<std::string>();
}

}  // namespace

Value value_from_json(const Json& j) {
  if (j.is_number_integer()) return Value::integer(j.get<std::int64_t>());
  if (j.is_string()) {
    std::string s = j.get<std::string>();
    if (s == "#") return Value::undef();
    return Value::symbol(std::move(s));
  }
  fail(ErrorKind::Validation,
       "values must be integers or strings (symbols, or \"#\"), got " + j.dump());
}

Json value_to_json(const Value& v) {
  if (v.is_int()) return Json(v.as_int());
  return Json(v.to_string());  // symbols and "#" as strings
}

Range range_from_json(const Json& j) {
  if (j.is_object()) {
    const Json& iv = field(j, "int", "an interval range");
    if (!iv.is_array() || iv.size() != 2 || !iv[0].is_number_integer() ||
        !iv[1].is_number_integer())
      fail(ErrorKind::Validation, "an interval range needs \"int\": [lo, hi], got " + j.dump());
    return Range::int_interval(iv[0].get<std::int64_t>(), iv[1].get<std::int64_t>());
  }
  if (j.is_array()) {
    std::vector<Value> vals;
    vals.reserve(j.size());
    for (const Json& e : j) vals.push_back(value_from_json(e));
    return Range::enumerated(std::move(vals));
  }
  fail(ErrorKind::Validation, "a range is {\"int\": [lo, hi]} or a value list, got " + j.dump());
}

Json range_to_json(const Range& r) {
  if (r.is_int_interval()) return Json{{"int", Json::array({r.lo(), r.hi()})}};
  Json out = Json::array();
  for (const Value& v : r.values()) out.push_back(value_to_json(v));
  return out;
}

Assignment assignment_from_json(const Json& j) {
  if (!j.is_object()) fail(ErrorKind::Validation, "an assignment must be a JSON object");
  Assignment a;
  for (const auto& [name, v] : j.items()) a.set(name, value_from_json(v));
  return a;
}

Json assignment_to_json(const Assignment& a) {
  Json out = Json::object();
  for (const auto& [name, v] : a.entries()) out[name] = value_to_json(v);
  return out;
}

Json assignment_to_json(const Assignment& a, const std::vector<std::string>& order) {
  Json out = Json::object();
  for (const std::string& name : order) out[name] = value_to_json(a.at(name));
  return out;
}

ModelDescription model_from_json(const Json& j) {
  if (!j.is_object()) fail(ErrorKind::Validation, "a model document must be a JSON object");
  ModelDescription d;
  std::string kind = string_field(j, "kind", "a model document");
  if (kind == "delayed") {
    d.delayed = true;
  } else if (kind != "onestep") {
    fail(ErrorKind::Validation, "model kind must be \"onestep\" or \"delayed\", got \"" + kind + "\"");
  }
  if (auto it = j.find("exogenous"); it != j.end()) {
    if (!it->is_array()) fail(ErrorKind::Validation, "\"exogenous\" must be an array");
    for (const Json& e : *it)
      d.exogenous.push_back(
          {string_field(e, "name", "an exogenous entry"), range_from_json(field(e, "range", "an exogenous entry"))});
  }
  const Json& endo = field(j, "endogenous", "a model document");
  if (!endo.is_array()) fail(ErrorKind::Validation, "\"endogenous\" must be an array");
  for (const Json& e : endo) {
    std::string name = string_field(e, "name", "an endogenous entry");
    d.endogenous.push_back({name, range_from_json(field(e, "range", "an endogenous entry"))});
    d.equations.emplace_back(std::move(name), string_field(e, "equation", "an endogenous entry"));
  }
  if (auto it = j.find("xi"); it != j.end()) {
    if (!it->is_number_integer())
      fail(ErrorKind::Validation, "\"xi\" must be an integer");
    d.xi = it->get<int>();
  }
  return d;
}

Json model_to_json(const ModelDescription& d) {
  Json out = Json::object();
  out["kind"] = d.delayed ? "delayed" : "onestep";
  if (d.delayed && d.xi) out["xi"] = *d.xi;
  Json exo = Json::array();
  for (const VariableDecl& v : d.exogenous)
    exo.push_back({{"name", v.name}, {"range", range_to_json(v.range)}});
  out["exogenous"] = std::move(exo);
  Json endo = Json::array();
  for (const VariableDecl& v : d.endogenous) {
    std::string body;
    for (const auto& [name, text] : d.equations)
      if (name == v.name) body = text;
    endo.push_back({{"name", v.name}, {"range", range_to_json(v.range)}, {"equation", body}});
  }
  out["endogenous"] = std::move(endo);
  return out;
}

namespace {

ModelDescription describe_signature(const Signature& sig, bool delayed) {
  ModelDescription d;
  d.delayed = delayed;
  for (const Variable& v : sig.exogenous()) d.exogenous.push_back({v.name, v.range});
  for (const Variable& v : sig.endogenous()) d.endogenous.push_back({v.name, v.range});
  return d;
}

}  // namespace

ModelDescription describe(const Model& m) {
  ModelDescription d = describe_signature(m.signature(), false);
  for (const Variable& v : m.signature().endogenous())
    d.equations.emplace_back(v.name, to_string(*m.equation(v.name)));
  return d;
}

ModelDescription describe(const DelayedModel& m) {
  ModelDescription d = describe_signature(m.signature(), true);
  for (const Variable& v : m.signature().endogenous())
    d.equations.emplace_back(v.name, to_string(*m.equation(v.name)));
  d.xi = m.xi();
  return d;
}

const Signature& LoadedModel::signature() const {
  return is_delayed() ? delayed().signature() : onestep().signature();
}

LoadedModel load_model(const Json& j) {
  ModelDescription d = model_from_json(j);
  if (d.delayed) return LoadedModel{validate_delayed_model(d)};
  return LoadedModel{validate_model(d)};
}

ScenarioData load_scenario(const Json& j, const Signature& sig) {
  if (!j.is_object()) fail(ErrorKind::Validation, "a scenario document must be a JSON object");
  const Json& ctx = field(j, "context", "a scenario document");
  std::vector<Assignment> prefix, loop;
  if (auto it = ctx.find("prefix"); it != ctx.end()) {
    if (!it->is_array()) fail(ErrorKind::Validation, "context \"prefix\" must be an array");
    for (const Json& e : *it) prefix.push_back(assignment_from_json(e));
  }
  const Json& lp = field(ctx, "loop", "a scenario context");
  if (!lp.is_array() || lp.empty())
    fail(ErrorKind::Validation, "context \"loop\" must be a non-empty array");
  for (const Json& e : lp) loop.push_back(assignment_from_json(e));
  for (const Assignment& a : prefix) validate_covers_exogenous(a, sig);
  for (const Assignment& a : loop) validate_covers_exogenous(a, sig);
  Assignment init = assignment_from_json(field(j, "init", "a scenario document"));
  validate_covers_endogenous(init, sig);
  return ScenarioData{PeriodicSeq(std::move(prefix), std::move(loop)), std::move(init)};
}

Json read_json_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) fail(ErrorKind::SyntaxError, "cannot open '" + path + "'");
  try {
    return Json::parse(in);
  } catch (const nlohmann::json::parse_error& e) {
    fail(ErrorKind::SyntaxError, path + ": " + e.what());
  }
}

void write_json_file(const std::string& path, const Json& j) {
  std::ofstream out(path);
  if (!out) fail(ErrorKind::Validation, "cannot write '" + path + "'");
  out << j.dump(2) << '\n';
}

}  // namespace tsem
