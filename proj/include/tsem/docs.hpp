#pragma once

#include <string>
#include <variant>
#include <vector>

#include "json.hpp"
#include "tsem/delays.hpp"

namespace tsem {

// Documents use insertion-ordered JSON so field order is stable across a
// parse/serialize round trip.
using Json = nlohmann::ordered_json;

// Values on the wire: ints as JSON numbers, symbols as strings, `#` as "#".
Value value_from_json(const Json& j);
Json value_to_json(const Value& v);

// Ranges: {"int": [lo, hi]} or an explicit value list.
Range range_from_json(const Json& j);
Json range_to_json(const Range& r);

Assignment assignment_from_json(const Json& j);
Json assignment_to_json(const Assignment& a);  // name-sorted fields
Json assignment_to_json(const Assignment& a, const std::vector<std::string>& order);

// Unvalidated model document <-> description. Structural problems (missing
// fields, wrong JSON types) are Validation errors naming the field.
ModelDescription model_from_json(const Json& j);
Json model_to_json(const ModelDescription& d);

// Descriptions of validated models, equations printed back from parsed form.
ModelDescription describe(const Model& m);
ModelDescription describe(const DelayedModel& m);

struct LoadedModel {
  std::variant<Model, DelayedModel> m;

  bool is_delayed() const { return std::holds_alternative<DelayedModel>(m); }
  const Model& onestep() const { return std::get<Model>(m); }
  const DelayedModel& delayed() const { return std::get<DelayedModel>(m); }
  const Signature& signature() const;
};

LoadedModel load_model(const Json& j);

struct ScenarioData {
  PeriodicSeq context;
  Assignment init;
};

// The context must cover exactly the exogenous names at every position and
// init exactly the endogenous ones.
ScenarioData load_scenario(const Json& j, const Signature& sig);

// Unreadable or malformed files are syntax errors naming the path.
Json read_json_file(const std::string& path);
void write_json_file(const std::string& path, const Json& j);

}  // namespace tsem
