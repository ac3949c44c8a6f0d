#include <filesystem>
#include <fstream>
#include <string>

#include "doctest.h"

#include "helpers.hpp"
#include "tsem/docs.hpp"
#include "tsem/errors.hpp"

using namespace tsem;
using namespace tsem::testhelp;

namespace {

std::string fx(const std::string& name) {
  return std::string(FIXTURES_DIR) + "/" + name;
}

template <typename F>
void check_fails(F f, ErrorKind kind, const std::string& needle) {
  try {
    f();
  } catch (const Error& e) {
    CHECK(e.kind() == kind);
    CHECK_MESSAGE(std::string(e.what()).find(needle) != std::string::npos,
                  "message '" << std::string(e.what()) << "' lacks '" << needle << "'");
    return;
  }
  FAIL("expected an error mentioning '" << needle << "'");
}

Json keys_of(const Json& j) {
  Json out = Json::array();
  for (const auto& item : j.items()) out.push_back(item.key());
  return out;
}

}  // namespace

TEST_CASE("values on the wire") {
  CHECK(value_from_json(Json(3)) == iv(3));
  CHECK(value_from_json(Json("half")) == sv("half"));
  CHECK(value_from_json(Json("#")) == Value::undef());
  CHECK(value_to_json(iv(-2)) == Json(-2));
  CHECK(value_to_json(sv("lo")) == Json("lo"));
  CHECK(value_to_json(Value::undef()) == Json("#"));
  for (const Value& v : {iv(7), sv("half"), Value::undef()})
    CHECK(value_from_json(value_to_json(v)) == v);

  check_fails([] { value_from_json(Json(true)); }, ErrorKind::Validation, "values");
  check_fails([] { value_from_json(Json(2.5)); }, ErrorKind::Validation, "values");
  check_fails([] { value_from_json(Json::array()); }, ErrorKind::Validation, "values");
}

TEST_CASE("ranges on the wire") {
  Range interval = range_from_json(Json::parse(R"({"int": [0, 3]})"));
  CHECK(interval == Range::int_interval(0, 3));
  CHECK(range_to_json(interval).dump() == R"({"int":[0,3]})");

  Range listed = range_from_json(Json::parse(R"([0, "half", 1])"));
  CHECK(listed == Range::enumerated({iv(0), sv("half"), iv(1)}));
  CHECK(range_to_json(listed).dump() == R"([0,"half",1])");

  // The two spellings of {0, 1} stay distinct through a round trip.
  CHECK(range_from_json(range_to_json(Range::int_interval(0, 1))) == Range::int_interval(0, 1));
  CHECK(range_from_json(range_to_json(Range::enumerated({iv(0), iv(1)}))) !=
        Range::int_interval(0, 1));

  check_fails([] { range_from_json(Json(5)); }, ErrorKind::Validation, "range");
  check_fails([] { range_from_json(Json::parse(R"({"int": [0]})")); }, ErrorKind::Validation,
              "[lo, hi]");
  check_fails([] { range_from_json(Json::parse(R"({"int": [1, 0]})")); }, ErrorKind::EmptyRange,
              "");
  check_fails([] { range_from_json(Json::parse(R"({"other": 1})")); }, ErrorKind::Validation,
              "int");
}

TEST_CASE("assignments on the wire") {
  Assignment a = assignment_from_json(Json::parse(R"({"ST": 1, "BS": 0})"));
  CHECK(a == asg({{"BS", iv(0)}, {"ST", iv(1)}}));
  CHECK(assignment_to_json(a).dump() == R"({"BS":0,"ST":1})");
  CHECK(assignment_to_json(a, {"ST", "BS"}).dump() == R"({"ST":1,"BS":0})");
  check_fails([] { assignment_from_json(Json::array()); }, ErrorKind::Validation, "object");
}

TEST_CASE("model documents report which field is broken") {
  check_fails([] { model_from_json(Json::parse(R"({"endogenous": []})")); },
              ErrorKind::Validation, "kind");
  check_fails([] { model_from_json(Json::parse(R"({"kind": "onestep"})")); },
              ErrorKind::Validation, "endogenous");
  check_fails([] { model_from_json(Json::parse(R"({"kind": "weekly", "endogenous": []})")); },
              ErrorKind::Validation, "weekly");
  check_fails(
      [] {
        model_from_json(Json::parse(R"({"kind": "onestep", "exogenous": 3, "endogenous": []})"));
      },
      ErrorKind::Validation, "exogenous");
  check_fails(
      [] {
        model_from_json(Json::parse(
            R"({"kind": "onestep", "endogenous": [{"name": "A", "range": {"int": [0, 1]}}]})"));
      },
      ErrorKind::Validation, "equation");
  check_fails(
      [] {
        model_from_json(Json::parse(
            R"({"kind": "onestep", "endogenous": [{"range": {"int": [0, 1]}}]})"));
      },
      ErrorKind::Validation, "name");
  check_fails(
      [] {
        model_from_json(
            Json::parse(R"({"kind": "delayed", "xi": "three", "endogenous": []})"));
      },
      ErrorKind::Validation, "xi");
}

TEST_CASE("document field order is fixed") {
  Json one = model_to_json(describe(rocks_model()));
  CHECK(keys_of(one).dump() == R"(["kind","exogenous","endogenous"])");
  CHECK(keys_of(one["endogenous"][0]).dump() == R"(["name","range","equation"])");
  CHECK(one["kind"] == "onestep");

  LoadedModel dm = load_model(read_json_file(fx("rocks_delays.model.json")));
  REQUIRE(dm.is_delayed());
  Json two = model_to_json(describe(dm.delayed()));
  CHECK(keys_of(two).dump() == R"(["kind","xi","exogenous","endogenous"])");
  CHECK(two["xi"] == 3);
}

TEST_CASE("describe and load invert each other") {
  Json first = model_to_json(describe(rocks_model()));
  LoadedModel back = load_model(first);
  REQUIRE_FALSE(back.is_delayed());
  CHECK(model_to_json(describe(back.onestep())) == first);

  LoadedModel delayed = load_model(read_json_file(fx("rocks_delays.model.json")));
  Json canon = model_to_json(describe(delayed.delayed()));
  CHECK(model_to_json(describe(load_model(canon).delayed())) == canon);
}

TEST_CASE("every fixture loads and validates") {
  for (const char* name : {"rocks", "treatment", "pipeline_chain", "pipeline_packed",
                           "deadline_min", "deadline_sec"}) {
    LoadedModel m = load_model(read_json_file(fx(std::string(name) + ".model.json")));
    CHECK_FALSE(m.is_delayed());
  }
  for (const char* name : {"rocks_delays", "all_lag1"}) {
    LoadedModel m = load_model(read_json_file(fx(std::string(name) + ".model.json")));
    CHECK(m.is_delayed());
  }

  LoadedModel rocks = load_model(read_json_file(fx("rocks.model.json")));
  ScenarioData sc = load_scenario(read_json_file(fx("rocks.scenario.json")), rocks.signature());
  CHECK(sc.context.prefix_len() == 4);
  CHECK(sc.context.loop_len() == 1);
  CHECK(sc.init == rocks_init());
  // The file content and the in-code builder describe the same model.
  CHECK(model_to_json(describe(rocks.onestep())) == model_to_json(describe(rocks_model())));

  LoadedModel treat = load_model(read_json_file(fx("treatment.model.json")));
  load_scenario(read_json_file(fx("treatment.scenario1.json")), treat.signature());
  load_scenario(read_json_file(fx("treatment.scenario2.json")), treat.signature());
  CHECK(model_to_json(describe(treat.onestep())) == model_to_json(describe(treatment_model())));

  LoadedModel rd = load_model(read_json_file(fx("rocks_delays.model.json")));
  load_scenario(read_json_file(fx("rocks_delays.scenario.json")), rd.signature());
}

TEST_CASE("scenario documents are validated against the signature") {
  Model m = rocks_model();
  const Signature& sig = m.signature();
  auto parse = [&](const char* text) { return load_scenario(Json::parse(text), sig); };

  check_fails([&] { parse(R"({"init": {}})"); }, ErrorKind::Validation, "context");
  check_fails([&] { parse(R"({"context": {"prefix": []}, "init": {}})"); },
              ErrorKind::Validation, "loop");
  check_fails([&] { parse(R"({"context": {"loop": []}, "init": {}})"); }, ErrorKind::Validation,
              "loop");
  check_fails(
      [&] {
        parse(R"({"context": {"loop": [{"U_ST": 0}]},
                  "init": {"ST": 0, "BT": 0, "BS": 0}})");
      },
      ErrorKind::Validation, "U_BT");
  check_fails(
      [&] {
        parse(R"({"context": {"loop": [{"U_ST": 0, "U_BT": 0, "Extra": 1}]},
                  "init": {"ST": 0, "BT": 0, "BS": 0}})");
      },
      ErrorKind::Validation, "Extra");
  check_fails(
      [&] {
        parse(R"({"context": {"loop": [{"U_ST": 0, "U_BT": 9}]},
                  "init": {"ST": 0, "BT": 0, "BS": 0}})");
      },
      ErrorKind::OutOfRangeValue, "U_BT");
  check_fails(
      [&] {
        parse(R"({"context": {"loop": [{"U_ST": 0, "U_BT": 0}]},
                  "init": {"ST": 0, "BT": 0}})");
      },
      ErrorKind::Validation, "BS");
}

TEST_CASE("files are read and written verbatim") {
  namespace fsys = std::filesystem;
  fsys::path dir = fsys::temp_directory_path();

  check_fails([&] { read_json_file((dir / "absent.json").string()); }, ErrorKind::SyntaxError,
              "cannot open");

  fsys::path broken = dir / "tsem_docs_broken.json";
  {
    std::ofstream out(broken);
    out << "{ not json";
  }
  check_fails([&] { read_json_file(broken.string()); }, ErrorKind::SyntaxError,
              broken.filename().string());

  fsys::path ok = dir / "tsem_docs_ok.json";
  Json doc = model_to_json(describe(treatment_model()));
  write_json_file(ok.string(), doc);
  CHECK(read_json_file(ok.string()) == doc);

  std::ifstream in(ok);
  std::string bytes((std::istreambuf_iterator<char>(in)), std::istreambuf_iterator<char>());
  CHECK(bytes == doc.dump(2) + "\n");

  fsys::remove(broken);
  fsys::remove(ok);
}
