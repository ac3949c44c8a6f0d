#include <cctype>
#include <chrono>
#include <cstdint>
#include <iostream>
#include <optional>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "tsem/docs.hpp"
#include "tsem/equivalence.hpp"
#include "tsem/errors.hpp"
#include "tsem/logic.hpp"

namespace {

using namespace tsem;

using Clock = std::chrono::steady_clock;

std::int64_t ms_since(Clock::time_point start) {
  return std::chrono::duration_cast<std::chrono::milliseconds>(Clock::now() - start).count();
}

std::string state_line(const Assignment& a, const std::vector<std::string>& order) {
  std::string out;
  for (const std::string& name : order) {
    if (!out.empty()) out += ' ';
    out += name + "=" + a.at(name).to_string();
  }
  return out;
}

Json states_json(const std::vector<Assignment>& states, const std::vector<std::string>& order) {
  Json arr = Json::array();
  for (const Assignment& a : states) arr.push_back(assignment_to_json(a, order));
  return arr;
}

void emit(const Json& report) { std::cout << report.dump(2) << '\n'; }

// `name=value[, ...]`; values as in documents (int, symbol, or `#`).
Assignment parse_assignment_spec(const std::string& spec) {
  auto trim = [](std::string s) {
    std::size_t b = s.find_first_not_of(" \t");
    std::size_t e = s.find_last_not_of(" \t");
    return b == std::string::npos ? std::string() : s.substr(b, e - b + 1);
  };
  Assignment a;
  std::size_t pos = 0;
  while (pos <= spec.size()) {
    std::size_t comma = spec.find(',', pos);
    std::string item = trim(spec.substr(pos, comma == std::string::npos ? comma : comma - pos));
    pos = comma == std::string::npos ? spec.size() + 1 : comma + 1;
    if (item.empty()) {
      if (comma == std::string::npos) break;
      fail(ErrorKind::SyntaxError, "empty entry in assignment list '" + spec + "'");
    }
    std::size_t eq = item.find('=');
    if (eq == std::string::npos)
      fail(ErrorKind::SyntaxError, "expected name=value, got '" + item + "'");
    std::string name = trim(item.substr(0, eq));
    std::string val = trim(item.substr(eq + 1));
    if (!is_identifier(name))
      fail(ErrorKind::SyntaxError, "'" + name + "' is not a variable name");
    Value v;
    if (val == "#") {
      v = Value::undef();
    } else if (!val.empty() && (std::isdigit(static_cast<unsigned char>(val[0])) || val[0] == '-')) {
      try {
        std::size_t used = 0;
        v = Value::integer(std::stoll(val, &used));
        if (used != val.size()) fail(ErrorKind::SyntaxError, "bad value '" + val + "'");
      } catch (const std::logic_error&) {
        fail(ErrorKind::SyntaxError, "bad value '" + val + "'");
      }
    } else if (is_identifier(val)) {
      v = Value::symbol(val);
    } else {
      fail(ErrorKind::SyntaxError, "bad value '" + val + "'");
    }
    if (a.has(name)) fail(ErrorKind::DuplicateName, "'" + name + "' assigned twice");
    a.set(name, v);
  }
  return a;
}

struct CommonArgs {
  std::string model_path;
  std::string scenario_path;
  std::string intervene;
  bool json = false;
};

int cmd_simulate(const CommonArgs& args, std::uint64_t steps) {
  Clock::time_point start = Clock::now();
  LoadedModel loaded = load_model(read_json_file(args.model_path));
  ScenarioData sc = load_scenario(read_json_file(args.scenario_path), loaded.signature());
  Intervention intv = parse_intervention_spec(args.intervene, loaded.signature());
  std::vector<std::string> order = loaded.signature().endogenous_names();

  FiniteTrace trace =
      loaded.is_delayed()
          ? run_delayed(loaded.delayed(), sc.context, sc.init, intv, steps)
          : run(make_scenario(loaded.onestep(), sc.context, sc.init), intv, steps);

  if (args.json) {
    Json report = Json::object();
    report["command"] = "simulate";
    report["verdict"] = true;
    report["trace"] = Json{{"states", states_json(trace.states, order)}};
    report["stats"] = Json{{"elapsed_ms", ms_since(start)}};
    emit(report);
  } else {
    for (std::size_t i = 0; i < trace.states.size(); ++i)
      std::cout << i << ": " << state_line(trace.states[i], order) << '\n';
  }
  return 0;
}

int cmd_periodic(const CommonArgs& args) {
  Clock::time_point start = Clock::now();
  LoadedModel loaded = load_model(read_json_file(args.model_path));
  ScenarioData sc = load_scenario(read_json_file(args.scenario_path), loaded.signature());
  Intervention intv = parse_intervention_spec(args.intervene, loaded.signature());
  std::vector<std::string> order = loaded.signature().endogenous_names();

  Computation c =
      loaded.is_delayed()
          ? periodic_delayed(loaded.delayed(), sc.context, sc.init, intv)
          : periodic_computation(make_scenario(loaded.onestep(), sc.context, sc.init), intv);
  const PeriodicSeq& seq = c.seq;

  if (args.json) {
    Json report = Json::object();
    report["command"] = "periodic";
    report["verdict"] = true;
    report["trace"] = Json{{"prefix", states_json(seq.prefix(), order)},
                           {"loop", states_json(seq.loop(), order)}};
    report["stats"] = Json{{"prefix_len", seq.prefix_len()},
                           {"loop_len", seq.loop_len()},
                           {"elapsed_ms", ms_since(start)}};
    emit(report);
  } else {
    std::cout << "prefix:\n";
    for (std::size_t i = 0; i < seq.prefix_len(); ++i)
      std::cout << i << ": " << state_line(seq.prefix()[i], order) << '\n';
    std::cout << "loop:\n";
    for (std::size_t i = 0; i < seq.loop_len(); ++i)
      std::cout << seq.prefix_len() + i << ": " << state_line(seq.loop()[i], order) << '\n';
    std::cout << "type: (" << seq.prefix_len() << ", " << seq.loop_len() << ")\n";
  }
  return 0;
}

int cmd_check(const CommonArgs& args, std::uint64_t at, const std::string& formula) {
  Clock::time_point start = Clock::now();
  LoadedModel loaded = load_model(read_json_file(args.model_path));
  ScenarioData sc = load_scenario(read_json_file(args.scenario_path), loaded.signature());

  Model model;
  Assignment init = sc.init;
  if (loaded.is_delayed()) {
    CompiledModelMap compiled = compile_to_onestep(loaded.delayed());
    model = compiled.model;
    init = compiled.extend_init(init);
  } else {
    model = loaded.onestep();
  }
  CpltlPtr f = parse_cpltl(formula, model.signature());
  Scenario scenario = make_scenario(model, sc.context, std::move(init));
  bool verdict = check_cpltl(scenario, at, *f);

  if (args.json) {
    Json report = Json::object();
    report["command"] = "check";
    report["verdict"] = verdict;
    report["stats"] = Json{{"elapsed_ms", ms_since(start)}};
    emit(report);
  } else {
    std::cout << (verdict ? "true" : "false") << '\n';
  }
  return verdict ? 0 : 1;
}

struct EquivArgs {
  std::string model_a, model_b;
  std::vector<std::string> observe;
  std::uint64_t rescale = 0;  // 0: plain equivalence
  SamplerConfig cfg;
  std::string v2_hint;
  bool json = false;
};

const Model& require_onestep(const LoadedModel& m, const std::string& path) {
  if (m.is_delayed())
    fail(ErrorKind::Validation,
         "'" + path + "' is a delayed model; compile it to one-step form first");
  return m.onestep();
}

Json context_json(const PeriodicSeq& ctx, const std::vector<std::string>& order) {
  return Json{{"prefix", states_json(ctx.prefix(), order)},
              {"loop", states_json(ctx.loop(), order)}};
}

int cmd_equiv(EquivArgs& args) {
  LoadedModel la = load_model(read_json_file(args.model_a));
  LoadedModel lb = load_model(read_json_file(args.model_b));
  const Model& m1 = require_onestep(la, args.model_a);
  const Model& m2 = require_onestep(lb, args.model_b);
  ObservableSet obs = make_observables(m1, m2, args.observe);
  if (!args.v2_hint.empty()) {
    Assignment hint = parse_assignment_spec(args.v2_hint);
    for (const auto& [name, v] : hint.entries()) {
      const Variable& var = m2.signature().require(name);
      if (var.kind != VarKind::Endogenous)
        fail(ErrorKind::Validation, "hint variable '" + name + "' is not endogenous");
      if (!var.range.contains(v))
        fail(ErrorKind::OutOfRangeValue,
             "hint value " + v.to_string() + " is outside the range of '" + name + "'");
    }
    args.cfg.v2_hint = std::move(hint);
  }

  EquivVerdict verdict =
      args.rescale > 0
          ? test_rescalable_equivalence(m1, m2, obs, args.rescale, args.cfg)
          : test_model_equivalence(m1, m2, obs, args.cfg);

  std::vector<std::string> exo_order = m1.signature().exogenous_names();
  if (args.json) {
    Json report = Json::object();
    report["command"] = "equiv";
    if (verdict.no_counterexample_found()) {
      report["verdict"] = "no-counterexample-found";
    } else {
      report["verdict"] = false;
      const Counterexample& cx = *verdict.counterexample;
      Json intv = Json::array();
      for (const Intervention::Entry& e : cx.intervention.entries())
        intv.push_back({{"name", e.name}, {"time", e.time}, {"value", value_to_json(e.value)}});
      report["counterexample"] = Json{
          {"direction", cx.direction == Direction::Forward ? "forward" : "reverse"},
          {"intervention", std::move(intv)},
          {"context", context_json(cx.context, exo_order)},
          {"init", assignment_to_json(cx.source_init)},
          {"divergence_index", cx.divergence_index},
          {"variable", cx.variable}};
    }
    // No elapsed time here: seeded runs promise byte-identical output.
    report["stats"] = Json{{"samples", verdict.instances_tested}};
    emit(report);
  } else if (verdict.no_counterexample_found()) {
    std::cout << "no-counterexample-found (" << verdict.instances_tested
              << " instances tested)\n";
  } else {
    const Counterexample& cx = *verdict.counterexample;
    std::cout << "counterexample ("
              << (cx.direction == Direction::Forward ? "forward" : "reverse")
              << " direction, instance " << verdict.instances_tested << ")\n";
    std::cout << "intervention: " << cx.intervention.to_string() << '\n';
    std::cout << "context: " << cx.context.to_string() << '\n';
    std::cout << "source init: " << cx.source_init.to_string() << '\n';
    std::cout << "diverges at index " << cx.divergence_index << " on " << cx.variable << '\n';
  }
  return verdict.no_counterexample_found() ? 0 : 1;
}

int cmd_compile_delays(const std::string& model_path, const std::string& out_path) {
  LoadedModel loaded = load_model(read_json_file(model_path));
  if (!loaded.is_delayed())
    fail(ErrorKind::Validation, "'" + model_path + "' is not a delayed model");
  const DelayedModel& dm = loaded.delayed();

  CompiledModelMap compiled = compile_to_onestep(dm);
  Json doc = model_to_json(describe(compiled.model));
  write_json_file(out_path, doc);

  Json chains = Json::array();
  for (const auto& [key, name] : compiled.fresh)
    chains.push_back({{"variable", name}, {"source", key.first}, {"depth", key.second}});
  Json sidecar = Json{{"original", dm.signature().endogenous_names()}, {"chains", std::move(chains)}};
  std::string map_path = out_path + ".map.json";
  write_json_file(map_path, sidecar);

  load_model(read_json_file(out_path));  // the written document must validate

  std::cout << "wrote " << out_path << " and " << map_path << '\n';
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"temporal structural equation models: simulate, model-check, compare"};
  app.require_subcommand(1);

  CommonArgs sim_args;
  std::uint64_t sim_steps = 0;
  CLI::App* sim = app.add_subcommand("simulate", "print the first N states of a computation");
  sim->add_option("--model", sim_args.model_path, "model document")->required();
  sim->add_option("--scenario", sim_args.scenario_path, "scenario document")->required();
  sim->add_option("--steps", sim_steps, "number of states to print")
      ->required()
      ->check(CLI::PositiveNumber);
  sim->add_option("--intervene", sim_args.intervene, "intervention list name@t:=value,...");
  sim->add_flag("--json", sim_args.json, "machine-readable report");

  CommonArgs per_args;
  CLI::App* per = app.add_subcommand("periodic", "print the normalized lasso of a computation");
  per->add_option("--model", per_args.model_path, "model document")->required();
  per->add_option("--scenario", per_args.scenario_path, "scenario document")->required();
  per->add_option("--intervene", per_args.intervene, "intervention list name@t:=value,...");
  per->add_flag("--json", per_args.json, "machine-readable report");

  CommonArgs chk_args;
  std::uint64_t chk_at = 0;
  std::string chk_formula;
  CLI::App* chk = app.add_subcommand("check", "decide a formula at a position");
  chk->add_option("--model", chk_args.model_path, "model document")->required();
  chk->add_option("--scenario", chk_args.scenario_path, "scenario document")->required();
  chk->add_option("--at", chk_at, "position to check at")->required();
  chk->add_option("--formula", chk_formula, "formula text")->required();
  chk->add_flag("--json", chk_args.json, "machine-readable report");

  EquivArgs eq_args;
  CLI::App* eq = app.add_subcommand("equiv", "search for an equivalence counterexample");
  eq->add_option("--model-a", eq_args.model_a, "first model document")->required();
  eq->add_option("--model-b", eq_args.model_b, "second model document")->required();
  eq->add_option("--observe", eq_args.observe, "observable variables")
      ->required()
      ->delimiter(',');
  eq->add_option("--rescale", eq_args.rescale,
                 "compare a's index i against b's index i*k")
      ->check(CLI::PositiveNumber);
  eq->add_option("--samples", eq_args.cfg.samples, "instances to test");
  eq->add_option("--seed", eq_args.cfg.seed, "sampler seed");
  eq->add_option("--max-int-size", eq_args.cfg.max_intervention_size,
                 "largest sampled intervention");
  eq->add_option("--max-time", eq_args.cfg.max_time, "latest sampled intervention time");
  eq->add_option("--max-ctx-prefix", eq_args.cfg.max_context_prefix,
                 "longest sampled context prefix");
  eq->add_option("--max-ctx-loop", eq_args.cfg.max_context_loop,
                 "longest sampled context loop");
  eq->add_option("--v2-hint", eq_args.v2_hint,
                 "pin target-side initial values, name=value,...");
  eq->add_flag("--json", eq_args.json, "machine-readable report");

  std::string cmp_model, cmp_out;
  CLI::App* cmp = app.add_subcommand("compile-delays", "rewrite a delayed model as one-step");
  cmp->add_option("--model", cmp_model, "delayed model document")->required();
  cmp->add_option("-o,--output", cmp_out, "output model document")->required();

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    int code = app.exit(e);
    return code == 0 ? 0 : 2;
  }

  try {
    if (sim->parsed()) return cmd_simulate(sim_args, sim_steps);
    if (per->parsed()) return cmd_periodic(per_args);
    if (chk->parsed()) return cmd_check(chk_args, chk_at, chk_formula);
    if (eq->parsed()) return cmd_equiv(eq_args);
    if (cmp->parsed()) return cmd_compile_delays(cmp_model, cmp_out);
  } catch (const Error& e) {
    std::cerr << "error: " << e.what() << '\n';
    return e.is_syntax() ? 2 : 3;
  }
  return 2;
}
