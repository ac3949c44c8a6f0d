#include "tsem/delays.hpp"

#include <algorithm>
#include <set>

#include "tsem/errors.hpp"

namespace tsem {

DelayedModel::DelayedModel(Signature sig, std::map<std::string, ExprPtr, std::less<>> equations)
    : sig_(std::move(sig)), equations_(std::move(equations)) {
  for (const Variable& v : sig_.endogenous())
    if (equations_.find(v.name) == equations_.end())
      fail(ErrorKind::Validation, "missing equation for '" + v.name + "'");
  if (equations_.size() != sig_.endogenous().size())
    fail(ErrorKind::Validation, "equation present for a variable that is not endogenous");
  for (const auto& [name, e] : equations_) {
    if (!referenced_variables(*e).empty())
      fail(ErrorKind::Validation, "bare variable reference in delayed equation for '" + name + "'");
    auto lags = referenced_lags(*e);
    for (const auto& [ref, lag] : lags) xi_ = std::max(xi_, lag);
    domains_[name] = std::move(lags);
  }
}

const ExprPtr& DelayedModel::equation(std::string_view name) const {
  auto it = equations_.find(name);
  if (it == equations_.end())
    fail(ErrorKind::UnknownVariable, "no equation for variable '" + std::string(name) + "'");
  return it->second;
}

const std::vector<std::pair<std::string, int>>& DelayedModel::domain(
    std::string_view name) const {
  auto it = domains_.find(name);
  if (it == domains_.end())
    fail(ErrorKind::UnknownVariable, "no equation for variable '" + std::string(name) + "'");
  return it->second;
}

int DelayedModel::d_max(std::string_view name) const {
  int d = 0;
  for (const auto& [ref, lag] : domain(name)) d = std::max(d, lag);
  return d;
}

DelayedModel validate_delayed_model(const ModelDescription& d) {
  if (!d.delayed) fail(ErrorKind::Validation, "one-step description passed to the delayed validator");
  Signature sig = validate_signature(d.exogenous, d.endogenous);

  std::map<std::string, ExprPtr, std::less<>> eqs;
  for (const auto& [name, text] : d.equations) {
    const Variable* v = sig.find(name);
    if (!v) fail(ErrorKind::UnknownVariable, "equation for unknown variable '" + name + "'");
    if (v->kind != VarKind::Endogenous)
      fail(ErrorKind::Validation, "equation for exogenous variable '" + name + "'");
    if (eqs.count(name)) fail(ErrorKind::DuplicateName, "two equations for variable '" + name + "'");
    ExprPtr e;
    try {
      e = parse_equation(text, sig, EquationMode::Delayed);
      typecheck_equation(*e, sig, *v);
    } catch (const Error& err) {
      throw Error(err.kind(), "in equation for '" + name + "': " + err.what());
    }
    eqs.emplace(name, std::move(e));
  }
  DelayedModel m(std::move(sig), std::move(eqs));
  if (d.xi.has_value() && *d.xi != m.xi())
    fail(ErrorKind::Validation, "declared xi " + std::to_string(*d.xi) +
                                    " does not match the maximal lag " + std::to_string(m.xi()));
  return m;
}

namespace {

// Evaluation against explicit history: lag t at step i reads index i - t,
// from the context for exogenous names and from past states for endogenous.
class DelayedEnv final : public EvalEnv {
 public:
  DelayedEnv(const DelayedModel& m, const PeriodicSeq& context,
             const std::vector<Assignment>& states, std::size_t i)
      : m_(m), context_(context), states_(states), i_(i) {}

  Value ref(const std::string& name) const override {
    fail(ErrorKind::TypeError, "bare reference to '" + name + "' in a delayed model");
  }
  Value lag(const std::string& name, int t) const override {
    std::size_t back = static_cast<std::size_t>(t);
    if (back > i_) fail(ErrorKind::Validation, "lag reads before the start of time");
    if (m_.signature().is_exogenous(name)) return context_.at(i_ - back).at(name);
    return states_[i_ - back].at(name);
  }

 private:
  const DelayedModel& m_;
  const PeriodicSeq& context_;
  const std::vector<Assignment>& states_;
  std::size_t i_;
};

}  // namespace

FiniteTrace run_delayed(const DelayedModel& m, const PeriodicSeq& context,
                        const Assignment& init, const Intervention& intervention,
                        std::size_t steps) {
  if (steps == 0) fail(ErrorKind::Validation, "a run needs at least one step");
  const Signature& sig = m.signature();
  for (const Assignment& a : context.prefix()) validate_covers_exogenous(a, sig);
  for (const Assignment& a : context.loop()) validate_covers_exogenous(a, sig);
  validate_covers_endogenous(init, sig);
  intervention.validate_against(sig);

  FiniteTrace t;
  t.states.reserve(steps);
  t.states.push_back(intervention_initial(init, intervention));
  for (std::size_t i = 1; i < steps; ++i) {
    DelayedEnv env(m, context, t.states, i);
    Assignment next;
    for (const Variable& v : sig.endogenous()) {
      int d = m.d_max(v.name);
      if (i < static_cast<std::size_t>(d)) {
        next.set(v.name, t.states[i - 1].at(v.name));  // warmup: keep the last value
        continue;
      }
      Value val = eval_expr(*m.equation(v.name), env);
      if (!v.range.contains(val))
        fail(ErrorKind::OutOfRange, "equation for '" + v.name + "' produced " + val.to_string() +
                                        ", outside its range " + v.range.to_string());
      next.set(v.name, std::move(val));
    }
    for (const Intervention::Entry& e : intervention.entries())
      if (e.time == i) next.set(e.name, e.value);
    t.states.push_back(std::move(next));
  }
  return t;
}

namespace {

Range extend_with_undef(const Range& r) {
  std::vector<Value> vals = r.values();
  vals.push_back(Value::undef());
  return Range::enumerated(std::move(vals));
}

std::string fresh_chain_name(const std::string& source, int depth,
                             const std::set<std::string, std::less<>>& used) {
  std::string name = source + "__lag" + std::to_string(depth);
  while (used.count(name)) name += "_";
  return name;
}

// Rewrites lag references to chain-variable reads: lag 1 reads the source
// directly (previous step), lag t reads the depth t-1 chain variable.
ExprPtr rewrite_lags(const Expr& e,
                     const std::map<std::pair<std::string, int>, std::string>& fresh) {
  struct V {
    const std::map<std::pair<std::string, int>, std::string>& fresh;
    ExprPtr operator()(const ConstE& c) const { return expr::constant(c.value); }
    ExprPtr operator()(const BoolE& b) const { return expr::boolean(b.value); }
    ExprPtr operator()(const VarE& v) const { return expr::var(v.name); }
    ExprPtr operator()(const LagE& l) const {
      if (l.lag == 1) return expr::var(l.name);
      return expr::var(fresh.at({l.name, l.lag - 1}));
    }
    ExprPtr operator()(const NotE& n) const { return expr::negate(rewrite_lags(*n.arg, fresh)); }
    ExprPtr operator()(const BinE& b) const {
      return expr::bin(b.op, rewrite_lags(*b.lhs, fresh), rewrite_lags(*b.rhs, fresh));
    }
    ExprPtr operator()(const IteE& i) const {
      return expr::ite(rewrite_lags(*i.cond, fresh), rewrite_lags(*i.then_e, fresh),
                       rewrite_lags(*i.else_e, fresh));
    }
  };
  return std::visit(V{fresh}, e.node);
}

}  // namespace

CompiledModelMap compile_to_onestep(const DelayedModel& m) {
  const Signature& sig = m.signature();

  // Chain depths needed per source: a lag-t read needs depths 1..t-1.
  std::map<std::string, int> depth_needed;
  for (const Variable& v : sig.endogenous())
    for (const auto& [source, lag] : m.domain(v.name))
      if (lag >= 2) {
        int& d = depth_needed[source];
        d = std::max(d, lag - 1);
      }

  std::set<std::string, std::less<>> used;
  for (const Variable& v : sig.exogenous()) used.insert(v.name);
  for (const Variable& v : sig.endogenous()) used.insert(v.name);

  std::map<std::pair<std::string, int>, std::string> fresh;
  std::vector<Variable> chain_vars;
  for (const auto& [source, max_depth] : depth_needed) {
    const Variable& src = sig.require(source);
    for (int depth = 1; depth <= max_depth; ++depth) {
      std::string name = fresh_chain_name(source, depth, used);
      used.insert(name);
      fresh[{source, depth}] = name;
      chain_vars.push_back({name, VarKind::Endogenous, extend_with_undef(src.range)});
    }
  }

  std::map<std::string, ExprPtr, std::less<>> eqs;
  for (const Variable& v : sig.endogenous()) {
    ExprPtr body = rewrite_lags(*m.equation(v.name), fresh);
    // Guard on the chain slots the equation reads: while any is still `#`
    // the original would not have fired yet, so keep the previous value.
    std::vector<std::string> slots;
    for (const auto& [source, lag] : m.domain(v.name))
      if (lag >= 2) slots.push_back(fresh.at({source, lag - 1}));
    std::sort(slots.begin(), slots.end());
    slots.erase(std::unique(slots.begin(), slots.end()), slots.end());
    if (!slots.empty()) {
      ExprPtr defined;
      for (const std::string& s : slots) {
        ExprPtr test = expr::bin(BinOp::Neq, expr::var(s), expr::constant(Value::undef()));
        defined = defined ? expr::bin(BinOp::And, defined, test) : test;
      }
      body = expr::ite(defined, body, expr::var(v.name));
    }
    eqs.emplace(v.name, std::move(body));
  }
  // Chain variable at depth 1 copies its source; deeper ones shift along.
  for (const auto& [key, name] : fresh) {
    const auto& [source, depth] = key;
    ExprPtr copy_from =
        depth == 1 ? expr::var(source) : expr::var(fresh.at({source, depth - 1}));
    eqs.emplace(name, std::move(copy_from));
  }

  std::vector<Variable> endo = sig.endogenous();
  endo.insert(endo.end(), chain_vars.begin(), chain_vars.end());
  Model compiled(Signature(sig.exogenous(), std::move(endo)), std::move(eqs));
  return CompiledModelMap{std::move(compiled), std::move(fresh), Value::undef()};
}

Assignment CompiledModelMap::extend_init(const Assignment& init) const {
  Assignment out = init;
  for (const auto& [key, name] : fresh) out.set(name, undef_marker);
  return out;
}

Computation periodic_delayed(const DelayedModel& m, const PeriodicSeq& context,
                             const Assignment& init, const Intervention& intervention) {
  validate_covers_endogenous(init, m.signature());
  CompiledModelMap compiled = compile_to_onestep(m);
  Scenario sc = make_scenario(compiled.model, context, compiled.extend_init(init));
  Computation c = periodic_computation(sc, intervention);
  PeriodicSeq projected = c.seq.restricted(m.signature().endogenous_names()).normalized();
  return Computation{std::move(projected), c.raw_prefix_len, c.raw_loop_len};
}

}  // namespace tsem
