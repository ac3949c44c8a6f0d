#pragma once

// Shared builders for tests: the worked example models, assignment/context
// shorthands, and seeded random generators for models, sequences and
// formulas. Random model equations are range-closed by construction so fuzz
// runs never trip OutOfRange.

#include <cstdint>
#include <random>
#include <string>
#include <utility>
#include <vector>

#include "tsem/delays.hpp"
#include "tsem/equivalence.hpp"
#include "tsem/logic.hpp"

namespace tsem::testhelp {

inline Value iv(std::int64_t n) { return Value::integer(n); }
inline Value sv(std::string s) { return Value::symbol(std::move(s)); }

inline Assignment asg(std::vector<std::pair<std::string, Value>> entries) {
  return Assignment(std::move(entries));
}

inline PeriodicSeq ctx_of(std::vector<Assignment> prefix, std::vector<Assignment> loop) {
  return PeriodicSeq(std::move(prefix), std::move(loop));
}

// ---------------------------------------------------------------------------
// Worked examples, built through the validating path the CLI uses.

inline Model rocks_model() {
  ModelDescription d;
  d.exogenous = {{"U_ST", Range::int_interval(0, 1)}, {"U_BT", Range::int_interval(0, 1)}};
  d.endogenous = {{"ST", Range::int_interval(0, 1)},
                  {"BT", Range::int_interval(0, 1)},
                  {"BS", Range::int_interval(0, 1)}};
  d.equations = {{"ST", "U_ST"},
                 {"BT", "U_BT"},
                 {"BS", "if ST = 1 || BT = 1 then 1 else 0"}};
  return validate_model(d);
}

inline PeriodicSeq rocks_context() {
  auto u = [](std::int64_t st, std::int64_t bt) {
    return asg({{"U_ST", iv(st)}, {"U_BT", iv(bt)}});
  };
  return ctx_of({u(0, 0), u(1, 0), u(0, 0), u(0, 1)}, {u(0, 0)});
}

inline Assignment rocks_init() {
  return asg({{"ST", iv(0)}, {"BT", iv(0)}, {"BS", iv(0)}});
}

inline Scenario rocks_scenario() {
  return make_scenario(rocks_model(), rocks_context(), rocks_init());
}

// Signature of the worked examples with static lifetime, for tests that only
// need declarations.
inline const Signature& rocks_sig() {
  static const Model m = rocks_model();
  return m.signature();
}

inline Model treatment_model() {
  ModelDescription d;
  d.exogenous = {{"Dose", Range::int_interval(0, 1)}};
  d.endogenous = {{"T", Range::int_interval(0, 1)},
                  {"R", Range::enumerated({iv(0), sv("half"), iv(1)})}};
  d.equations = {{"T", "Dose"},
                 {"R",
                  "if (T = 1 && R = half) || R = 1 then 1 "
                  "else (if T = 1 && R = 0 then half else 0)"}};
  return validate_model(d);
}

inline PeriodicSeq treatment_ctx1() {
  auto u = [](std::int64_t d) { return asg({{"Dose", iv(d)}}); };
  return ctx_of({u(0), u(1), u(0), u(1), u(1), u(0)}, {u(0)});
}

inline PeriodicSeq treatment_ctx2() {
  return PeriodicSeq::constant(asg({{"Dose", iv(0)}}));
}

inline Assignment treatment_init() {
  return asg({{"T", iv(0)}, {"R", iv(0)}});
}

inline const Signature& treatment_sig() {
  static const Model m = treatment_model();
  return m.signature();
}

// The context/intervention interchange schedule: T pinned to 1 at 2, 4, 5.
inline Intervention treatment_interchange_int() {
  return Intervention({{"T", 2, iv(1)}, {"T", 4, iv(1)}, {"T", 5, iv(1)}});
}

// ---------------------------------------------------------------------------
// Random generators. All take an explicit engine so tests stay seeded.

inline std::size_t pick(std::mt19937_64& rng, std::size_t n) {
  return std::uniform_int_distribution<std::size_t>(0, n - 1)(rng);
}

inline Value random_in_range(std::mt19937_64& rng, const Range& r) {
  auto vals = r.values();
  return vals[pick(rng, vals.size())];
}

inline Range random_small_range(std::mt19937_64& rng) {
  switch (pick(rng, 4)) {
    case 0: return Range::int_interval(0, 1);
    case 1: return Range::int_interval(0, 2);
    case 2: return Range::int_interval(0, 3);
    default: return Range::enumerated({iv(0), sv("lo"), sv("hi")});
  }
}

// Boolean condition over the declared variables: equality against an
// in-range literal, an int comparison, or a connective over subconditions.
inline ExprPtr random_condition(std::mt19937_64& rng, const Signature& sig, int depth) {
  std::vector<const Variable*> all;
  for (const auto& v : sig.exogenous()) all.push_back(&v);
  for (const auto& v : sig.endogenous()) all.push_back(&v);
  const Variable& v = *all[pick(rng, all.size())];
  if (depth <= 0 || pick(rng, 3) == 0) {
    return expr::bin(BinOp::Eq, expr::var(v.name), expr::constant(random_in_range(rng, v.range)));
  }
  switch (pick(rng, 5)) {
    case 0:
      return expr::negate(random_condition(rng, sig, depth - 1));
    case 1:
      return expr::bin(BinOp::And, random_condition(rng, sig, depth - 1),
                       random_condition(rng, sig, depth - 1));
    case 2:
      return expr::bin(BinOp::Or, random_condition(rng, sig, depth - 1),
                       random_condition(rng, sig, depth - 1));
    case 3: {
      if (v.range.is_int_interval()) {
        // Arithmetic stays inside comparisons, so closure is unaffected.
        ExprPtr sum = expr::bin(BinOp::Add, expr::var(v.name), expr::constant(iv(1)));
        return expr::bin(BinOp::Lt, sum, expr::constant(iv(static_cast<std::int64_t>(
                                              pick(rng, 5)))));
      }
      return expr::bin(BinOp::Neq, expr::var(v.name),
                       expr::constant(random_in_range(rng, v.range)));
    }
    default: {
      if (v.range.is_int_interval()) {
        ExprPtr m = expr::bin(BinOp::Mod, expr::var(v.name), expr::constant(iv(2)));
        return expr::bin(BinOp::Eq, m, expr::constant(iv(0)));
      }
      return expr::bin(BinOp::Eq, expr::var(v.name),
                       expr::constant(random_in_range(rng, v.range)));
    }
  }
}

// Value expression closed over `target`'s range: a literal, a same-range
// variable read, or a guarded choice between two closed subexpressions.
inline ExprPtr random_closed_value(std::mt19937_64& rng, const Signature& sig,
                                   const Variable& target, int depth) {
  if (depth <= 0 || pick(rng, 3) == 0) {
    std::vector<ExprPtr> leaves;
    leaves.push_back(expr::constant(random_in_range(rng, target.range)));
    for (const auto& v : sig.endogenous())
      if (v.range == target.range) leaves.push_back(expr::var(v.name));
    for (const auto& v : sig.exogenous())
      if (v.range == target.range) leaves.push_back(expr::var(v.name));
    return leaves[pick(rng, leaves.size())];
  }
  return expr::ite(random_condition(rng, sig, 2),
                   random_closed_value(rng, sig, target, depth - 1),
                   random_closed_value(rng, sig, target, depth - 1));
}

inline Model random_closed_model(std::mt19937_64& rng) {
  std::vector<Variable> exo, endo;
  std::size_t n_exo = 1 + pick(rng, 2), n_endo = 2 + pick(rng, 3);
  for (std::size_t i = 0; i < n_exo; ++i)
    exo.push_back({"E" + std::to_string(i), VarKind::Exogenous, random_small_range(rng)});
  for (std::size_t i = 0; i < n_endo; ++i)
    endo.push_back({"V" + std::to_string(i), VarKind::Endogenous, random_small_range(rng)});
  Signature sig(exo, endo);
  std::map<std::string, ExprPtr, std::less<>> eqs;
  for (const auto& v : sig.endogenous()) eqs[v.name] = random_closed_value(rng, sig, v, 3);
  return Model(sig, std::move(eqs));
}

inline Assignment random_assignment(std::mt19937_64& rng, const std::vector<Variable>& vars) {
  Assignment a;
  for (const auto& v : vars) a.set(v.name, random_in_range(rng, v.range));
  return a;
}

inline PeriodicSeq random_context(std::mt19937_64& rng, const Signature& sig,
                                  std::size_t max_prefix, std::size_t max_loop) {
  std::vector<Assignment> prefix, loop;
  std::size_t np = pick(rng, max_prefix + 1), nl = 1 + pick(rng, max_loop);
  for (std::size_t i = 0; i < np; ++i) prefix.push_back(random_assignment(rng, sig.exogenous()));
  for (std::size_t i = 0; i < nl; ++i) loop.push_back(random_assignment(rng, sig.exogenous()));
  return PeriodicSeq(std::move(prefix), std::move(loop));
}

inline Intervention random_intervention(std::mt19937_64& rng, const Signature& sig,
                                        std::size_t max_size, std::size_t max_time) {
  std::vector<Intervention::Entry> entries;
  std::size_t n = pick(rng, max_size + 1);
  for (std::size_t i = 0; i < n; ++i) {
    const Variable& v = sig.endogenous()[pick(rng, sig.endogenous().size())];
    std::size_t t = pick(rng, max_time + 1);
    bool dup = false;
    for (const auto& e : entries) dup = dup || (e.name == v.name && e.time == t);
    if (!dup) entries.push_back({v.name, t, random_in_range(rng, v.range)});
  }
  return Intervention(std::move(entries));
}

// ---------------------------------------------------------------------------
// Random PLTL over a fixed atom pool.

struct AtomPool {
  std::vector<std::pair<std::string, Value>> atoms;
};

inline AtomPool atom_pool_for(const Signature& sig) {
  AtomPool p;
  for (const auto& v : sig.endogenous())
    for (const auto& val : v.range.values()) p.atoms.emplace_back(v.name, val);
  return p;
}

inline PltlPtr random_pltl(std::mt19937_64& rng, const AtomPool& pool, int depth) {
  if (depth <= 0 || pick(rng, 4) == 0) {
    if (pick(rng, 8) == 0) return pltl::constant(pick(rng, 2) == 0);
    const auto& [var, val] = pool.atoms[pick(rng, pool.atoms.size())];
    return pltl::atom(var, val);
  }
  switch (pick(rng, 10)) {
    case 0: return pltl::negate(random_pltl(rng, pool, depth - 1));
    case 1:
      return pltl::conj(random_pltl(rng, pool, depth - 1), random_pltl(rng, pool, depth - 1));
    case 2:
      return pltl::disj(random_pltl(rng, pool, depth - 1), random_pltl(rng, pool, depth - 1));
    case 3:
      return pltl::implies(random_pltl(rng, pool, depth - 1), random_pltl(rng, pool, depth - 1));
    case 4: return pltl::next(random_pltl(rng, pool, depth - 1));
    case 5:
      return pltl::until(random_pltl(rng, pool, depth - 1), random_pltl(rng, pool, depth - 1));
    case 6: return pltl::prev(random_pltl(rng, pool, depth - 1));
    case 7:
      return pltl::since(random_pltl(rng, pool, depth - 1), random_pltl(rng, pool, depth - 1));
    case 8:
      return pick(rng, 2) == 0 ? pltl::eventually(random_pltl(rng, pool, depth - 1))
                               : pltl::always(random_pltl(rng, pool, depth - 1));
    default:
      return pick(rng, 2) == 0 ? pltl::once(random_pltl(rng, pool, depth - 1))
                               : pltl::historically(random_pltl(rng, pool, depth - 1));
  }
}

// Random periodic sequence over two int variables, for logic oracles.
inline PeriodicSeq random_logic_seq(std::mt19937_64& rng, std::size_t max_prefix,
                                    std::size_t max_loop) {
  auto st = [&rng]() {
    return asg({{"A", iv(static_cast<std::int64_t>(pick(rng, 3)))},
                {"B", iv(static_cast<std::int64_t>(pick(rng, 3)))}});
  };
  std::vector<Assignment> prefix, loop;
  std::size_t np = pick(rng, max_prefix + 1), nl = 1 + pick(rng, max_loop);
  for (std::size_t i = 0; i < np; ++i) prefix.push_back(st());
  for (std::size_t i = 0; i < nl; ++i) loop.push_back(st());
  return PeriodicSeq(std::move(prefix), std::move(loop));
}

inline AtomPool logic_seq_pool() {
  AtomPool p;
  for (const char* n : {"A", "B"})
    for (int k = 0; k < 3; ++k) p.atoms.emplace_back(n, iv(k));
  return p;
}

// ---------------------------------------------------------------------------
// Random delayed models, range-closed the same way.

inline ExprPtr random_delayed_condition(std::mt19937_64& rng, const Signature& sig, int xi,
                                        int depth) {
  std::vector<const Variable*> all;
  for (const auto& v : sig.exogenous()) all.push_back(&v);
  for (const auto& v : sig.endogenous()) all.push_back(&v);
  const Variable& v = *all[pick(rng, all.size())];
  int t = 1 + static_cast<int>(pick(rng, static_cast<std::size_t>(xi)));
  ExprPtr read = expr::lag(v.name, t);
  if (depth <= 0 || pick(rng, 2) == 0) {
    return expr::bin(BinOp::Eq, read, expr::constant(random_in_range(rng, v.range)));
  }
  switch (pick(rng, 3)) {
    case 0: return expr::negate(random_delayed_condition(rng, sig, xi, depth - 1));
    case 1:
      return expr::bin(BinOp::And, random_delayed_condition(rng, sig, xi, depth - 1),
                       random_delayed_condition(rng, sig, xi, depth - 1));
    default:
      return expr::bin(BinOp::Or, random_delayed_condition(rng, sig, xi, depth - 1),
                       random_delayed_condition(rng, sig, xi, depth - 1));
  }
}

inline ExprPtr random_delayed_value(std::mt19937_64& rng, const Signature& sig,
                                    const Variable& target, int xi, int depth) {
  if (depth <= 0 || pick(rng, 3) == 0) {
    std::vector<ExprPtr> leaves;
    leaves.push_back(expr::constant(random_in_range(rng, target.range)));
    auto add = [&](const Variable& v) {
      if (v.range == target.range)
        leaves.push_back(expr::lag(v.name, 1 + static_cast<int>(pick(rng, static_cast<std::size_t>(xi)))));
    };
    for (const auto& v : sig.endogenous()) add(v);
    for (const auto& v : sig.exogenous()) add(v);
    return leaves[pick(rng, leaves.size())];
  }
  return expr::ite(random_delayed_condition(rng, sig, xi, 2),
                   random_delayed_value(rng, sig, target, xi, depth - 1),
                   random_delayed_value(rng, sig, target, xi, depth - 1));
}

inline DelayedModel random_delayed_model(std::mt19937_64& rng, int xi) {
  std::vector<Variable> exo, endo;
  std::size_t n_exo = 1 + pick(rng, 2), n_endo = 2 + pick(rng, 3);
  for (std::size_t i = 0; i < n_exo; ++i)
    exo.push_back({"E" + std::to_string(i), VarKind::Exogenous, random_small_range(rng)});
  for (std::size_t i = 0; i < n_endo; ++i)
    endo.push_back({"V" + std::to_string(i), VarKind::Endogenous, random_small_range(rng)});
  Signature sig(exo, endo);
  std::map<std::string, ExprPtr, std::less<>> eqs;
  for (const auto& v : sig.endogenous()) eqs[v.name] = random_delayed_value(rng, sig, v, xi, 3);
  return DelayedModel(sig, std::move(eqs));
}

}  // namespace tsem::testhelp
