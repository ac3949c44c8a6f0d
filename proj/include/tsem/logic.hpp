#pragma once

#include <memory>
#include <string>
#include <variant>
#include <vector>

#include "tsem/engine.hpp"

namespace tsem {

// Past-capable linear temporal logic over endogenous atoms (X=x). Stored in
// the core operator set: eventually/always/once/historically are desugared
// into until/since at construction and never appear as nodes.
struct Pltl;
using PltlPtr = std::shared_ptr<const Pltl>;

struct PAtom { std::string var; Value value; };
struct PBool { bool value; };
struct PNot { PltlPtr arg; };
struct PAnd { PltlPtr lhs, rhs; };
struct POr { PltlPtr lhs, rhs; };
struct PImplies { PltlPtr lhs, rhs; };
struct PNext { PltlPtr arg; };
struct PUntil { PltlPtr lhs, rhs; };
struct PPrev { PltlPtr arg; };  // false at position 0
struct PSince { PltlPtr lhs, rhs; };

struct Pltl {
  std::variant<PAtom, PBool, PNot, PAnd, POr, PImplies, PNext, PUntil, PPrev, PSince> node;
};

namespace pltl {
PltlPtr atom(std::string var, Value value);
PltlPtr constant(bool value);
PltlPtr negate(PltlPtr f);
PltlPtr conj(PltlPtr a, PltlPtr b);
PltlPtr disj(PltlPtr a, PltlPtr b);
PltlPtr implies(PltlPtr a, PltlPtr b);
PltlPtr next(PltlPtr f);
PltlPtr until(PltlPtr a, PltlPtr b);
PltlPtr prev(PltlPtr f);
PltlPtr since(PltlPtr a, PltlPtr b);
// Sugar, desugared on the spot:
PltlPtr eventually(PltlPtr f);    // true U f
PltlPtr always(PltlPtr f);        // !(true U !f)
PltlPtr once(PltlPtr f);          // true S f
PltlPtr historically(PltlPtr f);  // !(true S !f)
}  // namespace pltl

bool pltl_equal(const Pltl& a, const Pltl& b);
std::string to_string(const Pltl& f);

// Maximal nesting depth of past operators (previous/since).
std::size_t past_height(const Pltl& f);

// Boolean combinations of intervened temporal formulas. Interventions cannot
// nest and cannot sit under temporal operators; a formula without an
// intervention prefix gets the empty intervention.
struct Cpltl;
using CpltlPtr = std::shared_ptr<const Cpltl>;

struct CIntervened { Intervention intervention; PltlPtr body; };
struct CNot { CpltlPtr arg; };
struct CAnd { CpltlPtr lhs, rhs; };
struct COr { CpltlPtr lhs, rhs; };

struct Cpltl {
  std::variant<CIntervened, CNot, CAnd, COr> node;
};

namespace cpltl {
CpltlPtr intervened(Intervention intervention, PltlPtr body);
CpltlPtr negate(CpltlPtr f);
CpltlPtr conj(CpltlPtr a, CpltlPtr b);
CpltlPtr disj(CpltlPtr a, CpltlPtr b);
}  // namespace cpltl

bool cpltl_equal(const Cpltl& a, const Cpltl& b);
std::string to_string(const Cpltl& f);

// Concrete grammar: atoms `name=value`; `!`, unary temporal X Y F G P H
// (with X^n / Y^n repetition sugar), right-associative U and S, then `&&`,
// `||`, `->`; intervention prefixes `[v@t:=val, ...]` bind up to U/S level.
// Atoms must name endogenous variables with in-range values.
CpltlPtr parse_cpltl(std::string_view text, const Signature& sig);

// Bare intervention list `name@t:=value[, ...]` (no brackets); empty text is
// the empty intervention. Validates names, kinds, and value ranges.
Intervention parse_intervention_spec(std::string_view text, const Signature& sig);

// `t` unchanged while t <= x + (h+1)*y; later positions fold back into the
// window [x + h*y, x + (h+1)*y) with the same verdict.
std::size_t reduce_position(std::size_t t, std::size_t x, std::size_t y, std::size_t h);

// Labels every subformula over x + (h+1)*y positions: past operators by a
// forward scan, future operators backward with the last y positions treated
// as a cycle. Runs in O((x + (h+1)*y) * |f|).
bool check_pltl(const PeriodicSeq& seq, std::size_t t, const Pltl& f);

// Reference semantics on an explicit lasso whose last state loops back to
// `loop_back`; until is solved by fixpoint iteration, since by definition.
// Exact for every position when loop_back >= x + past_height*y.
bool check_pltl_naive(const FiniteTrace& trace, std::size_t t, const Pltl& f,
                      std::size_t loop_back);

// Each intervened subformula is checked on its own intervened computation.
bool check_cpltl(const Scenario& sc, std::size_t t, const Cpltl& f);

}  // namespace tsem
