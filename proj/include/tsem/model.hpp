#pragma once

#include <map>
#include <memory>
#include <optional>
#include <string>
#include <string_view>
#include <utility>
#include <variant>
#include <vector>

#include "tsem/value.hpp"

namespace tsem {

bool is_identifier(std::string_view s);
// Operator keywords of the two concrete grammars; unusable as variable or symbol names.
bool is_reserved_name(std::string_view s);

enum class VarKind { Exogenous, Endogenous };

struct Variable {
  std::string name;
  VarKind kind;
  Range range;
};

// Declared variables of a model: disjoint exogenous/endogenous lists with
// globally unique names and at least one endogenous variable.
class Signature {
 public:
  Signature() = default;
  Signature(std::vector<Variable> exogenous, std::vector<Variable> endogenous);

  const std::vector<Variable>& exogenous() const { return exo_; }
  const std::vector<Variable>& endogenous() const { return endo_; }

  const Variable* find(std::string_view name) const;
  const Variable& require(std::string_view name) const;  // UnknownVariable
  bool is_endogenous(std::string_view name) const;
  bool is_exogenous(std::string_view name) const;

  std::vector<std::string> exogenous_names() const;
  std::vector<std::string> endogenous_names() const;

 private:
  std::vector<Variable> exo_, endo_;
};

// Total map from variable names to values, kept sorted by name so that
// equality, hashing and iteration order are deterministic.
class Assignment {
 public:
  Assignment() = default;
  explicit Assignment(std::vector<std::pair<std::string, Value>> entries);

  void set(const std::string& name, Value v);  // insert or overwrite
  bool has(std::string_view name) const;
  const Value& at(std::string_view name) const;  // UnknownVariable

  const std::vector<std::pair<std::string, Value>>& entries() const { return entries_; }
  std::size_t size() const { return entries_.size(); }
  std::vector<std::string> names() const;

  Assignment restricted(const std::vector<std::string>& keep) const;

  bool operator==(const Assignment& o) const { return entries_ == o.entries_; }
  bool operator!=(const Assignment& o) const { return !(*this == o); }
  std::size_t hash() const;

  std::string to_string() const;  // "(BS=1, BT=0, ST=0)", name-sorted

 private:
  std::vector<std::pair<std::string, Value>> entries_;  // sorted, unique names
};

// ---------------------------------------------------------------------------
// Equation expressions.
//
// Two value categories are distinguished statically: value expressions
// (constants, variable reads, arithmetic, if-then-else) and boolean
// expressions (comparisons, connectives). An equation's body must be a value
// expression; arithmetic and ordering apply only to int-interval operands.

struct Expr;
using ExprPtr = std::shared_ptr<const Expr>;

enum class BinOp { Eq, Neq, Lt, Leq, And, Or, Add, Sub, Mul, Mod };

struct ConstE { Value value; };
struct BoolE { bool value; };
struct VarE { std::string name; };
struct LagE { std::string name; int lag; };  // value of `name` exactly `lag` steps back, lag >= 1
struct NotE { ExprPtr arg; };
struct BinE { BinOp op; ExprPtr lhs, rhs; };
struct IteE { ExprPtr cond, then_e, else_e; };

struct Expr {
  std::variant<ConstE, BoolE, VarE, LagE, NotE, BinE, IteE> node;
};

namespace expr {
ExprPtr constant(Value v);
ExprPtr boolean(bool b);
ExprPtr var(std::string name);
ExprPtr lag(std::string name, int lag);
ExprPtr negate(ExprPtr e);
ExprPtr bin(BinOp op, ExprPtr lhs, ExprPtr rhs);
ExprPtr ite(ExprPtr cond, ExprPtr then_e, ExprPtr else_e);
}  // namespace expr

// In one-step equations identifiers resolve to declared variables, anything
// else is a symbol literal; lag references are rejected. In delayed equations
// every variable read must be lagged (`NAME[-t]`), bare reads of declared
// variables are rejected.
enum class EquationMode { OneStep, Delayed };

ExprPtr parse_equation(std::string_view text, const Signature& sig, EquationMode mode);

// TypeError on ill-typed bodies; also rejects results that cannot be values
// (boolean-rooted equations must use if-then-else).
void typecheck_equation(const Expr& e, const Signature& sig, const Variable& target);

std::string to_string(const Expr& e);  // reparses to a structurally equal expression
bool expr_equal(const Expr& a, const Expr& b);

std::vector<std::string> referenced_variables(const Expr& e);            // bare reads
std::vector<std::pair<std::string, int>> referenced_lags(const Expr& e);  // lagged reads

// Name -> value lookups during evaluation, plain and lagged.
class EvalEnv {
 public:
  virtual ~EvalEnv() = default;
  virtual Value ref(const std::string& name) const = 0;
  virtual Value lag(const std::string& name, int t) const = 0;
};

// Booleans evaluate to int 0/1 internally; type checking keeps them out of
// value positions. Throws DivisionByZero on `x mod 0`.
Value eval_expr(const Expr& e, const EvalEnv& env);

// ---------------------------------------------------------------------------

// A one-step model: every endogenous variable is updated simultaneously from
// the previous step's exogenous inputs and endogenous values. Immutable after
// construction; safe to share across threads.
class Model {
 public:
  Model() = default;
  Model(Signature sig, std::map<std::string, ExprPtr, std::less<>> equations);

  const Signature& signature() const { return sig_; }
  const ExprPtr& equation(std::string_view name) const;

  // One synchronous update. The result of each equation must lie in the
  // variable's range (OutOfRange otherwise, naming the variable).
  Assignment step(const Assignment& u_prev, const Assignment& v_prev) const;

 private:
  Signature sig_;
  std::map<std::string, ExprPtr, std::less<>> equations_;
};

// Unvalidated model description, as read from a document or built by hand.
struct VariableDecl {
  std::string name;
  Range range;
};

struct ModelDescription {
  bool delayed = false;
  std::vector<VariableDecl> exogenous;
  std::vector<VariableDecl> endogenous;
  std::vector<std::pair<std::string, std::string>> equations;  // endogenous name -> body text
  std::optional<int> xi;  // delayed only: declared maximal lag
};

// Checks names, ranges, equation coverage and types; parses equation bodies.
Model validate_model(const ModelDescription& d);

// Shared by validate_model and the delayed-model validator.
Signature validate_signature(const std::vector<VariableDecl>& exogenous,
                             const std::vector<VariableDecl>& endogenous);

// An assignment must cover exactly the given variable set, with every value
// in range (Validation / OutOfRangeValue).
void validate_covers_exogenous(const Assignment& a, const Signature& sig);
void validate_covers_endogenous(const Assignment& a, const Signature& sig);

}  // namespace tsem
