#include <algorithm>
#include <set>

#include "lexer.hpp"
#include "tsem/model.hpp"

namespace tsem {

namespace {

template <class... Ts>
struct Overloaded : Ts... {
  using Ts::operator()...;
};
template <class... Ts>
Overloaded(Ts...) -> Overloaded<Ts...>;

using detail::Tok;
using detail::TokenCursor;

// Equation keywords. The temporal-operator letters are reserved as names by
// validate_signature, not here; they never reach equation bodies.
bool is_equation_keyword(std::string_view s) {
  return s == "if" || s == "then" || s == "else" || s == "mod" || s == "true" || s == "false";
}

class EquationParser {
 public:
  EquationParser(std::string_view text, const Signature& sig, EquationMode mode)
      : cur_(detail::lex(text)), sig_(sig), mode_(mode) {}

  ExprPtr parse() {
    ExprPtr e = parse_or();
    cur_.expect_end();
    return e;
  }

 private:
  ExprPtr parse_or() {
    ExprPtr e = parse_and();
    while (cur_.accept(Tok::OrOr)) e = expr::bin(BinOp::Or, e, parse_and());
    return e;
  }
  ExprPtr parse_and() {
    ExprPtr e = parse_cmp();
    while (cur_.accept(Tok::AndAnd)) e = expr::bin(BinOp::And, e, parse_cmp());
    return e;
  }
  // Comparisons do not associate: a = b = c is a syntax error.
  ExprPtr parse_cmp() {
    ExprPtr e = parse_add();
    if (cur_.accept(Tok::Eq)) return expr::bin(BinOp::Eq, e, parse_add());
    if (cur_.accept(Tok::Neq)) return expr::bin(BinOp::Neq, e, parse_add());
    if (cur_.accept(Tok::Lt)) return expr::bin(BinOp::Lt, e, parse_add());
    if (cur_.accept(Tok::Leq)) return expr::bin(BinOp::Leq, e, parse_add());
    return e;
  }
  ExprPtr parse_add() {
    ExprPtr e = parse_mul();
    for (;;) {
      if (cur_.accept(Tok::Plus)) e = expr::bin(BinOp::Add, e, parse_mul());
      else if (cur_.accept(Tok::Minus)) e = expr::bin(BinOp::Sub, e, parse_mul());
      else return e;
    }
  }
  ExprPtr parse_mul() {
    ExprPtr e = parse_unary();
    for (;;) {
      if (cur_.accept(Tok::Star)) e = expr::bin(BinOp::Mul, e, parse_unary());
      else if (cur_.accept_keyword("mod")) e = expr::bin(BinOp::Mod, e, parse_unary());
      else return e;
    }
  }
  ExprPtr parse_unary() {
    if (cur_.accept(Tok::Bang)) return expr::negate(parse_unary());
    if (cur_.peek().kind == Tok::Minus) {
      std::size_t pos = cur_.peek().pos;
      cur_.next();
      ExprPtr operand = parse_unary();
      // Fold literal negation so printing round-trips; otherwise 0 - e.
      if (const auto* c = std::get_if<ConstE>(&operand->node); c && c->value.is_int())
        return expr::constant(Value::integer(-c->value.as_int()));
      (void)pos;
      return expr::bin(BinOp::Sub, expr::constant(Value::integer(0)), operand);
    }
    return parse_primary();
  }
  ExprPtr parse_primary() {
    if (cur_.accept(Tok::LParen)) {
      ExprPtr e = parse_or();
      cur_.expect(Tok::RParen, "')'");
      return e;
    }
    if (cur_.accept_keyword("if")) {
      ExprPtr c = parse_or();
      if (!cur_.accept_keyword("then"))
        fail(ErrorKind::SyntaxError, "expected 'then' at offset " + std::to_string(cur_.peek().pos));
      ExprPtr t = parse_or();
      if (!cur_.accept_keyword("else"))
        fail(ErrorKind::SyntaxError, "expected 'else' at offset " + std::to_string(cur_.peek().pos));
      ExprPtr e = parse_or();
      return expr::ite(c, t, e);
    }
    if (cur_.accept_keyword("true")) return expr::boolean(true);
    if (cur_.accept_keyword("false")) return expr::boolean(false);
    if (cur_.accept(Tok::Hash)) return expr::constant(Value::undef());
    if (cur_.peek().kind == Tok::Int) return expr::constant(Value::integer(cur_.next().number));
    if (cur_.peek().kind == Tok::Ident) {
      detail::Token id = cur_.next();
      if (is_equation_keyword(id.text))
        fail(ErrorKind::SyntaxError, "misplaced keyword '" + id.text + "' at offset " + std::to_string(id.pos));
      if (cur_.peek().kind == Tok::LBracket) return parse_lag_ref(id);
      if (sig_.find(id.text) != nullptr) {
        if (mode_ == EquationMode::Delayed)
          fail(ErrorKind::SyntaxError,
               "bare reference to variable '" + id.text + "' at offset " + std::to_string(id.pos) +
                   "; delayed equations must use '" + id.text + "[-t]'");
        return expr::var(id.text);
      }
      return expr::constant(Value::symbol(id.text));
    }
    fail(ErrorKind::SyntaxError, "expected expression at offset " + std::to_string(cur_.peek().pos));
  }
  ExprPtr parse_lag_ref(const detail::Token& id) {
    cur_.expect(Tok::LBracket, "'['");
    cur_.expect(Tok::Minus, "'-' (lags are written NAME[-t])");
    detail::Token t = cur_.expect(Tok::Int, "lag amount");
    cur_.expect(Tok::RBracket, "']'");
    if (mode_ != EquationMode::Delayed)
      fail(ErrorKind::SyntaxError, "lagged reference '" + id.text + "[-" + t.text +
                                       "]' is only valid in delayed models (offset " + std::to_string(id.pos) + ")");
    if (sig_.find(id.text) == nullptr)
      fail(ErrorKind::UnknownVariable, "unknown variable '" + id.text + "' at offset " + std::to_string(id.pos));
    if (t.number < 1)
      fail(ErrorKind::SyntaxError, "lag must be at least 1 at offset " + std::to_string(t.pos));
    return expr::lag(id.text, static_cast<int>(t.number));
  }

  TokenCursor cur_;
  const Signature& sig_;
  EquationMode mode_;
};

// Static expression types. Int covers int-interval reads, int literals and
// arithmetic; Val covers enumerated-range reads, symbol literals and `#`.
enum class ExprType { Bool, Int, Val };

bool is_valueish(ExprType t) { return t != ExprType::Bool; }

ExprType check(const Expr& e, const Signature& sig) {
  return std::visit(
      Overloaded{
          [](const ConstE& c) { return c.value.is_int() ? ExprType::Int : ExprType::Val; },
          [](const BoolE&) { return ExprType::Bool; },
          [&](const VarE& v) {
            const Variable& var = sig.require(v.name);
            return var.range.is_int_interval() ? ExprType::Int : ExprType::Val;
          },
          [&](const LagE& l) {
            const Variable& var = sig.require(l.name);
            return var.range.is_int_interval() ? ExprType::Int : ExprType::Val;
          },
          [&](const NotE& n) {
            if (check(*n.arg, sig) != ExprType::Bool)
              fail(ErrorKind::TypeError, "'!' needs a boolean operand");
            return ExprType::Bool;
          },
          [&](const BinE& b) {
            ExprType l = check(*b.lhs, sig);
            ExprType r = check(*b.rhs, sig);
            switch (b.op) {
              case BinOp::Eq:
              case BinOp::Neq:
                if (!is_valueish(l) || !is_valueish(r))
                  fail(ErrorKind::TypeError, "'='/'!=' compare values, not conditions");
                return ExprType::Bool;
              case BinOp::Lt:
              case BinOp::Leq:
                if (l != ExprType::Int || r != ExprType::Int)
                  fail(ErrorKind::TypeError, "ordering needs int-ranged operands");
                return ExprType::Bool;
              case BinOp::And:
              case BinOp::Or:
                if (l != ExprType::Bool || r != ExprType::Bool)
                  fail(ErrorKind::TypeError, "'&&'/'||' need boolean operands");
                return ExprType::Bool;
              case BinOp::Add:
              case BinOp::Sub:
              case BinOp::Mul:
              case BinOp::Mod:
                if (l != ExprType::Int || r != ExprType::Int)
                  fail(ErrorKind::TypeError, "arithmetic needs int-ranged operands");
                return ExprType::Int;
            }
            fail(ErrorKind::TypeError, "unreachable");
          },
          [&](const IteE& i) {
            if (check(*i.cond, sig) != ExprType::Bool)
              fail(ErrorKind::TypeError, "if-condition must be boolean");
            ExprType t = check(*i.then_e, sig);
            ExprType f = check(*i.else_e, sig);
            if (!is_valueish(t) || !is_valueish(f))
              fail(ErrorKind::TypeError, "if-branches must be value expressions");
            return (t == ExprType::Int && f == ExprType::Int) ? ExprType::Int : ExprType::Val;
          },
      },
      e.node);
}

int precedence(const Expr& e) {
  // Mirrors the parser levels; used to print minimal-but-safe parentheses.
  return std::visit(Overloaded{
                        [](const ConstE&) { return 7; },
                        [](const BoolE&) { return 7; },
                        [](const VarE&) { return 7; },
                        [](const LagE&) { return 7; },
                        [](const NotE&) { return 6; },
                        [](const IteE&) { return 0; },
                        [](const BinE& b) {
                          switch (b.op) {
                            case BinOp::Mul:
                            case BinOp::Mod: return 5;
                            case BinOp::Add:
                            case BinOp::Sub: return 4;
                            case BinOp::Eq:
                            case BinOp::Neq:
                            case BinOp::Lt:
                            case BinOp::Leq: return 3;
                            case BinOp::And: return 2;
                            case BinOp::Or: return 1;
                          }
                          return 0;
                        },
                    },
                    e.node);
}

const char* op_text(BinOp op) {
  switch (op) {
    case BinOp::Eq: return "=";
    case BinOp::Neq: return "!=";
    case BinOp::Lt: return "<";
    case BinOp::Leq: return "<=";
    case BinOp::And: return "&&";
    case BinOp::Or: return "||";
    case BinOp::Add: return "+";
    case BinOp::Sub: return "-";
    case BinOp::Mul: return "*";
    case BinOp::Mod: return "mod";
  }
  return "?";
}

void print(const Expr& e, std::string& out) {
  auto child = [&](const Expr& c, int min_prec) {
    if (precedence(c) < min_prec) {
      out += "(";
      print(c, out);
      out += ")";
    } else {
      print(c, out);
    }
  };
  std::visit(Overloaded{
                 [&](const ConstE& c) { out += c.value.to_string(); },
                 [&](const BoolE& b) { out += b.value ? "true" : "false"; },
                 [&](const VarE& v) { out += v.name; },
                 [&](const LagE& l) { out += l.name + "[-" + std::to_string(l.lag) + "]"; },
                 [&](const NotE& n) {
                   out += "!";
                   child(*n.arg, 7);
                 },
                 [&](const BinE& b) {
                   int p = precedence(e);
                   // Left-associative chains reuse the level on the left,
                   // require strictly higher on the right.
                   child(*b.lhs, p);
                   out += " ";
                   out += op_text(b.op);
                   out += " ";
                   child(*b.rhs, p + 1);
                 },
                 [&](const IteE& i) {
                   out += "if ";
                   child(*i.cond, 1);
                   out += " then ";
                   child(*i.then_e, 1);
                   out += " else ";
                   child(*i.else_e, 1);
                 },
             },
             e.node);
}

void collect_refs(const Expr& e, std::set<std::string>& vars,
                  std::set<std::pair<std::string, int>>& lags) {
  std::visit(Overloaded{
                 [](const ConstE&) {},
                 [](const BoolE&) {},
                 [&](const VarE& v) { vars.insert(v.name); },
                 [&](const LagE& l) { lags.insert({l.name, l.lag}); },
                 [&](const NotE& n) { collect_refs(*n.arg, vars, lags); },
                 [&](const BinE& b) {
                   collect_refs(*b.lhs, vars, lags);
                   collect_refs(*b.rhs, vars, lags);
                 },
                 [&](const IteE& i) {
                   collect_refs(*i.cond, vars, lags);
                   collect_refs(*i.then_e, vars, lags);
                   collect_refs(*i.else_e, vars, lags);
                 },
             },
             e.node);
}

bool truthy(const Value& v) { return v.as_int() != 0; }

}  // namespace

namespace expr {
ExprPtr constant(Value v) { return std::make_shared<Expr>(Expr{ConstE{std::move(v)}}); }
ExprPtr boolean(bool b) { return std::make_shared<Expr>(Expr{BoolE{b}}); }
ExprPtr var(std::string name) { return std::make_shared<Expr>(Expr{VarE{std::move(name)}}); }
ExprPtr lag(std::string name, int lag) { return std::make_shared<Expr>(Expr{LagE{std::move(name), lag}}); }
ExprPtr negate(ExprPtr e) { return std::make_shared<Expr>(Expr{NotE{std::move(e)}}); }
ExprPtr bin(BinOp op, ExprPtr lhs, ExprPtr rhs) {
  return std::make_shared<Expr>(Expr{BinE{op, std::move(lhs), std::move(rhs)}});
}
ExprPtr ite(ExprPtr cond, ExprPtr then_e, ExprPtr else_e) {
  return std::make_shared<Expr>(Expr{IteE{std::move(cond), std::move(then_e), std::move(else_e)}});
}
}  // namespace expr

ExprPtr parse_equation(std::string_view text, const Signature& sig, EquationMode mode) {
  return EquationParser(text, sig, mode).parse();
}

void typecheck_equation(const Expr& e, const Signature& sig, const Variable& target) {
  ExprType t = check(e, sig);
  if (t == ExprType::Bool)
    fail(ErrorKind::TypeError,
         "equation for '" + target.name + "' is a condition, not a value; wrap it in if-then-else");
}

std::string to_string(const Expr& e) {
  std::string out;
  print(e, out);
  return out;
}

bool expr_equal(const Expr& a, const Expr& b) {
  if (a.node.index() != b.node.index()) return false;
  return std::visit(
      Overloaded{
          [&](const ConstE& x) { return x.value == std::get<ConstE>(b.node).value; },
          [&](const BoolE& x) { return x.value == std::get<BoolE>(b.node).value; },
          [&](const VarE& x) { return x.name == std::get<VarE>(b.node).name; },
          [&](const LagE& x) {
            const auto& y = std::get<LagE>(b.node);
            return x.name == y.name && x.lag == y.lag;
          },
          [&](const NotE& x) { return expr_equal(*x.arg, *std::get<NotE>(b.node).arg); },
          [&](const BinE& x) {
            const auto& y = std::get<BinE>(b.node);
            return x.op == y.op && expr_equal(*x.lhs, *y.lhs) && expr_equal(*x.rhs, *y.rhs);
          },
          [&](const IteE& x) {
            const auto& y = std::get<IteE>(b.node);
            return expr_equal(*x.cond, *y.cond) && expr_equal(*x.then_e, *y.then_e) &&
                   expr_equal(*x.else_e, *y.else_e);
          },
      },
      a.node);
}

std::vector<std::string> referenced_variables(const Expr& e) {
  std::set<std::string> vars;
  std::set<std::pair<std::string, int>> lags;
  collect_refs(e, vars, lags);
  return {vars.begin(), vars.end()};
}

std::vector<std::pair<std::string, int>> referenced_lags(const Expr& e) {
  std::set<std::string> vars;
  std::set<std::pair<std::string, int>> lags;
  collect_refs(e, vars, lags);
  return {lags.begin(), lags.end()};
}

Value eval_expr(const Expr& e, const EvalEnv& env) {
  return std::visit(
      Overloaded{
          [](const ConstE& c) { return c.value; },
          [](const BoolE& b) { return Value::integer(b.value ? 1 : 0); },
          [&](const VarE& v) { return env.ref(v.name); },
          [&](const LagE& l) { return env.lag(l.name, l.lag); },
          [&](const NotE& n) {
            return Value::integer(truthy(eval_expr(*n.arg, env)) ? 0 : 1);
          },
          [&](const BinE& b) {
            // Connectives short-circuit so guarded arithmetic stays safe.
            if (b.op == BinOp::And)
              return Value::integer(truthy(eval_expr(*b.lhs, env)) && truthy(eval_expr(*b.rhs, env)) ? 1 : 0);
            if (b.op == BinOp::Or)
              return Value::integer(truthy(eval_expr(*b.lhs, env)) || truthy(eval_expr(*b.rhs, env)) ? 1 : 0);
            Value l = eval_expr(*b.lhs, env);
            Value r = eval_expr(*b.rhs, env);
            switch (b.op) {
              case BinOp::Eq: return Value::integer(l == r ? 1 : 0);
              case BinOp::Neq: return Value::integer(l != r ? 1 : 0);
              case BinOp::Lt: return Value::integer(l.as_int() < r.as_int() ? 1 : 0);
              case BinOp::Leq: return Value::integer(l.as_int() <= r.as_int() ? 1 : 0);
              case BinOp::Add: return Value::integer(l.as_int() + r.as_int());
              case BinOp::Sub: return Value::integer(l.as_int() - r.as_int());
              case BinOp::Mul: return Value::integer(l.as_int() * r.as_int());
              case BinOp::Mod: {
                if (r.as_int() == 0) fail(ErrorKind::DivisionByZero, "mod by zero");
                std::int64_t m = l.as_int() % r.as_int();
                if (m < 0) m += (r.as_int() < 0 ? -r.as_int() : r.as_int());
                return Value::integer(m);  // result follows the divisor's magnitude, always >= 0
              }
              default: fail(ErrorKind::TypeError, "unreachable");
            }
          },
          [&](const IteE& i) {
            return truthy(eval_expr(*i.cond, env)) ? eval_expr(*i.then_e, env)
                                                   : eval_expr(*i.else_e, env);
          },
      },
      e.node);
}

}  // namespace tsem
