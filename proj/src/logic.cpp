#include "tsem/logic.hpp"

#include <algorithm>
#include <unordered_map>

#include "lexer.hpp"
#include "tsem/errors.hpp"

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

}  // namespace

namespace pltl {
PltlPtr atom(std::string var, Value value) {
  return std::make_shared<Pltl>(Pltl{PAtom{std::move(var), std::move(value)}});
}
PltlPtr constant(bool value) { return std::make_shared<Pltl>(Pltl{PBool{value}}); }
PltlPtr negate(PltlPtr f) { return std::make_shared<Pltl>(Pltl{PNot{std::move(f)}}); }
PltlPtr conj(PltlPtr a, PltlPtr b) {
  return std::make_shared<Pltl>(Pltl{PAnd{std::move(a), std::move(b)}});
}
PltlPtr disj(PltlPtr a, PltlPtr b) {
  return std::make_shared<Pltl>(Pltl{POr{std::move(a), std::move(b)}});
}
PltlPtr implies(PltlPtr a, PltlPtr b) {
  return std::make_shared<Pltl>(Pltl{PImplies{std::move(a), std::move(b)}});
}
PltlPtr next(PltlPtr f) { return std::make_shared<Pltl>(Pltl{PNext{std::move(f)}}); }
PltlPtr until(PltlPtr a, PltlPtr b) {
  return std::make_shared<Pltl>(Pltl{PUntil{std::move(a), std::move(b)}});
}
PltlPtr prev(PltlPtr f) { return std::make_shared<Pltl>(Pltl{PPrev{std::move(f)}}); }
PltlPtr since(PltlPtr a, PltlPtr b) {
  return std::make_shared<Pltl>(Pltl{PSince{std::move(a), std::move(b)}});
}
PltlPtr eventually(PltlPtr f) { return until(constant(true), std::move(f)); }
PltlPtr always(PltlPtr f) { return negate(until(constant(true), negate(std::move(f)))); }
PltlPtr once(PltlPtr f) { return since(constant(true), std::move(f)); }
PltlPtr historically(PltlPtr f) { return negate(since(constant(true), negate(std::move(f)))); }
}  // namespace pltl

bool pltl_equal(const Pltl& a, const Pltl& b) {
  if (a.node.index() != b.node.index()) return false;
  return std::visit(
      Overloaded{
          [&](const PAtom& x) {
            const auto& y = std::get<PAtom>(b.node);
            return x.var == y.var && x.value == y.value;
          },
          [&](const PBool& x) { return x.value == std::get<PBool>(b.node).value; },
          [&](const PNot& x) { return pltl_equal(*x.arg, *std::get<PNot>(b.node).arg); },
          [&](const PAnd& x) {
            const auto& y = std::get<PAnd>(b.node);
            return pltl_equal(*x.lhs, *y.lhs) && pltl_equal(*x.rhs, *y.rhs);
          },
          [&](const POr& x) {
            const auto& y = std::get<POr>(b.node);
            return pltl_equal(*x.lhs, *y.lhs) && pltl_equal(*x.rhs, *y.rhs);
          },
          [&](const PImplies& x) {
            const auto& y = std::get<PImplies>(b.node);
            return pltl_equal(*x.lhs, *y.lhs) && pltl_equal(*x.rhs, *y.rhs);
          },
          [&](const PNext& x) { return pltl_equal(*x.arg, *std::get<PNext>(b.node).arg); },
          [&](const PUntil& x) {
            const auto& y = std::get<PUntil>(b.node);
            return pltl_equal(*x.lhs, *y.lhs) && pltl_equal(*x.rhs, *y.rhs);
          },
          [&](const PPrev& x) { return pltl_equal(*x.arg, *std::get<PPrev>(b.node).arg); },
          [&](const PSince& x) {
            const auto& y = std::get<PSince>(b.node);
            return pltl_equal(*x.lhs, *y.lhs) && pltl_equal(*x.rhs, *y.rhs);
          },
      },
      a.node);
}

namespace {

// Printing precedence: atoms/constants 5, unary prefix 4, U/S 3, && 2, || 1, -> 0.
int pltl_prec(const Pltl& f) {
  return std::visit(Overloaded{
                        [](const PAtom&) { return 5; },
                        [](const PBool&) { return 5; },
                        [](const PNot&) { return 4; },
                        [](const PNext&) { return 4; },
                        [](const PPrev&) { return 4; },
                        [](const PUntil&) { return 3; },
                        [](const PSince&) { return 3; },
                        [](const PAnd&) { return 2; },
                        [](const POr&) { return 1; },
                        [](const PImplies&) { return 0; },
                    },
                    f.node);
}

void print_pltl(const Pltl& f, std::string& out) {
  auto child = [&](const Pltl& c, int min_prec) {
    if (pltl_prec(c) < min_prec) {
      out += "(";
      print_pltl(c, out);
      out += ")";
    } else {
      print_pltl(c, out);
    }
  };
  std::visit(Overloaded{
                 [&](const PAtom& a) { out += a.var + "=" + a.value.to_string(); },
                 [&](const PBool& b) { out += b.value ? "true" : "false"; },
                 [&](const PNot& n) {
                   out += "!";
                   child(*n.arg, 4);
                 },
                 [&](const PNext& n) {
                   out += "X ";
                   child(*n.arg, 4);
                 },
                 [&](const PPrev& n) {
                   out += "Y ";
                   child(*n.arg, 4);
                 },
                 [&](const PUntil& u) {
                   child(*u.lhs, 4);  // U is right-associative
                   out += " U ";
                   child(*u.rhs, 3);
                 },
                 [&](const PSince& s) {
                   child(*s.lhs, 4);
                   out += " S ";
                   child(*s.rhs, 3);
                 },
                 [&](const PAnd& a) {
                   child(*a.lhs, 2);
                   out += " && ";
                   child(*a.rhs, 3);
                 },
                 [&](const POr& o) {
                   child(*o.lhs, 1);
                   out += " || ";
                   child(*o.rhs, 2);
                 },
                 [&](const PImplies& i) {
                   child(*i.lhs, 1);  // -> is right-associative
                   out += " -> ";
                   child(*i.rhs, 0);
                 },
             },
             f.node);
}

}  // namespace

std::string to_string(const Pltl& f) {
  std::string out;
  print_pltl(f, out);
  return out;
}

std::size_t past_height(const Pltl& f) {
  return std::visit(
      Overloaded{
          [](const PAtom&) -> std::size_t { return 0; },
          [](const PBool&) -> std::size_t { return 0; },
          [](const PNot& n) { return past_height(*n.arg); },
          [](const PAnd& a) { return std::max(past_height(*a.lhs), past_height(*a.rhs)); },
          [](const POr& o) { return std::max(past_height(*o.lhs), past_height(*o.rhs)); },
          [](const PImplies& i) { return std::max(past_height(*i.lhs), past_height(*i.rhs)); },
          [](const PNext& n) { return past_height(*n.arg); },
          [](const PUntil& u) { return std::max(past_height(*u.lhs), past_height(*u.rhs)); },
          [](const PPrev& p) { return 1 + past_height(*p.arg); },
          [](const PSince& s) {
            return 1 + std::max(past_height(*s.lhs), past_height(*s.rhs));
          },
      },
      f.node);
}

namespace cpltl {
CpltlPtr intervened(Intervention intervention, PltlPtr body) {
  return std::make_shared<Cpltl>(Cpltl{CIntervened{std::move(intervention), std::move(body)}});
}
CpltlPtr negate(CpltlPtr f) { return std::make_shared<Cpltl>(Cpltl{CNot{std::move(f)}}); }
CpltlPtr conj(CpltlPtr a, CpltlPtr b) {
  return std::make_shared<Cpltl>(Cpltl{CAnd{std::move(a), std::move(b)}});
}
CpltlPtr disj(CpltlPtr a, CpltlPtr b) {
  return std::make_shared<Cpltl>(Cpltl{COr{std::move(a), std::move(b)}});
}
}  // namespace cpltl

bool cpltl_equal(const Cpltl& a, const Cpltl& b) {
  if (a.node.index() != b.node.index()) return false;
  return std::visit(
      Overloaded{
          [&](const CIntervened& x) {
            const auto& y = std::get<CIntervened>(b.node);
            if (!pltl_equal(*x.body, *y.body)) return false;
            const auto& xe = x.intervention.entries();
            const auto& ye = y.intervention.entries();
            if (xe.size() != ye.size()) return false;
            for (std::size_t i = 0; i < xe.size(); ++i)
              if (xe[i].name != ye[i].name || xe[i].time != ye[i].time ||
                  xe[i].value != ye[i].value)
                return false;
            return true;
          },
          [&](const CNot& x) { return cpltl_equal(*x.arg, *std::get<CNot>(b.node).arg); },
          [&](const CAnd& x) {
            const auto& y = std::get<CAnd>(b.node);
            return cpltl_equal(*x.lhs, *y.lhs) && cpltl_equal(*x.rhs, *y.rhs);
          },
          [&](const COr& x) {
            const auto& y = std::get<COr>(b.node);
            return cpltl_equal(*x.lhs, *y.lhs) && cpltl_equal(*x.rhs, *y.rhs);
          },
      },
      a.node);
}

std::string to_string(const Cpltl& f) {
  return std::visit(Overloaded{
                        [](const CIntervened& i) {
                          return i.intervention.to_string() + " (" + to_string(*i.body) + ")";
                        },
                        [](const CNot& n) { return "!(" + to_string(*n.arg) + ")"; },
                        [](const CAnd& a) {
                          return "(" + to_string(*a.lhs) + " && " + to_string(*a.rhs) + ")";
                        },
                        [](const COr& o) {
                          return "(" + to_string(*o.lhs) + " || " + to_string(*o.rhs) + ")";
                        },
                    },
                    f.node);
}

// ---------------------------------------------------------------------------
// Parser. Parses a unified tree first, then splits it into the intervention
// layer and pure temporal subtrees; that yields precise errors for
// interventions nested under temporal operators.

namespace {

struct Node;
using NodePtr = std::shared_ptr<Node>;

struct Node {
  enum Kind { Atom, BoolConst, Not, And, Or, Implies, Next, Until, Prev, Since, Intervened } kind;
  std::string var;  // Atom
  Value value;      // Atom
  bool bval = false;
  NodePtr a, b;
  Intervention intervention;  // Intervened
  std::size_t pos = 0;
  bool has_intervention = false;
};

NodePtr mk(Node::Kind kind, std::size_t pos, NodePtr a = nullptr, NodePtr b = nullptr) {
  auto n = std::make_shared<Node>();
  n->kind = kind;
  n->pos = pos;
  n->a = std::move(a);
  n->b = std::move(b);
  n->has_intervention =
      (n->a && n->a->has_intervention) || (n->b && n->b->has_intervention);
  return n;
}

Value parse_value_token(TokenCursor& cur) {
  if (cur.accept(Tok::Hash)) return Value::undef();
  if (cur.accept(Tok::Minus)) {
    detail::Token t = cur.expect(Tok::Int, "number");
    return Value::integer(-t.number);
  }
  if (cur.peek().kind == Tok::Int) return Value::integer(cur.next().number);
  if (cur.peek().kind == Tok::Ident) {
    detail::Token t = cur.next();
    return Value::symbol(t.text);
  }
  fail(ErrorKind::SyntaxError, "expected value at offset " + std::to_string(cur.peek().pos));
}

std::vector<Intervention::Entry> parse_entry_list(TokenCursor& cur, const Signature& sig) {
  std::vector<Intervention::Entry> entries;
  do {
    detail::Token id = cur.expect(Tok::Ident, "variable name");
    cur.expect(Tok::At, "'@'");
    detail::Token time = cur.expect(Tok::Int, "time index");
    cur.expect(Tok::Assign, "':='");
    Value v = parse_value_token(cur);
    const Variable* var = sig.find(id.text);
    if (!var)
      fail(ErrorKind::UnknownVariable,
           "unknown variable '" + id.text + "' at offset " + std::to_string(id.pos));
    if (var->kind != VarKind::Endogenous)
      fail(ErrorKind::ExogenousIntervention,
           "cannot intervene on exogenous variable '" + id.text + "' at offset " +
               std::to_string(id.pos));
    if (!var->range.contains(v))
      fail(ErrorKind::OutOfRangeValue, "value " + v.to_string() +
                                           " is outside the range of '" + id.text +
                                           "' at offset " + std::to_string(id.pos));
    entries.push_back({id.text, static_cast<std::size_t>(time.number), std::move(v)});
  } while (cur.accept(Tok::Comma));
  return entries;
}

class FormulaParser {
 public:
  FormulaParser(std::string_view text, const Signature& sig)
      : cur_(detail::lex(text)), sig_(sig) {}

  NodePtr parse() {
    NodePtr n = parse_implies();
    cur_.expect_end();
    return n;
  }

 private:
  NodePtr parse_implies() {
    NodePtr lhs = parse_or();
    if (cur_.accept(Tok::Arrow)) {
      std::size_t pos = cur_.peek().pos;
      return mk(Node::Implies, pos, lhs, parse_implies());
    }
    return lhs;
  }
  NodePtr parse_or() {
    NodePtr n = parse_and();
    while (cur_.peek().kind == Tok::OrOr) {
      std::size_t pos = cur_.next().pos;
      n = mk(Node::Or, pos, n, parse_and());
    }
    return n;
  }
  NodePtr parse_and() {
    NodePtr n = parse_until();
    while (cur_.peek().kind == Tok::AndAnd) {
      std::size_t pos = cur_.next().pos;
      n = mk(Node::And, pos, n, parse_until());
    }
    return n;
  }
  NodePtr parse_until() {
    NodePtr lhs = parse_prefix();
    if (cur_.at_keyword("U")) {
      std::size_t pos = cur_.next().pos;
      return mk(Node::Until, pos, lhs, parse_until());
    }
    if (cur_.at_keyword("S")) {
      std::size_t pos = cur_.next().pos;
      return mk(Node::Since, pos, lhs, parse_until());
    }
    return lhs;
  }
  NodePtr parse_prefix() {
    std::size_t pos = cur_.peek().pos;
    if (cur_.accept(Tok::Bang)) return mk(Node::Not, pos, parse_prefix());
    if (cur_.peek().kind == Tok::LBracket) {
      Intervention intv = parse_intervention();
      // The prefix binds everything up to the next boolean connective, so
      // [i] a U b reads as [i](a U b).
      NodePtr body = parse_until();
      NodePtr n = mk(Node::Intervened, pos, body);
      n->intervention = std::move(intv);
      n->has_intervention = true;
      return n;
    }
    if (cur_.peek().kind == Tok::Ident && cur_.peek(1).kind != Tok::Eq) {
      const std::string& t = cur_.peek().text;
      if (t == "X" || t == "Y") {
        Node::Kind k = (t == "X") ? Node::Next : Node::Prev;
        cur_.next();
        std::size_t reps = 1;
        if (cur_.accept(Tok::Caret)) {
          detail::Token count = cur_.expect(Tok::Int, "repetition count");
          reps = static_cast<std::size_t>(count.number);
          if (reps < 1)
            fail(ErrorKind::SyntaxError, "repetition count must be at least 1 at offset " +
                                             std::to_string(count.pos));
        }
        NodePtr n = parse_prefix();
        for (std::size_t i = 0; i < reps; ++i) n = mk(k, pos, n);
        return n;
      }
      if (t == "F" || t == "G" || t == "P" || t == "H") {
        char op = t[0];
        cur_.next();
        NodePtr arg = parse_prefix();
        // Desugar immediately: F a = true U a, G a = !(true U !a),
        // P a = true S a, H a = !(true S !a).
        NodePtr tt = mk(Node::BoolConst, pos);
        tt->bval = true;
        switch (op) {
          case 'F': return mk(Node::Until, pos, tt, arg);
          case 'G': return mk(Node::Not, pos, mk(Node::Until, pos, tt, mk(Node::Not, pos, arg)));
          case 'P': return mk(Node::Since, pos, tt, arg);
          default: return mk(Node::Not, pos, mk(Node::Since, pos, tt, mk(Node::Not, pos, arg)));
        }
      }
    }
    return parse_primary();
  }
  NodePtr parse_primary() {
    std::size_t pos = cur_.peek().pos;
    if (cur_.accept(Tok::LParen)) {
      NodePtr n = parse_implies();
      cur_.expect(Tok::RParen, "')'");
      return n;
    }
    if (cur_.accept_keyword("true")) {
      NodePtr n = mk(Node::BoolConst, pos);
      n->bval = true;
      return n;
    }
    if (cur_.accept_keyword("false")) {
      NodePtr n = mk(Node::BoolConst, pos);
      n->bval = false;
      return n;
    }
    if (cur_.peek().kind == Tok::Ident) {
      detail::Token id = cur_.next();
      cur_.expect(Tok::Eq, "'=' (atoms are written name=value)");
      Value v = parse_value();
      const Variable* var = sig_.find(id.text);
      if (!var)
        fail(ErrorKind::UnknownVariable,
             "unknown variable '" + id.text + "' at offset " + std::to_string(id.pos));
      if (var->kind != VarKind::Endogenous)
        fail(ErrorKind::ExogenousAtom, "atom over exogenous variable '" + id.text +
                                           "' at offset " + std::to_string(id.pos));
      if (!var->range.contains(v))
        fail(ErrorKind::OutOfRangeValue, "value " + v.to_string() +
                                             " is outside the range of '" + id.text +
                                             "' at offset " + std::to_string(id.pos));
      NodePtr n = mk(Node::Atom, pos);
      n->var = id.text;
      n->value = std::move(v);
      return n;
    }
    fail(ErrorKind::SyntaxError,
         "expected formula at offset " + std::to_string(cur_.peek().pos));
  }
  Value parse_value() { return parse_value_token(cur_); }
  Intervention parse_intervention() {
    cur_.expect(Tok::LBracket, "'['");
    if (cur_.accept(Tok::RBracket)) return Intervention::none();
    std::vector<Intervention::Entry> entries = parse_entry_list(cur_, sig_);
    cur_.expect(Tok::RBracket, "']'");
    return Intervention(std::move(entries));
  }

  TokenCursor cur_;
  const Signature& sig_;
};

PltlPtr lower_pltl(const Node& n) {
  switch (n.kind) {
    case Node::Atom: return pltl::atom(n.var, n.value);
    case Node::BoolConst: return pltl::constant(n.bval);
    case Node::Not: return pltl::negate(lower_pltl(*n.a));
    case Node::And: return pltl::conj(lower_pltl(*n.a), lower_pltl(*n.b));
    case Node::Or: return pltl::disj(lower_pltl(*n.a), lower_pltl(*n.b));
    case Node::Implies: return pltl::implies(lower_pltl(*n.a), lower_pltl(*n.b));
    case Node::Next: return pltl::next(lower_pltl(*n.a));
    case Node::Until: return pltl::until(lower_pltl(*n.a), lower_pltl(*n.b));
    case Node::Prev: return pltl::prev(lower_pltl(*n.a));
    case Node::Since: return pltl::since(lower_pltl(*n.a), lower_pltl(*n.b));
    case Node::Intervened:
      fail(ErrorKind::SyntaxError,
           "intervention at offset " + std::to_string(n.pos) +
               " cannot nest under a temporal operator or another intervention");
  }
  fail(ErrorKind::SyntaxError, "unreachable");
}

CpltlPtr lower_cpltl(const Node& n) {
  if (!n.has_intervention && n.kind != Node::Intervened)
    return cpltl::intervened(Intervention::none(), lower_pltl(n));
  switch (n.kind) {
    case Node::Intervened:
      return cpltl::intervened(n.intervention, lower_pltl(*n.a));
    case Node::Not:
      return cpltl::negate(lower_cpltl(*n.a));
    case Node::And:
      return cpltl::conj(lower_cpltl(*n.a), lower_cpltl(*n.b));
    case Node::Or:
      return cpltl::disj(lower_cpltl(*n.a), lower_cpltl(*n.b));
    case Node::Implies:
      // a -> b at the intervention layer becomes !a || b.
      return cpltl::disj(cpltl::negate(lower_cpltl(*n.a)), lower_cpltl(*n.b));
    default:
      fail(ErrorKind::SyntaxError,
           "intervention at offset " + std::to_string(n.pos) +
               " cannot nest under a temporal operator");
  }
}

}  // namespace

CpltlPtr parse_cpltl(std::string_view text, const Signature& sig) {
  FormulaParser p(text, sig);
  NodePtr root = p.parse();
  return lower_cpltl(*root);
}

Intervention parse_intervention_spec(std::string_view text, const Signature& sig) {
  TokenCursor cur(detail::lex(text));
  if (cur.peek().kind == Tok::End) return Intervention::none();
  std::vector<Intervention::Entry> entries = parse_entry_list(cur, sig);
  cur.expect_end();
  return Intervention(std::move(entries));
}

// ---------------------------------------------------------------------------
// Checking.

std::size_t reduce_position(std::size_t t, std::size_t x, std::size_t y, std::size_t h) {
  std::size_t bound = x + (h + 1) * y;
  if (t <= bound) return t;
  return (t - bound) % y + x + h * y;
}

namespace {

using Labels = std::vector<char>;

// Bottom-up labelling over positions [0, len). The caller guarantees that
// every subformula's truth value is y-periodic on the final y positions, so
// the successor of len-1 is len-y.
class PltlLabeller {
 public:
  PltlLabeller(const PeriodicSeq& seq, std::size_t len, std::size_t y)
      : seq_(seq), len_(len), y_(y) {}

  const Labels& label(const Pltl& f) {
    auto it = memo_.find(&f);
    if (it != memo_.end()) return it->second;
    Labels out(len_, 0);
    std::visit(
        Overloaded{
            [&](const PAtom& a) {
              for (std::size_t p = 0; p < len_; ++p)
                out[p] = seq_.at(p).at(a.var) == a.value;
            },
            [&](const PBool& b) {
              std::fill(out.begin(), out.end(), static_cast<char>(b.value));
            },
            [&](const PNot& n) {
              const Labels& s = label(*n.arg);
              for (std::size_t p = 0; p < len_; ++p) out[p] = !s[p];
            },
            [&](const PAnd& a) {
              const Labels& l = label(*a.lhs);
              const Labels& r = label(*a.rhs);
              for (std::size_t p = 0; p < len_; ++p) out[p] = l[p] && r[p];
            },
            [&](const POr& o) {
              const Labels& l = label(*o.lhs);
              const Labels& r = label(*o.rhs);
              for (std::size_t p = 0; p < len_; ++p) out[p] = l[p] || r[p];
            },
            [&](const PImplies& i) {
              const Labels& l = label(*i.lhs);
              const Labels& r = label(*i.rhs);
              for (std::size_t p = 0; p < len_; ++p) out[p] = !l[p] || r[p];
            },
            [&](const PPrev& n) {
              const Labels& s = label(*n.arg);
              out[0] = 0;  // no previous position at 0
              for (std::size_t p = 1; p < len_; ++p) out[p] = s[p - 1];
            },
            [&](const PSince& s) {
              const Labels& l = label(*s.lhs);
              const Labels& r = label(*s.rhs);
              out[0] = r[0];
              for (std::size_t p = 1; p < len_; ++p) out[p] = r[p] || (l[p] && out[p - 1]);
            },
            [&](const PNext& n) {
              const Labels& s = label(*n.arg);
              for (std::size_t p = 0; p + 1 < len_; ++p) out[p] = s[p + 1];
              out[len_ - 1] = s[len_ - y_];
            },
            [&](const PUntil& u) {
              const Labels& l = label(*u.lhs);
              const Labels& r = label(*u.rhs);
              // Least fixpoint on the final y-block seen as a cycle: pick a
              // position where the right argument holds and walk backwards;
              // without such a position the block is all false.
              std::size_t base = len_ - y_;
              std::size_t anchor = len_;
              for (std::size_t p = base; p < len_; ++p)
                if (r[p]) anchor = p;
              if (anchor != len_) {
                out[anchor] = 1;
                for (std::size_t k = 1; k < y_; ++k) {
                  std::size_t p = base + (anchor - base + y_ - k) % y_;
                  std::size_t succ = base + (anchor - base + y_ - k + 1) % y_;
                  out[p] = r[p] || (l[p] && out[succ]);
                }
              }
              // Stem positions resolve directly against their successor.
              for (std::size_t p = base; p-- > 0;)
                out[p] = r[p] || (l[p] && out[p + 1]);
            },
        },
        f.node);
    return memo_.emplace(&f, std::move(out)).first->second;
  }

 private:
  const PeriodicSeq& seq_;
  std::size_t len_, y_;
  std::unordered_map<const Pltl*, Labels> memo_;
};

}  // namespace

bool check_pltl(const PeriodicSeq& seq, std::size_t t, const Pltl& f) {
  const std::size_t x = seq.prefix_len();
  const std::size_t y = seq.loop_len();
  const std::size_t h = past_height(f);
  const std::size_t len = x + (h + 1) * y;

  std::size_t q = reduce_position(t, x, y, h);
  if (q == len) q = len - y;  // verdicts at len and len-y coincide

  PltlLabeller labeller(seq, len, y);
  return labeller.label(f)[q] != 0;
}

bool check_pltl_naive(const FiniteTrace& trace, std::size_t t, const Pltl& f,
                      std::size_t loop_back) {
  const std::size_t n = trace.states.size();
  if (n == 0 || loop_back >= n)
    fail(ErrorKind::Validation, "lasso needs loop_back inside the trace");
  if (t >= n) fail(ErrorKind::Validation, "position outside the trace");
  auto succ = [&](std::size_t p) { return p + 1 < n ? p + 1 : loop_back; };

  // Deliberately slow reference semantics: since by its defining double scan,
  // until by fixpoint iteration from below.
  std::unordered_map<const Pltl*, Labels> memo;
  auto eval = [&](auto&& self, const Pltl& g) -> const Labels& {
    auto it = memo.find(&g);
    if (it != memo.end()) return it->second;
    Labels out(n, 0);
    std::visit(
        Overloaded{
            [&](const PAtom& a) {
              for (std::size_t p = 0; p < n; ++p)
                out[p] = trace.states[p].at(a.var) == a.value;
            },
            [&](const PBool& b) { std::fill(out.begin(), out.end(), static_cast<char>(b.value)); },
            [&](const PNot& nn) {
              const Labels& s = self(self, *nn.arg);
              for (std::size_t p = 0; p < n; ++p) out[p] = !s[p];
            },
            [&](const PAnd& a) {
              const Labels& l = self(self, *a.lhs);
              const Labels& r = self(self, *a.rhs);
              for (std::size_t p = 0; p < n; ++p) out[p] = l[p] && r[p];
            },
            [&](const POr& o) {
              const Labels& l = self(self, *o.lhs);
              const Labels& r = self(self, *o.rhs);
              for (std::size_t p = 0; p < n; ++p) out[p] = l[p] || r[p];
            },
            [&](const PImplies& i) {
              const Labels& l = self(self, *i.lhs);
              const Labels& r = self(self, *i.rhs);
              for (std::size_t p = 0; p < n; ++p) out[p] = !l[p] || r[p];
            },
            [&](const PNext& nn) {
              const Labels& s = self(self, *nn.arg);
              for (std::size_t p = 0; p < n; ++p) out[p] = s[succ(p)];
            },
            [&](const PPrev& nn) {
              const Labels& s = self(self, *nn.arg);
              out[0] = 0;
              for (std::size_t p = 1; p < n; ++p) out[p] = s[p - 1];
            },
            [&](const PSince& s) {
              const Labels& l = self(self, *s.lhs);
              const Labels& r = self(self, *s.rhs);
              for (std::size_t p = 0; p < n; ++p) {
                for (std::size_t k = 0; k <= p; ++k) {
                  if (!r[k]) continue;
                  bool all = true;
                  for (std::size_t j = k + 1; j <= p; ++j)
                    if (!l[j]) { all = false; break; }
                  if (all) { out[p] = 1; break; }
                }
              }
            },
            [&](const PUntil& u) {
              const Labels& l = self(self, *u.lhs);
              const Labels& r = self(self, *u.rhs);
              bool changed = true;
              while (changed) {
                changed = false;
                for (std::size_t p = 0; p < n; ++p) {
                  char v = r[p] || (l[p] && out[succ(p)]);
                  if (v != out[p]) {
                    out[p] = v;
                    changed = true;
                  }
                }
              }
            },
        },
        g.node);
    return memo.emplace(&g, std::move(out)).first->second;
  };
  return eval(eval, f)[t] != 0;
}

bool check_cpltl(const Scenario& sc, std::size_t t, const Cpltl& f) {
  return std::visit(
      Overloaded{
          [&](const CIntervened& i) {
            Computation c = periodic_computation(sc, i.intervention);
            return check_pltl(c.seq, t, *i.body);
          },
          [&](const CNot& n) { return !check_cpltl(sc, t, *n.arg); },
          [&](const CAnd& a) { return check_cpltl(sc, t, *a.lhs) && check_cpltl(sc, t, *a.rhs); },
          [&](const COr& o) { return check_cpltl(sc, t, *o.lhs) || check_cpltl(sc, t, *o.rhs); },
      },
      f.node);
}

}  // namespace tsem
