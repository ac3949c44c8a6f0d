#pragma once

// Shared hand lexer for the equation and formula grammars. Keyword-ness is
// decided by the parsers; here identifiers stay identifiers.

#include <cstdint>
#include <string>
#include <string_view>
#include <vector>

#include "tsem/errors.hpp"

namespace tsem::detail {

enum class Tok {
  Ident,
  Int,
  LParen,
  RParen,
  LBracket,
  RBracket,
  Eq,       // =
  Neq,      // !=
  Lt,       // <
  Leq,      // <=
  Plus,
  Minus,
  Star,
  AndAnd,   // &&
  OrOr,     // ||
  Bang,     // !
  Arrow,    // ->
  At,       // @
  Assign,   // :=
  Comma,
  Caret,    // ^
  Hash,     // #
  End,
};

struct Token {
  Tok kind;
  std::string text;       // identifier spelling
  std::int64_t number=0;  // for Tok::Int
  std::size_t pos=0;      // byte offset, for error messages
};

inline std::vector<Token> lex(std::string_view src) {
  std::vector<Token> out;
  std::size_t i = 0;
  auto is_ident_start = [](char c) { return (c >= 'a' && c <= 'z') || (c >= 'A' && c <= 'Z') || c == '_'; };
  auto is_ident_char = [&](char c) { return is_ident_start(c) || (c >= '0' && c <= '9'); };
  while (i < src.size()) {
    char c = src[i];
    if (c == ' ' || c == '\t' || c == '\n' || c == '\r') { ++i; continue; }
    std::size_t start = i;
    auto push = [&](Tok k, std::size_t len) {
      out.push_back({k, std::string(src.substr(start, len)), 0, start});
      i += len;
    };
    if (is_ident_start(c)) {
      std::size_t j = i;
      while (j < src.size() && is_ident_char(src[j])) ++j;
      out.push_back({Tok::Ident, std::string(src.substr(i, j - i)), 0, start});
      i = j;
      continue;
    }
    if (c >= '0' && c <= '9') {
      std::size_t j = i;
      std::int64_t v = 0;
      while (j < src.size() && src[j] >= '0' && src[j] <= '9') {
        v = v * 10 + (src[j] - '0');
        ++j;
      }
      if (j < src.size() && is_ident_start(src[j]))
        fail(ErrorKind::SyntaxError, "malformed number at offset " + std::to_string(start));
      out.push_back({Tok::Int, std::string(src.substr(i, j - i)), v, start});
      i = j;
      continue;
    }
    switch (c) {
      case '(': push(Tok::LParen, 1); break;
      case ')': push(Tok::RParen, 1); break;
      case '[': push(Tok::LBracket, 1); break;
      case ']': push(Tok::RBracket, 1); break;
      case '=': push(Tok::Eq, 1); break;
      case '+': push(Tok::Plus, 1); break;
      case '*': push(Tok::Star, 1); break;
      case '@': push(Tok::At, 1); break;
      case ',': push(Tok::Comma, 1); break;
      case '^': push(Tok::Caret, 1); break;
      case '#': push(Tok::Hash, 1); break;
      case '<':
        if (i + 1 < src.size() && src[i + 1] == '=') push(Tok::Leq, 2);
        else push(Tok::Lt, 1);
        break;
      case '!':
        if (i + 1 < src.size() && src[i + 1] == '=') push(Tok::Neq, 2);
        else push(Tok::Bang, 1);
        break;
      case '-':
        if (i + 1 < src.size() && src[i + 1] == '>') push(Tok::Arrow, 2);
        else push(Tok::Minus, 1);
        break;
      case '&':
        if (i + 1 < src.size() && src[i + 1] == '&') push(Tok::AndAnd, 2);
        else fail(ErrorKind::SyntaxError, "stray '&' at offset " + std::to_string(start));
        break;
      case '|':
        if (i + 1 < src.size() && src[i + 1] == '|') push(Tok::OrOr, 2);
        else fail(ErrorKind::SyntaxError, "stray '|' at offset " + std::to_string(start));
        break;
      case ':':
        if (i + 1 < src.size() && src[i + 1] == '=') push(Tok::Assign, 2);
        else fail(ErrorKind::SyntaxError, "stray ':' at offset " + std::to_string(start));
        break;
      default:
        fail(ErrorKind::SyntaxError, std::string("unexpected character '") + c + "' at offset " + std::to_string(start));
    }
  }
  out.push_back({Tok::End, "", 0, src.size()});
  return out;
}

// Cursor over a token stream with common expect/accept helpers.
class TokenCursor {
 public:
  explicit TokenCursor(std::vector<Token> toks) : toks_(std::move(toks)) {}

  const Token& peek(std::size_t ahead = 0) const {
    std::size_t i = pos_ + ahead;
    return i < toks_.size() ? toks_[i] : toks_.back();
  }
  const Token& next() {
    const Token& t = peek();
    if (t.kind != Tok::End) ++pos_;
    return t;
  }
  bool accept(Tok k) {
    if (peek().kind != k) return false;
    next();
    return true;
  }
  Token expect(Tok k, const std::string& what) {
    if (peek().kind != k)
      fail(ErrorKind::SyntaxError,
           "expected " + what + " at offset " + std::to_string(peek().pos));
    return next();
  }
  bool at_keyword(std::string_view kw) const {
    return peek().kind == Tok::Ident && peek().text == kw;
  }
  bool accept_keyword(std::string_view kw) {
    if (!at_keyword(kw)) return false;
    next();
    return true;
  }
  void expect_end() {
    if (peek().kind != Tok::End)
      fail(ErrorKind::SyntaxError,
           "unexpected trailing input at offset " + std::to_string(peek().pos));
  }

 private:
  std::vector<Token> toks_;
  std::size_t pos_ = 0;
};

}  // namespace tsem::detail
