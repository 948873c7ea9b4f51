#include "opetope/sexpr.hpp"

#include <cctype>

#include "opetope/error.hpp"

namespace opetope {

namespace {

struct Lexer {
  std::string_view s;
  size_t i = 0;
  int line = 1;
  int col = 1;

  void advance() {
    if (s[i] == '\n') {
      ++line;
      col = 1;
    } else {
      ++col;
    }
    ++i;
  }

  void skip() {
    while (i < s.size()) {
      if (std::isspace(static_cast<unsigned char>(s[i]))) {
        advance();
      } else if (s[i] == ';') {
        while (i < s.size() && s[i] != '\n') advance();
      } else {
        break;
      }
    }
  }

  [[noreturn]] void fail(const std::string& msg) const {
    raise(ErrorCode::SyntaxError, msg + " at line " + std::to_string(line) + ", column " + std::to_string(col));
  }

  SExpr parse() {
    skip();
    if (i >= s.size()) fail("unexpected end of input");
    SExpr e;
    e.line = line;
    e.col = col;
    char c = s[i];
    if (c == ')') fail("unexpected ')'");
    if (c == '(') {
      advance();
      e.kind = SExpr::Kind::List;
      for (;;) {
        skip();
        if (i >= s.size()) fail("unclosed '('");
        if (s[i] == ')') {
          advance();
          break;
        }
        e.items.push_back(parse());
      }
      return e;
    }
    if (c == ':' || c == '*') {
      e.kind = c == ':' ? SExpr::Kind::Colon : SExpr::Kind::Star;
      e.atom = std::string(1, c);
      advance();
      return e;
    }
    size_t start = i;
    while (i < s.size()) {
      char d = s[i];
      if (std::isspace(static_cast<unsigned char>(d)) || d == '(' || d == ')' || d == ':' || d == '*' || d == ';') break;
      advance();
    }
    e.atom = std::string(s.substr(start, i - start));
    return e;
  }
};

}  // namespace

std::vector<SExpr> parseSExprs(std::string_view text) {
  Lexer lx{text};
  std::vector<SExpr> out;
  for (;;) {
    lx.skip();
    if (lx.i >= text.size()) break;
    out.push_back(lx.parse());
  }
  return out;
}

SExpr parseSExpr(std::string_view text) {
  Lexer lx{text};
  SExpr e = lx.parse();
  lx.skip();
  if (lx.i < text.size()) lx.fail("trailing input");
  return e;
}

std::string positionOf(const SExpr& e) {
  return "line " + std::to_string(e.line) + ", column " + std::to_string(e.col);
}

void syntaxError(const SExpr& at, const std::string& message) {
  raise(ErrorCode::SyntaxError, message + " at " + positionOf(at));
}

}  // namespace opetope
