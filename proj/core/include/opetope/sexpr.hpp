#pragma once

#include <string>
#include <string_view>
#include <vector>

namespace opetope {

// Minimal s-expression layer shared by the tree, metatree and term grammars.
// ':' and '*' are standalone tokens; ';' starts a comment running to end of line.
struct SExpr {
  enum class Kind { Atom, List, Colon, Star };
  Kind kind = Kind::Atom;
  std::string atom;
  std::vector<SExpr> items;
  int line = 1;
  int col = 1;

  bool isAtom() const { return kind == Kind::Atom; }
  bool isList() const { return kind == Kind::List; }
  bool isAtom(std::string_view s) const { return kind == Kind::Atom && atom == s; }
  // List whose first item is the given keyword atom.
  bool isForm(std::string_view head) const {
    return kind == Kind::List && !items.empty() && items[0].isAtom(head);
  }
};

std::vector<SExpr> parseSExprs(std::string_view text);
SExpr parseSExpr(std::string_view text);
std::string positionOf(const SExpr& e);
[[noreturn]] void syntaxError(const SExpr& at, const std::string& message);

}  // namespace opetope
