#pragma once

#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "opetope/error.hpp"
#include "opetope/perm.hpp"
#include "opetope/sexpr.hpp"
#include "opetope/value.hpp"

namespace opetope {

struct Profile {
  std::vector<Value> inputs;
  Value output;

  int arity() const { return static_cast<int>(inputs.size()); }
  std::string text() const;
  friend bool operator==(const Profile&, const Profile&) = default;
};

// Enumeration bound: operations of arity <= maxArity; tree-shaped operations
// additionally limited to maxNodes nodes.
struct Bound {
  int maxArity = 3;
  int maxNodes = 3;
};

struct Report {
  bool ok = true;
  std::vector<std::string> violations;
  long checked = 0;
  size_t cap = 64;

  void fail(const std::string& what) {
    ok = false;
    if (violations.size() < cap) violations.push_back(what);
  }
  std::string summary() const;
};

class Operad {
 public:
  virtual ~Operad() = default;

  virtual std::string name() const = 0;
  virtual bool hasType(const Value& x) const = 0;
  virtual std::optional<Profile> profile(const Value& f) const = 0;

  // Unchecked structure maps; callers use compose/identity/act below.
  virtual Value composeRaw(const Value& f, const std::vector<Value>& gs) const = 0;
  virtual Value identityRaw(const Value& x) const = 0;
  virtual Value actRaw(const Value& f, const Perm& s) const = 0;
  virtual bool isIdentity(const Value& f) const;

  // nullopt when the operad cannot enumerate within the bound.
  virtual std::optional<std::vector<Value>> types(const Bound& b) const = 0;
  virtual std::optional<std::vector<Value>> operations(const Bound& b) const = 0;

  virtual Value parseType(const SExpr& e) const;
  virtual Value parseOperation(const SExpr& e) const;
};

using OperadPtr = std::shared_ptr<const Operad>;

Profile profileOf(const Operad& o, const Value& f);
Value compose(const Operad& o, const Value& f, const std::vector<Value>& gs);
Value identity(const Operad& o, const Value& x);
Value act(const Operad& o, const Value& f, const Perm& s);

Value parseOperationText(const Operad& o, const std::string& text);
Value parseTypeText(const Operad& o, const std::string& text);

// Exhaustive laws (a)-(d) over every composable tuple whose arities stay within
// the bound. Throws IncompleteTable when a required entry is missing.
Report checkOperadAxioms(const Operad& o, const Bound& b);

}  // namespace opetope
