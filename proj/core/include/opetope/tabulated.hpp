#pragma once

#include <functional>
#include <map>
#include <memory>
#include <optional>
#include <string>
#include <unordered_map>
#include <vector>

#include "opetope/operad.hpp"

namespace opetope {

// Finite operad given by tables. Operation and type identifiers are atoms.
class TabulatedOperad : public Operad {
 public:
  explicit TabulatedOperad(std::string name, int arityBound = 3);

  void addType(const std::string& x);
  void addOperation(const std::string& id, const std::vector<std::string>& inputs, const std::string& output);
  void setComposite(const std::string& f, const std::vector<std::string>& gs, const std::string& result);
  void setIdentity(const std::string& x, const std::string& op);
  void setAction(const std::string& f, const Perm& s, const std::string& result);

  int arityBound() const { return arityBound_; }
  const std::vector<Value>& allTypes() const { return types_; }
  const std::vector<Value>& allOperations() const { return ops_; }

  std::string name() const override { return name_; }
  bool hasType(const Value& x) const override;
  std::optional<Profile> profile(const Value& f) const override;
  Value composeRaw(const Value& f, const std::vector<Value>& gs) const override;
  Value identityRaw(const Value& x) const override;
  Value actRaw(const Value& f, const Perm& s) const override;
  std::optional<std::vector<Value>> types(const Bound& b) const override;
  std::optional<std::vector<Value>> operations(const Bound& b) const override;

  std::string toJson() const;
  static std::shared_ptr<TabulatedOperad> fromJson(const std::string& text);

 private:
  std::string name_;
  int arityBound_;
  std::vector<Value> types_;
  std::vector<Value> ops_;
  std::unordered_map<std::string, Profile> profiles_;
  std::map<std::string, std::string> compose_;
  std::map<std::string, std::string> identities_;
  std::map<std::string, std::string> action_;
};

using TabulatedPtr = std::shared_ptr<TabulatedOperad>;

// Built-ins. I: one type pt, one operation 1. K: operations 1 and the nullary k.
// T<n>: the terminal untyped operad truncated at arity n (operations t0..tn).
// F<k>: types x1..xk and x', one k-ary f with a free symmetric action (fσ is
// named f[σ(1),...]) plus identities 1_x.
TabulatedPtr operadI();
TabulatedPtr operadK();
TabulatedPtr operadTTruncated(int n);
TabulatedPtr operadF(int k);
std::string fOperationName(const Perm& s);

// The terminal untyped operad T: one operation t<k> of each arity k.
class TerminalOperad : public Operad {
 public:
  std::string name() const override { return "T"; }
  bool hasType(const Value& x) const override;
  std::optional<Profile> profile(const Value& f) const override;
  Value composeRaw(const Value& f, const std::vector<Value>& gs) const override;
  Value identityRaw(const Value& x) const override;
  Value actRaw(const Value& f, const Perm& s) const override;
  std::optional<std::vector<Value>> types(const Bound& b) const override;
  std::optional<std::vector<Value>> operations(const Bound& b) const override;
};

OperadPtr terminalOperad();

// Algebra over an operad: finite carriers per type and an action on tuples.
// Entries are tabulated; an optional evaluator supplies closed-form actions.
struct AlgebraTable {
  std::map<std::string, std::vector<std::string>> carriers;  // type text -> elements
  std::map<std::string, std::map<std::vector<std::string>, std::string>> table;  // op text -> args -> element
  std::function<std::optional<std::string>(const Value&, const std::vector<std::string>&)> evaluator;
  int arityBound = 3;

  void set(const Value& op, const std::vector<std::string>& args, const std::string& result);
  std::optional<std::string> apply(const Value& op, const std::vector<std::string>& args) const;
  const std::vector<std::string>& carrier(const Value& type) const;

  // {"carriers": {type: [elements]}, "action": [{"op","args","result"}], "arityBound": n}
  static AlgebraTable fromJson(const std::string& text, const Operad& o);
  std::string toJson() const;
};

// Conditions (a)-(c) over all operations and composable tuples within the arity bound.
Report checkAlgebra(const Operad& o, const AlgebraTable& a);

}  // namespace opetope
