#pragma once

#include <functional>
#include <map>
#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "opetope/operad.hpp"

namespace opetope {

// Operad O_Y pulled back along F: Y -> S. Operations are (pb o (in y...) (out y'))
// with o an operation of O of profile (F y..., F y').
class PullbackOperad : public Operad {
 public:
  using TypeMap = std::function<std::optional<Value>(const Value&)>;
  using Fiber = std::function<std::vector<Value>(const Value&)>;
  using Universe = std::function<std::vector<Value>()>;

  PullbackOperad(OperadPtr base, TypeMap typeOf, Fiber fiber, Universe all, std::string name);

  const Operad& base() const { return *base_; }
  OperadPtr basePtr() const { return base_; }
  std::optional<Value> mapType(const Value& y) const { return typeOf_(y); }
  std::vector<Value> fiber(const Value& s) const { return fiber_(s); }

  std::string name() const override { return name_; }
  bool hasType(const Value& y) const override;
  std::optional<Profile> profile(const Value& f) const override;
  Value composeRaw(const Value& f, const std::vector<Value>& gs) const override;
  Value identityRaw(const Value& y) const override;
  Value actRaw(const Value& f, const Perm& s) const override;
  bool isIdentity(const Value& f) const override;
  std::optional<std::vector<Value>> types(const Bound& b) const override;
  std::optional<std::vector<Value>> operations(const Bound& b) const override;
  Value parseOperation(const SExpr& e) const override;

  // Lift a base operation along chosen input/output types (checked).
  Value lift(const Value& op, const std::vector<Value>& ins, const Value& out) const;

 private:
  OperadPtr base_;
  TypeMap typeOf_;
  Fiber fiber_;
  Universe all_;
  std::string name_;
};

// Pullback along a finite map Y -> types(O), keyed by atom names.
std::shared_ptr<PullbackOperad> pullbackOperad(OperadPtr o, const std::map<std::string, Value>& f);
// T_S: the terminal operad pulled back along S -> {pt}.
std::shared_ptr<PullbackOperad> terminalOver(const std::vector<std::string>& s);

}  // namespace opetope
