#pragma once

#include <memory>
#include <string>
#include <vector>

#include "opetope/operad.hpp"
#include "opetope/tabulated.hpp"
#include "opetope/tree.hpp"

namespace opetope {

struct Signature {
  std::vector<std::string> types;
  std::vector<std::pair<std::string, Profile>> generators;
};

// Operations are canonical combed trees over the generators, printed "(free TREE)".
// compose = graft, comb, canonicalize; identities are bare edges.
class FreeOperad : public Operad {
 public:
  explicit FreeOperad(const Signature& sig, std::string name = "Free");

  const Operad& generators() const { return *gens_; }
  Value generator(const std::string& name) const;
  Value make(const Tree& t) const;

  std::string name() const override { return name_; }
  bool hasType(const Value& x) const override;
  std::optional<Profile> profile(const Value& f) const override;
  Value composeRaw(const Value& f, const std::vector<Value>& gs) const override;
  Value identityRaw(const Value& x) const override;
  Value actRaw(const Value& f, const Perm& s) const override;
  bool isIdentity(const Value& f) const override;
  std::optional<std::vector<Value>> types(const Bound& b) const override;
  std::optional<std::vector<Value>> operations(const Bound& b) const override;
  Value parseOperation(const SExpr& e) const override;

 private:
  std::shared_ptr<TabulatedOperad> gens_;
  std::string name_;
};

std::shared_ptr<FreeOperad> freeOperad(const Signature& sig, std::string name = "Free");

}  // namespace opetope
