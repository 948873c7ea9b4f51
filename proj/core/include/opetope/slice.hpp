#pragma once

#include <map>
#include <memory>
#include <string>
#include <vector>

#include "opetope/operad.hpp"
#include "opetope/tabulated.hpp"
#include "opetope/tree.hpp"

namespace opetope {

// O+: types are operations of O; operations are (canonical tree over O, node
// ordering) with the tree's evaluation cached as output.
class SliceOperad : public Operad {
 public:
  explicit SliceOperad(OperadPtr base);

  const Operad& base() const { return *base_; }
  OperadPtr basePtr() const { return base_; }
  // Typechecks and evaluates t over the base; ordering lists t's node symbols.
  Value make(const Tree& t, const std::vector<std::string>& order) const;

  std::string name() const override { return base_->name() + "+"; }
  bool hasType(const Value& g) const override;
  std::optional<Profile> profile(const Value& f) const override;
  Value composeRaw(const Value& f, const std::vector<Value>& gs) const override;
  Value identityRaw(const Value& g) const override;
  Value actRaw(const Value& f, const Perm& s) const override;
  bool isIdentity(const Value& f) const override;
  std::optional<std::vector<Value>> types(const Bound& b) const override;
  std::optional<std::vector<Value>> operations(const Bound& b) const override;
  Value parseType(const SExpr& e) const override;
  Value parseOperation(const SExpr& e) const override;

 private:
  OperadPtr base_;
};

std::shared_ptr<const SliceOperad> sliceOperad(OperadPtr o);
OperadPtr iterSlice(OperadPtr o, int n);
// Slice of the terminal S-operad T_S.
OperadPtr operadForOperads(const std::vector<std::string>& s);

// f is an operation of the given operad, which is O^{level+}.
bool isDegenerate(const Operad& o, const Value& f, int level);

// Brute force over generator assignments (O+-operations with at most two nodes) on
// small carriers: O+-algebra laws up to tree size `bound` versus the operad-over-O
// laws of the induced total operad. Carrier sizes default to 2 per type.
struct SliceOracleOptions {
  int bound = 3;
  std::map<std::string, int> carrierSizes;
  int defaultCarrierSize = 2;
  long budget = 5'000'000;
};
struct SliceOracleResult {
  Report report;
  long assignments = 0;
  long lawfulSlice = 0;     // assignments satisfying the O+-algebra laws
  long lawfulOperads = 0;   // assignments whose induced data satisfy the operad laws
};
SliceOracleResult sliceAlgebraOracle(const TabulatedOperad& o, const SliceOracleOptions& opts);

// Built-in operads by name: I, K, T, T<n>, F<k>, each optionally followed by '+'s;
// otherwise a path to (or the text of) a JSON operad document.
OperadPtr operadByName(const std::string& spec);

}  // namespace opetope
