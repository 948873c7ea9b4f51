#pragma once

#include <memory>
#include <mutex>
#include <string>
#include <vector>

#include "opetope/operad.hpp"
#include "opetope/slice.hpp"
#include "opetope/tree.hpp"

namespace opetope {

// The tower O, O+, O++, ... built lazily over one base operad.
class Catalog {
 public:
  Catalog(OperadPtr base, std::string baseId);

  const std::string& baseId() const { return baseId_; }
  const Operad& base() const { return *tower_.front(); }
  // O^{k+}; level(0) is the base.
  const Operad& level(int k) const { return *levelPtr(k); }
  OperadPtr levelPtr(int k) const;
  // O^{k+} for k >= 1.
  const SliceOperad& slice(int k) const;

 private:
  std::string baseId_;
  mutable std::mutex mu_;
  mutable std::vector<OperadPtr> tower_;
};

using CatalogPtr = std::shared_ptr<const Catalog>;

// Shared catalogs keyed by operad id (see operadByName).
CatalogPtr catalogFor(const std::string& baseId);

// dim 0: a type of O. dim n >= 1: an operation of O^{(n-1)+}.
struct Opetope {
  int dim = 0;
  Value value;

  friend bool operator==(const Opetope&, const Opetope&) = default;
};

// Placeholder label on a node of tree k >= 2 whose label follows from tree k-1.
const Value& derivedLabel();
bool isDerived(const Value& label);

// Tree 1 is a tree over O. In tree k >= 2 leaves carry the symbol of a node of
// tree k-1 as an atom type, and node labels are explicit operations of
// O^{(k-1)+} or derivedLabel(). The last tree has exactly one node.
struct Metatree {
  CatalogPtr catalog;
  std::vector<Tree> levels;
  Value degenerateOutput;  // null unless the last node has no inputs
  Value point;             // dimension 0 only

  int dim() const { return point.isNull() ? static_cast<int>(levels.size()) : 0; }
};

Metatree parseMetatree(const std::string& text);
std::string printMetatree(const Metatree& m);

// First violated condition; each message starts with one of SymbolThreading,
// Correspondence, Typing, Degenerate.
Report validateMetatree(const Metatree& m);
// Throws ValidationFailed carrying the first violation.
Value metatreeToOperation(const Metatree& m);
Opetope metatreeToOpetope(const Metatree& m);
// op is an operation of O^{(dim-1)+} (a type of O when dim is 0).
Metatree operationToMetatree(const Value& op, int dim, CatalogPtr cat);

}  // namespace opetope
