#pragma once

#include <map>
#include <optional>
#include <string>
#include <vector>

#include "opetope/metatree.hpp"

namespace opetope::detail {

// A tree with nodes in preorder. Kid entries: >= 0 node index, < 0 leaf -(i+1).
struct Flat {
  struct N {
    std::string sym;
    Value label;
    int parent = -1;
    int slot = -1;
    std::vector<int> kids;
  };
  std::vector<N> nodes;
  std::vector<Value> leafType;  // planar; symbols on trees >= 2
  std::vector<int> leafParent;
  std::vector<int> leafSlot;
  Perm perm;
  std::map<std::string, int> index;
  std::string duplicate;
};

struct Resolved {
  Flat flat;
  std::vector<Value> labels;
  std::vector<std::vector<int>> sets;  // nodes of the tree below covered by each node
};

struct Violation {
  std::string kind;
  std::string msg;
};

[[noreturn]] void violate(const char* kind, const std::string& msg);

Flat flatten(const Tree& t);
Tree rebuild(const Flat& f, const std::vector<Value>& labels, const std::vector<Value>& leafTypes);

// Label of node m of tree k+1 read off tree k; nullopt when some incoming edge
// covers no node of tree k.
std::optional<Value> deriveLabel(const Catalog& cat, int k, const Resolved& lower, const Flat& up, int m,
                                 const std::vector<Value>& upLabels, const std::vector<std::vector<int>>& upSets);
void resolveUpper(const Catalog& cat, int k, const Resolved& lower, Resolved& up, bool requireExplicitMatch);

}  // namespace opetope::detail
