#pragma once

#include <compare>
#include <functional>
#include <map>
#include <memory>
#include <string>
#include <vector>

#include "opetope/perm.hpp"

namespace opetope {

struct Tree;
struct ValueData;

enum class ValueKind { Null, Atom, Slice, Free, Pullback };

// Immutable, shared term: a type or an operation of some operad. Identity is the
// canonical text; structured kinds carry their inputs/output so profiles are local.
class Value {
 public:
  Value() = default;

  static Value atom(const std::string& name);
  // Slice operation: tree over the base, ordering of its node symbols, cached evaluation.
  static Value slice(const Tree& t, const std::vector<std::string>& order, const Value& output);
  // Free-operad operation: a combed tree over generator atoms.
  static Value free(const Tree& t, const Value& outputType);
  // Operation of a pullback operad: base operation plus lifted input/output types.
  static Value pullback(const Value& base, std::vector<Value> ins, const Value& out);

  ValueKind kind() const;
  bool isNull() const { return !d_; }
  bool isAtom() const { return kind() == ValueKind::Atom; }
  const std::string& text() const;
  size_t hash() const;

  const std::string& name() const;                 // Atom
  const Tree& tree() const;                        // Slice, Free
  const std::vector<std::string>& order() const;   // Slice
  const Value& base() const;                       // Pullback
  // Slice: node labels in ordering order; Free: leaf types in top order; Pullback: lifted inputs.
  const std::vector<Value>& inputs() const;
  // Slice: evaluation; Free: root edge type; Pullback: lifted output.
  const Value& output() const;
  int arity() const { return static_cast<int>(inputs().size()); }

  friend bool operator==(const Value& a, const Value& b);
  friend std::strong_ordering operator<=>(const Value& a, const Value& b);

 private:
  std::shared_ptr<const ValueData> d_;
};

struct ValueHash {
  size_t operator()(const Value& v) const { return v.hash(); }
};

struct Node {
  std::string sym;  // internal nodes only
  Value label;      // null for a leaf edge
  Value type;       // leaf edge type
  std::vector<Node> kids;
  Perm deco;        // permutation decoration of the subtree's leaf block; empty = none

  bool isLeaf() const { return label.isNull(); }
  static Node leaf(const Value& type);
  static Node node(const std::string& sym, const Value& label, std::vector<Node> kids = {});
};

// Combed when every deco is empty; perm acts on planar leaves (input j = planar leaf perm[j]).
struct Tree {
  Node root;
  Perm perm;

  static Tree edge(const Value& type);
  bool isEdge() const { return root.isLeaf(); }
};

int leafCount(const Node& n);
int nodeCount(const Node& n);
// Leaves in planar order.
std::vector<const Node*> planarLeaves(const Node& n);
// Internal nodes in depth-first preorder.
std::vector<const Node*> preorderNodes(const Node& n);
const Node* findNode(const Node& n, const std::string& sym);

std::string symbolName(int index);  // 0 -> A, 25 -> Z, 26 -> AA
// Rename symbols A, B, ... in depth-first preorder; returns old -> new.
std::map<std::string, std::string> canonicalizeSymbols(Tree& t);
// Perm of size leafCount (identity when empty); throws on mismatch.
void normalizePerm(Tree& t);

std::string nodeText(const Node& n);
std::string treeText(const Tree& t);

}  // namespace opetope

template <>
struct std::hash<opetope::Value> {
  size_t operator()(const opetope::Value& v) const { return v.hash(); }
};
