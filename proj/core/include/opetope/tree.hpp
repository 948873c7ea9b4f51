#pragma once

#include <functional>
#include <map>
#include <string>
#include <vector>

#include "opetope/operad.hpp"
#include "opetope/sexpr.hpp"
#include "opetope/value.hpp"

namespace opetope {

struct EdgeTyping {
  Value root;
  std::vector<Value> leaves;                            // planar order
  std::map<std::string, std::vector<Value>> nodeInputs;  // by node symbol
  std::map<std::string, Value> nodeOutputs;
};

// Plug trees at host inputs (1-based, top order). The host is combed first; each
// plug's top permutation becomes a decoration on its subtree and the host's top
// permutation becomes the block permutation over the plugged blocks.
Tree graft(const Tree& host, const std::map<int, Tree>& plugs, const Operad& o);
// Push every decoration into the top permutation. Idempotent.
Tree comb(const Tree& t);
EdgeTyping typecheckTree(const Tree& t, const Operad& o);
// comb, then rename symbols A, B, ... in depth-first preorder.
Tree canonicalize(const Tree& t);
// Fold through compose/act of o; the bare edge at x evaluates to identity(o, x).
Value evalTree(const Tree& t, const Operad& o);

// Planar trees (no symbols) with exactly `nodes` nodes rooted at each type, over a label set.
struct LabelSet {
  std::vector<std::pair<Value, Profile>> labels;  // deterministic order
  std::vector<Value> types;
  std::map<std::string, std::vector<size_t>> byOutput;

  static LabelSet of(const Operad& o, const Bound& b);
  static LabelSet of(std::vector<std::pair<Value, Profile>> labels, std::vector<Value> types);
};

class PlanarTreeEnumerator {
 public:
  explicit PlanarTreeEnumerator(const LabelSet& labels) : labels_(labels) {}
  const std::vector<Node>& exact(const Value& rootType, int nodes);

 private:
  const LabelSet& labels_;
  std::map<std::pair<std::string, int>, std::vector<Node>> memo_;
};

// Every canonical well-typed combed tree with <= maxNodes nodes (all top
// permutations), bare edges included, in a deterministic order.
std::vector<Tree> enumerateTrees(const Operad& o, int maxNodes);
std::vector<Tree> enumerateTreesOver(const LabelSet& labels, int maxNodes);

// Tree grammar: "(perm i...) NODE" | NODE | "(edge TYPE)", NODE := "(SYM:OP NODE*)" | "*TYPE".
// Items starting at pos; advances pos past the tree.
using TermParser = std::function<Value(const SExpr&)>;
Tree parseTreeItems(const std::vector<SExpr>& items, size_t& pos, const TermParser& label, const TermParser& type);
Tree parseTreeText(const std::string& text, const Operad& o);

}  // namespace opetope
