#pragma once

#include <map>
#include <vector>

#include "metatree_detail.hpp"

namespace opetope::detail {

// A tree over Q read as the target of a decomposition.
struct Shape {
  Flat flat;
  std::vector<Value> nodeOut;  // output type of each node
  Value rootType;
  // Edges are named by their upper end: node y -> y, leaf l -> nodes + l.
  int edgeOf(int kid) const { return kid >= 0 ? kid : static_cast<int>(flat.nodes.size()) + (-kid - 1); }
  Value typeOf(int kid) const {
    return kid >= 0 ? nodeOut[static_cast<size_t>(kid)] : flat.leafType[static_cast<size_t>(-kid - 1)];
  }
  // Node-to-node edges, named by their upper node.
  std::vector<int> innerEdges() const;
};

Shape readShape(const Tree& t, const Operad& q);

struct Split {
  std::vector<int> pieceOf;  // per node
  std::vector<int> bottoms;  // per piece, preorder of bottoms
  std::vector<int> arity;    // top edges per piece
};
// Pieces after cutting the inner edges whose bit is set in mask.
Split splitShape(const Shape& s, unsigned long mask);

// Root label template: each piece contracted into one node, unary identity
// nodes stacked on the remaining edges. Piece nodes are "p<i>", stack nodes "s<j>".
struct Contracted {
  Tree tau;                              // with top permutation
  std::vector<std::string> syms;         // all node symbols
  std::map<std::string, int> piece;      // symbol -> piece index
  std::map<std::string, Value> stack;    // symbol -> edge type
  std::vector<Tree> pieceTrees;          // canonical, permutation rho_i on top
};
// stacks: edge name -> count; only piece bottoms, the root edge and leaves may carry stacks.
Contracted contract(const Shape& s, const Operad& q, const Split& sp, const std::vector<Perm>& rhos, const std::map<int, int>& stacks);

// Edge names that may carry stacks.
std::vector<int> stackableEdges(const Shape& s, const Split& sp);

}  // namespace opetope::detail
