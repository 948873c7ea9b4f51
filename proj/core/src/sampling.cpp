#include "opetope/sampling.hpp"

#include <algorithm>
#include <functional>
#include <map>

#include "opetope/catalog.hpp"
#include "opetope/slice.hpp"

namespace opetope {

const char* lawName(OperadLaw law) {
  switch (law) {
    case OperadLaw::Associativity: return "associativity";
    case OperadLaw::Unit: return "unit";
    case OperadLaw::ActionComposition: return "action composition";
    case OperadLaw::ActionCompatibility: return "action compatibility";
  }
  return "?";
}

namespace {

int uniform(std::mt19937& rng, int lo, int hi) { return std::uniform_int_distribution<int>(lo, hi)(rng); }
bool coin(std::mt19937& rng, double p) { return std::bernoulli_distribution(p)(rng); }

Perm randomPerm(int k, std::mt19937& rng) {
  Perm p = identityPerm(k);
  std::shuffle(p.begin(), p.end(), rng);
  return p;
}

template <class T>
const T& pick(const std::vector<T>& xs, std::mt19937& rng) {
  return xs[static_cast<size_t>(uniform(rng, 0, static_cast<int>(xs.size()) - 1))];
}

std::vector<std::string> symsOf(const Tree& t) {
  std::vector<std::string> out;
  for (const Node* n : preorderNodes(t.root)) out.push_back(n->sym);
  return out;
}

std::vector<std::string> shuffled(std::vector<std::string> xs, std::mt19937& rng) {
  std::shuffle(xs.begin(), xs.end(), rng);
  return xs;
}

using ByOutput = std::map<std::string, std::vector<Value>>;

ByOutput groupByOutput(const Operad& o, const std::vector<Value>& ops) {
  ByOutput out;
  for (const Value& f : ops) out[profileOf(o, f).output.text()].push_back(f);
  return out;
}

std::vector<Value> finiteOperations(const Operad& o, int maxArity, int maxNodes) {
  auto ops = o.operations(Bound{maxArity, maxNodes});
  if (!ops || ops->empty()) raise(ErrorCode::Unbounded, o.name() + " offers no operations to sample");
  return *ops;
}

// Grows a tree by replacing random leaves with random operations of the leaf's
// type, keeping the leaf count within maxArity.
Tree growTree(const Operad& o, const std::vector<Value>& ops, int nodes, int maxArity, std::mt19937& rng) {
  ByOutput by = groupByOutput(o, ops);
  const Value& first = pick(ops, rng);
  if (nodes == 0) return Tree::edge(profileOf(o, first).output);
  int count = 0;
  auto makeNode = [&](const Value& f) {
    std::vector<Node> kids;
    for (const Value& x : profileOf(o, f).inputs) kids.push_back(Node::leaf(x));
    return Node::node(symbolName(count++), f, std::move(kids));
  };
  Tree t{makeNode(first), {}};
  while (count < nodes) {
    std::vector<Node*> open;
    std::function<void(Node&)> collect = [&](Node& n) {
      for (Node& k : n.kids) {
        if (!k.isLeaf())
          collect(k);
        else if (by.count(k.type.text()))
          open.push_back(&k);
      }
    };
    collect(t.root);
    if (open.empty()) break;
    Node* leaf = pick(open, rng);
    std::vector<Value> fits;
    for (const Value& f : by.at(leaf->type.text()))
      if (leafCount(t.root) - 1 + profileOf(o, f).arity() <= maxArity) fits.push_back(f);
    if (fits.empty()) break;
    *leaf = makeNode(pick(fits, rng));
  }
  t.perm = randomPerm(leafCount(t.root), rng);
  return t;
}

// W cut into connected pieces: the contracted tree has one node per piece,
// labelled by the piece's evaluation, plus identity nodes whose piece is a bare edge.
struct Cut {
  Tree contracted;
  std::map<std::string, Tree> pieces;
  std::vector<std::string> syms;
};

class Cutter {
 public:
  Cutter(const Operad& b, std::mt19937& rng, int& fresh) : b_(b), rng_(rng), fresh_(fresh) {}

  Cut operator()(const Tree& w) {
    cut_ = Cut{};
    if (w.isEdge()) {
      cut_.contracted = Tree{wrap(Node::leaf(w.root.type)), w.perm};
    } else {
      cut_.contracted = Tree{wrap(contract(w.root)), w.perm};
    }
    return std::move(cut_);
  }

 private:
  std::string freshSym() { return "p" + std::to_string(fresh_++); }

  Node wrap(Node child) {
    if (!coin(rng_, 0.15)) return child;
    const Value type = child.isLeaf() ? child.type : profileOf(b_, child.label).output;
    const std::string s = freshSym();
    cut_.pieces[s] = Tree::edge(type);
    cut_.syms.push_back(s);
    return Node::node(s, identity(b_, type), {std::move(child)});
  }

  Node pieceNode(const Node& x, std::vector<Node>& fkids) {
    std::vector<Node> kids;
    for (const Node& k : x.kids) {
      if (k.isLeaf()) {
        kids.push_back(Node::leaf(k.type));
        fkids.push_back(wrap(Node::leaf(k.type)));
      } else if (coin(rng_, 0.4)) {
        kids.push_back(Node::leaf(profileOf(b_, k.label).output));
        fkids.push_back(wrap(contract(k)));
      } else {
        kids.push_back(pieceNode(k, fkids));
      }
    }
    return Node::node(x.sym, x.label, std::move(kids));
  }

  Node contract(const Node& n) {
    std::vector<Node> fkids;
    Node p = pieceNode(n, fkids);
    const std::string s = freshSym();
    Tree piece{std::move(p), {}};
    piece.perm = identityPerm(leafCount(piece.root));
    const Value label = evalTree(piece, b_);
    cut_.pieces[s] = std::move(piece);
    cut_.syms.push_back(s);
    return Node::node(s, label, std::move(fkids));
  }

  const Operad& b_;
  std::mt19937& rng_;
  int& fresh_;
  Cut cut_;
};

// A tree over bp = B+ whose leaves stand for the nodes of w (a tree over B);
// leaves carry the symbol of their node of w until the caller clears them.
Node buildOver(const SliceOperad& bp, const Tree& w, int depth, std::mt19937& rng, int& fresh) {
  Cutter cutter(bp.base(), rng, fresh);
  Cut c = cutter(w);
  auto gnode = [&](const std::string& s) {
    const Tree& piece = c.pieces.at(s);
    if (!piece.isEdge() && nodeCount(piece.root) == 1 && coin(rng, 0.3)) {
      Node leaf = Node::leaf(piece.root.label);
      leaf.sym = piece.root.sym;
      return leaf;
    }
    std::vector<std::string> order = shuffled(symsOf(piece), rng);
    if (piece.isEdge()) order.clear();
    Value g = bp.make(piece, order);
    std::vector<Node> kids;
    for (size_t i = 0; i < order.size(); ++i) {
      Node leaf = Node::leaf(g.inputs()[i]);
      leaf.sym = order[i];
      kids.push_back(std::move(leaf));
    }
    return Node::node("n" + std::to_string(fresh++), g, std::move(kids));
  };
  if (depth <= 1 || nodeCount(c.contracted.root) <= 1) {
    std::vector<std::string> order = c.contracted.isEdge() ? std::vector<std::string>{} : shuffled(c.syms, rng);
    Value f = bp.make(c.contracted, order);
    std::vector<Node> kids;
    for (const std::string& s : order) kids.push_back(gnode(s));
    return Node::node("n" + std::to_string(fresh++), f, std::move(kids));
  }
  Node top = buildOver(bp, c.contracted, depth - 1, rng, fresh);
  std::function<void(Node&)> attach = [&](Node& n) {
    for (Node& k : n.kids) {
      if (k.isLeaf())
        k = gnode(k.sym);
      else
        attach(k);
    }
  };
  if (top.isLeaf())
    top = gnode(top.sym);
  else
    attach(top);
  return top;
}

void clearLeafSyms(Node& n) {
  if (n.isLeaf()) {
    n.sym.clear();
    return;
  }
  for (Node& k : n.kids) clearLeafSyms(k);
}

void renameNodes(Node& n, int& i) {
  if (n.isLeaf()) return;
  n.sym = symbolName(i++);
  for (Node& k : n.kids) renameNodes(k, i);
}

}  // namespace

Tree randomTree(const Operad& o, int maxNodes, std::mt19937& rng, int maxArity) {
  if (const auto* bp = dynamic_cast<const SliceOperad*>(&o)) {
    for (int attempt = 0; attempt < 1000; ++attempt) {
      Tree w = randomTree(bp->base(), maxNodes, rng, maxArity);
      int fresh = 0;
      Tree v;
      try {
        v.root = buildOver(*bp, w, uniform(rng, 1, std::max(1, maxNodes)), rng, fresh);
      } catch (const Error& e) {
        if (e.code() != ErrorCode::IncompleteTable) throw;
        continue;
      }
      if (nodeCount(v.root) > maxNodes) continue;
      clearLeafSyms(v.root);
      int i = 0;
      renameNodes(v.root, i);
      v.perm = randomPerm(leafCount(v.root), rng);
      return v;
    }
    raise(ErrorCode::BudgetExceeded, "no tree over " + o.name() + " within " + std::to_string(maxNodes) + " nodes");
  }
  return growTree(o, finiteOperations(o, maxArity, maxNodes), uniform(rng, 0, maxNodes), maxArity, rng);
}

LawSampler::LawSampler(OperadPtr o, int maxNodes, int maxArity) : o_(std::move(o)), maxNodes_(maxNodes), maxArity_(maxArity) {
  if (!dynamic_cast<const SliceOperad*>(o_.get())) ops_ = finiteOperations(*o_, maxArity_, maxNodes_);
}

LawInstance LawSampler::sliceSample(const SliceOperad& bp, std::mt19937& rng) const {
  LawInstance x;
  Tree w = randomTree(bp.base(), maxNodes_, rng, maxArity_);
  int fresh = 0;
  Cutter cutter(bp.base(), rng, fresh);
  Cut c1 = cutter(w);
  std::vector<std::string> orderF = c1.contracted.isEdge() ? std::vector<std::string>{} : shuffled(c1.syms, rng);
  x.f = bp.make(c1.contracted, orderF);
  for (const std::string& s : orderF) {
    Cut c2 = cutter(c1.pieces.at(s));
    std::vector<std::string> order = c2.contracted.isEdge() ? std::vector<std::string>{} : shuffled(c2.syms, rng);
    x.gs.push_back(bp.make(c2.contracted, order));
    for (const std::string& t : order) {
      const Tree& h = c2.pieces.at(t);
      x.hs.push_back(bp.make(h, h.isEdge() ? std::vector<std::string>{} : shuffled(symsOf(h), rng)));
    }
  }
  return x;
}

LawInstance LawSampler::sample(std::mt19937& rng) const {
  LawInstance x;
  // Cutting a truncated base can leave a piece above the truncation; such draws are redrawn.
  if (const auto* bp = dynamic_cast<const SliceOperad*>(o_.get())) {
    for (int attempt = 0;; ++attempt) {
      try {
        x = sliceSample(*bp, rng);
        break;
      } catch (const Error& e) {
        if (e.code() != ErrorCode::IncompleteTable || attempt > 1000) throw;
      }
    }
  } else {
    ByOutput by = groupByOutput(*o_, ops_);
    auto fill = [&](const std::vector<Value>& types, std::vector<Value>& out) {
      int arity = 0;
      for (const Value& t : types) {
        auto it = by.find(t.text());
        if (it == by.end()) return false;
        out.push_back(pick(it->second, rng));
        arity += profileOf(*o_, out.back()).arity();
      }
      return arity <= maxArity_;
    };
    for (int attempt = 0;; ++attempt) {
      if (attempt > 10000) raise(ErrorCode::BudgetExceeded, "no composable family found in " + o_->name());
      x = LawInstance{};
      x.f = pick(ops_, rng);
      if (!fill(profileOf(*o_, x.f).inputs, x.gs)) continue;
      std::vector<Value> inner;
      for (const Value& g : x.gs) {
        Profile p = profileOf(*o_, g);
        inner.insert(inner.end(), p.inputs.begin(), p.inputs.end());
      }
      if (fill(inner, x.hs)) break;
    }
  }
  const int k = profileOf(*o_, x.f).arity();
  x.s = randomPerm(k, rng);
  x.t = randomPerm(k, rng);
  return x;
}

Report checkLaw(const Operad& o, OperadLaw law, const LawInstance& x) {
  Report r;
  ++r.checked;
  try {
    switch (law) {
      case OperadLaw::Associativity: {
        std::vector<Value> ghs;
        size_t pos = 0;
        for (const Value& g : x.gs) {
          const size_t k = static_cast<size_t>(profileOf(o, g).arity());
          ghs.push_back(compose(o, g, std::vector<Value>(x.hs.begin() + static_cast<long>(pos), x.hs.begin() + static_cast<long>(pos + k))));
          pos += k;
        }
        if (compose(o, x.f, ghs) != compose(o, compose(o, x.f, x.gs), x.hs)) r.fail("associativity fails at " + x.f.text());
        break;
      }
      case OperadLaw::Unit: {
        Profile p = profileOf(o, x.f);
        std::vector<Value> ids;
        for (const Value& t : p.inputs) ids.push_back(identity(o, t));
        if (compose(o, x.f, ids) != x.f) r.fail("right unit law fails at " + x.f.text());
        if (compose(o, identity(o, p.output), {x.f}) != x.f) r.fail("left unit law fails at " + x.f.text());
        break;
      }
      case OperadLaw::ActionComposition:
        if (act(o, act(o, x.f, x.s), x.t) != act(o, x.f, composePerm(x.s, x.t)))
          r.fail("action composition fails at " + x.f.text() + " with " + permText(x.s) + ", " + permText(x.t));
        break;
      case OperadLaw::ActionCompatibility: {
        std::vector<int> sizes;
        for (const Value& g : x.gs) sizes.push_back(profileOf(o, g).arity());
        Value lhs = compose(o, act(o, x.f, x.s), permuteList(x.gs, x.s));
        Value rhs = act(o, compose(o, x.f, x.gs), blockPerm(x.s, sizes));
        if (lhs != rhs) r.fail("action compatibility fails at " + x.f.text() + " with " + permText(x.s));
        break;
      }
    }
  } catch (const Error& e) {
    r.fail(std::string(lawName(law)) + " raised " + e.what() + " at " + x.f.text());
  }
  return r;
}

Opetope randomOpetope(const Catalog& cat, int dim, int maxNodesPerLevel, std::mt19937& rng) {
  if (dim == 0) {
    auto types = cat.base().types(Bound{maxNodesPerLevel, maxNodesPerLevel});
    if (!types || types->empty()) raise(ErrorCode::Unbounded, cat.base().name() + " offers no types");
    return Opetope{0, pick(*types, rng)};
  }
  if (dim == 1) return Opetope{1, pick(finiteOperations(cat.base(), maxNodesPerLevel, maxNodesPerLevel), rng)};
  for (int attempt = 0; attempt < 10000; ++attempt) {
    Tree t = randomTree(cat.level(dim - 2), maxNodesPerLevel, rng, maxNodesPerLevel);
    std::vector<std::string> order = t.isEdge() ? std::vector<std::string>{} : shuffled(symsOf(t), rng);
    Opetope w{dim, cat.slice(dim - 1).make(t, order)};
    auto sizes = levelSizes(w);
    if (std::all_of(sizes.begin(), sizes.end(), [&](int s) { return s <= maxNodesPerLevel; })) return w;
  }
  raise(ErrorCode::BudgetExceeded, "no opetope sampled within the level bound");
}

}  // namespace opetope
