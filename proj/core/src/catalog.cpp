#include "opetope/catalog.hpp"

#include <algorithm>
#include <functional>
#include <map>
#include <set>
#include <sstream>

#include "decomp.hpp"

namespace opetope {

namespace detail {

std::vector<int> Shape::innerEdges() const {
  std::vector<int> out;
  for (size_t y = 1; y < flat.nodes.size(); ++y) out.push_back(static_cast<int>(y));
  return out;
}

Shape readShape(const Tree& t, const Operad& q) {
  Shape s;
  s.flat = flatten(t);
  for (const auto& n : s.flat.nodes) s.nodeOut.push_back(profileOf(q, n.label).output);
  s.rootType = s.flat.nodes.empty() ? s.flat.leafType.at(0) : s.nodeOut.at(0);
  return s;
}

Split splitShape(const Shape& s, unsigned long mask) {
  Split sp;
  const auto& nodes = s.flat.nodes;
  sp.pieceOf.assign(nodes.size(), -1);
  std::vector<bool> cut(nodes.size(), false);
  auto inner = s.innerEdges();
  for (size_t b = 0; b < inner.size(); ++b)
    if (mask >> b & 1UL) cut[static_cast<size_t>(inner[b])] = true;
  for (size_t y = 0; y < nodes.size(); ++y) {
    int p = nodes[y].parent;
    if (p == -1 || cut[y]) {
      sp.pieceOf[y] = static_cast<int>(sp.bottoms.size());
      sp.bottoms.push_back(static_cast<int>(y));
      sp.arity.push_back(0);
    } else {
      sp.pieceOf[y] = sp.pieceOf[static_cast<size_t>(p)];
    }
  }
  for (size_t y = 0; y < nodes.size(); ++y)
    for (int c : nodes[y].kids)
      if (c < 0 || sp.pieceOf[static_cast<size_t>(c)] != sp.pieceOf[y]) ++sp.arity[static_cast<size_t>(sp.pieceOf[y])];
  return sp;
}

std::vector<int> stackableEdges(const Shape& s, const Split& sp) {
  std::vector<int> out;
  if (s.flat.nodes.empty()) return {0};
  for (int b : sp.bottoms) out.push_back(b);
  for (size_t l = 0; l < s.flat.leafType.size(); ++l) out.push_back(static_cast<int>(s.flat.nodes.size() + l));
  return out;
}

Contracted contract(const Shape& s, const Operad& q, const Split& sp, const std::vector<Perm>& rhos, const std::map<int, int>& stacks) {
  Contracted c;
  c.pieceTrees.resize(sp.bottoms.size());
  int stackCount = 0;
  std::vector<int> tauLeafToShape;
  auto wrap = [&](Node child, int edge, const Value& type) {
    auto it = stacks.find(edge);
    int h = it == stacks.end() ? 0 : it->second;
    for (int i = 0; i < h; ++i) {
      std::string sym = "s" + std::to_string(stackCount++);
      c.stack[sym] = type;
      child = Node::node(sym, identity(q, type), {std::move(child)});
    }
    return child;
  };
  std::function<Node(int)> build = [&](int i) -> Node {
    struct Top {
      int kid;
    };
    std::vector<Top> tops;
    std::function<Node(int)> copy = [&](int x) -> Node {
      const auto& nx = s.flat.nodes[static_cast<size_t>(x)];
      Node n = Node::node(nx.sym, nx.label);
      for (int k : nx.kids) {
        if (k >= 0 && sp.pieceOf[static_cast<size_t>(k)] == i) {
          n.kids.push_back(copy(k));
        } else {
          tops.push_back({k});
          n.kids.push_back(Node::leaf(s.typeOf(k)));
        }
      }
      return n;
    };
    Tree pt{copy(sp.bottoms[static_cast<size_t>(i)]), rhos[static_cast<size_t>(i)]};
    canonicalizeSymbols(pt);
    Value e = evalTree(pt, q);
    c.pieceTrees[static_cast<size_t>(i)] = std::move(pt);
    std::string sym = "p" + std::to_string(i);
    c.piece[sym] = i;
    Node out = Node::node(sym, e);
    const Perm& rho = rhos[static_cast<size_t>(i)];
    for (size_t j = 0; j < tops.size(); ++j) {
      int k = tops[static_cast<size_t>(rho[j] - 1)].kid;
      Node child;
      if (k >= 0) {
        child = build(sp.pieceOf[static_cast<size_t>(k)]);
      } else {
        child = Node::leaf(s.typeOf(k));
        tauLeafToShape.push_back(-k - 1);
      }
      out.kids.push_back(wrap(std::move(child), s.edgeOf(k), s.typeOf(k)));
    }
    return out;
  };
  if (s.flat.nodes.empty()) {
    c.tau.root = wrap(Node::leaf(s.rootType), 0, s.rootType);
    tauLeafToShape = {0};
  } else {
    c.tau.root = wrap(build(0), 0, s.rootType);
  }
  const int leaves = static_cast<int>(tauLeafToShape.size());
  c.tau.perm.assign(static_cast<size_t>(leaves), 0);
  for (int j = 0; j < leaves; ++j) {
    int target = s.flat.perm[static_cast<size_t>(j)] - 1;
    int p = 0;
    while (tauLeafToShape[static_cast<size_t>(p)] != target) ++p;
    c.tau.perm[static_cast<size_t>(j)] = p + 1;
  }
  for (const Node* n : preorderNodes(c.tau.root)) c.syms.push_back(n->sym);
  return c;
}

}  // namespace detail

using namespace detail;

namespace {

struct Entry {
  Node tree;  // a leaf when size is 0
  int size;
};

class Decomposer {
 public:
  Decomposer(const Catalog& cat, int p) : q_(cat.level(p - 1)), slice_(cat.slice(p)) {}

  const std::vector<Entry>& run(const Tree& shape, int budget) {
    auto key = std::make_pair(treeText(shape), budget);
    auto it = memo_.find(key);
    if (it != memo_.end()) return it->second;
    std::vector<Entry> out;
    Shape s = readShape(shape, q_);
    const auto& nodes = s.flat.nodes;
    if (nodes.size() == 1 && isIdentityPerm(s.flat.perm)) {
      bool allLeaves = true;
      for (int c : nodes[0].kids) allLeaves = allLeaves && c < 0;
      if (allLeaves) out.push_back({Node::leaf(nodes[0].label), 0});
    }
    if (budget >= 1) {
      const size_t inner = s.innerEdges().size();
      for (unsigned long mask = 0; mask < (1UL << inner); ++mask) {
        Split sp = splitShape(s, mask);
        std::vector<std::vector<Perm>> rhoChoices;
        for (int a : sp.arity) rhoChoices.push_back(allPerms(a));
        std::vector<size_t> at(sp.arity.size(), 0);
        for (;;) {
          std::vector<Perm> rhos;
          for (size_t i = 0; i < at.size(); ++i) rhos.push_back(rhoChoices[i][at[i]]);
          withStacks(s, sp, rhos, budget, out);
          size_t i = 0;
          while (i < at.size() && ++at[i] == rhoChoices[i].size()) at[i++] = 0;
          if (i == at.size()) break;
        }
      }
    }
    return memo_.emplace(key, std::move(out)).first->second;
  }

 private:
  void withStacks(const Shape& s, const Split& sp, const std::vector<Perm>& rhos, int budget, std::vector<Entry>& out) {
    // Pieces that are a single node with identity rho may stay leaves of the decomposition.
    int minSize = 0;
    for (size_t i = 0; i < sp.bottoms.size(); ++i) {
      bool single = true;
      for (int c : s.flat.nodes[static_cast<size_t>(sp.bottoms[i])].kids)
        if (c >= 0 && sp.pieceOf[static_cast<size_t>(c)] == static_cast<int>(i)) single = false;
      if (!(single && isIdentityPerm(rhos[i]))) ++minSize;
    }
    const int room = budget - 1 - minSize;
    if (room < 0) return;
    auto edges = stackableEdges(s, sp);
    std::map<int, int> stacks;
    std::function<void(size_t, int)> rec = [&](size_t e, int left) {
      if (e == edges.size()) {
        emit(s, sp, rhos, stacks, budget, out);
        return;
      }
      for (int h = 0; h <= left; ++h) {
        if (h) stacks[edges[e]] = h;
        rec(e + 1, left - h);
      }
      stacks.erase(edges[e]);
    };
    rec(0, room);
  }

  void emit(const Shape& s, const Split& sp, const std::vector<Perm>& rhos, const std::map<int, int>& stacks, int budget,
            std::vector<Entry>& out) {
    Contracted c = contract(s, q_, sp, rhos, stacks);
    std::map<std::string, const std::vector<Entry>*> options;
    for (const std::string& sym : c.syms) {
      auto p = c.piece.find(sym);
      options[sym] = p != c.piece.end() ? &run(c.pieceTrees[static_cast<size_t>(p->second)], budget - 1)
                                        : &run(Tree::edge(c.stack.at(sym)), budget - 1);
    }
    const int m = static_cast<int>(c.syms.size());
    for (const Perm& ord : allPerms(m)) {
      std::vector<std::string> order;
      for (int i : ord) order.push_back(c.syms[static_cast<size_t>(i - 1)]);
      Value label = slice_.make(c.tau, order);
      std::vector<const Entry*> chosen(static_cast<size_t>(m));
      std::function<void(int, int)> pick = [&](int k, int used) {
        if (k == m) {
          Node n = Node::node("", label);
          for (const Entry* e : chosen) n.kids.push_back(e->tree);
          out.push_back({std::move(n), 1 + used});
          return;
        }
        for (const Entry& e : *options.at(order[static_cast<size_t>(k)])) {
          if (1 + used + e.size > budget) continue;
          chosen[static_cast<size_t>(k)] = &e;
          pick(k + 1, used + e.size);
        }
      };
      pick(0, 0);
    }
  }

  const Operad& q_;
  const SliceOperad& slice_;
  std::map<std::pair<std::string, int>, std::vector<Entry>> memo_;
};

void nameNodes(Tree& t) {
  int i = 0;
  std::function<void(Node&)> rec = [&](Node& n) {
    if (n.isLeaf()) return;
    n.sym = symbolName(i++);
    for (Node& k : n.kids) rec(k);
  };
  rec(t.root);
}

// Every ordering of the tree's nodes; false when the sink stopped.
bool allOrderings(const SliceOperad& o, const Tree& t, int dim, const OpetopeSink& sink) {
  std::vector<std::string> syms;
  for (const Node* n : preorderNodes(t.root)) syms.push_back(n->sym);
  for (const Perm& ord : allPerms(static_cast<int>(syms.size()))) {
    std::vector<std::string> order;
    for (int i : ord) order.push_back(syms[static_cast<size_t>(i - 1)]);
    if (!sink(Opetope{dim, o.make(t, order)})) return false;
  }
  return true;
}

}  // namespace

std::vector<Node> decompositions(const Catalog& cat, int p, const Tree& shape, int maxNodes) {
  if (p < 1) raise(ErrorCode::DimensionZero, "decompositions need a slice level of at least 1");
  Decomposer d(cat, p);
  std::vector<Node> out;
  for (const Entry& e : d.run(shape, maxNodes)) out.push_back(e.tree);
  return out;
}

void enumerateOpetopes(const Catalog& cat, int dim, std::optional<int> maxNodesPerLevel, const OpetopeSink& sink) {
  if (dim < 0) raise(ErrorCode::DimensionZero, "negative dimension");
  if (dim >= 2 && !maxNodesPerLevel) raise(ErrorCode::Unbounded, "enumerating dimension " + std::to_string(dim) + " needs a per-level node bound");
  const int bound = maxNodesPerLevel.value_or(8);
  if (dim == 0) {
    auto types = cat.base().types(Bound{bound, bound});
    if (!types) raise(ErrorCode::Unbounded, "the base operad cannot list its types");
    for (const Value& x : *types)
      if (!sink(Opetope{0, x})) return;
    return;
  }
  if (dim == 1) {
    auto ops = cat.base().operations(Bound{bound, 1});
    if (!ops) raise(ErrorCode::Unbounded, "the base operad cannot list its operations");
    for (const Value& f : *ops)
      if (!sink(Opetope{1, f})) return;
    return;
  }
  const int s = *maxNodesPerLevel;
  if (dim == 2) {
    for (Tree t : enumerateTrees(cat.base(), s))
      if (!allOrderings(cat.slice(1), t, 2, sink)) return;
    return;
  }
  // Each opetope is a decomposition of the underlying tree of its output.
  std::vector<Tree> shapes;
  std::set<std::string> seen;
  enumerateOpetopes(cat, dim - 1, s, [&](const Opetope& w) {
    if (seen.insert(treeText(w.value.tree())).second) shapes.push_back(w.value.tree());
    return true;
  });
  const SliceOperad& top = cat.slice(dim - 1);
  Decomposer dec(cat, dim - 2);
  for (const Tree& shape : shapes) {
    for (const Entry& e : dec.run(shape, s)) {
      if (e.size == 0) {
        if (!sink(Opetope{dim, top.make(Tree::edge(e.tree.type), {})})) return;
        continue;
      }
      Tree t{e.tree, {}};
      nameNodes(t);
      for (const Perm& pi : allPerms(leafCount(t.root))) {
        t.perm = pi;
        if (!allOrderings(top, t, dim, sink)) return;
      }
    }
  }
}

std::vector<Opetope> enumerateOpetopes(const Catalog& cat, int dim, std::optional<int> maxNodesPerLevel) {
  std::vector<Opetope> out;
  enumerateOpetopes(cat, dim, maxNodesPerLevel, [&](const Opetope& w) {
    out.push_back(w);
    return true;
  });
  return out;
}

std::vector<int> levelSizes(const Opetope& w) {
  if (w.dim == 0) return {};
  if (w.dim == 1) return {1};
  std::vector<int> sizes(static_cast<size_t>(w.dim), 1);
  Value v = w.value;
  for (int k = w.dim - 1; k >= 1; --k) {
    sizes[static_cast<size_t>(k - 1)] = nodeCount(v.tree().root);
    if (k > 1) v = v.output();
  }
  return sizes;
}

std::vector<Opetope> infacesOf(const Catalog& cat, const Opetope& w) {
  if (w.dim == 0) raise(ErrorCode::DimensionZero, "a point has no faces");
  std::vector<Opetope> out;
  for (const Value& x : profileOf(cat.level(w.dim - 1), w.value).inputs) out.push_back(Opetope{w.dim - 1, x});
  return out;
}

Opetope outfaceOf(const Catalog& cat, const Opetope& w) {
  if (w.dim == 0) raise(ErrorCode::DimensionZero, "a point has no faces");
  return Opetope{w.dim - 1, profileOf(cat.level(w.dim - 1), w.value).output};
}

namespace {

std::string polygonName(int arity) {
  switch (arity) {
    case 0: return "unigon";
    case 1: return "bigon";
    case 2: return "triangle";
    case 3: return "quadrilateral";
    case 4: return "pentagon";
    case 5: return "hexagon";
    case 6: return "heptagon";
    case 7: return "octagon";
    default: return std::to_string(arity + 1) + "-gon";
  }
}

bool isChain(const Tree& t) {
  const Node* n = &t.root;
  while (!n->isLeaf()) {
    if (n->kids.size() != 1) return false;
    n = &n->kids[0];
  }
  return true;
}

std::string join(const std::vector<std::string>& xs, const std::string& sep) {
  std::string s;
  for (size_t i = 0; i < xs.size(); ++i) s += (i ? sep : "") + xs[i];
  return s;
}

void finishText(FaceDescription& d) {
  std::ostringstream os;
  os << "dimension " << d.dim << ": " << d.shape << "\n";
  os << "infaces: " << d.infaces.size();
  if (!d.infaces.empty()) os << " (" << join(d.infaces, ", ") << ")";
  os << "\noutface: " << d.outface << "\n";
  if (!d.counts.empty()) {
    static const char* names[] = {"vertices", "edges", "polygons"};
    std::vector<std::string> parts;
    for (size_t i = 0; i < d.counts.size(); ++i)
      parts.push_back(std::to_string(d.counts[i]) + " " + (i < 3 ? names[i] : ("faces of dimension " + std::to_string(i))));
    os << "faces: " << join(parts, ", ") << "\n";
  }
  for (const auto& [face, boundary] : d.adjacency) os << "  " << face << ": " << join(boundary, " ") << "\n";
  for (const std::string& f : d.flags) os << "flag: " << f << "\n";
  d.text = os.str();
}

}  // namespace

FaceDescription describeOpetope(const Catalog& cat, const Opetope& w) {
  FaceDescription d;
  d.dim = w.dim;
  if (w.dim == 0) {
    d.shape = "point";
    d.outface = "none";
    finishText(d);
    return d;
  }
  auto ins = infacesOf(cat, w);
  Opetope out = outfaceOf(cat, w);
  auto faceName = [&](const Opetope& f) -> std::string {
    if (f.dim == 0) return "point";
    if (f.dim == 1) return "edge";
    if (f.dim == 2) return polygonName(profileOf(cat.level(1), f.value).arity());
    return std::to_string(f.dim) + "-opetope with " + std::to_string(profileOf(cat.level(f.dim - 1), f.value).arity()) + " infaces";
  };
  for (const Opetope& f : ins) d.infaces.push_back(faceName(f));
  d.outface = faceName(out);

  if (w.dim == 1) {
    d.shape = ins.size() == 1 ? "interval" : "corolla with " + std::to_string(ins.size()) + " inputs";
    d.counts = {static_cast<int>(ins.size()) + 1};
    finishText(d);
    return d;
  }
  if (w.dim == 2) {
    const int k = static_cast<int>(ins.size());
    d.shape = polygonName(k);
    if (k <= 1) d.flags.push_back(d.shape + ", not a convex polytope");
    const Tree& t = w.value.tree();
    if (isChain(t)) {
      d.counts = {k + 1, k + 1};
      // Node at depth j spans v_j..v_{j+1}; the outface spans the whole chain.
      std::map<std::string, int> depth;
      int j = 0;
      for (const Node* n : preorderNodes(t.root)) depth[n->sym] = j++;
      const auto& order = w.value.order();
      for (int i = 0; i < k; ++i) {
        int dep = depth.at(order[static_cast<size_t>(i)]);
        d.adjacency.push_back({"a" + std::to_string(i + 1), {"v" + std::to_string(dep), "v" + std::to_string(dep + 1)}});
      }
      d.adjacency.push_back({"b", {"v0", "v" + std::to_string(k)}});
    }
    finishText(d);
    return d;
  }
  if (w.dim == 3) {
    const int n = static_cast<int>(ins.size());
    const Value& v = w.value;
    const Tree& lower = v.output().tree();
    d.shape = n == 0 ? "degenerate 3-opetope" : "3-opetope with " + std::to_string(n) + " infaces";
    if (n == 0) d.flags.push_back("degenerate: no infaces, not a convex polytope");
    bool small = false;
    for (const Opetope& f : ins) small = small || profileOf(cat.level(1), f.value).arity() <= 1;
    small = small || profileOf(cat.level(1), out.value).arity() <= 1;
    if (small) d.flags.push_back("has unigon or bigon faces, not a convex polytope");
    if (isChain(lower)) {
      Metatree mt = operationToMetatree(v, 3, catalogFor(cat.baseId()));
      Flat l1 = flatten(mt.levels[0]);
      Flat l2 = flatten(mt.levels[1]);
      const int L = static_cast<int>(l1.nodes.size());
      std::map<int, int> inputIndex;  // tree-2 node -> position in the ordering
      Flat l3 = flatten(mt.levels[2]);
      for (size_t i = 0; i < l3.leafType.size(); ++i) inputIndex[l2.index.at(l3.leafType[i].name())] = static_cast<int>(i) + 1;
      auto edgeOfChainNode = [&](int x) { return "e" + std::to_string(x + 1); };
      int internal = 0;
      std::vector<std::vector<int>> sets(l2.nodes.size());
      for (size_t m = l2.nodes.size(); m-- > 0;)
        for (int c : l2.nodes[m].kids) {
          if (c < 0)
            sets[m].push_back(l1.index.at(l2.leafType[static_cast<size_t>(-c - 1)].name()));
          else
            sets[m].insert(sets[m].end(), sets[static_cast<size_t>(c)].begin(), sets[static_cast<size_t>(c)].end());
        }
      for (size_t m = 0; m < l2.nodes.size(); ++m) {
        std::vector<std::string> boundary;
        for (int c : l2.nodes[m].kids)
          boundary.push_back(c < 0 ? edgeOfChainNode(l1.index.at(l2.leafType[static_cast<size_t>(-c - 1)].name()))
                                   : "d" + std::to_string(inputIndex.at(c)));
        boundary.push_back(l2.nodes[m].parent == -1 ? "e0" : "d" + std::to_string(inputIndex.at(static_cast<int>(m))));
        d.adjacency.push_back({"a" + std::to_string(inputIndex.at(static_cast<int>(m))), boundary});
      }
      std::vector<std::string> outB;
      for (int x = 0; x < L; ++x) outB.push_back(edgeOfChainNode(x));
      outB.push_back("e0");
      d.adjacency.push_back({"b", outB});
      for (int x = 0; x < L; ++x) d.adjacency.push_back({edgeOfChainNode(x), {"v" + std::to_string(x), "v" + std::to_string(x + 1)}});
      d.adjacency.push_back({"e0", {"v0", "v" + std::to_string(L)}});
      bool degenerateEdge = false;
      for (size_t m = 0; m < l2.nodes.size(); ++m) {
        if (l2.nodes[m].parent == -1) continue;
        ++internal;
        std::string name = "d" + std::to_string(inputIndex.at(static_cast<int>(m)));
        if (sets[m].empty()) {
          degenerateEdge = true;
          d.adjacency.push_back({name, {}});
          continue;
        }
        int lo = L, hi = -1;
        for (int x : sets[m]) {
          lo = std::min(lo, x);
          hi = std::max(hi, x);
        }
        d.adjacency.push_back({name, {"v" + std::to_string(lo), "v" + std::to_string(hi + 1)}});
      }
      if (degenerateEdge) d.flags.push_back("has a degenerate internal edge");
      d.counts = {L + 1, L + 1 + internal, n + 1};
    }
    finishText(d);
    return d;
  }
  d.shape = std::to_string(w.dim) + "-opetope with " + std::to_string(ins.size()) + " infaces";
  finishText(d);
  return d;
}

}  // namespace opetope
