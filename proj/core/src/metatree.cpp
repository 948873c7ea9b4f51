#include "opetope/metatree.hpp"

#include <functional>
#include <map>
#include <optional>
#include <set>

#include "metatree_detail.hpp"

namespace opetope {

Catalog::Catalog(OperadPtr base, std::string baseId) : baseId_(std::move(baseId)) { tower_.push_back(std::move(base)); }

OperadPtr Catalog::levelPtr(int k) const {
  if (k < 0) raise(ErrorCode::DimensionZero, "negative slice level");
  std::lock_guard<std::mutex> lock(mu_);
  while (static_cast<int>(tower_.size()) <= k) tower_.push_back(sliceOperad(tower_.back()));
  return tower_[static_cast<size_t>(k)];
}

const SliceOperad& Catalog::slice(int k) const {
  auto* s = dynamic_cast<const SliceOperad*>(levelPtr(k).get());
  if (!s) raise(ErrorCode::DimensionZero, "level " + std::to_string(k) + " is not a slice operad");
  return *s;
}

CatalogPtr catalogFor(const std::string& baseId) {
  static std::mutex mu;
  static std::map<std::string, CatalogPtr> cache;
  std::lock_guard<std::mutex> lock(mu);
  auto it = cache.find(baseId);
  if (it != cache.end()) return it->second;
  auto cat = std::make_shared<const Catalog>(operadByName(baseId), baseId);
  cache.emplace(baseId, cat);
  return cat;
}

const Value& derivedLabel() {
  static const Value v = Value::atom("?");
  return v;
}

bool isDerived(const Value& label) { return label == derivedLabel(); }

namespace detail {

Flat flatten(const Tree& t) {
  Flat f;
  f.perm = t.perm.empty() ? identityPerm(leafCount(t.root)) : t.perm;
  std::function<int(const Node&, int, int)> rec = [&](const Node& n, int parent, int slot) -> int {
    if (n.isLeaf()) {
      int idx = static_cast<int>(f.leafType.size());
      f.leafType.push_back(n.type);
      f.leafParent.push_back(parent);
      f.leafSlot.push_back(slot);
      return -(idx + 1);
    }
    int id = static_cast<int>(f.nodes.size());
    f.nodes.push_back({n.sym, n.label, parent, slot, {}});
    if (!f.index.emplace(n.sym, id).second && f.duplicate.empty()) f.duplicate = n.sym;
    for (size_t i = 0; i < n.kids.size(); ++i) {
      int k = rec(n.kids[i], id, static_cast<int>(i));
      f.nodes[static_cast<size_t>(id)].kids.push_back(k);
    }
    return id;
  };
  rec(t.root, -1, -1);
  return f;
}

Tree rebuild(const Flat& f, const std::vector<Value>& labels, const std::vector<Value>& leafTypes) {
  std::function<Node(int)> rec = [&](int c) -> Node {
    if (c < 0) return Node::leaf(leafTypes[static_cast<size_t>(-c - 1)]);
    const auto& n = f.nodes[static_cast<size_t>(c)];
    Node out = Node::node(n.sym, labels[static_cast<size_t>(c)]);
    for (int k : n.kids) out.kids.push_back(rec(k));
    return out;
  };
  Tree t;
  t.root = f.nodes.empty() ? Node::leaf(leafTypes.at(0)) : rec(0);
  t.perm = f.perm;
  return t;
}

[[noreturn]] void violate(const char* kind, const std::string& msg) { throw Violation{kind, msg}; }

std::optional<Value> deriveLabel(const Catalog& cat, int k, const Resolved& lower, const Flat& up, int m,
                                 const std::vector<Value>& upLabels, const std::vector<std::vector<int>>& upSets) {
  const Operad& q = cat.level(k - 1);
  const auto& node = up.nodes[static_cast<size_t>(m)];
  if (node.kids.empty()) return std::nullopt;
  struct Kid {
    std::vector<int> set;
    Value out;
    Perm sigma;
  };
  std::vector<Kid> kids;
  for (int c : node.kids) {
    Kid kd;
    if (c < 0) {
      int x = lower.flat.index.at(up.leafType[static_cast<size_t>(-c - 1)].name());
      kd.set = {x};
      kd.out = lower.labels[static_cast<size_t>(x)];
      kd.sigma = identityPerm(profileOf(q, kd.out).arity());
    } else {
      kd.set = upSets[static_cast<size_t>(c)];
      const Value& l = upLabels[static_cast<size_t>(c)];
      kd.out = l.output();
      kd.sigma = l.tree().perm;
    }
    if (kd.set.empty()) return std::nullopt;
    kids.push_back(std::move(kd));
  }

  const size_t nl = lower.flat.nodes.size();
  std::vector<int> owner(nl, -1);
  size_t total = 0;
  for (size_t i = 0; i < kids.size(); ++i)
    for (int x : kids[i].set) {
      if (owner[static_cast<size_t>(x)] != -1) violate("Correspondence", "node " + lower.flat.nodes[static_cast<size_t>(x)].sym + " lies under two edges");
      owner[static_cast<size_t>(x)] = static_cast<int>(i);
      ++total;
    }
  int bottom = -1;
  for (size_t x = 0; x < nl; ++x) {
    if (owner[x] == -1) continue;
    int p = lower.flat.nodes[x].parent;
    if (p == -1 || owner[static_cast<size_t>(p)] == -1) {
      if (bottom != -1) violate("Correspondence", "the subtree below " + node.sym + " is not connected");
      bottom = static_cast<int>(x);
    }
  }

  std::vector<size_t> reached(kids.size(), 0);
  std::vector<int> tauLeafToLower;
  std::function<Node(int)> build = [&](int b) -> Node {
    const int i = owner[static_cast<size_t>(b)];
    struct Top {
      int parent, slot, kid;
    };
    std::vector<Top> tops;
    std::function<void(int)> dfs = [&](int x) {
      ++reached[static_cast<size_t>(i)];
      const auto& nx = lower.flat.nodes[static_cast<size_t>(x)];
      for (size_t s = 0; s < nx.kids.size(); ++s) {
        int c = nx.kids[s];
        if (c >= 0 && owner[static_cast<size_t>(c)] == i)
          dfs(c);
        else
          tops.push_back({x, static_cast<int>(s), c});
      }
    };
    dfs(b);
    const Kid& kd = kids[static_cast<size_t>(i)];
    if (tops.size() != kd.sigma.size())
      violate("Correspondence", "a piece below " + node.sym + " has " + std::to_string(tops.size()) + " top edges but its label has arity " +
                                    std::to_string(kd.sigma.size()));
    Node out = Node::node("c" + std::to_string(i), kd.out);
    for (size_t j = 0; j < tops.size(); ++j) {
      const Top& t = tops[static_cast<size_t>(kd.sigma[j] - 1)];
      if (t.kid >= 0 && owner[static_cast<size_t>(t.kid)] >= 0) {
        out.kids.push_back(build(t.kid));
      } else {
        Value ty = profileOf(q, lower.labels[static_cast<size_t>(t.parent)]).inputs[static_cast<size_t>(t.slot)];
        out.kids.push_back(Node::leaf(ty));
        tauLeafToLower.push_back(t.kid < 0 ? -t.kid - 1 : -1);
      }
    }
    return out;
  };
  Tree tau;
  tau.root = build(bottom);
  size_t sum = 0;
  for (size_t r : reached) sum += r;
  if (sum != total) violate("Correspondence", "a piece below " + node.sym + " is not connected");

  const int leaves = static_cast<int>(tauLeafToLower.size());
  tau.perm = identityPerm(leaves);
  if (node.parent == -1 && total == nl) {
    for (int j = 0; j < leaves; ++j) {
      int target = lower.flat.perm[static_cast<size_t>(j)] - 1;
      int p = 0;
      while (p < leaves && tauLeafToLower[static_cast<size_t>(p)] != target) ++p;
      if (p == leaves) violate("Correspondence", "tree leaves do not line up with the tree below");
      tau.perm[static_cast<size_t>(j)] = p + 1;
    }
  }
  std::vector<std::string> order;
  for (size_t i = 0; i < kids.size(); ++i) order.push_back("c" + std::to_string(i));
  try {
    return cat.slice(k).make(tau, order);
  } catch (const Error& e) {
    violate("Typing", "label of " + node.sym + ": " + e.what());
  }
}

namespace {

std::vector<std::vector<int>> computeSets(const Flat& up, const Flat& lower) {
  std::vector<std::vector<int>> sets(up.nodes.size());
  for (size_t m = up.nodes.size(); m-- > 0;) {
    for (int c : up.nodes[m].kids) {
      if (c < 0) {
        sets[m].push_back(lower.index.at(up.leafType[static_cast<size_t>(-c - 1)].name()));
      } else {
        const auto& s = sets[static_cast<size_t>(c)];
        sets[m].insert(sets[m].end(), s.begin(), s.end());
      }
    }
  }
  return sets;
}

}  // namespace

void resolveUpper(const Catalog& cat, int k, const Resolved& lower, Resolved& up, bool requireExplicitMatch) {
  up.sets = computeSets(up.flat, lower.flat);
  up.labels.assign(up.flat.nodes.size(), Value());
  for (size_t m = up.flat.nodes.size(); m-- > 0;) {
    std::optional<Value> d = deriveLabel(cat, k, lower, up.flat, static_cast<int>(m), up.labels, up.sets);
    const Value& given = up.flat.nodes[m].label;
    const std::string& sym = up.flat.nodes[m].sym;
    if (!isDerived(given)) {
      if (requireExplicitMatch && d && *d != given) violate("Correspondence", "explicit label of " + sym + " disagrees with the tree below");
      up.labels[m] = given;
    } else if (d) {
      up.labels[m] = *d;
    } else {
      violate("Correspondence", "node " + sym + " covers an empty subtree and needs an explicit label");
    }
  }
}

}  // namespace detail

using namespace detail;

namespace {

void checkThreading(const std::vector<Flat>& flats) {
  const size_t n = flats.size();
  if (n == 0) violate("SymbolThreading", "a metatree needs at least one tree");
  for (size_t k = 0; k < n; ++k) {
    if (!flats[k].duplicate.empty())
      violate("SymbolThreading", "symbol " + flats[k].duplicate + " labels two nodes of tree " + std::to_string(k + 1));
  }
  const Flat& last = flats.back();
  if (last.nodes.size() != 1) violate("SymbolThreading", "the last tree must have exactly one node");
  if (!isIdentityPerm(last.perm)) violate("SymbolThreading", "the last tree is planar and carries no permutation");
  if (n >= 2 && !isDerived(last.nodes[0].label)) violate("Typing", "the node of the last tree carries no label");
  for (size_t k = 1; k < n; ++k) {
    const Flat& lo = flats[k - 1];
    const Flat& up = flats[k];
    std::set<std::string> seen;
    for (const Value& r : up.leafType) {
      if (!r.isAtom()) violate("SymbolThreading", "top edges of tree " + std::to_string(k + 1) + " must carry symbols");
      const std::string& s = r.name();
      if (!seen.insert(s).second) violate("SymbolThreading", "symbol " + s + " labels two top edges of tree " + std::to_string(k + 1));
      if (!lo.index.count(s)) violate("SymbolThreading", "symbol " + s + " of tree " + std::to_string(k + 1) + " names no node of tree " + std::to_string(k));
    }
    if (seen.size() != lo.nodes.size())
      violate("SymbolThreading", "tree " + std::to_string(k + 1) + " does not thread every node of tree " + std::to_string(k));
  }
  for (const auto& node : flats[0].nodes)
    if (isDerived(node.label)) violate("Typing", "node " + node.sym + " of the first tree needs a label");
}

struct Decoded {
  Value op;
  std::vector<Resolved> levels;
};

Decoded decode(const Metatree& m) {
  const Catalog& cat = *m.catalog;
  Decoded out;
  if (!m.point.isNull()) {
    if (!cat.base().hasType(m.point)) violate("Typing", m.point.text() + " is not a type of " + cat.base().name());
    out.op = m.point;
    return out;
  }
  std::vector<Flat> flats;
  for (const Tree& t : m.levels) flats.push_back(flatten(t));
  checkThreading(flats);
  const int n = static_cast<int>(flats.size());

  out.levels.resize(static_cast<size_t>(n));
  Resolved& first = out.levels[0];
  first.flat = flats[0];
  for (const auto& node : first.flat.nodes) first.labels.push_back(node.label);
  try {
    typecheckTree(m.levels[0], cat.base());
  } catch (const Error& e) {
    violate("Typing", std::string("tree 1: ") + e.what());
  }
  if (n == 1) {
    const auto& node = first.flat.nodes[0];
    for (int c : node.kids)
      if (c >= 0) violate("SymbolThreading", "a one-tree metatree is a single node");
    if (!isIdentityPerm(first.flat.perm)) violate("Typing", "a one-tree metatree carries no permutation");
    out.op = node.label;
    return out;
  }
  for (int k = 2; k < n; ++k) {
    Resolved& up = out.levels[static_cast<size_t>(k - 1)];
    up.flat = flats[static_cast<size_t>(k - 1)];
    resolveUpper(cat, k - 1, out.levels[static_cast<size_t>(k - 2)], up, true);
  }
  // Tree n-1 as a tree over O^{(n-2)+}, leaves typed by the labels they name.
  auto leafTypesOf = [&](int k) {
    std::vector<Value> types;
    const Flat& f = out.levels[static_cast<size_t>(k - 1)].flat;
    if (k == 1) return f.leafType;
    const Resolved& lo = out.levels[static_cast<size_t>(k - 2)];
    for (const Value& r : f.leafType) types.push_back(lo.labels[static_cast<size_t>(lo.flat.index.at(r.name()))]);
    return types;
  };
  for (int k = 2; k < n; ++k) {
    const Resolved& r = out.levels[static_cast<size_t>(k - 1)];
    try {
      typecheckTree(rebuild(r.flat, r.labels, leafTypesOf(k)), cat.level(k - 1));
    } catch (const Error& e) {
      violate("Typing", "tree " + std::to_string(k) + ": " + e.what());
    }
  }
  Resolved& lastR = out.levels[static_cast<size_t>(n - 1)];
  lastR.flat = flats[static_cast<size_t>(n - 1)];
  lastR.labels = {derivedLabel()};
  const Resolved& top = out.levels[static_cast<size_t>(n - 2)];
  std::vector<std::string> order;
  for (const Value& r : lastR.flat.leafType) order.push_back(r.name());
  Tree t = rebuild(top.flat, top.labels, leafTypesOf(n - 1));
  try {
    out.op = cat.slice(n - 1).make(t, order);
  } catch (const Error& e) {
    violate("Typing", "tree " + std::to_string(n - 1) + ": " + e.what());
  }
  const bool nullary = lastR.flat.leafType.empty();
  if (nullary && m.degenerateOutput.isNull()) violate("Degenerate", "the last node has no inputs, so its output edge needs a degenerate-output label");
  if (!nullary && !m.degenerateOutput.isNull()) violate("Degenerate", "degenerate-output is only allowed when the last node has no inputs");
  if (nullary && m.degenerateOutput != out.op.output())
    violate("Degenerate", "degenerate-output " + m.degenerateOutput.text() + " differs from " + out.op.output().text());
  return out;
}

// Trees >= 2: symbols on top edges, derived labels omitted.
std::string levelText(const Tree& t) {
  std::string s;
  if (t.root.isLeaf()) return "(edge " + t.root.type.text() + ")";
  if (!t.perm.empty() && !isIdentityPerm(t.perm)) {
    s = "(perm";
    for (int i : t.perm) s += " " + std::to_string(i);
    s += ") ";
  }
  std::function<void(const Node&)> rec = [&](const Node& n) {
    if (n.isLeaf()) {
      s += "*" + n.type.text();
      return;
    }
    const Value& l = n.label;
    s += "(" + n.sym;
    if (!isDerived(l)) s += ":" + l.text();
    for (const Node& k : n.kids) {
      s += " ";
      rec(k);
    }
    s += ")";
  };
  rec(t.root);
  return s;
}

// Symbols A, B, ... in preorder, continuing across trees; top-edge symbols follow.
std::vector<Tree> renameAcross(const std::vector<Tree>& levels) {
  std::vector<Tree> out = levels;
  int next = 0;
  std::map<std::string, std::string> prev;
  for (Tree& t : out) {
    std::map<std::string, std::string> cur;
    std::function<void(Node&)> rec = [&](Node& n) {
      if (n.isLeaf()) {
        if (n.type.isAtom() && prev.count(n.type.name())) n.type = Value::atom(prev.at(n.type.name()));
        return;
      }
      std::string s = symbolName(next++);
      cur[n.sym] = s;
      n.sym = s;
      for (Node& k : n.kids) rec(k);
    };
    rec(t.root);
    prev = std::move(cur);
  }
  return out;
}

Tree withLabels(const Tree& t, const std::vector<Value>& labels) {
  Tree out = t;
  size_t next = 0;
  std::function<void(Node&)> rec = [&](Node& n) {
    if (n.isLeaf()) return;
    n.label = labels[next++];
    for (Node& k : n.kids) rec(k);
  };
  rec(out.root);
  return out;
}

std::string resolvedText(const std::vector<Tree>& levels) {
  std::string s;
  for (size_t k = 0; k < levels.size(); ++k) {
    s += k == 0 ? treeText(levels[k]) : levelText(levels[k]);
    s += "\n";
  }
  return s;
}

struct Encoded {
  Metatree mt;
  std::vector<Tree> full;  // every label explicit
};

Encoded encode(const Value& op, int dim, CatalogPtr cat) {
  Encoded e;
  e.mt.catalog = cat;
  if (dim < 0) raise(ErrorCode::DimensionZero, "negative dimension");
  if (dim == 0) {
    e.mt.point = op;
    return e;
  }
  if (dim == 1) {
    Profile p = profileOf(cat->base(), op);
    Node n = Node::node("A", op);
    for (const Value& x : p.inputs) n.kids.push_back(Node::leaf(x));
    Tree t{n, identityPerm(p.arity())};
    e.mt.levels = {t};
    e.full = {t};
    return e;
  }
  const int n = dim;
  std::vector<Value> w(static_cast<size_t>(n));
  w[static_cast<size_t>(n - 1)] = op;
  for (int k = n - 1; k >= 2; --k) w[static_cast<size_t>(k - 1)] = w[static_cast<size_t>(k)].output();
  int next = 0;
  std::map<std::string, std::string> prev;
  for (int k = 1; k <= n - 1; ++k) {
    const Value& wk = w[static_cast<size_t>(k)];
    Tree t = wk.tree();
    std::map<std::string, std::string> cur;
    for (const Node* p : preorderNodes(t.root)) cur[p->sym] = symbolName(next++);
    std::vector<Value> refs;
    if (k >= 2) {
      const Value& below = w[static_cast<size_t>(k - 1)];
      const Perm& sigma = t.perm;
      refs.resize(below.order().size());
      for (size_t i = 0; i < below.order().size(); ++i)
        refs[static_cast<size_t>(sigma[i] - 1)] = Value::atom(prev.at(below.order()[i]));
    }
    size_t leaf = 0;
    std::function<void(Node&)> rec = [&](Node& nd) {
      if (nd.isLeaf()) {
        if (k >= 2) nd.type = refs[leaf];
        ++leaf;
        return;
      }
      nd.sym = cur.at(nd.sym);
      for (Node& c : nd.kids) rec(c);
    };
    rec(t.root);
    e.full.push_back(t);
    prev = std::move(cur);
  }
  Node last = Node::node(symbolName(next++), derivedLabel());
  for (const std::string& s : op.order()) last.kids.push_back(Node::leaf(Value::atom(prev.at(s))));
  Tree lt{last, identityPerm(op.arity())};
  e.full.push_back(lt);
  if (op.arity() == 0) e.mt.degenerateOutput = op.output();

  // Keep a label explicit only where the tree below does not determine it.
  e.mt.levels = e.full;
  std::vector<Resolved> res(static_cast<size_t>(n));
  res[0].flat = flatten(e.full[0]);
  for (const auto& nd : res[0].flat.nodes) res[0].labels.push_back(nd.label);
  for (int k = 2; k <= n - 1; ++k) {
    Resolved& up = res[static_cast<size_t>(k - 1)];
    up.flat = flatten(e.full[static_cast<size_t>(k - 1)]);
    up.sets = computeSets(up.flat, res[static_cast<size_t>(k - 2)].flat);
    for (const auto& nd : up.flat.nodes) up.labels.push_back(nd.label);
    std::vector<Value> shown(up.labels.size());
    for (size_t m = 0; m < up.labels.size(); ++m) {
      std::optional<Value> d;
      try {
        d = deriveLabel(*cat, k - 1, res[static_cast<size_t>(k - 2)], up.flat, static_cast<int>(m), up.labels, up.sets);
      } catch (const Violation&) {
        d.reset();
      }
      shown[m] = d && *d == up.labels[m] ? derivedLabel() : up.labels[m];
    }
    e.mt.levels[static_cast<size_t>(k - 1)] = withLabels(e.full[static_cast<size_t>(k - 1)], shown);
  }
  return e;
}

}  // namespace

Report validateMetatree(const Metatree& m) {
  Report r;
  r.checked = 1;
  try {
    Decoded d = decode(m);
    if (!m.point.isNull()) return r;
    std::vector<Tree> resolved;
    for (size_t k = 0; k < d.levels.size(); ++k) {
      const Tree& t = m.levels[k];
      resolved.push_back(k == 0 ? t : withLabels(t, d.levels[k].labels));
    }
    Encoded e = encode(d.op, static_cast<int>(m.levels.size()), m.catalog);
    if (resolvedText(renameAcross(resolved)) != resolvedText(e.full))
      violate("Correspondence", "the trees do not describe the operation they evaluate to");
  } catch (const Violation& v) {
    r.fail(v.kind + ": " + v.msg);
  } catch (const Error& e) {
    r.fail(std::string("Typing: ") + e.what());
  }
  return r;
}

Value metatreeToOperation(const Metatree& m) {
  Report r = validateMetatree(m);
  if (!r.ok) raise(ErrorCode::ValidationFailed, r.violations.front());
  return decode(m).op;
}

Opetope metatreeToOpetope(const Metatree& m) { return Opetope{m.dim(), metatreeToOperation(m)}; }

Metatree operationToMetatree(const Value& op, int dim, CatalogPtr cat) { return encode(op, dim, std::move(cat)).mt; }

std::string printMetatree(const Metatree& m) {
  std::string s = "(metatree (base " + m.catalog->baseId() + ")";
  if (!m.point.isNull()) return s + " (point " + m.point.text() + "))";
  for (size_t k = 0; k < m.levels.size(); ++k) s += " (level " + (k == 0 ? treeText(m.levels[k]) : levelText(m.levels[k])) + ")";
  if (!m.degenerateOutput.isNull()) s += " (degenerate-output " + m.degenerateOutput.text() + ")";
  return s + ")";
}

namespace {

Node parseLevelNode(const std::vector<SExpr>& items, size_t& pos, const TermParser& label, bool allowLabel) {
  if (pos >= items.size()) syntaxError(items.empty() ? SExpr{} : items.back(), "expected a node");
  const SExpr& e = items[pos];
  if (e.kind == SExpr::Kind::Star) {
    if (pos + 1 >= items.size() || !items[pos + 1].isAtom()) syntaxError(e, "expected a symbol after '*'");
    Node leaf = Node::leaf(Value::atom(items[pos + 1].atom));
    pos += 2;
    return leaf;
  }
  if (!e.isList() || e.items.empty() || !e.items[0].isAtom() || e.items[0].atom == "perm" || e.items[0].atom == "edge")
    syntaxError(e, "expected a node (SYM ...) or a top edge *SYM");
  Node n = Node::node(e.items[0].atom, derivedLabel());
  size_t i = 1;
  if (i < e.items.size() && e.items[i].kind == SExpr::Kind::Colon) {
    if (!allowLabel) syntaxError(e.items[i], "the node of the last tree carries no label");
    if (i + 1 >= e.items.size()) syntaxError(e, "expected a label after ':'");
    n.label = label(e.items[i + 1]);
    i += 2;
  }
  while (i < e.items.size()) n.kids.push_back(parseLevelNode(e.items, i, label, allowLabel));
  ++pos;
  return n;
}

Tree parseLevel(const SExpr& form, int k, bool last, const Catalog& cat) {
  size_t pos = 1;
  Tree t;
  if (k == 1) {
    t = parseTreeItems(
        form.items, pos, [&](const SExpr& x) { return cat.base().parseOperation(x); },
        [&](const SExpr& x) { return cat.base().parseType(x); });
  } else {
    const auto& items = form.items;
    if (pos >= items.size()) syntaxError(form, "empty level");
    if (items[pos].isForm("edge")) {
      if (items[pos].items.size() != 2 || !items[pos].items[1].isAtom()) syntaxError(items[pos], "expected (edge SYM)");
      t = Tree::edge(Value::atom(items[pos].items[1].atom));
      ++pos;
    } else {
      bool explicitPerm = false;
      if (items[pos].isForm("perm")) {
        for (size_t i = 1; i < items[pos].items.size(); ++i) {
          const SExpr& x = items[pos].items[i];
          if (!x.isAtom() || x.atom.find_first_not_of("0123456789") != std::string::npos) syntaxError(x, "expected a positive integer");
          t.perm.push_back(std::stoi(x.atom));
        }
        if (!isValidPerm(t.perm)) syntaxError(items[pos], "not a permutation");
        explicitPerm = true;
        ++pos;
      }
      TermParser label = [&](const SExpr& x) { return cat.level(k - 1).parseOperation(x); };
      t.root = parseLevelNode(items, pos, label, !last);
      if (explicitPerm && static_cast<int>(t.perm.size()) != leafCount(t.root)) syntaxError(form, "permutation size differs from the leaf count");
      if (!explicitPerm) t.perm = identityPerm(leafCount(t.root));
    }
  }
  if (pos != form.items.size()) syntaxError(form.items[pos], "trailing input in level");
  return t;
}

}  // namespace

Metatree parseMetatree(const std::string& text) {
  SExpr doc = parseSExpr(text);
  if (!doc.isForm("metatree")) syntaxError(doc, "expected (metatree (base OPERAD) (level TREE)...)");
  if (doc.items.size() < 2 || !doc.items[1].isForm("base") || doc.items[1].items.size() != 2 || !doc.items[1].items[1].isAtom())
    syntaxError(doc, "expected (base OPERAD) after metatree");
  Metatree m;
  m.catalog = catalogFor(doc.items[1].items[1].atom);
  const Catalog& cat = *m.catalog;
  std::vector<const SExpr*> levels;
  const SExpr* degenerate = nullptr;
  for (size_t i = 2; i < doc.items.size(); ++i) {
    const SExpr& e = doc.items[i];
    if (e.isForm("level")) {
      if (degenerate) syntaxError(e, "levels must precede degenerate-output");
      levels.push_back(&e);
    } else if (e.isForm("degenerate-output")) {
      if (degenerate || e.items.size() != 2) syntaxError(e, "expected one (degenerate-output OP)");
      degenerate = &e;
    } else if (e.isForm("point")) {
      if (e.items.size() != 2 || doc.items.size() != 3) syntaxError(e, "a point metatree is (metatree (base O) (point TYPE))");
      m.point = cat.base().parseType(e.items[1]);
      return m;
    } else {
      syntaxError(e, "expected (level ...) or (degenerate-output ...)");
    }
  }
  if (levels.empty()) syntaxError(doc, "a metatree needs at least one level");
  const int n = static_cast<int>(levels.size());
  for (int k = 1; k <= n; ++k) m.levels.push_back(parseLevel(*levels[static_cast<size_t>(k - 1)], k, k == n && n > 1, cat));
  if (degenerate) {
    if (n < 2) syntaxError(*degenerate, "degenerate-output needs at least two levels");
    m.degenerateOutput = cat.level(n - 2).parseOperation(degenerate->items[1]);
  }
  return m;
}

}  // namespace opetope
