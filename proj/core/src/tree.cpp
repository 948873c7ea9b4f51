#include "opetope/tree.hpp"

#include <set>

namespace opetope {

namespace {

std::vector<int> inputOrder(const Node& n, int& next) {
  if (n.isLeaf()) return {next++};
  std::vector<int> cat;
  for (const Node& k : n.kids) {
    auto part = inputOrder(k, next);
    cat.insert(cat.end(), part.begin(), part.end());
  }
  if (n.deco.empty()) return cat;
  if (n.deco.size() != cat.size() || !isValidPerm(n.deco))
    raise(ErrorCode::ArityMismatch, "decoration at node " + n.sym + " does not match its leaf block");
  return permuteList(cat, n.deco);
}

void clearDecos(Node& n) {
  n.deco.clear();
  for (Node& k : n.kids) clearDecos(k);
}

void collectSymbols(const Node& n, std::set<std::string>& out) {
  if (n.isLeaf()) return;
  out.insert(n.sym);
  for (const Node& k : n.kids) collectSymbols(k, out);
}

void renameFresh(Node& n, int& counter, const std::set<std::string>& taken) {
  if (n.isLeaf()) return;
  std::string s;
  do s = "_" + std::to_string(counter++);
  while (taken.count(s));
  n.sym = s;
  for (Node& k : n.kids) renameFresh(k, counter, taken);
}

Value outputOf(const Tree& t, const Operad& o) {
  if (t.root.isLeaf()) return t.root.type;
  return profileOf(o, t.root.label).output;
}

Value typecheckNode(const Node& n, const Operad& o, EdgeTyping& et) {
  if (n.isLeaf()) {
    if (!o.hasType(n.type)) raise(ErrorCode::TypeMismatch, "leaf edge carries " + n.type.text() + ", not a type of " + o.name());
    et.leaves.push_back(n.type);
    return n.type;
  }
  auto p = o.profile(n.label);
  if (!p) raise(ErrorCode::TypeMismatch, "node " + n.sym + " is labelled by " + n.label.text() + ", not an operation of " + o.name());
  if (p->arity() != static_cast<int>(n.kids.size()))
    raise(ErrorCode::TypeMismatch, "node " + n.sym + " has " + std::to_string(n.kids.size()) + " children but its label has arity " +
                                       std::to_string(p->arity()));
  for (size_t i = 0; i < n.kids.size(); ++i) {
    Value got = typecheckNode(n.kids[i], o, et);
    if (got != p->inputs[i])
      raise(ErrorCode::TypeMismatch, "edge into slot " + std::to_string(i + 1) + " of node " + n.sym + ": expected " +
                                         p->inputs[i].text() + ", found " + got.text());
  }
  et.nodeInputs[n.sym] = p->inputs;
  et.nodeOutputs[n.sym] = p->output;
  return p->output;
}

Value evalNode(const Node& n, const Operad& o) {
  if (n.isLeaf()) {
    if (!o.hasType(n.type)) raise(ErrorCode::TypeMismatch, "leaf edge carries " + n.type.text() + ", not a type of " + o.name());
    return o.identityRaw(n.type);
  }
  auto p = o.profile(n.label);
  if (!p) raise(ErrorCode::TypeMismatch, "node " + n.sym + " is labelled by " + n.label.text() + ", not an operation of " + o.name());
  if (p->arity() != static_cast<int>(n.kids.size()))
    raise(ErrorCode::TypeMismatch, "node " + n.sym + " has the wrong number of children");
  bool allLeaves = true;
  for (size_t i = 0; i < n.kids.size(); ++i) {
    if (!n.kids[i].isLeaf()) {
      allLeaves = false;
    } else if (n.kids[i].type != p->inputs[i]) {
      raise(ErrorCode::TypeMismatch, "leaf in slot " + std::to_string(i + 1) + " of node " + n.sym + ": expected " +
                                         p->inputs[i].text() + ", found " + n.kids[i].type.text());
    }
  }
  Value v = n.label;
  if (!allLeaves) {
    std::vector<Value> args;
    for (const Node& k : n.kids) args.push_back(evalNode(k, o));
    try {
      v = compose(o, n.label, args);
    } catch (const Error& e) {
      if (e.code() == ErrorCode::ProfileMismatch) raise(ErrorCode::TypeMismatch, std::string("at node ") + n.sym + ": " + e.what());
      throw;
    }
  }
  if (!n.deco.empty() && !isIdentityPerm(n.deco)) v = act(o, v, n.deco);
  return v;
}

int parsePermInt(const SExpr& e) {
  if (!e.isAtom()) syntaxError(e, "expected an integer");
  try {
    size_t used = 0;
    int v = std::stoi(e.atom, &used);
    if (used != e.atom.size()) syntaxError(e, "expected an integer");
    return v;
  } catch (const std::logic_error&) {
    syntaxError(e, "expected an integer");
  }
}

bool isKeyword(const std::string& s) { return s == "perm" || s == "edge"; }

Node parseNode(const std::vector<SExpr>& items, size_t& pos, const TermParser& label, const TermParser& type,
               std::set<std::string>& symbols) {
  if (pos >= items.size()) syntaxError(items.empty() ? SExpr{} : items.back(), "expected a tree node");
  const SExpr& e = items[pos];
  if (e.kind == SExpr::Kind::Star) {
    if (pos + 1 >= items.size()) syntaxError(e, "expected a type after '*'");
    Node leaf = Node::leaf(type(items[pos + 1]));
    pos += 2;
    return leaf;
  }
  if (!e.isList() || e.items.empty() || !e.items[0].isAtom() || isKeyword(e.items[0].atom))
    syntaxError(e, "expected a node (SYM:OP ...) or a leaf *TYPE");
  const std::string& sym = e.items[0].atom;
  if (!symbols.insert(sym).second) raise(ErrorCode::SymbolCollision, "symbol " + sym + " used twice at " + positionOf(e));
  size_t i = 1;
  if (i >= e.items.size() || e.items[i].kind != SExpr::Kind::Colon) syntaxError(e, "node " + sym + " lacks ':' and a label");
  if (i + 1 >= e.items.size()) syntaxError(e, "node " + sym + " lacks a label");
  Node n = Node::node(sym, label(e.items[i + 1]));
  i += 2;
  while (i < e.items.size()) n.kids.push_back(parseNode(e.items, i, label, type, symbols));
  ++pos;
  return n;
}

}  // namespace

Tree comb(const Tree& t) {
  Tree out = t;
  int next = 0;
  auto ord = inputOrder(t.root, next);
  Perm top = t.perm.empty() ? identityPerm(static_cast<int>(ord.size())) : t.perm;
  if (top.size() != ord.size() || !isValidPerm(top)) raise(ErrorCode::ArityMismatch, "top permutation does not match the leaf count");
  out.perm.resize(ord.size());
  for (size_t j = 0; j < ord.size(); ++j) out.perm[j] = ord[static_cast<size_t>(top[j] - 1)] + 1;
  clearDecos(out.root);
  return out;
}

Tree graft(const Tree& host0, const std::map<int, Tree>& plugs, const Operad& o) {
  Tree host = comb(host0);
  auto leaves = planarLeaves(host.root);
  const int l = static_cast<int>(leaves.size());
  std::set<std::string> taken;
  collectSymbols(host.root, taken);
  std::vector<const Tree*> atPlanar(static_cast<size_t>(l), nullptr);
  for (const auto& [j, plug] : plugs) {
    if (j < 1 || j > l) raise(ErrorCode::TypeMismatch, "no host input " + std::to_string(j));
    size_t p = static_cast<size_t>(host.perm[static_cast<size_t>(j - 1)] - 1);
    Value want = leaves[p]->type;
    Value got = outputOf(plug, o);
    if (got != want)
      raise(ErrorCode::TypeMismatch, "host input " + std::to_string(j) + " has type " + want.text() + " but the plug outputs " + got.text());
    atPlanar[p] = &plug;
  }
  int counter = 1;
  int idx = 0;
  std::vector<int> sizes;
  std::function<void(Node&)> rec = [&](Node& n) {
    if (n.isLeaf()) {
      const Tree* plug = atPlanar[static_cast<size_t>(idx++)];
      if (!plug) {
        sizes.push_back(1);
        return;
      }
      Node r = plug->root;
      renameFresh(r, counter, taken);
      Perm pp = plug->perm.empty() ? identityPerm(leafCount(r)) : plug->perm;
      if (!isIdentityPerm(pp)) {
        if (r.isLeaf()) raise(ErrorCode::ArityMismatch, "bare edge with a non-trivial permutation");
        r.deco = r.deco.empty() ? pp : composePerm(r.deco, pp);
      }
      sizes.push_back(leafCount(r));
      n = std::move(r);
      return;
    }
    for (Node& k : n.kids) rec(k);
  };
  Tree out = host;
  rec(out.root);
  out.perm = blockPerm(host.perm, sizes);
  return out;
}

EdgeTyping typecheckTree(const Tree& t, const Operad& o) {
  EdgeTyping et;
  et.root = typecheckNode(t.root, o, et);
  return et;
}

Tree canonicalize(const Tree& t) {
  Tree c = comb(t);
  canonicalizeSymbols(c);
  return c;
}

Value evalTree(const Tree& t, const Operad& o) {
  Value v = evalNode(t.root, o);
  if (!t.perm.empty() && !isIdentityPerm(t.perm)) {
    if (static_cast<int>(t.perm.size()) != leafCount(t.root)) raise(ErrorCode::ArityMismatch, "top permutation does not match the leaf count");
    v = act(o, v, t.perm);
  }
  return v;
}

LabelSet LabelSet::of(const Operad& o, const Bound& b) {
  auto ops = o.operations(b);
  auto types = o.types(b);
  if (!ops || !types) raise(ErrorCode::Unbounded, o.name() + " cannot enumerate within the bound");
  std::vector<std::pair<Value, Profile>> labels;
  for (const Value& f : *ops) labels.emplace_back(f, profileOf(o, f));
  return of(std::move(labels), std::move(*types));
}

LabelSet LabelSet::of(std::vector<std::pair<Value, Profile>> labels, std::vector<Value> types) {
  LabelSet s;
  s.labels = std::move(labels);
  s.types = std::move(types);
  for (size_t i = 0; i < s.labels.size(); ++i) s.byOutput[s.labels[i].second.output.text()].push_back(i);
  return s;
}

const std::vector<Node>& PlanarTreeEnumerator::exact(const Value& rootType, int nodes) {
  auto key = std::make_pair(rootType.text(), nodes);
  auto it = memo_.find(key);
  if (it != memo_.end()) return it->second;
  std::vector<Node> out;
  if (nodes == 0) {
    out.push_back(Node::leaf(rootType));
  } else {
    auto bt = labels_.byOutput.find(rootType.text());
    if (bt != labels_.byOutput.end()) {
      for (size_t li : bt->second) {
        const auto& [label, prof] = labels_.labels[li];
        const int k = prof.arity();
        const int rest = nodes - 1;
        if (k == 0) {
          if (rest == 0) out.push_back(Node::node("", label));
          continue;
        }
        std::vector<int> split(static_cast<size_t>(k), 0);
        std::function<void(int, int)> distribute = [&](int i, int left) {
          if (i == k - 1) {
            split[static_cast<size_t>(i)] = left;
            std::vector<const std::vector<Node>*> choices;
            for (int c = 0; c < k; ++c) {
              const auto& v = exact(prof.inputs[static_cast<size_t>(c)], split[static_cast<size_t>(c)]);
              if (v.empty()) return;
              choices.push_back(&v);
            }
            std::vector<size_t> at(static_cast<size_t>(k), 0);
            for (;;) {
              Node n = Node::node("", label);
              for (int c = 0; c < k; ++c) n.kids.push_back((*choices[static_cast<size_t>(c)])[at[static_cast<size_t>(c)]]);
              out.push_back(std::move(n));
              int c = k - 1;
              while (c >= 0 && ++at[static_cast<size_t>(c)] == choices[static_cast<size_t>(c)]->size()) at[static_cast<size_t>(c--)] = 0;
              if (c < 0) break;
            }
            return;
          }
          for (int a = 0; a <= left; ++a) {
            split[static_cast<size_t>(i)] = a;
            distribute(i + 1, left - a);
          }
        };
        distribute(0, rest);
      }
    }
  }
  return memo_.emplace(key, std::move(out)).first->second;
}

std::vector<Tree> enumerateTreesOver(const LabelSet& labels, int maxNodes) {
  PlanarTreeEnumerator en(labels);
  std::vector<Tree> out;
  for (int c = 0; c <= maxNodes; ++c)
    for (const Value& t : labels.types)
      for (const Node& n : en.exact(t, c)) {
        int l = leafCount(n);
        for (const Perm& p : allPerms(l)) {
          Tree tr{n, p};
          canonicalizeSymbols(tr);
          out.push_back(std::move(tr));
        }
      }
  return out;
}

std::vector<Tree> enumerateTrees(const Operad& o, int maxNodes) {
  return enumerateTreesOver(LabelSet::of(o, Bound{1 << 20, maxNodes}), maxNodes);
}

Tree parseTreeItems(const std::vector<SExpr>& items, size_t& pos, const TermParser& label, const TermParser& type) {
  if (pos >= items.size()) syntaxError(items.empty() ? SExpr{} : items.back(), "expected a tree");
  const SExpr& e = items[pos];
  Tree t;
  if (e.isForm("edge")) {
    if (e.items.size() != 2) syntaxError(e, "expected (edge TYPE)");
    t = Tree::edge(type(e.items[1]));
    ++pos;
    return t;
  }
  bool explicitPerm = false;
  if (e.isForm("perm")) {
    for (size_t i = 1; i < e.items.size(); ++i) t.perm.push_back(parsePermInt(e.items[i]));
    if (!isValidPerm(t.perm)) syntaxError(e, "not a permutation");
    explicitPerm = true;
    ++pos;
  }
  std::set<std::string> symbols;
  t.root = parseNode(items, pos, label, type, symbols);
  int l = leafCount(t.root);
  if (explicitPerm && static_cast<int>(t.perm.size()) != l) syntaxError(e, "permutation size differs from the leaf count");
  if (!explicitPerm) t.perm = identityPerm(l);
  return t;
}

Tree parseTreeText(const std::string& text, const Operad& o) {
  auto items = parseSExprs(text);
  size_t pos = 0;
  Tree t = parseTreeItems(
      items, pos, [&](const SExpr& e) { return o.parseOperation(e); }, [&](const SExpr& e) { return o.parseType(e); });
  if (pos != items.size()) syntaxError(items[pos], "trailing input after tree");
  return t;
}

}  // namespace opetope
