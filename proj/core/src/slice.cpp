#include "opetope/slice.hpp"

#include <algorithm>
#include <filesystem>
#include <fstream>
#include <sstream>

#include "opetope/pullback.hpp"

namespace opetope {

namespace {

void prefixSymbols(Node& n, const std::string& prefix) {
  if (n.isLeaf()) return;
  n.sym = prefix + n.sym;
  for (Node& k : n.kids) prefixSymbols(k, prefix);
}

void collectLeafTags(const Node& n, std::vector<int>& out) {
  if (n.isLeaf()) {
    out.push_back(std::stoi(n.sym.substr(1)));
    return;
  }
  for (const Node& k : n.kids) collectLeafTags(k, out);
}

void clearLeafTags(Node& n) {
  if (n.isLeaf()) {
    n.sym.clear();
    return;
  }
  for (Node& k : n.kids) clearLeafTags(k);
}

}  // namespace

SliceOperad::SliceOperad(OperadPtr base) : base_(std::move(base)) {}

Value SliceOperad::make(const Tree& t, const std::vector<std::string>& order) const {
  Tree c = comb(t);
  typecheckTree(c, *base_);
  return Value::slice(c, order, evalTree(c, *base_));
}

bool SliceOperad::hasType(const Value& g) const { return base_->profile(g).has_value(); }

std::optional<Profile> SliceOperad::profile(const Value& f) const {
  if (f.kind() != ValueKind::Slice) return std::nullopt;
  return Profile{f.inputs(), f.output()};
}

Value SliceOperad::composeRaw(const Value& f, const std::vector<Value>& gs) const {
  const Tree& tf = f.tree();
  std::map<std::string, size_t> index;
  for (size_t i = 0; i < f.order().size(); ++i) index[f.order()[i]] = i;
  int leafId = 0;
  std::function<Node(const Node&)> subst = [&](const Node& n) -> Node {
    if (n.isLeaf()) {
      Node l = n;
      l.sym = "#" + std::to_string(leafId++);
      return l;
    }
    size_t i = index.at(n.sym);
    std::vector<Node> kids;
    kids.reserve(n.kids.size());
    for (const Node& k : n.kids) kids.push_back(subst(k));
    const Tree& tg = gs[i].tree();
    std::vector<size_t> slotOfPlanar(kids.size());
    for (size_t j = 0; j < tg.perm.size(); ++j) slotOfPlanar[static_cast<size_t>(tg.perm[j] - 1)] = j;
    Node root = tg.root;
    prefixSymbols(root, std::to_string(i) + ".");
    size_t p = 0;
    std::function<void(Node&)> fill = [&](Node& m) {
      if (m.isLeaf()) {
        m = std::move(kids[slotOfPlanar[p++]]);
        return;
      }
      for (Node& c : m.kids) fill(c);
    };
    fill(root);
    return root;
  };
  Tree out;
  out.root = subst(tf.root);
  std::vector<int> tags;
  collectLeafTags(out.root, tags);
  std::vector<int> planarOf(tags.size());
  for (size_t q = 0; q < tags.size(); ++q) planarOf[static_cast<size_t>(tags[q])] = static_cast<int>(q);
  out.perm.resize(tf.perm.size());
  for (size_t j = 0; j < tf.perm.size(); ++j) out.perm[j] = planarOf[static_cast<size_t>(tf.perm[j] - 1)] + 1;
  clearLeafTags(out.root);
  std::vector<std::string> order;
  for (size_t i = 0; i < gs.size(); ++i)
    for (const std::string& s : gs[i].order()) order.push_back(std::to_string(i) + "." + s);
  return Value::slice(out, order, f.output());
}

Value SliceOperad::identityRaw(const Value& g) const {
  Profile p = profileOf(*base_, g);
  Node n = Node::node("A", g);
  for (const Value& x : p.inputs) n.kids.push_back(Node::leaf(x));
  return Value::slice(Tree{n, identityPerm(p.arity())}, {"A"}, g);
}

Value SliceOperad::actRaw(const Value& f, const Perm& s) const {
  return Value::slice(f.tree(), permuteList(f.order(), s), f.output());
}

bool SliceOperad::isIdentity(const Value& f) const {
  if (f.kind() != ValueKind::Slice) return false;
  const Tree& t = f.tree();
  if (t.root.isLeaf() || !isIdentityPerm(t.perm)) return false;
  for (const Node& k : t.root.kids)
    if (!k.isLeaf()) return false;
  return true;
}

std::optional<std::vector<Value>> SliceOperad::types(const Bound& b) const { return base_->operations(b); }

std::optional<std::vector<Value>> SliceOperad::operations(const Bound& b) const {
  auto baseOps = base_->operations(b);
  auto baseTypes = base_->types(b);
  if (!baseOps || !baseTypes) return std::nullopt;
  std::vector<std::pair<Value, Profile>> labels;
  for (const Value& g : *baseOps) labels.emplace_back(g, profileOf(*base_, g));
  LabelSet ls = LabelSet::of(std::move(labels), std::move(*baseTypes));
  std::vector<Value> out;
  for (const Tree& t : enumerateTreesOver(ls, std::min(b.maxNodes, b.maxArity))) {
    // A truncated base drops trees whose composite it lacks.
    Value output;
    try {
      output = evalTree(t, *base_);
    } catch (const Error& e) {
      if (e.code() != ErrorCode::IncompleteTable) throw;
      continue;
    }
    int k = nodeCount(t.root);
    std::vector<std::string> syms;
    for (int i = 0; i < k; ++i) syms.push_back(symbolName(i));
    for (const Perm& s : allPerms(k)) out.push_back(Value::slice(t, permuteList(syms, s), output));
  }
  return out;
}

Value SliceOperad::parseType(const SExpr& e) const { return base_->parseOperation(e); }

Value SliceOperad::parseOperation(const SExpr& e) const {
  if (!e.isForm("slice")) syntaxError(e, "expected (slice TREE (order SYM...))");
  size_t pos = 1;
  Tree t = parseTreeItems(
      e.items, pos, [&](const SExpr& x) { return base_->parseOperation(x); },
      [&](const SExpr& x) { return base_->parseType(x); });
  if (pos + 1 != e.items.size() || !e.items[pos].isForm("order")) syntaxError(e, "expected (order SYM...) after the tree");
  std::vector<std::string> order;
  for (size_t i = 1; i < e.items[pos].items.size(); ++i) {
    const SExpr& s = e.items[pos].items[i];
    if (!s.isAtom()) syntaxError(s, "expected a symbol");
    if (!findNode(t.root, s.atom)) syntaxError(s, "ordering names unknown symbol " + s.atom);
    order.push_back(s.atom);
  }
  return make(t, order);
}

std::shared_ptr<const SliceOperad> sliceOperad(OperadPtr o) { return std::make_shared<const SliceOperad>(std::move(o)); }

OperadPtr iterSlice(OperadPtr o, int n) {
  for (int i = 0; i < n; ++i) o = sliceOperad(o);
  return o;
}

OperadPtr operadForOperads(const std::vector<std::string>& s) { return sliceOperad(terminalOver(s)); }

bool isDegenerate(const Operad& o, const Value& f, int level) {
  if (o.isIdentity(f)) return true;
  if (level == 0) return false;
  Profile p = profileOf(o, f);
  if (p.arity() == 0) return true;
  const auto* s = dynamic_cast<const SliceOperad*>(&o);
  if (!s) raise(ErrorCode::UnknownOperation, "operad " + o.name() + " is not a slice operad");
  for (const Value& x : p.inputs)
    if (isDegenerate(s->base(), x, level - 1)) return true;
  return false;
}

OperadPtr operadByName(const std::string& spec) {
  std::string s = spec;
  int plus = 0;
  while (!s.empty() && s.back() == '+') {
    s.pop_back();
    ++plus;
  }
  OperadPtr base;
  auto digitsAfter = [&](size_t at) {
    return s.size() > at && std::all_of(s.begin() + static_cast<long>(at), s.end(), [](char c) { return c >= '0' && c <= '9'; });
  };
  if (s == "I") {
    base = operadI();
  } else if (s == "K") {
    base = operadK();
  } else if (s == "T") {
    base = terminalOperad();
  } else if (s.size() > 1 && s[0] == 'T' && digitsAfter(1)) {
    base = operadTTruncated(std::stoi(s.substr(1)));
  } else if (s.size() > 1 && s[0] == 'F' && digitsAfter(1)) {
    base = operadF(std::stoi(s.substr(1)));
  } else if (!s.empty() && s.front() == '{') {
    base = TabulatedOperad::fromJson(s);
  } else if (std::filesystem::exists(s)) {
    std::ifstream in(s);
    std::stringstream buf;
    buf << in.rdbuf();
    base = TabulatedOperad::fromJson(buf.str());
  } else {
    raise(ErrorCode::UnknownOperation, "unknown operad '" + spec + "'");
  }
  return iterSlice(base, plus);
}

}  // namespace opetope
