#include "opetope/value.hpp"

#include "opetope/error.hpp"

namespace opetope {

struct ValueData {
  ValueKind kind = ValueKind::Null;
  std::string text;
  size_t hash = 0;
  std::string name;
  std::shared_ptr<const Tree> tree;
  std::vector<std::string> order;
  Value base;
  std::vector<Value> inputs;
  Value output;
};

namespace {

const std::string kEmpty;
const std::vector<std::string> kNoOrder;
const std::vector<Value> kNoValues;
const Value kNullValue;

[[noreturn]] void wrongKind(const char* what) {
  raise(ErrorCode::UnknownOperation, std::string("value has no ") + what);
}

void appendNode(std::string& out, const Node& n) {
  if (n.isLeaf()) {
    out += '*';
    out += n.type.text();
    return;
  }
  out += '(';
  out += n.sym;
  out += ':';
  out += n.label.text();
  for (const Node& k : n.kids) {
    out += ' ';
    appendNode(out, k);
  }
  out += ')';
}

void collectLeaves(const Node& n, std::vector<const Node*>& out) {
  if (n.isLeaf()) {
    out.push_back(&n);
    return;
  }
  for (const Node& k : n.kids) collectLeaves(k, out);
}

void collectNodes(const Node& n, std::vector<const Node*>& out) {
  if (n.isLeaf()) return;
  out.push_back(&n);
  for (const Node& k : n.kids) collectNodes(k, out);
}

void renameDfs(Node& n, int& counter, std::map<std::string, std::string>& map) {
  if (n.isLeaf()) return;
  std::string fresh = symbolName(counter++);
  if (!n.sym.empty() && !map.emplace(n.sym, fresh).second)
    raise(ErrorCode::SymbolCollision, "symbol " + n.sym + " used twice");
  n.sym = fresh;
  for (Node& k : n.kids) renameDfs(k, counter, map);
}

std::shared_ptr<ValueData> finish(std::shared_ptr<ValueData> d) {
  d->hash = std::hash<std::string>{}(d->text);
  return d;
}

}  // namespace

Node Node::leaf(const Value& type) {
  Node n;
  n.type = type;
  return n;
}

Node Node::node(const std::string& sym, const Value& label, std::vector<Node> kids) {
  Node n;
  n.sym = sym;
  n.label = label;
  n.kids = std::move(kids);
  return n;
}

Tree Tree::edge(const Value& type) {
  Tree t;
  t.root = Node::leaf(type);
  t.perm = {1};
  return t;
}

int leafCount(const Node& n) {
  if (n.isLeaf()) return 1;
  int c = 0;
  for (const Node& k : n.kids) c += leafCount(k);
  return c;
}

int nodeCount(const Node& n) {
  if (n.isLeaf()) return 0;
  int c = 1;
  for (const Node& k : n.kids) c += nodeCount(k);
  return c;
}

std::vector<const Node*> planarLeaves(const Node& n) {
  std::vector<const Node*> out;
  collectLeaves(n, out);
  return out;
}

std::vector<const Node*> preorderNodes(const Node& n) {
  std::vector<const Node*> out;
  collectNodes(n, out);
  return out;
}

const Node* findNode(const Node& n, const std::string& sym) {
  if (n.isLeaf()) return nullptr;
  if (n.sym == sym) return &n;
  for (const Node& k : n.kids)
    if (const Node* f = findNode(k, sym)) return f;
  return nullptr;
}

std::string symbolName(int index) {
  std::string s;
  int i = index + 1;
  while (i > 0) {
    int r = (i - 1) % 26;
    s.insert(s.begin(), static_cast<char>('A' + r));
    i = (i - 1) / 26;
  }
  return s;
}

std::map<std::string, std::string> canonicalizeSymbols(Tree& t) {
  std::map<std::string, std::string> map;
  int counter = 0;
  renameDfs(t.root, counter, map);
  return map;
}

void normalizePerm(Tree& t) {
  int l = leafCount(t.root);
  if (t.perm.empty()) t.perm = identityPerm(l);
  if (static_cast<int>(t.perm.size()) != l || !isValidPerm(t.perm))
    raise(ErrorCode::ArityMismatch, "top permutation does not match the leaf count");
}

std::string nodeText(const Node& n) {
  std::string s;
  appendNode(s, n);
  return s;
}

std::string treeText(const Tree& t) {
  if (t.root.isLeaf()) return "(edge " + t.root.type.text() + ")";
  std::string s;
  if (!t.perm.empty() && !isIdentityPerm(t.perm)) {
    s = "(perm";
    for (int i : t.perm) s += " " + std::to_string(i);
    s += ") ";
  }
  appendNode(s, t.root);
  return s;
}

Value Value::atom(const std::string& name) {
  if (name.empty()) raise(ErrorCode::SyntaxError, "empty identifier");
  auto d = std::make_shared<ValueData>();
  d->kind = ValueKind::Atom;
  d->name = name;
  d->text = name;
  Value v;
  v.d_ = finish(std::move(d));
  return v;
}

Value Value::slice(const Tree& t0, const std::vector<std::string>& order, const Value& output) {
  auto tree = std::make_shared<Tree>(t0);
  normalizePerm(*tree);
  auto map = canonicalizeSymbols(*tree);
  if (order.size() != map.size()) raise(ErrorCode::ValidationFailed, "ordering must list every node exactly once");
  auto d = std::make_shared<ValueData>();
  d->kind = ValueKind::Slice;
  std::vector<bool> seen(map.size(), false);
  for (const std::string& s : order) {
    auto it = map.find(s);
    if (it == map.end()) raise(ErrorCode::ValidationFailed, "ordering names unknown symbol " + s);
    d->order.push_back(it->second);
  }
  for (const std::string& s : d->order) {
    const Node* n = findNode(tree->root, s);
    size_t idx = 0;
    for (const Node* m : preorderNodes(tree->root)) {
      if (m == n) break;
      ++idx;
    }
    if (seen[idx]) raise(ErrorCode::ValidationFailed, "ordering repeats symbol " + s);
    seen[idx] = true;
    d->inputs.push_back(n->label);
  }
  d->output = output;
  d->text = "(slice " + treeText(*tree) + " (order";
  for (const std::string& s : d->order) d->text += " " + s;
  d->text += "))";
  d->tree = std::move(tree);
  Value v;
  v.d_ = finish(std::move(d));
  return v;
}

Value Value::free(const Tree& t0, const Value& outputType) {
  auto tree = std::make_shared<Tree>(t0);
  normalizePerm(*tree);
  canonicalizeSymbols(*tree);
  auto d = std::make_shared<ValueData>();
  d->kind = ValueKind::Free;
  auto leaves = planarLeaves(tree->root);
  for (int i : tree->perm) d->inputs.push_back(leaves[static_cast<size_t>(i - 1)]->type);
  d->output = outputType;
  d->text = "(free " + treeText(*tree) + ")";
  d->tree = std::move(tree);
  Value v;
  v.d_ = finish(std::move(d));
  return v;
}

Value Value::pullback(const Value& base, std::vector<Value> ins, const Value& out) {
  auto d = std::make_shared<ValueData>();
  d->kind = ValueKind::Pullback;
  d->base = base;
  d->text = "(pb " + base.text() + " (in";
  for (const Value& y : ins) d->text += " " + y.text();
  d->text += ") (out " + out.text() + "))";
  d->inputs = std::move(ins);
  d->output = out;
  Value v;
  v.d_ = finish(std::move(d));
  return v;
}

ValueKind Value::kind() const { return d_ ? d_->kind : ValueKind::Null; }
const std::string& Value::text() const { return d_ ? d_->text : kEmpty; }
size_t Value::hash() const { return d_ ? d_->hash : 0; }

const std::string& Value::name() const {
  if (kind() != ValueKind::Atom) wrongKind("name");
  return d_->name;
}

const Tree& Value::tree() const {
  if (!d_ || !d_->tree) wrongKind("tree");
  return *d_->tree;
}

const std::vector<std::string>& Value::order() const {
  if (kind() != ValueKind::Slice) wrongKind("ordering");
  return d_->order;
}

const Value& Value::base() const {
  if (kind() != ValueKind::Pullback) wrongKind("base operation");
  return d_->base;
}

const std::vector<Value>& Value::inputs() const { return d_ ? d_->inputs : kNoValues; }

const Value& Value::output() const {
  return d_ ? d_->output : kNullValue;
}

bool operator==(const Value& a, const Value& b) {
  if (a.d_ == b.d_) return true;
  if (!a.d_ || !b.d_) return false;
  return a.d_->hash == b.d_->hash && a.d_->text == b.d_->text;
}

std::strong_ordering operator<=>(const Value& a, const Value& b) { return a.text() <=> b.text(); }

}  // namespace opetope
