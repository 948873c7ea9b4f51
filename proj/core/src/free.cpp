#include "opetope/free.hpp"

namespace opetope {

FreeOperad::FreeOperad(const Signature& sig, std::string name)
    : gens_(std::make_shared<TabulatedOperad>(name + "-generators", 1 << 20)), name_(std::move(name)) {
  for (const std::string& x : sig.types) gens_->addType(x);
  for (const auto& [g, p] : sig.generators) {
    std::vector<std::string> ins;
    for (const Value& x : p.inputs) ins.push_back(x.name());
    gens_->addOperation(g, ins, p.output.name());
  }
}

Value FreeOperad::generator(const std::string& g) const {
  Value label = Value::atom(g);
  Profile p = profileOf(*gens_, label);
  Node n = Node::node("A", label);
  for (const Value& x : p.inputs) n.kids.push_back(Node::leaf(x));
  return Value::free(Tree{n, identityPerm(p.arity())}, p.output);
}

Value FreeOperad::make(const Tree& t) const {
  EdgeTyping et = typecheckTree(t, *gens_);
  return Value::free(canonicalize(t), et.root);
}

bool FreeOperad::hasType(const Value& x) const { return gens_->hasType(x); }

std::optional<Profile> FreeOperad::profile(const Value& f) const {
  if (f.kind() != ValueKind::Free) return std::nullopt;
  return Profile{f.inputs(), f.output()};
}

Value FreeOperad::composeRaw(const Value& f, const std::vector<Value>& gs) const {
  std::map<int, Tree> plugs;
  for (size_t i = 0; i < gs.size(); ++i) plugs.emplace(static_cast<int>(i) + 1, gs[i].tree());
  return Value::free(canonicalize(graft(f.tree(), plugs, *gens_)), f.output());
}

Value FreeOperad::identityRaw(const Value& x) const { return Value::free(Tree::edge(x), x); }

Value FreeOperad::actRaw(const Value& f, const Perm& s) const {
  Tree t = f.tree();
  t.perm = composePerm(t.perm, s);
  return Value::free(t, f.output());
}

bool FreeOperad::isIdentity(const Value& f) const { return f.kind() == ValueKind::Free && f.tree().isEdge(); }

std::optional<std::vector<Value>> FreeOperad::types(const Bound&) const { return gens_->allTypes(); }

std::optional<std::vector<Value>> FreeOperad::operations(const Bound& b) const {
  std::vector<Value> out;
  for (const Tree& t : enumerateTreesOver(LabelSet::of(*gens_, Bound{1 << 20, b.maxNodes}), b.maxNodes)) {
    if (leafCount(t.root) > b.maxArity) continue;
    out.push_back(make(t));
  }
  return out;
}

Value FreeOperad::parseOperation(const SExpr& e) const {
  if (!e.isForm("free")) syntaxError(e, "expected (free TREE)");
  size_t pos = 1;
  Tree t = parseTreeItems(
      e.items, pos, [&](const SExpr& x) { return gens_->parseOperation(x); }, [&](const SExpr& x) { return gens_->parseType(x); });
  if (pos != e.items.size()) syntaxError(e, "trailing items in (free ...)");
  return make(t);
}

std::shared_ptr<FreeOperad> freeOperad(const Signature& sig, std::string name) {
  return std::make_shared<FreeOperad>(sig, std::move(name));
}

}  // namespace opetope
