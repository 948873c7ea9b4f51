#include "opetope/pullback.hpp"

#include <functional>

#include "opetope/tabulated.hpp"

namespace opetope {

PullbackOperad::PullbackOperad(OperadPtr base, TypeMap typeOf, Fiber fiber, Universe all, std::string name)
    : base_(std::move(base)), typeOf_(std::move(typeOf)), fiber_(std::move(fiber)), all_(std::move(all)),
      name_(std::move(name)) {}

bool PullbackOperad::hasType(const Value& y) const { return typeOf_(y).has_value(); }

std::optional<Profile> PullbackOperad::profile(const Value& f) const {
  if (f.kind() != ValueKind::Pullback) return std::nullopt;
  return Profile{f.inputs(), f.output()};
}

Value PullbackOperad::composeRaw(const Value& f, const std::vector<Value>& gs) const {
  std::vector<Value> baseArgs;
  std::vector<Value> ins;
  for (const Value& g : gs) {
    baseArgs.push_back(g.base());
    ins.insert(ins.end(), g.inputs().begin(), g.inputs().end());
  }
  return Value::pullback(base_->composeRaw(f.base(), baseArgs), std::move(ins), f.output());
}

Value PullbackOperad::identityRaw(const Value& y) const {
  auto s = typeOf_(y);
  if (!s) raise(ErrorCode::UnknownType, y.text() + " in " + name_);
  return Value::pullback(base_->identityRaw(*s), {y}, y);
}

Value PullbackOperad::actRaw(const Value& f, const Perm& s) const {
  return Value::pullback(base_->actRaw(f.base(), s), permuteList(f.inputs(), s), f.output());
}

bool PullbackOperad::isIdentity(const Value& f) const {
  return f.kind() == ValueKind::Pullback && f.inputs().size() == 1 && f.inputs()[0] == f.output() &&
         base_->isIdentity(f.base());
}

std::optional<std::vector<Value>> PullbackOperad::types(const Bound&) const { return all_(); }

std::optional<std::vector<Value>> PullbackOperad::operations(const Bound& b) const {
  auto ops = base_->operations(b);
  if (!ops) return std::nullopt;
  std::vector<Value> out;
  for (const Value& o : *ops) {
    Profile p = profileOf(*base_, o);
    std::vector<std::vector<Value>> fibers;
    for (const Value& x : p.inputs) fibers.push_back(fiber_(x));
    std::vector<Value> outs = fiber_(p.output);
    std::vector<Value> cur;
    std::function<void(size_t)> rec = [&](size_t i) {
      if (i == fibers.size()) {
        for (const Value& y : outs) out.push_back(Value::pullback(o, cur, y));
        return;
      }
      for (const Value& y : fibers[i]) {
        cur.push_back(y);
        rec(i + 1);
        cur.pop_back();
      }
    };
    rec(0);
  }
  return out;
}

Value PullbackOperad::lift(const Value& op, const std::vector<Value>& ins, const Value& out) const {
  Profile p = profileOf(*base_, op);
  if (p.arity() != static_cast<int>(ins.size())) raise(ErrorCode::ProfileMismatch, "lift arity of " + op.text());
  for (size_t i = 0; i < ins.size(); ++i) {
    auto s = typeOf_(ins[i]);
    if (!s) raise(ErrorCode::UnknownType, ins[i].text() + " in " + name_);
    if (*s != p.inputs[i]) raise(ErrorCode::ProfileMismatch, "input " + std::to_string(i + 1) + " of lift of " + op.text());
  }
  auto s = typeOf_(out);
  if (!s) raise(ErrorCode::UnknownType, out.text() + " in " + name_);
  if (*s != p.output) raise(ErrorCode::ProfileMismatch, "output of lift of " + op.text());
  return Value::pullback(op, ins, out);
}

Value PullbackOperad::parseOperation(const SExpr& e) const {
  if (!e.isForm("pb") || e.items.size() != 4 || !e.items[2].isForm("in") || !e.items[3].isForm("out") ||
      e.items[3].items.size() != 2)
    syntaxError(e, "expected (pb OP (in Y...) (out Y))");
  Value op = base_->parseOperation(e.items[1]);
  std::vector<Value> ins;
  for (size_t i = 1; i < e.items[2].items.size(); ++i) ins.push_back(parseType(e.items[2].items[i]));
  return lift(op, ins, parseType(e.items[3].items[1]));
}

std::shared_ptr<PullbackOperad> pullbackOperad(OperadPtr o, const std::map<std::string, Value>& f) {
  for (const auto& [y, s] : f)
    if (!o->hasType(s)) raise(ErrorCode::UnknownType, y + " maps to " + s.text() + ", not a type of " + o->name());
  auto table = std::make_shared<const std::map<std::string, Value>>(f);
  return std::make_shared<PullbackOperad>(
      o,
      [table](const Value& y) -> std::optional<Value> {
        if (!y.isAtom()) return std::nullopt;
        auto it = table->find(y.name());
        if (it == table->end()) return std::nullopt;
        return it->second;
      },
      [table](const Value& s) {
        std::vector<Value> ys;
        for (const auto& [y, t] : *table)
          if (t == s) ys.push_back(Value::atom(y));
        return ys;
      },
      [table]() {
        std::vector<Value> ys;
        for (const auto& kv : *table) ys.push_back(Value::atom(kv.first));
        return ys;
      },
      o->name() + "_Y");
}

std::shared_ptr<PullbackOperad> terminalOver(const std::vector<std::string>& s) {
  std::map<std::string, Value> f;
  for (const std::string& x : s) f[x] = Value::atom("pt");
  auto p = pullbackOperad(terminalOperad(), f);
  return p;
}

}  // namespace opetope
