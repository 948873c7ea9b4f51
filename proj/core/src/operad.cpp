#include "opetope/operad.hpp"

#include <functional>
#include <unordered_map>

namespace opetope {

std::string Profile::text() const {
  std::string s = "(";
  for (size_t i = 0; i < inputs.size(); ++i) {
    if (i) s += ", ";
    s += inputs[i].text();
  }
  return s + "; " + output.text() + ")";
}

std::string Report::summary() const {
  if (ok) return "pass (" + std::to_string(checked) + " instances)";
  std::string s = "fail: " + std::to_string(violations.size()) + " violation(s)";
  if (!violations.empty()) s += "; first: " + violations.front();
  return s;
}

bool Operad::isIdentity(const Value& f) const {
  auto p = profile(f);
  if (!p || p->arity() != 1 || p->inputs[0] != p->output) return false;
  return identityRaw(p->output) == f;
}

Value Operad::parseType(const SExpr& e) const {
  if (!e.isAtom()) syntaxError(e, "expected a type identifier");
  Value v = Value::atom(e.atom);
  if (!hasType(v)) raise(ErrorCode::UnknownType, e.atom + " at " + positionOf(e));
  return v;
}

Value Operad::parseOperation(const SExpr& e) const {
  if (!e.isAtom()) syntaxError(e, "expected an operation identifier");
  Value v = Value::atom(e.atom);
  if (!profile(v)) raise(ErrorCode::UnknownOperation, e.atom + " at " + positionOf(e));
  return v;
}

Profile profileOf(const Operad& o, const Value& f) {
  auto p = o.profile(f);
  if (!p) raise(ErrorCode::UnknownOperation, f.text() + " in " + o.name());
  return *p;
}

Value compose(const Operad& o, const Value& f, const std::vector<Value>& gs) {
  Profile pf = profileOf(o, f);
  if (static_cast<int>(gs.size()) != pf.arity())
    raise(ErrorCode::ProfileMismatch, "operation " + f.text() + " has arity " + std::to_string(pf.arity()) +
                                          " but " + std::to_string(gs.size()) + " arguments were given");
  for (size_t i = 0; i < gs.size(); ++i) {
    Profile pg = profileOf(o, gs[i]);
    if (pg.output != pf.inputs[i])
      raise(ErrorCode::ProfileMismatch, "slot " + std::to_string(i + 1) + " of " + f.text() + " expects " +
                                            pf.inputs[i].text() + " but got output " + pg.output.text());
  }
  return o.composeRaw(f, gs);
}

Value identity(const Operad& o, const Value& x) {
  if (!o.hasType(x)) raise(ErrorCode::UnknownType, x.text() + " in " + o.name());
  return o.identityRaw(x);
}

Value act(const Operad& o, const Value& f, const Perm& s) {
  Profile pf = profileOf(o, f);
  if (static_cast<int>(s.size()) != pf.arity() || !isValidPerm(s))
    raise(ErrorCode::ArityMismatch, "permutation " + permText(s) + " does not act on arity " + std::to_string(pf.arity()));
  return o.actRaw(f, s);
}

Value parseOperationText(const Operad& o, const std::string& text) { return o.parseOperation(parseSExpr(text)); }
Value parseTypeText(const Operad& o, const std::string& text) { return o.parseType(parseSExpr(text)); }

namespace {

std::string tupleText(const Value& f, const std::vector<Value>& gs) {
  std::string s = f.text() + "·(";
  for (size_t i = 0; i < gs.size(); ++i) {
    if (i) s += ", ";
    s += gs[i].text();
  }
  return s + ")";
}

// Calls visit for every tuple (g_1..g_k) with g_i drawn from byOutput[inputs[i]]
// and total arity <= limit.
void forEachArgs(const std::vector<Value>& inputs,
                 const std::unordered_map<std::string, std::vector<std::pair<Value, Profile>>>& byOutput,
                 int limit, const std::function<void(const std::vector<Value>&)>& visit) {
  std::vector<Value> cur;
  std::function<void(size_t, int)> rec = [&](size_t i, int used) {
    if (i == inputs.size()) {
      visit(cur);
      return;
    }
    auto it = byOutput.find(inputs[i].text());
    if (it == byOutput.end()) return;
    for (const auto& [g, pg] : it->second) {
      if (used + pg.arity() > limit) continue;
      cur.push_back(g);
      rec(i + 1, used + pg.arity());
      cur.pop_back();
    }
  };
  rec(0, 0);
}

}  // namespace

Report checkOperadAxioms(const Operad& o, const Bound& b) {
  Report r;
  auto ops = o.operations(b);
  if (!ops) raise(ErrorCode::Unbounded, o.name() + " cannot enumerate operations");
  std::unordered_map<std::string, std::vector<std::pair<Value, Profile>>> byOutput;
  for (const Value& f : *ops) {
    Profile p = profileOf(o, f);
    byOutput[p.output.text()].emplace_back(f, p);
  }
  const int limit = b.maxArity;
  for (const Value& f : *ops) {
    Profile pf = profileOf(o, f);
    // (b) unit laws
    std::vector<Value> ids;
    for (const Value& x : pf.inputs) ids.push_back(o.identityRaw(x));
    ++r.checked;
    if (o.composeRaw(f, ids) != f) r.fail("right unit law fails at " + f.text());
    ++r.checked;
    if (o.composeRaw(o.identityRaw(pf.output), {f}) != f) r.fail("left unit law fails at " + f.text());
    // (c) action composition
    auto perms = allPerms(pf.arity());
    ++r.checked;
    if (o.actRaw(f, identityPerm(pf.arity())) != f) r.fail("identity permutation moves " + f.text());
    for (const Perm& s : perms)
      for (const Perm& t : perms) {
        ++r.checked;
        if (o.actRaw(o.actRaw(f, s), t) != o.actRaw(f, composePerm(s, t)))
          r.fail("action composition fails at " + f.text() + " with " + permText(s) + ", " + permText(t));
      }
    forEachArgs(pf.inputs, byOutput, limit, [&](const std::vector<Value>& gs) {
      Value fg = o.composeRaw(f, gs);
      // (d) action compatibility
      std::vector<int> sizes;
      for (const Value& g : gs) sizes.push_back(profileOf(o, g).arity());
      for (const Perm& s : perms) {
        ++r.checked;
        Value lhs = o.composeRaw(o.actRaw(f, s), permuteList(gs, s));
        Value rhs = o.actRaw(fg, blockPerm(s, sizes));
        if (lhs != rhs) r.fail("action compatibility fails at " + tupleText(f, gs) + " with " + permText(s));
      }
      // (a) associativity
      std::vector<Value> inner;
      for (const Value& g : gs) {
        Profile pg = profileOf(o, g);
        inner.insert(inner.end(), pg.inputs.begin(), pg.inputs.end());
      }
      forEachArgs(inner, byOutput, limit, [&](const std::vector<Value>& hs) {
        ++r.checked;
        std::vector<Value> ghs;
        size_t pos = 0;
        for (const Value& g : gs) {
          int k = profileOf(o, g).arity();
          std::vector<Value> part(hs.begin() + static_cast<long>(pos), hs.begin() + static_cast<long>(pos + k));
          pos += static_cast<size_t>(k);
          ghs.push_back(o.composeRaw(g, part));
        }
        if (o.composeRaw(f, ghs) != o.composeRaw(fg, hs))
          r.fail("associativity fails at " + tupleText(f, gs) + " with " + tupleText(Value::atom("_"), hs));
      });
    });
  }
  return r;
}

}  // namespace opetope
