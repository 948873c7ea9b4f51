#include "opetope/tabulated.hpp"

#include <algorithm>
#include <functional>
#include <json.hpp>
#include <set>

namespace opetope {

using nlohmann::json;

namespace {

std::string composeKey(const std::string& f, const std::vector<std::string>& gs) {
  std::string k = f + "(";
  for (size_t i = 0; i < gs.size(); ++i) {
    if (i) k += ",";
    k += gs[i];
  }
  return k + ")";
}

std::string actionKey(const std::string& f, const Perm& s) { return f + permText(s); }

void rejectUnknown(const json& j, std::initializer_list<const char*> allowed, const std::string& where) {
  if (!j.is_object()) raise(ErrorCode::SyntaxError, where + " must be a JSON object");
  for (auto it = j.begin(); it != j.end(); ++it) {
    bool ok = false;
    for (const char* a : allowed) ok = ok || it.key() == a;
    if (!ok) raise(ErrorCode::SyntaxError, "unknown field '" + it.key() + "' in " + where);
  }
}

}  // namespace

TabulatedOperad::TabulatedOperad(std::string name, int arityBound) : name_(std::move(name)), arityBound_(arityBound) {}

void TabulatedOperad::addType(const std::string& x) {
  Value v = Value::atom(x);
  if (std::find(types_.begin(), types_.end(), v) == types_.end()) types_.push_back(v);
}

void TabulatedOperad::addOperation(const std::string& id, const std::vector<std::string>& inputs,
                                   const std::string& output) {
  Profile p;
  for (const std::string& x : inputs) {
    if (!hasType(Value::atom(x))) raise(ErrorCode::UnknownType, x + " in profile of " + id);
    p.inputs.push_back(Value::atom(x));
  }
  if (!hasType(Value::atom(output))) raise(ErrorCode::UnknownType, output + " in profile of " + id);
  p.output = Value::atom(output);
  if (!profiles_.emplace(id, p).second) raise(ErrorCode::ValidationFailed, "operation " + id + " declared twice");
  ops_.push_back(Value::atom(id));
}

void TabulatedOperad::setComposite(const std::string& f, const std::vector<std::string>& gs, const std::string& result) {
  std::vector<Value> args;
  for (const std::string& g : gs) args.push_back(Value::atom(g));
  Profile pf = profileOf(*this, Value::atom(f));
  if (pf.arity() != static_cast<int>(gs.size())) raise(ErrorCode::ProfileMismatch, "composite entry " + composeKey(f, gs));
  Profile expect;
  expect.output = pf.output;
  for (size_t i = 0; i < gs.size(); ++i) {
    Profile pg = profileOf(*this, args[i]);
    if (pg.output != pf.inputs[i])
      raise(ErrorCode::ProfileMismatch, "slot " + std::to_string(i + 1) + " of composite entry " + composeKey(f, gs));
    expect.inputs.insert(expect.inputs.end(), pg.inputs.begin(), pg.inputs.end());
  }
  if (profileOf(*this, Value::atom(result)) != expect)
    raise(ErrorCode::ProfileMismatch, "composite entry " + composeKey(f, gs) + " has result with wrong profile");
  compose_[composeKey(f, gs)] = result;
}

void TabulatedOperad::setIdentity(const std::string& x, const std::string& op) {
  Profile p = profileOf(*this, Value::atom(op));
  if (p.arity() != 1 || p.inputs[0] != Value::atom(x) || p.output != Value::atom(x))
    raise(ErrorCode::ProfileMismatch, "identity at " + x + " must have profile (" + x + "; " + x + ")");
  identities_[x] = op;
}

void TabulatedOperad::setAction(const std::string& f, const Perm& s, const std::string& result) {
  Profile pf = profileOf(*this, Value::atom(f));
  if (static_cast<int>(s.size()) != pf.arity() || !isValidPerm(s))
    raise(ErrorCode::ArityMismatch, "action entry for " + f);
  Profile expect{permuteList(pf.inputs, s), pf.output};
  if (profileOf(*this, Value::atom(result)) != expect)
    raise(ErrorCode::ProfileMismatch, "action entry " + actionKey(f, s) + " has result with wrong profile");
  action_[actionKey(f, s)] = result;
}

bool TabulatedOperad::hasType(const Value& x) const {
  return x.isAtom() && std::find(types_.begin(), types_.end(), x) != types_.end();
}

std::optional<Profile> TabulatedOperad::profile(const Value& f) const {
  if (!f.isAtom()) return std::nullopt;
  auto it = profiles_.find(f.name());
  if (it == profiles_.end()) return std::nullopt;
  return it->second;
}

Value TabulatedOperad::composeRaw(const Value& f, const std::vector<Value>& gs) const {
  std::vector<std::string> names;
  for (const Value& g : gs) names.push_back(g.name());
  auto it = compose_.find(composeKey(f.name(), names));
  if (it != compose_.end()) return Value::atom(it->second);
  // Entries forced by the unit laws need not be tabulated.
  if (gs.empty()) return f;
  if (std::all_of(gs.begin(), gs.end(), [&](const Value& g) { return isIdentity(g); })) return f;
  if (gs.size() == 1 && isIdentity(f)) return gs[0];
  raise(ErrorCode::IncompleteTable, "no composite for " + composeKey(f.name(), names) + " in " + name_);
}

Value TabulatedOperad::identityRaw(const Value& x) const {
  auto it = identities_.find(x.name());
  if (it == identities_.end()) raise(ErrorCode::IncompleteTable, "no identity at " + x.text() + " in " + name_);
  return Value::atom(it->second);
}

Value TabulatedOperad::actRaw(const Value& f, const Perm& s) const {
  auto it = action_.find(actionKey(f.name(), s));
  if (it != action_.end()) return Value::atom(it->second);
  if (isIdentityPerm(s)) return f;
  raise(ErrorCode::IncompleteTable, "no action entry for " + actionKey(f.name(), s) + " in " + name_);
}


std::optional<std::vector<Value>> TabulatedOperad::types(const Bound&) const { return types_; }

std::optional<std::vector<Value>> TabulatedOperad::operations(const Bound& b) const {
  std::vector<Value> out;
  for (const Value& f : ops_)
    if (profiles_.at(f.name()).arity() <= b.maxArity) out.push_back(f);
  return out;
}

std::string TabulatedOperad::toJson() const {
  json j;
  j["name"] = name_;
  j["arityBound"] = arityBound_;
  j["types"] = json::array();
  for (const Value& x : types_) j["types"].push_back(x.name());
  j["operations"] = json::array();
  for (const Value& f : ops_) {
    const Profile& p = profiles_.at(f.name());
    json ins = json::array();
    for (const Value& x : p.inputs) ins.push_back(x.name());
    j["operations"].push_back({{"id", f.name()}, {"inputs", ins}, {"output", p.output.name()}});
  }
  j["identities"] = json::object();
  for (const auto& [x, op] : identities_) j["identities"][x] = op;
  j["compose"] = json::array();
  for (const auto& [k, r] : compose_) {
    auto open = k.find('(');
    std::string f = k.substr(0, open);
    std::string inner = k.substr(open + 1, k.size() - open - 2);
    json args = json::array();
    size_t start = 0;
    while (!inner.empty() && start <= inner.size()) {
      size_t comma = inner.find(',', start);
      if (comma == std::string::npos) comma = inner.size();
      args.push_back(inner.substr(start, comma - start));
      start = comma + 1;
    }
    j["compose"].push_back({{"f", f}, {"args", args}, {"result", r}});
  }
  j["action"] = json::array();
  for (const auto& [k, r] : action_) {
    auto open = k.find('(');
    std::string f = k.substr(0, open);
    json perm = json::array();
    std::string inner = k.substr(open + 1, k.size() - open - 2);
    size_t start = 0;
    while (start < inner.size()) {
      size_t sp = inner.find(' ', start);
      if (sp == std::string::npos) sp = inner.size();
      perm.push_back(std::stoi(inner.substr(start, sp - start)));
      start = sp + 1;
    }
    j["action"].push_back({{"f", f}, {"perm", perm}, {"result", r}});
  }
  return j.dump(2);
}

std::shared_ptr<TabulatedOperad> TabulatedOperad::fromJson(const std::string& text) {
  json j;
  try {
    j = json::parse(text);
  } catch (const json::exception& e) {
    raise(ErrorCode::SyntaxError, std::string("operad document: ") + e.what());
  }
  rejectUnknown(j, {"name", "arityBound", "types", "operations", "compose", "identities", "action"}, "operad document");
  try {
    auto o = std::make_shared<TabulatedOperad>(j.value("name", std::string("operad")), j.value("arityBound", 3));
    for (const auto& x : j.at("types")) o->addType(x.get<std::string>());
    for (const auto& op : j.at("operations")) {
      rejectUnknown(op, {"id", "inputs", "output"}, "operation entry");
      o->addOperation(op.at("id").get<std::string>(), op.at("inputs").get<std::vector<std::string>>(),
                      op.at("output").get<std::string>());
    }
    if (j.contains("identities"))
      for (auto it = j["identities"].begin(); it != j["identities"].end(); ++it)
        o->setIdentity(it.key(), it.value().get<std::string>());
    if (j.contains("compose"))
      for (const auto& c : j["compose"]) {
        rejectUnknown(c, {"f", "args", "result"}, "compose entry");
        o->setComposite(c.at("f").get<std::string>(), c.at("args").get<std::vector<std::string>>(),
                        c.at("result").get<std::string>());
      }
    if (j.contains("action"))
      for (const auto& a : j["action"]) {
        rejectUnknown(a, {"f", "perm", "result"}, "action entry");
        o->setAction(a.at("f").get<std::string>(), a.at("perm").get<Perm>(), a.at("result").get<std::string>());
      }
    for (const Value& x : o->allTypes())
      if (!o->identities_.count(x.name())) raise(ErrorCode::IncompleteTable, "no identity declared at " + x.name());
    return o;
  } catch (const json::exception& e) {
    raise(ErrorCode::SyntaxError, std::string("operad document: ") + e.what());
  }
}

TabulatedPtr operadI() {
  auto o = std::make_shared<TabulatedOperad>("I", 1);
  o->addType("pt");
  o->addOperation("1", {"pt"}, "pt");
  o->setIdentity("pt", "1");
  o->setComposite("1", {"1"}, "1");
  return o;
}

TabulatedPtr operadK() {
  auto o = std::make_shared<TabulatedOperad>("K", 1);
  o->addType("pt");
  o->addOperation("1", {"pt"}, "pt");
  o->addOperation("k", {}, "pt");
  o->setIdentity("pt", "1");
  o->setComposite("1", {"1"}, "1");
  o->setComposite("1", {"k"}, "k");
  o->setComposite("k", {}, "k");
  return o;
}

TabulatedPtr operadTTruncated(int n) {
  auto o = std::make_shared<TabulatedOperad>("T" + std::to_string(n), n);
  o->addType("pt");
  for (int k = 0; k <= n; ++k) o->addOperation("t" + std::to_string(k), std::vector<std::string>(static_cast<size_t>(k), "pt"), "pt");
  o->setIdentity("pt", "t1");
  for (int k = 0; k <= n; ++k) {
    for (const Perm& s : allPerms(k)) o->setAction("t" + std::to_string(k), s, "t" + std::to_string(k));
    // every tuple of arities summing to at most n
    std::vector<std::string> gs;
    std::function<void(int, int)> rec = [&](int i, int sum) {
      if (i == k) {
        o->setComposite("t" + std::to_string(k), gs, "t" + std::to_string(sum));
        return;
      }
      for (int a = 0; sum + a <= n; ++a) {
        gs.push_back("t" + std::to_string(a));
        rec(i + 1, sum + a);
        gs.pop_back();
      }
    };
    rec(0, 0);
  }
  return o;
}

std::string fOperationName(const Perm& s) {
  if (isIdentityPerm(s)) return "f";
  std::string n = "f[";
  for (size_t i = 0; i < s.size(); ++i) {
    if (i) n += ",";
    n += std::to_string(s[i]);
  }
  return n + "]";
}

TabulatedPtr operadF(int k) {
  auto o = std::make_shared<TabulatedOperad>("F" + std::to_string(k), std::max(k, 1));
  std::vector<std::string> xs;
  for (int i = 1; i <= k; ++i) xs.push_back("x" + std::to_string(i));
  for (const auto& x : xs) o->addType(x);
  o->addType("x'");
  for (const auto& x : xs) {
    o->addOperation("1_" + x, {x}, x);
    o->setIdentity(x, "1_" + x);
    o->setComposite("1_" + x, {"1_" + x}, "1_" + x);
  }
  o->addOperation("1_x'", {"x'"}, "x'");
  o->setIdentity("x'", "1_x'");
  o->setComposite("1_x'", {"1_x'"}, "1_x'");
  auto perms = allPerms(k);
  for (const Perm& s : perms) o->addOperation(fOperationName(s), permuteList(xs, s), "x'");
  for (const Perm& s : perms) {
    std::string fs = fOperationName(s);
    o->setComposite("1_x'", {fs}, fs);
    std::vector<std::string> ids;
    for (const auto& x : permuteList(xs, s)) ids.push_back("1_" + x);
    o->setComposite(fs, ids, fs);
    for (const Perm& t : perms) o->setAction(fs, t, fOperationName(composePerm(s, t)));
  }
  return o;
}

bool TerminalOperad::hasType(const Value& x) const { return x == Value::atom("pt"); }

std::optional<Profile> TerminalOperad::profile(const Value& f) const {
  if (!f.isAtom() || f.name().size() < 2 || f.name()[0] != 't') return std::nullopt;
  const std::string digits = f.name().substr(1);
  if (!std::all_of(digits.begin(), digits.end(), [](char c) { return c >= '0' && c <= '9'; })) return std::nullopt;
  if (digits.size() > 1 && digits[0] == '0') return std::nullopt;
  if (digits.size() > 6) return std::nullopt;
  int k = std::stoi(digits);
  return Profile{std::vector<Value>(static_cast<size_t>(k), Value::atom("pt")), Value::atom("pt")};
}

Value TerminalOperad::composeRaw(const Value&, const std::vector<Value>& gs) const {
  int sum = 0;
  for (const Value& g : gs) sum += std::stoi(g.name().substr(1));
  if (gs.empty()) return Value::atom("t0");
  return Value::atom("t" + std::to_string(sum));
}

Value TerminalOperad::identityRaw(const Value&) const { return Value::atom("t1"); }
Value TerminalOperad::actRaw(const Value& f, const Perm&) const { return f; }

std::optional<std::vector<Value>> TerminalOperad::types(const Bound&) const {
  return std::vector<Value>{Value::atom("pt")};
}

std::optional<std::vector<Value>> TerminalOperad::operations(const Bound& b) const {
  std::vector<Value> out;
  for (int k = 0; k <= b.maxArity; ++k) out.push_back(Value::atom("t" + std::to_string(k)));
  return out;
}

OperadPtr terminalOperad() {
  static OperadPtr t = std::make_shared<TerminalOperad>();
  return t;
}

void AlgebraTable::set(const Value& op, const std::vector<std::string>& args, const std::string& result) {
  table[op.text()][args] = result;
}

std::optional<std::string> AlgebraTable::apply(const Value& op, const std::vector<std::string>& args) const {
  auto it = table.find(op.text());
  if (it != table.end()) {
    auto jt = it->second.find(args);
    if (jt != it->second.end()) return jt->second;
  }
  if (evaluator) return evaluator(op, args);
  return std::nullopt;
}

const std::vector<std::string>& AlgebraTable::carrier(const Value& type) const {
  static const std::vector<std::string> empty;
  auto it = carriers.find(type.text());
  return it == carriers.end() ? empty : it->second;
}

AlgebraTable AlgebraTable::fromJson(const std::string& text, const Operad& o) {
  json j;
  try {
    j = json::parse(text);
  } catch (const json::exception& e) {
    raise(ErrorCode::SyntaxError, std::string("algebra document: ") + e.what());
  }
  rejectUnknown(j, {"carriers", "action", "arityBound"}, "algebra document");
  AlgebraTable a;
  try {
    a.arityBound = j.value("arityBound", 3);
    for (auto it = j.at("carriers").begin(); it != j.at("carriers").end(); ++it) {
      Value x = parseTypeText(o, it.key());
      a.carriers[x.text()] = it.value().get<std::vector<std::string>>();
    }
    if (j.contains("action"))
      for (const auto& e : j["action"]) {
        rejectUnknown(e, {"op", "args", "result"}, "action entry");
        Value op = parseOperationText(o, e.at("op").get<std::string>());
        a.set(op, e.at("args").get<std::vector<std::string>>(), e.at("result").get<std::string>());
      }
  } catch (const json::exception& e) {
    raise(ErrorCode::SyntaxError, std::string("algebra document: ") + e.what());
  }
  return a;
}

std::string AlgebraTable::toJson() const {
  json j;
  j["arityBound"] = arityBound;
  j["carriers"] = json::object();
  for (const auto& [x, els] : carriers) j["carriers"][x] = els;
  j["action"] = json::array();
  for (const auto& [op, rows] : table)
    for (const auto& [args, r] : rows) j["action"].push_back({{"op", op}, {"args", args}, {"result", r}});
  return j.dump(2);
}

namespace {

void forEachTuple(const AlgebraTable& a, const std::vector<Value>& types,
                  const std::function<void(const std::vector<std::string>&)>& visit) {
  std::vector<std::string> cur;
  std::function<void(size_t)> rec = [&](size_t i) {
    if (i == types.size()) {
      visit(cur);
      return;
    }
    for (const std::string& e : a.carrier(types[i])) {
      cur.push_back(e);
      rec(i + 1);
      cur.pop_back();
    }
  };
  rec(0);
}

std::string argsText(const std::vector<std::string>& xs) {
  std::string s = "(";
  for (size_t i = 0; i < xs.size(); ++i) {
    if (i) s += ", ";
    s += xs[i];
  }
  return s + ")";
}

}  // namespace

Report checkAlgebra(const Operad& o, const AlgebraTable& a) {
  Report r;
  Bound b{a.arityBound, a.arityBound};
  auto ops = o.operations(b);
  if (!ops) raise(ErrorCode::Unbounded, o.name() + " cannot enumerate operations");
  auto need = [&](const Value& f, const std::vector<std::string>& args) {
    auto v = a.apply(f, args);
    if (!v) raise(ErrorCode::IncompleteTable, "no action for " + f.text() + " on " + argsText(args));
    return *v;
  };
  std::map<std::string, std::vector<std::pair<Value, Profile>>> byOutput;
  for (const Value& f : *ops) {
    Profile p = profileOf(o, f);
    byOutput[p.output.text()].emplace_back(f, p);
  }
  for (const Value& f : *ops) {
    Profile pf = profileOf(o, f);
    forEachTuple(a, pf.inputs, [&](const std::vector<std::string>& xs) {
      std::string v = need(f, xs);
      const auto& car = a.carrier(pf.output);
      ++r.checked;
      if (std::find(car.begin(), car.end(), v) == car.end())
        r.fail(f.text() + argsText(xs) + " = " + v + " lies outside the carrier of " + pf.output.text());
    });
    // (c) symmetry; arguments are typed by the inputs of fs
    for (const Perm& s : allPerms(pf.arity())) {
      const Value fs = o.actRaw(f, s);
      forEachTuple(a, profileOf(o, fs).inputs, [&](const std::vector<std::string>& xs) {
        std::vector<std::string> ys(xs.size());
        for (size_t j = 0; j < xs.size(); ++j) ys[static_cast<size_t>(s[j] - 1)] = xs[j];
        ++r.checked;
        if (need(fs, xs) != need(f, ys))
          r.fail("symmetry fails for " + f.text() + " with " + permText(s) + " on " + argsText(xs));
      });
    }
  }
  // (b) identities
  std::set<std::string> seen;
  for (const Value& f : *ops) {
    Profile pf = profileOf(o, f);
    std::vector<Value> all = pf.inputs;
    all.push_back(pf.output);
    for (const Value& x : all) {
      if (!seen.insert(x.text()).second) continue;
      Value id = o.identityRaw(x);
      for (const std::string& e : a.carrier(x)) {
        ++r.checked;
        if (need(id, {e}) != e) r.fail("identity at " + x.text() + " moves " + e);
      }
    }
  }
  // (a) composition
  for (const Value& f : *ops) {
    Profile pf = profileOf(o, f);
    std::vector<Value> gs;
    std::function<void(size_t, int)> rec = [&](size_t i, int used) {
      if (i == pf.inputs.size()) {
        Value fg = o.composeRaw(f, gs);
        std::vector<Value> inner;
        for (const Value& g : gs) {
          Profile pg = profileOf(o, g);
          inner.insert(inner.end(), pg.inputs.begin(), pg.inputs.end());
        }
        forEachTuple(a, inner, [&](const std::vector<std::string>& xs) {
          std::vector<std::string> mids;
          size_t pos = 0;
          for (const Value& g : gs) {
            size_t k = static_cast<size_t>(profileOf(o, g).arity());
            mids.push_back(need(g, std::vector<std::string>(xs.begin() + static_cast<long>(pos),
                                                            xs.begin() + static_cast<long>(pos + k))));
            pos += k;
          }
          ++r.checked;
          if (need(fg, xs) != need(f, mids))
            r.fail("composition law fails for " + f.text() + " over " + argsText(xs));
        });
        return;
      }
      auto it = byOutput.find(pf.inputs[i].text());
      if (it == byOutput.end()) return;
      for (const auto& [g, pg] : it->second) {
        if (used + pg.arity() > a.arityBound) continue;
        gs.push_back(g);
        rec(i + 1, used + pg.arity());
        gs.pop_back();
      }
    };
    rec(0, 0);
  }
  return r;
}

}  // namespace opetope
