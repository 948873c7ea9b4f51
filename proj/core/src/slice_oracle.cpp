#include <algorithm>
#include <functional>
#include <map>
#include <numeric>

#include "opetope/slice.hpp"

namespace opetope {

namespace {

// Generator data of an O+-algebra: units u_x in A(1_x), partial composites
// A(f) x A(g) -> A(f o_i g), and for non-identity s the maps A(f) -> A(fs).
// An assignment is one digit per table entry.
class Generators {
 public:
  Generators(const TabulatedOperad& o, const SliceOracleOptions& opts) : o_(o) {
    for (const Value& f : o.allOperations()) {
      auto it = opts.carrierSizes.find(f.text());
      size_[f.text()] = it == opts.carrierSizes.end() ? opts.defaultCarrierSize : it->second;
    }
    for (const Value& x : o.allTypes()) {
      units_[x.text()] = slots_;
      slots_ += 1;
      radix_.push_back(size(o.identityRaw(x)));
    }
    for (const Value& f : o.allOperations()) {
      Profile pf = profileOf(o, f);
      for (int i = 1; i <= pf.arity(); ++i)
        for (const Value& g : o.allOperations()) {
          Profile pg = profileOf(o, g);
          if (pg.output != pf.inputs[static_cast<size_t>(i - 1)]) continue;
          auto fg = partial(f, i, g);
          if (!fg) continue;
          Key k{f.text(), i, g.text()};
          partials_[k] = {slots_, *fg};
          for (int e = 0; e < size(f) * size(g); ++e) radix_.push_back(size(*fg));
          slots_ += size(f) * size(g);
        }
      for (const Perm& s : allPerms(pf.arity())) {
        if (isIdentityPerm(s)) continue;
        Value fs = o.actRaw(f, s);
        actions_[{f.text(), permText(s)}] = slots_;
        for (int e = 0; e < size(f); ++e) radix_.push_back(size(fs));
        slots_ += size(f);
      }
    }
  }

  const std::vector<int>& radix() const { return radix_; }
  int size(const Value& f) const { return size_.at(f.text()); }

  // f o_i g in O when tabulated.
  std::optional<Value> partial(const Value& f, int i, const Value& g) const {
    Profile pf = profileOf(o_, f);
    std::vector<Value> gs;
    for (const Value& x : pf.inputs) gs.push_back(o_.identityRaw(x));
    gs[static_cast<size_t>(i - 1)] = g;
    try {
      return o_.composeRaw(f, gs);
    } catch (const Error& e) {
      if (e.code() != ErrorCode::IncompleteTable) throw;
      return std::nullopt;
    }
  }

  int unit(const std::vector<int>& d, const Value& x) const { return d[static_cast<size_t>(units_.at(x.text()))]; }

  // (f o_i g, element) or nullopt when O lacks the composite.
  std::optional<std::pair<Value, int>> compose(const std::vector<int>& d, const Value& f, int a, int i, const Value& g,
                                               int b) const {
    auto it = partials_.find(Key{f.text(), i, g.text()});
    if (it == partials_.end()) return std::nullopt;
    return std::make_pair(it->second.second, d[static_cast<size_t>(it->second.first + a * size(g) + b)]);
  }

  std::pair<Value, int> act(const std::vector<int>& d, const Value& f, int a, const Perm& s) const {
    if (isIdentityPerm(s)) return {f, a};
    int base = actions_.at({f.text(), permText(s)});
    return {o_.actRaw(f, s), d[static_cast<size_t>(base + a)]};
  }

  // Full composite f(g_1..g_k) by partial composites, nullary plugs first and
  // then by increasing arity so that no intermediate leaves the truncation.
  std::optional<std::pair<Value, int>> composeAll(const std::vector<int>& d, const Value& f, int a,
                                                  const std::vector<std::pair<Value, int>>& gs) const {
    std::vector<int> arity;
    for (const auto& g : gs) arity.push_back(profileOf(o_, g.first).arity());
    std::vector<size_t> order(gs.size());
    std::iota(order.begin(), order.end(), 0);
    std::stable_sort(order.begin(), order.end(), [&](size_t x, size_t y) { return arity[x] < arity[y]; });
    std::vector<bool> done(gs.size(), false);
    std::pair<Value, int> cur{f, a};
    for (size_t j : order) {
      int pos = 1;
      for (size_t k = 0; k < j; ++k) pos += done[k] ? arity[k] : 1;
      auto next = compose(d, cur.first, cur.second, pos, gs[j].first, gs[j].second);
      if (!next) return std::nullopt;
      cur = *next;
      done[j] = true;
    }
    return cur;
  }

 private:
  using Key = std::tuple<std::string, int, std::string>;
  const TabulatedOperad& o_;
  std::map<std::string, int> size_;
  std::map<std::string, int> units_;
  std::map<Key, std::pair<int, Value>> partials_;
  std::map<std::pair<std::string, std::string>, int> actions_;
  std::vector<int> radix_;
  int slots_ = 0;
};

std::string elem(int a) { return "e" + std::to_string(a); }
int elemIndex(const std::string& s) { return std::stoi(s.substr(1)); }

std::optional<std::string> evaluate(const TabulatedOperad& o, const Generators& gen, const std::vector<int>& d, const Value& op,
                                    const std::vector<std::string>& args);

// The O+-algebra on carriers A(f), evaluating a tree operation node by node.
AlgebraTable sliceAlgebra(const TabulatedOperad& o, const Generators& gen, const std::vector<int>& d, int bound) {
  AlgebraTable a;
  a.arityBound = bound;
  for (const Value& f : o.allOperations())
    for (int e = 0; e < gen.size(f); ++e) a.carriers[f.text()].push_back(elem(e));
  auto memo = std::make_shared<std::map<std::pair<std::string, std::vector<std::string>>, std::optional<std::string>>>();
  a.evaluator = [&o, &gen, d, memo](const Value& op, const std::vector<std::string>& args) -> std::optional<std::string> {
    auto key = std::make_pair(op.text(), args);
    if (auto it = memo->find(key); it != memo->end()) return it->second;
    auto result = evaluate(o, gen, d, op, args);
    memo->emplace(std::move(key), result);
    return result;
  };
  return a;
}

std::optional<std::string> evaluate(const TabulatedOperad& o, const Generators& gen, const std::vector<int>& d, const Value& op,
                                    const std::vector<std::string>& args) {
  const Tree& t = op.tree();
  if (t.isEdge()) return elem(gen.unit(d, t.root.type));
  std::map<std::string, int> at;
  for (size_t i = 0; i < args.size(); ++i) at[op.order()[i]] = elemIndex(args[i]);
  std::function<std::optional<std::pair<Value, int>>(const Node&)> eval = [&](const Node& n) -> std::optional<std::pair<Value, int>> {
    std::vector<std::pair<Value, int>> kids;
    for (const Node& k : n.kids) {
      if (k.isLeaf()) {
        Value id = o.identityRaw(k.type);
        kids.emplace_back(id, gen.unit(d, k.type));
      } else {
        auto v = eval(k);
        if (!v) return std::nullopt;
        kids.push_back(*v);
      }
    }
    // Leaves are plugged with units so every slot goes through the tables.
    return gen.composeAll(d, n.label, at.at(n.sym), kids);
  };
  auto v = eval(t.root);
  if (!v) return std::nullopt;
  return elem(gen.act(d, v->first, v->second, t.perm).second);
}

// Operations (f, a), composites and actions read off the generator data.
TabulatedPtr totalOperad(const TabulatedOperad& o, const Generators& gen, const std::vector<int>& d) {
  auto t = std::make_shared<TabulatedOperad>(o.name() + "-total", o.arityBound());
  std::map<std::string, std::string> ids;  // "f|e" -> operation id
  auto id = [&](const Value& f, int e) { return ids.at(f.text() + "|" + std::to_string(e)); };
  for (const Value& x : o.allTypes()) t->addType(x.name());
  int n = 0;
  for (const Value& f : o.allOperations()) {
    Profile p = profileOf(o, f);
    std::vector<std::string> ins;
    for (const Value& x : p.inputs) ins.push_back(x.name());
    for (int e = 0; e < gen.size(f); ++e) {
      std::string name = "u" + std::to_string(n++);
      ids[f.text() + "|" + std::to_string(e)] = name;
      t->addOperation(name, ins, p.output.name());
    }
  }
  for (const Value& x : o.allTypes()) t->setIdentity(x.name(), id(o.identityRaw(x), gen.unit(d, x)));
  std::map<std::string, std::vector<Value>> byOutput;
  for (const Value& f : o.allOperations()) byOutput[profileOf(o, f).output.text()].push_back(f);
  for (const Value& f : o.allOperations()) {
    Profile pf = profileOf(o, f);
    for (int a = 0; a < gen.size(f); ++a) {
      for (const Perm& s : allPerms(pf.arity())) {
        if (isIdentityPerm(s)) continue;
        auto r = gen.act(d, f, a, s);
        t->setAction(id(f, a), s, id(r.first, r.second));
      }
      std::vector<std::pair<Value, int>> gs;
      std::function<void(size_t)> rec = [&](size_t i) {
        if (i == pf.inputs.size()) {
          auto r = gen.composeAll(d, f, a, gs);
          if (!r) return;
          std::vector<std::string> names;
          for (const auto& g : gs) names.push_back(id(g.first, g.second));
          t->setComposite(id(f, a), names, id(r->first, r->second));
          return;
        }
        auto it = byOutput.find(pf.inputs[i].text());
        if (it == byOutput.end()) return;
        for (const Value& g : it->second)
          for (int b = 0; b < gen.size(g); ++b) {
            gs.emplace_back(g, b);
            rec(i + 1);
            gs.pop_back();
          }
      };
      rec(0);
    }
  }
  return t;
}

std::string assignmentText(const std::vector<int>& d) {
  std::string s = "[";
  for (size_t i = 0; i < d.size(); ++i) s += (i ? "," : "") + std::to_string(d[i]);
  return s + "]";
}

}  // namespace

SliceOracleResult sliceAlgebraOracle(const TabulatedOperad& o, const SliceOracleOptions& opts) {
  SliceOracleResult res;
  if (opts.bound <= 0) return res;
  Generators gen(o, opts);
  double total = 1;
  for (int r : gen.radix()) total *= std::max(r, 1);
  if (total > static_cast<double>(opts.budget))
    raise(ErrorCode::BudgetExceeded, std::to_string(static_cast<long>(total)) + " assignments exceed the budget of " +
                                         std::to_string(opts.budget));
  if (std::any_of(gen.radix().begin(), gen.radix().end(), [](int r) { return r == 0; })) return res;
  auto sl = sliceOperad(std::shared_ptr<const Operad>(&o, [](const Operad*) {}));
  std::vector<int> d(gen.radix().size(), 0);
  const Bound opBound{o.arityBound(), o.arityBound()};
  while (true) {
    ++res.assignments;
    ++res.report.checked;
    const bool lawfulSlice = checkAlgebra(*sl, sliceAlgebra(o, gen, d, opts.bound)).ok;
    const bool lawfulOperad = checkOperadAxioms(*totalOperad(o, gen, d), opBound).ok;
    res.lawfulSlice += lawfulSlice;
    res.lawfulOperads += lawfulOperad;
    if (lawfulSlice != lawfulOperad)
      res.report.fail("assignment " + assignmentText(d) + (lawfulSlice ? " is an algebra but not an operad" : " is an operad but not an algebra"));
    size_t i = 0;
    while (i < d.size() && ++d[i] == gen.radix()[i]) d[i++] = 0;
    if (i == d.size()) break;
  }
  return res;
}

}  // namespace opetope
