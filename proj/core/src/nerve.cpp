#include "opetope/nerve.hpp"

#include <algorithm>
#include <set>

#include <json.hpp>

#include "opetope/coherence.hpp"
#include "opetope/set_ops.hpp"
#include "opetope/slice.hpp"

namespace opetope {

using json = nlohmann::ordered_json;

namespace {

json parseDocument(const std::string& text, const std::string& what) {
  try {
    return json::parse(text);
  } catch (const json::exception& e) {
    raise(ErrorCode::SyntaxError, what + ": " + e.what());
  }
}

void rejectUnknown(const json& j, std::initializer_list<const char*> keys, const std::string& where) {
  if (!j.is_object()) raise(ErrorCode::SyntaxError, where + " must be an object");
  for (auto it = j.begin(); it != j.end(); ++it)
    if (std::none_of(keys.begin(), keys.end(), [&](const char* k) { return it.key() == k; }))
      raise(ErrorCode::SyntaxError, where + ": unknown key '" + it.key() + "'");
}

std::map<std::pair<std::string, std::string>, std::string> readTriples(const json& rows, const std::string& where) {
  std::map<std::pair<std::string, std::string>, std::string> out;
  for (const auto& row : rows) {
    auto t = row.get<std::vector<std::string>>();
    if (t.size() != 3) raise(ErrorCode::SyntaxError, where + " entries are [x, y, result] triples");
    if (!out.emplace(std::make_pair(t[0], t[1]), t[2]).second)
      raise(ErrorCode::ValidationFailed, where + " lists (" + t[0] + ", " + t[1] + ") twice");
  }
  return out;
}

bool plainId(const std::string& s) {
  if (s.empty()) return false;
  return std::none_of(s.begin(), s.end(), [](char c) {
    return std::isspace(static_cast<unsigned char>(c)) || c == '(' || c == ')' || c == ':' || c == '*' || c == ';' || c == '"';
  });
}

std::string freshId(const OpetopicSet& x, const std::string& prefix, long& counter) {
  std::string id;
  do id = prefix + std::to_string(counter++);
  while (x.find(id));
  return id;
}

// Infaces of a 2-niche over a chain, leaf side first, and the leaf's 0-cell.
std::pair<std::vector<std::string>, std::string> chainOf(const Niche& n) {
  const Tree& t = n.opening.tree();
  std::map<std::string, size_t> idx;
  for (size_t i = 0; i < n.opening.order().size(); ++i) idx[n.opening.order()[i]] = i;
  std::vector<std::string> chain;
  const Node* p = &t.root;
  while (!p->isLeaf()) {
    if (p->kids.size() != 1) raise(ErrorCode::TypeMismatch, "2-niche is not a chain");
    chain.push_back(n.infaces[idx.at(p->sym)]);
    p = &p->kids[0];
  }
  std::reverse(chain.begin(), chain.end());
  return {chain, p->type.name()};
}

}  // namespace

const Morphism& FiniteCategory::morphism(const std::string& name) const {
  for (const Morphism& m : morphisms)
    if (m.name == name) return m;
  raise(ErrorCode::UnknownOperation, "no morphism named " + name);
}

std::vector<std::string> FiniteCategory::homs(const std::string& a, const std::string& b) const {
  std::vector<std::string> out;
  for (const Morphism& m : morphisms)
    if (m.dom == a && m.cod == b) out.push_back(m.name);
  return out;
}

std::optional<std::string> FiniteCategory::compose(const std::string& f, const std::string& g) const {
  auto it = composition.find({f, g});
  if (it == composition.end()) return std::nullopt;
  return it->second;
}

FiniteCategory FiniteCategory::fromJson(const std::string& text) {
  json j = parseDocument(text, "category document");
  if (j.is_object() && j.contains("elements")) {
    Monoid m = Monoid::fromJson(text);
    return categoryFromMonoid(m.elements, m.unit, m.table);
  }
  rejectUnknown(j, {"objects", "homs", "compose", "identities"}, "category document");
  FiniteCategory c;
  try {
    c.objects = j.at("objects").get<std::vector<std::string>>();
    for (auto a = j.at("homs").begin(); a != j.at("homs").end(); ++a)
      for (auto b = a.value().begin(); b != a.value().end(); ++b)
        for (const auto& name : b.value().get<std::vector<std::string>>()) c.morphisms.push_back({name, a.key(), b.key()});
    c.composition = readTriples(j.value("compose", json::array()), "compose");
    c.identities = j.at("identities").get<std::map<std::string, std::string>>();
  } catch (const json::exception& e) {
    raise(ErrorCode::SyntaxError, std::string("category document: ") + e.what());
  }
  return c;
}

std::string FiniteCategory::toJson() const {
  json j;
  j["objects"] = objects;
  j["homs"] = json::object();
  for (const Morphism& m : morphisms) j["homs"][m.dom][m.cod].push_back(m.name);
  j["compose"] = json::array();
  for (const auto& [fg, h] : composition) j["compose"].push_back({fg.first, fg.second, h});
  j["identities"] = identities;
  return j.dump(2);
}

Report checkCategoryLaws(const FiniteCategory& c) {
  Report r;
  std::set<std::string> objs(c.objects.begin(), c.objects.end()), names;
  if (objs.size() != c.objects.size()) r.fail("an object is listed twice");
  std::map<std::string, const Morphism*> byName;
  for (const Morphism& m : c.morphisms) {
    ++r.checked;
    if (!byName.emplace(m.name, &m).second) r.fail("morphism " + m.name + " is listed twice");
    if (!objs.count(m.dom) || !objs.count(m.cod)) r.fail("morphism " + m.name + " has an unknown end");
  }
  for (const std::string& a : c.objects) {
    auto it = c.identities.find(a);
    if (it == c.identities.end() || !byName.count(it->second)) {
      r.fail("object " + a + " has no identity");
      continue;
    }
    const Morphism& i = *byName[it->second];
    if (i.dom != a || i.cod != a) r.fail("identity " + i.name + " is not an endomorphism of " + a);
  }
  if (!r.ok) return r;
  for (const auto& [fg, h] : c.composition) {
    auto f = byName.find(fg.first), g = byName.find(fg.second), k = byName.find(h);
    if (f == byName.end() || g == byName.end() || k == byName.end()) {
      r.fail("composite (" + fg.first + ", " + fg.second + ") mentions an unknown morphism");
      continue;
    }
    if (f->second->cod != g->second->dom) r.fail("(" + fg.first + ", " + fg.second + ") is not composable");
    if (k->second->dom != f->second->dom || k->second->cod != g->second->cod)
      r.fail("composite of (" + fg.first + ", " + fg.second + ") has the wrong ends");
  }
  for (const Morphism& f : c.morphisms) {
    ++r.checked;
    if (c.compose(c.identities.at(f.dom), f.name) != f.name) r.fail("left unit law fails at " + f.name);
    if (c.compose(f.name, c.identities.at(f.cod)) != f.name) r.fail("right unit law fails at " + f.name);
    for (const Morphism& g : c.morphisms) {
      if (g.dom != f.cod) continue;
      auto fg = c.compose(f.name, g.name);
      if (!fg) {
        r.fail("no composite of (" + f.name + ", " + g.name + ")");
        continue;
      }
      for (const Morphism& h : c.morphisms) {
        if (h.dom != g.cod) continue;
        ++r.checked;
        auto gh = c.compose(g.name, h.name);
        if (!gh) continue;
        auto left = c.compose(*fg, h.name), right = c.compose(f.name, *gh);
        if (!left || !right || *left != *right)
          r.fail("associativity fails at (" + f.name + ", " + g.name + ", " + h.name + ")");
      }
    }
  }
  return r;
}

FiniteCategory categoryFromMonoid(const std::vector<std::string>& elements, const std::string& unit,
                                  const std::map<std::pair<std::string, std::string>, std::string>& table) {
  FiniteCategory c;
  c.objects = {"o"};
  for (const std::string& e : elements) c.morphisms.push_back({e, "o", "o"});
  c.identities["o"] = unit;
  for (const std::string& x : elements)
    for (const std::string& y : elements) {
      auto it = table.find({x, y});
      if (it != table.end())
        c.composition[{x, y}] = it->second;
      else if (x == unit)
        c.composition[{x, y}] = y;
      else if (y == unit)
        c.composition[{x, y}] = x;
    }
  return c;
}

bool isomorphic(const FiniteCategory& a, const FiniteCategory& b) {
  if (a.objects.size() != b.objects.size() || a.morphisms.size() != b.morphisms.size()) return false;
  std::vector<std::string> bo = b.objects;
  std::sort(bo.begin(), bo.end());
  do {
    std::map<std::string, std::string> obj;
    for (size_t i = 0; i < a.objects.size(); ++i) obj[a.objects[i]] = bo[i];
    bool sizes = true;
    for (const auto& x : a.objects)
      for (const auto& y : a.objects) sizes = sizes && a.homs(x, y).size() == b.homs(obj[x], obj[y]).size();
    if (!sizes) continue;
    std::map<std::string, std::string> mor;
    std::set<std::string> used;
    auto consistent = [&]() {
      for (const auto& [x, i] : a.identities)
        if (mor.count(i) && mor[i] != b.identities.at(obj[x])) return false;
      for (const auto& [fg, h] : a.composition) {
        if (!mor.count(fg.first) || !mor.count(fg.second) || !mor.count(h)) continue;
        if (b.compose(mor[fg.first], mor[fg.second]) != mor[h]) return false;
      }
      return true;
    };
    std::function<bool(size_t)> rec = [&](size_t i) {
      if (i == a.morphisms.size()) return true;
      const Morphism& f = a.morphisms[i];
      for (const std::string& g : b.homs(obj[f.dom], obj[f.cod])) {
        if (used.count(g)) continue;
        mor[f.name] = g;
        used.insert(g);
        if (consistent() && rec(i + 1)) return true;
        used.erase(g);
        mor.erase(f.name);
      }
      return false;
    };
    if (rec(0)) return true;
  } while (std::next_permutation(bo.begin(), bo.end()));
  return false;
}

Monoid Monoid::fromJson(const std::string& text) {
  json j = parseDocument(text, "monoid document");
  rejectUnknown(j, {"elements", "unit", "table"}, "monoid document");
  Monoid m;
  try {
    m.elements = j.at("elements").get<std::vector<std::string>>();
    m.unit = j.at("unit").get<std::string>();
    m.table = readTriples(j.value("table", json::array()), "table");
  } catch (const json::exception& e) {
    raise(ErrorCode::SyntaxError, std::string("monoid document: ") + e.what());
  }
  if (std::find(m.elements.begin(), m.elements.end(), m.unit) == m.elements.end())
    raise(ErrorCode::ValidationFailed, "unit " + m.unit + " is not an element");
  return m;
}

std::string Monoid::product(const std::string& x, const std::string& y) const {
  auto it = table.find({x, y});
  if (it != table.end()) return it->second;
  if (x == unit) return y;
  if (y == unit) return x;
  raise(ErrorCode::IncompleteTable, "no product for (" + x + ", " + y + ")");
}

OpetopicSet nerveOfCategory(const FiniteCategory& c, const NerveOptions& opts, const std::optional<CategoryTyping>& typing) {
  if (opts.checkLaws) {
    Report r = checkCategoryLaws(c);
    if (!r.ok) raise(ErrorCode::ValidationFailed, "category laws: " + r.violations.front());
  }
  OpetopicSet x(typing ? typing->base : operadI(), typing ? typing->baseId : "I", opts.maxDim, AboveTruncation::TerminalAbove,
                opts.bound);
  for (const std::string& a : c.objects) x.addPoint(a, typing ? typing->objectType.at(a) : Value::atom("pt"));
  if (opts.maxDim < 1) return x;
  for (const Morphism& m : c.morphisms) x.addArrow(m.name, typing ? typing->morphismOp.at(m.name) : Value::atom("1"), {m.dom}, m.cod);
  if (opts.maxDim < 2) return x;

  std::vector<std::pair<Niche, std::string>> cells;
  forEachNiche(x, 2, [&](const Niche& n) {
    auto [chain, start] = chainOf(n);
    std::string acc;
    if (chain.empty()) {
      auto it = c.identities.find(start);
      if (it == c.identities.end()) raise(ErrorCode::IncompleteTable, "object " + start + " has no identity");
      acc = it->second;
    } else {
      acc = chain[0];
      for (size_t i = 1; i < chain.size(); ++i) {
        auto next = c.compose(acc, chain[i]);
        if (!next) raise(ErrorCode::IncompleteTable, "no composite of (" + acc + ", " + chain[i] + ")");
        acc = *next;
      }
    }
    cells.emplace_back(n, acc);
    return true;
  });
  long counter = 0;
  for (const auto& [n, out] : cells) x.addFramed(freshId(x, "n2.", counter), 2, n.opening, n.infaces, out);
  fillUniquely(x, 3, "n");
  return x;
}

std::pair<FiniteCategory, CategoryTyping> collage(const FiniteFunctor& f) {
  const FiniteCategory& s = f.source;
  const FiniteCategory& t = f.target;
  auto tgt = [](const std::string& n) { return n + "'"; };
  auto het = [](const std::string& c, const std::string& h) { return c + ">" + h; };
  FiniteCategory k;
  CategoryTyping ty{operadF(1), "F1", {}, {}};
  const Value x1 = Value::atom("x1"), x2 = Value::atom("x'");
  for (const auto& a : s.objects) {
    k.objects.push_back(a);
    ty.objectType[a] = x1;
  }
  for (const auto& b : t.objects) {
    k.objects.push_back(tgt(b));
    ty.objectType[tgt(b)] = x2;
  }
  for (const Morphism& m : s.morphisms) {
    k.morphisms.push_back(m);
    ty.morphismOp[m.name] = Value::atom("1_x1");
  }
  for (const Morphism& m : t.morphisms) {
    k.morphisms.push_back({tgt(m.name), tgt(m.dom), tgt(m.cod)});
    ty.morphismOp[tgt(m.name)] = Value::atom("1_x'");
  }
  for (const auto& a : s.objects)
    for (const Morphism& h : t.morphisms)
      if (h.dom == f.onObjects.at(a)) {
        k.morphisms.push_back({het(a, h.name), a, tgt(h.cod)});
        ty.morphismOp[het(a, h.name)] = Value::atom("f");
      }
  for (const auto& [fg, h] : s.composition) k.composition[fg] = h;
  for (const auto& [fg, h] : t.composition) k.composition[{tgt(fg.first), tgt(fg.second)}] = tgt(h);
  for (const auto& [a, i] : s.identities) k.identities[a] = i;
  for (const auto& [b, i] : t.identities) k.identities[tgt(b)] = tgt(i);
  for (const auto& a : s.objects)
    for (const Morphism& h : t.morphisms) {
      if (h.dom != f.onObjects.at(a)) continue;
      for (const Morphism& g : s.morphisms)
        if (g.cod == a) {
          auto fh = t.compose(f.onMorphisms.at(g.name), h.name);
          if (fh) k.composition[{g.name, het(a, h.name)}] = het(g.dom, *fh);
        }
      for (const Morphism& m : t.morphisms)
        if (m.dom == h.cod) {
          auto hm = t.compose(h.name, m.name);
          if (hm) k.composition[{het(a, h.name), tgt(m.name)}] = het(a, *hm);
        }
    }
  return {k, ty};
}

OpetopicSet nerveOfFunctor(const FiniteFunctor& f, const NerveOptions& opts) {
  auto [k, ty] = collage(f);
  return nerveOfCategory(k, opts, ty);
}

OpetopicSet nerveOfAlgebra(OperadPtr o, const std::string& baseId, const AlgebraTable& a, int maxDim, const SizeBound& bound,
                           bool check) {
  if (check) {
    Report r = checkAlgebra(*o, a);
    if (!r.ok) raise(ErrorCode::ValidationFailed, "algebra laws: " + r.violations.front());
  }
  OpetopicSet x(o, baseId, maxDim, AboveTruncation::TerminalAbove, bound);
  std::map<std::string, std::map<std::string, std::string>> idOf;  // type text -> element -> cell
  std::map<std::string, std::string> elementOf;
  long counter = 0;
  for (const auto& [typeText, elements] : a.carriers) {
    const Value s = parseTypeText(*o, typeText);
    for (const std::string& e : elements) {
      std::string id = plainId(e) && !x.find(e) ? e : freshId(x, "e", counter);
      x.addPoint(id, s);
      idOf[typeText][e] = id;
      elementOf[id] = e;
    }
  }
  if (maxDim < 1) return x;
  std::vector<std::pair<Niche, std::string>> arrows;
  forEachNiche(x, 1, [&](const Niche& n) {
    std::vector<std::string> args;
    for (const std::string& c : n.infaces) args.push_back(elementOf.at(c));
    auto r = a.apply(n.opening, args);
    if (!r) raise(ErrorCode::IncompleteTable, "no action for " + n.opening.text() + " on " + describeNiche(x, n));
    const std::string out = profileOf(*o, n.opening).output.text();
    auto it = idOf[out].find(*r);
    if (it == idOf[out].end()) raise(ErrorCode::ValidationFailed, *r + " is not an element of the carrier at " + out);
    arrows.emplace_back(n, it->second);
    return true;
  });
  counter = 0;
  for (const auto& [n, out] : arrows) x.addArrow(freshId(x, "a1.", counter), n.opening, n.infaces, out);
  fillUniquely(x, 2, "a");
  return x;
}

AlgebraTable setAsAlgebra(const std::vector<std::string>& elements) {
  AlgebraTable a;
  a.carriers["pt"] = elements;
  a.arityBound = 1;
  for (const std::string& e : elements) a.set(Value::atom("1"), {e}, e);
  return a;
}

AlgebraTable monoidAsAlgebra(const Monoid& m) {
  AlgebraTable a;
  a.carriers["1"] = m.elements;
  a.evaluator = [m](const Value& op, const std::vector<std::string>& args) -> std::optional<std::string> {
    if (op.kind() != ValueKind::Slice || op.order().size() != args.size()) return std::nullopt;
    std::map<std::string, std::string> at;
    for (size_t i = 0; i < args.size(); ++i) at[op.order()[i]] = args[i];
    std::vector<std::string> chain;
    for (const Node* p = &op.tree().root; !p->isLeaf(); p = &p->kids.at(0)) chain.push_back(at.at(p->sym));
    std::string acc = m.unit;
    for (auto it = chain.rbegin(); it != chain.rend(); ++it) acc = m.product(acc, *it);
    return acc;
  };
  return a;
}

AlgebraTable extractAlgebra(const OpetopicSet& x, long budget) {
  CoherenceChecker ch(x, 0, budget);
  CoherenceReport r = ch.checkNCoherent();
  if (r.verdict.exhausted()) raise(ErrorCode::BudgetExceeded, r.verdict.witness);
  if (!r.verdict.holds()) raise(ErrorCode::NotCoherent, r.verdict.witness);
  AlgebraTable a;
  a.arityBound = x.bound().at(1).value_or(3);
  for (const Cell* c : x.stratum(0))
    if (c->valid()) a.carriers[c->type.text()].push_back(c->id);
  forEachNiche(x, 1, [&](const Niche& n) {
    auto us = ch.universalOccupants(n);
    if (us.size() != 1) raise(ErrorCode::NotCoherent, describeNiche(x, n) + " has " + std::to_string(us.size()) + " universal occupants");
    a.set(n.opening, n.infaces, us.front()->outface);
    return true;
  });
  return a;
}

FiniteCategory extractCategory(const OpetopicSet& x, long budget) {
  if (x.base().name() != "I") raise(ErrorCode::TypeMismatch, "extracting a category needs the base I, not " + x.base().name());
  CoherenceChecker ch(x, 1, budget);
  CoherenceReport r = ch.checkNCoherent();
  if (r.verdict.exhausted()) raise(ErrorCode::BudgetExceeded, r.verdict.witness);
  if (!r.verdict.holds()) raise(ErrorCode::NotCoherent, r.verdict.witness);

  FiniteCategory c;
  for (const Cell* p : x.stratum(0))
    if (p->valid()) c.objects.push_back(p->id);
  for (const Cell* f : x.stratum(1))
    if (f->valid()) c.morphisms.push_back({f->id, f->infaces.at(0), f->outface});
  const auto& l1 = static_cast<const SliceOperad&>(x.level(1));
  auto unique = [&](const Niche& n) {
    auto us = ch.universalOccupants(n);
    if (us.size() != 1) raise(ErrorCode::NotCoherent, describeNiche(x, n) + " has " + std::to_string(us.size()) + " universal occupants");
    return us.front()->outface;
  };
  for (const std::string& a : c.objects) {
    Value opening = l1.make(Tree::edge(Value::atom(a)), {});
    c.identities[a] = unique(Niche{2, opening, {}});
  }
  for (const Morphism& f : c.morphisms)
    for (const Morphism& g : c.morphisms) {
      if (g.dom != f.cod) continue;
      const Value& ff = x.cell(f.name).frame;
      const Value& gf = x.cell(g.name).frame;
      Tree t{Node::node("A", gf, {Node::node("B", ff, {Node::leaf(Value::atom(f.dom))})}), {1}};
      Value opening = l1.make(t, {"B", "A"});
      c.composition[{f.name, g.name}] = unique(Niche{2, opening, {f.name, g.name}});
    }
  Report laws = checkCategoryLaws(c);
  if (!laws.ok) raise(ErrorCode::NotCoherent, "extracted category: " + laws.violations.front());
  return c;
}

OpetopicSet restrictToType(const OpetopicSet& x, const Value& s) {
  return std::move(pullbackSet(typeInclusion(x.basePtr(), s), x).set);
}

OpetopicSet underlying(const OpetopicSet& x) {
  if (x.maxDim() < 1) raise(ErrorCode::ValidationFailed, "a set without 1-cells has no underlying set");
  SizeBound b = x.bound();
  if (b.perDim.size() > 1) b.perDim.erase(b.perDim.begin());
  OpetopicSet y(x.levelPtr(1), x.baseId() + "-", x.maxDim() - 1, x.above(), b);
  for (const Cell* c : x.stratum(1))
    if (c->valid()) y.addPoint(c->id, c->frame);
  for (int m = 2; m <= x.maxDim(); ++m)
    for (const Cell* c : x.stratum(m))
      if (c->valid()) y.addFramed(c->id, m - 1, c->opening, c->infaces, c->outface);
  return y;
}

}  // namespace opetope
