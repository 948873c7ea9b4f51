#include "opetope/set_ops.hpp"

#include <set>

#include "opetope/slice.hpp"
#include "opetope/tabulated.hpp"

namespace opetope {

namespace {

std::vector<Value> baseOperations(const OpetopicSet& x) {
  auto b = x.bound().at(1);
  if (!b && !dynamic_cast<const TabulatedOperad*>(&x.base()))
    raise(ErrorCode::Unbounded, "niches of dimension 1 over " + x.base().name() + " need a size bound");
  const int k = b ? *b : 1 << 20;
  auto ops = x.base().operations(Bound{k, k});
  if (!ops) raise(ErrorCode::Unbounded, x.base().name() + " cannot enumerate its operations");
  return *ops;
}

void forEachNiche1(const OpetopicSet& x, const NicheSink& sink) {
  for (const Value& g : baseOperations(x)) {
    Profile p = profileOf(x.base(), g);
    std::vector<std::vector<const Cell*>> choices;
    for (const Value& s : p.inputs) choices.push_back(x.withFrame(0, s));
    std::vector<std::string> cur;
    bool go = true;
    std::function<void(size_t)> rec = [&](size_t i) {
      if (!go) return;
      if (i == choices.size()) {
        go = sink(Niche{1, g, cur});
        return;
      }
      for (const Cell* c : choices[i]) {
        cur.push_back(c->id);
        rec(i + 1);
        cur.pop_back();
        if (!go) return;
      }
    };
    rec(0);
    if (!go) return;
  }
}

}  // namespace

void forEachNiche(const OpetopicSet& x, int dim, const NicheSink& sink) {
  if (dim < 1) raise(ErrorCode::DimensionZero, "niches have dimension at least 1");
  if (dim == 1) return forEachNiche1(x, sink);
  auto maxNodes = x.bound().at(dim);
  if (!maxNodes) raise(ErrorCode::Unbounded, "niches of dimension " + std::to_string(dim) + " need a size bound");
  auto maxLeaves = x.bound().at(dim - 1);

  std::vector<std::pair<Value, Profile>> labels;
  std::map<std::string, const Cell*> cellOf;
  for (const Cell* c : x.stratum(dim - 1)) {
    if (!c->valid()) continue;
    std::vector<Value> ins;
    for (const std::string& s : c->infaces) ins.push_back(Value::atom(s));
    labels.emplace_back(Value::atom(c->id), Profile{ins, Value::atom(c->outface)});
    cellOf[c->id] = c;
  }
  std::vector<Value> types;
  for (const Cell* c : x.stratum(dim - 2))
    if (c->valid()) types.push_back(Value::atom(c->id));
  LabelSet ls = LabelSet::of(std::move(labels), types);
  PlanarTreeEnumerator en(ls);
  const Operad& lower = x.restricted(dim - 2);

  for (int k = 0; k <= *maxNodes; ++k) {
    const std::vector<Perm> orderings = allPerms(k);
    for (const Value& t : types) {
      for (const Node& planar : en.exact(t, k)) {
        const int l = leafCount(planar);
        if (maxLeaves && l > *maxLeaves) continue;
        for (const Perm& top : allPerms(l)) {
          Tree tr{planar, top};
          canonicalizeSymbols(tr);
          std::map<std::string, std::string> idOf;
          std::function<void(Node&)> relabel = [&](Node& n) {
            if (n.isLeaf()) return;
            idOf[n.sym] = n.label.name();
            n.label = cellOf.at(n.label.name())->frame;
            for (Node& c : n.kids) relabel(c);
          };
          relabel(tr.root);
          const Value out = evalTree(tr, lower);
          std::vector<std::string> syms;
          for (const Node* n : preorderNodes(tr.root)) syms.push_back(n->sym);
          for (const Perm& o : orderings) {
            std::vector<std::string> order = permuteList(syms, o);
            std::vector<std::string> ins;
            for (const std::string& s : order) ins.push_back(idOf.at(s));
            if (!sink(Niche{dim, Value::slice(tr, order, out), std::move(ins)})) return;
          }
        }
      }
    }
  }
}

std::vector<Niche> nichesOf(const OpetopicSet& x, int dim) {
  std::vector<Niche> out;
  forEachNiche(x, dim, [&](const Niche& n) {
    out.push_back(n);
    return true;
  });
  return out;
}

std::vector<PuncturedNiche> puncturedNichesOf(const OpetopicSet& x, int dim) {
  std::vector<PuncturedNiche> out;
  std::set<std::string> seen;
  forEachNiche(x, dim, [&](const Niche& n) {
    for (size_t j = 0; j < n.infaces.size(); ++j) {
      PuncturedNiche p{n.dim, n.opening, n.infaces, static_cast<int>(j)};
      p.infaces[j].clear();
      std::string key = n.opening.text() + "#" + std::to_string(j);
      for (const std::string& s : p.infaces) key += " " + s;
      if (seen.insert(key).second) out.push_back(std::move(p));
    }
    return true;
  });
  return out;
}

void fillUniquely(OpetopicSet& x, int fromDim, const std::string& prefix, long maxCells) {
  long counter = 0;
  for (int m = std::max(1, fromDim); m <= x.maxDim(); ++m) {
    forEachNiche(x, m, [&](const Niche& n) {
      std::vector<const Cell*> targets = x.withFrame(m - 1, nicheTarget(x, n));
      for (const Cell* y : targets) {
        if (static_cast<long>(x.size()) >= maxCells)
          raise(ErrorCode::BudgetExceeded, "more than " + std::to_string(maxCells) + " cells");
        std::string id;
        do id = prefix + std::to_string(m) + "." + std::to_string(counter++);
        while (x.find(id));
        x.addFramed(id, m, n.opening, n.infaces, y->id);
      }
      return true;
    });
  }
}

OpetopicSet terminalSet(OperadPtr o, const std::string& baseId, int maxDim, const SizeBound& bound, long maxCells) {
  OpetopicSet x(o, baseId, maxDim, AboveTruncation::TerminalAbove, bound);
  const int k = bound.at(1).value_or(1 << 20);
  auto types = o->types(Bound{k, k});
  if (!types) raise(ErrorCode::Unbounded, o->name() + " cannot enumerate its types");
  long n = 0;
  for (const Value& s : *types) {
    std::string id = s.text();
    bool plain = s.isAtom();
    if (!plain || x.find(id)) id = "x0." + std::to_string(n++);
    x.addPoint(id, s);
  }
  fillUniquely(x, 1, "t", maxCells);
  return x;
}

OpetopicSet terminalSet(const std::string& baseId, int maxDim, int sizeBound, long maxCells) {
  return terminalSet(operadByName(baseId), baseId, maxDim, SizeBound::uniform(sizeBound), maxCells);
}

OperadMorphism identityMorphism(OperadPtr o, const std::string& id) {
  OperadMorphism f;
  f.source = o;
  f.sourceId = id;
  f.target = o;
  f.onType = [](const Value& v) { return v; };
  f.onOp = [](const Value& v) { return v; };
  f.typePreimages = [](const Value& v) { return std::vector<Value>{v}; };
  f.opPreimages = [](const Value& v) { return std::vector<Value>{v}; };
  return f;
}

OperadMorphism typeInclusion(OperadPtr target, const Value& s) {
  if (!target->hasType(s)) raise(ErrorCode::UnknownType, s.text() + " is not a type of " + target->name());
  OperadMorphism f;
  f.source = operadI();
  f.sourceId = "I";
  f.target = target;
  const Value pt = Value::atom("pt");
  const Value one = Value::atom("1");
  const Value ident = identity(*target, s);
  f.onType = [s](const Value&) { return s; };
  f.onOp = [ident](const Value&) { return ident; };
  f.typePreimages = [s, pt](const Value& t) { return t == s ? std::vector<Value>{pt} : std::vector<Value>{}; };
  f.opPreimages = [ident, one](const Value& h) { return h == ident ? std::vector<Value>{one} : std::vector<Value>{}; };
  return f;
}

namespace {

const std::string& image(const CellMap& phi, const std::string& id) {
  auto it = phi.find(id);
  if (it == phi.end()) raise(ErrorCode::UnknownCell, "the map does not cover cell " + id);
  return it->second;
}

Value imageAtom(const CellMap& phi, const Value& a) { return Value::atom(image(phi, a.name())); }

std::vector<Value> imageAtoms(const CellMap& phi, const std::vector<Value>& as) {
  std::vector<Value> out;
  for (const Value& a : as) out.push_back(imageAtom(phi, a));
  return out;
}

std::vector<std::string> imageIds(const CellMap& phi, const std::vector<std::string>& ids) {
  std::vector<std::string> out;
  for (const std::string& s : ids) out.push_back(s.empty() ? s : image(phi, s));
  return out;
}

}  // namespace

Value mapOpening(const OperadMorphism& f, const CellMap& phi, int dim, const Value& opening) {
  if (dim == 1) return f.onOp(opening);
  Tree t = opening.tree();
  std::function<void(Node&)> rec = [&](Node& n) {
    if (n.isLeaf()) {
      n.type = imageAtom(phi, n.type);
      return;
    }
    n.label = mapFrame(f, phi, dim - 1, n.label);
    for (Node& k : n.kids) rec(k);
  };
  rec(t.root);
  return Value::slice(t, opening.order(), mapFrame(f, phi, dim - 1, opening.output()));
}

Value mapFrame(const OperadMorphism& f, const CellMap& phi, int dim, const Value& frame) {
  if (dim == 0) return f.onType(frame);
  return Value::pullback(mapOpening(f, phi, dim, frame.base()), imageAtoms(phi, frame.inputs()), imageAtom(phi, frame.output()));
}

Niche mapNiche(const OperadMorphism& f, const CellMap& phi, const Niche& n) {
  return Niche{n.dim, mapOpening(f, phi, n.dim, n.opening), imageIds(phi, n.infaces)};
}

PuncturedNiche mapPunctured(const OperadMorphism& f, const CellMap& phi, const PuncturedNiche& p) {
  return PuncturedNiche{p.dim, mapOpening(f, phi, p.dim, p.opening), imageIds(phi, p.infaces), p.hole};
}

Report checkMorphism(const CellMap& phi, const OpetopicSet& x, const OpetopicSet& y, const OperadMorphism* f) {
  OperadMorphism id;
  if (!f) {
    if (x.base().name() != y.base().name())
      raise(ErrorCode::TypeMismatch, "sets over " + x.base().name() + " and " + y.base().name() + " need an operad morphism");
    id = identityMorphism(x.basePtr(), x.baseId());
    f = &id;
  }
  Report r;
  for (const Cell* c : x.sortedCells()) {
    if (!c->valid()) continue;
    ++r.checked;
    const Cell& d = y.cell(image(phi, c->id));
    if (d.dim != c->dim) {
      r.fail("cell " + c->id + " of dimension " + std::to_string(c->dim) + " goes to " + d.id + " of dimension " + std::to_string(d.dim));
      continue;
    }
    if (!d.valid()) {
      r.fail("cell " + c->id + " goes to the invalid cell " + d.id);
      continue;
    }
    if (mapFrame(*f, phi, c->dim, x.frameValue(*c)) != y.frameValue(d)) {
      std::string what = c->dim == 0 ? "type" : "frame";
      r.fail("cell " + c->id + " goes to " + d.id + " whose " + what + " is not the image of " + c->id + "'s " + what);
    }
  }
  return r;
}

std::optional<CellMap> extendMorphism(const OpetopicSet& x, const OpetopicSet& y, const CellMap& points, const OperadMorphism* f) {
  OperadMorphism id;
  if (!f) {
    id = identityMorphism(x.basePtr(), x.baseId());
    f = &id;
  }
  CellMap phi = points;
  for (int m = 1; m <= x.maxDim(); ++m)
    for (const Cell* c : x.stratum(m)) {
      if (!c->valid()) continue;
      const auto& hits = y.withFrame(m, mapFrame(*f, phi, m, c->frame));
      if (hits.size() != 1) return std::nullopt;
      phi[c->id] = hits.front()->id;
    }
  return phi;
}

PulledBack pullbackSet(const OperadMorphism& f, const OpetopicSet& y) {
  PulledBack out{OpetopicSet(f.source, f.sourceId, y.maxDim(), y.above(), y.bound()), {}};
  OpetopicSet& x = out.set;
  std::map<std::string, std::vector<std::string>> fiber;  // cell of y -> cells of x over it

  auto add = [&](const std::string& yid, size_t k, size_t total, const std::function<const Cell&(const std::string&)>& make) {
    std::string id = total == 1 ? yid : yid + "~" + std::to_string(k + 1);
    while (x.find(id)) id += "'";
    const Cell& c = make(id);
    out.projection[c.id] = yid;
    if (c.valid()) fiber[yid].push_back(c.id);
  };

  for (const Cell* c : y.stratum(0)) {
    if (!c->valid()) continue;
    auto pre = f.typePreimages(c->type);
    for (size_t k = 0; k < pre.size(); ++k) add(c->id, k, pre.size(), [&](const std::string& id) -> const Cell& { return x.addPoint(id, pre[k]); });
  }

  for (int m = 1; m <= y.maxDim(); ++m) {
    for (const Cell* c : y.stratum(m)) {
      if (!c->valid()) continue;
      std::vector<std::vector<std::string>> choices;
      for (const std::string& a : c->infaces) choices.push_back(fiber[a]);
      choices.push_back(fiber[c->outface]);
      // Leaf cells of a bare-edge pasting are not reachable through labels.
      const bool bare = m >= 2 && c->opening.tree().isEdge();
      if (bare) choices.push_back(fiber[c->opening.tree().root.type.name()]);

      struct Candidate {
        Value opening;
        std::vector<std::string> ins;
        std::string outface;
      };
      std::vector<Candidate> found;
      std::vector<std::string> pick;
      std::function<void(size_t)> rec = [&](size_t i) {
        if (i < choices.size()) {
          for (const std::string& s : choices[i]) {
            pick.push_back(s);
            rec(i + 1);
            pick.pop_back();
          }
          return;
        }
        std::vector<std::string> ins(pick.begin(), pick.begin() + static_cast<long>(c->infaces.size()));
        const std::string& outface = pick[c->infaces.size()];
        if (m == 1) {
          for (const Value& g : f.opPreimages(c->opening)) {
            auto p = x.base().profile(g);
            if (!p || p->arity() != static_cast<int>(ins.size())) continue;
            bool fits = x.cell(outface).type == p->output;
            for (size_t i2 = 0; i2 < ins.size() && fits; ++i2) fits = x.cell(ins[i2]).type == p->inputs[i2];
            if (fits) found.push_back({g, ins, outface});
          }
          return;
        }
        Tree t = c->opening.tree();
        std::map<std::string, size_t> idx;
        for (size_t i2 = 0; i2 < c->opening.order().size(); ++i2) idx[c->opening.order()[i2]] = i2;
        std::function<void(Node&)> relabel = [&](Node& n) {
          const Value& frame = x.cell(ins[idx.at(n.sym)]).frame;
          n.label = frame;
          for (size_t s = 0; s < n.kids.size(); ++s) {
            if (n.kids[s].isLeaf())
              n.kids[s].type = frame.inputs()[s];
            else
              relabel(n.kids[s]);
          }
        };
        if (bare)
          t.root.type = Value::atom(pick.back());
        else
          relabel(t.root);
        try {
          Value opening = static_cast<const SliceOperad&>(x.level(m - 1)).make(t, c->opening.order());
          if (opening.output() == x.cell(outface).frame) found.push_back({opening, ins, outface});
        } catch (const Error&) {
        }
      };
      rec(0);
      for (size_t k = 0; k < found.size(); ++k)
        add(c->id, k, found.size(), [&](const std::string& id) -> const Cell& {
          return x.addFramed(id, m, found[k].opening, found[k].ins, found[k].outface);
        });
    }
  }
  return out;
}

}  // namespace opetope
