#include "opetope/opetopic_set.hpp"

#include <algorithm>
#include <deque>
#include <fstream>
#include <mutex>
#include <sstream>
#include <unordered_map>

#include <json.hpp>

#include "opetope/slice.hpp"
#include "opetope/tabulated.hpp"

namespace opetope {

using nlohmann::json;

const char* truncationName(AboveTruncation a) { return a == AboveTruncation::Open ? "open" : "terminal-above"; }

std::optional<int> SizeBound::at(int dim) const {
  if (perDim.empty() || dim < 1) return std::nullopt;
  return perDim[std::min(static_cast<size_t>(dim - 1), perDim.size() - 1)];
}

struct OpetopicSet::Impl {
  OperadPtr base;
  std::string baseId;
  std::string baseDoc;
  int maxDim = 0;
  AboveTruncation above = AboveTruncation::TerminalAbove;
  SizeBound bound;

  std::deque<Cell> cells;
  std::unordered_map<std::string, Cell*> byId;
  std::vector<std::vector<const Cell*>> strata;
  std::unordered_map<std::string, std::vector<const Cell*>> byFrame, byNiche, byOpening;

  mutable std::mutex mu;
  mutable std::vector<std::shared_ptr<PullbackOperad>> restricted;
  mutable std::vector<OperadPtr> levels;
  mutable CatalogPtr catalog;

  const std::vector<const Cell*>& stratum(int d) const {
    static const std::vector<const Cell*> none;
    return d >= 0 && d < static_cast<int>(strata.size()) ? strata[static_cast<size_t>(d)] : none;
  }

  const Cell* valid(const std::string& id, int dim) const {
    auto it = byId.find(id);
    if (it == byId.end() || it->second->dim != dim || !it->second->valid()) return nullptr;
    return it->second;
  }
};

namespace {

const std::vector<const Cell*> kNoCells;

std::string frameKey(int dim, const Value& v) { return std::to_string(dim) + "|" + v.text(); }

std::string nicheKey(int dim, const Value& opening, const std::vector<std::string>& ins) {
  std::string k = frameKey(dim, opening);
  for (const std::string& s : ins) {
    k += ' ';
    k += s;
  }
  return k;
}

std::vector<Value> atoms(const std::vector<std::string>& ids) {
  std::vector<Value> out;
  out.reserve(ids.size());
  for (const std::string& s : ids) out.push_back(Value::atom(s));
  return out;
}

bool atomSafe(const std::string& s) {
  if (s.empty()) return false;
  for (char c : s)
    if (std::isspace(static_cast<unsigned char>(c)) || c == '(' || c == ')' || c == ':' || c == '*' || c == ';' || c == '"')
      return false;
  return true;
}

}  // namespace

OpetopicSet::OpetopicSet(OperadPtr base, std::string baseId, int maxDim, AboveTruncation above, SizeBound bound)
    : impl_(std::make_unique<Impl>()) {
  if (maxDim < 0) raise(ErrorCode::ValidationFailed, "maxDim must be non-negative");
  impl_->base = std::move(base);
  impl_->baseId = std::move(baseId);
  impl_->maxDim = maxDim;
  impl_->above = above;
  impl_->bound = std::move(bound);
  impl_->strata.resize(static_cast<size_t>(maxDim) + 1);
  impl_->levels.push_back(impl_->base);
}

OpetopicSet::~OpetopicSet() = default;
OpetopicSet::OpetopicSet(OpetopicSet&&) noexcept = default;
OpetopicSet& OpetopicSet::operator=(OpetopicSet&&) noexcept = default;

const Operad& OpetopicSet::base() const { return *impl_->base; }
OperadPtr OpetopicSet::basePtr() const { return impl_->base; }
const std::string& OpetopicSet::baseId() const { return impl_->baseId; }
int OpetopicSet::maxDim() const { return impl_->maxDim; }
AboveTruncation OpetopicSet::above() const { return impl_->above; }
const SizeBound& OpetopicSet::bound() const { return impl_->bound; }
const std::string& OpetopicSet::baseDocument() const { return impl_->baseDoc; }
void OpetopicSet::setBaseDocument(std::string doc) { impl_->baseDoc = std::move(doc); }

const Catalog& OpetopicSet::catalog() const {
  std::lock_guard<std::mutex> lock(impl_->mu);
  if (!impl_->catalog) impl_->catalog = std::make_shared<const Catalog>(impl_->base, impl_->baseId);
  return *impl_->catalog;
}

const PullbackOperad& OpetopicSet::restricted(int m) const {
  if (m < 0) raise(ErrorCode::UnknownType, "negative dimension");
  level(m);
  std::lock_guard<std::mutex> lock(impl_->mu);
  return *impl_->restricted[static_cast<size_t>(m)];
}

const Operad& OpetopicSet::level(int m) const {
  if (m < 0) raise(ErrorCode::UnknownType, "negative dimension");
  std::lock_guard<std::mutex> lock(impl_->mu);
  Impl* im = impl_.get();
  while (static_cast<int>(im->levels.size()) <= m || static_cast<int>(im->restricted.size()) <= m) {
    if (im->restricted.size() < im->levels.size()) {
      const int d = static_cast<int>(im->restricted.size());
      auto typeOf = [im, d](const Value& y) -> std::optional<Value> {
        if (!y.isAtom()) return std::nullopt;
        const Cell* c = im->valid(y.name(), d);
        if (!c) return std::nullopt;
        return d == 0 ? c->type : c->frame;
      };
      auto fiber = [im, d](const Value& s) {
        std::vector<Value> ys;
        auto it = im->byFrame.find(frameKey(d, s));
        if (it != im->byFrame.end())
          for (const Cell* c : it->second) ys.push_back(Value::atom(c->id));
        return ys;
      };
      auto all = [im, d]() {
        std::vector<Value> ys;
        for (const Cell* c : im->stratum(d))
          if (c->valid()) ys.push_back(Value::atom(c->id));
        return ys;
      };
      im->restricted.push_back(std::make_shared<PullbackOperad>(im->levels.back(), typeOf, fiber, all,
                                                                im->levels.back()->name() + "_X" + std::to_string(d)));
    } else {
      im->levels.push_back(sliceOperad(im->restricted.back()));
    }
  }
  return *im->levels[static_cast<size_t>(m)];
}

OperadPtr OpetopicSet::levelPtr(int m) const {
  level(m);
  std::lock_guard<std::mutex> lock(impl_->mu);
  return impl_->levels[static_cast<size_t>(m)];
}

Profile OpetopicSet::openingProfile(int dim, const Value& opening) const { return profileOf(level(dim - 1), opening); }

Cell& OpetopicSet::insert(Cell c) {
  if (!atomSafe(c.id)) raise(ErrorCode::ValidationFailed, "cell id '" + c.id + "' is not a plain identifier");
  if (impl_->byId.count(c.id)) raise(ErrorCode::ValidationFailed, "duplicate cell id " + c.id);
  if (c.dim > impl_->maxDim) {
    c.problem = "dimension " + std::to_string(c.dim) + " exceeds maxDim " + std::to_string(impl_->maxDim);
    c.frame = Value();
  }
  impl_->cells.push_back(std::move(c));
  Cell& stored = impl_->cells.back();
  impl_->byId[stored.id] = &stored;
  if (static_cast<int>(impl_->strata.size()) <= stored.dim) impl_->strata.resize(static_cast<size_t>(stored.dim) + 1);
  impl_->strata[static_cast<size_t>(stored.dim)].push_back(&stored);
  if (stored.valid()) {
    impl_->byFrame[frameKey(stored.dim, frameValue(stored))].push_back(&stored);
    if (stored.dim >= 1) {
      impl_->byNiche[nicheKey(stored.dim, stored.opening, stored.infaces)].push_back(&stored);
      impl_->byOpening[frameKey(stored.dim, stored.opening)].push_back(&stored);
    }
  }
  return stored;
}

const Cell& OpetopicSet::addPoint(const std::string& id, const Value& type) {
  Cell c;
  c.id = id;
  c.dim = 0;
  c.type = type;
  if (!impl_->base->hasType(type)) c.problem = type.text() + " is not a type of " + impl_->base->name();
  return insert(std::move(c));
}

const Cell& OpetopicSet::addArrow(const std::string& id, const Value& op, std::vector<std::string> infaces,
                                  const std::string& outface) {
  Cell c;
  c.id = id;
  c.dim = 1;
  c.opening = op;
  c.infaces = std::move(infaces);
  c.outface = outface;
  auto p = impl_->base->profile(op);
  if (!p) {
    c.problem = op.text() + " is not an operation of " + impl_->base->name();
  } else if (p->arity() != static_cast<int>(c.infaces.size())) {
    c.problem = "opening has arity " + std::to_string(p->arity()) + " but " + std::to_string(c.infaces.size()) + " infaces are given";
  } else {
    for (size_t i = 0; i < c.infaces.size() && c.problem.empty(); ++i) {
      const Cell* a = impl_->valid(c.infaces[i], 0);
      if (!a)
        c.problem = "inface " + c.infaces[i] + " is not a valid 0-cell";
      else if (a->type != p->inputs[i])
        c.problem = "inface " + c.infaces[i] + " has type " + a->type.text() + " but the opening wants " + p->inputs[i].text();
    }
    if (c.problem.empty()) {
      const Cell* b = impl_->valid(outface, 0);
      if (!b)
        c.problem = "outface " + outface + " is not a valid 0-cell";
      else if (b->type != p->output)
        c.problem = "outface " + outface + " has type " + b->type.text() + " but the opening outputs " + p->output.text();
    }
  }
  if (c.problem.empty()) c.frame = Value::pullback(op, atoms(c.infaces), Value::atom(outface));
  return insert(std::move(c));
}

const Cell& OpetopicSet::addPasting(const std::string& id, int dim, const Tree& pasting, std::vector<std::string> order,
                                    const std::string& outface) {
  if (dim < 2) raise(ErrorCode::ValidationFailed, "pastings describe cells of dimension at least 2");
  Cell c;
  c.id = id;
  c.dim = dim;
  c.outface = outface;
  c.rawPasting = treeText(pasting);
  c.rawOrder = order;
  std::map<std::string, std::string> labelOf;
  Tree t = pasting;
  std::function<void(Node&)> relabel = [&](Node& n) {
    if (!c.problem.empty()) return;
    if (n.isLeaf()) {
      if (!n.type.isAtom() || !impl_->valid(n.type.name(), dim - 2))
        c.problem = "leaf " + n.type.text() + " is not a valid " + std::to_string(dim - 2) + "-cell";
      return;
    }
    const Cell* a = n.label.isAtom() ? impl_->valid(n.label.name(), dim - 1) : nullptr;
    if (!a) {
      c.problem = "node " + n.sym + " is labelled by " + n.label.text() + ", not a valid " + std::to_string(dim - 1) + "-cell";
      return;
    }
    labelOf[n.sym] = a->id;
    n.label = a->frame;
    for (Node& k : n.kids) relabel(k);
  };
  relabel(t.root);
  if (c.problem.empty()) {
    for (const std::string& s : order) {
      auto it = labelOf.find(s);
      if (it == labelOf.end()) {
        c.problem = "ordering names unknown symbol " + s;
        break;
      }
      c.infaces.push_back(it->second);
    }
  }
  if (c.problem.empty()) {
    try {
      c.opening = static_cast<const SliceOperad&>(level(dim - 1)).make(t, order);
    } catch (const Error& e) {
      c.problem = std::string("pasting does not compose: ") + e.what();
      c.opening = Value();
    }
  }
  if (c.problem.empty()) {
    const Cell* b = impl_->valid(outface, dim - 1);
    if (!b)
      c.problem = "outface " + outface + " is not a valid " + std::to_string(dim - 1) + "-cell";
    else if (b->frame != c.opening.output())
      c.problem = "outface " + outface + " has a frame that differs from the composite of the pasting";
  }
  if (c.problem.empty()) c.frame = Value::pullback(c.opening, atoms(c.infaces), Value::atom(outface));
  return insert(std::move(c));
}

const Cell& OpetopicSet::addFramed(const std::string& id, int dim, const Value& opening, std::vector<std::string> infaces,
                                   const std::string& outface) {
  if (dim == 1) return addArrow(id, opening, std::move(infaces), outface);
  if (dim < 1) raise(ErrorCode::ValidationFailed, "framed cells have dimension at least 1");
  Cell c;
  c.id = id;
  c.dim = dim;
  c.opening = opening;
  c.infaces = std::move(infaces);
  c.outface = outface;
  if (opening.kind() != ValueKind::Slice) {
    c.problem = "opening is not a pasting";
  } else if (opening.inputs().size() != c.infaces.size()) {
    c.problem = "opening has " + std::to_string(opening.inputs().size()) + " inputs but " + std::to_string(c.infaces.size()) +
                " infaces are given";
  } else {
    for (size_t i = 0; i < c.infaces.size() && c.problem.empty(); ++i) {
      const Cell* a = impl_->valid(c.infaces[i], dim - 1);
      if (!a || a->frame != opening.inputs()[i]) c.problem = "inface " + c.infaces[i] + " does not fit input " + std::to_string(i + 1);
    }
    if (c.problem.empty()) {
      const Cell* b = impl_->valid(outface, dim - 1);
      if (!b || b->frame != opening.output()) c.problem = "outface " + outface + " does not fit the opening";
    }
  }
  if (c.problem.empty()) c.frame = Value::pullback(opening, atoms(c.infaces), Value::atom(outface));
  return insert(std::move(c));
}

const Cell* OpetopicSet::find(const std::string& id) const {
  auto it = impl_->byId.find(id);
  return it == impl_->byId.end() ? nullptr : it->second;
}

const Cell& OpetopicSet::cell(const std::string& id) const {
  const Cell* c = find(id);
  if (!c) raise(ErrorCode::UnknownCell, "no cell " + id);
  return *c;
}

const std::vector<const Cell*>& OpetopicSet::stratum(int dim) const { return impl_->stratum(dim); }

int OpetopicSet::topDim() const {
  for (int d = static_cast<int>(impl_->strata.size()) - 1; d >= 0; --d)
    if (!impl_->strata[static_cast<size_t>(d)].empty()) return d;
  return -1;
}

size_t OpetopicSet::size() const { return impl_->cells.size(); }

std::vector<const Cell*> OpetopicSet::sortedCells() const {
  std::vector<const Cell*> out;
  for (const Cell& c : impl_->cells) out.push_back(&c);
  std::sort(out.begin(), out.end(), [](const Cell* a, const Cell* b) { return std::tie(a->dim, a->id) < std::tie(b->dim, b->id); });
  return out;
}

const Value& OpetopicSet::frameValue(const Cell& c) const { return c.dim == 0 ? c.type : c.frame; }

const std::vector<const Cell*>& OpetopicSet::withFrame(int dim, const Value& frame) const {
  auto it = impl_->byFrame.find(frameKey(dim, frame));
  return it == impl_->byFrame.end() ? kNoCells : it->second;
}

const std::vector<const Cell*>& OpetopicSet::withNiche(int dim, const Value& opening, const std::vector<std::string>& infaces) const {
  auto it = impl_->byNiche.find(nicheKey(dim, opening, infaces));
  return it == impl_->byNiche.end() ? kNoCells : it->second;
}

const std::vector<const Cell*>& OpetopicSet::withOpening(int dim, const Value& opening) const {
  auto it = impl_->byOpening.find(frameKey(dim, opening));
  return it == impl_->byOpening.end() ? kNoCells : it->second;
}

Tree OpetopicSet::pastingOf(const Cell& c) const {
  if (c.dim < 2 || c.opening.isNull()) raise(ErrorCode::ValidationFailed, "cell " + c.id + " has no resolved pasting");
  Tree t = c.opening.tree();
  std::map<std::string, size_t> idx;
  for (size_t i = 0; i < c.opening.order().size(); ++i) idx[c.opening.order()[i]] = i;
  std::function<void(Node&)> rec = [&](Node& n) {
    if (n.isLeaf()) return;
    n.label = Value::atom(c.infaces[idx.at(n.sym)]);
    for (Node& k : n.kids) rec(k);
  };
  rec(t.root);
  return t;
}

Frame frameOf(const OpetopicSet& x, const Cell& c) {
  if (x.find(c.id) != &c) x.cell(c.id);
  if (c.dim == 0) return Frame{0, c.type, {}, {}};
  return Frame{c.dim, c.opening, c.infaces, c.outface};
}

Niche nicheOf(const OpetopicSet& x, const Cell& c) {
  if (x.find(c.id) != &c) x.cell(c.id);
  if (c.dim == 0) raise(ErrorCode::DimensionZero, "0-cell " + c.id + " has no niche");
  return Niche{c.dim, c.opening, c.infaces};
}

Value frameValueOf(const Frame& f) {
  if (f.dim == 0) return f.opening;
  return Value::pullback(f.opening, atoms(f.infaces), Value::atom(f.outface));
}

Value nicheTarget(const OpetopicSet& x, const Niche& n) { return x.openingProfile(n.dim, n.opening).output; }

Value holeFrame(const OpetopicSet& x, const PuncturedNiche& p) {
  return x.openingProfile(p.dim, p.opening).inputs.at(static_cast<size_t>(p.hole));
}

std::vector<const Cell*> occupants(const OpetopicSet& x, const Niche& n) { return x.withNiche(n.dim, n.opening, n.infaces); }

std::vector<const Cell*> frameOccupants(const OpetopicSet& x, const Frame& f) { return x.withFrame(f.dim, frameValueOf(f)); }

std::vector<const Cell*> frameCompetitors(const OpetopicSet& x, const Cell& c) {
  if (!c.valid()) return {};
  return x.withFrame(c.dim, x.frameValue(c));
}

namespace {

Value projectCell(const OpetopicSet& x, const Cell& c);

// Image in O^{(m-1)+} of an opening of dimension m.
Value projectOpening(const OpetopicSet& x, int m, const Value& opening) {
  if (m == 1) return opening;
  Tree t = opening.tree();
  std::function<void(Node&)> rec = [&](Node& n) {
    if (n.isLeaf()) {
      n.type = projectCell(x, x.cell(n.type.name()));
      return;
    }
    n.label = projectOpening(x, m - 1, n.label.base());
    for (Node& k : n.kids) rec(k);
  };
  rec(t.root);
  return x.catalog().slice(m - 1).make(t, opening.order());
}

// Shape of a cell as a type of O^{dim+}.
Value projectCell(const OpetopicSet& x, const Cell& c) {
  if (c.dim == 0) return c.type;
  return projectOpening(x, c.dim, c.opening);
}

}  // namespace

Opetope shapeOf(const OpetopicSet& x, const Cell& c) {
  if (!c.valid()) raise(ErrorCode::ValidationFailed, "cell " + c.id + " is invalid: " + c.problem);
  return Opetope{c.dim, projectCell(x, c)};
}

Report validateSet(const OpetopicSet& x) {
  Report r;
  for (const Cell* c : x.sortedCells()) {
    ++r.checked;
    if (!c->valid()) r.fail("cell " + c->id + " (dim " + std::to_string(c->dim) + "): " + c->problem);
  }
  return r;
}

namespace {

std::string joinIds(const std::vector<std::string>& ids, int hole = -1) {
  std::string s = "(";
  for (size_t i = 0; i < ids.size(); ++i) {
    if (i) s += ' ';
    s += static_cast<int>(i) == hole ? std::string("?") : ids[i];
  }
  return s + ")";
}

std::string openingText(const OpetopicSet& x, int dim, const Value& opening, const std::vector<std::string>& ids, int hole) {
  if (dim == 1) return opening.text();
  Tree t = opening.tree();
  std::map<std::string, size_t> idx;
  for (size_t i = 0; i < opening.order().size(); ++i) idx[opening.order()[i]] = i;
  std::function<void(Node&)> rec = [&](Node& n) {
    if (n.isLeaf()) return;
    size_t i = idx.at(n.sym);
    n.label = Value::atom(static_cast<int>(i) == hole ? "?" : ids[i]);
    for (Node& k : n.kids) rec(k);
  };
  rec(t.root);
  (void)x;
  return treeText(t);
}

}  // namespace

std::string describeNiche(const OpetopicSet& x, const Niche& n) {
  return std::to_string(n.dim) + "-niche " + joinIds(n.infaces) + " over " + openingText(x, n.dim, n.opening, n.infaces, -1);
}

std::string describePunctured(const OpetopicSet& x, const PuncturedNiche& p) {
  return std::to_string(p.dim) + "-punctured niche " + joinIds(p.infaces, p.hole) + " over " +
         openingText(x, p.dim, p.opening, p.infaces, p.hole);
}

std::string setToJson(const OpetopicSet& x) {
  json j;
  if (!x.baseDocument().empty())
    j["base"] = json::parse(x.baseDocument());
  else
    j["base"] = x.baseId();
  j["maxDim"] = x.maxDim();
  j["aboveTruncation"] = truncationName(x.above());
  if (!x.bound().perDim.empty()) {
    if (x.bound().perDim.size() == 1)
      j["sizeBound"] = x.bound().perDim[0];
    else
      j["sizeBound"] = x.bound().perDim;
  }
  j["cells"] = json::array();
  for (const Cell* c : x.sortedCells()) {
    json e;
    e["id"] = c->id;
    e["dim"] = c->dim;
    if (c->dim == 0) {
      e["type"] = c->type.text();
    } else if (c->dim == 1) {
      e["op"] = c->opening.text();
      e["infaces"] = c->infaces;
      e["outface"] = c->outface;
    } else {
      if (!c->opening.isNull()) {
        e["pasting"] = treeText(x.pastingOf(*c));
        e["order"] = c->opening.order();
      } else {
        e["pasting"] = c->rawPasting;
        e["order"] = c->rawOrder;
      }
      e["outface"] = c->outface;
    }
    j["cells"].push_back(std::move(e));
  }
  return j.dump(2);
}

namespace {

void rejectUnknownKeys(const json& j, std::initializer_list<const char*> keys, const std::string& where) {
  if (!j.is_object()) raise(ErrorCode::SyntaxError, where + ": expected an object");
  for (auto it = j.begin(); it != j.end(); ++it) {
    bool ok = false;
    for (const char* k : keys) ok = ok || it.key() == k;
    if (!ok) raise(ErrorCode::SyntaxError, where + ": unknown key '" + it.key() + "'");
  }
}

Value atomOf(const SExpr& e) {
  if (!e.isAtom()) syntaxError(e, "expected a cell id");
  return Value::atom(e.atom);
}

}  // namespace

OpetopicSet setFromJson(const std::string& text) {
  json j;
  try {
    j = json::parse(text);
  } catch (const json::exception& e) {
    raise(ErrorCode::SyntaxError, std::string("opetopic-set document: ") + e.what());
  }
  rejectUnknownKeys(j, {"base", "maxDim", "aboveTruncation", "sizeBound", "cells"}, "opetopic-set document");
  try {
    OperadPtr base;
    std::string baseId, baseDoc;
    if (j.at("base").is_string()) {
      baseId = j["base"].get<std::string>();
      base = operadByName(baseId);
    } else {
      baseDoc = j["base"].dump();
      auto t = TabulatedOperad::fromJson(baseDoc);
      baseId = t->name();
      base = t;
    }
    AboveTruncation above = AboveTruncation::TerminalAbove;
    if (j.contains("aboveTruncation")) {
      std::string a = j["aboveTruncation"].get<std::string>();
      if (a == "open")
        above = AboveTruncation::Open;
      else if (a != "terminal-above")
        raise(ErrorCode::SyntaxError, "aboveTruncation must be \"open\" or \"terminal-above\"");
    }
    SizeBound bound;
    if (j.contains("sizeBound")) {
      if (j["sizeBound"].is_array())
        bound.perDim = j["sizeBound"].get<std::vector<int>>();
      else
        bound.perDim = {j["sizeBound"].get<int>()};
    }
    std::vector<json> cells(j.at("cells").begin(), j.at("cells").end());
    int maxDim = 0;
    if (j.contains("maxDim"))
      maxDim = j["maxDim"].get<int>();
    else
      for (const json& c : cells) maxDim = std::max(maxDim, c.at("dim").get<int>());
    OpetopicSet x(base, baseId, maxDim, above, bound);
    x.setBaseDocument(baseDoc);
    std::stable_sort(cells.begin(), cells.end(), [](const json& a, const json& b) { return a.at("dim").get<int>() < b.at("dim").get<int>(); });
    for (const json& c : cells) {
      rejectUnknownKeys(c, {"id", "dim", "type", "op", "infaces", "pasting", "order", "outface"}, "cell entry");
      const std::string id = c.at("id").get<std::string>();
      const int dim = c.at("dim").get<int>();
      if (dim == 0) {
        x.addPoint(id, parseTypeText(*base, c.at("type").get<std::string>()));
      } else if (dim == 1) {
        x.addArrow(id, parseOperationText(*base, c.at("op").get<std::string>()), c.at("infaces").get<std::vector<std::string>>(),
                   c.at("outface").get<std::string>());
      } else if (dim > 1) {
        auto items = parseSExprs(c.at("pasting").get<std::string>());
        size_t pos = 0;
        Tree t = parseTreeItems(items, pos, atomOf, atomOf);
        if (pos != items.size()) syntaxError(items[pos], "trailing input after pasting");
        x.addPasting(id, dim, t, c.at("order").get<std::vector<std::string>>(), c.at("outface").get<std::string>());
      } else {
        raise(ErrorCode::SyntaxError, "cell " + id + " has a negative dimension");
      }
    }
    return x;
  } catch (const json::exception& e) {
    raise(ErrorCode::SyntaxError, std::string("opetopic-set document: ") + e.what());
  }
}

OpetopicSet loadSet(const std::string& path) {
  std::ifstream in(path);
  if (!in) raise(ErrorCode::SyntaxError, "cannot read " + path);
  std::stringstream buf;
  buf << in.rdbuf();
  return setFromJson(buf.str());
}

}  // namespace opetope
