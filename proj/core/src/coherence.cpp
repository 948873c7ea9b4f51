#include "opetope/coherence.hpp"

#include <json.hpp>

#include "opetope/set_ops.hpp"
#include "opetope/slice.hpp"

namespace opetope {

using json = nlohmann::ordered_json;

const char* verdictName(VerdictValue v) {
  switch (v) {
    case VerdictValue::Holds: return "holds";
    case VerdictValue::Fails: return "fails";
    case VerdictValue::Exhausted: return "exhausted";
  }
  return "?";
}

namespace {

json verdictJson(const Verdict& v) {
  json j;
  j["verdict"] = verdictName(v.value);
  if (!v.witness.empty()) j["witness"] = v.witness;
  j["consumed"] = v.consumed;
  return j;
}

std::string puncturedKey(const PuncturedNiche& p) {
  std::string k = std::to_string(p.dim) + "|" + p.opening.text() + "|" + std::to_string(p.hole);
  for (const std::string& s : p.infaces) k += " " + s;
  return k;
}

std::vector<Value> atomList(const std::vector<std::string>& ids) {
  std::vector<Value> out;
  for (const std::string& s : ids) out.push_back(Value::atom(s));
  return out;
}

}  // namespace

std::string verdictToJson(const Verdict& v) { return verdictJson(v).dump(2); }

std::string reportToJson(const CoherenceReport& r) {
  json j = verdictJson(r.verdict);
  j["nichesChecked"] = r.nichesChecked;
  j["compositesChecked"] = r.compositesChecked;
  j["nichesWithoutUniversal"] = r.nichesWithoutUniversal;
  j["nonUniversalComposites"] = r.nonUniversalComposites;
  return j.dump(2);
}

CoherenceChecker::CoherenceChecker(const OpetopicSet& x, int n, long budget) : x_(x), n_(n), budget_(budget) {
  if (n < 0) raise(ErrorCode::ValidationFailed, "n must be non-negative");
}

void CoherenceChecker::spend() {
  if (++consumed_ > budget_) throw Exhausted{};
}

template <class F>
Verdict CoherenceChecker::run(F&& f) {
  const long before = consumed_;
  Verdict v;
  try {
    Outcome o = f();
    v.value = o.ok ? VerdictValue::Holds : VerdictValue::Fails;
    v.witness = std::move(o.witness);
  } catch (const Exhausted&) {
    v.value = VerdictValue::Exhausted;
    v.witness = "budget of " + std::to_string(budget_) + " recursion nodes exhausted";
  }
  v.consumed = consumed_ - before;
  return v;
}

PuncturedNiche CoherenceChecker::twoNodeNiche(int dim, const Value& rootFrame, int slot, const Value& kidFrame,
                                              const std::string& rootId, const std::string& kidId, bool kidFirst) const {
  auto leaves = [](const Value& frame) {
    std::vector<Node> out;
    for (const Value& t : frame.inputs()) out.push_back(Node::leaf(t));
    return out;
  };
  std::vector<Node> kids = leaves(rootFrame);
  kids.at(static_cast<size_t>(slot)) = Node::node("B", kidFrame, leaves(kidFrame));
  Tree t{Node::node("A", rootFrame, std::move(kids)), {}};
  t.perm = identityPerm(leafCount(t.root));
  std::vector<std::string> order = kidFirst ? std::vector<std::string>{"B", "A"} : std::vector<std::string>{"A", "B"};
  const auto& lm = static_cast<const SliceOperad&>(x_.level(dim - 1));
  PuncturedNiche p;
  p.dim = dim;
  p.opening = lm.make(t, order);
  p.infaces = kidFirst ? std::vector<std::string>{kidId, rootId} : std::vector<std::string>{rootId, kidId};
  p.hole = p.infaces[0].empty() ? 0 : 1;
  return p;
}

CoherenceChecker::Outcome CoherenceChecker::balanced(const PuncturedNiche& p) {
  if (p.dim > n_ + 1) return {};
  const std::string key = puncturedKey(p);
  if (auto it = balancedMemo_.find(key); it != balancedMemo_.end()) return it->second;
  spend();
  Outcome o = clauseOne(p);
  if (o.ok) o = clauseTwo(p);
  balancedMemo_[key] = o;
  return o;
}

// Every extension b extends to a hole filler with a universal occupant.
CoherenceChecker::Outcome CoherenceChecker::clauseOne(const PuncturedNiche& p) {
  const int m = p.dim;
  const Profile prof = x_.openingProfile(m, p.opening);
  const auto& fillers = x_.withFrame(m - 1, prof.inputs.at(static_cast<size_t>(p.hole)));
  for (const Cell* b : x_.withFrame(m - 1, prof.output)) {
    bool found = false;
    for (const Cell* a : fillers) {
      std::vector<std::string> ins = p.infaces;
      ins[static_cast<size_t>(p.hole)] = a->id;
      for (const Cell* u : x_.withFrame(m, Value::pullback(p.opening, atomList(ins), Value::atom(b->id))))
        if (universal(*u).ok) {
          found = true;
          break;
        }
      if (found) break;
    }
    if (!found) return {false, "extension " + b->id + " of " + describePunctured(x_, p) + " has no universal filler"};
  }
  return {};
}

// For each universal occupant u and frame-competitor a' of its hole filler a,
// the two punctured niches (a' -> ? a, u) are balanced.
CoherenceChecker::Outcome CoherenceChecker::clauseTwo(const PuncturedNiche& p) {
  const int m = p.dim;
  if (m + 1 > n_ + 1) return {};
  const Profile prof = x_.openingProfile(m, p.opening);
  for (const Cell* a : x_.withFrame(m - 1, prof.inputs.at(static_cast<size_t>(p.hole)))) {
    std::vector<std::string> ins = p.infaces;
    ins[static_cast<size_t>(p.hole)] = a->id;
    for (const Cell* u : x_.withNiche(m, p.opening, ins)) {
      if (!universal(*u).ok) continue;
      const Value idFrame = identity(x_.level(m - 1), x_.frameValue(*a));
      for (const Cell* a2 : frameCompetitors(x_, *a)) {
        const Value h = x_.restricted(m - 1).lift(idFrame, {Value::atom(a2->id)}, Value::atom(a->id));
        for (bool hFirst : {true, false}) {
          PuncturedNiche q = twoNodeNiche(m + 1, u->frame, p.hole, h, u->id, "", hFirst);
          Outcome o = balanced(q);
          if (!o.ok)
            return {false, "universal occupant " + u->id + " of " + describePunctured(x_, p) + " with competitor " + a2->id +
                               " of " + a->id + ": " + o.witness};
        }
      }
    }
  }
  return {};
}

CoherenceChecker::Outcome CoherenceChecker::universal(const Cell& c) {
  if (c.dim < 1) raise(ErrorCode::DimensionZero, "points have no niche");
  if (!c.valid()) return {false, "cell " + c.id + " is invalid"};
  if (auto it = universalMemo_.find(c.id); it != universalMemo_.end()) return it->second;
  spend();
  Outcome o;
  const int m = c.dim;
  if (m > n_) {
    auto occ = occupants(x_, nicheOf(x_, c));
    if (occ.size() != 1) o = {false, "cell " + c.id + " has " + std::to_string(occ.size() - 1) + " niche-competitors"};
  } else {
    const Cell& d = x_.cell(c.outface);
    const Value idFrame = identity(x_.level(m - 1), x_.frameValue(d));
    for (const Cell* d2 : frameCompetitors(x_, d)) {
      const Value h = x_.restricted(m - 1).lift(idFrame, {Value::atom(d.id)}, Value::atom(d2->id));
      for (bool uFirst : {true, false}) {
        PuncturedNiche q = twoNodeNiche(m + 1, h, 0, c.frame, "", c.id, uFirst);
        Outcome r = balanced(q);
        if (!r.ok) {
          o = {false, "cell " + c.id + " with competitor " + d2->id + " of " + d.id + ": " + r.witness};
          break;
        }
      }
      if (!o.ok) break;
    }
  }
  universalMemo_[c.id] = o;
  return o;
}

Verdict CoherenceChecker::isBalanced(const PuncturedNiche& p) {
  return run([&] { return balanced(p); });
}

Verdict CoherenceChecker::isUniversal(const Cell& c) {
  return run([&] { return universal(c); });
}

std::vector<const Cell*> CoherenceChecker::universalOccupants(const Niche& niche) {
  std::vector<const Cell*> out;
  for (const Cell* u : occupants(x_, niche)) {
    Verdict v = isUniversal(*u);
    if (v.exhausted()) raise(ErrorCode::BudgetExceeded, v.witness);
    if (v.holds()) out.push_back(u);
  }
  return out;
}

std::vector<const Cell*> CoherenceChecker::compositesOf(const Niche& niche) {
  std::vector<const Cell*> out;
  for (const Cell* u : universalOccupants(niche)) out.push_back(&x_.cell(u->outface));
  return out;
}

CoherenceReport CoherenceChecker::checkNCoherent() {
  if (x_.maxDim() < n_ + 1)
    raise(ErrorCode::ValidationFailed, "checking " + std::to_string(n_) + "-coherence needs cells up to dimension " +
                                           std::to_string(n_ + 1) + ", the set stops at " + std::to_string(x_.maxDim()));
  CoherenceReport r;
  const long before = consumed_;
  try {
    for (int m = 1; m <= x_.maxDim(); ++m)
      forEachNiche(x_, m, [&](const Niche& niche) {
        ++r.nichesChecked;
        bool found = false;
        for (const Cell* u : occupants(x_, niche))
          if (universal(*u).ok) {
            found = true;
            break;
          }
        if (!found) r.nichesWithoutUniversal.push_back(describeNiche(x_, niche));
        return true;
      });
    for (int m = 2; m <= x_.maxDim(); ++m)
      for (const Cell* u : x_.stratum(m)) {
        if (!u->valid() || !universal(*u).ok) continue;
        bool inputsUniversal = true;
        for (const std::string& a : u->infaces) inputsUniversal = inputsUniversal && universal(x_.cell(a)).ok;
        if (!inputsUniversal) continue;
        ++r.compositesChecked;
        Outcome o = universal(x_.cell(u->outface));
        if (!o.ok) r.nonUniversalComposites.push_back("outface " + u->outface + " of universal cell " + u->id + ": " + o.witness);
      }
    if (!r.nichesWithoutUniversal.empty()) {
      r.verdict.value = VerdictValue::Fails;
      r.verdict.witness = r.nichesWithoutUniversal.front() + " has no universal occupant";
    } else if (!r.nonUniversalComposites.empty()) {
      r.verdict.value = VerdictValue::Fails;
      r.verdict.witness = r.nonUniversalComposites.front();
    }
  } catch (const Exhausted&) {
    r.verdict.value = VerdictValue::Exhausted;
    r.verdict.witness = "budget of " + std::to_string(budget_) + " recursion nodes exhausted";
  }
  r.verdict.consumed = consumed_ - before;
  return r;
}

PuncturedNiche CoherenceChecker::fNiche() const {
  const Value f = Value::atom("f");
  auto p = x_.base().profile(f);
  if (!p || p->arity() != 1)
    raise(ErrorCode::TypeMismatch, "virtual functor predicates need the base F1, not " + x_.base().name());
  return PuncturedNiche{1, f, {""}, 0};
}

Verdict CoherenceChecker::essentiallySurjective() {
  PuncturedNiche p = fNiche();
  return run([&] { return clauseOne(p); });
}

Verdict CoherenceChecker::fullyFaithful() {
  PuncturedNiche p = fNiche();
  return run([&] { return clauseTwo(p); });
}

Verdict CoherenceChecker::isEquivalence() { return isBalanced(fNiche()); }

Verdict isBalanced(const OpetopicSet& x, const PuncturedNiche& p, int n, long budget) {
  return CoherenceChecker(x, n, budget).isBalanced(p);
}

Verdict isUniversal(const OpetopicSet& x, const Cell& c, int n, long budget) {
  return CoherenceChecker(x, n, budget).isUniversal(c);
}

std::vector<const Cell*> universalOccupants(const OpetopicSet& x, const Niche& niche, int n, long budget) {
  return CoherenceChecker(x, n, budget).universalOccupants(niche);
}

std::vector<const Cell*> compositesOf(const OpetopicSet& x, const Niche& niche, int n, long budget) {
  return CoherenceChecker(x, n, budget).compositesOf(niche);
}

CoherenceReport checkNCoherent(const OpetopicSet& x, int n, long budget) {
  return CoherenceChecker(x, n, budget).checkNCoherent();
}

Verdict essentiallySurjective(const OpetopicSet& x, int n, long budget) {
  return CoherenceChecker(x, n, budget).essentiallySurjective();
}

Verdict fullyFaithful(const OpetopicSet& x, int n, long budget) { return CoherenceChecker(x, n, budget).fullyFaithful(); }

Verdict isEquivalence(const OpetopicSet& x, int n, long budget) { return CoherenceChecker(x, n, budget).isEquivalence(); }

}  // namespace opetope
