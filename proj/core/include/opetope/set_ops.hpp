#pragma once

#include <functional>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "opetope/opetopic_set.hpp"

namespace opetope {

// Niches assembled from valid cells: for dim >= 2 every planar tree of
// (dim-1)-cells with every top permutation and node ordering, keeping pastings
// within the set's size bound at dim and dim-1. Deterministic, duplicate-free.
// Throws Unbounded when the bound is missing and the base is not finite.
using NicheSink = std::function<bool(const Niche&)>;
void forEachNiche(const OpetopicSet& x, int dim, const NicheSink& sink);
std::vector<Niche> nichesOf(const OpetopicSet& x, int dim);
// Every niche punctured at every position, duplicates removed.
std::vector<PuncturedNiche> puncturedNichesOf(const OpetopicSet& x, int dim);

// For dim = fromDim..maxDim, one new cell per niche and per outface candidate.
// Ids are prefix + dim + "." + counter. Throws BudgetExceeded past maxCells.
void fillUniquely(OpetopicSet& x, int fromDim, const std::string& prefix = "u", long maxCells = 10'000'000);

// One 0-cell per type of O and one cell per frame above, up to maxDim.
OpetopicSet terminalSet(OperadPtr o, const std::string& baseId, int maxDim, const SizeBound& bound, long maxCells = 10'000'000);
OpetopicSet terminalSet(const std::string& baseId, int maxDim, int sizeBound, long maxCells = 10'000'000);

// Operad morphism f: O -> O' riding F on types, with preimage enumerators
// used by pullbackSet.
struct OperadMorphism {
  OperadPtr source;
  std::string sourceId;
  OperadPtr target;
  std::function<Value(const Value&)> onType;
  std::function<Value(const Value&)> onOp;
  std::function<std::vector<Value>(const Value&)> typePreimages;
  std::function<std::vector<Value>(const Value&)> opPreimages;
};

OperadMorphism identityMorphism(OperadPtr o, const std::string& id);
// The morphism I -> O sending pt to s and 1 to the identity at s.
OperadMorphism typeInclusion(OperadPtr target, const Value& s);

using CellMap = std::map<std::string, std::string>;

// Image of a frame (a type for dim 0) or of an opening under (f, phi).
Value mapFrame(const OperadMorphism& f, const CellMap& phi, int dim, const Value& frame);
Value mapOpening(const OperadMorphism& f, const CellMap& phi, int dim, const Value& opening);
Niche mapNiche(const OperadMorphism& f, const CellMap& phi, const Niche& n);
PuncturedNiche mapPunctured(const OperadMorphism& f, const CellMap& phi, const PuncturedNiche& p);

// phi must cover every cell of x (UnknownCell otherwise). Without f the map
// rides the identity of the shared base.
Report checkMorphism(const CellMap& phi, const OpetopicSet& x, const OpetopicSet& y, const OperadMorphism* f = nullptr);

// Extends a map on 0-cells through the unique occupants of the image frames;
// nullopt when some image frame has no occupant or several.
std::optional<CellMap> extendMorphism(const OpetopicSet& x, const OpetopicSet& y, const CellMap& points,
                                      const OperadMorphism* f = nullptr);

struct PulledBack {
  OpetopicSet set;
  CellMap projection;  // pulled-back cell -> cell of the original
};

PulledBack pullbackSet(const OperadMorphism& f, const OpetopicSet& y);

}  // namespace opetope
