#pragma once

#include <map>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "opetope/opetopic_set.hpp"
#include "opetope/tabulated.hpp"

namespace opetope {

struct Morphism {
  std::string name, dom, cod;
};

// Composition is diagrammatic: compose(f, g) is "f then g" for f: a -> b, g: b -> c.
struct FiniteCategory {
  std::vector<std::string> objects;
  std::vector<Morphism> morphisms;
  std::map<std::pair<std::string, std::string>, std::string> composition;
  std::map<std::string, std::string> identities;

  const Morphism& morphism(const std::string& name) const;  // UnknownOperation
  std::vector<std::string> homs(const std::string& a, const std::string& b) const;
  std::optional<std::string> compose(const std::string& f, const std::string& g) const;

  // {"objects": [...], "homs": {"a": {"b": [...]}}, "compose": [[f, g, fg], ...],
  //  "identities": {"a": "1a"}}. A monoid document {"elements", "unit", "table"}
  // is accepted too and read as a one-object category.
  static FiniteCategory fromJson(const std::string& text);
  std::string toJson() const;
};

Report checkCategoryLaws(const FiniteCategory& c);

// One object "o"; f then g is the product f*g. Entries with the unit may be omitted.
FiniteCategory categoryFromMonoid(const std::vector<std::string>& elements, const std::string& unit,
                                  const std::map<std::pair<std::string, std::string>, std::string>& table);

// Brute-force search for an isomorphism of categories.
bool isomorphic(const FiniteCategory& a, const FiniteCategory& b);

struct Monoid {
  std::vector<std::string> elements;
  std::string unit;
  std::map<std::pair<std::string, std::string>, std::string> table;

  // {"elements": [...], "unit": "1", "table": [[x, y, xy], ...]}
  static Monoid fromJson(const std::string& text);
  std::string product(const std::string& x, const std::string& y) const;
};

// Objects and morphisms of a category typed over a base operad: each object
// gets a type and each morphism a unary operation.
struct CategoryTyping {
  OperadPtr base;
  std::string baseId;
  std::map<std::string, Value> objectType;
  std::map<std::string, Value> morphismOp;
};

struct NerveOptions {
  int maxDim = 3;
  SizeBound bound = SizeBound{{3, 3, 2}};
  bool checkLaws = true;  // ValidationFailed when the category laws fail
};

// 0-cells = objects, 1-cells = morphisms, one 2-cell per composable chain with
// outface its composite, unique fillers above.
OpetopicSet nerveOfCategory(const FiniteCategory& c, const NerveOptions& opts = {},
                            const std::optional<CategoryTyping>& typing = std::nullopt);

// A functor between finite categories.
struct FiniteFunctor {
  FiniteCategory source, target;
  std::map<std::string, std::string> onObjects, onMorphisms;
};

// The collage of F as a category over F1: source objects keep their names,
// target names get a trailing quote, and c>h is the arrow from c to the target
// of h for each h: F(c) -> d.
std::pair<FiniteCategory, CategoryTyping> collage(const FiniteFunctor& f);
OpetopicSet nerveOfFunctor(const FiniteFunctor& f, const NerveOptions& opts = {});

// 0-cells = carrier elements, one 1-cell per 1-niche with outface the action,
// unique fillers above.
OpetopicSet nerveOfAlgebra(OperadPtr o, const std::string& baseId, const AlgebraTable& a, int maxDim, const SizeBound& bound,
                           bool check = true);
// A set as an I-algebra.
AlgebraTable setAsAlgebra(const std::vector<std::string>& elements);
// A monoid as an I+-algebra: an operation multiplies its inputs in chain order,
// leaf side first.
AlgebraTable monoidAsAlgebra(const Monoid& m);

// Carriers from 0-cells, actions from the unique universal occupants of 1-niches.
// NotCoherent when X is not 0-coherent.
AlgebraTable extractAlgebra(const OpetopicSet& x, long budget = 10'000'000);
// Over base I; NotCoherent when X is not 1-coherent or the extracted laws fail.
FiniteCategory extractCategory(const OpetopicSet& x, long budget = 10'000'000);

// Pullback along the one-type inclusion I -> O at s. UnknownType.
OpetopicSet restrictToType(const OpetopicSet& x, const Value& s);
// Drops stratum 0: m-cells become (m-1)-cells over level(1) of X.
OpetopicSet underlying(const OpetopicSet& x);

}  // namespace opetope
