#include <gtest/gtest.h>

#include <json.hpp>
#include <random>

#include "opetope/nerve.hpp"
#include "opetope/opetopic_set.hpp"
#include "opetope/set_ops.hpp"
#include "opetope/slice.hpp"
#include "oracles.hpp"

using namespace opetope;
using nlohmann::json;

namespace {

std::string corpus(const std::string& name) { return std::string(OPETOPE_CORPUS_DIR) + "/" + name; }

FiniteCategory poset() { return FiniteCategory::fromJson(oracle::readFile(corpus("poset3.json"))); }

NerveOptions upTo(int dim) {
  NerveOptions o;
  o.maxDim = dim;
  return o;
}

}  // namespace

TEST(OpetopicSet, HandBuiltCells) {
  OpetopicSet x(operadI(), "I", 2);
  auto i = operadI();
  x.addPoint("a", Value::atom("pt"));
  x.addPoint("b", Value::atom("pt"));
  x.addArrow("f", parseOperationText(*i, "1"), {"a"}, "b");
  x.addArrow("g", parseOperationText(*i, "1"), {"b"}, "b");
  x.addArrow("h", parseOperationText(*i, "1"), {"a"}, "b");
  Tree p{Node::node("A", Value::atom("g"), {Node::node("B", Value::atom("f"), {Node::leaf(Value::atom("a"))})}), {}};
  EXPECT_TRUE(x.addPasting("k", 2, p, {"B", "A"}, "h").valid());
  EXPECT_FALSE(x.addPasting("bad", 2, p, {"B", "A"}, "g").valid());  // g starts at b
  EXPECT_EQ(x.stratum(0).size(), 2u);
  EXPECT_EQ(x.stratum(1).size(), 3u);
  EXPECT_FALSE(validateSet(x).ok);
  EXPECT_EQ(x.cell("k").infaces, (std::vector<std::string>{"f", "g"}));
  EXPECT_EQ(frameCompetitors(x, x.cell("f")).size(), 2u);  // f and h share a frame
  EXPECT_THROW(x.addPoint("a", Value::atom("pt")), Error);
  EXPECT_THROW(x.cell("nope"), Error);
}

TEST(OpetopicSet, BrokenCorpusSetIsInvalid) {
  OpetopicSet x = loadSet(corpus("broken.json"));
  Report r = validateSet(x);
  EXPECT_FALSE(r.ok);
  ASSERT_FALSE(r.violations.empty());
  EXPECT_NE(r.violations[0].find("cell h"), std::string::npos);
}

TEST(OpetopicSet, NervesValidate) {
  EXPECT_TRUE(validateSet(nerveOfCategory(poset(), upTo(2))).ok);
  EXPECT_TRUE(validateSet(loadSet(corpus("z2-nerve.json"))).ok);
}

TEST(OpetopicSet, JsonRoundTripIsStable) {
  OpetopicSet x = nerveOfCategory(poset(), upTo(2));
  std::string text = setToJson(x);
  OpetopicSet y = setFromJson(text);
  EXPECT_EQ(setToJson(y), text);
  EXPECT_EQ(y.size(), x.size());
}

// Re-pointing the outface of a 2-cell keeps it valid exactly when the new
// 1-cell has the same endpoints.
TEST(OpetopicSet, OutfaceMutationsAreDetected) {
  FiniteCategory c = poset();
  OpetopicSet x = nerveOfCategory(c, upTo(2));
  json doc = json::parse(setToJson(x));
  std::vector<size_t> twoCells;
  for (size_t i = 0; i < doc["cells"].size(); ++i)
    if (doc["cells"][i]["dim"] == 2) twoCells.push_back(i);
  std::mt19937 rng(51);
  int invalid = 0;
  for (int trial = 0; trial < 60; ++trial) {
    size_t at = twoCells[std::uniform_int_distribution<size_t>(0, twoCells.size() - 1)(rng)];
    const Morphism& target = c.morphisms[std::uniform_int_distribution<size_t>(0, c.morphisms.size() - 1)(rng)];
    json mutated = doc;
    std::string old = mutated["cells"][at]["outface"];
    mutated["cells"][at]["outface"] = target.name;
    const Morphism& was = c.morphism(old);
    bool expected = was.dom == target.dom && was.cod == target.cod;
    EXPECT_EQ(validateSet(setFromJson(mutated.dump())).ok, expected) << old << " -> " << target.name;
    invalid += !expected;
  }
  EXPECT_GT(invalid, 10);
}

TEST(OpetopicSet, ArrowMutationBreaksPastings) {
  json doc = json::parse(setToJson(nerveOfCategory(poset(), upTo(2))));
  for (auto& cell : doc["cells"])
    if (cell["id"] == "bc") cell["outface"] = "a";
  Report r = validateSet(setFromJson(doc.dump()));
  EXPECT_FALSE(r.ok);
}

TEST(OpetopicSet, TerminalSetHasUniqueOccupants) {
  OpetopicSet t = terminalSet("I", 2, 3);
  EXPECT_EQ(t.stratum(0).size(), 1u);
  EXPECT_EQ(t.stratum(1).size(), 1u);
  EXPECT_EQ(t.stratum(2).size(), 10u);
  for (int m = 1; m <= 2; ++m)
    for (const Niche& n : nichesOf(t, m)) EXPECT_EQ(occupants(t, n).size(), 1u) << describeNiche(t, n);
}

TEST(OpetopicSet, ShapesOfNerveCells) {
  OpetopicSet x = nerveOfCategory(poset(), upTo(2));
  for (const Cell* c : x.stratum(2)) {
    Opetope w = shapeOf(x, *c);
    EXPECT_EQ(w.dim, 2);
    EXPECT_EQ(w.value.arity(), static_cast<int>(c->infaces.size()));
  }
}

TEST(OpetopicSet, MorphismIntoTerminalSet) {
  OpetopicSet x = nerveOfCategory(poset(), upTo(2));
  OpetopicSet t = terminalSet(operadI(), "I", 2, x.bound());
  const std::string pt = t.stratum(0).front()->id;
  auto phi = extendMorphism(x, t, {{"a", pt}, {"b", pt}, {"c", pt}});
  ASSERT_TRUE(phi);
  EXPECT_EQ(phi->size(), x.size());
  EXPECT_TRUE(checkMorphism(*phi, x, t).ok);
  // Sending a 1-cell to a point is not a map.
  CellMap bad = *phi;
  bad["ab"] = pt;
  EXPECT_FALSE(checkMorphism(bad, x, t).ok);
}

TEST(OpetopicSet, IdentityMapOnNerve) {
  OpetopicSet x = nerveOfCategory(poset(), upTo(2));
  CellMap id;
  for (const Cell* c : x.sortedCells()) id[c->id] = c->id;
  EXPECT_TRUE(checkMorphism(id, x, x).ok);
  CellMap partial = id;
  partial.erase("ab");
  EXPECT_THROW(checkMorphism(partial, x, x), Error);
}

TEST(OpetopicSet, PullbackAlongTypeInclusion) {
  Monoid z2{{"e", "g"}, "e", {{{"g", "g"}, "e"}}};
  OperadPtr ip = operadByName("I+");
  OpetopicSet y = nerveOfAlgebra(ip, "I+", monoidAsAlgebra(z2), 2, SizeBound{{3, 2}});
  OperadMorphism f = typeInclusion(ip, parseTypeText(*ip, "1"));
  PulledBack pb = pullbackSet(f, y);
  EXPECT_TRUE(validateSet(pb.set).ok);
  EXPECT_EQ(pb.projection.size(), pb.set.size());
  EXPECT_TRUE(checkMorphism(pb.projection, pb.set, y, &f).ok);
  EXPECT_EQ(pb.set.stratum(0).size(), y.stratum(0).size());
}
