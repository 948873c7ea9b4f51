#include <gtest/gtest.h>

#include "opetope/coherence.hpp"
#include "opetope/nerve.hpp"
#include "opetope/set_ops.hpp"
#include "oracles.hpp"

using namespace opetope;

namespace {

std::string corpus(const std::string& name) { return std::string(OPETOPE_CORPUS_DIR) + "/" + name; }

FiniteCategory z2() { return categoryFromMonoid({"e", "g"}, "e", {{{"g", "g"}, "e"}}); }
FiniteCategory idempotent() { return categoryFromMonoid({"1", "a"}, "1", {{{"a", "a"}, "a"}}); }
FiniteCategory poset() { return FiniteCategory::fromJson(oracle::readFile(corpus("poset3.json"))); }

// The same category written out by hand for the oracle.
oracle::Cat handCopy(const FiniteCategory& c) {
  oracle::Cat h;
  h.objects = c.objects;
  for (const Morphism& m : c.morphisms) h.arrows[m.name] = {m.dom, m.cod};
  h.then = c.composition;
  return h;
}

FiniteCategory discrete(const std::vector<std::string>& objects) {
  FiniteCategory c;
  c.objects = objects;
  for (const auto& x : objects) {
    c.morphisms.push_back({"1" + x, x, x});
    c.identities[x] = "1" + x;
    c.composition[{"1" + x, "1" + x}] = "1" + x;
  }
  return c;
}

}  // namespace

TEST(Coherence, ZTwoNerveIsOneCoherent) {
  OpetopicSet x = nerveOfCategory(z2());
  CoherenceReport r = checkNCoherent(x, 1);
  EXPECT_TRUE(r.verdict.holds()) << r.verdict.witness;
  EXPECT_TRUE(r.nichesWithoutUniversal.empty());
  EXPECT_TRUE(r.nonUniversalComposites.empty());
  EXPECT_GT(r.nichesChecked, 0);
}

TEST(Coherence, CorruptedCompositionIsCaught) {
  FiniteCategory bad = z2();
  bad.composition[{"e", "g"}] = "e";  // breaks the unit law
  NerveOptions opts;
  opts.checkLaws = false;
  OpetopicSet x = nerveOfCategory(bad, opts);
  bool invalid = !validateSet(x).ok;
  CoherenceReport r = invalid ? CoherenceReport{} : checkNCoherent(x, 1);
  EXPECT_TRUE(invalid || r.verdict.fails());
  if (!invalid) {
    EXPECT_FALSE(r.verdict.witness.empty());
  }
}

TEST(Coherence, CategoryLawsAreCheckedBeforeBuilding) {
  FiniteCategory bad = z2();
  bad.composition[{"e", "g"}] = "e";  // breaks the unit law
  EXPECT_FALSE(checkCategoryLaws(bad).ok);
  EXPECT_THROW(nerveOfCategory(bad), Error);
}

TEST(Coherence, UniversalArrowsMatchOracle) {
  for (const FiniteCategory& c : {z2(), idempotent(), poset()}) {
    OpetopicSet x = nerveOfCategory(c);
    oracle::Cat h = handCopy(c);
    for (const Morphism& m : c.morphisms) {
      bool want = oracle::universalArrow(h, m.name);
      EXPECT_EQ(want, oracle::invertible(h, m.name, c.identities)) << m.name;
      Verdict v = isUniversal(x, x.cell(m.name), 1);
      EXPECT_FALSE(v.exhausted());
      EXPECT_EQ(v.holds(), want) << m.name << ": " << v.witness;
      if (!want) EXPECT_FALSE(v.witness.empty());
    }
  }
}

TEST(Coherence, IdempotentMonoid) {
  OpetopicSet x = nerveOfCategory(idempotent());
  EXPECT_TRUE(isUniversal(x, x.cell("1"), 1).holds());
  EXPECT_TRUE(isUniversal(x, x.cell("a"), 1).fails());
}

TEST(Coherence, BudgetExhaustion) {
  OpetopicSet x = nerveOfCategory(z2());
  CoherenceReport r = checkNCoherent(x, 1, 5);
  EXPECT_TRUE(r.verdict.exhausted());
  CoherenceChecker checker(x, 1, 3);
  EXPECT_TRUE(checker.isUniversal(x.cell("g")).exhausted());
}

TEST(Coherence, NeedsDimensionAboveN) {
  NerveOptions opts;
  opts.maxDim = 1;
  OpetopicSet x = nerveOfCategory(z2(), opts);
  try {
    checkNCoherent(x, 1);
    FAIL() << "expected ValidationFailed";
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::ValidationFailed);
  }
}

TEST(Coherence, EveryTwoDimensionalPuncturedNicheIsBalanced) {
  OpetopicSet x = nerveOfCategory(z2());
  CoherenceChecker checker(x, 1);
  auto ps = puncturedNichesOf(x, 2);
  EXPECT_FALSE(ps.empty());
  for (const PuncturedNiche& p : ps) EXPECT_TRUE(checker.isBalanced(p).holds()) << describePunctured(x, p);
}

TEST(Coherence, CompositesAreUniversalOccupants) {
  OpetopicSet x = nerveOfCategory(poset());
  CoherenceChecker checker(x, 1);
  for (const Niche& n : nichesOf(x, 1)) {
    auto u = checker.universalOccupants(n);
    auto c = checker.compositesOf(n);
    EXPECT_EQ(u.size(), c.size());
  }
}

TEST(Coherence, SetNerveIsZeroCoherent) {
  OpetopicSet x = nerveOfAlgebra(operadI(), "I", setAsAlgebra({"p", "q", "r"}), 2, SizeBound{{3}});
  EXPECT_TRUE(checkNCoherent(x, 0).verdict.holds());
}

TEST(Coherence, FunctorPredicates) {
  FiniteFunctor id{z2(), z2(), {{"o", "o"}}, {{"e", "e"}, {"g", "g"}}};
  OpetopicSet fx = nerveOfFunctor(id);
  EXPECT_TRUE(validateSet(fx).ok);
  EXPECT_TRUE(essentiallySurjective(fx, 1).holds());
  EXPECT_TRUE(fullyFaithful(fx, 1).holds());
  EXPECT_TRUE(isEquivalence(fx, 1).holds());

  FiniteCategory d = discrete({"c1", "c2"});
  FiniteFunctor collapse{d, d, {{"c1", "c1"}, {"c2", "c1"}}, {{"1c1", "1c1"}, {"1c2", "1c1"}}};
  OpetopicSet cx = nerveOfFunctor(collapse);
  Verdict es = essentiallySurjective(cx, 1);
  EXPECT_TRUE(es.fails());
  EXPECT_FALSE(es.witness.empty());
  EXPECT_TRUE(isEquivalence(cx, 1).fails());

  // The unit into Z/2 hits the only object but misses g.
  FiniteCategory one = discrete({"o"});
  FiniteFunctor unit{one, z2(), {{"o", "o"}}, {{"1o", "e"}}};
  OpetopicSet ux = nerveOfFunctor(unit);
  EXPECT_TRUE(essentiallySurjective(ux, 1).holds());
  EXPECT_TRUE(fullyFaithful(ux, 1).fails());
  EXPECT_TRUE(isEquivalence(ux, 1).fails());
}

TEST(Coherence, CollageNaming) {
  FiniteFunctor id{z2(), z2(), {{"o", "o"}}, {{"e", "e"}, {"g", "g"}}};
  auto [c, typing] = collage(id);
  EXPECT_TRUE(checkCategoryLaws(c).ok);
  EXPECT_EQ(c.objects.size(), 2u);
  EXPECT_NO_THROW(c.morphism("o>g"));
  EXPECT_EQ(c.morphism("o>g").cod, "o'");
}
