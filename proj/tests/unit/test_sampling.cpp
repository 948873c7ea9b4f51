#include <gtest/gtest.h>

#include <random>
#include <set>

#include "opetope/catalog.hpp"
#include "opetope/sampling.hpp"
#include "opetope/slice.hpp"

using namespace opetope;

namespace {

const std::vector<OperadLaw> kLaws{OperadLaw::Associativity, OperadLaw::Unit, OperadLaw::ActionComposition,
                                   OperadLaw::ActionCompatibility};

// Z/3 as a one-type unary operad; `broken` makes a o a = a.
TabulatedPtr cyclic(bool broken) {
  auto o = std::make_shared<TabulatedOperad>(broken ? "Z3-broken" : "Z3", 1);
  o->addType("pt");
  const std::vector<std::string> el{"1", "a", "b"};
  for (const auto& x : el) o->addOperation(x, {"pt"}, "pt");
  o->setIdentity("pt", "1");
  for (size_t i = 0; i < 3; ++i)
    for (size_t j = 0; j < 3; ++j) o->setComposite(el[i], {el[j]}, el[(i + j) % 3]);
  if (broken) o->setComposite("a", {"a"}, "a");
  return o;
}

long violations(const OperadPtr& o, OperadLaw law, int draws, unsigned seed) {
  LawSampler sampler(o, 4);
  std::mt19937 rng(seed);
  long bad = 0;
  for (int i = 0; i < draws; ++i) bad += !checkLaw(*o, law, sampler.sample(rng)).ok;
  return bad;
}

}  // namespace

TEST(Sampling, LawNames) {
  std::set<std::string> names;
  for (OperadLaw law : kLaws) names.insert(lawName(law));
  EXPECT_EQ(names.size(), 4u);
}

TEST(Sampling, LawfulTableHasNoViolations) {
  for (OperadLaw law : kLaws) EXPECT_EQ(violations(cyclic(false), law, 300, 61), 0) << lawName(law);
}

TEST(Sampling, BrokenTableIsDetected) {
  auto o = cyclic(true);
  EXPECT_GT(violations(o, OperadLaw::Associativity, 300, 62), 0);
  EXPECT_FALSE(checkOperadAxioms(*o, Bound{1, 1}).ok);
}

TEST(Sampling, ViolationReportNamesOperations) {
  auto o = cyclic(true);
  LawInstance x;
  x.f = parseOperationText(*o, "a");
  x.gs = {parseOperationText(*o, "a")};
  x.hs = {parseOperationText(*o, "b")};
  x.s = x.t = {1};
  Report r = checkLaw(*o, OperadLaw::Associativity, x);
  ASSERT_FALSE(r.ok);
  EXPECT_FALSE(r.violations.empty());
}

TEST(Sampling, SameSeedSameDraws) {
  auto o = operadByName("I++");
  LawSampler sampler(o, 4);
  std::mt19937 r1(63), r2(63);
  for (int i = 0; i < 50; ++i) {
    LawInstance a = sampler.sample(r1), b = sampler.sample(r2);
    EXPECT_EQ(a.f, b.f);
    EXPECT_EQ(a.gs, b.gs);
    EXPECT_EQ(a.hs, b.hs);
  }
}

TEST(Sampling, RandomTreesTypecheck) {
  for (const char* name : {"T3", "K+", "I++"}) {
    auto o = operadByName(name);
    std::mt19937 rng(64);
    for (int i = 0; i < 100; ++i) {
      Tree t = randomTree(*o, 4, rng, 3);
      EXPECT_LE(nodeCount(t.root), 4) << name;
      EXPECT_NO_THROW(typecheckTree(t, *o)) << name << " " << treeText(t);
      EXPECT_NO_THROW(evalTree(t, *o)) << name << " " << treeText(t);
    }
  }
}

TEST(Sampling, RandomOpetopesRespectTheBound) {
  auto cat = catalogFor("I");
  std::mt19937 rng(65);
  std::set<std::string> distinct;
  for (int i = 0; i < 200; ++i) {
    Opetope w = randomOpetope(*cat, 3, 3, rng);
    EXPECT_EQ(w.dim, 3);
    for (int s : levelSizes(w)) EXPECT_LE(s, 3);
    Metatree m = operationToMetatree(w.value, w.dim, cat);
    EXPECT_TRUE(validateMetatree(m).ok);
    distinct.insert(w.value.text());
  }
  EXPECT_GT(distinct.size(), 30u);
}
