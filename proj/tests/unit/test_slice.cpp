#include <gtest/gtest.h>

#include <random>

#include "opetope/sampling.hpp"
#include "opetope/slice.hpp"
#include "oracles.hpp"

using namespace opetope;

namespace {

std::vector<Value> opsUpTo(const Operad& o, int nodes) {
  auto ops = o.operations(Bound{nodes, nodes});
  EXPECT_TRUE(ops);
  return ops ? *ops : std::vector<Value>{};
}

std::string profileText(const Operad& o, const Value& f) {
  Profile p = profileOf(o, f);
  std::string s;
  for (const Value& x : p.inputs) s += x.text() + " ";
  return s + "-> " + p.output.text();
}

}  // namespace

TEST(Slice, MakeEvaluatesOverBase) {
  auto ip = sliceOperad(operadI());
  Tree t = parseTreeText("(A:1 (B:1 *pt))", *operadI());
  Value f = ip->make(t, {"B", "A"});
  Profile p = profileOf(*ip, f);
  EXPECT_EQ(p.arity(), 2);
  EXPECT_EQ(p.output.text(), "1");
  EXPECT_EQ(f.order(), (std::vector<std::string>{"B", "A"}));
}

TEST(Slice, IdentityIsSingleNode) {
  auto kp = operadByName("K+");
  Value id = identity(*kp, parseTypeText(*kp, "k"));
  EXPECT_EQ(profileOf(*kp, id).arity(), 1);
  EXPECT_TRUE(kp->isIdentity(id));
}

TEST(Slice, KPlusGeneratorsUpToTwoNodes) {
  auto kp = operadByName("K+");
  auto ops = opsUpTo(*kp, 2);
  std::map<std::string, int> byProfile;
  std::map<std::string, std::set<std::string>> treesByProfile;
  for (const Value& f : ops) {
    ++byProfile[profileText(*kp, f)];
    treesByProfile[profileText(*kp, f)].insert(treeText(f.tree()));
  }
  EXPECT_EQ(ops.size(), 7u);
  EXPECT_EQ(byProfile["-> 1"], 1);
  EXPECT_EQ(treesByProfile["1 1 -> 1"].size(), 1u);
  EXPECT_EQ(byProfile["1 1 -> 1"], 2);  // two orderings of one tree
  EXPECT_EQ(byProfile["k 1 -> k"], 1);
  EXPECT_EQ(byProfile["1 k -> k"], 1);
  EXPECT_EQ(byProfile["k -> k"], 1);
  EXPECT_EQ(byProfile["1 -> 1"], 1);
}

TEST(Slice, TruncatedBaseDropsUnevaluableTrees) {
  auto t2p = sliceOperad(operadTTruncated(2));
  auto ops = opsUpTo(*t2p, 2);
  EXPECT_FALSE(ops.empty());
  for (const Value& f : ops) EXPECT_LE(profileOf(t2p->base(), profileOf(*t2p, f).output).arity(), 2) << f.text();
}

TEST(Slice, LawsHoldOnRandomInstances) {
  for (const char* name : {"I+", "K+", "T3+", "I++"}) {
    auto o = operadByName(name);
    LawSampler sampler(o, 4);
    std::mt19937 rng(31);
    for (OperadLaw law : {OperadLaw::Associativity, OperadLaw::Unit, OperadLaw::ActionComposition, OperadLaw::ActionCompatibility})
      for (int i = 0; i < 150; ++i) {
        Report r = checkLaw(*o, law, sampler.sample(rng));
        ASSERT_TRUE(r.ok) << name << " " << lawName(law) << ": " << r.summary();
      }
  }
}

TEST(Slice, ExhaustiveAxiomsOnSmallSlices) {
  auto ip = operadByName("I+");
  EXPECT_TRUE(checkOperadAxioms(*ip, Bound{2, 2}).ok);
  auto kp = operadByName("K+");
  EXPECT_TRUE(checkOperadAxioms(*kp, Bound{2, 2}).ok);
}

TEST(SliceOracle, IPlusAlgebrasAreMonoids) {
  SliceOracleResult r = sliceAlgebraOracle(*operadI(), SliceOracleOptions{});
  EXPECT_TRUE(r.report.ok) << r.report.summary();
  EXPECT_EQ(r.assignments, 32);
  EXPECT_EQ(r.lawfulSlice, oracle::countMonoids(2));
  EXPECT_EQ(r.lawfulOperads, oracle::countMonoids(2));
}

TEST(SliceOracle, KPlusAlgebrasAreMonoidActions) {
  SliceOracleResult r = sliceAlgebraOracle(*operadK(), SliceOracleOptions{});
  EXPECT_TRUE(r.report.ok) << r.report.summary();
  EXPECT_EQ(r.assignments, 512);
  EXPECT_EQ(r.lawfulSlice, oracle::countMonoidActions(2, 2));
}

TEST(SliceOracle, ZeroBoundIsVacuous) {
  SliceOracleOptions opts;
  opts.bound = 0;
  SliceOracleResult r = sliceAlgebraOracle(*operadK(), opts);
  EXPECT_TRUE(r.report.ok);
  EXPECT_EQ(r.assignments, 0);
}

TEST(SliceOracle, BudgetIsEnforced) {
  SliceOracleOptions opts;
  opts.budget = 10;
  try {
    sliceAlgebraOracle(*operadK(), opts);
    FAIL() << "expected BudgetExceeded";
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::BudgetExceeded);
  }
}

TEST(Slice, OperadByName) {
  EXPECT_EQ(operadByName("I++")->name(), "I++");
  EXPECT_EQ(operadByName("T3")->name(), "T3");
  EXPECT_THROW(operadByName("no-such-operad.json"), Error);
}
