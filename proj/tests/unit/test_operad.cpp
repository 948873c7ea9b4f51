#include <gtest/gtest.h>

#include <functional>
#include <set>

#include "opetope/free.hpp"
#include "opetope/slice.hpp"
#include "opetope/tabulated.hpp"
#include "oracles.hpp"

using namespace opetope;

TEST(Operad, TerminalComposite) {
  auto t = terminalOperad();
  Value t2 = parseOperationText(*t, "t2");
  Value r = compose(*t, t2, {parseOperationText(*t, "t1"), parseOperationText(*t, "t3")});
  EXPECT_EQ(r.text(), "t4");
  EXPECT_EQ(compose(*t, parseOperationText(*t, "t0"), {}).text(), "t0");
  EXPECT_EQ(act(*t, t2, {2, 1}), t2);
}

TEST(Operad, StructureMapsRejectBadArguments) {
  auto t = terminalOperad();
  try {
    compose(*t, parseOperationText(*t, "t2"), {parseOperationText(*t, "t1")});
    FAIL() << "expected ProfileMismatch";
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::ProfileMismatch);
  }
  try {
    act(*t, parseOperationText(*t, "t2"), {1, 2, 3});
    FAIL() << "expected ArityMismatch";
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::ArityMismatch);
  }
}

TEST(Operad, UnknownOperationIsRejected) {
  auto i = operadI();
  EXPECT_THROW(parseOperationText(*i, "nope"), Error);
}

TEST(Operad, BuiltinsSatisfyAxiomsExhaustively) {
  for (const auto& o : std::vector<TabulatedPtr>{operadI(), operadK(), operadTTruncated(3), operadF(2)}) {
    Report r = checkOperadAxioms(*o, Bound{o->arityBound(), o->arityBound()});
    EXPECT_TRUE(r.ok) << o->name() << ": " << r.summary();
    EXPECT_GT(r.checked, 0) << o->name();
  }
}

TEST(Operad, BrokenTableIsCaught) {
  auto o = std::make_shared<TabulatedOperad>("M", 2);
  o->addType("pt");
  o->addOperation("1", {"pt"}, "pt");
  o->addOperation("m", {"pt", "pt"}, "pt");
  o->addOperation("n", {"pt", "pt"}, "pt");
  o->setIdentity("pt", "1");
  o->setComposite("1", {"1"}, "1");
  o->setComposite("1", {"m"}, "m");
  o->setComposite("1", {"n"}, "n");
  o->setComposite("m", {"1", "1"}, "n");  // unit law broken
  o->setComposite("n", {"1", "1"}, "n");
  o->setAction("m", {2, 1}, "m");
  o->setAction("n", {2, 1}, "n");
  Report r = checkOperadAxioms(*o, Bound{2, 2});
  EXPECT_FALSE(r.ok);
  ASSERT_FALSE(r.violations.empty());
}

TEST(Operad, JsonRoundTrip) {
  auto k = operadK();
  auto back = TabulatedOperad::fromJson(k->toJson());
  EXPECT_EQ(back->toJson(), k->toJson());
  EXPECT_TRUE(checkOperadAxioms(*back, Bound{1, 1}).ok);
}

TEST(Operad, IPlusHasFactorialManyOperationsPerArity) {
  auto ip = operadByName("I+");
  for (int k = 0; k <= 4; ++k) {
    auto ops = ip->operations(Bound{k, k});
    ASSERT_TRUE(ops);
    long n = std::count_if(ops->begin(), ops->end(), [&](const Value& f) { return profileOf(*ip, f).arity() == k; });
    EXPECT_EQ(n, oracle::factorial(k)) << "arity " << k;
  }
}

TEST(Operad, IPlusActionIsFree) {
  auto ip = operadByName("I+");
  auto ops = ip->operations(Bound{4, 4});
  ASSERT_TRUE(ops);
  for (const Value& f : *ops) {
    int k = profileOf(*ip, f).arity();
    std::set<std::string> orbit;
    for (const Perm& s : allPerms(k)) orbit.insert(act(*ip, f, s).text());
    EXPECT_EQ(static_cast<long>(orbit.size()), oracle::factorial(k)) << f.text();
  }
}

TEST(Operad, FreeActionOnF) {
  auto f3 = operadF(3);
  Value f = parseOperationText(*f3, fOperationName(identityPerm(3)));
  std::set<std::string> orbit;
  for (const Perm& s : allPerms(3)) orbit.insert(act(*f3, f, s).text());
  EXPECT_EQ(orbit.size(), 6u);
  // Typing follows the right action.
  Value g = act(*f3, f, {3, 1, 2});
  Profile p = profileOf(*f3, g);
  EXPECT_EQ(p.inputs[0].name(), "x3");
  EXPECT_EQ(p.inputs[1].name(), "x1");
}

TEST(Operad, Degeneracy) {
  for (int level = 1; level <= 2; ++level) {
    auto o = operadByName(level == 1 ? "I+" : "I++");
    auto ops = o->operations(Bound{4 - level, 4 - level});
    ASSERT_TRUE(ops);
    for (const Value& f : *ops) EXPECT_TRUE(isDegenerate(*o, f, level)) << f.text();
  }
  auto kp = operadByName("K+");
  EXPECT_TRUE(isDegenerate(*kp, parseOperationText(*kp, "(slice (A:1 (B:k)) (order B A))"), 1));
  // The single-node tree k is the identity at k, hence degenerate.
  EXPECT_TRUE(isDegenerate(*kp, parseOperationText(*kp, "(slice (A:k) (order A))"), 1));
  auto tp = operadByName("T3+");
  EXPECT_FALSE(isDegenerate(*tp, parseOperationText(*tp, "(slice (A:t2 (B:t0) *pt) (order A B))"), 1));
  EXPECT_TRUE(isDegenerate(*tp, parseOperationText(*tp, "(slice (A:t2 (B:t1 *pt) *pt) (order A B))"), 1));
  EXPECT_TRUE(isDegenerate(*kp, parseOperationText(*kp, "(slice (edge pt) (order))"), 1));
  auto k = operadK();
  EXPECT_FALSE(isDegenerate(*k, parseOperationText(*k, "k"), 0));
  EXPECT_TRUE(isDegenerate(*k, parseOperationText(*k, "1"), 0));
}

namespace {

// A T-algebra on {0,1}: t0 = e, t_k folds the product left to right.
AlgebraTable foldAlgebra(const std::vector<int>& table, int e) {
  AlgebraTable a;
  a.arityBound = 3;
  a.carriers["pt"] = {"0", "1"};
  a.evaluator = [table, e](const Value& op, const std::vector<std::string>& args) -> std::optional<std::string> {
    (void)op;
    int acc = e;
    for (const auto& x : args) acc = table[static_cast<size_t>(acc * 2 + std::stoi(x))];
    return std::to_string(acc);
  };
  return a;
}

bool commutativeMonoid(const std::vector<int>& table, int e) {
  auto mul = [&](int x, int y) { return table[static_cast<size_t>(x * 2 + y)]; };
  for (int x = 0; x < 2; ++x) {
    if (mul(e, x) != x || mul(x, e) != x) return false;
    for (int y = 0; y < 2; ++y) {
      if (mul(x, y) != mul(y, x)) return false;
      for (int z = 0; z < 2; ++z)
        if (mul(mul(x, y), z) != mul(x, mul(y, z))) return false;
    }
  }
  return true;
}

}  // namespace

TEST(Operad, TerminalAlgebrasAreCommutativeMonoids) {
  auto t = terminalOperad();
  int lawful = 0;
  for (int bits = 0; bits < 16; ++bits) {
    std::vector<int> table{bits & 1, (bits >> 1) & 1, (bits >> 2) & 1, (bits >> 3) & 1};
    for (int e = 0; e < 2; ++e) {
      bool expected = commutativeMonoid(table, e);
      lawful += expected;
      EXPECT_EQ(checkAlgebra(*t, foldAlgebra(table, e)).ok, expected) << "table " << bits << " unit " << e;
    }
  }
  // {0,1} under max, min, xor, xnor.
  EXPECT_EQ(lawful, 4);
}

TEST(Operad, AlgebraJsonRoundTrip) {
  auto k = operadK();
  std::string doc = R"({"carriers": {"pt": ["p", "q"]},
    "action": [{"op": "k", "args": [], "result": "p"},
               {"op": "1", "args": ["p"], "result": "p"},
               {"op": "1", "args": ["q"], "result": "q"}],
    "arityBound": 1})";
  AlgebraTable a = AlgebraTable::fromJson(doc, *k);
  EXPECT_TRUE(checkAlgebra(*k, a).ok);
  AlgebraTable b = AlgebraTable::fromJson(a.toJson(), *k);
  EXPECT_EQ(b.toJson(), a.toJson());
  EXPECT_EQ(b.apply(parseOperationText(*k, "k"), {}), "p");
}
