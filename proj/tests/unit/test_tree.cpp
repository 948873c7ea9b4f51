#include <gtest/gtest.h>

#include <functional>
#include <random>

#include "opetope/free.hpp"
#include "opetope/sampling.hpp"
#include "opetope/slice.hpp"
#include "opetope/tree.hpp"

using namespace opetope;

namespace {

Profile untyped(int k) {
  return Profile{std::vector<Value>(static_cast<size_t>(k), Value::atom("x")), Value::atom("x")};
}

std::shared_ptr<FreeOperad> twoOps() {
  Signature sig;
  sig.types = {"x"};
  sig.generators = {{"m", untyped(2)}, {"u", untyped(1)}};
  return freeOperad(sig);
}

bool hasDeco(const Node& n) {
  if (!n.deco.empty()) return true;
  return std::any_of(n.kids.begin(), n.kids.end(), hasDeco);
}

// Labels are generator atoms; lift them to free operations.
Tree overFree(const Tree& t, const FreeOperad& f) {
  Tree out = t;
  std::function<void(Node&)> rec = [&](Node& n) {
    if (n.isLeaf()) return;
    n.label = f.generator(n.label.name());
    for (Node& k : n.kids) rec(k);
  };
  rec(out.root);
  return out;
}

Value composeAt(const Operad& o, const Value& f, int i, const Value& g) {
  Profile p = profileOf(o, f);
  std::vector<Value> gs;
  for (const Value& x : p.inputs) gs.push_back(identity(o, x));
  gs[static_cast<size_t>(i - 1)] = g;
  return compose(o, f, gs);
}

}  // namespace

TEST(Tree, ParsePrintRoundTrip) {
  auto f = twoOps();
  const char* text = "(perm 2 1 3) (A:m (B:u *x) (C:m *x *x))";
  Tree t = parseTreeText(text, f->generators());
  EXPECT_EQ(leafCount(t.root), 3);
  EXPECT_EQ(nodeCount(t.root), 3);
  EXPECT_EQ(parseTreeText(treeText(t), f->generators()).perm, t.perm);
  EXPECT_EQ(treeText(parseTreeText(treeText(t), f->generators())), treeText(t));
}

TEST(Tree, SymbolNames) {
  EXPECT_EQ(symbolName(0), "A");
  EXPECT_EQ(symbolName(25), "Z");
  EXPECT_EQ(symbolName(26), "AA");
}

TEST(Tree, TypecheckRejectsMismatch) {
  auto ip = operadByName("I+");
  // An I+ label whose output does not match the I+ type expected at the leaf.
  EXPECT_THROW(parseTreeText("(A:(slice (B:1 *pt) (order B)) *pt)", *ip), Error);
}

TEST(Tree, DuplicateSymbolsAreRejected) {
  auto f = twoOps();
  try {
    Tree t = parseTreeText("(A:m (A:u *x) *x)", f->generators());
    typecheckTree(t, f->generators());
    FAIL() << "expected SymbolCollision";
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::SymbolCollision);
  }
}

TEST(Tree, FigureTenComposite) {
  Signature sig;
  sig.types = {"x"};
  const std::vector<std::pair<std::string, int>> arities{{"o1", 1}, {"o2", 2}, {"o3", 2}, {"o4", 0}, {"o5", 3},
                                                         {"o6", 3}, {"o7", 2}, {"o8", 1}, {"o9", 1}};
  for (const auto& [name, k] : arities) sig.generators.push_back({name, untyped(k)});
  auto free = freeOperad(sig);
  auto g = [&](const char* name) { return free->generator(name); };

  Tree t = parseTreeText(
      "(perm 3 1 2 4 6 5 7) (F:o6 (E:o5 (B:o2 *x *x) (H:o8 *x) (D:o4)) (A:o1 *x) (C:o3 (I:o9 *x) (G:o7 *x *x)))",
      free->generators());
  Value expected = act(*free,
                       compose(*free, g("o6"),
                               {compose(*free, g("o5"), {g("o2"), g("o8"), g("o4")}), g("o1"),
                                compose(*free, g("o3"), {g("o9"), g("o7")})}),
                       {3, 1, 2, 4, 6, 5, 7});
  EXPECT_EQ(free->make(t), expected);
  EXPECT_EQ(evalTree(overFree(t, *free), *free), expected);
  EXPECT_EQ(profileOf(*free, expected).arity(), 7);
}

TEST(Tree, CombIsIdempotentOnGrafts) {
  auto f = twoOps();
  const Operad& gens = f->generators();
  auto small = enumerateTrees(gens, 2);
  ASSERT_FALSE(small.empty());
  long checked = 0, decorated = 0;
  for (const Tree& a : small)
    for (int i = 1; i <= leafCount(a.root); ++i)
      for (const Tree& b : small) {
        if (a.isEdge()) continue;
        Tree g = graft(a, {{i, b}}, gens);
        decorated += hasDeco(g.root);
        Tree c = comb(g);
        EXPECT_FALSE(hasDeco(c.root));
        EXPECT_EQ(treeText(comb(c)), treeText(c));
        EXPECT_EQ(evalTree(overFree(g, *f), *f), evalTree(overFree(c, *f), *f));
        ++checked;
      }
  EXPECT_GT(checked, 100);
  EXPECT_GT(decorated, 0);
}

TEST(Tree, GraftingBracketingsAgree) {
  auto f = twoOps();
  const Operad& gens = f->generators();
  std::mt19937 rng(21);
  int checked = 0;
  for (int trial = 0; trial < 300; ++trial) {
    Tree a = randomTree(gens, 3, rng, 3), b = randomTree(gens, 2, rng, 3), c = randomTree(gens, 2, rng, 3);
    int la = leafCount(a.root), lb = leafCount(b.root);
    if (la == 0 || lb == 0) continue;
    std::uniform_int_distribution<int> pickI(1, la), pickJ(1, lb);
    int i = pickI(rng), j = pickJ(rng);
    Tree left = graft(graft(a, {{i, b}}, gens), {{i - 1 + j, c}}, gens);
    Tree right = graft(a, {{i, graft(b, {{j, c}}, gens)}}, gens);
    EXPECT_EQ(treeText(canonicalize(left)), treeText(canonicalize(right)));
    ++checked;
  }
  EXPECT_GT(checked, 100);
}

TEST(Tree, EvaluationRespectsGrafting) {
  for (const char* name : {"I+", "T3"}) {
    auto o = operadByName(name);
    std::mt19937 rng(22);
    int checked = 0;
    for (int trial = 0; trial < 200; ++trial) {
      Tree a = randomTree(*o, 3, rng, 3), b = randomTree(*o, 2, rng, 3);
      int la = leafCount(a.root);
      if (la == 0) continue;
      int i = std::uniform_int_distribution<int>(1, la)(rng);
      Value want;
      try {
        want = composeAt(*o, evalTree(a, *o), i, evalTree(b, *o));
      } catch (const Error& e) {
        if (e.code() == ErrorCode::TypeMismatch || e.code() == ErrorCode::ProfileMismatch || e.code() == ErrorCode::IncompleteTable)
          continue;
        throw;
      }
      EXPECT_EQ(evalTree(graft(a, {{i, b}}, *o), *o), want) << name;
      ++checked;
    }
    EXPECT_GT(checked, 20) << name;
  }
}

TEST(Tree, BareEdgeEvaluatesToIdentity) {
  auto k = operadK();
  Value pt = Value::atom("pt");
  EXPECT_EQ(evalTree(Tree::edge(pt), *k), identity(*k, pt));
}

TEST(Tree, EnumerationIsCanonicalAndDistinct) {
  auto f = twoOps();
  auto trees = enumerateTrees(f->generators(), 3);
  std::set<std::string> seen;
  for (const Tree& t : trees) {
    EXPECT_EQ(treeText(canonicalize(t)), treeText(t));
    EXPECT_TRUE(seen.insert(treeText(t)).second) << treeText(t);
  }
}
