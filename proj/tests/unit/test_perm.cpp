#include <gtest/gtest.h>

#include <random>

#include "opetope/perm.hpp"
#include "oracles.hpp"

using namespace opetope;

namespace {

Perm randomPerm(int k, std::mt19937& rng) {
  Perm p = identityPerm(k);
  std::shuffle(p.begin(), p.end(), rng);
  return p;
}

}  // namespace

TEST(Perm, AllPermsCountsAndOrder) {
  for (int k = 0; k <= 6; ++k) EXPECT_EQ(static_cast<long>(allPerms(k).size()), oracle::factorial(k));
  auto p3 = allPerms(3);
  EXPECT_EQ(p3.front(), (Perm{1, 2, 3}));
  EXPECT_EQ(p3.back(), (Perm{3, 2, 1}));
  EXPECT_TRUE(std::is_sorted(p3.begin(), p3.end()));
}

TEST(Perm, Validity) {
  EXPECT_TRUE(isValidPerm({}));
  EXPECT_TRUE(isValidPerm({2, 1}));
  EXPECT_FALSE(isValidPerm({1, 1}));
  EXPECT_FALSE(isValidPerm({0, 1}));
  EXPECT_FALSE(isValidPerm({1, 3}));
  EXPECT_TRUE(isIdentityPerm(identityPerm(4)));
  EXPECT_FALSE(isIdentityPerm({2, 1}));
}

TEST(Perm, PermuteListMatchesRightAction) {
  std::vector<std::string> xs{"a", "b", "c"};
  EXPECT_EQ(permuteList(xs, {3, 1, 2}), (std::vector<std::string>{"c", "a", "b"}));
  std::mt19937 rng(11);
  for (int trial = 0; trial < 200; ++trial) {
    int k = 1 + trial % 6;
    Perm p = randomPerm(k, rng), q = randomPerm(k, rng);
    std::vector<int> ys(static_cast<size_t>(k));
    std::iota(ys.begin(), ys.end(), 100);
    // Acting by p then q equals acting by p o q.
    EXPECT_EQ(permuteList(permuteList(ys, p), q), permuteList(ys, composePerm(p, q)));
  }
}

TEST(Perm, GroupLaws) {
  std::mt19937 rng(12);
  for (int trial = 0; trial < 200; ++trial) {
    int k = trial % 7;
    Perm p = randomPerm(k, rng), q = randomPerm(k, rng), r = randomPerm(k, rng);
    EXPECT_EQ(composePerm(composePerm(p, q), r), composePerm(p, composePerm(q, r)));
    EXPECT_EQ(composePerm(p, inversePerm(p)), identityPerm(k));
    EXPECT_EQ(composePerm(inversePerm(p), p), identityPerm(k));
    EXPECT_EQ(composePerm(p, identityPerm(k)), p);
  }
}

TEST(Perm, BlockPermAgreesWithOracle) {
  std::mt19937 rng(13);
  std::uniform_int_distribution<int> size(0, 3);
  for (int trial = 0; trial < 500; ++trial) {
    int k = trial % 5;
    Perm s = randomPerm(k, rng);
    std::vector<int> sizes;
    for (int i = 0; i < k; ++i) sizes.push_back(size(rng));
    EXPECT_EQ(blockPerm(s, sizes), oracle::blockPerm(s, sizes)) << permText(s);
  }
}

TEST(Perm, BlockPermIsHomomorphism) {
  std::mt19937 rng(14);
  std::uniform_int_distribution<int> size(0, 3);
  for (int trial = 0; trial < 200; ++trial) {
    int k = 1 + trial % 4;
    Perm s = randomPerm(k, rng), t = randomPerm(k, rng);
    std::vector<int> sizes;
    for (int i = 0; i < k; ++i) sizes.push_back(size(rng));
    // Blocks after s are reordered, so t sees the permuted sizes.
    EXPECT_EQ(composePerm(blockPerm(s, sizes), blockPerm(t, permuteList(sizes, s))), blockPerm(composePerm(s, t), sizes));
  }
}

TEST(Perm, Text) { EXPECT_EQ(permText({3, 1, 2}), "(3 1 2)"); }
