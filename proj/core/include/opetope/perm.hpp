#pragma once

#include <string>
#include <vector>

namespace opetope {

// Images of 1..k, 1-based. Input j of f*s is input s(j) of f.
using Perm = std::vector<int>;

Perm identityPerm(int k);
bool isIdentityPerm(const Perm& p);
bool isValidPerm(const Perm& p);
// (p o q)(j) = p(q(j)); with the right action, (f p) q = f (p o q).
Perm composePerm(const Perm& p, const Perm& q);
Perm inversePerm(const Perm& p);
// Block permutation rho(s) for blocks of the given sizes (sizes indexed by
// original block): result (block j, offset t) comes from (block s(j), offset t).
Perm blockPerm(const Perm& s, const std::vector<int>& blockSizes);
// All permutations of 1..k in lexicographic order.
std::vector<Perm> allPerms(int k);
std::string permText(const Perm& p);

// Reorder a list by a permutation: result[j] = xs[s(j) - 1].
template <class T>
std::vector<T> permuteList(const std::vector<T>& xs, const Perm& s) {
  std::vector<T> out;
  out.reserve(xs.size());
  for (int i : s) out.push_back(xs[static_cast<size_t>(i - 1)]);
  return out;
}

}  // namespace opetope
