#include "opetope/perm.hpp"

#include <algorithm>
#include <numeric>

#include "opetope/error.hpp"

namespace opetope {

Perm identityPerm(int k) {
  Perm p(static_cast<size_t>(k));
  std::iota(p.begin(), p.end(), 1);
  return p;
}

bool isIdentityPerm(const Perm& p) {
  for (size_t i = 0; i < p.size(); ++i)
    if (p[i] != static_cast<int>(i) + 1) return false;
  return true;
}

bool isValidPerm(const Perm& p) {
  std::vector<bool> seen(p.size(), false);
  for (int v : p) {
    if (v < 1 || v > static_cast<int>(p.size()) || seen[static_cast<size_t>(v - 1)]) return false;
    seen[static_cast<size_t>(v - 1)] = true;
  }
  return true;
}

Perm composePerm(const Perm& p, const Perm& q) {
  if (p.size() != q.size()) raise(ErrorCode::ArityMismatch, "permutation sizes differ");
  Perm r(q.size());
  for (size_t j = 0; j < q.size(); ++j) r[j] = p[static_cast<size_t>(q[j] - 1)];
  return r;
}

Perm inversePerm(const Perm& p) {
  Perm r(p.size());
  for (size_t j = 0; j < p.size(); ++j) r[static_cast<size_t>(p[j] - 1)] = static_cast<int>(j) + 1;
  return r;
}

Perm blockPerm(const Perm& s, const std::vector<int>& blockSizes) {
  if (s.size() != blockSizes.size()) raise(ErrorCode::ArityMismatch, "block count differs from permutation size");
  std::vector<int> start(blockSizes.size() + 1, 0);
  for (size_t i = 0; i < blockSizes.size(); ++i) start[i + 1] = start[i] + blockSizes[i];
  Perm r;
  r.reserve(static_cast<size_t>(start.back()));
  for (int src : s) {
    auto b = static_cast<size_t>(src - 1);
    for (int t = 0; t < blockSizes[b]; ++t) r.push_back(start[b] + t + 1);
  }
  return r;
}

std::vector<Perm> allPerms(int k) {
  std::vector<Perm> out;
  Perm p = identityPerm(k);
  do out.push_back(p);
  while (std::next_permutation(p.begin(), p.end()));
  return out;
}

std::string permText(const Perm& p) {
  std::string s = "(";
  for (size_t i = 0; i < p.size(); ++i) {
    if (i) s += ' ';
    s += std::to_string(p[i]);
  }
  return s + ")";
}

}  // namespace opetope
