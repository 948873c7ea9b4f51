#pragma once

// Independent reference computations used by the unit and acceptance tests.
// None of these call into the library's algorithms.

#include <algorithm>
#include <fstream>
#include <functional>
#include <map>
#include <numeric>
#include <sstream>
#include <string>
#include <vector>

namespace oracle {

inline long factorial(int n) {
  long f = 1;
  for (int i = 2; i <= n; ++i) f *= i;
  return f;
}

// Block permutation by definition: block j of the result is block s(j) of the
// input, kept in order. Perms are 1-based; result[i] names the input position.
inline std::vector<int> blockPerm(const std::vector<int>& s, const std::vector<int>& sizes) {
  std::vector<int> start(sizes.size() + 1, 1);
  for (size_t i = 0; i < sizes.size(); ++i) start[i + 1] = start[i] + sizes[i];
  std::vector<int> out;
  for (int b : s)
    for (int k = 0; k < sizes[static_cast<size_t>(b - 1)]; ++k) out.push_back(start[static_cast<size_t>(b - 1)] + k);
  return out;
}

// Number of dimension-3 opetopes over I with level sizes (first, second):
// a dim-3 opetope is a planar tree of `second` nodes whose leaves are the
// `first` nodes of the lower chain, each node labelled by one of k! orderings
// of its k inputs, with a top permutation of the leaves and an ordering of the
// nodes. weight(n, L) sums prod(k_v!) over planar trees with n nodes, L leaves.
class Dim3Counter {
 public:
  long count(int first, int second) {
    if (second == 0) return first == 1 ? 1 : 0;
    return trees(second, first) * factorial(first) * factorial(second);
  }

 private:
  long trees(int n, int leaves) {
    if (n == 0) return leaves == 1 ? 1 : 0;
    auto key = std::make_pair(n, leaves);
    if (auto it = treeMemo_.find(key); it != treeMemo_.end()) return it->second;
    long total = 0;
    for (int k = 0; k <= leaves + n; ++k) total += forest(k, n - 1, leaves) * factorial(k);
    return treeMemo_[key] = total;
  }
  long forest(int k, int n, int leaves) {
    if (k == 0) return n == 0 && leaves == 0 ? 1 : 0;
    auto key = std::make_tuple(k, n, leaves);
    if (auto it = forestMemo_.find(key); it != forestMemo_.end()) return it->second;
    long total = 0;
    for (int m = 0; m <= n; ++m)
      for (int l = 0; l <= leaves; ++l) {
        long t = trees(m, l);
        if (t) total += t * forest(k - 1, n - m, leaves - l);
      }
    return forestMemo_[key] = total;
  }
  std::map<std::pair<int, int>, long> treeMemo_;
  std::map<std::tuple<int, int, int>, long> forestMemo_;
};

// Monoid structures on {0..n-1}: unit and a full table, associative and unital.
inline long countMonoids(int n) {
  const int cells = n * n;
  long total = 0;
  std::vector<int> table(static_cast<size_t>(cells), 0);
  std::function<void(int)> rec = [&](int i) {
    if (i == cells) {
      auto mul = [&](int x, int y) { return table[static_cast<size_t>(x * n + y)]; };
      for (int x = 0; x < n; ++x)
        for (int y = 0; y < n; ++y)
          for (int z = 0; z < n; ++z)
            if (mul(mul(x, y), z) != mul(x, mul(y, z))) return;
      for (int e = 0; e < n; ++e) {
        bool unit = true;
        for (int x = 0; x < n; ++x) unit = unit && mul(e, x) == x && mul(x, e) == x;
        total += unit;
      }
      return;
    }
    for (int v = 0; v < n; ++v) {
      table[static_cast<size_t>(i)] = v;
      rec(i + 1);
    }
  };
  rec(0);
  return total;
}

// Pairs (monoid on {0..n-1}, left action on {0..m-1}): unit, table, action, all
// checked by definition.
inline long countMonoidActions(int n, int m) {
  long total = 0;
  std::vector<int> table(static_cast<size_t>(n * n), 0);
  std::function<void(int)> tables = [&](int i) {
    if (i < n * n) {
      for (int v = 0; v < n; ++v) {
        table[static_cast<size_t>(i)] = v;
        tables(i + 1);
      }
      return;
    }
    auto mul = [&](int x, int y) { return table[static_cast<size_t>(x * n + y)]; };
    for (int x = 0; x < n; ++x)
      for (int y = 0; y < n; ++y)
        for (int z = 0; z < n; ++z)
          if (mul(mul(x, y), z) != mul(x, mul(y, z))) return;
    for (int e = 0; e < n; ++e) {
      bool unit = true;
      for (int x = 0; x < n; ++x) unit = unit && mul(e, x) == x && mul(x, e) == x;
      if (!unit) continue;
      std::vector<int> act(static_cast<size_t>(n * m), 0);
      std::function<void(int)> actions = [&](int j) {
        if (j < n * m) {
          for (int v = 0; v < m; ++v) {
            act[static_cast<size_t>(j)] = v;
            actions(j + 1);
          }
          return;
        }
        auto on = [&](int a, int b) { return act[static_cast<size_t>(a * m + b)]; };
        for (int b = 0; b < m; ++b) {
          if (on(e, b) != b) return;
          for (int x = 0; x < n; ++x)
            for (int y = 0; y < n; ++y)
              if (on(x, on(y, b)) != on(mul(x, y), b)) return;
        }
        ++total;
      };
      actions(0);
    }
  };
  tables(0);
  return total;
}

// A small category given by hand: morphism names, endpoints, diagrammatic composition.
struct Cat {
  std::vector<std::string> objects;
  std::map<std::string, std::pair<std::string, std::string>> arrows;  // name -> (dom, cod)
  std::map<std::pair<std::string, std::string>, std::string> then;   // (f, g) -> f then g
};

// Universality of a 1-cell u: x -> y in the nerve at n = 1, unfolded by hand:
// for every object y' and every t: x -> y' some h: y -> y' has u then h = t.
inline bool universalArrow(const Cat& c, const std::string& u) {
  const auto [x, y] = c.arrows.at(u);
  for (const auto& [t, te] : c.arrows) {
    if (te.first != x) continue;
    bool found = false;
    for (const auto& [h, he] : c.arrows) {
      if (he.first != y || he.second != te.second) continue;
      auto it = c.then.find({u, h});
      found = found || (it != c.then.end() && it->second == t);
    }
    if (!found) return false;
  }
  return true;
}

// Invertible arrows, for cross-checking the unfolded definition.
inline bool invertible(const Cat& c, const std::string& u, const std::map<std::string, std::string>& identities) {
  const auto [x, y] = c.arrows.at(u);
  for (const auto& [v, ve] : c.arrows) {
    if (ve.first != y || ve.second != x) continue;
    auto a = c.then.find({u, v});
    auto b = c.then.find({v, u});
    if (a != c.then.end() && b != c.then.end() && a->second == identities.at(x) && b->second == identities.at(y)) return true;
  }
  return false;
}

inline std::string readFile(const std::string& path) {
  std::ifstream in(path);
  std::stringstream buf;
  buf << in.rdbuf();
  return buf.str();
}

}  // namespace oracle
