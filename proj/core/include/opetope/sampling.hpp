#pragma once

#include <random>
#include <vector>

#include "opetope/metatree.hpp"
#include "opetope/operad.hpp"
#include "opetope/slice.hpp"
#include "opetope/tree.hpp"

namespace opetope {

// A composable family: f, g_1..g_k plugging into f's inputs (in f's input
// order), h's plugging into the g's inputs (concatenated), and two
// permutations of f's arity.
struct LawInstance {
  Value f;
  std::vector<Value> gs;
  std::vector<Value> hs;
  Perm s, t;
};

enum class OperadLaw { Associativity, Unit, ActionComposition, ActionCompatibility };

const char* lawName(OperadLaw law);

// Random composable families. Finite operads are sampled from their
// operation lists (arity capped at maxArity); slice operads by cutting a
// random tree one level down into pieces. Trees have at most maxNodes nodes.
class LawSampler {
 public:
  LawSampler(OperadPtr o, int maxNodes, int maxArity = 3);
  LawInstance sample(std::mt19937& rng) const;

 private:
  LawInstance sliceSample(const SliceOperad& bp, std::mt19937& rng) const;

  OperadPtr o_;
  int maxNodes_, maxArity_;
  std::vector<Value> ops_;
};

// Checks one law on one instance; the report names the failing operations.
Report checkLaw(const Operad& o, OperadLaw law, const LawInstance& x);

// A random well-typed tree over o with at most maxNodes nodes, symbols set,
// top permutation random. Throws Unbounded when o cannot be sampled.
Tree randomTree(const Operad& o, int maxNodes, std::mt19937& rng, int maxArity = 3);

// A random opetope of the dimension whose metatree levels have at most
// maxNodesPerLevel nodes each. Not uniform.
Opetope randomOpetope(const Catalog& cat, int dim, int maxNodesPerLevel, std::mt19937& rng);

}  // namespace opetope
