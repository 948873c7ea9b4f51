#pragma once

#include <functional>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "opetope/metatree.hpp"

namespace opetope {

// Receives opetopes in a deterministic order; return false to stop.
using OpetopeSink = std::function<bool(const Opetope&)>;

// Every opetope of the dimension whose metatree trees have at most
// maxNodesPerLevel nodes each. Throws Unbounded when the bound is missing for
// dim >= 2.
void enumerateOpetopes(const Catalog& cat, int dim, std::optional<int> maxNodesPerLevel, const OpetopeSink& sink);
std::vector<Opetope> enumerateOpetopes(const Catalog& cat, int dim, std::optional<int> maxNodesPerLevel);

// Node counts of the metatree trees, tree 1 first.
std::vector<int> levelSizes(const Opetope& w);

// Planar trees over O^{(k-1)+} (no top permutation) whose evaluation in O^{k+}
// has the given tree as its underlying tree, with at most maxNodes nodes.
// `shape` is a tree over O^{(k-2)+}; k >= 2.
std::vector<Node> decompositions(const Catalog& cat, int k, const Tree& shape, int maxNodes);

// Throw DimensionZero on points.
std::vector<Opetope> infacesOf(const Catalog& cat, const Opetope& w);
Opetope outfaceOf(const Catalog& cat, const Opetope& w);

struct FaceDescription {
  int dim = 0;
  std::string shape;                 // "pentagon", "unigon", ...
  std::vector<int> counts;           // faces per dimension 0..dim-1; empty when unknown
  std::vector<std::string> infaces;  // shape names
  std::string outface;
  // Each face of dimension >= 1 with the faces of its boundary.
  std::vector<std::pair<std::string, std::vector<std::string>>> adjacency;
  std::vector<std::string> flags;
  std::string text;
};

FaceDescription describeOpetope(const Catalog& cat, const Opetope& w);

}  // namespace opetope
