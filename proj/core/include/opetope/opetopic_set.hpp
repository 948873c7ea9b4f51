#pragma once

#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "opetope/metatree.hpp"
#include "opetope/operad.hpp"
#include "opetope/pullback.hpp"
#include "opetope/tree.hpp"

namespace opetope {

enum class AboveTruncation { Open, TerminalAbove };

const char* truncationName(AboveTruncation a);

// Bound on the number of infaces of a frame, per dimension. perDim[i] bounds
// dimension i+1 and the last entry repeats; empty means unbounded.
struct SizeBound {
  std::vector<int> perDim;

  static SizeBound uniform(int s) { return SizeBound{{s}}; }
  std::optional<int> at(int dim) const;
};

// An m-cell with m >= 1 sits in the frame (pb OPENING (in INFACES) (out OUTFACE)),
// an operation of O(m-1)_{X(m-1)}; OPENING is an operation of O(m-1).
struct Cell {
  std::string id;
  int dim = 0;
  Value type;                        // dim 0
  Value opening;                     // dim >= 1; null when the pasting does not resolve
  std::vector<std::string> infaces;  // in the opening's input order
  std::string outface;
  Value frame;                       // dim >= 1; null unless valid
  std::string problem;               // empty when valid
  std::string rawPasting;            // as written, kept for cells whose opening failed
  std::vector<std::string> rawOrder;

  bool valid() const { return problem.empty(); }
};

// dim 0: opening holds the type and the lists are empty.
struct Frame {
  int dim = 0;
  Value opening;
  std::vector<std::string> infaces;
  std::string outface;
};

struct Niche {
  int dim = 1;
  Value opening;
  std::vector<std::string> infaces;
};

// infaces[hole] is empty.
struct PuncturedNiche {
  int dim = 1;
  Value opening;
  std::vector<std::string> infaces;
  int hole = 0;
};

class OpetopicSet {
 public:
  OpetopicSet(OperadPtr base, std::string baseId, int maxDim, AboveTruncation above = AboveTruncation::TerminalAbove,
              SizeBound bound = {});
  ~OpetopicSet();
  OpetopicSet(OpetopicSet&&) noexcept;
  OpetopicSet& operator=(OpetopicSet&&) noexcept;
  OpetopicSet(const OpetopicSet&) = delete;
  OpetopicSet& operator=(const OpetopicSet&) = delete;

  const Operad& base() const;
  OperadPtr basePtr() const;
  const std::string& baseId() const;
  int maxDim() const;
  AboveTruncation above() const;
  const SizeBound& bound() const;
  const Catalog& catalog() const;
  // Inline operad document the set was loaded with, if any.
  const std::string& baseDocument() const;
  void setBaseDocument(std::string doc);

  // Cells are resolved against the strata below when added, so add them in
  // order of dimension. Invalid cells are kept; validateSet reports them.
  // Duplicate ids throw ValidationFailed.
  const Cell& addPoint(const std::string& id, const Value& type);
  const Cell& addArrow(const std::string& id, const Value& op, std::vector<std::string> infaces, const std::string& outface);
  // Labels of the pasting are (dim-1)-cell ids, leaf types (dim-2)-cell ids.
  const Cell& addPasting(const std::string& id, int dim, const Tree& pasting, std::vector<std::string> order,
                         const std::string& outface);
  // opening is an operation of level(dim-1) already built over this set.
  const Cell& addFramed(const std::string& id, int dim, const Value& opening, std::vector<std::string> infaces,
                        const std::string& outface);

  const Cell& cell(const std::string& id) const;  // UnknownCell
  const Cell* find(const std::string& id) const;
  const std::vector<const Cell*>& stratum(int dim) const;
  int topDim() const;  // highest dimension holding a cell, -1 when empty
  size_t size() const;
  std::vector<const Cell*> sortedCells() const;  // by (dim, id)

  // O(m): level(0) is the base; level(m) = (O(m-1)_{X(m-1)})+.
  const Operad& level(int m) const;
  OperadPtr levelPtr(int m) const;
  // O(m)_{X(m)}: types are the valid m-cells.
  const PullbackOperad& restricted(int m) const;
  Profile openingProfile(int dim, const Value& opening) const;

  // The type of a 0-cell; the frame of a higher cell.
  const Value& frameValue(const Cell& c) const;
  const std::vector<const Cell*>& withFrame(int dim, const Value& frame) const;
  const std::vector<const Cell*>& withNiche(int dim, const Value& opening, const std::vector<std::string>& infaces) const;
  const std::vector<const Cell*>& withOpening(int dim, const Value& opening) const;

  // The pasting of a cell with dim >= 2: the opening's tree labelled by inface ids.
  Tree pastingOf(const Cell& c) const;

 private:
  struct Impl;
  std::unique_ptr<Impl> impl_;
  Cell& insert(Cell c);
};

Frame frameOf(const OpetopicSet& x, const Cell& c);
Niche nicheOf(const OpetopicSet& x, const Cell& c);  // DimensionZero on points
// The frame an outface of the niche must have (a type for dim 1).
Value nicheTarget(const OpetopicSet& x, const Niche& n);
Value holeFrame(const OpetopicSet& x, const PuncturedNiche& p);
Value frameValueOf(const Frame& f);

std::vector<const Cell*> occupants(const OpetopicSet& x, const Niche& n);
std::vector<const Cell*> frameOccupants(const OpetopicSet& x, const Frame& f);
// Frame-competitors of c, c included.
std::vector<const Cell*> frameCompetitors(const OpetopicSet& x, const Cell& c);

// The opetope underlying a cell.
Opetope shapeOf(const OpetopicSet& x, const Cell& c);

// First invalid cells in (dim, id) order.
Report validateSet(const OpetopicSet& x);

std::string describeNiche(const OpetopicSet& x, const Niche& n);
std::string describePunctured(const OpetopicSet& x, const PuncturedNiche& p);

// {"base", "maxDim", "aboveTruncation", "sizeBound", "cells": [...]}; cells sorted by (dim, id).
std::string setToJson(const OpetopicSet& x);
OpetopicSet setFromJson(const std::string& text);
OpetopicSet loadSet(const std::string& path);

}  // namespace opetope
