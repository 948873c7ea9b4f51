#pragma once

#include <map>
#include <string>
#include <vector>

#include "opetope/opetopic_set.hpp"

namespace opetope {

enum class VerdictValue { Holds, Fails, Exhausted };

const char* verdictName(VerdictValue v);

struct Verdict {
  VerdictValue value = VerdictValue::Holds;
  std::string witness;  // set when the verdict fails
  long consumed = 0;    // recursion nodes visited by the call, memo hits excluded

  bool holds() const { return value == VerdictValue::Holds; }
  bool fails() const { return value == VerdictValue::Fails; }
  bool exhausted() const { return value == VerdictValue::Exhausted; }
};

struct CoherenceReport {
  std::vector<std::string> nichesWithoutUniversal;
  std::vector<std::string> nonUniversalComposites;
  Verdict verdict;
  long nichesChecked = 0;
  long compositesChecked = 0;
};

std::string reportToJson(const CoherenceReport& r);
std::string verdictToJson(const Verdict& v);

// Memoized recursion over one set. Not thread-safe; use one checker per thread.
// The set must outlive the checker and stay unchanged.
class CoherenceChecker {
 public:
  CoherenceChecker(const OpetopicSet& x, int n, long budget = 10'000'000);

  int n() const { return n_; }
  long consumed() const { return consumed_; }

  Verdict isBalanced(const PuncturedNiche& p);
  Verdict isUniversal(const Cell& c);
  std::vector<const Cell*> universalOccupants(const Niche& niche);
  std::vector<const Cell*> compositesOf(const Niche& niche);
  CoherenceReport checkNCoherent();

  // Over a virtual functor (base F1): clauses of the balanced definition for
  // the punctured f-niche.
  Verdict essentiallySurjective();
  Verdict fullyFaithful();
  Verdict isEquivalence();

 private:
  struct Exhausted {};
  struct Outcome {
    bool ok = true;
    std::string witness;
  };

  Outcome balanced(const PuncturedNiche& p);
  Outcome universal(const Cell& c);
  Outcome clauseOne(const PuncturedNiche& p);
  Outcome clauseTwo(const PuncturedNiche& p);
  void spend();
  template <class F>
  Verdict run(F&& f);
  PuncturedNiche fNiche() const;
  PuncturedNiche twoNodeNiche(int dim, const Value& rootFrame, int slot, const Value& kidFrame,
                              const std::string& rootId, const std::string& kidId, bool kidFirst) const;

  const OpetopicSet& x_;
  int n_;
  long budget_;
  long consumed_ = 0;
  std::map<std::string, Outcome> balancedMemo_;
  std::map<std::string, Outcome> universalMemo_;
};

// One-shot wrappers with a fresh checker.
Verdict isBalanced(const OpetopicSet& x, const PuncturedNiche& p, int n, long budget = 10'000'000);
Verdict isUniversal(const OpetopicSet& x, const Cell& c, int n, long budget = 10'000'000);
std::vector<const Cell*> universalOccupants(const OpetopicSet& x, const Niche& niche, int n, long budget = 10'000'000);
std::vector<const Cell*> compositesOf(const OpetopicSet& x, const Niche& niche, int n, long budget = 10'000'000);
// Requires maxDim >= n+1 (ValidationFailed otherwise). Exhaustion shows up in
// the verdict; other errors propagate.
CoherenceReport checkNCoherent(const OpetopicSet& x, int n, long budget = 10'000'000);
Verdict essentiallySurjective(const OpetopicSet& x, int n, long budget = 10'000'000);
Verdict fullyFaithful(const OpetopicSet& x, int n, long budget = 10'000'000);
Verdict isEquivalence(const OpetopicSet& x, int n, long budget = 10'000'000);

}  // namespace opetope
