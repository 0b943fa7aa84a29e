#pragma once

#include <map>
#include <optional>
#include <set>
#include <string>
#include <utility>
#include <vector>

#include "hopf/coalgebra.hpp"

namespace hopf {

struct GrouplikeSets {
  KeyList grouplikes;
  KeyList semigrouplikes;
};

bool isSemigrouplike(const CoalgebraSpec& c, const BasisKey& k);
bool isGrouplike(const CoalgebraSpec& c, const BasisKey& k);

/// Basis keys of the universe with Δ(k) = k⊗k, split by ε(k) = 1.
GrouplikeSets findGrouplikes(const CoalgebraSpec& c);

/// Basis keys k of the universe with Δ(k) = k⊗g + h⊗k exactly.
/// Throws PreconditionError if g or h is not grouplike.
KeyList findSkewPrimitives(const CoalgebraSpec& c, const BasisKey& g, const BasisKey& h);

/// Basis of the (g,h)-skew primitive elements in the span of the keys of
/// grading ≤ maxDegree, by exact kernel computation.
std::vector<FormalSum> skewPrimitiveSpace(const CoalgebraSpec& c, const BasisKey& g, const BasisKey& h,
                                          int maxDegree);

/// Bivariate Quillen degrees, computed lazily and memoized.
///
/// Degree 0 is a semigrouplike key. Otherwise a key k with flanking
/// grouplikes h⊗k and k⊗g in Δ(k) has degree 1 + the largest degree of a
/// factor of Δ̄_{g,h}(k) = Δ(k) − k⊗g − h⊗k, minimised over flank choices.
/// Keys that never enter the filtration within maxN are NotReached (nullopt).
class QuillenFiltration {
 public:
  QuillenFiltration(CoalgebraSpec c, int maxN);

  std::optional<int> degree(const BasisKey& k);
  /// The flank pair (h, g) realising the degree; nullopt for keys without one.
  std::optional<std::pair<BasisKey, BasisKey>> flanks(const BasisKey& k);
  int maxN() const { return maxN_; }
  const CoalgebraSpec& coalgebra() const { return c_; }

 private:
  struct Entry {
    std::optional<int> degree;
    std::optional<std::pair<BasisKey, BasisKey>> flanks;
  };
  const Entry& compute(const BasisKey& k);

  CoalgebraSpec c_;
  int maxN_;
  std::map<BasisKey, Entry> memo_;
  std::set<BasisKey> inProgress_;
};

std::optional<int> bivariateQuillenDegree(const CoalgebraSpec& c, const BasisKey& k, int maxN);

struct FiltrationTable {
  int maxN = 0;
  std::map<BasisKey, std::optional<int>> degree;
  /// Per grading stratum: did every key receive a degree.
  std::map<int, bool> exhausted;

  /// degree → number of keys; NotReached keys are counted under -1.
  std::map<int, std::size_t> histogram() const;
};

FiltrationTable computeFiltration(const CoalgebraSpec& c, int maxN, int maxDegree);

/// Term-wise QT law: for a key of degree p ≥ 1 each term of Δ has a factor of
/// degree ≤ p−1; degree-0 keys have both factors of degree 0.
ValidationReport checkQTLaw(const CoalgebraSpec& c, const FiltrationTable& table);

struct PathlikeVerdict {
  bool isPathlike = false;
  std::vector<std::string> witnesses;
};

PathlikeVerdict verifyPathlike(const CoalgebraSpec& c, int maxN, int maxDegree);

struct ColorDecomposition {
  /// (left flank, right flank) → keys. Grouplikes g sit in (g, g).
  std::map<std::pair<BasisKey, BasisKey>, KeyList> blocks;
  KeyList uncolorable;
};

/// Reads the flanking grouplikes of every key of grading ≤ maxDegree and
/// checks that the rest of Δ lies in ker ε ⊗ ker ε.
ColorDecomposition colorDecompose(const CoalgebraSpec& c, int maxDegree);

/// Δ̄(x) = Δ(x) − x⊗g − h⊗x for the flanks of x.
TensorSum reducedCoproduct(QuillenFiltration& filtration, const BasisKey& k);

/// Coassociativity of the reduced coproduct on every non-grouplike key of
/// grading ≤ maxDegree.
ValidationReport checkReducedCoassociativity(const CoalgebraSpec& c, int maxDegree, int maxN);

struct StructureReport {
  GrouplikeSets sets;
  std::map<std::pair<BasisKey, BasisKey>, KeyList> skewPrimitives;  // (g, h) → keys
  ColorDecomposition colors;
};

StructureReport analyzeStructure(const CoalgebraSpec& c, int maxDegree);

}  // namespace hopf
