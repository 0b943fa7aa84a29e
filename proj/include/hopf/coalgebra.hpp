#pragma once

#include <cstdint>
#include <functional>
#include <map>
#include <memory>
#include <mutex>
#include <optional>
#include <string>
#include <vector>

#include "hopf/linear.hpp"

namespace hopf {

using KeyList = std::vector<BasisKey>;

/// A coalgebra given on a basis: Δ and ε on keys, extended linearly.
///
/// `universe` is the (truncated) enumerated key set, sorted. `finite` marks
/// universes that are the entire basis rather than a degree truncation.
struct CoalgebraSpec {
  std::string id;
  std::shared_ptr<const KeyList> universe = std::make_shared<KeyList>();
  std::function<TensorSum(const BasisKey&)> delta;
  std::function<Scalar(const BasisKey&)> counit;
  std::function<int(const BasisKey&)> grading;
  bool finite = false;

  const KeyList& keys() const { return *universe; }
};

/// An algebra given on a basis.
///
/// `inverse` returns the multiplicative inverse of an element when it is a
/// unit the algebra can recognise, and nullopt otherwise.
struct AlgebraSpec {
  std::string id;
  std::function<FormalSum(const BasisKey&, const BasisKey&)> product;
  FormalSum unit;
  std::function<std::optional<FormalSum>(const FormalSum&)> inverse;
  bool commutative = false;
};

/// Free-monoid presentation of a bialgebra basis: every key is an ordered
/// product of atoms, some of which are grouplike generators. Present for the
/// tree and graph bialgebras; required by the quotient and deformation
/// constructions.
struct FreeMonoidStructure {
  std::function<KeyList(const BasisKey&)> atoms;
  std::function<BasisKey(const KeyList&)> assemble;
  /// Generator index when the atom is a grouplike generator.
  std::function<std::optional<int>(const BasisKey&)> grouplikeGenerator;
  std::function<BasisKey(int)> generatorAtom;
  /// Weight of a generator in the one-parameter collapse q_g -> q^weight.
  std::function<int(int)> weight;
  bool commutative = false;
};

struct BialgebraSpec {
  std::string id;
  CoalgebraSpec coalgebra;
  AlgebraSpec algebra;
  std::optional<FreeMonoidStructure> monoid;
  /// Known antipode, when the construction comes with one.
  std::function<FormalSum(const BasisKey&)> closedFormAntipode;
};

/// Wraps `spec.delta` with a thread-safe cache.
CoalgebraSpec memoizeDelta(CoalgebraSpec spec);

TensorSum coproduct(const CoalgebraSpec& c, const FormalSum& x);
Scalar counit(const CoalgebraSpec& c, const FormalSum& x);
FormalSum multiply(const AlgebraSpec& a, const FormalSum& x, const FormalSum& y);
/// Product of the tensor square: (a⊗b)(c⊗d) = ac⊗bd.
TensorSum multiply(const AlgebraSpec& a, const TensorSum& x, const TensorSum& y);

/// Ground field as an algebra with basis {1}.
AlgebraSpec groundFieldAlgebra();
/// Laurent polynomials k[z, z^-1] on the keys z^k.
AlgebraSpec laurentAlgebra();
/// Free algebra on letters; letters in `invertible` may carry negative
/// exponents. Words are space-separated letters with optional `^k`.
AlgebraSpec freeWordAlgebra(std::vector<std::string> invertible);
BasisKey freeWord(const std::vector<std::pair<std::string, int>>& letters);
std::vector<std::pair<std::string, int>> freeWordLetters(const BasisKey& key);

/// Element of Hom(C, A), memoized per key.
///
/// Concurrent calls are safe; the memo only ever stores the value the
/// function computes, so repeated evaluation is identical.
class ConvMap {
 public:
  using Fn = std::function<FormalSum(const BasisKey&)>;

  ConvMap() = default;
  ConvMap(std::string sourceId, std::string targetId, Fn fn);

  FormalSum operator()(const BasisKey& key) const;
  FormalSum apply(const FormalSum& x) const;

  const std::string& sourceId() const { return sourceId_; }
  const std::string& targetId() const { return targetId_; }

 private:
  struct State {
    Fn fn;
    std::mutex mutex;
    std::map<BasisKey, FormalSum> memo;
  };

  std::string sourceId_;
  std::string targetId_;
  std::shared_ptr<State> state_;
};

/// x ↦ Σ f(x₍₁₎)·g(x₍₂₎). Throws ConfigurationError on mismatched specs.
ConvMap convolve(const ConvMap& f, const ConvMap& g, const CoalgebraSpec& c, const AlgebraSpec& a);
/// η∘ε.
ConvMap convolutionUnit(const CoalgebraSpec& c, const AlgebraSpec& a);
/// The identity of a bialgebra as a map B → B.
ConvMap identityMap(const BialgebraSpec& b);

/// A linear functional on a finite coalgebra, stored by its values on keys.
using Functional = FormalSum;

/// Product of the dual algebra C*: (fg)(c) = (f⊗g)(Δc). Requires a finite
/// key universe (UnsupportedError otherwise).
Functional dualAlgebraProduct(const Functional& f, const Functional& g, const CoalgebraSpec& c);
/// ε as an element of C*.
Functional dualUnit(const CoalgebraSpec& c);

struct ValidationFailure {
  std::string key;
  std::string message;
};

struct ValidationReport {
  std::string subject;
  std::size_t checked = 0;
  std::vector<ValidationFailure> failures;

  bool passed() const { return failures.empty(); }
  void fail(std::string key, std::string message) {
    failures.push_back({std::move(key), std::move(message)});
  }
  void merge(const ValidationReport& other);
  std::string summary() const;
};

/// Coassociativity and both counit laws on every key of grading ≤ maxDegree.
ValidationReport validateCoalgebra(const CoalgebraSpec& c, int maxDegree);
/// Associativity and unit laws on the given keys (all triples).
ValidationReport validateAlgebra(const AlgebraSpec& a, const KeyList& sample);
/// Δ(ab) = Δ(a)Δ(b), ε(ab) = ε(a)ε(b), Δ(1) = 1⊗1, ε(1) = 1 on all pairs with
/// combined grading ≤ maxDegree, subsampled deterministically to the budget.
ValidationReport validateBialgebra(const BialgebraSpec& b, int maxDegree, std::size_t sampleBudget,
                                   std::uint64_t seed = 1);
/// S⋆id = id⋆S = η∘ε on every key of grading ≤ maxDegree.
ValidationReport validateAntipode(const BialgebraSpec& b, const ConvMap& s, int maxDegree);

/// Keys of grading ≤ maxDegree, in universe order.
KeyList keysUpTo(const CoalgebraSpec& c, int maxDegree);

}  // namespace hopf
