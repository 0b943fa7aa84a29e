#pragma once

#include <cstdint>
#include <functional>
#include <map>
#include <random>
#include <string>
#include <string_view>
#include <vector>

#include <json.hpp>

#include "hopf/coalgebra.hpp"

namespace hopf {

/// Laurent polynomials are FormalSums over the keys z^k of laurentAlgebra().
FormalSum zPower(int exponent, const Scalar& coefficient = Scalar(1));
/// Exponent → coefficient, zero-free.
std::map<int, Scalar> laurentTerms(const FormalSum& p);
FormalSum laurentMultiply(const FormalSum& x, const FormalSum& y);

/// Terms in increasing exponent: "3z^-2 + 5 + 7z", "-z^-1", "0". Coefficients
/// other than ±1 are written before z without a separator.
std::string renderLaurent(const FormalSum& p);
/// Inverse of renderLaurent; also accepts "z^1", "1*z^-1", "2/3z" and spaces.
/// Throws ParseError.
FormalSum parseLaurent(std::string_view text);

/// Keeps exactly the terms of negative exponent.
FormalSum polePart(const FormalSum& p);

/// A linear operator on Laurent polynomials with a declared Rota–Baxter weight.
struct RBOperator {
  std::string name;
  Scalar weight;
  bool projector = false;
  std::function<FormalSum(const FormalSum&)> apply;

  FormalSum operator()(const FormalSum& p) const { return apply(p); }
};

/// The pole part, weight −1.
RBOperator polePartOperator();
/// Projector onto the given exponents, declared with the given weight.
RBOperator exponentProjector(std::vector<int> keep, Scalar weight, std::string name);
/// μT, declared with weight λμ.
RBOperator scaled(const RBOperator& t, const Scalar& mu);

/// Random Laurent polynomial with exponents in [minExp, maxExp] and integer
/// coefficients in [−255, 255].
FormalSum randomLaurent(std::mt19937_64& rng, int minExp = -6, int maxExp = 6, int maxTerms = 4);
std::vector<std::pair<FormalSum, FormalSum>> randomLaurentPairs(std::size_t count, std::uint64_t seed);

/// T(X)T(Y) = T(T(X)Y) + T(XT(Y)) + λT(XY) on the pairs. For projectors also
/// T∘T = T and closure of T(A) and (1−T)(A) under products.
ValidationReport checkRotaBaxter(const RBOperator& t, const std::vector<std::pair<FormalSum, FormalSum>>& samples);

/// The splitting A = A₋ ⊕ A₊ with A₋ = T(A), A₊ = (1−T)(A).
struct AtkinsonSplit {
  std::string minusDescription;
  std::string plusDescription;
  ValidationReport report;
};

/// Closure of both images under products and the unique split a = a₋ + a₊
/// on the samples. Throws UnsupportedError unless the weight is −1.
AtkinsonSplit atkinsonSplit(const RBOperator& t, const std::vector<std::pair<FormalSum, FormalSum>>& samples);

/// A character given by values on generators, extended multiplicatively.
///
/// Rule names: "vertex" (per tree vertex, with "vertex:n" overriding it for
/// n-ary vertices), "grouplike" (bare lines and identity corollas, with
/// "grouplike:k" for arity k), "edge" and "loop" (per ghost edge),
/// "merger" (per extra connected component fused into a block), "q" and
/// "q_g" (adjoined parameters).
struct CharacterSpec {
  /// "laurent" or "rational".
  std::string target = "laurent";
  std::map<std::string, FormalSum> rules;

  static CharacterSpec fromJson(const nlohmann::json& doc);
  nlohmann::json toJson() const;
  AlgebraSpec targetAlgebra() const;
};

/// Multiplicative evaluation over the factorization of the key. Throws
/// RuleNotFound for a missing generator rule.
FormalSum evalCharacter(const CharacterSpec& phi, const BasisKey& key);
ConvMap characterMap(const CharacterSpec& phi, const BialgebraSpec& b);

struct BirkhoffPair {
  ConvMap minus;
  ConvMap plus;
  ValidationReport report;
};

/// φ = φ₋^{⋆−1}⋆φ₊ by the recursion φ̄(x) = φ(x) + Σ φ₋(x′)φ(x″),
/// φ₋(x) = −T(φ̄(x)), φ₊(x) = (1−T)(φ̄(x)) over the reduced coproduct.
///
/// Requires a connected bialgebra (the unit is the only grouplike), T of
/// weight −1 and φ(1) = 1 (PreconditionError otherwise). The report checks
/// the factorization, φ₊ = φ₋⋆φ, zero pole parts of φ₊ and the negative
/// exponents of φ₋ − ηε on every key of grading ≤ maxDegree.
BirkhoffPair birkhoff(const ConvMap& phi, const BialgebraSpec& b, const RBOperator& t, int maxDegree);
BirkhoffPair birkhoff(const CharacterSpec& phi, const BialgebraSpec& b, const RBOperator& t, int maxDegree);

}  // namespace hopf
