#pragma once

#include <compare>
#include <cstdint>
#include <map>
#include <string>
#include <utility>

namespace hopf {

/// Which basis family a key belongs to.
enum class KeyTag : std::uint8_t {
  Unit = 0,    // the ground-field unit "1"
  Path,        // quiver paths
  Interval,    // poset intervals
  Monoid,      // colored monoid elements
  Set,         // setlike coalgebra elements
  Word,        // commutative products of Goncharov words
  Forest,      // rooted forests
  Graph,       // graph morphism classes
  Double,      // Drinfel'd double basis <g,x>
  DoubleDual,  // dual basis of the Drinfel'd double
  Deformed,    // base key with adjoined q-monomial
  Laurent,     // z^k
  FreeWord,    // monomials of a free algebra with some letters inverted
};

/// A basis element: family tag plus canonical byte encoding.
///
/// Equal mathematical elements have byte-identical payloads; the order is
/// (tag, payload) and therefore deterministic. For every tag except Laurent
/// and Deformed the payload is the canonical text literal itself.
struct BasisKey {
  KeyTag tag = KeyTag::Unit;
  std::string payload;

  BasisKey() = default;
  BasisKey(KeyTag t, std::string p) : tag(t), payload(std::move(p)) {}

  friend auto operator<=>(const BasisKey&, const BasisKey&) = default;
  friend bool operator==(const BasisKey&, const BasisKey&) = default;
};

/// Text literal of a key.
std::string render(const BasisKey& key);

BasisKey unitKey();

BasisKey laurentKey(int exponent);
int laurentExponent(const BasisKey& key);

/// Exponents of adjoined central grouplike parameters, indexed by generator.
/// Generator `kSingleParameter` is the collapsed one-parameter q.
using QExponent = std::map<int, int>;
inline constexpr int kSingleParameter = -1;

/// Base key times a q-monomial. Zero exponents are dropped.
BasisKey deformedKey(const BasisKey& base, const QExponent& exponent);
std::pair<BasisKey, QExponent> splitDeformedKey(const BasisKey& key);
std::string renderQExponent(const QExponent& exponent);
QExponent addExponents(QExponent a, const QExponent& b);

}  // namespace hopf
