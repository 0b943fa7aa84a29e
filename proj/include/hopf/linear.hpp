#pragma once

#include <map>
#include <string>
#include <tuple>
#include <utility>

#include "hopf/basis_key.hpp"
#include "hopf/scalar.hpp"

namespace hopf {

/// Finite formal linear combination over an ordered key type.
/// Zero coefficients are never stored, so equality is map equality.
template <class Key>
class LinearCombination {
 public:
  using Map = std::map<Key, Scalar>;
  using const_iterator = typename Map::const_iterator;

  LinearCombination() = default;
  explicit LinearCombination(Key key, Scalar coefficient = Scalar(1)) {
    add(std::move(key), coefficient);
  }

  void add(const Key& key, const Scalar& coefficient) {
    if (coefficient.isZero()) return;
    auto [it, inserted] = terms_.try_emplace(key, coefficient);
    if (inserted) return;
    it->second += coefficient;
    if (it->second.isZero()) terms_.erase(it);
  }

  void addScaled(const LinearCombination& other, const Scalar& factor) {
    if (factor.isZero()) return;
    for (const auto& [k, c] : other.terms_) add(k, c * factor);
  }

  Scalar coefficient(const Key& key) const {
    auto it = terms_.find(key);
    return it == terms_.end() ? Scalar(0) : it->second;
  }

  bool isZero() const { return terms_.empty(); }
  std::size_t size() const { return terms_.size(); }
  const Map& terms() const { return terms_; }
  const_iterator begin() const { return terms_.begin(); }
  const_iterator end() const { return terms_.end(); }

  LinearCombination& operator+=(const LinearCombination& other) {
    for (const auto& [k, c] : other.terms_) add(k, c);
    return *this;
  }
  LinearCombination& operator-=(const LinearCombination& other) {
    for (const auto& [k, c] : other.terms_) add(k, -c);
    return *this;
  }
  LinearCombination& operator*=(const Scalar& factor) {
    if (factor.isZero()) {
      terms_.clear();
      return *this;
    }
    for (auto& [k, c] : terms_) c *= factor;
    return *this;
  }

  friend LinearCombination operator+(LinearCombination a, const LinearCombination& b) { return a += b; }
  friend LinearCombination operator-(LinearCombination a, const LinearCombination& b) { return a -= b; }
  friend LinearCombination operator-(LinearCombination a) { return a *= Scalar(-1); }
  friend LinearCombination operator*(LinearCombination a, const Scalar& s) { return a *= s; }
  friend LinearCombination operator*(const Scalar& s, LinearCombination a) { return a *= s; }
  friend bool operator==(const LinearCombination& a, const LinearCombination& b) {
    return a.terms_ == b.terms_;
  }

 private:
  Map terms_;
};

using KeyPair = std::pair<BasisKey, BasisKey>;
using KeyTriple = std::tuple<BasisKey, BasisKey, BasisKey>;

/// Element of an algebra or coalgebra.
using FormalSum = LinearCombination<BasisKey>;
/// Element of C ⊗ C, stored flat on pairs of basis keys.
using TensorSum = LinearCombination<KeyPair>;
/// Element of C ⊗ C ⊗ C.
using Tensor3 = LinearCombination<KeyTriple>;

/// Canonical rendering: `p/q*literal` terms in key order joined by ` + `,
/// `0` for the empty sum. Tensor factors are joined by ` (x) `.
std::string render(const FormalSum& sum);
std::string render(const TensorSum& sum);
std::string render(const Tensor3& sum);

/// Literal of a tensor pair, `a (x) b`.
std::string renderPair(const KeyPair& pair);

TensorSum tensor(const FormalSum& left, const FormalSum& right);
TensorSum flip(const TensorSum& t);

}  // namespace hopf
