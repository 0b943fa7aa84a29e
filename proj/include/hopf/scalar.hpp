#pragma once

#include <compare>
#include <cstdint>
#include <string>
#include <string_view>

#include <gmpxx.h>

namespace hopf {

/// Exact ground-field element.
///
/// By default a rational number in lowest terms (GMP keeps the canonical
/// form). A scalar created through `Scalar::modP` lives in the prime field
/// F_p instead; arithmetic between two scalars of different primes throws,
/// and a rational operand is reduced into F_p on contact.
class Scalar {
 public:
  Scalar() = default;
  Scalar(long value);  // NOLINT(google-explicit-constructor)
  Scalar(long numerator, long denominator);
  explicit Scalar(mpq_class value);

  /// Parses `p`, `-p` or `p/q`.
  static Scalar parse(std::string_view text);

  /// Element of F_p. Throws ConfigurationError if p is not a prime below 2^31.
  static Scalar modP(long value, std::uint64_t p);
  static bool isPrime(std::uint64_t p);

  bool isZero() const { return value_ == 0; }
  bool isOne() const { return value_ == 1; }
  /// 0 for rationals.
  std::uint64_t modulus() const { return modulus_; }
  const mpq_class& rational() const { return value_; }

  Scalar inverse() const;

  Scalar operator-() const;
  Scalar& operator+=(const Scalar& other);
  Scalar& operator-=(const Scalar& other);
  Scalar& operator*=(const Scalar& other);
  Scalar& operator/=(const Scalar& other);

  friend Scalar operator+(Scalar a, const Scalar& b) { return a += b; }
  friend Scalar operator-(Scalar a, const Scalar& b) { return a -= b; }
  friend Scalar operator*(Scalar a, const Scalar& b) { return a *= b; }
  friend Scalar operator/(Scalar a, const Scalar& b) { return a /= b; }

  friend bool operator==(const Scalar& a, const Scalar& b) {
    return a.modulus_ == b.modulus_ && a.value_ == b.value_;
  }

  /// Canonical text: `p/q`, with `/q` omitted when q = 1.
  std::string str() const;

 private:
  void unify(Scalar& other);
  void reduce();

  mpq_class value_{0};
  std::uint64_t modulus_ = 0;
};

}  // namespace hopf
