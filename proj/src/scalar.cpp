#include "hopf/scalar.hpp"

#include <cctype>
#include <stdexcept>

#include "hopf/errors.hpp"

namespace hopf {

Scalar::Scalar(long value) : value_(value) {}

Scalar::Scalar(long numerator, long denominator) {
  if (denominator == 0) throw std::domain_error("zero denominator");
  value_ = mpq_class(numerator, denominator);
  value_.canonicalize();
}

Scalar::Scalar(mpq_class value) : value_(std::move(value)) { value_.canonicalize(); }

Scalar Scalar::parse(std::string_view text) {
  auto isInteger = [](std::string_view s) {
    if (!s.empty() && (s.front() == '-' || s.front() == '+')) s.remove_prefix(1);
    if (s.empty()) return false;
    for (char c : s)
      if (!std::isdigit(static_cast<unsigned char>(c))) return false;
    return true;
  };
  auto slash = text.find('/');
  std::string_view num = text.substr(0, slash);
  std::string_view den = slash == std::string_view::npos ? std::string_view("1") : text.substr(slash + 1);
  if (!isInteger(num) || !isInteger(den) || den.front() == '-' || den.front() == '+')
    throw std::invalid_argument("not a rational number: '" + std::string(text) + "'");
  std::string n(num);
  if (!n.empty() && n.front() == '+') n.erase(0, 1);
  mpz_class numerator(n);
  mpz_class denominator{std::string(den)};
  if (denominator == 0) throw std::domain_error("zero denominator");
  return Scalar(mpq_class(numerator, denominator));
}

bool Scalar::isPrime(std::uint64_t p) {
  if (p < 2) return false;
  for (std::uint64_t d = 2; d * d <= p; ++d)
    if (p % d == 0) return false;
  return true;
}

Scalar Scalar::modP(long value, std::uint64_t p) {
  if (p >= (1ULL << 31) || !isPrime(p))
    throw ConfigurationError("modulus " + std::to_string(p) + " is not a prime below 2^31");
  Scalar s;
  s.modulus_ = p;
  s.value_ = value;
  s.reduce();
  return s;
}

void Scalar::reduce() {
  if (modulus_ == 0) return;
  mpz_class p(static_cast<unsigned long>(modulus_));
  mpz_class num = value_.get_num() % p;
  if (num < 0) num += p;
  mpz_class den = value_.get_den() % p;
  if (den == 0) throw std::domain_error("denominator vanishes modulo " + std::to_string(modulus_));
  mpz_class inv;
  mpz_invert(inv.get_mpz_t(), den.get_mpz_t(), p.get_mpz_t());
  mpz_class r = (num * inv) % p;
  value_ = mpq_class(r);
}

void Scalar::unify(Scalar& other) {
  if (modulus_ == other.modulus_) return;
  if (modulus_ != 0 && other.modulus_ != 0)
    throw ConfigurationError("mixing scalars of different prime fields");
  if (modulus_ == 0) {
    modulus_ = other.modulus_;
    reduce();
  } else {
    other.modulus_ = modulus_;
    other.reduce();
  }
}

Scalar Scalar::inverse() const {
  if (isZero()) throw std::domain_error("inverse of zero");
  Scalar r = *this;
  if (modulus_ == 0) {
    r.value_ = 1 / value_;
  } else {
    mpz_class p(static_cast<unsigned long>(modulus_));
    mpz_class inv;
    mpz_class num = value_.get_num();
    mpz_invert(inv.get_mpz_t(), num.get_mpz_t(), p.get_mpz_t());
    r.value_ = mpq_class(inv);
  }
  return r;
}

Scalar Scalar::operator-() const {
  Scalar r = *this;
  r.value_ = -r.value_;
  r.reduce();
  return r;
}

Scalar& Scalar::operator+=(const Scalar& other) {
  if (modulus_ == other.modulus_) {
    value_ += other.value_;
    reduce();
    return *this;
  }
  Scalar o = other;
  unify(o);
  value_ += o.value_;
  reduce();
  return *this;
}

Scalar& Scalar::operator-=(const Scalar& other) {
  if (modulus_ == other.modulus_) {
    value_ -= other.value_;
    reduce();
    return *this;
  }
  Scalar o = other;
  unify(o);
  value_ -= o.value_;
  reduce();
  return *this;
}

Scalar& Scalar::operator*=(const Scalar& other) {
  if (modulus_ == other.modulus_) {
    value_ *= other.value_;
    reduce();
    return *this;
  }
  Scalar o = other;
  unify(o);
  value_ *= o.value_;
  reduce();
  return *this;
}

Scalar& Scalar::operator/=(const Scalar& other) {
  Scalar o = other;
  unify(o);
  *this *= o.inverse();
  return *this;
}

std::string Scalar::str() const {
  if (value_.get_den() == 1) return value_.get_num().get_str();
  return value_.get_num().get_str() + "/" + value_.get_den().get_str();
}

}  // namespace hopf
