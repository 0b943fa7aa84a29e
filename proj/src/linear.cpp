#include "hopf/linear.hpp"

namespace hopf {

namespace {

template <class Key, class Literal>
std::string renderTerms(const LinearCombination<Key>& sum, Literal literal) {
  if (sum.isZero()) return "0";
  std::string out;
  for (const auto& [k, c] : sum) {
    if (!out.empty()) out += " + ";
    out += c.str();
    out += '*';
    out += literal(k);
  }
  return out;
}

}  // namespace

std::string renderPair(const KeyPair& pair) { return render(pair.first) + " (x) " + render(pair.second); }

std::string render(const FormalSum& sum) {
  return renderTerms(sum, [](const BasisKey& k) { return render(k); });
}

std::string render(const TensorSum& sum) { return renderTerms(sum, renderPair); }

std::string render(const Tensor3& sum) {
  return renderTerms(sum, [](const KeyTriple& t) {
    return render(std::get<0>(t)) + " (x) " + render(std::get<1>(t)) + " (x) " + render(std::get<2>(t));
  });
}

TensorSum tensor(const FormalSum& left, const FormalSum& right) {
  TensorSum out;
  for (const auto& [a, ca] : left)
    for (const auto& [b, cb] : right) out.add({a, b}, ca * cb);
  return out;
}

TensorSum flip(const TensorSum& t) {
  TensorSum out;
  for (const auto& [p, c] : t) out.add({p.second, p.first}, c);
  return out;
}

}  // namespace hopf
