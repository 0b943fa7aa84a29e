#include "hopf/constructions.hpp"

#include <algorithm>
#include <random>
#include <set>

#include "hopf/errors.hpp"

namespace hopf {

namespace {

const FreeMonoidStructure& requireMonoid(const BialgebraSpec& b) {
  if (!b.monoid) throw PreconditionError(b.id + " has no free-monoid presentation");
  return *b.monoid;
}

/// Non-grouplike atoms in order and the exponent of the grouplike ones.
std::pair<KeyList, QExponent> separate(const FreeMonoidStructure& m, const BasisKey& k, bool single) {
  KeyList rest;
  QExponent e;
  for (const auto& atom : m.atoms(k)) {
    if (auto gen = m.grouplikeGenerator(atom)) {
      if (single)
        e = addExponents(e, {{kSingleParameter, m.weight(*gen)}});
      else
        e = addExponents(e, {{*gen, 1}});
    } else {
      rest.push_back(atom);
    }
  }
  return {rest, e};
}

TensorSum mapPairs(const TensorSum& t, const std::function<BasisKey(const BasisKey&)>& f) {
  TensorSum out;
  for (const auto& [pair, c] : t) out.add({f(pair.first), f(pair.second)}, c);
  return out;
}

FormalSum mapKeys(const FormalSum& x, const std::function<BasisKey(const BasisKey&)>& f) {
  FormalSum out;
  for (const auto& [k, c] : x) out.add(f(k), c);
  return out;
}

KeyList sortedUnique(KeyList keys) {
  std::sort(keys.begin(), keys.end());
  keys.erase(std::unique(keys.begin(), keys.end()), keys.end());
  return keys;
}

QuotientSpec buildQuotient(const BialgebraSpec& b, QuotientKind kind,
                           std::function<BasisKey(const BasisKey&)> nf) {
  QuotientSpec q;
  q.kind = kind;
  q.parent = b;
  q.normalForm = nf;
  const std::string id = b.id + "/" + quotientKindName(kind);

  KeyList keys;
  for (const auto& k : b.coalgebra.keys()) keys.push_back(nf(k));

  CoalgebraSpec c;
  c.id = id;
  c.universe = std::make_shared<const KeyList>(sortedUnique(std::move(keys)));
  c.finite = b.coalgebra.finite;
  auto parentDelta = b.coalgebra.delta;
  c.delta = [parentDelta, nf](const BasisKey& k) { return mapPairs(parentDelta(k), nf); };
  c.counit = b.coalgebra.counit;
  c.grading = b.coalgebra.grading;
  c = memoizeDelta(std::move(c));

  AlgebraSpec a;
  a.id = id;
  auto parentProduct = b.algebra.product;
  a.product = [parentProduct, nf](const BasisKey& x, const BasisKey& y) { return mapKeys(parentProduct(x, y), nf); };
  a.unit = mapKeys(b.algebra.unit, nf);
  auto parentInverse = b.algebra.inverse;
  a.inverse = [parentInverse, nf](const FormalSum& x) -> std::optional<FormalSum> {
    if (!parentInverse) return std::nullopt;
    auto inv = parentInverse(x);
    if (!inv) return std::nullopt;
    return mapKeys(*inv, nf);
  };
  a.commutative = b.algebra.commutative || kind == QuotientKind::Commutator;

  FreeMonoidStructure m = *b.monoid;
  auto assemble = m.assemble;
  m.assemble = [assemble, nf](const KeyList& atoms) { return nf(assemble(atoms)); };
  if (kind == QuotientKind::Normalized) m.grouplikeGenerator = [](const BasisKey&) { return std::optional<int>(); };
  if (kind == QuotientKind::Commutator) m.commutative = true;

  q.quotient.id = id;
  q.quotient.coalgebra = std::move(c);
  q.quotient.algebra = std::move(a);
  q.quotient.monoid = std::move(m);
  return q;
}

BasisKey qMonomial(const BasisKey& unitBase, const QExponent& e) { return deformedKey(unitBase, e); }

}  // namespace

std::string quotientKindName(QuotientKind kind) {
  switch (kind) {
    case QuotientKind::Normalized:
      return "normalized";
    case QuotientKind::Commutator:
      return "commutator";
    case QuotientKind::Central:
      return "central";
  }
  return "";
}

FormalSum QuotientSpec::apply(const FormalSum& x) const { return mapKeys(x, normalForm); }

QuotientSpec normalizedQuotient(const BialgebraSpec& b) {
  const FreeMonoidStructure m = requireMonoid(b);
  return buildQuotient(b, QuotientKind::Normalized, [m](const BasisKey& k) {
    return m.assemble(separate(m, k, false).first);
  });
}

QuotientSpec abelianizeQuotient(const BialgebraSpec& b, QuotientKind kind) {
  const FreeMonoidStructure m = requireMonoid(b);
  if (kind == QuotientKind::Normalized) return normalizedQuotient(b);
  if (kind == QuotientKind::Commutator)
    return buildQuotient(b, kind, [m](const BasisKey& k) {
      KeyList atoms = m.atoms(k);
      std::sort(atoms.begin(), atoms.end());
      return m.assemble(atoms);
    });
  return buildQuotient(b, kind, [m](const BasisKey& k) {
    KeyList rest, grouplike;
    for (const auto& atom : m.atoms(k)) (m.grouplikeGenerator(atom) ? grouplike : rest).push_back(atom);
    std::sort(grouplike.begin(), grouplike.end());
    rest.insert(rest.end(), grouplike.begin(), grouplike.end());
    return m.assemble(rest);
  });
}

QuotientSpec makeQuotient(const BialgebraSpec& b, QuotientKind kind) {
  return kind == QuotientKind::Normalized ? normalizedQuotient(b) : abelianizeQuotient(b, kind);
}

ValidationReport checkCoideal(const QuotientSpec& q, int maxDegree, std::size_t sampleBudget, std::uint64_t seed) {
  ValidationReport r;
  r.subject = "coideal " + q.quotient.id;
  const auto& pc = q.parent.coalgebra;
  const auto& qc = q.quotient.coalgebra;
  KeyList keys = keysUpTo(pc, maxDegree);
  for (const auto& k : keys) {
    ++r.checked;
    BasisKey n = q.normalForm(k);
    if (q.normalForm(n) != n) r.fail(render(k), "normal form not idempotent");
    if (mapPairs(pc.delta(k), q.normalForm) != qc.delta(n)) r.fail(render(k), "(nf⊗nf)Δ(k) ≠ Δ(nf k)");
    if (pc.counit(k) != qc.counit(n)) r.fail(render(k), "ε(k) ≠ ε(nf k)");
  }

  // Ideal generators.
  const FreeMonoidStructure& m = *q.parent.monoid;
  KeyList generators;
  for (const auto& k : keys)
    for (const auto& atom : m.atoms(k))
      if (m.grouplikeGenerator(atom)) generators.push_back(atom);
  generators = sortedUnique(std::move(generators));
  std::mt19937_64 rng(seed);
  auto pick = [&]() { return keys[rng() % keys.size()]; };
  auto product = [&](const FormalSum& x, const FormalSum& y) { return multiply(q.parent.algebra, x, y); };
  if (keys.empty()) return r;
  for (std::size_t i = 0; i < sampleBudget; ++i) {
    FormalSum x(pick()), y(pick());
    FormalSum u;
    switch (q.kind) {
      case QuotientKind::Normalized: {
        if (generators.empty()) return r;
        FormalSum diff = q.parent.algebra.unit;
        diff.add(generators[rng() % generators.size()], Scalar(-1));
        u = product(product(x, diff), y);
        break;
      }
      case QuotientKind::Commutator:
        u = product(x, y) - product(y, x);
        break;
      case QuotientKind::Central: {
        if (generators.empty()) return r;
        FormalSum g(generators[rng() % generators.size()]);
        u = product(x, g) - product(g, x);
        break;
      }
    }
    ++r.checked;
    std::string name = render(u);
    if (!q.apply(u).isZero()) r.fail(name, "ideal element survives the normal form");
    if (!mapPairs(coproduct(q.parent.coalgebra, u), q.normalForm).isZero())
      r.fail(name, "Δ(u) ∉ I⊗B + B⊗I");
    if (!counit(q.parent.coalgebra, u).isZero()) r.fail(name, "ε(u) ≠ 0");
  }
  return r;
}

BasisKey QDeformed::fromParent(const BasisKey& k) const {
  const FreeMonoidStructure& m = *parent.monoid;
  auto [rest, e] = separate(m, k, options.singleParameter);
  return deformedKey(m.assemble(rest), e);
}

BasisKey QDeformed::toQuotient(const BasisKey& k) const {
  auto [base, e] = splitDeformedKey(k);
  return deformedKey(fromParent(base), e);
}

BasisKey QDeformed::specialize(const BasisKey& k) const { return splitDeformedKey(k).first; }

std::pair<BasisKey, QExponent> QDeformed::split(const BasisKey& k) const { return splitDeformedKey(k); }

QDeformed qDeform(const BialgebraSpec& b, QDeformOptions options) {
  const FreeMonoidStructure m = requireMonoid(b);
  QDeformed d;
  d.options = options;
  d.parent = b;
  const BasisKey unitBase = m.assemble({});
  const std::string suffix = std::string(options.laurent ? "[q,1/q]" : "[q]");

  // B_q.
  {
    CoalgebraSpec c;
    c.id = b.id + suffix;
    KeyList keys;
    for (const auto& k : b.coalgebra.keys()) keys.push_back(deformedKey(k, {}));
    c.universe = std::make_shared<const KeyList>(sortedUnique(std::move(keys)));
    auto parentDelta = b.coalgebra.delta;
    c.delta = [parentDelta](const BasisKey& k) {
      auto [base, e] = splitDeformedKey(k);
      TensorSum out;
      for (const auto& [pair, coef] : parentDelta(base))
        out.add({deformedKey(pair.first, e), deformedKey(pair.second, e)}, coef);
      return out;
    };
    auto parentCounit = b.coalgebra.counit;
    c.counit = [parentCounit](const BasisKey& k) { return parentCounit(splitDeformedKey(k).first); };
    auto parentGrading = b.coalgebra.grading;
    c.grading = [parentGrading](const BasisKey& k) { return parentGrading(splitDeformedKey(k).first); };
    c = memoizeDelta(std::move(c));

    AlgebraSpec a;
    a.id = c.id;
    auto parentProduct = b.algebra.product;
    a.product = [parentProduct](const BasisKey& x, const BasisKey& y) {
      auto [bx, ex] = splitDeformedKey(x);
      auto [by, ey] = splitDeformedKey(y);
      QExponent e = addExponents(ex, ey);
      FormalSum out;
      for (const auto& [k, coef] : parentProduct(bx, by)) out.add(deformedKey(k, e), coef);
      return out;
    };
    a.unit = FormalSum(deformedKey(unitBase, {}));
    const bool laurent = options.laurent;
    a.inverse = [unitBase, laurent](const FormalSum& x) -> std::optional<FormalSum> {
      if (x.size() != 1) return std::nullopt;
      auto [base, e] = splitDeformedKey(x.begin()->first);
      if (base != unitBase || (!laurent && !e.empty())) return std::nullopt;
      QExponent neg;
      for (auto [g, v] : e) neg[g] = -v;
      return FormalSum(deformedKey(unitBase, neg), x.begin()->second.inverse());
    };
    a.commutative = b.algebra.commutative;
    d.deformed.id = c.id;
    d.deformed.coalgebra = std::move(c);
    d.deformed.algebra = std::move(a);
  }

  // B_q/I.
  {
    auto self = std::make_shared<QDeformed>(d);  // normal form helpers only need parent and options
    auto fromParent = [self](const BasisKey& k) { return self->fromParent(k); };
    CoalgebraSpec c;
    c.id = b.id + suffix + "/I";
    KeyList keys;
    for (const auto& k : b.coalgebra.keys()) keys.push_back(fromParent(k));
    c.universe = std::make_shared<const KeyList>(sortedUnique(std::move(keys)));
    auto parentDelta = b.coalgebra.delta;
    c.delta = [parentDelta, fromParent](const BasisKey& k) {
      auto [base, e] = splitDeformedKey(k);
      TensorSum out;
      for (const auto& [pair, coef] : parentDelta(base))
        out.add({deformedKey(fromParent(pair.first), e), deformedKey(fromParent(pair.second), e)}, coef);
      return out;
    };
    auto parentCounit = b.coalgebra.counit;
    c.counit = [parentCounit](const BasisKey& k) { return parentCounit(splitDeformedKey(k).first); };
    auto parentGrading = b.coalgebra.grading;
    c.grading = [parentGrading](const BasisKey& k) { return parentGrading(splitDeformedKey(k).first); };
    c = memoizeDelta(std::move(c));

    AlgebraSpec a;
    a.id = c.id;
    auto parentProduct = b.algebra.product;
    a.product = [parentProduct, fromParent](const BasisKey& x, const BasisKey& y) {
      auto [bx, ex] = splitDeformedKey(x);
      auto [by, ey] = splitDeformedKey(y);
      QExponent e = addExponents(ex, ey);
      FormalSum out;
      for (const auto& [k, coef] : parentProduct(bx, by)) out.add(deformedKey(fromParent(k), e), coef);
      return out;
    };
    a.unit = FormalSum(qMonomial(unitBase, {}));
    a.inverse = d.deformed.algebra.inverse;
    a.commutative = b.algebra.commutative;
    d.quotient.id = c.id;
    d.quotient.coalgebra = std::move(c);
    d.quotient.algebra = std::move(a);
  }
  return d;
}

bool grouplikesCentral(const BialgebraSpec& b, int maxDegree) {
  const FreeMonoidStructure& m = requireMonoid(b);
  if (b.algebra.commutative) return true;
  KeyList keys = keysUpTo(b.coalgebra, maxDegree);
  KeyList generators;
  for (const auto& k : keys)
    for (const auto& atom : m.atoms(k))
      if (m.grouplikeGenerator(atom)) generators.push_back(atom);
  for (const auto& g : sortedUnique(std::move(generators)))
    for (const auto& k : keys)
      if (b.algebra.product(k, g) != b.algebra.product(g, k)) return false;
  return true;
}

BialgebraSpec localizeCentral(const BialgebraSpec& b, bool singleParameter) {
  if (!grouplikesCentral(b, 2))
    throw PreconditionError("grouplikes of " + b.id + " are not central; take the central quotient first");
  return qDeform(b, {true, singleParameter}).quotient;
}

TensorSum CoactionMap::operator()(const BasisKey& x) const {
  TensorSum out;
  for (const auto& [pair, c] : deformation.quotient.coalgebra.delta(x))
    out.add({pair.first, deformation.specialize(pair.second)}, c);
  return out;
}

CoactionMap brownCoaction(const BialgebraSpec& b, QDeformOptions options) {
  return CoactionMap{qDeform(b, options), normalizedQuotient(b)};
}

ValidationReport checkCoaction(const CoactionMap& coaction, int maxDegree) {
  ValidationReport r;
  r.subject = "coaction " + coaction.deformation.quotient.id;
  const auto& qc = coaction.deformation.quotient.coalgebra;
  const auto& red = coaction.reduced.quotient.coalgebra;
  for (const auto& x : keysUpTo(qc, maxDegree)) {
    ++r.checked;
    TensorSum d = coaction(x);
    Tensor3 left, right;
    FormalSum collapse;
    for (const auto& [pair, c] : d) {
      if (pair.second.tag == KeyTag::Deformed)
        r.fail(render(x), "right factor " + render(pair.second) + " carries q");
      for (const auto& [p2, c2] : qc.delta(pair.first)) left.add({p2.first, p2.second, pair.second}, c * c2);
      for (const auto& [p2, c2] : red.delta(pair.second)) right.add({pair.first, p2.first, p2.second}, c * c2);
      collapse.add(pair.first, c * red.counit(pair.second));
    }
    // The first iterate lands in B_q/I ⊗ B_q/I ⊗ B/I_N; project its middle factor.
    Tensor3 projected;
    for (const auto& [t, c] : left)
      projected.add({std::get<0>(t), coaction.deformation.specialize(std::get<1>(t)), std::get<2>(t)}, c);
    if (projected != right) r.fail(render(x), "(Δ⊗id)Δ_B ≠ (id⊗Δ)Δ_B");
    if (collapse != FormalSum(x)) r.fail(render(x), "(id⊗ε)Δ_B ≠ id");
  }
  return r;
}

namespace {

FormalSum negativeQ(const BasisKey& base, const QExponent& e) {
  return FormalSum(deformedKey(base, e), Scalar(-1));
}

BasisKey graphBase(const std::string& literal) { return BasisKey(KeyTag::Graph, literal); }

std::string corollaLiterals(int s, int t, const std::string& edges) {
  return "[" + std::to_string(std::min(s, t)) + "," + std::to_string(std::max(s, t)) + ";" + edges + "]";
}

}  // namespace

FormalSum corollaAntipode(int n) {
  std::string tree = "v(" + std::string(static_cast<std::size_t>(n), '.') + ")";
  return negativeQ(BasisKey(KeyTag::Forest, tree), {{kSingleParameter, -(n + 1)}});
}

FormalSum mergerAntipode(int n, int m) {
  return negativeQ(graphBase(corollaLiterals(n, m, "")), {{kSingleParameter, -2 * (n + m)}});
}

FormalSum edgeContractionAntipode(int s, int t) {
  return negativeQ(graphBase(corollaLiterals(s, t, "0-1")), {{kSingleParameter, -2 * (s + t - 1)}});
}

FormalSum loopContractionAntipode(int s) {
  return negativeQ(graphBase("[" + std::to_string(s) + ";0-0]"), {{kSingleParameter, -2 * (s - 1)}});
}

FormalSum mergerAntipodeMulti(int n, int m) {
  return negativeQ(graphBase(corollaLiterals(n, m, "")), addExponents({{n, -1}}, addExponents({{m, -1}}, {{n + m, -1}})));
}

FormalSum edgeContractionAntipodeMulti(int s, int t) {
  return negativeQ(graphBase(corollaLiterals(s, t, "0-1")),
                   addExponents({{s, -1}}, addExponents({{t, -1}}, {{s + t - 2, -1}})));
}

FormalSum loopContractionAntipodeMulti(int s) {
  return negativeQ(graphBase("[" + std::to_string(s) + ";0-0]"), addExponents({{s, -1}}, {{s - 2, -1}}));
}

}  // namespace hopf
