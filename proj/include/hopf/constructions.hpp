#pragma once

#include <cstdint>
#include <functional>

#include "hopf/coalgebra.hpp"

namespace hopf {

enum class QuotientKind {
  Normalized,  // ideal spanned by 1 − g
  Commutator,  // ideal spanned by ab − ba
  Central,     // ideal spanned by ag − ga for grouplike g
};

std::string quotientKindName(QuotientKind kind);

/// A quotient bialgebra whose normal form sends parent keys to quotient keys.
/// Quotient keys are parent keys in normal form.
struct QuotientSpec {
  QuotientKind kind = QuotientKind::Normalized;
  BialgebraSpec parent;
  BialgebraSpec quotient;
  std::function<BasisKey(const BasisKey&)> normalForm;

  FormalSum apply(const FormalSum& x) const;
};

/// B/I_N: deletes grouplike atoms (bare lines, identity corollas). Requires
/// a free-monoid presentation (PreconditionError otherwise).
QuotientSpec normalizedQuotient(const BialgebraSpec& b);
/// B/[B,B] (atoms sorted) or B/I_C (grouplike atoms moved to the end, the
/// others kept in order).
QuotientSpec abelianizeQuotient(const BialgebraSpec& b, QuotientKind kind);
QuotientSpec makeQuotient(const BialgebraSpec& b, QuotientKind kind);

/// Well-definedness of the quotient on parent keys of grading ≤ maxDegree:
/// nf is idempotent, (nf⊗nf)Δ(k) = Δ(nf k) and ε(k) = ε(nf k). Then sampled
/// ideal generators (x(1−g)y, xy − yx or xg − gx) are checked to have
/// Δ(u) ∈ I⊗B + B⊗I and ε(u) = 0.
ValidationReport checkCoideal(const QuotientSpec& q, int maxDegree, std::size_t sampleBudget = 200,
                              std::uint64_t seed = 1);

struct QDeformOptions {
  /// Adjoin q_g⁻¹.
  bool laurent = false;
  /// Collapse q_g to q^weight(g).
  bool singleParameter = false;
};

/// B_q = B[q_g] with central grouplike parameters, and its quotient by
/// I = (q_g − g). Keys of both are deformed keys (base key, q-exponent); in
/// the quotient the base carries no grouplike atoms.
struct QDeformed {
  QDeformOptions options;
  BialgebraSpec parent;
  BialgebraSpec deformed;
  BialgebraSpec quotient;

  /// Parent key as an element of B_q/I: grouplike atoms become q-exponents.
  BasisKey fromParent(const BasisKey& k) const;
  /// B_q key to its B_q/I normal form.
  BasisKey toQuotient(const BasisKey& k) const;
  /// B_q/I key with every q set to 1, as a key of B/I_N.
  BasisKey specialize(const BasisKey& k) const;
  /// B_q/I key to (B/I_N key, q-exponent): the split isomorphism.
  std::pair<BasisKey, QExponent> split(const BasisKey& k) const;
};

/// Requires a free-monoid presentation. Laurent inverses need the grouplike
/// monoid to be free, which holds for every presentation the engine builds.
QDeformed qDeform(const BialgebraSpec& b, QDeformOptions options = {});

/// B_q/I with inverses adjoined (multi-parameter). Throws PreconditionError
/// when the grouplike atoms are not central in b; quotient by I_C first.
BialgebraSpec localizeCentral(const BialgebraSpec& b, bool singleParameter = false);

/// Grouplike atoms commute with the sampled keys of grading ≤ maxDegree.
bool grouplikesCentral(const BialgebraSpec& b, int maxDegree);

/// Δ_B(x) = Σ x₍₁₎ ⊗ π(x₍₂₎) from B_q/I to B_q/I ⊗ B/I_N, π setting q = 1.
struct CoactionMap {
  QDeformed deformation;
  QuotientSpec reduced;

  TensorSum operator()(const BasisKey& x) const;
};

CoactionMap brownCoaction(const BialgebraSpec& b, QDeformOptions options = {});

/// (Δ⊗id)Δ_B = (id⊗Δ_red)Δ_B, (id⊗ε)Δ_B = id and q-free right factors on
/// B_q/I keys of grading ≤ maxDegree.
ValidationReport checkCoaction(const CoactionMap& coaction, int maxDegree);

/// Closed forms in the single-parameter B_q/I.
/// −q^{−(n+1)} τ_n in the tree instance.
FormalSum corollaAntipode(int n);
/// −q^{−2(n+m)} m_{n,m}.
FormalSum mergerAntipode(int n, int m);
/// −q^{−2(s+t−1)} for the contraction of one edge between an s- and a t-corolla.
FormalSum edgeContractionAntipode(int s, int t);
/// −q^{−2(s−1)} for one loop on an s-corolla.
FormalSum loopContractionAntipode(int s);

/// Same in the multi-parameter B_q/I: −q_s⁻¹q_t⁻¹q_{s+t−2}⁻¹ etc.
FormalSum mergerAntipodeMulti(int n, int m);
FormalSum edgeContractionAntipodeMulti(int s, int t);
FormalSum loopContractionAntipodeMulti(int s);

}  // namespace hopf
