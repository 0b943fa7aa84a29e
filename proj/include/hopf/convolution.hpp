#pragma once

#include <memory>

#include "hopf/coalgebra.hpp"
#include "hopf/structure.hpp"

namespace hopf {

/// Two-sided ⋆-inverse of f by the geometric series of the filtration.
///
/// f is first normalised on F₀ by the inverses of its grouplike values
/// (GrouplikeNotInvertible when the target has none); the series for a key
/// of degree p stops after p+1 terms. Keys outside the filtration raise
/// FiltrationNotExhaustive when evaluated.
ConvMap takeuchiInverse(const ConvMap& f, const CoalgebraSpec& c, const AlgebraSpec& a,
                        std::shared_ptr<QuillenFiltration> filtration);

/// Same inverse by the colored recursion
/// f⁻¹(c) = f(h)⁻¹·(ε(c) − f(c)f⁻¹(g) − Σ_w f(w′)f⁻¹(w″)) for Δ(c) = h⊗c + c⊗g + w.
ConvMap recursiveInverse(const ConvMap& f, const CoalgebraSpec& c, const AlgebraSpec& a,
                         std::shared_ptr<QuillenFiltration> filtration);

/// Antipode of a bialgebra with a finite key universe as the solution of
/// S⋆id = id⋆S = η∘ε, by exact elimination. Throws MathError when the
/// system has no solution.
ConvMap linearSolveAntipode(const BialgebraSpec& b);

enum class InverseMethod { Takeuchi, Recursive, LinearSolve, Auto };

/// S = id^{⋆−1}. Auto uses the Takeuchi series and falls back to the linear
/// solve on finite universes whose basis has no flanking grouplikes.
ConvMap antipode(const BialgebraSpec& b, InverseMethod method = InverseMethod::Auto, int maxN = 64);

/// φ^{⋆−1} for a character φ: B → A. Multiplicativity is checked on up to
/// sampleBudget pairs of keys first (PreconditionError on failure).
ConvMap invertCharacter(const ConvMap& phi, const BialgebraSpec& b, const AlgebraSpec& a, int maxN = 64,
                        std::size_t sampleBudget = 50);

/// φ(xy) = φ(x)φ(y) and φ(1) = 1 on pairs of keys of combined grading ≤ maxDegree.
ValidationReport validateCharacter(const ConvMap& phi, const BialgebraSpec& b, const AlgebraSpec& a,
                                   int maxDegree, std::size_t sampleBudget, std::uint64_t seed = 1);

/// f⋆g = g⋆f = η∘ε on every key of grading ≤ maxDegree.
ValidationReport validateInverse(const ConvMap& f, const ConvMap& g, const CoalgebraSpec& c,
                                 const AlgebraSpec& a, int maxDegree);

/// S(xy) = S(y)S(x) on sampled pairs.
ValidationReport validateAntihomomorphism(const BialgebraSpec& b, const ConvMap& s, int maxDegree,
                                          std::size_t sampleBudget, std::uint64_t seed = 1);

}  // namespace hopf
