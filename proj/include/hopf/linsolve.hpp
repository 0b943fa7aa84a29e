#pragma once

#include <map>
#include <optional>
#include <vector>

#include "hopf/scalar.hpp"

namespace hopf {

/// Sparse row of a linear system: column index → coefficient.
using SparseRow = std::map<int, Scalar>;

/// Exact linear system A·x = b with sparse rows.
struct LinearSystem {
  int unknowns = 0;
  std::vector<SparseRow> rows;
  std::vector<Scalar> rhs;

  void addEquation(SparseRow row, Scalar value);
};

struct SolveResult {
  /// One solution with all free variables set to zero; empty when inconsistent.
  std::optional<std::vector<Scalar>> solution;
  int rank = 0;
  /// Columns without a pivot.
  std::vector<int> freeColumns;
};

/// Gauss–Jordan elimination over the exact scalars.
SolveResult solve(const LinearSystem& system);

/// Basis of the null space of the rows (right-hand side ignored).
std::vector<std::vector<Scalar>> kernelBasis(const LinearSystem& system);

}  // namespace hopf
