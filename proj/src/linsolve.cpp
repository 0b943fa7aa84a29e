#include "hopf/linsolve.hpp"

#include <algorithm>
#include <stdexcept>

namespace hopf {

void LinearSystem::addEquation(SparseRow row, Scalar value) {
  for (auto it = row.begin(); it != row.end();) {
    if (it->first < 0 || it->first >= unknowns) throw std::out_of_range("column outside the system");
    it = it->second.isZero() ? row.erase(it) : std::next(it);
  }
  rows.push_back(std::move(row));
  rhs.push_back(std::move(value));
}

namespace {

struct Reduced {
  std::vector<SparseRow> rows;
  std::vector<Scalar> rhs;
  std::vector<int> pivotOf;  // pivot column per reduced row
  bool consistent = true;
};

void axpy(SparseRow& target, const SparseRow& source, const Scalar& factor) {
  for (const auto& [col, v] : source) {
    auto [it, inserted] = target.try_emplace(col, v * factor);
    if (inserted) continue;
    it->second += v * factor;
    if (it->second.isZero()) target.erase(it);
  }
}

Reduced reduce(const LinearSystem& system) {
  Reduced out;
  // Column → index of the reduced row whose pivot it is.
  std::map<int, std::size_t> pivotRow;
  for (std::size_t r = 0; r < system.rows.size(); ++r) {
    SparseRow row = system.rows[r];
    Scalar b = system.rhs[r];
    for (auto it = row.begin(); it != row.end();) {
      auto p = pivotRow.find(it->first);
      if (p == pivotRow.end()) {
        ++it;
        continue;
      }
      Scalar factor = -it->second;
      int col = it->first;
      axpy(row, out.rows[p->second], factor);
      b += out.rhs[p->second] * factor;
      it = row.upper_bound(col);
    }
    if (row.empty()) {
      if (!b.isZero()) out.consistent = false;
      continue;
    }
    int pivot = row.begin()->first;
    Scalar inv = row.begin()->second.inverse();
    for (auto& [c, v] : row) v *= inv;
    b *= inv;
    // Keep earlier rows reduced with respect to the new pivot.
    for (std::size_t i = 0; i < out.rows.size(); ++i) {
      auto it = out.rows[i].find(pivot);
      if (it == out.rows[i].end()) continue;
      Scalar factor = -it->second;
      axpy(out.rows[i], row, factor);
      out.rhs[i] += b * factor;
    }
    pivotRow[pivot] = out.rows.size();
    out.rows.push_back(std::move(row));
    out.rhs.push_back(std::move(b));
    out.pivotOf.push_back(pivot);
  }
  return out;
}

}  // namespace

SolveResult solve(const LinearSystem& system) {
  Reduced red = reduce(system);
  SolveResult result;
  result.rank = static_cast<int>(red.rows.size());
  std::vector<bool> isPivot(system.unknowns, false);
  for (int p : red.pivotOf) isPivot[p] = true;
  for (int c = 0; c < system.unknowns; ++c)
    if (!isPivot[c]) result.freeColumns.push_back(c);
  if (!red.consistent) return result;
  std::vector<Scalar> x(system.unknowns);
  for (std::size_t i = 0; i < red.rows.size(); ++i) x[red.pivotOf[i]] = red.rhs[i];
  result.solution = std::move(x);
  return result;
}

std::vector<std::vector<Scalar>> kernelBasis(const LinearSystem& system) {
  LinearSystem homogeneous = system;
  std::fill(homogeneous.rhs.begin(), homogeneous.rhs.end(), Scalar(0));
  Reduced red = reduce(homogeneous);
  std::vector<bool> isPivot(system.unknowns, false);
  for (int p : red.pivotOf) isPivot[p] = true;
  std::vector<std::vector<Scalar>> basis;
  for (int f = 0; f < system.unknowns; ++f) {
    if (isPivot[f]) continue;
    std::vector<Scalar> v(system.unknowns);
    v[f] = Scalar(1);
    for (std::size_t i = 0; i < red.rows.size(); ++i) {
      auto it = red.rows[i].find(f);
      if (it != red.rows[i].end()) v[red.pivotOf[i]] = -it->second;
    }
    basis.push_back(std::move(v));
  }
  return basis;
}

}  // namespace hopf
