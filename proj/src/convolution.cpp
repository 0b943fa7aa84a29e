#include "hopf/convolution.hpp"

#include <algorithm>
#include <mutex>
#include <random>

#include "hopf/errors.hpp"
#include "hopf/linsolve.hpp"

namespace hopf {

namespace {

FormalSum invertGrouplikeValue(const AlgebraSpec& a, const BasisKey& g, const FormalSum& value) {
  auto inv = a.inverse ? a.inverse(value) : std::nullopt;
  if (!inv) throw GrouplikeNotInvertible(render(g), render(value));
  return *inv;
}

int requireDegree(QuillenFiltration& filtration, std::mutex& m, const BasisKey& k) {
  std::lock_guard lock(m);
  auto d = filtration.degree(k);
  if (!d) throw FiltrationNotExhaustive(render(k));
  return *d;
}

}  // namespace

ConvMap takeuchiInverse(const ConvMap& f, const CoalgebraSpec& c, const AlgebraSpec& a,
                        std::shared_ptr<QuillenFiltration> filtration) {
  auto lock = std::make_shared<std::mutex>();
  // Inverse on F₀, extended by zero.
  ConvMap gExt(c.id, a.id, [f, a, filtration, lock](const BasisKey& k) {
    if (requireDegree(*filtration, *lock, k) != 0) return FormalSum();
    return invertGrouplikeValue(a, k, f(k));
  });
  ConvMap normalized = convolve(f, gExt, c, a);
  ConvMap unit = convolutionUnit(c, a);
  ConvMap defect(c.id, a.id, [unit, normalized](const BasisKey& k) { return unit(k) - normalized(k); });

  struct Powers {
    std::mutex mutex;
    std::vector<ConvMap> maps;
  };
  auto powers = std::make_shared<Powers>();
  powers->maps.push_back(unit);
  auto power = [powers, defect, c, a](std::size_t i) {
    std::lock_guard l(powers->mutex);
    while (powers->maps.size() <= i) powers->maps.push_back(convolve(powers->maps.back(), defect, c, a));
    return powers->maps[i];
  };
  ConvMap series(c.id, a.id, [filtration, lock, power](const BasisKey& k) {
    int p = requireDegree(*filtration, *lock, k);
    FormalSum out;
    for (int i = 0; i <= p; ++i) out += power(static_cast<std::size_t>(i))(k);
    return out;
  });
  return convolve(gExt, series, c, a);
}

ConvMap recursiveInverse(const ConvMap& f, const CoalgebraSpec& c, const AlgebraSpec& a,
                         std::shared_ptr<QuillenFiltration> filtration) {
  struct Impl {
    ConvMap f;
    CoalgebraSpec c;
    AlgebraSpec a;
    std::shared_ptr<QuillenFiltration> filtration;
    std::recursive_mutex mutex;
    std::map<BasisKey, FormalSum> memo;

    FormalSum eval(const BasisKey& k) {
      std::lock_guard l(mutex);
      if (auto it = memo.find(k); it != memo.end()) return it->second;
      auto d = filtration->degree(k);
      if (!d) throw FiltrationNotExhaustive(render(k));
      auto fl = filtration->flanks(k);
      FormalSum out;
      if (*d == 0) {
        out = invertGrouplikeValue(a, k, f(k));
      } else {
        const auto& [h, g] = *fl;
        TensorSum w = c.delta(k);
        w.add({k, g}, Scalar(-1));
        w.add({h, k}, Scalar(-1));
        FormalSum rhs = a.unit * c.counit(k);
        rhs -= multiply(a, f(k), eval(g));
        for (const auto& [pair, coef] : w) rhs.addScaled(multiply(a, f(pair.first), eval(pair.second)), -coef);
        out = multiply(a, invertGrouplikeValue(a, h, f(h)), rhs);
      }
      return memo.emplace(k, std::move(out)).first->second;
    }
  };
  auto impl = std::make_shared<Impl>();
  impl->f = f;
  impl->c = c;
  impl->a = a;
  impl->filtration = std::move(filtration);
  return ConvMap(c.id, a.id, [impl](const BasisKey& k) { return impl->eval(k); });
}

ConvMap linearSolveAntipode(const BialgebraSpec& b) {
  const auto& c = b.coalgebra;
  const auto& a = b.algebra;
  if (!c.finite) throw UnsupportedError("linear-solve antipode needs a finite universe, got " + c.id);
  const KeyList& keys = c.keys();
  const int n = static_cast<int>(keys.size());
  std::map<BasisKey, int> index;
  for (int i = 0; i < n; ++i) index[keys[i]] = i;
  auto var = [n](int image, int source) { return source * n + image; };  // coefficient of keys[image] in S(keys[source])

  // Products keys[j]·y are reused for every equation.
  std::map<std::pair<int, int>, FormalSum> productCache;
  auto product = [&](int l, int r) -> const FormalSum& {
    auto [it, inserted] = productCache.try_emplace({l, r});
    if (inserted) it->second = a.product(keys[l], keys[r]);
    return it->second;
  };

  LinearSystem sys;
  sys.unknowns = n * n;
  for (int x = 0; x < n; ++x) {
    TensorSum d = c.delta(keys[x]);
    FormalSum expected = a.unit * c.counit(keys[x]);
    for (int side = 0; side < 2; ++side) {
      std::map<int, SparseRow> rows;  // output key → row
      for (const auto& [pair, coef] : d) {
        int x1 = index.at(pair.first), x2 = index.at(pair.second);
        for (int j = 0; j < n; ++j) {
          const FormalSum& p = side == 0 ? product(j, x2) : product(x1, j);
          int v = side == 0 ? var(j, x1) : var(j, x2);
          for (const auto& [m, pc] : p) {
            auto& cell = rows[index.at(m)][v];
            cell += coef * pc;
          }
        }
      }
      for (const auto& [m, coefv] : expected) rows.try_emplace(index.at(m));
      for (auto& [m, row] : rows) sys.addEquation(std::move(row), expected.coefficient(keys[m]));
    }
  }
  auto result = solve(sys);
  if (!result.solution) throw MathError("no antipode: S⋆id = η∘ε has no solution on " + c.id);
  auto table = std::make_shared<std::map<BasisKey, FormalSum>>();
  for (int x = 0; x < n; ++x) {
    FormalSum s;
    for (int j = 0; j < n; ++j) s.add(keys[j], (*result.solution)[var(j, x)]);
    (*table)[keys[x]] = std::move(s);
  }
  return ConvMap(c.id, a.id, [table](const BasisKey& k) {
    auto it = table->find(k);
    if (it == table->end()) throw PreconditionError(render(k) + " is outside the finite universe");
    return it->second;
  });
}

ConvMap antipode(const BialgebraSpec& b, InverseMethod method, int maxN) {
  if (method == InverseMethod::LinearSolve) return linearSolveAntipode(b);
  auto filtration = std::make_shared<QuillenFiltration>(b.coalgebra, maxN);
  ConvMap id = identityMap(b);
  if (method == InverseMethod::Recursive) return recursiveInverse(id, b.coalgebra, b.algebra, filtration);
  if (method == InverseMethod::Auto && b.coalgebra.finite) {
    for (const auto& k : b.coalgebra.keys())
      if (!filtration->degree(k)) return linearSolveAntipode(b);
  }
  return takeuchiInverse(id, b.coalgebra, b.algebra, filtration);
}

ConvMap invertCharacter(const ConvMap& phi, const BialgebraSpec& b, const AlgebraSpec& a, int maxN,
                        std::size_t sampleBudget) {
  auto report = validateCharacter(phi, b, a, 2, sampleBudget);
  if (!report.passed())
    throw PreconditionError("not a character: " + report.failures.front().key + ": " + report.failures.front().message);
  auto filtration = std::make_shared<QuillenFiltration>(b.coalgebra, maxN);
  return takeuchiInverse(phi, b.coalgebra, a, filtration);
}

ValidationReport validateCharacter(const ConvMap& phi, const BialgebraSpec& b, const AlgebraSpec& a,
                                   int maxDegree, std::size_t sampleBudget, std::uint64_t seed) {
  ValidationReport r;
  r.subject = "character on " + b.id;
  ++r.checked;
  if (phi.apply(b.algebra.unit) != a.unit) r.fail("1", "φ(1) ≠ 1");
  KeyList keys = keysUpTo(b.coalgebra, maxDegree);
  std::vector<std::pair<std::size_t, std::size_t>> pairs;
  for (std::size_t i = 0; i < keys.size(); ++i)
    for (std::size_t j = 0; j < keys.size(); ++j)
      if (b.coalgebra.grading(keys[i]) + b.coalgebra.grading(keys[j]) <= maxDegree) pairs.emplace_back(i, j);
  if (pairs.size() > sampleBudget) {
    std::mt19937_64 rng(seed);
    std::shuffle(pairs.begin(), pairs.end(), rng);
    pairs.resize(sampleBudget);
  }
  for (auto [i, j] : pairs) {
    ++r.checked;
    FormalSum lhs = phi.apply(b.algebra.product(keys[i], keys[j]));
    FormalSum rhs = multiply(a, phi(keys[i]), phi(keys[j]));
    if (lhs != rhs) r.fail(render(keys[i]) + " * " + render(keys[j]), "φ(xy) ≠ φ(x)φ(y)");
  }
  return r;
}

ValidationReport validateInverse(const ConvMap& f, const ConvMap& g, const CoalgebraSpec& c,
                                 const AlgebraSpec& a, int maxDegree) {
  ValidationReport r;
  r.subject = "convolution inverse on " + c.id;
  ConvMap fg = convolve(f, g, c, a);
  ConvMap gf = convolve(g, f, c, a);
  for (const auto& k : keysUpTo(c, maxDegree)) {
    ++r.checked;
    FormalSum expected = a.unit * c.counit(k);
    if (fg(k) != expected) r.fail(render(k), "f⋆g ≠ η∘ε");
    if (gf(k) != expected) r.fail(render(k), "g⋆f ≠ η∘ε");
  }
  return r;
}

ValidationReport validateAntihomomorphism(const BialgebraSpec& b, const ConvMap& s, int maxDegree,
                                          std::size_t sampleBudget, std::uint64_t seed) {
  ValidationReport r;
  r.subject = "antipode antihomomorphism on " + b.id;
  KeyList keys = keysUpTo(b.coalgebra, maxDegree);
  std::vector<std::pair<std::size_t, std::size_t>> pairs;
  for (std::size_t i = 0; i < keys.size(); ++i)
    for (std::size_t j = 0; j < keys.size(); ++j)
      if (b.coalgebra.grading(keys[i]) + b.coalgebra.grading(keys[j]) <= maxDegree) pairs.emplace_back(i, j);
  if (pairs.size() > sampleBudget) {
    std::mt19937_64 rng(seed);
    std::shuffle(pairs.begin(), pairs.end(), rng);
    pairs.resize(sampleBudget);
  }
  for (auto [i, j] : pairs) {
    ++r.checked;
    FormalSum lhs = s.apply(b.algebra.product(keys[i], keys[j]));
    FormalSum rhs = multiply(b.algebra, s(keys[j]), s(keys[i]));
    if (lhs != rhs) r.fail(render(keys[i]) + " * " + render(keys[j]), "S(xy) ≠ S(y)S(x)");
  }
  return r;
}

}  // namespace hopf
