#include "hopf/structure.hpp"

#include <algorithm>
#include <limits>

#include "hopf/errors.hpp"
#include "hopf/linsolve.hpp"

namespace hopf {

bool isSemigrouplike(const CoalgebraSpec& c, const BasisKey& k) {
  TensorSum d = c.delta(k);
  return d.size() == 1 && d.begin()->first == KeyPair{k, k} && d.begin()->second.isOne();
}

bool isGrouplike(const CoalgebraSpec& c, const BasisKey& k) {
  return isSemigrouplike(c, k) && c.counit(k).isOne();
}

GrouplikeSets findGrouplikes(const CoalgebraSpec& c) {
  GrouplikeSets out;
  for (const auto& k : c.keys()) {
    if (!isSemigrouplike(c, k)) continue;
    out.semigrouplikes.push_back(k);
    if (c.counit(k).isOne()) out.grouplikes.push_back(k);
  }
  return out;
}

namespace {

bool isSkewPrimitive(const TensorSum& d, const BasisKey& k, const BasisKey& g, const BasisKey& h) {
  TensorSum expected;
  expected.add({k, g}, Scalar(1));
  expected.add({h, k}, Scalar(1));
  return d == expected;
}

}  // namespace

KeyList findSkewPrimitives(const CoalgebraSpec& c, const BasisKey& g, const BasisKey& h) {
  if (!isGrouplike(c, g)) throw PreconditionError(render(g) + " is not grouplike");
  if (!isGrouplike(c, h)) throw PreconditionError(render(h) + " is not grouplike");
  KeyList out;
  for (const auto& k : c.keys())
    if (k != g && k != h && isSkewPrimitive(c.delta(k), k, g, h)) out.push_back(k);
  return out;
}

std::vector<FormalSum> skewPrimitiveSpace(const CoalgebraSpec& c, const BasisKey& g, const BasisKey& h,
                                          int maxDegree) {
  if (!isGrouplike(c, g) || !isGrouplike(c, h)) throw PreconditionError("flanks must be grouplike");
  KeyList keys = keysUpTo(c, maxDegree);
  std::map<KeyPair, int> rowOf;
  std::vector<SparseRow> rows;
  for (std::size_t j = 0; j < keys.size(); ++j) {
    TensorSum d = c.delta(keys[j]);
    d.add({keys[j], g}, Scalar(-1));
    d.add({h, keys[j]}, Scalar(-1));
    for (const auto& [pair, coef] : d) {
      auto [it, inserted] = rowOf.try_emplace(pair, static_cast<int>(rows.size()));
      if (inserted) rows.emplace_back();
      rows[it->second][static_cast<int>(j)] = coef;
    }
  }
  LinearSystem sys;
  sys.unknowns = static_cast<int>(keys.size());
  for (auto& r : rows) sys.addEquation(std::move(r), Scalar(0));
  std::vector<FormalSum> out;
  for (const auto& v : kernelBasis(sys)) {
    FormalSum x;
    for (std::size_t j = 0; j < keys.size(); ++j) x.add(keys[j], v[j]);
    out.push_back(std::move(x));
  }
  return out;
}

QuillenFiltration::QuillenFiltration(CoalgebraSpec c, int maxN) : c_(std::move(c)), maxN_(maxN) {}

std::optional<int> QuillenFiltration::degree(const BasisKey& k) { return compute(k).degree; }

std::optional<std::pair<BasisKey, BasisKey>> QuillenFiltration::flanks(const BasisKey& k) {
  return compute(k).flanks;
}

const QuillenFiltration::Entry& QuillenFiltration::compute(const BasisKey& k) {
  if (auto it = memo_.find(k); it != memo_.end()) return it->second;
  static const Entry kCycle{};
  if (inProgress_.count(k)) return kCycle;  // Δ̄ leads back to k: never enters the filtration
  inProgress_.insert(k);
  Entry e;
  TensorSum d = c_.delta(k);
  if (d.size() == 1 && d.begin()->first == KeyPair{k, k} && d.begin()->second.isOne()) {
    e.degree = 0;
    e.flanks = std::make_pair(k, k);
  } else {
    KeyList left, right;  // h with h⊗k, g with k⊗g
    for (const auto& [pair, coef] : d) {
      if (!coef.isOne()) continue;
      if (pair.second == k && pair.first != k && isGrouplike(c_, pair.first)) left.push_back(pair.first);
      if (pair.first == k && pair.second != k && isGrouplike(c_, pair.second)) right.push_back(pair.second);
    }
    for (const auto& h : left)
      for (const auto& g : right) {
        TensorSum reduced = d;
        reduced.add({k, g}, Scalar(-1));
        reduced.add({h, k}, Scalar(-1));
        int worst = 0;
        bool ok = true;
        for (const auto& [pair, coef] : reduced) {
          auto a = compute(pair.first).degree;
          auto b = compute(pair.second).degree;
          if (!a || !b) {
            ok = false;
            break;
          }
          worst = std::max({worst, *a, *b});
        }
        if (!ok || worst + 1 > maxN_) continue;
        if (!e.degree || worst + 1 < *e.degree) {
          e.degree = worst + 1;
          e.flanks = std::make_pair(h, g);
        }
      }
  }
  inProgress_.erase(k);
  return memo_.emplace(k, std::move(e)).first->second;
}

std::optional<int> bivariateQuillenDegree(const CoalgebraSpec& c, const BasisKey& k, int maxN) {
  QuillenFiltration f(c, maxN);
  return f.degree(k);
}

std::map<int, std::size_t> FiltrationTable::histogram() const {
  std::map<int, std::size_t> h;
  for (const auto& [k, d] : degree) ++h[d ? *d : -1];
  return h;
}

FiltrationTable computeFiltration(const CoalgebraSpec& c, int maxN, int maxDegree) {
  QuillenFiltration f(c, maxN);
  FiltrationTable t;
  t.maxN = maxN;
  for (const auto& k : keysUpTo(c, maxDegree)) {
    auto d = f.degree(k);
    t.degree[k] = d;
    int g = c.grading(k);
    auto [it, inserted] = t.exhausted.try_emplace(g, true);
    if (!d) it->second = false;
  }
  return t;
}

ValidationReport checkQTLaw(const CoalgebraSpec& c, const FiltrationTable& table) {
  ValidationReport r;
  r.subject = "QT filtration " + c.id;
  QuillenFiltration f(c, table.maxN);
  for (const auto& [k, d] : table.degree) {
    if (!d) continue;
    ++r.checked;
    for (const auto& [pair, coef] : c.delta(k)) {
      auto a = f.degree(pair.first);
      auto b = f.degree(pair.second);
      bool ok;
      if (*d == 0)
        ok = a == 0 && b == 0;
      else
        ok = (a && *a <= *d - 1) || (b && *b <= *d - 1);
      if (!ok) {
        r.fail(render(k), "term " + renderPair(pair) + " leaves F_" + std::to_string(*d - 1));
        break;
      }
    }
  }
  return r;
}

PathlikeVerdict verifyPathlike(const CoalgebraSpec& c, int maxN, int maxDegree) {
  PathlikeVerdict v;
  QuillenFiltration f(c, maxN);
  for (const auto& k : keysUpTo(c, maxDegree)) {
    if (isSemigrouplike(c, k) && !c.counit(k).isOne())
      v.witnesses.push_back("semigrouplike " + render(k) + " has counit " + c.counit(k).str());
    auto d = f.degree(k);
    if (!d) v.witnesses.push_back(render(k) + " does not reach the filtration within " + std::to_string(maxN));
  }
  v.isPathlike = v.witnesses.empty();
  return v;
}

ColorDecomposition colorDecompose(const CoalgebraSpec& c, int maxDegree) {
  ColorDecomposition out;
  QuillenFiltration f(c, std::numeric_limits<int>::max() / 2);
  for (const auto& k : keysUpTo(c, maxDegree)) {
    auto fl = f.flanks(k);
    bool ok = fl.has_value();
    if (ok && fl->first != k) {
      TensorSum w = c.delta(k);
      w.add({k, fl->second}, Scalar(-1));
      w.add({fl->first, k}, Scalar(-1));
      for (const auto& [pair, coef] : w)
        if (!c.counit(pair.first).isZero() || !c.counit(pair.second).isZero()) ok = false;
    }
    if (ok)
      out.blocks[*fl].push_back(k);
    else
      out.uncolorable.push_back(k);
  }
  return out;
}

TensorSum reducedCoproduct(QuillenFiltration& filtration, const BasisKey& k) {
  auto fl = filtration.flanks(k);
  if (!fl) throw PreconditionError(render(k) + " has no flanking grouplikes");
  TensorSum d = filtration.coalgebra().delta(k);
  if (fl->first == k) return TensorSum();
  d.add({k, fl->second}, Scalar(-1));
  d.add({fl->first, k}, Scalar(-1));
  return d;
}

ValidationReport checkReducedCoassociativity(const CoalgebraSpec& c, int maxDegree, int maxN) {
  ValidationReport r;
  r.subject = "reduced coassociativity " + c.id;
  QuillenFiltration f(c, maxN);
  for (const auto& k : keysUpTo(c, maxDegree)) {
    if (!f.flanks(k) || f.flanks(k)->first == k) continue;
    ++r.checked;
    TensorSum d = reducedCoproduct(f, k);
    Tensor3 left, right;
    for (const auto& [pair, coef] : d) {
      for (const auto& [p2, c2] : reducedCoproduct(f, pair.first))
        left.add({p2.first, p2.second, pair.second}, coef * c2);
      for (const auto& [p2, c2] : reducedCoproduct(f, pair.second))
        right.add({pair.first, p2.first, p2.second}, coef * c2);
    }
    if (left != right) r.fail(render(k), "reduced coproduct not coassociative");
  }
  return r;
}

StructureReport analyzeStructure(const CoalgebraSpec& c, int maxDegree) {
  StructureReport r;
  r.sets = findGrouplikes(c);
  QuillenFiltration f(c, std::numeric_limits<int>::max() / 2);
  for (const auto& k : keysUpTo(c, maxDegree)) {
    auto fl = f.flanks(k);
    if (!fl || fl->first == k) continue;
    if (isSkewPrimitive(c.delta(k), k, fl->second, fl->first)) r.skewPrimitives[{fl->second, fl->first}].push_back(k);
  }
  r.colors = colorDecompose(c, maxDegree);
  return r;
}

}  // namespace hopf
