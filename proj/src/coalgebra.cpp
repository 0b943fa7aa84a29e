#include "hopf/coalgebra.hpp"

#include <algorithm>
#include <numeric>
#include <random>
#include <set>
#include <sstream>

#include "hopf/errors.hpp"

namespace hopf {

CoalgebraSpec memoizeDelta(CoalgebraSpec spec) {
  struct Cache {
    std::mutex mutex;
    std::map<BasisKey, TensorSum> values;
  };
  auto cache = std::make_shared<Cache>();
  auto raw = spec.delta;
  spec.delta = [cache, raw](const BasisKey& k) {
    {
      std::lock_guard lock(cache->mutex);
      auto it = cache->values.find(k);
      if (it != cache->values.end()) return it->second;
    }
    TensorSum v = raw(k);
    std::lock_guard lock(cache->mutex);
    return cache->values.try_emplace(k, std::move(v)).first->second;
  };
  return spec;
}

TensorSum coproduct(const CoalgebraSpec& c, const FormalSum& x) {
  TensorSum out;
  for (const auto& [k, coef] : x) out.addScaled(c.delta(k), coef);
  return out;
}

Scalar counit(const CoalgebraSpec& c, const FormalSum& x) {
  Scalar s;
  for (const auto& [k, coef] : x) s += coef * c.counit(k);
  return s;
}

FormalSum multiply(const AlgebraSpec& a, const FormalSum& x, const FormalSum& y) {
  FormalSum out;
  for (const auto& [kx, cx] : x)
    for (const auto& [ky, cy] : y) out.addScaled(a.product(kx, ky), cx * cy);
  return out;
}

TensorSum multiply(const AlgebraSpec& a, const TensorSum& x, const TensorSum& y) {
  TensorSum out;
  for (const auto& [px, cx] : x)
    for (const auto& [py, cy] : y) {
      FormalSum left = a.product(px.first, py.first);
      if (left.isZero()) continue;
      FormalSum right = a.product(px.second, py.second);
      out.addScaled(tensor(left, right), cx * cy);
    }
  return out;
}

namespace {

std::optional<FormalSum> invertScalarMultipleOf(const FormalSum& x, const BasisKey& unitKey) {
  if (x.size() != 1 || x.begin()->first != unitKey) return std::nullopt;
  return FormalSum(unitKey, x.begin()->second.inverse());
}

}  // namespace

AlgebraSpec groundFieldAlgebra() {
  AlgebraSpec a;
  a.id = "k";
  a.product = [](const BasisKey&, const BasisKey&) { return FormalSum(unitKey()); };
  a.unit = FormalSum(unitKey());
  a.inverse = [](const FormalSum& x) { return invertScalarMultipleOf(x, unitKey()); };
  a.commutative = true;
  return a;
}

AlgebraSpec laurentAlgebra() {
  AlgebraSpec a;
  a.id = "k[z,z^-1]";
  a.product = [](const BasisKey& x, const BasisKey& y) {
    return FormalSum(laurentKey(laurentExponent(x) + laurentExponent(y)));
  };
  a.unit = FormalSum(laurentKey(0));
  a.inverse = [](const FormalSum& x) -> std::optional<FormalSum> {
    if (x.size() != 1) return std::nullopt;
    const auto& [k, c] = *x.begin();
    return FormalSum(laurentKey(-laurentExponent(k)), c.inverse());
  };
  a.commutative = true;
  return a;
}

BasisKey freeWord(const std::vector<std::pair<std::string, int>>& letters) {
  std::vector<std::pair<std::string, int>> merged;
  for (const auto& [l, e] : letters) {
    if (e == 0) continue;
    if (!merged.empty() && merged.back().first == l) {
      merged.back().second += e;
      if (merged.back().second == 0) merged.pop_back();
    } else {
      merged.emplace_back(l, e);
    }
  }
  if (merged.empty()) return BasisKey(KeyTag::FreeWord, "1");
  std::string out;
  for (const auto& [l, e] : merged) {
    if (!out.empty()) out += ' ';
    out += l;
    if (e != 1) out += '^' + std::to_string(e);
  }
  return BasisKey(KeyTag::FreeWord, out);
}

std::vector<std::pair<std::string, int>> freeWordLetters(const BasisKey& key) {
  std::vector<std::pair<std::string, int>> out;
  if (key.payload == "1") return out;
  std::istringstream in(key.payload);
  std::string tok;
  while (in >> tok) {
    auto caret = tok.rfind('^');
    if (caret == std::string::npos)
      out.emplace_back(tok, 1);
    else
      out.emplace_back(tok.substr(0, caret), std::stoi(tok.substr(caret + 1)));
  }
  return out;
}

AlgebraSpec freeWordAlgebra(std::vector<std::string> invertible) {
  std::set<std::string> inv(invertible.begin(), invertible.end());
  AlgebraSpec a;
  a.id = "free-word";
  a.product = [](const BasisKey& x, const BasisKey& y) {
    auto lx = freeWordLetters(x);
    auto ly = freeWordLetters(y);
    lx.insert(lx.end(), ly.begin(), ly.end());
    return FormalSum(freeWord(lx));
  };
  a.unit = FormalSum(BasisKey(KeyTag::FreeWord, "1"));
  a.inverse = [inv](const FormalSum& x) -> std::optional<FormalSum> {
    if (x.size() != 1) return std::nullopt;
    const auto& [k, c] = *x.begin();
    auto letters = freeWordLetters(k);
    std::vector<std::pair<std::string, int>> reversed;
    for (auto it = letters.rbegin(); it != letters.rend(); ++it) {
      if (!inv.count(it->first)) return std::nullopt;
      reversed.emplace_back(it->first, -it->second);
    }
    return FormalSum(freeWord(reversed), c.inverse());
  };
  return a;
}

ConvMap::ConvMap(std::string sourceId, std::string targetId, Fn fn)
    : sourceId_(std::move(sourceId)), targetId_(std::move(targetId)), state_(std::make_shared<State>()) {
  state_->fn = std::move(fn);
}

FormalSum ConvMap::operator()(const BasisKey& key) const {
  if (!state_) throw ConfigurationError("evaluation of an empty convolution map");
  {
    std::lock_guard lock(state_->mutex);
    auto it = state_->memo.find(key);
    if (it != state_->memo.end()) return it->second;
  }
  FormalSum v = state_->fn(key);
  std::lock_guard lock(state_->mutex);
  return state_->memo.try_emplace(key, std::move(v)).first->second;
}

FormalSum ConvMap::apply(const FormalSum& x) const {
  FormalSum out;
  for (const auto& [k, c] : x) out.addScaled((*this)(k), c);
  return out;
}

ConvMap convolve(const ConvMap& f, const ConvMap& g, const CoalgebraSpec& c, const AlgebraSpec& a) {
  if (f.sourceId() != c.id || g.sourceId() != c.id)
    throw ConfigurationError("convolution source mismatch: " + f.sourceId() + ", " + g.sourceId() +
                             " vs " + c.id);
  if (f.targetId() != a.id || g.targetId() != a.id)
    throw ConfigurationError("convolution target mismatch: " + f.targetId() + ", " + g.targetId() +
                             " vs " + a.id);
  return ConvMap(c.id, a.id, [f, g, c, a](const BasisKey& x) {
    FormalSum out;
    for (const auto& [pair, coef] : c.delta(x)) {
      FormalSum left = f(pair.first);
      if (left.isZero()) continue;
      FormalSum right = g(pair.second);
      if (right.isZero()) continue;
      out.addScaled(multiply(a, left, right), coef);
    }
    return out;
  });
}

ConvMap convolutionUnit(const CoalgebraSpec& c, const AlgebraSpec& a) {
  return ConvMap(c.id, a.id, [c, unit = a.unit](const BasisKey& x) { return unit * c.counit(x); });
}

ConvMap identityMap(const BialgebraSpec& b) {
  return ConvMap(b.coalgebra.id, b.algebra.id, [](const BasisKey& x) { return FormalSum(x); });
}

Functional dualAlgebraProduct(const Functional& f, const Functional& g, const CoalgebraSpec& c) {
  if (!c.finite) throw UnsupportedError("dual algebra product needs a finite coalgebra, got " + c.id);
  Functional out;
  for (const auto& key : c.keys()) {
    Scalar v;
    for (const auto& [pair, coef] : c.delta(key)) {
      Scalar a = f.coefficient(pair.first);
      if (a.isZero()) continue;
      v += coef * a * g.coefficient(pair.second);
    }
    out.add(key, v);
  }
  return out;
}

Functional dualUnit(const CoalgebraSpec& c) {
  if (!c.finite) throw UnsupportedError("dual unit needs a finite coalgebra, got " + c.id);
  Functional out;
  for (const auto& key : c.keys()) out.add(key, c.counit(key));
  return out;
}

void ValidationReport::merge(const ValidationReport& other) {
  checked += other.checked;
  for (const auto& f : other.failures) failures.push_back(f);
}

std::string ValidationReport::summary() const {
  std::ostringstream out;
  out << subject << ": " << (passed() ? "pass" : "FAIL") << " (" << checked << " checked, "
      << failures.size() << " failures)";
  return out.str();
}

KeyList keysUpTo(const CoalgebraSpec& c, int maxDegree) {
  KeyList out;
  for (const auto& k : c.keys())
    if (c.grading(k) <= maxDegree) out.push_back(k);
  return out;
}

namespace {

constexpr std::size_t kMaxReportedFailures = 50;

Tensor3 leftIterate(const CoalgebraSpec& c, const TensorSum& d) {
  Tensor3 out;
  for (const auto& [p, coef] : d)
    for (const auto& [q, coef2] : c.delta(p.first)) out.add({q.first, q.second, p.second}, coef * coef2);
  return out;
}

Tensor3 rightIterate(const CoalgebraSpec& c, const TensorSum& d) {
  Tensor3 out;
  for (const auto& [p, coef] : d)
    for (const auto& [q, coef2] : c.delta(p.second)) out.add({p.first, q.first, q.second}, coef * coef2);
  return out;
}

}  // namespace

ValidationReport validateCoalgebra(const CoalgebraSpec& c, int maxDegree) {
  ValidationReport report;
  report.subject = "coalgebra " + c.id;
  for (const auto& key : keysUpTo(c, maxDegree)) {
    ++report.checked;
    TensorSum d = c.delta(key);
    if (leftIterate(c, d) != rightIterate(c, d)) report.fail(render(key), "coassociativity");
    FormalSum left, right;
    for (const auto& [p, coef] : d) {
      left.add(p.second, coef * c.counit(p.first));
      right.add(p.first, coef * c.counit(p.second));
    }
    if (left != FormalSum(key)) report.fail(render(key), "left counit law");
    if (right != FormalSum(key)) report.fail(render(key), "right counit law");
    if (report.failures.size() > kMaxReportedFailures) break;
  }
  return report;
}

ValidationReport validateAlgebra(const AlgebraSpec& a, const KeyList& sample) {
  ValidationReport report;
  report.subject = "algebra " + a.id;
  for (const auto& x : sample) {
    FormalSum fx(x);
    if (multiply(a, a.unit, fx) != fx || multiply(a, fx, a.unit) != fx) report.fail(render(x), "unit law");
    for (const auto& y : sample)
      for (const auto& z : sample) {
        ++report.checked;
        FormalSum l = multiply(a, a.product(x, y), FormalSum(z));
        FormalSum r = multiply(a, FormalSum(x), a.product(y, z));
        if (l != r) report.fail(render(x) + " * " + render(y) + " * " + render(z), "associativity");
        if (report.failures.size() > kMaxReportedFailures) return report;
      }
  }
  return report;
}

ValidationReport validateBialgebra(const BialgebraSpec& b, int maxDegree, std::size_t sampleBudget,
                                   std::uint64_t seed) {
  ValidationReport report;
  report.subject = "bialgebra " + b.id;
  const auto& c = b.coalgebra;
  const auto& a = b.algebra;

  ++report.checked;
  if (coproduct(c, a.unit) != tensor(a.unit, a.unit)) report.fail("1", "Δ(1) = 1⊗1");
  if (counit(c, a.unit) != Scalar(1)) report.fail("1", "ε(1) = 1");

  KeyList keys = keysUpTo(c, maxDegree);
  std::vector<std::pair<std::size_t, std::size_t>> pairs;
  for (std::size_t i = 0; i < keys.size(); ++i)
    for (std::size_t j = 0; j < keys.size(); ++j)
      if (c.grading(keys[i]) + c.grading(keys[j]) <= maxDegree) pairs.emplace_back(i, j);
  if (pairs.size() > sampleBudget) {
    std::mt19937_64 rng(seed);
    std::shuffle(pairs.begin(), pairs.end(), rng);
    pairs.resize(sampleBudget);
    std::sort(pairs.begin(), pairs.end());
  }
  for (auto [i, j] : pairs) {
    ++report.checked;
    const auto& x = keys[i];
    const auto& y = keys[j];
    FormalSum xy = a.product(x, y);
    std::string label = render(x) + " * " + render(y);
    if (coproduct(c, xy) != multiply(a, c.delta(x), c.delta(y))) report.fail(label, "Δ(ab) = Δ(a)Δ(b)");
    if (counit(c, xy) != c.counit(x) * c.counit(y)) report.fail(label, "ε(ab) = ε(a)ε(b)");
    if (report.failures.size() > kMaxReportedFailures) break;
  }
  return report;
}

ValidationReport validateAntipode(const BialgebraSpec& b, const ConvMap& s, int maxDegree) {
  ValidationReport report;
  report.subject = "antipode " + b.id;
  const auto& c = b.coalgebra;
  const auto& a = b.algebra;
  for (const auto& key : keysUpTo(c, maxDegree)) {
    ++report.checked;
    FormalSum left, right;
    for (const auto& [p, coef] : c.delta(key)) {
      left.addScaled(multiply(a, s(p.first), FormalSum(p.second)), coef);
      right.addScaled(multiply(a, FormalSum(p.first), s(p.second)), coef);
    }
    FormalSum expected = a.unit * c.counit(key);
    if (left != expected) report.fail(render(key), "S⋆id = η∘ε");
    if (right != expected) report.fail(render(key), "id⋆S = η∘ε");
    if (report.failures.size() > kMaxReportedFailures) break;
  }
  return report;
}

}  // namespace hopf
