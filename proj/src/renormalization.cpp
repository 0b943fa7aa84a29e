#include "hopf/renormalization.hpp"

#include <algorithm>
#include <cctype>
#include <mutex>
#include <numeric>
#include <regex>

#include "hopf/convolution.hpp"
#include "hopf/errors.hpp"
#include "hopf/graphs.hpp"
#include "hopf/structure.hpp"
#include "hopf/trees.hpp"

namespace hopf {

namespace {

FormalSum power(const FormalSum& x, int n) {
  FormalSum out = zPower(0);
  for (int i = 0; i < n; ++i) out = laurentMultiply(out, x);
  return out;
}

bool onlyNegative(const FormalSum& p) {
  for (const auto& [e, c] : laurentTerms(p))
    if (e >= 0) return false;
  return true;
}

bool inImage(const RBOperator& t, const FormalSum& p) { return t(p) == p; }

class LaurentParser {
 public:
  explicit LaurentParser(std::string_view text) : text_(text) {}

  FormalSum parse() {
    FormalSum out;
    skip();
    if (pos_ == text_.size()) fail("empty polynomial");
    bool first = true;
    while (pos_ < text_.size()) {
      Scalar sign(1);
      if (peek() == '+' || peek() == '-') {
        if (peek() == '-') sign = Scalar(-1);
        ++pos_;
        skip();
      } else if (!first) {
        fail("expected '+' or '-'");
      }
      out.addScaled(term(), sign);
      first = false;
      skip();
    }
    return out;
  }

 private:
  char peek() const { return pos_ < text_.size() ? text_[pos_] : '\0'; }

  void skip() {
    while (pos_ < text_.size() && std::isspace(static_cast<unsigned char>(text_[pos_]))) ++pos_;
  }

  [[noreturn]] void fail(const std::string& message) const {
    std::size_t line = 1, column = 1;
    for (std::size_t i = 0; i < pos_ && i < text_.size(); ++i) {
      if (text_[i] == '\n') {
        ++line;
        column = 1;
      } else {
        ++column;
      }
    }
    throw ParseError(message, line, column);
  }

  std::string digits() {
    std::size_t start = pos_;
    while (std::isdigit(static_cast<unsigned char>(peek()))) ++pos_;
    return std::string(text_.substr(start, pos_ - start));
  }

  FormalSum term() {
    Scalar coef(1);
    bool haveCoef = false;
    if (std::isdigit(static_cast<unsigned char>(peek()))) {
      std::string num = digits();
      if (peek() == '/') {
        ++pos_;
        std::string den = digits();
        if (den.empty()) fail("expected denominator");
        num += "/" + den;
      }
      coef = Scalar::parse(num);
      if (coef.isZero() && num.find('/') != std::string::npos) fail("zero denominator");
      haveCoef = true;
      skip();
      if (peek() == '*') {
        ++pos_;
        skip();
        if (peek() != 'z') fail("expected 'z'");
      }
    }
    int exponent = 0;
    if (peek() == 'z') {
      ++pos_;
      exponent = 1;
      if (peek() == '^') {
        ++pos_;
        bool negative = false;
        if (peek() == '-') {
          negative = true;
          ++pos_;
        }
        std::string e = digits();
        if (e.empty()) fail("expected exponent");
        exponent = std::stoi(e) * (negative ? -1 : 1);
      }
    } else if (!haveCoef) {
      fail("expected a coefficient or 'z'");
    }
    return zPower(exponent, coef);
  }

  std::string_view text_;
  std::size_t pos_ = 0;
};

const FormalSum& rule(const CharacterSpec& phi, const std::string& specific, const std::string& general) {
  if (auto it = phi.rules.find(specific); it != phi.rules.end()) return it->second;
  if (auto it = phi.rules.find(general); it != phi.rules.end()) return it->second;
  throw RuleNotFound(general);
}

const FormalSum& rule(const CharacterSpec& phi, const std::string& name) {
  if (auto it = phi.rules.find(name); it != phi.rules.end()) return it->second;
  throw RuleNotFound(name);
}

FormalSum evalTree(const CharacterSpec& phi, const Tree& t) {
  if (t.isLeaf) return zPower(0);
  FormalSum out = rule(phi, "vertex:" + std::to_string(t.children.size()), "vertex");
  for (const auto& c : t.children) out = laurentMultiply(out, evalTree(phi, c));
  return out;
}

FormalSum evalForest(const CharacterSpec& phi, const BasisKey& key) {
  FormalSum out = zPower(0);
  for (const auto& t : forestOf(key)) {
    if (t.isLeaf)
      out = laurentMultiply(out, rule(phi, "grouplike:1", "grouplike"));
    else
      out = laurentMultiply(out, evalTree(phi, t));
  }
  return out;
}

FormalSum evalGraph(const CharacterSpec& phi, const BasisKey& key) {
  GraphMorphism m = graphRepresentative(key);
  std::map<std::string, int> index;
  for (std::size_t i = 0; i < m.corollas.size(); ++i) index[m.corollas[i].name] = static_cast<int>(i);
  const int n = static_cast<int>(m.corollas.size());
  std::vector<int> parent(n);
  std::iota(parent.begin(), parent.end(), 0);
  std::function<int(int)> find = [&](int x) { return parent[x] == x ? x : parent[x] = find(parent[x]); };
  auto corollaOf = [&](const std::string& flag) { return index.at(flag.substr(0, flag.find('.'))); };

  std::vector<int> block = m.targetBlocks();
  const int blocks = block.empty() ? 0 : *std::max_element(block.begin(), block.end()) + 1;
  std::vector<int> loops(blocks), edges(blocks), size(blocks);
  for (const auto& [f, g] : m.edges) {
    int u = corollaOf(f), v = corollaOf(g);
    if (u == v)
      ++loops[block[u]];
    else
      ++edges[block[u]];
    parent[find(u)] = find(v);
  }
  std::vector<std::set<int>> components(blocks);
  for (int i = 0; i < n; ++i) {
    ++size[block[i]];
    components[block[i]].insert(find(i));
  }
  FormalSum out = zPower(0);
  for (int b = 0; b < blocks; ++b) {
    if (size[b] == 1 && loops[b] == 0 && edges[b] == 0) {
      int arity = 0;
      for (int i = 0; i < n; ++i)
        if (block[i] == b) arity = static_cast<int>(m.corollas[i].flags.size());
      out = laurentMultiply(out, rule(phi, "grouplike:" + std::to_string(arity), "grouplike"));
      continue;
    }
    if (edges[b] > 0) out = laurentMultiply(out, power(rule(phi, "edge"), edges[b]));
    if (loops[b] > 0) out = laurentMultiply(out, power(rule(phi, "loop"), loops[b]));
    int mergers = static_cast<int>(components[b].size()) - 1;
    if (mergers > 0) out = laurentMultiply(out, power(rule(phi, "merger"), mergers));
  }
  return out;
}

FormalSum evalLaurent(const CharacterSpec& phi, const BasisKey& key) {
  switch (key.tag) {
    case KeyTag::Unit:
      return zPower(0);
    case KeyTag::Forest:
      return evalForest(phi, key);
    case KeyTag::Graph:
      return evalGraph(phi, key);
    case KeyTag::Deformed: {
      auto [base, e] = splitDeformedKey(key);
      FormalSum out = evalLaurent(phi, base);
      for (const auto& [gen, exp] : e) {
        std::string name = gen == kSingleParameter ? "q" : "q_" + std::to_string(gen);
        FormalSum value = rule(phi, name);
        if (exp < 0) {
          auto inv = laurentAlgebra().inverse(value);
          if (!inv) throw GrouplikeNotInvertible(name, renderLaurent(value));
          value = *inv;
        }
        out = laurentMultiply(out, power(value, std::abs(exp)));
      }
      return out;
    }
    default:
      throw UnsupportedError("no character evaluation on " + render(key));
  }
}

FormalSum toTarget(const CharacterSpec& phi, const FormalSum& p) {
  if (phi.target == "laurent") return p;
  FormalSum out;
  for (const auto& [e, c] : laurentTerms(p)) {
    if (e != 0) throw ConfigurationError("rational target cannot hold " + renderLaurent(p));
    out.add(unitKey(), c);
  }
  return out;
}

}  // namespace

FormalSum zPower(int exponent, const Scalar& coefficient) { return FormalSum(laurentKey(exponent), coefficient); }

std::map<int, Scalar> laurentTerms(const FormalSum& p) {
  std::map<int, Scalar> out;
  for (const auto& [k, c] : p) {
    if (k.tag == KeyTag::Unit)
      out[0] += c;
    else
      out[laurentExponent(k)] += c;
  }
  std::erase_if(out, [](const auto& kv) { return kv.second.isZero(); });
  return out;
}

FormalSum laurentMultiply(const FormalSum& x, const FormalSum& y) { return multiply(laurentAlgebra(), x, y); }

std::string renderLaurent(const FormalSum& p) {
  auto terms = laurentTerms(p);
  if (terms.empty()) return "0";
  std::string out;
  for (const auto& [e, c] : terms) {
    std::string body;
    if (e == 0) {
      body = c.str();
    } else {
      if (c == Scalar(-1))
        body = "-";
      else if (!(c == Scalar(1)))
        body = c.str();
      body += e == 1 ? "z" : "z^" + std::to_string(e);
    }
    if (out.empty())
      out = body;
    else if (body[0] == '-')
      out += " - " + body.substr(1);
    else
      out += " + " + body;
  }
  return out;
}

FormalSum parseLaurent(std::string_view text) { return LaurentParser(text).parse(); }

FormalSum polePart(const FormalSum& p) {
  FormalSum out;
  for (const auto& [e, c] : laurentTerms(p))
    if (e < 0) out.add(laurentKey(e), c);
  return out;
}

RBOperator polePartOperator() {
  RBOperator t;
  t.name = "pole part";
  t.weight = Scalar(-1);
  t.projector = true;
  t.apply = polePart;
  return t;
}

RBOperator exponentProjector(std::vector<int> keep, Scalar weight, std::string name) {
  std::sort(keep.begin(), keep.end());
  RBOperator t;
  t.name = std::move(name);
  t.weight = weight;
  t.projector = true;
  t.apply = [keep](const FormalSum& p) {
    FormalSum out;
    for (const auto& [e, c] : laurentTerms(p))
      if (std::binary_search(keep.begin(), keep.end(), e)) out.add(laurentKey(e), c);
    return out;
  };
  return t;
}

RBOperator scaled(const RBOperator& t, const Scalar& mu) {
  RBOperator s;
  s.name = mu.str() + "*(" + t.name + ")";
  s.weight = t.weight * mu;
  s.projector = t.projector && mu == Scalar(1);
  auto inner = t.apply;
  s.apply = [inner, mu](const FormalSum& p) { return inner(p) * mu; };
  return s;
}

FormalSum randomLaurent(std::mt19937_64& rng, int minExp, int maxExp, int maxTerms) {
  std::uniform_int_distribution<int> exponent(minExp, maxExp);
  std::uniform_int_distribution<int> count(1, maxTerms);
  std::uniform_int_distribution<long> coef(-255, 255);
  FormalSum out;
  int n = count(rng);
  for (int i = 0; i < n; ++i) out.add(laurentKey(exponent(rng)), Scalar(coef(rng)));
  return out;
}

std::vector<std::pair<FormalSum, FormalSum>> randomLaurentPairs(std::size_t count, std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  std::vector<std::pair<FormalSum, FormalSum>> out;
  for (std::size_t i = 0; i < count; ++i) {
    FormalSum x = randomLaurent(rng);
    out.emplace_back(std::move(x), randomLaurent(rng));
  }
  return out;
}

ValidationReport checkRotaBaxter(const RBOperator& t,
                                 const std::vector<std::pair<FormalSum, FormalSum>>& samples) {
  ValidationReport r;
  r.subject = "Rota-Baxter identity of " + t.name + " with weight " + t.weight.str();
  auto complement = [&t](const FormalSum& p) { return p - t(p); };
  for (const auto& [x, y] : samples) {
    ++r.checked;
    std::string where = renderLaurent(x) + " ; " + renderLaurent(y);
    FormalSum tx = t(x), ty = t(y);
    FormalSum lhs = laurentMultiply(tx, ty);
    FormalSum rhs = t(laurentMultiply(tx, y)) + t(laurentMultiply(x, ty)) + t(laurentMultiply(x, y)) * t.weight;
    if (lhs != rhs) r.fail(where, "T(X)T(Y) ≠ T(T(X)Y) + T(XT(Y)) + λT(XY)");
    if (!t.projector) continue;
    if (t(tx) != tx) r.fail(where, "T∘T ≠ T");
    if (!inImage(t, lhs)) r.fail(where, "T(A) not closed under products");
    FormalSum cx = complement(x), cy = complement(y);
    if (!t(laurentMultiply(cx, cy)).isZero()) r.fail(where, "(1−T)(A) not closed under products");
  }
  return r;
}

AtkinsonSplit atkinsonSplit(const RBOperator& t, const std::vector<std::pair<FormalSum, FormalSum>>& samples) {
  if (!(t.weight == Scalar(-1)))
    throw UnsupportedError("Atkinson splitting needs weight -1, got " + t.weight.str());
  AtkinsonSplit s;
  s.minusDescription = "T(A) for " + t.name;
  s.plusDescription = "(1-T)(A) for " + t.name;
  s.report.subject = "Atkinson splitting of " + t.name;
  auto complement = [&t](const FormalSum& p) { return p - t(p); };
  for (const auto& [x, y] : samples) {
    ++s.report.checked;
    std::string where = renderLaurent(x) + " ; " + renderLaurent(y);
    FormalSum xm = t(x), xp = complement(x), ym = t(y), yp = complement(y);
    FormalSum minus = laurentMultiply(xm, ym), plus = laurentMultiply(xp, yp);
    if (t(minus) != minus) s.report.fail(where, "T(A) not closed under products");
    if (!t(plus).isZero()) s.report.fail(where, "(1-T)(A) not closed under products");
    // a = a₋ + a₊ with a₋ ∈ T(A), a₊ ∈ (1−T)(A); uniqueness is A₋ ∩ A₊ = 0.
    if (xm + xp != x) s.report.fail(where, "a ≠ a₋ + a₊");
    if (t(xm) != xm || !t(xp).isZero()) s.report.fail(where, "split not unique: T(A) ∩ (1-T)(A) ≠ 0");
  }
  return s;
}

CharacterSpec CharacterSpec::fromJson(const nlohmann::json& doc) {
  static const std::regex name(R"((vertex|grouplike)(:[0-9]+)?|edge|loop|merger|q|q_[0-9]+)");
  if (!doc.is_object()) throw ConfigurationError("character document must be an object");
  CharacterSpec phi;
  phi.target = doc.value("target", std::string("laurent"));
  if (phi.target != "laurent" && phi.target != "rational")
    throw ConfigurationError("unknown character target '" + phi.target + "'");
  if (!doc.contains("rules") || !doc["rules"].is_object())
    throw ConfigurationError("character document needs a 'rules' object");
  for (const auto& [key, value] : doc["rules"].items()) {
    if (!std::regex_match(key, name)) throw ConfigurationError("unknown rule '" + key + "'");
    FormalSum v;
    if (value.is_string())
      v = parseLaurent(value.get<std::string>());
    else if (value.is_number_integer())
      v = zPower(0, Scalar(value.get<long>()));
    else
      throw ConfigurationError("rule '" + key + "' must be a string or an integer");
    if (phi.target == "rational") toTarget(phi, v);
    phi.rules[key] = v;
  }
  return phi;
}

nlohmann::json CharacterSpec::toJson() const {
  nlohmann::json rulesDoc = nlohmann::json::object();
  for (const auto& [k, v] : rules) rulesDoc[k] = renderLaurent(v);
  return {{"target", target}, {"rules", rulesDoc}};
}

AlgebraSpec CharacterSpec::targetAlgebra() const { return target == "laurent" ? laurentAlgebra() : groundFieldAlgebra(); }

FormalSum evalCharacter(const CharacterSpec& phi, const BasisKey& key) { return toTarget(phi, evalLaurent(phi, key)); }

ConvMap characterMap(const CharacterSpec& phi, const BialgebraSpec& b) {
  return ConvMap(b.coalgebra.id, phi.targetAlgebra().id, [phi](const BasisKey& k) { return evalCharacter(phi, k); });
}

BirkhoffPair birkhoff(const CharacterSpec& phi, const BialgebraSpec& b, const RBOperator& t, int maxDegree) {
  if (phi.target != "laurent") throw PreconditionError("Birkhoff factorization needs the Laurent target");
  return birkhoff(characterMap(phi, b), b, t, maxDegree);
}

BirkhoffPair birkhoff(const ConvMap& phi, const BialgebraSpec& b, const RBOperator& t, int maxDegree) {
  if (!(t.weight == Scalar(-1))) throw PreconditionError("Birkhoff factorization needs weight -1");
  if (b.algebra.unit.size() != 1) throw PreconditionError(b.id + " has no basis unit");
  const BasisKey unit = b.algebra.unit.begin()->first;
  auto sets = findGrouplikes(b.coalgebra);
  if (sets.grouplikes != KeyList{unit})
    throw PreconditionError(b.id + " is not connected: " + std::to_string(sets.grouplikes.size()) +
                            " grouplikes; take the normalized quotient first");
  const AlgebraSpec a = laurentAlgebra();
  if (phi(unit) != a.unit) throw PreconditionError("character is not unital: φ(1) = " + renderLaurent(phi(unit)));

  struct Impl {
    ConvMap phi;
    CoalgebraSpec c;
    RBOperator t;
    BasisKey unit;
    std::recursive_mutex mutex;
    std::map<BasisKey, FormalSum> bar;

    FormalSum phiBar(const BasisKey& k) {
      std::lock_guard l(mutex);
      if (auto it = bar.find(k); it != bar.end()) return it->second;
      FormalSum out = phi(k);
      if (k != unit) {
        TensorSum d = c.delta(k);
        d.add({unit, k}, Scalar(-1));
        d.add({k, unit}, Scalar(-1));
        for (const auto& [pair, coef] : d)
          out.addScaled(laurentMultiply(minus(pair.first), phi(pair.second)), coef);
      }
      return bar.emplace(k, std::move(out)).first->second;
    }
    FormalSum minus(const BasisKey& k) { return k == unit ? zPower(0) : -t(phiBar(k)); }
    FormalSum plus(const BasisKey& k) {
      if (k == unit) return zPower(0);
      FormalSum v = phiBar(k);
      return v - t(v);
    }
  };
  auto impl = std::make_shared<Impl>();
  impl->phi = phi;
  impl->c = b.coalgebra;
  impl->t = t;
  impl->unit = unit;

  BirkhoffPair out;
  out.minus = ConvMap(b.coalgebra.id, a.id, [impl](const BasisKey& k) { return impl->minus(k); });
  out.plus = ConvMap(b.coalgebra.id, a.id, [impl](const BasisKey& k) { return impl->plus(k); });

  ValidationReport& r = out.report;
  r.subject = "Birkhoff factorization on " + b.id;
  auto filtration = std::make_shared<QuillenFiltration>(b.coalgebra, 64);
  ConvMap minusInverse = takeuchiInverse(out.minus, b.coalgebra, a, filtration);
  ConvMap recomposed = convolve(minusInverse, out.plus, b.coalgebra, a);
  ConvMap plusAgain = convolve(out.minus, phi, b.coalgebra, a);
  for (const auto& k : keysUpTo(b.coalgebra, maxDegree)) {
    ++r.checked;
    const std::string where = render(k);
    if (recomposed(k) != phi(k)) r.fail(where, "φ ≠ φ₋^{⋆−1}⋆φ₊");
    if (plusAgain(k) != out.plus(k)) r.fail(where, "φ₊ ≠ φ₋⋆φ");
    if (!polePart(out.plus(k)).isZero()) r.fail(where, "φ₊ has a pole part");
    FormalSum reduced = out.minus(k) - a.unit * b.coalgebra.counit(k);
    if (!onlyNegative(reduced)) r.fail(where, "φ₋ − ηε has nonnegative exponents");
  }
  return out;
}

}  // namespace hopf
