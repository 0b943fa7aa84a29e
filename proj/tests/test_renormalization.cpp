#include <doctest.h>

#include <random>

#include "hopf/constructions.hpp"
#include "hopf/convolution.hpp"
#include "hopf/errors.hpp"
#include "hopf/graphs.hpp"
#include "hopf/renormalization.hpp"
#include "hopf/trees.hpp"

using namespace hopf;

namespace {

BasisKey tree(const std::string& literal) { return treeCanonicalForm(parseForest(literal), TreeMode::Symmetric); }

CharacterSpec character(const std::string& doc) { return CharacterSpec::fromJson(nlohmann::json::parse(doc)); }

/// Exponent-by-exponent oracle for the Rota–Baxter identity of the pole part:
/// both sides expanded over term pairs of X and Y.
FormalSum poleRhsOracle(const FormalSum& x, const FormalSum& y) {
  FormalSum out;
  for (const auto& [ex, cx] : laurentTerms(x))
    for (const auto& [ey, cy] : laurentTerms(y)) {
      int s = ex + ey;
      if (s >= 0) continue;
      Scalar c = cx * cy;
      int count = (ex < 0 ? 1 : 0) + (ey < 0 ? 1 : 0) - 1;
      out.add(laurentKey(s), c * Scalar(count));
    }
  return out;
}

FormalSum poleLhsOracle(const FormalSum& x, const FormalSum& y) {
  FormalSum out;
  for (const auto& [ex, cx] : laurentTerms(x))
    for (const auto& [ey, cy] : laurentTerms(y))
      if (ex < 0 && ey < 0) out.add(laurentKey(ex + ey), cx * cy);
  return out;
}

}  // namespace

TEST_CASE("Laurent literals") {
  FormalSum p = zPower(-2, Scalar(3)) + zPower(0, Scalar(5)) + zPower(1, Scalar(7));
  CHECK(renderLaurent(p) == "3z^-2 + 5 + 7z");
  CHECK(parseLaurent("3z^-2 + 5 + 7z") == p);
  CHECK(parseLaurent("3*z^-2+5+7*z^1") == p);
  CHECK(renderLaurent(zPower(-1, Scalar(-1))) == "-z^-1");
  CHECK(renderLaurent(FormalSum()) == "0");
  CHECK(renderLaurent(zPower(-1, Scalar(2, 3)) - zPower(2)) == "2/3z^-1 - z^2");
  std::mt19937_64 rng(7);
  for (int i = 0; i < 300; ++i) {
    FormalSum x = randomLaurent(rng);
    CHECK(parseLaurent(renderLaurent(x)) == x);
  }
  CHECK_THROWS_AS(parseLaurent(""), ParseError);
  CHECK_THROWS_AS(parseLaurent("z^"), ParseError);
  CHECK_THROWS_AS(parseLaurent("3 4"), ParseError);
  CHECK_THROWS_AS(parseLaurent("y"), ParseError);
}

TEST_CASE("pole part") {
  CHECK(polePart(parseLaurent("3z^-2 + 5 + 7z")) == parseLaurent("3z^-2"));
  CHECK(polePart(parseLaurent("1 + z + z^4")).isZero());
  std::mt19937_64 rng(1);
  for (int i = 0; i < 200; ++i) {
    FormalSum x = randomLaurent(rng);
    CHECK(polePart(polePart(x)) == polePart(x));
  }
}

TEST_CASE("Rota-Baxter identity") {
  auto t = polePartOperator();
  auto pairs = randomLaurentPairs(600, 3);
  auto report = checkRotaBaxter(t, pairs);
  CHECK(report.checked == 600);
  CHECK_MESSAGE(report.passed(), report.summary());
  for (const auto& [x, y] : pairs) {
    FormalSum rhs = t(laurentMultiply(t(x), y)) + t(laurentMultiply(x, t(y))) - t(laurentMultiply(x, y));
    CHECK(rhs == poleRhsOracle(x, y));
    CHECK(laurentMultiply(t(x), t(y)) == poleLhsOracle(x, y));
  }
  // Boundary cancellation: X = z⁻¹, Y = z.
  FormalSum x = zPower(-1), y = zPower(1);
  CHECK(laurentMultiply(t(x), t(y)).isZero());
  CHECK((t(laurentMultiply(t(x), y)) + t(laurentMultiply(x, t(y))) - t(laurentMultiply(x, y))).isZero());

  for (Scalar mu : {Scalar(2), Scalar(-3), Scalar(1, 2)}) {
    auto s = scaled(t, mu);
    CHECK(s.weight == Scalar(-1) * mu);
    CHECK(checkRotaBaxter(s, randomLaurentPairs(100, 4)).passed());
    auto wrong = s;
    wrong.weight = Scalar(-1);
    if (!(mu == Scalar(1))) CHECK_FALSE(checkRotaBaxter(wrong, randomLaurentPairs(100, 4)).passed());
  }
}

TEST_CASE("Atkinson splitting") {
  auto t = polePartOperator();
  auto split = atkinsonSplit(t, randomLaurentPairs(300, 5));
  CHECK_MESSAGE(split.report.passed(), split.report.summary());
  FormalSum a = parseLaurent("2z^-1 + 3");
  CHECK(t(a) == parseLaurent("2z^-1"));
  CHECK(a - t(a) == parseLaurent("3"));

  auto corrupted = exponentProjector({-1, 0}, Scalar(-1), "exponents {-1,0}");
  CHECK_FALSE(atkinsonSplit(corrupted, randomLaurentPairs(100, 5)).report.passed());
  CHECK_FALSE(checkRotaBaxter(corrupted, randomLaurentPairs(100, 5)).passed());
  CHECK_THROWS_AS(atkinsonSplit(scaled(t, Scalar(2)), {}), UnsupportedError);
}

TEST_CASE("character evaluation") {
  auto phi = character(R"({"target":"laurent","rules":{"vertex":"z^-1","grouplike":"1"}})");
  CHECK(evalCharacter(phi, tree("v(v(.)v(.))")) == zPower(-3));
  CHECK(evalCharacter(phi, tree("|,|")) == zPower(0));
  CHECK(evalCharacter(phi, tree("1")) == zPower(0));
  auto noLine = character(R"({"rules":{"vertex":"z^-1"}})");
  CHECK_THROWS_AS(evalCharacter(noLine, tree("v(.),|")), RuleNotFound);
  auto arity = character(R"({"rules":{"vertex":"z^-1","vertex:2":"2z","grouplike":"z"}})");
  CHECK(evalCharacter(arity, tree("v(v(.).),|")) == zPower(1, Scalar(2)));

  auto b = buildTreeBialgebra(4, TreeMode::Symmetric);
  std::mt19937_64 rng(9);
  const auto& keys = b.coalgebra.keys();
  for (int i = 0; i < 100; ++i) {
    const auto& x = keys[rng() % keys.size()];
    const auto& y = keys[rng() % keys.size()];
    for (const auto& [xy, c] : b.algebra.product(x, y))
      CHECK(evalCharacter(arity, xy) * c == laurentMultiply(evalCharacter(arity, x), evalCharacter(arity, y)));
  }

  auto g = character(R"({"rules":{"edge":"z^-1","loop":"2z^-1","merger":"z","grouplike":"1"}})");
  CHECK(evalCharacter(g, parseGraphClass("[2,2;0-1]")) == zPower(-1));
  CHECK(evalCharacter(g, parseGraphClass("[2;0-0]")) == zPower(-1, Scalar(2)));
  CHECK(evalCharacter(g, parseGraphClass("[2,3;]")) == zPower(1));
  CHECK(evalCharacter(g, parseGraphClass("[2;][3;]")) == zPower(0));
  CHECK_THROWS_AS(evalCharacter(character(R"({"rules":{"edge":"z^-1"}})"), parseGraphClass("[3;0-0]")), RuleNotFound);

  CHECK_THROWS_AS(character(R"({"target":"matrix","rules":{}})"), ConfigurationError);
  CHECK_THROWS_AS(character(R"({"rules":{"leaf":"1"}})"), ConfigurationError);
  CHECK_THROWS_AS(character(R"({"target":"rational","rules":{"vertex":"z"}})"), ConfigurationError);
  CHECK_THROWS_AS(character(R"({"rules":{"vertex":"z^"}})"), ParseError);
  auto rational = character(R"({"target":"rational","rules":{"vertex":"2","grouplike":1}})");
  CHECK(evalCharacter(rational, tree("v(v(.))")) == FormalSum(unitKey(), Scalar(4)));
}

TEST_CASE("grouplike gate through characters") {
  auto b = buildTreeBialgebra(3, TreeMode::Symmetric);
  auto good = characterMap(character(R"({"rules":{"vertex":"z^-1","grouplike":"z"}})"), b);
  auto inverse = invertCharacter(good, b, laurentAlgebra());
  CHECK(validateInverse(good, inverse, b.coalgebra, laurentAlgebra(), 3).passed());
  auto bad = characterMap(character(R"({"rules":{"vertex":"z^-1","grouplike":"1 + z"}})"), b);
  CHECK_THROWS_AS(invertCharacter(bad, b, laurentAlgebra())(tree("|")), GrouplikeNotInvertible);

  auto normalized = character(R"({"rules":{"vertex":"z^-1 + 2","grouplike":"1"}})");
  auto q = normalizedQuotient(b);
  auto c = makeQuotient(b, QuotientKind::Central);
  std::mt19937_64 rng(2);
  for (int i = 0; i < 100; ++i) {
    const auto& k = b.coalgebra.keys()[rng() % b.coalgebra.keys().size()];
    CHECK(evalCharacter(normalized, k) == evalCharacter(normalized, q.normalForm(k)));
    CHECK(evalCharacter(normalized, k) == evalCharacter(normalized, c.normalForm(k)));
  }
}

TEST_CASE("Birkhoff factorization on trees") {
  auto q = normalizedQuotient(buildTreeBialgebra(5, TreeMode::Symmetric));
  auto phi = character(R"({"target":"laurent","rules":{"vertex":"z^-1","grouplike":"1"}})");
  auto pair = birkhoff(phi, q.quotient, polePartOperator(), 5);
  CHECK_MESSAGE(pair.report.passed(), pair.report.summary());
  CHECK(pair.report.checked == q.quotient.coalgebra.keys().size());
  CHECK(pair.minus(tree("v(.)")) == zPower(-1, Scalar(-1)));
  CHECK(pair.plus(tree("v(.)")).isZero());
  CHECK(pair.minus(tree("v(v(.))")).isZero());
  CHECK(pair.plus(tree("v(v(.))")).isZero());

  auto phiMap = characterMap(phi, q.quotient);
  CHECK(validateCharacter(pair.minus, q.quotient, laurentAlgebra(), 4, 300).passed());
  CHECK(validateCharacter(pair.plus, q.quotient, laurentAlgebra(), 4, 300).passed());

  auto polynomial = character(R"({"rules":{"vertex":"1 + 2z","grouplike":"1"}})");
  auto trivial = birkhoff(polynomial, q.quotient, polePartOperator(), 4);
  CHECK(trivial.report.passed());
  auto eps = convolutionUnit(q.quotient.coalgebra, laurentAlgebra());
  for (const auto& k : keysUpTo(q.quotient.coalgebra, 4)) {
    CHECK(trivial.minus(k) == eps(k));
    CHECK(trivial.plus(k) == evalCharacter(polynomial, k));
  }
}

TEST_CASE("Birkhoff factorization on connected graphs") {
  auto q = normalizedQuotient(buildGraphBialgebra(4, 3, true));
  auto phi = character(R"({"rules":{"edge":"z^-1","loop":"z^-1","grouplike":"1"}})");
  auto pair = birkhoff(phi, q.quotient, polePartOperator(), 3);
  CHECK_MESSAGE(pair.report.passed(), pair.report.summary());
  CHECK(pair.minus(parseGraphClass("[2,2;0-1]")) == zPower(-1, Scalar(-1)));
}

TEST_CASE("Birkhoff preconditions") {
  auto raw = buildTreeBialgebra(3, TreeMode::Symmetric);
  auto phi = character(R"({"rules":{"vertex":"z^-1","grouplike":"1"}})");
  CHECK_THROWS_AS(birkhoff(phi, raw, polePartOperator(), 3), PreconditionError);
  auto q = normalizedQuotient(raw);
  ConvMap nonunital(q.quotient.coalgebra.id, "k[z,z^-1]",
                    [](const BasisKey&) { return zPower(0, Scalar(2)); });
  CHECK_THROWS_AS(birkhoff(nonunital, q.quotient, polePartOperator(), 3), PreconditionError);
  CHECK_THROWS_AS(birkhoff(phi, q.quotient, scaled(polePartOperator(), Scalar(2)), 3), PreconditionError);
}
