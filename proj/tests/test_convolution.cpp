#include <doctest.h>

#include "hopf/convolution.hpp"
#include "hopf/errors.hpp"
#include "hopf/gallery.hpp"

using namespace hopf;

namespace {

struct PathSetup {
  CoalgebraSpec c;
  AlgebraSpec a;
  ConvMap f;
  std::shared_ptr<QuillenFiltration> filtration;
};

PathSetup pathSetup(const Quiver& q, int maxLength) {
  PathSetup s;
  s.c = buildPathCoalgebra(q, maxLength);
  std::vector<std::string> vertices;
  for (const auto& v : q.vertices) vertices.push_back("(" + v + ")");
  s.a = freeWordAlgebra(vertices);
  s.a.id = "words";
  s.f = ConvMap(s.c.id, s.a.id, [](const BasisKey& k) { return FormalSum(freeWord({{k.payload, 1}})); });
  s.filtration = std::make_shared<QuillenFiltration>(s.c, 20);
  return s;
}

}  // namespace

TEST_CASE("inverse of the unit is the unit") {
  auto s = pathSetup(completeQuiver(2), 3);
  auto unit = convolutionUnit(s.c, s.a);
  auto inv = takeuchiInverse(unit, s.c, s.a, s.filtration);
  for (const auto& k : s.c.keys()) CHECK(inv(k) == unit(k));
}

TEST_CASE("inverse of the path identity into words") {
  Quiver q{{"v", "w"}, {{"e", "v", "w"}}};
  auto s = pathSetup(q, 1);
  auto inv = takeuchiInverse(s.f, s.c, s.a, s.filtration);
  CHECK(render(inv(pathKey({"e"}))) == "-1*(v)^-1 e (w)^-1");
  CHECK(render(inv(vertexPathKey("v"))) == "1*(v)^-1");
  auto rec = recursiveInverse(s.f, s.c, s.a, s.filtration);
  CHECK(render(rec(pathKey({"e"}))) == "-1*(v)^-1 e (w)^-1");
}

TEST_CASE("Takeuchi and recursion agree on long paths and are two-sided") {
  auto s = pathSetup(completeQuiver(2), 5);
  auto t = takeuchiInverse(s.f, s.c, s.a, s.filtration);
  auto r = recursiveInverse(s.f, s.c, s.a, s.filtration);
  for (const auto& k : s.c.keys()) CHECK(t(k) == r(k));
  CHECK(validateInverse(s.f, t, s.c, s.a, 5).passed());
  // Restricted to F₀ the inverse is the direct grouplike inverse.
  CHECK(render(t(vertexPathKey("0"))) == "1*(0)^-1");
}

TEST_CASE("non-invertible grouplike values are reported") {
  auto s = pathSetup(completeQuiver(2), 2);
  s.a = freeWordAlgebra({});
  s.a.id = "words";
  auto inv = takeuchiInverse(s.f, s.c, s.a, s.filtration);
  CHECK_THROWS_AS(inv(pathKey({"e01"})), GrouplikeNotInvertible);
  try {
    inv(vertexPathKey("1"));
  } catch (const GrouplikeNotInvertible& e) {
    CHECK(e.grouplike() == "(1)");
  }
}

TEST_CASE("keys outside the filtration are reported") {
  auto s = pathSetup(completeQuiver(2), 4);
  s.filtration = std::make_shared<QuillenFiltration>(s.c, 2);
  auto inv = takeuchiInverse(s.f, s.c, s.a, s.filtration);
  CHECK_NOTHROW(inv(pathKey({"e01", "e10"})));
  CHECK_THROWS_AS(inv(pathKey({"e01", "e10", "e01"})), FiltrationNotExhaustive);
}

TEST_CASE("antipode of the Drinfel'd double matches the closed form") {
  for (const auto& g : {FiniteGroup::cyclic(2), FiniteGroup::cyclic(3), FiniteGroup::symmetric3()}) {
    for (const auto& b : {buildDrinfeldDouble(g), buildDrinfeldDoubleDual(g)}) {
      auto s = antipode(b);
      for (const auto& k : b.coalgebra.keys()) CHECK(s(k) == b.closedFormAntipode(k));
      CHECK(validateAntipode(b, s, 0).passed());
      CHECK(validateAntihomomorphism(b, s, 0, 400).passed());
    }
  }
}
