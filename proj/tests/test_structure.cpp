#include <doctest.h>

#include "hopf/errors.hpp"
#include "hopf/gallery.hpp"
#include "hopf/structure.hpp"

using namespace hopf;

namespace {

std::set<std::string> literals(const KeyList& keys) {
  std::set<std::string> out;
  for (const auto& k : keys) out.insert(render(k));
  return out;
}

Quiver sample() {
  return Quiver{{"u", "v", "w"}, {{"a", "u", "v"}, {"b", "v", "w"}, {"c", "w", "u"}, {"l", "v", "v"}}};
}

}  // namespace

TEST_CASE("grouplikes and skew primitives of path coalgebras") {
  for (const auto& q : {sample(), completeQuiver(2)}) {
    auto c = buildPathCoalgebra(q, 5);
    auto sets = findGrouplikes(c);
    std::set<std::string> vertices;
    for (const auto& v : q.vertices) vertices.insert("(" + v + ")");
    CHECK(literals(sets.grouplikes) == vertices);
    CHECK(sets.semigrouplikes.size() == sets.grouplikes.size());

    std::set<std::string> skew, edges;
    for (const auto& g : sets.grouplikes)
      for (const auto& h : sets.grouplikes)
        for (const auto& k : findSkewPrimitives(c, g, h)) skew.insert(render(k));
    for (const auto& e : q.edges) edges.insert(e.name);
    CHECK(skew == edges);
  }
  auto c = buildPathCoalgebra(sample(), 2);
  // An edge v→w is found with right flank w and left flank v.
  CHECK(literals(findSkewPrimitives(c, vertexPathKey("v"), vertexPathKey("u"))) == std::set<std::string>{"a"});
  CHECK_THROWS_AS(findSkewPrimitives(c, pathKey({"a"}), vertexPathKey("u")), PreconditionError);
}

TEST_CASE("differences of grouplikes are skew primitive") {
  auto c = buildPathCoalgebra(sample(), 2);
  auto g = vertexPathKey("u"), h = vertexPathKey("v");
  FormalSum diff(g);
  diff.add(h, Scalar(-1));
  CHECK(coproduct(c, diff) == tensor(FormalSum(g), diff) + tensor(diff, FormalSum(h)));
  auto space = skewPrimitiveSpace(c, h, g, 2);
  // The edge u→v and the direction g − h.
  CHECK(space.size() == 2);
}

TEST_CASE("incidence grouplikes and colors") {
  auto c = buildIncidenceCoalgebra(chainPoset(3));
  CHECK(literals(findGrouplikes(c).grouplikes) == std::set<std::string>{"[0,0]", "[1,1]", "[2,2]", "[3,3]"});
  auto colors = colorDecompose(c, 10);
  CHECK(colors.uncolorable.empty());
  auto block = colors.blocks.at({intervalKey("0", "0"), intervalKey("2", "2")});
  CHECK(literals(block) == std::set<std::string>{"[0,2]"});
}

TEST_CASE("Quillen degree of paths is their length") {
  auto c = buildPathCoalgebra(completeQuiver(2), 6);
  QuillenFiltration f(c, 10);
  for (const auto& k : c.keys()) CHECK(f.degree(k) == c.grading(k));
  CHECK(bivariateQuillenDegree(c, pathKey({"e01", "e11", "e10"}), 2) == std::nullopt);
  auto table = computeFiltration(c, 10, 6);
  CHECK(checkQTLaw(c, table).passed());
  CHECK(table.histogram().at(6) == 128);
}

TEST_CASE("a key outside the filtration is NotReached") {
  auto c = buildSetlikeCoalgebra({"g", "x", "y"});
  BasisKey x(KeyTag::Set, "x"), y(KeyTag::Set, "y");
  auto d = c.delta;
  c.delta = [d, x, y](const BasisKey& k) {
    if (k == x) return TensorSum({x, y}) + TensorSum({y, x});
    if (k == y) return TensorSum({y, x}) + TensorSum({x, y});
    return d(k);
  };
  CHECK(bivariateQuillenDegree(c, x, 5) == std::nullopt);
  CHECK_FALSE(verifyPathlike(c, 5, 0).isPathlike);
}

TEST_CASE("pathlike verdicts on the gallery") {
  CHECK(verifyPathlike(buildPathCoalgebra(sample(), 6), 6, 6).isPathlike);
  CHECK(verifyPathlike(buildIncidenceCoalgebra(booleanLattice(3)), 6, 6).isPathlike);
  CHECK(verifyPathlike(buildCategoricalCoalgebra(freeMonoidOneGenerator(5), 5), 5, 5).isPathlike);
  CHECK(verifyPathlike(buildGoncharovCoalgebra({"0", "1"}, 4), 4, 4).isPathlike);
  CHECK(verifyPathlike(buildSetlikeCoalgebra({"x", "y"}), 0, 0).isPathlike);

  auto c = buildSetlikeCoalgebra({"x", "y"});
  auto counit = c.counit;
  c.counit = [counit](const BasisKey& k) { return k.payload == "y" ? Scalar(0) : counit(k); };
  auto verdict = verifyPathlike(c, 0, 0);
  CHECK_FALSE(verdict.isPathlike);
  REQUIRE(verdict.witnesses.size() == 1);
  CHECK(verdict.witnesses[0].find("semigrouplike y") == 0);
}

TEST_CASE("Quillen degree never exceeds the grading") {
  std::vector<CoalgebraSpec> all{buildPathCoalgebra(sample(), 5), buildIncidenceCoalgebra(booleanLattice(3)),
                                 buildGoncharovCoalgebra({"0", "1", "2"}, 3)};
  for (const auto& c : all) {
    QuillenFiltration f(c, 20);
    for (const auto& k : c.keys()) {
      auto d = f.degree(k);
      REQUIRE(d);
      CHECK(*d <= c.grading(k));
    }
    CHECK(checkQTLaw(c, computeFiltration(c, 20, 5)).passed());
    CHECK(checkReducedCoassociativity(c, 5, 20).passed());
  }
}

TEST_CASE("structure report") {
  auto c = buildPathCoalgebra(sample(), 3);
  auto r = analyzeStructure(c, 3);
  CHECK(r.sets.grouplikes.size() == 3);
  CHECK(literals(r.skewPrimitives.at({vertexPathKey("v"), vertexPathKey("u")})) == std::set<std::string>{"a"});
  CHECK(literals(r.colors.blocks.at({vertexPathKey("u"), vertexPathKey("w")})) == std::set<std::string>{"a.b", "a.l.b"});
}
