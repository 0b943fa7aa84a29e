#pragma once

#include <string>
#include <vector>

#include <json.hpp>

#include "hopf/coalgebra.hpp"

namespace hopf {

struct Quiver {
  struct Edge {
    std::string name;
    std::string src;
    std::string tgt;
  };
  std::vector<std::string> vertices;
  std::vector<Edge> edges;

  /// Throws ConfigurationError on unknown endpoints or duplicate names.
  void validate() const;
  static Quiver fromJson(const nlohmann::json& doc);
};

/// Two vertices 0, 1 with one edge per ordered pair, loops included.
Quiver completeQuiver(int vertexCount);

/// Keys: `(v)` for the vertex v, `e1.e2...` for paths.
CoalgebraSpec buildPathCoalgebra(const Quiver& q, int maxLength);
BasisKey vertexPathKey(const std::string& vertex);
BasisKey pathKey(const std::vector<std::string>& edges);

struct Poset {
  std::vector<std::string> elements;
  std::vector<std::pair<std::string, std::string>> covers;

  /// less[i][j] is i ≤ j. Throws ConfigurationError on cycles or unknown names.
  std::vector<std::vector<bool>> closure() const;
  static Poset fromJson(const nlohmann::json& doc);
};

Poset chainPoset(int length);
/// Subsets of an n-element set ordered by inclusion; elements are named by
/// the sorted atom indices, `{}` for the bottom.
Poset booleanLattice(int atoms);

/// Keys `[x,y]`; grading is the length of the longest chain.
CoalgebraSpec buildIncidenceCoalgebra(const Poset& p);
BasisKey intervalKey(const std::string& x, const std::string& y);

/// Morphisms of a small category with a proper degree function, given by an
/// explicit composition table. Products follow the monoidal convention:
/// `a·b` applies a first, so a·b is defined when tgt(a) = src(b).
struct ColoredMonoid {
  struct Element {
    std::string name;
    std::string src;
    std::string tgt;
    int degree = 0;
  };
  std::vector<std::string> colors;
  std::vector<Element> elements;
  std::map<std::string, std::string> identity;  // color → identity element
  std::map<std::pair<std::string, std::string>, std::string> product;

  /// Associativity, degree additivity, properness, and the absence of
  /// non-identity invertibles. Throws ConfigurationError naming the culprit.
  void validate() const;
  static ColoredMonoid fromJson(const nlohmann::json& doc);
};

/// The poset as a category: one morphism `[x,y]` per relation x ≤ y.
ColoredMonoid posetCategory(const Poset& p);
/// Free monoid on one generator, elements `1`, `a`, `a^2`, ... up to maxPower.
ColoredMonoid freeMonoidOneGenerator(int maxPower);

CoalgebraSpec buildCategoricalCoalgebra(const ColoredMonoid& m, int maxDegree);

/// I(a0; a1..an; a(n+1)).
struct GoncharovWord {
  std::string left;
  std::vector<std::string> letters;
  std::string right;

  static GoncharovWord fromJson(const nlohmann::json& doc);
};

/// A single word as a key (a product with one factor).
BasisKey wordKey(const GoncharovWord& w);
/// Commutative product of words; factors sorted.
BasisKey wordProductKey(std::vector<GoncharovWord> factors);
std::vector<GoncharovWord> wordFactors(const BasisKey& key);
std::string wordLiteral(const GoncharovWord& w);

TensorSum goncharovCoproduct(const GoncharovWord& w);
/// Words with at most maxLetters letters over the alphabet (all endpoints
/// and letters drawn from it). Δ extends multiplicatively to products.
CoalgebraSpec buildGoncharovCoalgebra(const std::vector<std::string>& alphabet, int maxLetters);

/// Δ(x) = x⊗x on every element.
CoalgebraSpec buildSetlikeCoalgebra(const std::vector<std::string>& elements);

struct FiniteGroup {
  std::vector<std::string> names;
  std::vector<std::vector<int>> mul;
  int identity = 0;
  std::vector<int> inv;

  int index(const std::string& name) const;
  /// Checks closure, associativity, identity and inverses. Throws
  /// ConfigurationError when the table is not a group.
  static FiniteGroup fromTable(std::vector<std::string> names, std::vector<std::vector<int>> mul);
  static FiniteGroup fromJson(const nlohmann::json& doc);
  static FiniteGroup cyclic(int n);
  static FiniteGroup symmetric3();
};

BasisKey doubleKey(const FiniteGroup& g, int a, int x);
BasisKey doubleDualKey(const FiniteGroup& g, int a, int x);

/// D(k[G]) with its closed-form antipode ⟨x⁻¹g⁻¹x, x⁻¹⟩.
BialgebraSpec buildDrinfeldDouble(const FiniteGroup& g);
/// The dual Hopf algebra on δ⟨g,x⟩, antipode δ⟨x⁻¹g⁻¹x, x⁻¹⟩.
BialgebraSpec buildDrinfeldDoubleDual(const FiniteGroup& g);

/// Δ^cop = flip∘Δ.
CoalgebraSpec coopposite(const CoalgebraSpec& c);

}  // namespace hopf
