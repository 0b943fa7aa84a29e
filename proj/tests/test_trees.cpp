#include <doctest.h>

#include <functional>
#include <random>

#include "hopf/errors.hpp"
#include "hopf/structure.hpp"
#include "hopf/trees.hpp"

using namespace hopf;

namespace {

Tree randomTree(std::mt19937_64& rng, int budget) {
  std::uniform_int_distribution<int> arity(1, 3);
  std::vector<Tree> children;
  int n = arity(rng);
  for (int i = 0; i < n; ++i) {
    if (budget > 0 && rng() % 3 == 0)
      children.push_back(randomTree(rng, budget - 1));
    else
      children.push_back(Tree::leaf());
  }
  return Tree::vertex(std::move(children));
}

Forest randomForest(std::mt19937_64& rng) {
  Forest f;
  int n = static_cast<int>(rng() % 4);
  for (int i = 0; i < n; ++i) f.push_back(rng() % 4 == 0 ? Tree::leaf() : randomTree(rng, 3));
  return f;
}

void shuffleSiblings(Tree& t, std::mt19937_64& rng) {
  if (t.isLeaf) return;
  for (auto& c : t.children) shuffleSiblings(c, rng);
  std::shuffle(t.children.begin(), t.children.end(), rng);
}

/// Coproduct from an explicit vertex table: every parent-closed vertex subset
/// containing the root, read off by walking the stump leaves left to right.
TensorSum oracleCoproduct(const Tree& t, TreeMode mode) {
  struct Vertex {
    int parent;
    std::vector<int> slots;  // child vertex ids, -1 for a leaf slot
  };
  std::vector<Vertex> vs;
  std::vector<const Tree*> node;
  std::function<int(const Tree&, int)> add = [&](const Tree& x, int parent) {
    int id = static_cast<int>(vs.size());
    vs.push_back({parent, {}});
    node.push_back(&x);
    for (const auto& c : x.children) {
      int slot = c.isLeaf ? -1 : add(c, id);
      vs[id].slots.push_back(slot);
    }
    return id;
  };
  TensorSum out;
  if (t.isLeaf) {
    out.add({treeCanonicalForm({Tree::leaf()}, mode), treeCanonicalForm({Tree::leaf()}, mode)}, Scalar(1));
    return out;
  }
  add(t, -1);
  const int n = static_cast<int>(vs.size());
  out.add({treeCanonicalForm({Tree::leaf()}, mode), treeCanonicalForm({t}, mode)}, Scalar(1));
  for (unsigned mask = 1; mask < (1u << n); ++mask) {
    if (!(mask & 1u)) continue;
    bool closed = true;
    for (int v = 1; v < n; ++v)
      if ((mask >> v & 1u) && !(mask >> vs[v].parent & 1u)) closed = false;
    if (!closed) continue;
    Forest branches;
    std::function<Tree(int)> stump = [&](int v) {
      std::vector<Tree> children;
      for (int s : vs[v].slots) {
        if (s >= 0 && (mask >> s & 1u)) {
          children.push_back(stump(s));
        } else {
          children.push_back(Tree::leaf());
          branches.push_back(s < 0 ? Tree::leaf() : *node[s]);
        }
      }
      return Tree::vertex(std::move(children));
    };
    Tree left = stump(0);
    out.add({treeCanonicalForm({left}, mode), treeCanonicalForm(branches, mode)}, Scalar(1));
  }
  return out;
}

BasisKey key(const std::string& s) { return BasisKey(KeyTag::Forest, s); }

}  // namespace

TEST_CASE("forest literals round trip") {
  std::mt19937_64 rng(11);
  for (int i = 0; i < 1000; ++i) {
    Forest f = randomForest(rng);
    std::string text = renderForest(f);
    CHECK(renderForest(parseForest(text)) == text);
    for (auto mode : {TreeMode::Planar, TreeMode::Symmetric}) {
      BasisKey k = treeCanonicalForm(f, mode);
      CHECK(treeCanonicalForm(forestOf(k), mode) == k);
    }
  }
  CHECK(renderForest(parseForest(" v( . v(.) ) , | ")) == "v(.v(.)),|");
  CHECK_THROWS_AS(parseForest("v()"), ParseError);
  CHECK_THROWS_AS(parseForest("v(.,"), ParseError);
  CHECK_THROWS_AS(parseForest("x"), ParseError);
  try {
    parseForest("v(.)\n,w");
    FAIL("no parse error");
  } catch (const ParseError& e) {
    CHECK(e.line() == 2);
    CHECK(e.column() == 2);
  }
}

TEST_CASE("canonical forms") {
  std::mt19937_64 rng(5);
  for (int i = 0; i < 200; ++i) {
    Tree t = randomTree(rng, 3);
    Tree s = t;
    shuffleSiblings(s, rng);
    CHECK(treeCanonicalForm({t}, TreeMode::Symmetric) == treeCanonicalForm({s}, TreeMode::Symmetric));
  }
  CHECK(treeCanonicalForm(parseForest("v(v(.).)"), TreeMode::Symmetric) ==
        treeCanonicalForm(parseForest("v(.v(.))"), TreeMode::Symmetric));
  CHECK(treeCanonicalForm(parseForest("v(v(.).)"), TreeMode::Planar) !=
        treeCanonicalForm(parseForest("v(.v(.))"), TreeMode::Planar));
  CHECK(treeCanonicalForm(parseForest("v(.),|"), TreeMode::Symmetric) ==
        treeCanonicalForm(parseForest("|,v(.)"), TreeMode::Symmetric));
}

TEST_CASE("coproducts of the standard trees") {
  for (int n = 1; n <= 4; ++n) {
    Forest corolla{corollaTree(n)};
    TensorSum expected;
    expected.add({key("|"), key(renderForest(corolla))}, Scalar(1));
    expected.add({key(renderForest(corolla)), key(renderForest(Forest(n, Tree::leaf())))}, Scalar(1));
    CHECK(treeCoproduct(corolla, TreeMode::Symmetric) == expected);
  }
  CHECK(render(treeCoproduct({ladderTree(2)}, TreeMode::Symmetric)) ==
        "1*v(.) (x) v(.) + 1*v(v(.)) (x) | + 1*| (x) v(v(.))");
  CHECK(render(treeCoproduct(parseForest("v(v(.)v(.))"), TreeMode::Symmetric)) ==
        "1*v(..) (x) v(.),v(.) + 2*v(.v(.)) (x) v(.),| + 1*v(v(.)v(.)) (x) |,| + 1*| (x) v(v(.)v(.))");
  // The middle term of τ₁·τ₁ comes from two labeled choices.
  TensorSum square = treeCoproduct(parseForest("v(.),v(.)"), TreeMode::Symmetric);
  CHECK(square.coefficient({key("v(.),|"), key("v(.),|")}) == Scalar(2));
  CHECK(treeCoproduct(parseForest("1"), TreeMode::Planar) == tensor(FormalSum(key("1")), FormalSum(key("1"))));
  CHECK(treeCoproduct(parseForest("|"), TreeMode::Planar) == tensor(FormalSum(key("|")), FormalSum(key("|"))));
}

TEST_CASE("coproduct agrees with the subset oracle") {
  for (auto mode : {TreeMode::Planar, TreeMode::Symmetric}) {
    for (const auto& k : enumerateForests(5, 5, mode)) {
      Forest f = forestOf(k);
      if (f.size() != 1) continue;
      CHECK_MESSAGE(treeCoproduct(f, mode) == oracleCoproduct(f[0], mode), render(k));
    }
  }
}

TEST_CASE("coproduct is homogeneous and leaf-balanced") {
  for (auto mode : {TreeMode::Planar, TreeMode::Symmetric}) {
    for (const auto& k : enumerateForests(5, 5, mode)) {
      Forest f = forestOf(k);
      for (const auto& [pair, coef] : treeCoproduct(f, mode)) {
        Forest l = forestOf(pair.first), r = forestOf(pair.second);
        CHECK(vertexCount(l) + vertexCount(r) == vertexCount(f));
        CHECK(leafCount(l) == static_cast<int>(r.size()));
        CHECK(leafCount(r) == leafCount(f));
        CHECK(l.size() == f.size());
        CHECK(coef.rational() > 0);
      }
    }
  }
}

TEST_CASE("representative independence") {
  std::mt19937_64 rng(3);
  for (const auto& k : enumerateForests(5, 5, TreeMode::Symmetric)) {
    Forest f = forestOf(k);
    TensorSum expected = treeCoproduct(f, TreeMode::Symmetric);
    for (int i = 0; i < 3; ++i) {
      Forest g = f;
      for (auto& t : g) shuffleSiblings(t, rng);
      std::shuffle(g.begin(), g.end(), rng);
      CHECK(treeCoproduct(g, TreeMode::Symmetric) == expected);
    }
  }
}

TEST_CASE("tree bialgebras") {
  for (auto mode : {TreeMode::Planar, TreeMode::Symmetric}) {
    auto b = buildTreeBialgebra(5, mode, 5);
    CHECK(validateCoalgebra(b.coalgebra, 5).passed());
    auto small = buildTreeBialgebra(4, mode, 4);
    CHECK(validateBialgebra(small, 4, 1u << 30).passed());

    // Closure of the universe under Δ.
    std::set<BasisKey> universe(b.coalgebra.keys().begin(), b.coalgebra.keys().end());
    for (const auto& k : b.coalgebra.keys())
      for (const auto& [pair, coef] : b.coalgebra.delta(k)) {
        CHECK(universe.count(pair.first));
        CHECK(universe.count(pair.second));
      }

    auto sets = findGrouplikes(small.coalgebra);
    for (const auto& g : sets.grouplikes) CHECK(vertexCount(forestOf(g)) == 0);
    CHECK(sets.grouplikes.size() == sets.semigrouplikes.size());
    CHECK(verifyPathlike(small.coalgebra, 64, 4).isPathlike);
  }
  CHECK(buildTreeBialgebra(5, TreeMode::Symmetric, 5).coalgebra.keys().size() == 1411);
  CHECK(buildTreeBialgebra(5, TreeMode::Planar, 5).coalgebra.keys().size() == 10010);
}

TEST_CASE("Quillen degree of trees is the vertex count") {
  auto b = buildTreeBialgebra(4, TreeMode::Symmetric, 4);
  QuillenFiltration f(b.coalgebra, 64);
  for (const auto& k : b.coalgebra.keys()) CHECK(f.degree(k) == vertexCount(forestOf(k)));
}
