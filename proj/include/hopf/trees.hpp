#pragma once

#include <string>
#include <string_view>
#include <vector>

#include "hopf/coalgebra.hpp"

namespace hopf {

enum class TreeMode { Planar, Symmetric };

/// A rooted tree with leaf slots. As a forest item a leaf is the bare line |;
/// as a child it is a leaf slot `.`. Every vertex has at least one child.
struct Tree {
  bool isLeaf = false;
  std::vector<Tree> children;

  static Tree leaf() { return Tree{true, {}}; }
  static Tree vertex(std::vector<Tree> children) { return Tree{false, std::move(children)}; }
};

using Forest = std::vector<Tree>;

/// Grammar: forest = `1` | item {`,` item}; item = `|` | tree;
/// tree = `v(` child {child} `)`; child = `.` | tree. Spaces are ignored.
Forest parseForest(std::string_view text);
std::string renderForest(const Forest& f);

/// Planar: unchanged. Symmetric: children and items sorted by literal.
Forest canonicalForest(Forest f, TreeMode mode);
BasisKey treeCanonicalForm(const Forest& f, TreeMode mode);
Forest forestOf(const BasisKey& key);

int vertexCount(const Forest& f);
/// Total source arity: leaf slots of all trees plus bare lines.
int leafCount(const Forest& f);
int bareLineCount(const Forest& f);

/// τ_n: one vertex with n leaves.
Tree corollaTree(int leaves);
/// l_n: n vertices in a chain, one leaf at the top.
Tree ladderTree(int vertices);

/// Stump ⊗ branches over all parent-closed vertex subsets of each tree,
/// extended multiplicatively. The given forest is used as the labeled
/// representative; symmetric mode pushes terms to classes.
TensorSum treeCoproduct(const Forest& f, TreeMode mode);

/// Canonical forests with at most maxVertices vertices and maxLeaves leaves
/// (bare lines included), sorted by key.
KeyList enumerateForests(int maxVertices, int maxLeaves, TreeMode mode);

/// Forest bialgebra: product is concatenation (planar) or multiset union
/// (symmetric), unit the empty forest `1`, grading the vertex count.
/// maxLeaves < 0 means maxVertices (at least 1).
BialgebraSpec buildTreeBialgebra(int maxVertices, TreeMode mode, int maxLeaves = -1);

}  // namespace hopf
