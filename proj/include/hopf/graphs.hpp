#pragma once

#include <cstdint>
#include <random>
#include <string>
#include <string_view>
#include <vector>

#include <json.hpp>

#include "hopf/coalgebra.hpp"

namespace hopf {

struct Corolla {
  std::string name;
  std::vector<std::string> flags;
};

/// A morphism of corolla aggregates given by its ghost graph: the source
/// corollas, the fused flag pairs, and groups of corollas merged without an
/// edge. Flags are referenced as `corolla.flag`. The target corollas are the
/// classes of the partition generated by edges and merge groups.
struct GraphMorphism {
  std::vector<Corolla> corollas;
  std::vector<std::pair<std::string, std::string>> edges;
  std::vector<std::vector<std::string>> merge;

  /// Throws ConfigurationError on duplicate names, unknown flags, a flag used
  /// twice, or an edge from a flag to itself.
  void validate() const;
  /// Target corolla of each source corolla, numbered by first occurrence.
  std::vector<int> targetBlocks() const;
  /// Flags not fused by an edge.
  std::vector<std::string> freeFlags() const;

  /// Document: {"corollas":[{"name","flags"}],"edges":[[f,g]],"merge":[[u,v]]}.
  static GraphMorphism fromJson(const nlohmann::json& doc);
  nlohmann::json toJson() const;
};

/// Same morphism with corollas reordered and renamed and the flags of each
/// corolla permuted and renamed.
GraphMorphism randomRelabel(const GraphMorphism& m, std::mt19937_64& rng);

/// Aggregate of identity corollas with the given arities.
GraphMorphism identityAggregate(const std::vector<int>& arities);

/// Class key of a morphism. Literal: one `[a₁,…,aₙ;i-j,…]` per target corolla
/// (source arities, then ghost edges between source positions), blocks
/// sorted; `1` for the empty aggregate. Connected mode rejects merges that
/// are not implied by edges (PreconditionError).
BasisKey graphClassKey(const GraphMorphism& m, bool connected);
/// A labeled representative with corollas c0, c1, … and flags f0, f1, ….
GraphMorphism graphRepresentative(const BasisKey& key);
/// Round trip through the literal grammar; ParseError on malformed text.
BasisKey parseGraphClass(std::string_view literal);

/// How summands with the same class pair are counted.
enum class GraphCounting {
  Multiplicity,  // one per edge subset and intermediate partition
  Channel,       // one per distinct class pair
};

/// Σ over E₀ ⊆ E and intermediate partitions P₀ between the components of
/// E₀ and the target partition: [source, E₀, P₀] ⊗ [P₀ corollas, E∖E₀, P].
/// Connected mode takes P₀ = components of E₀.
TensorSum graphCoproduct(const GraphMorphism& m, bool connected,
                         GraphCounting counting = GraphCounting::Multiplicity);
TensorSum graphCoproduct(const BasisKey& key, bool connected,
                         GraphCounting counting = GraphCounting::Multiplicity);

struct DegreeTriple {
  int size = 0;  // |φ|: source corollas minus target corollas
  int deg = 0;   // ghost edge count
  int wt = 0;    // size + deg
  int components = 0;  // b₀ of the ghost graph
  int loops = 0;       // b₁ of the ghost graph
  int vertices = 0;

  /// χ = b₀ − b₁ against wt − |φ|, as stated for basic morphisms.
  bool eulerAgainstWeight() const { return components - loops == wt - size; }
  /// χ = b₀ − b₁ against V − E.
  bool eulerAgainstCounts() const { return components - loops == vertices - deg; }
};

DegreeTriple degreeOf(const GraphMorphism& m);
DegreeTriple degreeOf(const BasisKey& key);

/// Generators applied to the target of a morphism.
GraphMorphism contractEdge(GraphMorphism m, const std::string& s, const std::string& t);
GraphMorphism contractLoop(GraphMorphism m, const std::string& s, const std::string& t);
GraphMorphism mergeCorollas(GraphMorphism m, const std::string& u, const std::string& v);

/// The generator relations (commuting loops, loop/edge, disjoint edges, the
/// cycle swap, equivariance; mergers and the merger factorization in the
/// non-connected case) on `budget` random aggregates.
ValidationReport checkGraphRelations(int budget, bool connected, std::uint64_t seed = 1);

/// Class keys with at most maxCorollas source corollas, maxEdges ghost edges
/// and maxTotalFlags source flags, sorted.
KeyList enumerateGraphClasses(int maxCorollas, int maxEdges, int maxTotalFlags, bool connected);

/// Aggregate bialgebra: product disjoint union, unit the empty aggregate,
/// counit 1 on identities. Grading wt (non-connected) or deg (connected).
/// maxTotalFlags < 0 means 2·maxEdges. Identity corollas [k;] are the
/// grouplike generators, of weight k.
BialgebraSpec buildGraphBialgebra(int maxCorollas, int maxEdges, bool connected, int maxTotalFlags = -1,
                                  GraphCounting counting = GraphCounting::Multiplicity);

}  // namespace hopf
