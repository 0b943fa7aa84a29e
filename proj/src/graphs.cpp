#include "hopf/graphs.hpp"

#include <algorithm>
#include <functional>
#include <map>
#include <mutex>
#include <numeric>
#include <set>
#include <tuple>

#include "hopf/errors.hpp"
#include "hopf/linsolve.hpp"

namespace hopf {

using nlohmann::json;

namespace {

using EdgeList = std::vector<std::pair<int, int>>;

/// Morphism up to flag names: corolla arities, edges between corolla
/// positions (i == j for loops), and the target block of each corolla.
struct Shape {
  std::vector<int> arity;
  EdgeList edges;
  std::vector<int> block;
};

struct UnionFind {
  std::vector<int> parent;
  explicit UnionFind(int n) : parent(static_cast<std::size_t>(n)) { std::iota(parent.begin(), parent.end(), 0); }
  int find(int x) { return parent[x] == x ? x : parent[x] = find(parent[x]); }
  void unite(int a, int b) { parent[find(a)] = find(b); }
};

std::vector<int> firstOccurrence(const std::vector<int>& labels) {
  std::map<int, int> renumber;
  std::vector<int> out;
  for (int l : labels) out.push_back(renumber.try_emplace(l, static_cast<int>(renumber.size())).first->second);
  return out;
}

std::vector<int> components(int n, const EdgeList& edges) {
  UnionFind uf(n);
  for (auto [a, b] : edges) uf.unite(a, b);
  std::vector<int> label;
  for (int i = 0; i < n; ++i) label.push_back(uf.find(i));
  return firstOccurrence(label);
}

/// Smallest edge list over the arity-preserving orderings of the corollas.
std::string blockLiteral(const std::vector<int>& arity, const EdgeList& edges) {
  const int n = static_cast<int>(arity.size());
  std::vector<int> sorted = arity;
  std::sort(sorted.begin(), sorted.end());
  std::vector<int> pos(static_cast<std::size_t>(n), -1);
  std::vector<bool> used(static_cast<std::size_t>(n), false);
  EdgeList best;
  bool have = false;
  std::function<void(int)> place = [&](int p) {
    if (p == n) {
      EdgeList mapped;
      for (auto [a, b] : edges) mapped.emplace_back(std::min(pos[a], pos[b]), std::max(pos[a], pos[b]));
      std::sort(mapped.begin(), mapped.end());
      if (!have || mapped < best) {
        best = std::move(mapped);
        have = true;
      }
      return;
    }
    for (int c = 0; c < n; ++c) {
      if (used[c] || arity[c] != sorted[p]) continue;
      used[c] = true;
      pos[c] = p;
      place(p + 1);
      used[c] = false;
    }
  };
  place(0);
  std::string s = "[";
  for (int i = 0; i < n; ++i) s += (i ? "," : "") + std::to_string(sorted[i]);
  s += ';';
  for (std::size_t i = 0; i < best.size(); ++i)
    s += (i ? "," : "") + std::to_string(best[i].first) + "-" + std::to_string(best[i].second);
  return s + "]";
}

std::string shapeLiteral(const Shape& s) {
  std::map<int, std::vector<int>> members;
  for (int i = 0; i < static_cast<int>(s.arity.size()); ++i) members[s.block[i]].push_back(i);
  std::vector<std::string> parts;
  for (const auto& [b, ms] : members) {
    std::map<int, int> local;
    std::vector<int> arity;
    for (int m : ms) {
      local[m] = static_cast<int>(arity.size());
      arity.push_back(s.arity[m]);
    }
    EdgeList edges;
    for (auto [a, c] : s.edges)
      if (local.count(a)) edges.emplace_back(local.at(a), local.at(c));
    parts.push_back(blockLiteral(arity, edges));
  }
  if (parts.empty()) return "1";
  std::sort(parts.begin(), parts.end());
  std::string out;
  for (const auto& p : parts) out += p;
  return out;
}

BasisKey shapeKey(const Shape& s) { return BasisKey(KeyTag::Graph, shapeLiteral(s)); }

void checkShape(const Shape& s) {
  std::vector<int> use(s.arity.size(), 0);
  for (auto [a, b] : s.edges) {
    ++use[a];
    ++use[b];
    if (s.block[a] != s.block[b]) throw ConfigurationError("ghost edge between different target corollas");
  }
  for (std::size_t i = 0; i < use.size(); ++i)
    if (use[i] > s.arity[i]) throw ConfigurationError("corolla with more fused flags than flags");
}

class LiteralParser {
 public:
  explicit LiteralParser(std::string_view text) : text_(text) {}

  Shape parse() {
    Shape s;
    if (text_ == "1") return s;
    if (text_.empty()) fail("empty graph literal");
    int blockIndex = 0;
    while (pos_ < text_.size()) {
      expect('[');
      int offset = static_cast<int>(s.arity.size());
      int n = 0;
      do {
        s.arity.push_back(number());
        s.block.push_back(blockIndex);
        ++n;
      } while (accept(','));
      expect(';');
      if (peek() != ']') {
        do {
          int a = number();
          expect('-');
          int b = number();
          if (a >= n || b >= n) fail("edge endpoint out of range");
          s.edges.emplace_back(offset + a, offset + b);
        } while (accept(','));
      }
      expect(']');
      ++blockIndex;
    }
    try {
      checkShape(s);
    } catch (const ConfigurationError& e) {
      fail(e.what());
    }
    return s;
  }

 private:
  char peek() const { return pos_ < text_.size() ? text_[pos_] : '\0'; }
  bool accept(char c) {
    if (peek() != c) return false;
    ++pos_;
    return true;
  }
  void expect(char c) {
    if (!accept(c)) fail(std::string("expected '") + c + "'");
  }
  int number() {
    std::size_t start = pos_;
    while (pos_ < text_.size() && text_[pos_] >= '0' && text_[pos_] <= '9') ++pos_;
    if (start == pos_) fail("expected a number");
    if (pos_ - start > 6) fail("number too large");
    return std::stoi(std::string(text_.substr(start, pos_ - start)));
  }
  [[noreturn]] void fail(const std::string& message) const { throw ParseError(message, 1, pos_ + 1); }

  std::string_view text_;
  std::size_t pos_ = 0;
};

Shape shapeOf(const BasisKey& key) {
  if (key.tag != KeyTag::Graph) throw PreconditionError("not a graph class key: " + render(key));
  return LiteralParser(key.payload).parse();
}

std::pair<std::string, std::string> splitFlag(const std::string& ref) {
  auto dot = ref.find('.');
  if (dot == std::string::npos) throw ConfigurationError("flag reference '" + ref + "' is not corolla.flag");
  return {ref.substr(0, dot), ref.substr(dot + 1)};
}

std::map<std::string, int> corollaIndex(const GraphMorphism& m) {
  std::map<std::string, int> index;
  for (int i = 0; i < static_cast<int>(m.corollas.size()); ++i) index[m.corollas[i].name] = i;
  return index;
}

Shape shapeOf(const GraphMorphism& m, bool connected) {
  m.validate();
  auto index = corollaIndex(m);
  Shape s;
  for (const auto& c : m.corollas) s.arity.push_back(static_cast<int>(c.flags.size()));
  for (const auto& [f, g] : m.edges) s.edges.emplace_back(index.at(splitFlag(f).first), index.at(splitFlag(g).first));
  s.block = m.targetBlocks();
  if (connected && s.block != components(static_cast<int>(s.arity.size()), s.edges))
    throw PreconditionError("connected mode forbids mergers");
  return s;
}

/// Rank of the signed incidence matrix subtracted from the edge count.
int cycleRank(int vertices, const EdgeList& edges) {
  LinearSystem sys;
  sys.unknowns = static_cast<int>(edges.size());
  for (int v = 0; v < vertices; ++v) {
    SparseRow row;
    for (int e = 0; e < static_cast<int>(edges.size()); ++e) {
      auto [a, b] = edges[e];
      if (a == b) continue;
      if (a == v) row[e] += Scalar(1);
      if (b == v) row[e] += Scalar(-1);
    }
    sys.addEquation(std::move(row), Scalar(0));
  }
  return static_cast<int>(kernelBasis(sys).size());
}

DegreeTriple degreeOfShape(const Shape& s) {
  DegreeTriple d;
  const int n = static_cast<int>(s.arity.size());
  std::set<int> targets(s.block.begin(), s.block.end());
  d.vertices = n;
  d.size = n - static_cast<int>(targets.size());
  d.deg = static_cast<int>(s.edges.size());
  d.wt = d.size + d.deg;
  auto comp = components(n, s.edges);
  d.components = n == 0 ? 0 : *std::max_element(comp.begin(), comp.end()) + 1;
  d.loops = cycleRank(n, s.edges);
  return d;
}

TensorSum coproductOfShape(const Shape& s, bool connected, GraphCounting counting) {
  const int n = static_cast<int>(s.arity.size());
  const int e = static_cast<int>(s.edges.size());
  TensorSum out;
  std::set<KeyPair> seen;
  auto emit = [&](const Shape& left, const Shape& right) {
    KeyPair pair{shapeKey(left), shapeKey(right)};
    if (counting == GraphCounting::Channel) {
      if (!seen.insert(pair).second) return;
    }
    out.add(pair, Scalar(1));
  };
  for (unsigned mask = 0; mask < (1u << e); ++mask) {
    EdgeList inner, outer;
    for (int i = 0; i < e; ++i) (mask >> i & 1u ? inner : outer).push_back(s.edges[i]);
    std::vector<int> comp = components(n, inner);
    const int compCount = n == 0 ? 0 : *std::max_element(comp.begin(), comp.end()) + 1;
    std::vector<int> compBlock(static_cast<std::size_t>(compCount));
    for (int i = 0; i < n; ++i) compBlock[comp[i]] = s.block[i];

    // Group of each component in the intermediate partition.
    std::vector<int> group(static_cast<std::size_t>(compCount), -1);
    std::vector<int> groupBlock;
    auto finish = [&]() {
      Shape left{s.arity, inner, {}};
      for (int i = 0; i < n; ++i) left.block.push_back(group[comp[i]]);
      const int m = static_cast<int>(groupBlock.size());
      Shape right{std::vector<int>(static_cast<std::size_t>(m), 0), {}, groupBlock};
      for (int i = 0; i < n; ++i) right.arity[left.block[i]] += s.arity[i];
      for (auto [a, b] : inner) right.arity[left.block[a]] -= 2;
      for (auto [a, b] : outer) right.edges.emplace_back(left.block[a], left.block[b]);
      emit(left, right);
    };
    std::function<void(int)> assign = [&](int ci) {
      if (ci == compCount) {
        finish();
        return;
      }
      if (!connected) {
        for (int g = 0; g < static_cast<int>(groupBlock.size()); ++g) {
          if (groupBlock[g] != compBlock[ci]) continue;
          group[ci] = g;
          assign(ci + 1);
        }
      }
      group[ci] = static_cast<int>(groupBlock.size());
      groupBlock.push_back(compBlock[ci]);
      assign(ci + 1);
      groupBlock.pop_back();
    };
    assign(0);
  }
  return out;
}

struct BlockType {
  std::string literal;
  int corollas;
  int flags;
  int edges;
};

std::vector<BlockType> enumerateBlocks(int maxCorollas, int maxEdges, int maxFlags, bool connected) {
  std::map<std::string, BlockType> found;
  for (int n = 1; n <= maxCorollas; ++n) {
    std::vector<int> arity;
    std::function<void(int, int)> arities = [&](int minArity, int budget) {
      if (static_cast<int>(arity.size()) == n) {
        std::vector<int> free = arity;
        EdgeList edges;
        int flagSum = std::accumulate(arity.begin(), arity.end(), 0);
        std::function<void(int, int)> grow = [&](int a0, int b0) {
          auto comp = components(n, edges);
          if (!connected || *std::max_element(comp.begin(), comp.end()) == 0) {
            std::string lit = blockLiteral(arity, edges);
            found.try_emplace(lit, BlockType{lit, n, flagSum, static_cast<int>(edges.size())});
          }
          if (static_cast<int>(edges.size()) == maxEdges) return;
          for (int a = a0; a < n; ++a)
            for (int b = a == a0 ? b0 : a; b < n; ++b) {
              if (a == b ? free[a] < 2 : free[a] < 1 || free[b] < 1) continue;
              --free[a];
              --free[b];
              edges.emplace_back(a, b);
              grow(a, b);
              edges.pop_back();
              ++free[a];
              ++free[b];
            }
        };
        grow(0, 0);
        return;
      }
      for (int k = minArity; k <= budget; ++k) {
        arity.push_back(k);
        arities(k, budget - k);
        arity.pop_back();
      }
    };
    arities(0, maxFlags);
  }
  std::vector<BlockType> out;
  for (auto& [lit, t] : found) out.push_back(std::move(t));
  return out;
}

std::vector<std::string> blocksOf(const std::string& literal) {
  std::vector<std::string> out;
  if (literal == "1") return out;
  std::size_t start = 0;
  while (start < literal.size()) {
    std::size_t end = literal.find(']', start);
    out.push_back(literal.substr(start, end - start + 1));
    start = end + 1;
  }
  return out;
}

BasisKey assembleBlocks(std::vector<std::string> blocks) {
  if (blocks.empty()) return BasisKey(KeyTag::Graph, "1");
  std::sort(blocks.begin(), blocks.end());
  std::string s;
  for (const auto& b : blocks) s += b;
  return BasisKey(KeyTag::Graph, std::move(s));
}

/// Corollas, target corollas and edges read off a canonical literal.
std::tuple<int, int, int> literalCounts(const BasisKey& key) {
  if (key.tag != KeyTag::Graph) throw PreconditionError("not a graph class key: " + render(key));
  int corollas = 0, blocks = 0, edges = 0;
  bool arities = false;
  for (char ch : key.payload) {
    if (ch == '[') {
      ++blocks;
      ++corollas;
      arities = true;
    } else if (ch == ';') {
      arities = false;
    } else if (ch == ',' && arities) {
      ++corollas;
    } else if (ch == '-') {
      ++edges;
    }
  }
  return {corollas, blocks, edges};
}

std::string flagRef(const Corolla& c, std::size_t i) { return c.name + "." + c.flags[i]; }

}  // namespace

void GraphMorphism::validate() const {
  std::set<std::string> names;
  std::set<std::string> flagRefs;
  for (const auto& c : corollas) {
    if (c.name.empty() || c.name.find('.') != std::string::npos)
      throw ConfigurationError("corolla name '" + c.name + "' must be nonempty and free of '.'");
    if (!names.insert(c.name).second) throw ConfigurationError("duplicate corolla '" + c.name + "'");
    std::set<std::string> local;
    for (const auto& f : c.flags) {
      if (!local.insert(f).second) throw ConfigurationError("duplicate flag '" + f + "' on corolla '" + c.name + "'");
      flagRefs.insert(c.name + "." + f);
    }
  }
  std::set<std::string> used;
  for (const auto& [f, g] : edges) {
    for (const auto& r : {f, g}) {
      if (!flagRefs.count(r)) throw ConfigurationError("unknown flag '" + r + "'");
      if (!used.insert(r).second) throw ConfigurationError("flag '" + r + "' is fused twice");
    }
  }
  for (const auto& group : merge)
    for (const auto& n : group)
      if (!names.count(n)) throw ConfigurationError("unknown corolla '" + n + "' in merge");
}

std::vector<int> GraphMorphism::targetBlocks() const {
  auto index = corollaIndex(*this);
  UnionFind uf(static_cast<int>(corollas.size()));
  for (const auto& [f, g] : edges) uf.unite(index.at(splitFlag(f).first), index.at(splitFlag(g).first));
  for (const auto& group : merge)
    for (std::size_t i = 1; i < group.size(); ++i) uf.unite(index.at(group[0]), index.at(group[i]));
  std::vector<int> label;
  for (int i = 0; i < static_cast<int>(corollas.size()); ++i) label.push_back(uf.find(i));
  return firstOccurrence(label);
}

std::vector<std::string> GraphMorphism::freeFlags() const {
  std::set<std::string> used;
  for (const auto& [f, g] : edges) {
    used.insert(f);
    used.insert(g);
  }
  std::vector<std::string> out;
  for (const auto& c : corollas)
    for (std::size_t i = 0; i < c.flags.size(); ++i)
      if (!used.count(flagRef(c, i))) out.push_back(flagRef(c, i));
  return out;
}

GraphMorphism GraphMorphism::fromJson(const json& doc) {
  if (!doc.is_object() || !doc.contains("corollas") || !doc["corollas"].is_array())
    throw ConfigurationError("graph document needs a 'corollas' array");
  GraphMorphism m;
  for (const auto& c : doc["corollas"]) {
    if (!c.is_object() || !c.contains("name") || !c["name"].is_string())
      throw ConfigurationError("corolla needs a string 'name'");
    Corolla corolla{c["name"].get<std::string>(), {}};
    if (c.contains("flags")) {
      if (!c["flags"].is_array()) throw ConfigurationError("corolla 'flags' must be an array");
      for (const auto& f : c["flags"]) {
        if (!f.is_string()) throw ConfigurationError("flag names are strings");
        corolla.flags.push_back(f.get<std::string>());
      }
    }
    m.corollas.push_back(std::move(corolla));
  }
  if (doc.contains("edges"))
    for (const auto& e : doc["edges"]) {
      if (!e.is_array() || e.size() != 2 || !e[0].is_string() || !e[1].is_string())
        throw ConfigurationError("edges are pairs of flag references");
      m.edges.emplace_back(e[0].get<std::string>(), e[1].get<std::string>());
    }
  if (doc.contains("merge"))
    for (const auto& g : doc["merge"]) {
      if (!g.is_array()) throw ConfigurationError("merge groups are arrays of corolla names");
      std::vector<std::string> group;
      for (const auto& n : g) {
        if (!n.is_string()) throw ConfigurationError("merge groups are arrays of corolla names");
        group.push_back(n.get<std::string>());
      }
      m.merge.push_back(std::move(group));
    }
  m.validate();
  return m;
}

json GraphMorphism::toJson() const {
  json doc;
  doc["corollas"] = json::array();
  for (const auto& c : corollas) doc["corollas"].push_back({{"name", c.name}, {"flags", c.flags}});
  doc["edges"] = json::array();
  for (const auto& [f, g] : edges) doc["edges"].push_back({f, g});
  doc["merge"] = json::array();
  for (const auto& group : merge) doc["merge"].push_back(group);
  return doc;
}

GraphMorphism randomRelabel(const GraphMorphism& m, std::mt19937_64& rng) {
  std::vector<std::size_t> order(m.corollas.size());
  std::iota(order.begin(), order.end(), 0);
  std::shuffle(order.begin(), order.end(), rng);
  std::map<std::string, std::string> rename;
  GraphMorphism out;
  for (std::size_t k = 0; k < order.size(); ++k) {
    const Corolla& c = m.corollas[order[k]];
    Corolla nc{"r" + std::to_string(k), {}};
    std::vector<std::size_t> perm(c.flags.size());
    std::iota(perm.begin(), perm.end(), 0);
    std::shuffle(perm.begin(), perm.end(), rng);
    nc.flags.resize(c.flags.size());
    for (std::size_t i = 0; i < c.flags.size(); ++i) {
      nc.flags[perm[i]] = "g" + std::to_string(perm[i]);
      rename[flagRef(c, i)] = nc.name + "." + nc.flags[perm[i]];
    }
    rename[c.name] = nc.name;
    out.corollas.push_back(std::move(nc));
  }
  for (const auto& [f, g] : m.edges) out.edges.emplace_back(rename.at(f), rename.at(g));
  for (const auto& group : m.merge) {
    std::vector<std::string> ng;
    for (const auto& n : group) ng.push_back(rename.at(n));
    out.merge.push_back(std::move(ng));
  }
  return out;
}

GraphMorphism identityAggregate(const std::vector<int>& arities) {
  GraphMorphism m;
  for (std::size_t i = 0; i < arities.size(); ++i) {
    Corolla c{"c" + std::to_string(i), {}};
    for (int f = 0; f < arities[i]; ++f) c.flags.push_back("f" + std::to_string(f));
    m.corollas.push_back(std::move(c));
  }
  return m;
}

BasisKey graphClassKey(const GraphMorphism& m, bool connected) { return shapeKey(shapeOf(m, connected)); }

GraphMorphism graphRepresentative(const BasisKey& key) {
  Shape s = shapeOf(key);
  GraphMorphism m = identityAggregate(s.arity);
  std::vector<int> next(s.arity.size(), 0);
  auto take = [&](int c) { return flagRef(m.corollas[c], static_cast<std::size_t>(next[c]++)); };
  for (auto [a, b] : s.edges) {
    std::string f = take(a);
    m.edges.emplace_back(f, take(b));
  }
  auto comp = components(static_cast<int>(s.arity.size()), s.edges);
  std::map<int, std::vector<std::string>> groups;
  std::map<int, std::set<int>> compsInBlock;
  for (std::size_t i = 0; i < s.arity.size(); ++i) {
    groups[s.block[i]].push_back(m.corollas[i].name);
    compsInBlock[s.block[i]].insert(comp[i]);
  }
  for (auto& [b, names] : groups)
    if (compsInBlock[b].size() > 1) m.merge.push_back(std::move(names));
  return m;
}

BasisKey parseGraphClass(std::string_view literal) { return shapeKey(LiteralParser(literal).parse()); }

TensorSum graphCoproduct(const GraphMorphism& m, bool connected, GraphCounting counting) {
  return coproductOfShape(shapeOf(m, connected), connected, counting);
}

TensorSum graphCoproduct(const BasisKey& key, bool connected, GraphCounting counting) {
  Shape s = shapeOf(key);
  if (connected && s.block != components(static_cast<int>(s.arity.size()), s.edges))
    throw PreconditionError("connected mode forbids mergers: " + render(key));
  return coproductOfShape(s, connected, counting);
}

DegreeTriple degreeOf(const GraphMorphism& m) { return degreeOfShape(shapeOf(m, false)); }
DegreeTriple degreeOf(const BasisKey& key) { return degreeOfShape(shapeOf(key)); }

GraphMorphism contractEdge(GraphMorphism m, const std::string& s, const std::string& t) {
  auto index = corollaIndex(m);
  auto blocks = m.targetBlocks();
  if (blocks[index.at(splitFlag(s).first)] == blocks[index.at(splitFlag(t).first)])
    throw PreconditionError("edge contraction needs flags on different target corollas");
  m.edges.emplace_back(s, t);
  m.validate();
  return m;
}

GraphMorphism contractLoop(GraphMorphism m, const std::string& s, const std::string& t) {
  auto index = corollaIndex(m);
  auto blocks = m.targetBlocks();
  if (blocks[index.at(splitFlag(s).first)] != blocks[index.at(splitFlag(t).first)])
    throw PreconditionError("loop contraction needs flags on one target corolla");
  if (s == t) throw PreconditionError("loop contraction needs two distinct flags");
  m.edges.emplace_back(s, t);
  m.validate();
  return m;
}

GraphMorphism mergeCorollas(GraphMorphism m, const std::string& u, const std::string& v) {
  auto index = corollaIndex(m);
  auto blocks = m.targetBlocks();
  if (blocks[index.at(u)] == blocks[index.at(v)]) throw PreconditionError("merger needs two target corollas");
  m.merge.push_back({u, v});
  return m;
}

ValidationReport checkGraphRelations(int budget, bool connected, std::uint64_t seed) {
  ValidationReport r;
  r.subject = std::string("graph generator relations (") + (connected ? "connected" : "non-connected") + ")";
  std::mt19937_64 rng(seed);
  std::uniform_int_distribution<int> arityDist(2, 4);
  auto compare = [&](const std::string& name, const GraphMorphism& a, const GraphMorphism& b) {
    ++r.checked;
    BasisKey ka = graphClassKey(a, connected), kb = graphClassKey(b, connected);
    if (ka != kb) r.fail(name, render(ka) + " vs " + render(kb));
  };
  for (int trial = 0; trial < budget; ++trial) {
    std::vector<int> arities;
    for (int i = 0; i < 4; ++i) arities.push_back(arityDist(rng));
    GraphMorphism x = identityAggregate(arities);
    std::vector<std::size_t> order{0, 1, 2, 3};
    std::shuffle(order.begin(), order.end(), rng);
    const Corolla& c0 = x.corollas[order[0]];
    const Corolla& c1 = x.corollas[order[1]];
    const Corolla& c2 = x.corollas[order[2]];
    const Corolla& c3 = x.corollas[order[3]];
    auto f = [](const Corolla& c, std::size_t i) { return flagRef(c, i); };
    const std::string tag = "trial " + std::to_string(trial) + ": ";

    compare(tag + "loops commute", contractLoop(contractLoop(x, f(c0, 0), f(c0, 1)), f(c1, 0), f(c1, 1)),
            contractLoop(contractLoop(x, f(c1, 0), f(c1, 1)), f(c0, 0), f(c0, 1)));
    compare(tag + "loop and edge commute", contractEdge(contractLoop(x, f(c0, 0), f(c0, 1)), f(c1, 0), f(c2, 0)),
            contractLoop(contractEdge(x, f(c1, 0), f(c2, 0)), f(c0, 0), f(c0, 1)));
    compare(tag + "disjoint edges commute", contractEdge(contractEdge(x, f(c0, 0), f(c1, 0)), f(c2, 0), f(c3, 0)),
            contractEdge(contractEdge(x, f(c2, 0), f(c3, 0)), f(c0, 0), f(c1, 0)));
    compare(tag + "edges sharing a corolla commute",
            contractEdge(contractEdge(x, f(c0, 0), f(c1, 0)), f(c1, 1), f(c2, 0)),
            contractEdge(contractEdge(x, f(c1, 1), f(c2, 0)), f(c0, 0), f(c1, 0)));
    compare(tag + "cycle swap", contractLoop(contractEdge(x, f(c0, 0), f(c1, 0)), f(c0, 1), f(c1, 1)),
            contractLoop(contractEdge(x, f(c0, 1), f(c1, 1)), f(c0, 0), f(c1, 0)));
    GraphMorphism composite = contractLoop(contractEdge(x, f(c0, 0), f(c1, 0)), f(c2, 0), f(c2, 1));
    compare(tag + "equivariance", composite, randomRelabel(composite, rng));
    if (!connected) {
      compare(tag + "mergers commute", mergeCorollas(mergeCorollas(x, c0.name, c1.name), c2.name, c3.name),
              mergeCorollas(mergeCorollas(x, c2.name, c3.name), c0.name, c1.name));
      compare(tag + "edge contraction factors through a merger", contractEdge(x, f(c0, 0), f(c1, 0)),
              contractLoop(mergeCorollas(x, c0.name, c1.name), f(c0, 0), f(c1, 0)));
    }
  }
  return r;
}

KeyList enumerateGraphClasses(int maxCorollas, int maxEdges, int maxTotalFlags, bool connected) {
  static std::mutex guard;
  static std::map<std::tuple<int, int, int, bool>, KeyList> memo;
  std::lock_guard lock(guard);
  auto memoKey = std::make_tuple(maxCorollas, maxEdges, maxTotalFlags, connected);
  if (auto it = memo.find(memoKey); it != memo.end()) return it->second;
  std::vector<BlockType> blocks = enumerateBlocks(maxCorollas, maxEdges, maxTotalFlags, connected);
  KeyList out;
  std::vector<std::string> chosen;
  std::function<void(std::size_t, int, int, int)> extend = [&](std::size_t from, int v, int f, int e) {
    out.push_back(assembleBlocks(chosen));
    for (std::size_t i = from; i < blocks.size(); ++i) {
      const auto& b = blocks[i];
      if (v + b.corollas > maxCorollas || f + b.flags > maxTotalFlags || e + b.edges > maxEdges) continue;
      chosen.push_back(b.literal);
      extend(i, v + b.corollas, f + b.flags, e + b.edges);
      chosen.pop_back();
    }
  };
  extend(0, 0, 0, 0);
  std::sort(out.begin(), out.end());
  out.erase(std::unique(out.begin(), out.end()), out.end());
  return memo.emplace(memoKey, std::move(out)).first->second;
}

BialgebraSpec buildGraphBialgebra(int maxCorollas, int maxEdges, bool connected, int maxTotalFlags,
                                  GraphCounting counting) {
  if (maxCorollas < 0 || maxEdges < 0) throw ConfigurationError("graph budgets must be nonnegative");
  if (maxTotalFlags < 0) maxTotalFlags = 2 * maxEdges;
  std::string id = connected ? "connected graphs" : "graphs";
  if (counting == GraphCounting::Channel) id += " (channel count)";

  CoalgebraSpec c;
  c.id = id;
  c.universe = std::make_shared<const KeyList>(enumerateGraphClasses(maxCorollas, maxEdges, maxTotalFlags, connected));
  c.finite = false;
  c.delta = [connected, counting](const BasisKey& k) { return graphCoproduct(k, connected, counting); };
  c.grading = [connected](const BasisKey& k) {
    auto [corollas, blocks, edges] = literalCounts(k);
    return connected ? edges : corollas - blocks + edges;
  };
  c.counit = [](const BasisKey& k) {
    auto [corollas, blocks, edges] = literalCounts(k);
    return Scalar(corollas == blocks && edges == 0 ? 1 : 0);
  };
  c = memoizeDelta(std::move(c));

  AlgebraSpec a;
  a.id = id;
  a.product = [](const BasisKey& x, const BasisKey& y) {
    auto bx = blocksOf(x.payload);
    auto by = blocksOf(y.payload);
    bx.insert(bx.end(), by.begin(), by.end());
    return FormalSum(assembleBlocks(std::move(bx)));
  };
  a.unit = FormalSum(BasisKey(KeyTag::Graph, "1"));
  a.inverse = [](const FormalSum& x) -> std::optional<FormalSum> {
    if (x.size() != 1 || x.begin()->first.payload != "1") return std::nullopt;
    return FormalSum(x.begin()->first, x.begin()->second.inverse());
  };
  a.commutative = true;

  FreeMonoidStructure m;
  m.atoms = [](const BasisKey& k) {
    KeyList out;
    for (auto& b : blocksOf(k.payload)) out.push_back(BasisKey(KeyTag::Graph, std::move(b)));
    return out;
  };
  m.assemble = [](const KeyList& atoms) {
    std::vector<std::string> blocks;
    for (const auto& a : atoms)
      for (auto& b : blocksOf(a.payload)) blocks.push_back(std::move(b));
    return assembleBlocks(std::move(blocks));
  };
  m.grouplikeGenerator = [](const BasisKey& atom) -> std::optional<int> {
    const std::string& p = atom.payload;
    if (p.size() < 3 || p.front() != '[' || p.substr(p.size() - 2) != ";]") return std::nullopt;
    std::string inner = p.substr(1, p.size() - 3);
    if (inner.empty() || inner.find(',') != std::string::npos) return std::nullopt;
    return std::stoi(inner);
  };
  m.generatorAtom = [](int k) { return BasisKey(KeyTag::Graph, "[" + std::to_string(k) + ";]"); };
  m.weight = [](int k) { return k; };
  m.commutative = true;

  BialgebraSpec b;
  b.id = id;
  b.coalgebra = std::move(c);
  b.algebra = std::move(a);
  b.monoid = std::move(m);
  return b;
}

}  // namespace hopf
