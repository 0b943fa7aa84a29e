#include "hopf/trees.hpp"

#include <algorithm>
#include <functional>
#include <iterator>
#include <map>
#include <mutex>
#include <set>

#include "hopf/errors.hpp"

namespace hopf {

namespace {

class ForestParser {
 public:
  explicit ForestParser(std::string_view text) : text_(text) {}

  Forest parse() {
    skip();
    Forest f;
    if (peek() == '1') {
      ++pos_;
      skip();
      expectEnd();
      return f;
    }
    f.push_back(item());
    skip();
    while (peek() == ',') {
      ++pos_;
      skip();
      f.push_back(item());
      skip();
    }
    expectEnd();
    return f;
  }

 private:
  char peek() const { return pos_ < text_.size() ? text_[pos_] : '\0'; }

  void skip() {
    while (pos_ < text_.size() && (text_[pos_] == ' ' || text_[pos_] == '\t' || text_[pos_] == '\n')) ++pos_;
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

  void expectEnd() {
    if (pos_ != text_.size()) fail(std::string("unexpected '") + peek() + "'");
  }

  Tree item() {
    if (peek() == '|') {
      ++pos_;
      return Tree::leaf();
    }
    if (peek() == 'v') return tree();
    fail("expected '|' or a tree");
  }

  Tree tree() {
    if (peek() != 'v') fail("expected 'v'");
    ++pos_;
    skip();
    if (peek() != '(') fail("expected '('");
    ++pos_;
    skip();
    std::vector<Tree> children;
    while (peek() != ')') {
      if (peek() == '.') {
        ++pos_;
        children.push_back(Tree::leaf());
      } else if (peek() == 'v') {
        children.push_back(tree());
      } else if (peek() == '\0') {
        fail("unterminated vertex");
      } else {
        fail(std::string("unexpected '") + peek() + "' among children");
      }
      skip();
    }
    if (children.empty()) fail("a vertex needs at least one child");
    ++pos_;
    return Tree::vertex(std::move(children));
  }

  std::string_view text_;
  std::size_t pos_ = 0;
};

std::string renderTree(const Tree& t, bool asChild) {
  if (t.isLeaf) return asChild ? "." : "|";
  std::string s = "v(";
  for (const auto& c : t.children) s += renderTree(c, true);
  return s + ")";
}

void canonicalize(Tree& t) {
  if (t.isLeaf) return;
  for (auto& c : t.children) canonicalize(c);
  std::sort(t.children.begin(), t.children.end(),
            [](const Tree& a, const Tree& b) { return renderTree(a, true) < renderTree(b, true); });
}

int vertices(const Tree& t) {
  if (t.isLeaf) return 0;
  int n = 1;
  for (const auto& c : t.children) n += vertices(c);
  return n;
}

int leaves(const Tree& t) {
  if (t.isLeaf) return 1;
  int n = 0;
  for (const auto& c : t.children) n += leaves(c);
  return n;
}

/// Stump/branches pairs over parent-closed subsets containing the root.
std::vector<std::pair<Tree, Forest>> cuts(const Tree& t) {
  std::vector<std::pair<Tree, Forest>> acc{{Tree::vertex({}), {}}};
  for (const auto& child : t.children) {
    std::vector<std::pair<Tree, Forest>> options;
    if (child.isLeaf) {
      options.push_back({Tree::leaf(), {Tree::leaf()}});
    } else {
      options.push_back({Tree::leaf(), {child}});
      for (auto& o : cuts(child)) options.push_back(std::move(o));
    }
    std::vector<std::pair<Tree, Forest>> next;
    for (const auto& [stump, branches] : acc)
      for (const auto& [s, b] : options) {
        Tree ns = stump;
        ns.children.push_back(s);
        Forest nb = branches;
        nb.insert(nb.end(), b.begin(), b.end());
        next.push_back({std::move(ns), std::move(nb)});
      }
    acc = std::move(next);
  }
  return acc;
}

/// Planar sequences of items with exactly v vertices and l leaves. A leaf
/// item reads as a bare line in a forest and as a leaf slot under a vertex.
const std::vector<std::vector<Tree>>& sequences(int v, int l);

const std::vector<Tree>& treesOf(int v, int l) {
  static std::map<std::pair<int, int>, std::vector<Tree>> memo;
  auto it = memo.find({v, l});
  if (it != memo.end()) return it->second;
  std::vector<Tree> out;
  if (v >= 1 && l >= 1)
    for (const auto& seq : sequences(v - 1, l))
      if (!seq.empty()) out.push_back(Tree::vertex(seq));
  return memo.emplace(std::make_pair(v, l), std::move(out)).first->second;
}

const std::vector<std::vector<Tree>>& sequences(int v, int l) {
  static std::map<std::pair<int, int>, std::vector<std::vector<Tree>>> memo;
  auto it = memo.find({v, l});
  if (it != memo.end()) return it->second;
  std::vector<std::vector<Tree>> out;
  if (v == 0 && l == 0) out.push_back({});
  if (l >= 1) {
    // First item a leaf.
    for (const auto& rest : sequences(v, l - 1)) {
      std::vector<Tree> s{Tree::leaf()};
      s.insert(s.end(), rest.begin(), rest.end());
      out.push_back(std::move(s));
    }
    // First item a tree.
    for (int v1 = 1; v1 <= v; ++v1)
      for (int l1 = 1; l1 <= l; ++l1)
        for (const auto& first : treesOf(v1, l1))
          for (const auto& rest : sequences(v - v1, l - l1)) {
            std::vector<Tree> s{first};
            s.insert(s.end(), rest.begin(), rest.end());
            out.push_back(std::move(s));
          }
  }
  return memo.emplace(std::make_pair(v, l), std::move(out)).first->second;
}

/// Items of a canonical forest literal, split at top-level commas.
std::vector<std::string> itemsOf(const std::string& literal) {
  std::vector<std::string> out;
  if (literal == "1") return out;
  int depth = 0;
  std::size_t start = 0;
  for (std::size_t i = 0; i < literal.size(); ++i) {
    char ch = literal[i];
    if (ch == '(') ++depth;
    if (ch == ')') --depth;
    if (ch == ',' && depth == 0) {
      out.push_back(literal.substr(start, i - start));
      start = i + 1;
    }
  }
  out.push_back(literal.substr(start));
  return out;
}

BasisKey joinItems(const std::vector<std::string>& items) {
  if (items.empty()) return BasisKey(KeyTag::Forest, "1");
  std::string s;
  for (const auto& item : items) {
    if (!s.empty()) s += ',';
    s += item;
  }
  return BasisKey(KeyTag::Forest, std::move(s));
}

}  // namespace

Forest parseForest(std::string_view text) { return ForestParser(text).parse(); }

std::string renderForest(const Forest& f) {
  if (f.empty()) return "1";
  std::string s;
  for (const auto& t : f) {
    if (!s.empty()) s += ',';
    s += renderTree(t, false);
  }
  return s;
}

Forest canonicalForest(Forest f, TreeMode mode) {
  if (mode == TreeMode::Planar) return f;
  for (auto& t : f) canonicalize(t);
  std::sort(f.begin(), f.end(),
            [](const Tree& a, const Tree& b) { return renderTree(a, false) < renderTree(b, false); });
  return f;
}

BasisKey treeCanonicalForm(const Forest& f, TreeMode mode) {
  return BasisKey(KeyTag::Forest, renderForest(canonicalForest(f, mode)));
}

Forest forestOf(const BasisKey& key) {
  if (key.tag != KeyTag::Forest) throw PreconditionError("not a forest key: " + render(key));
  return parseForest(key.payload);
}

int vertexCount(const Forest& f) {
  int n = 0;
  for (const auto& t : f) n += vertices(t);
  return n;
}

int leafCount(const Forest& f) {
  int n = 0;
  for (const auto& t : f) n += leaves(t);
  return n;
}

int bareLineCount(const Forest& f) {
  return static_cast<int>(std::count_if(f.begin(), f.end(), [](const Tree& t) { return t.isLeaf; }));
}

Tree corollaTree(int leavesCount) { return Tree::vertex(std::vector<Tree>(leavesCount, Tree::leaf())); }

Tree ladderTree(int verticesCount) {
  Tree t = Tree::leaf();
  for (int i = 0; i < verticesCount; ++i) t = Tree::vertex({t});
  return t;
}

TensorSum treeCoproduct(const Forest& f, TreeMode mode) {
  std::vector<std::pair<std::pair<Forest, Forest>, Scalar>> acc{{{{}, {}}, Scalar(1)}};
  for (const auto& t : f) {
    std::vector<std::pair<Forest, Forest>> terms;
    if (t.isLeaf) {
      terms.push_back({{Tree::leaf()}, {Tree::leaf()}});
    } else {
      terms.push_back({{Tree::leaf()}, {t}});
      for (auto& [stump, branches] : cuts(t)) terms.push_back({{std::move(stump)}, std::move(branches)});
    }
    std::vector<std::pair<std::pair<Forest, Forest>, Scalar>> next;
    for (const auto& [pair, c] : acc)
      for (const auto& [l, r] : terms) {
        Forest nl = pair.first, nr = pair.second;
        nl.insert(nl.end(), l.begin(), l.end());
        nr.insert(nr.end(), r.begin(), r.end());
        next.push_back({{std::move(nl), std::move(nr)}, c});
      }
    acc = std::move(next);
  }
  TensorSum out;
  for (const auto& [pair, c] : acc)
    out.add({treeCanonicalForm(pair.first, mode), treeCanonicalForm(pair.second, mode)}, c);
  return out;
}

KeyList enumerateForests(int maxVertices, int maxLeaves, TreeMode mode) {
  static std::mutex guard;  // the enumeration tables are shared
  std::lock_guard lock(guard);
  std::set<BasisKey> keys;
  for (int v = 0; v <= maxVertices; ++v)
    for (int l = 0; l <= maxLeaves; ++l)
      for (const auto& seq : sequences(v, l)) keys.insert(treeCanonicalForm(seq, mode));
  return KeyList(keys.begin(), keys.end());
}

BialgebraSpec buildTreeBialgebra(int maxVertices, TreeMode mode, int maxLeaves) {
  if (maxVertices < 0) throw ConfigurationError("maxVertices must be nonnegative");
  if (maxLeaves < 0) maxLeaves = std::max(maxVertices, 1);
  const std::string id = std::string(mode == TreeMode::Planar ? "planar" : "symmetric") + " trees";

  CoalgebraSpec c;
  c.id = id;
  c.universe = std::make_shared<const KeyList>(enumerateForests(maxVertices, maxLeaves, mode));
  c.finite = false;
  c.delta = [mode](const BasisKey& k) { return treeCoproduct(forestOf(k), mode); };
  // Canonical literals spell one 'v' per vertex.
  auto vertices = [](const BasisKey& k) {
    if (k.tag != KeyTag::Forest) throw PreconditionError("not a forest key: " + render(k));
    return static_cast<int>(std::count(k.payload.begin(), k.payload.end(), 'v'));
  };
  c.counit = [vertices](const BasisKey& k) { return Scalar(vertices(k) == 0 ? 1 : 0); };
  c.grading = vertices;
  c = memoizeDelta(std::move(c));

  AlgebraSpec a;
  a.id = id;
  // Canonical literals multiply by joining items; symmetric items stay sorted.
  a.product = [mode](const BasisKey& x, const BasisKey& y) {
    auto items = itemsOf(x.payload);
    auto more = itemsOf(y.payload);
    if (mode == TreeMode::Symmetric) {
      std::vector<std::string> merged;
      std::merge(items.begin(), items.end(), more.begin(), more.end(), std::back_inserter(merged));
      return FormalSum(joinItems(merged));
    }
    items.insert(items.end(), more.begin(), more.end());
    return FormalSum(joinItems(items));
  };
  a.unit = FormalSum(BasisKey(KeyTag::Forest, "1"));
  a.inverse = [](const FormalSum& x) -> std::optional<FormalSum> {
    if (x.size() != 1 || x.begin()->first.payload != "1") return std::nullopt;
    return FormalSum(x.begin()->first, x.begin()->second.inverse());
  };
  a.commutative = mode == TreeMode::Symmetric;

  FreeMonoidStructure m;
  m.atoms = [](const BasisKey& k) {
    KeyList out;
    for (auto& item : itemsOf(k.payload)) out.push_back(BasisKey(KeyTag::Forest, std::move(item)));
    return out;
  };
  m.assemble = [mode](const KeyList& atoms) {
    std::vector<std::string> items;
    for (const auto& a : atoms)
      for (auto& item : itemsOf(a.payload)) items.push_back(std::move(item));
    if (mode == TreeMode::Symmetric) std::sort(items.begin(), items.end());
    return joinItems(items);
  };
  m.grouplikeGenerator = [](const BasisKey& atom) -> std::optional<int> {
    if (atom.payload == "|") return 0;
    return std::nullopt;
  };
  m.generatorAtom = [](int) { return BasisKey(KeyTag::Forest, "|"); };
  m.weight = [](int) { return 1; };
  m.commutative = mode == TreeMode::Symmetric;

  BialgebraSpec b;
  b.id = id;
  b.coalgebra = std::move(c);
  b.algebra = std::move(a);
  b.monoid = std::move(m);
  return b;
}

}  // namespace hopf
