#include "hopf/gallery.hpp"

#include <algorithm>
#include <array>
#include <functional>
#include <set>

#include "hopf/errors.hpp"

namespace hopf {

namespace {

using nlohmann::json;

std::vector<std::string> stringList(const json& doc, const char* field) {
  if (!doc.contains(field) || !doc[field].is_array())
    throw ConfigurationError(std::string("missing array field '") + field + "'");
  std::vector<std::string> out;
  for (const auto& v : doc[field]) {
    if (!v.is_string()) throw ConfigurationError(std::string("non-string entry in '") + field + "'");
    out.push_back(v.get<std::string>());
  }
  return out;
}

std::string stringField(const json& doc, const char* field) {
  if (!doc.contains(field) || !doc[field].is_string())
    throw ConfigurationError(std::string("missing string field '") + field + "'");
  return doc[field].get<std::string>();
}

void requireUnique(const std::vector<std::string>& names, const std::string& what) {
  std::set<std::string> seen;
  for (const auto& n : names)
    if (!seen.insert(n).second) throw ConfigurationError("duplicate " + what + " '" + n + "'");
}

CoalgebraSpec finishSpec(CoalgebraSpec spec, std::vector<BasisKey> keys) {
  std::sort(keys.begin(), keys.end());
  keys.erase(std::unique(keys.begin(), keys.end()), keys.end());
  spec.universe = std::make_shared<const KeyList>(std::move(keys));
  return memoizeDelta(std::move(spec));
}

}  // namespace

// ---------------------------------------------------------------- quivers

void Quiver::validate() const {
  requireUnique(vertices, "vertex");
  std::vector<std::string> names;
  std::set<std::string> vs(vertices.begin(), vertices.end());
  for (const auto& e : edges) {
    names.push_back(e.name);
    if (!vs.count(e.src) || !vs.count(e.tgt))
      throw ConfigurationError("edge '" + e.name + "' has an undeclared endpoint");
    if (e.name.empty() || e.name.find_first_of(".() ") != std::string::npos)
      throw ConfigurationError("edge name '" + e.name + "' may not contain '.', '(', ')' or spaces");
  }
  requireUnique(names, "edge");
}

Quiver Quiver::fromJson(const json& doc) {
  Quiver q;
  q.vertices = stringList(doc, "vertices");
  if (!doc.contains("edges") || !doc["edges"].is_array()) throw ConfigurationError("missing array field 'edges'");
  for (const auto& e : doc["edges"]) q.edges.push_back({stringField(e, "name"), stringField(e, "src"), stringField(e, "tgt")});
  q.validate();
  return q;
}

Quiver completeQuiver(int vertexCount) {
  Quiver q;
  for (int i = 0; i < vertexCount; ++i) q.vertices.push_back(std::to_string(i));
  for (int i = 0; i < vertexCount; ++i)
    for (int j = 0; j < vertexCount; ++j)
      q.edges.push_back({"e" + std::to_string(i) + std::to_string(j), std::to_string(i), std::to_string(j)});
  return q;
}

BasisKey vertexPathKey(const std::string& vertex) { return BasisKey(KeyTag::Path, "(" + vertex + ")"); }

BasisKey pathKey(const std::vector<std::string>& edges) {
  std::string out;
  for (const auto& e : edges) {
    if (!out.empty()) out += '.';
    out += e;
  }
  return BasisKey(KeyTag::Path, out);
}

CoalgebraSpec buildPathCoalgebra(const Quiver& q, int maxLength) {
  q.validate();
  if (maxLength < 0) throw ConfigurationError("maxLength must be nonnegative");
  struct Info {
    std::map<std::string, std::pair<std::string, std::string>> ends;
  };
  auto info = std::make_shared<Info>();
  for (const auto& e : q.edges) info->ends[e.name] = {e.src, e.tgt};

  auto split = [](const BasisKey& k) {
    std::vector<std::string> out;
    std::size_t start = 0;
    while (true) {
      auto dot = k.payload.find('.', start);
      out.push_back(k.payload.substr(start, dot - start));
      if (dot == std::string::npos) break;
      start = dot + 1;
    }
    return out;
  };
  auto isVertex = [](const BasisKey& k) { return !k.payload.empty() && k.payload.front() == '('; };

  CoalgebraSpec spec;
  spec.id = "paths";
  spec.finite = false;
  spec.delta = [info, split, isVertex](const BasisKey& k) {
    if (isVertex(k)) return TensorSum({k, k});
    auto edges = split(k);
    TensorSum out;
    out.add({vertexPathKey(info->ends.at(edges.front()).first), k}, Scalar(1));
    for (std::size_t i = 1; i < edges.size(); ++i) {
      std::vector<std::string> a(edges.begin(), edges.begin() + i);
      std::vector<std::string> b(edges.begin() + i, edges.end());
      out.add({pathKey(a), pathKey(b)}, Scalar(1));
    }
    out.add({k, vertexPathKey(info->ends.at(edges.back()).second)}, Scalar(1));
    return out;
  };
  spec.counit = [isVertex](const BasisKey& k) { return Scalar(isVertex(k) ? 1 : 0); };
  spec.grading = [isVertex](const BasisKey& k) {
    if (isVertex(k)) return 0;
    return static_cast<int>(std::count(k.payload.begin(), k.payload.end(), '.')) + 1;
  };

  std::vector<BasisKey> keys;
  for (const auto& v : q.vertices) keys.push_back(vertexPathKey(v));
  std::vector<std::pair<std::vector<std::string>, std::string>> frontier;  // path, end vertex
  for (const auto& e : q.edges) frontier.push_back({{e.name}, e.tgt});
  for (int len = 1; len <= maxLength && !frontier.empty(); ++len) {
    std::vector<std::pair<std::vector<std::string>, std::string>> next;
    for (const auto& [path, end] : frontier) {
      keys.push_back(pathKey(path));
      if (len == maxLength) continue;
      for (const auto& e : q.edges) {
        if (e.src != end) continue;
        auto p = path;
        p.push_back(e.name);
        next.push_back({std::move(p), e.tgt});
      }
    }
    frontier = std::move(next);
  }
  return finishSpec(std::move(spec), std::move(keys));
}

// ---------------------------------------------------------------- posets

std::vector<std::vector<bool>> Poset::closure() const {
  requireUnique(elements, "poset element");
  std::map<std::string, int> idx;
  for (std::size_t i = 0; i < elements.size(); ++i) idx[elements[i]] = static_cast<int>(i);
  std::size_t n = elements.size();
  std::vector<std::vector<bool>> le(n, std::vector<bool>(n, false));
  for (std::size_t i = 0; i < n; ++i) le[i][i] = true;
  for (const auto& [a, b] : covers) {
    if (!idx.count(a) || !idx.count(b)) throw ConfigurationError("cover relation on unknown element");
    if (a == b) throw ConfigurationError("cover relation '" + a + " < " + b + "' is reflexive");
    le[idx[a]][idx[b]] = true;
  }
  for (std::size_t k = 0; k < n; ++k)
    for (std::size_t i = 0; i < n; ++i)
      if (le[i][k])
        for (std::size_t j = 0; j < n; ++j)
          if (le[k][j]) le[i][j] = true;
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = i + 1; j < n; ++j)
      if (le[i][j] && le[j][i])
        throw ConfigurationError("cover relations contain a cycle through '" + elements[i] + "'");
  return le;
}

Poset Poset::fromJson(const json& doc) {
  Poset p;
  p.elements = stringList(doc, "elements");
  if (doc.contains("covers")) {
    for (const auto& c : doc["covers"]) {
      if (!c.is_array() || c.size() != 2 || !c[0].is_string() || !c[1].is_string())
        throw ConfigurationError("cover relations are pairs of element names");
      p.covers.emplace_back(c[0].get<std::string>(), c[1].get<std::string>());
    }
  }
  p.closure();
  return p;
}

Poset chainPoset(int length) {
  Poset p;
  for (int i = 0; i <= length; ++i) p.elements.push_back(std::to_string(i));
  for (int i = 0; i < length; ++i) p.covers.emplace_back(std::to_string(i), std::to_string(i + 1));
  return p;
}

Poset booleanLattice(int atoms) {
  Poset p;
  auto name = [atoms](unsigned mask) {
    std::string s = "{";
    for (int i = 0; i < atoms; ++i)
      if (mask & (1u << i)) s += std::to_string(i);
    return s + "}";
  };
  for (unsigned m = 0; m < (1u << atoms); ++m) p.elements.push_back(name(m));
  for (unsigned m = 0; m < (1u << atoms); ++m)
    for (int i = 0; i < atoms; ++i)
      if (!(m & (1u << i))) p.covers.emplace_back(name(m), name(m | (1u << i)));
  return p;
}

BasisKey intervalKey(const std::string& x, const std::string& y) {
  return BasisKey(KeyTag::Interval, "[" + x + "," + y + "]");
}

CoalgebraSpec buildIncidenceCoalgebra(const Poset& p) {
  auto le = p.closure();
  std::size_t n = p.elements.size();
  struct Table {
    std::map<BasisKey, TensorSum> delta;
    std::map<BasisKey, int> grade;
    std::set<BasisKey> diagonal;
  };
  auto t = std::make_shared<Table>();
  // Longest chain lengths by dynamic programming over a linear extension.
  std::vector<std::vector<int>> longest(n, std::vector<int>(n, -1));
  std::vector<std::size_t> order(n);
  for (std::size_t i = 0; i < n; ++i) order[i] = i;
  std::sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
    std::size_t da = 0, db = 0;
    for (std::size_t k = 0; k < n; ++k) {
      da += le[k][a];
      db += le[k][b];
    }
    return da < db;
  });
  for (std::size_t x = 0; x < n; ++x) {
    longest[x][x] = 0;
    for (std::size_t y : order) {
      if (y == x || !le[x][y]) continue;
      int best = -1;
      for (std::size_t z = 0; z < n; ++z)
        if (z != y && le[x][z] && le[z][y] && longest[x][z] >= 0) best = std::max(best, longest[x][z] + 1);
      longest[x][y] = best;
    }
  }
  std::vector<BasisKey> keys;
  for (std::size_t x = 0; x < n; ++x)
    for (std::size_t y = 0; y < n; ++y) {
      if (!le[x][y]) continue;
      BasisKey k = intervalKey(p.elements[x], p.elements[y]);
      keys.push_back(k);
      TensorSum d;
      for (std::size_t z = 0; z < n; ++z)
        if (le[x][z] && le[z][y])
          d.add({intervalKey(p.elements[x], p.elements[z]), intervalKey(p.elements[z], p.elements[y])}, Scalar(1));
      t->delta[k] = d;
      t->grade[k] = longest[x][y];
      if (x == y) t->diagonal.insert(k);
    }
  CoalgebraSpec spec;
  spec.id = "incidence";
  spec.finite = true;
  spec.delta = [t](const BasisKey& k) { return t->delta.at(k); };
  spec.counit = [t](const BasisKey& k) { return Scalar(t->diagonal.count(k) ? 1 : 0); };
  spec.grading = [t](const BasisKey& k) { return t->grade.at(k); };
  return finishSpec(std::move(spec), std::move(keys));
}

// ---------------------------------------------------------------- colored monoids

void ColoredMonoid::validate() const {
  requireUnique(colors, "color");
  std::map<std::string, const Element*> byName;
  std::set<std::string> cs(colors.begin(), colors.end());
  for (const auto& e : elements) {
    if (!byName.emplace(e.name, &e).second) throw ConfigurationError("duplicate element '" + e.name + "'");
    if (!cs.count(e.src) || !cs.count(e.tgt)) throw ConfigurationError("element '" + e.name + "' has an unknown color");
    if (e.degree < 0) throw ConfigurationError("element '" + e.name + "' has negative degree");
  }
  std::set<std::string> identities;
  for (const auto& c : colors) {
    auto it = identity.find(c);
    if (it == identity.end()) throw ConfigurationError("color '" + c + "' has no identity");
    auto e = byName.find(it->second);
    if (e == byName.end() || e->second->src != c || e->second->tgt != c)
      throw ConfigurationError("identity of '" + c + "' is not an endomorphism of it");
    identities.insert(it->second);
  }
  for (const auto& e : elements) {
    bool isId = identities.count(e.name) > 0;
    if ((e.degree == 0) != isId)
      throw ConfigurationError("degree is not proper at '" + e.name + "': degree 0 must mean identity");
  }
  auto productOf = [&](const std::string& a, const std::string& b) -> std::optional<std::string> {
    const Element& ea = *byName.at(a);
    const Element& eb = *byName.at(b);
    if (ea.tgt != eb.src) return std::nullopt;
    if (identities.count(a) && a == identity.at(ea.src)) return b;
    if (identities.count(b) && b == identity.at(eb.tgt)) return a;
    auto it = product.find({a, b});
    if (it == product.end()) return std::nullopt;
    return it->second;
  };
  for (const auto& [ab, c] : product) {
    const auto& [a, b] = ab;
    if (!byName.count(a) || !byName.count(b) || !byName.count(c))
      throw ConfigurationError("product entry names an unknown element");
    const Element& ea = *byName.at(a);
    const Element& eb = *byName.at(b);
    const Element& ec = *byName.at(c);
    if (ea.tgt != eb.src) throw ConfigurationError("product " + a + "·" + b + " of non-composable elements");
    if (ec.src != ea.src || ec.tgt != eb.tgt) throw ConfigurationError("product " + a + "·" + b + " has wrong colors");
    if (identities.count(c) && !identities.count(a))
      throw ConfigurationError("non-identity invertible element '" + a + "'");
    if (ec.degree != ea.degree + eb.degree) throw ConfigurationError("degree not additive on " + a + "·" + b);
  }
  for (const auto& a : elements)
    for (const auto& b : elements) {
      auto ab = productOf(a.name, b.name);
      if (!ab) continue;
      for (const auto& c : elements) {
        auto bc = productOf(b.name, c.name);
        if (!bc) continue;
        auto left = productOf(*ab, c.name);
        auto right = productOf(a.name, *bc);
        if (left != right)
          throw ConfigurationError("composition not associative on (" + a.name + ", " + b.name + ", " + c.name + ")");
      }
    }
}

ColoredMonoid ColoredMonoid::fromJson(const json& doc) {
  ColoredMonoid m;
  m.colors = stringList(doc, "colors");
  if (!doc.contains("elements")) throw ConfigurationError("missing field 'elements'");
  for (const auto& e : doc["elements"]) {
    Element el{stringField(e, "name"), stringField(e, "src"), stringField(e, "tgt"), 0};
    if (!e.contains("degree") || !e["degree"].is_number_integer()) throw ConfigurationError("element needs an integer 'degree'");
    el.degree = e["degree"].get<int>();
    m.elements.push_back(el);
  }
  if (!doc.contains("identities") || !doc["identities"].is_object()) throw ConfigurationError("missing object 'identities'");
  for (const auto& [c, v] : doc["identities"].items()) m.identity[c] = v.get<std::string>();
  if (doc.contains("products")) {
    for (const auto& t : doc["products"]) {
      if (!t.is_array() || t.size() != 3) throw ConfigurationError("products are triples [a, b, a·b]");
      m.product[{t[0].get<std::string>(), t[1].get<std::string>()}] = t[2].get<std::string>();
    }
  }
  m.validate();
  return m;
}

ColoredMonoid posetCategory(const Poset& p) {
  auto le = p.closure();
  std::size_t n = p.elements.size();
  // Degrees are longest chains; reuse the incidence construction for them.
  CoalgebraSpec inc = buildIncidenceCoalgebra(p);
  ColoredMonoid m;
  m.colors = p.elements;
  for (std::size_t x = 0; x < n; ++x)
    for (std::size_t y = 0; y < n; ++y) {
      if (!le[x][y]) continue;
      BasisKey k = intervalKey(p.elements[x], p.elements[y]);
      m.elements.push_back({k.payload, p.elements[x], p.elements[y], inc.grading(k)});
      if (x == y) m.identity[p.elements[x]] = k.payload;
    }
  for (std::size_t x = 0; x < n; ++x)
    for (std::size_t y = 0; y < n; ++y)
      for (std::size_t z = 0; z < n; ++z)
        if (le[x][y] && le[y][z] && x != y && y != z)
          m.product[{intervalKey(p.elements[x], p.elements[y]).payload, intervalKey(p.elements[y], p.elements[z]).payload}] =
              intervalKey(p.elements[x], p.elements[z]).payload;
  return m;
}

ColoredMonoid freeMonoidOneGenerator(int maxPower) {
  ColoredMonoid m;
  m.colors = {"*"};
  auto name = [](int k) { return k == 0 ? std::string("1") : k == 1 ? std::string("a") : "a^" + std::to_string(k); };
  for (int k = 0; k <= maxPower; ++k) m.elements.push_back({name(k), "*", "*", k});
  m.identity["*"] = "1";
  for (int i = 1; i <= maxPower; ++i)
    for (int j = 1; i + j <= maxPower; ++j) m.product[{name(i), name(j)}] = name(i + j);
  return m;
}

CoalgebraSpec buildCategoricalCoalgebra(const ColoredMonoid& m, int maxDegree) {
  m.validate();
  struct Table {
    std::map<BasisKey, TensorSum> delta;
    std::map<BasisKey, int> grade;
    std::set<BasisKey> identities;
  };
  auto t = std::make_shared<Table>();
  std::map<std::string, const ColoredMonoid::Element*> byName;
  for (const auto& e : m.elements) byName[e.name] = &e;
  std::vector<BasisKey> keys;
  for (const auto& e : m.elements) {
    if (e.degree > maxDegree) continue;
    BasisKey k(KeyTag::Monoid, e.name);
    keys.push_back(k);
    t->grade[k] = e.degree;
    t->delta[k].add({BasisKey(KeyTag::Monoid, m.identity.at(e.src)), k}, Scalar(1));
    if (e.degree > 0) t->delta[k].add({k, BasisKey(KeyTag::Monoid, m.identity.at(e.tgt))}, Scalar(1));
  }
  for (const auto& c : m.colors) t->identities.insert(BasisKey(KeyTag::Monoid, m.identity.at(c)));
  for (const auto& [ab, c] : m.product) {
    BasisKey kc(KeyTag::Monoid, c);
    if (!t->grade.count(kc)) continue;
    t->delta[kc].add({BasisKey(KeyTag::Monoid, ab.first), BasisKey(KeyTag::Monoid, ab.second)}, Scalar(1));
  }
  CoalgebraSpec spec;
  spec.id = "categorical";
  spec.finite = true;
  for (const auto& e : m.elements)
    if (e.degree > maxDegree) spec.finite = false;
  spec.delta = [t](const BasisKey& k) { return t->delta.at(k); };
  spec.counit = [t](const BasisKey& k) { return Scalar(t->identities.count(k) ? 1 : 0); };
  spec.grading = [t](const BasisKey& k) { return t->grade.at(k); };
  return finishSpec(std::move(spec), std::move(keys));
}

// ---------------------------------------------------------------- Goncharov words

GoncharovWord GoncharovWord::fromJson(const json& doc) {
  GoncharovWord w{stringField(doc, "left"), stringList(doc, "letters"), stringField(doc, "right")};
  auto check = [](const std::string& s) {
    if (s.empty() || s.find_first_of(";,() ") != std::string::npos)
      throw ConfigurationError("word letter '" + s + "' may not contain ';', ',', '(', ')' or spaces");
  };
  check(w.left);
  check(w.right);
  for (const auto& l : w.letters) check(l);
  return w;
}

std::string wordLiteral(const GoncharovWord& w) {
  std::string s = "I(" + w.left + ";";
  for (std::size_t i = 0; i < w.letters.size(); ++i) s += (i ? "," : "") + w.letters[i];
  return s + ";" + w.right + ")";
}

BasisKey wordKey(const GoncharovWord& w) { return BasisKey(KeyTag::Word, wordLiteral(w)); }

BasisKey wordProductKey(std::vector<GoncharovWord> factors) {
  std::vector<std::string> lits;
  for (const auto& f : factors) lits.push_back(wordLiteral(f));
  std::sort(lits.begin(), lits.end());
  std::string s;
  for (const auto& l : lits) s += (s.empty() ? "" : " ") + l;
  return BasisKey(KeyTag::Word, s.empty() ? std::string("1") : s);
}

std::vector<GoncharovWord> wordFactors(const BasisKey& key) {
  std::vector<GoncharovWord> out;
  if (key.payload == "1") return out;
  std::size_t pos = 0;
  const std::string& s = key.payload;
  while (pos < s.size()) {
    auto close = s.find(')', pos);
    std::string body = s.substr(pos + 2, close - pos - 2);
    auto semi1 = body.find(';');
    auto semi2 = body.rfind(';');
    GoncharovWord w;
    w.left = body.substr(0, semi1);
    w.right = body.substr(semi2 + 1);
    std::string mid = body.substr(semi1 + 1, semi2 - semi1 - 1);
    std::size_t start = 0;
    while (!mid.empty()) {
      auto comma = mid.find(',', start);
      w.letters.push_back(mid.substr(start, comma - start));
      if (comma == std::string::npos) break;
      start = comma + 1;
    }
    out.push_back(std::move(w));
    pos = close + 2;
  }
  return out;
}

TensorSum goncharovCoproduct(const GoncharovWord& w) {
  // Points 0..n+1 carry a0, letters, a(n+1); a subset of the inner points is kept.
  std::vector<std::string> pts;
  pts.push_back(w.left);
  pts.insert(pts.end(), w.letters.begin(), w.letters.end());
  pts.push_back(w.right);
  const std::size_t m = w.letters.size();
  TensorSum out;
  for (std::uint64_t mask = 0; mask < (std::uint64_t{1} << m); ++mask) {
    std::vector<std::size_t> kept{0};
    for (std::size_t i = 0; i < m; ++i)
      if (mask & (std::uint64_t{1} << i)) kept.push_back(i + 1);
    kept.push_back(m + 1);
    GoncharovWord left{w.left, {}, w.right};
    for (std::size_t i = 1; i + 1 < kept.size(); ++i) left.letters.push_back(pts[kept[i]]);
    std::vector<GoncharovWord> segments;
    for (std::size_t i = 0; i + 1 < kept.size(); ++i) {
      GoncharovWord seg{pts[kept[i]], {}, pts[kept[i + 1]]};
      for (std::size_t j = kept[i] + 1; j < kept[i + 1]; ++j) seg.letters.push_back(pts[j]);
      segments.push_back(std::move(seg));
    }
    out.add({wordKey(left), wordProductKey(std::move(segments))}, Scalar(1));
  }
  return out;
}

CoalgebraSpec buildGoncharovCoalgebra(const std::vector<std::string>& alphabet, int maxLetters) {
  requireUnique(alphabet, "letter");
  for (const auto& a : alphabet) GoncharovWord::fromJson({{"left", a}, {"letters", json::array()}, {"right", a}});
  CoalgebraSpec spec;
  spec.id = "goncharov";
  spec.finite = false;
  std::function<TensorSum(const BasisKey&)> delta = [](const BasisKey& k) {
    auto factors = wordFactors(k);
    if (factors.empty()) return TensorSum({k, k});
    // Multiplicative extension over the commutative product.
    std::vector<std::pair<std::pair<std::vector<GoncharovWord>, std::vector<GoncharovWord>>, Scalar>> acc{{{{}, {}}, Scalar(1)}};
    for (const auto& f : factors) {
      std::vector<std::pair<std::pair<std::vector<GoncharovWord>, std::vector<GoncharovWord>>, Scalar>> next;
      for (const auto& [pair, c] : goncharovCoproduct(f)) {
        auto l = wordFactors(pair.first);
        auto r = wordFactors(pair.second);
        for (const auto& [prev, pc] : acc) {
          auto nl = prev.first;
          auto nr = prev.second;
          nl.insert(nl.end(), l.begin(), l.end());
          nr.insert(nr.end(), r.begin(), r.end());
          next.push_back({{std::move(nl), std::move(nr)}, pc * c});
        }
      }
      acc = std::move(next);
    }
    TensorSum out;
    for (auto& [pair, c] : acc) out.add({wordProductKey(pair.first), wordProductKey(pair.second)}, c);
    return out;
  };
  spec.delta = delta;
  spec.counit = [](const BasisKey& k) {
    for (const auto& f : wordFactors(k))
      if (!f.letters.empty()) return Scalar(0);
    return Scalar(1);
  };
  spec.grading = [](const BasisKey& k) {
    int g = 0;
    for (const auto& f : wordFactors(k)) g += static_cast<int>(f.letters.size());
    return g;
  };
  std::vector<BasisKey> keys;
  std::vector<std::vector<std::string>> tuples{{}};
  for (int len = 0; len <= maxLetters; ++len) {
    for (const auto& t : tuples)
      for (const auto& a : alphabet)
        for (const auto& b : alphabet) keys.push_back(wordKey({a, t, b}));
    std::vector<std::vector<std::string>> next;
    for (const auto& t : tuples)
      for (const auto& a : alphabet) {
        auto u = t;
        u.push_back(a);
        next.push_back(std::move(u));
      }
    tuples = std::move(next);
  }
  return finishSpec(std::move(spec), std::move(keys));
}

// ---------------------------------------------------------------- setlike

CoalgebraSpec buildSetlikeCoalgebra(const std::vector<std::string>& elements) {
  requireUnique(elements, "element");
  CoalgebraSpec spec;
  spec.id = "setlike";
  spec.finite = true;
  spec.delta = [](const BasisKey& k) { return TensorSum({k, k}); };
  spec.counit = [](const BasisKey&) { return Scalar(1); };
  spec.grading = [](const BasisKey&) { return 0; };
  std::vector<BasisKey> keys;
  for (const auto& e : elements) keys.emplace_back(KeyTag::Set, e);
  return finishSpec(std::move(spec), std::move(keys));
}

// ---------------------------------------------------------------- groups and the double

int FiniteGroup::index(const std::string& name) const {
  auto it = std::find(names.begin(), names.end(), name);
  if (it == names.end()) throw ConfigurationError("unknown group element '" + name + "'");
  return static_cast<int>(it - names.begin());
}

FiniteGroup FiniteGroup::fromTable(std::vector<std::string> names, std::vector<std::vector<int>> mul) {
  requireUnique(names, "group element");
  const int n = static_cast<int>(names.size());
  if (n == 0) throw ConfigurationError("empty group");
  if (static_cast<int>(mul.size()) != n) throw ConfigurationError("Cayley table has the wrong number of rows");
  for (const auto& row : mul) {
    if (static_cast<int>(row.size()) != n) throw ConfigurationError("Cayley table row has the wrong length");
    for (int v : row)
      if (v < 0 || v >= n) throw ConfigurationError("Cayley table entry outside the group");
  }
  for (int a = 0; a < n; ++a)
    for (int b = 0; b < n; ++b)
      for (int c = 0; c < n; ++c)
        if (mul[mul[a][b]][c] != mul[a][mul[b][c]]) throw ConfigurationError("Cayley table is not associative");
  int e = -1;
  for (int a = 0; a < n && e < 0; ++a) {
    bool ok = true;
    for (int b = 0; b < n; ++b) ok = ok && mul[a][b] == b && mul[b][a] == b;
    if (ok) e = a;
  }
  if (e < 0) throw ConfigurationError("Cayley table has no identity");
  std::vector<int> inv(n, -1);
  for (int a = 0; a < n; ++a)
    for (int b = 0; b < n; ++b)
      if (mul[a][b] == e && mul[b][a] == e) inv[a] = b;
  for (int a = 0; a < n; ++a)
    if (inv[a] < 0) throw ConfigurationError("element '" + names[a] + "' has no inverse");
  FiniteGroup g;
  g.names = std::move(names);
  g.mul = std::move(mul);
  g.identity = e;
  g.inv = std::move(inv);
  return g;
}

FiniteGroup FiniteGroup::fromJson(const json& doc) {
  auto names = stringList(doc, "elements");
  if (!doc.contains("table") || !doc["table"].is_array()) throw ConfigurationError("missing array field 'table'");
  std::vector<std::vector<int>> mul;
  for (const auto& row : doc["table"]) {
    std::vector<int> r;
    for (const auto& v : row) {
      auto it = std::find(names.begin(), names.end(), v.get<std::string>());
      if (it == names.end()) throw ConfigurationError("Cayley table entry '" + v.get<std::string>() + "' is not an element");
      r.push_back(static_cast<int>(it - names.begin()));
    }
    mul.push_back(std::move(r));
  }
  return fromTable(std::move(names), std::move(mul));
}

FiniteGroup FiniteGroup::cyclic(int n) {
  std::vector<std::string> names;
  for (int i = 0; i < n; ++i) names.push_back(i == 0 ? std::string("e") : i == 1 ? std::string("a") : "a" + std::to_string(i));
  std::vector<std::vector<int>> mul(n, std::vector<int>(n));
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) mul[i][j] = (i + j) % n;
  return fromTable(std::move(names), std::move(mul));
}

FiniteGroup FiniteGroup::symmetric3() {
  // Permutations of {0,1,2} as images; product is composition "apply left first".
  std::vector<std::array<int, 3>> perms{{0, 1, 2}, {1, 0, 2}, {0, 2, 1}, {2, 1, 0}, {1, 2, 0}, {2, 0, 1}};
  std::vector<std::string> names{"e", "s1", "s2", "s3", "r", "r2"};
  std::vector<std::vector<int>> mul(6, std::vector<int>(6));
  for (int i = 0; i < 6; ++i)
    for (int j = 0; j < 6; ++j) {
      std::array<int, 3> c{};
      for (int k = 0; k < 3; ++k) c[k] = perms[j][perms[i][k]];
      mul[i][j] = static_cast<int>(std::find(perms.begin(), perms.end(), c) - perms.begin());
    }
  return fromTable(std::move(names), std::move(mul));
}

BasisKey doubleKey(const FiniteGroup& g, int a, int x) {
  return BasisKey(KeyTag::Double, "<" + g.names[a] + "," + g.names[x] + ">");
}

BasisKey doubleDualKey(const FiniteGroup& g, int a, int x) {
  return BasisKey(KeyTag::DoubleDual, "d<" + g.names[a] + "," + g.names[x] + ">");
}

namespace {

std::pair<int, int> splitDouble(const FiniteGroup& g, const BasisKey& k) {
  const std::string& s = k.payload;
  std::size_t open = s.find('<');
  std::size_t comma = s.find(',', open);
  return {g.index(s.substr(open + 1, comma - open - 1)), g.index(s.substr(comma + 1, s.size() - comma - 2))};
}

}  // namespace

BialgebraSpec buildDrinfeldDouble(const FiniteGroup& group) {
  auto g = std::make_shared<const FiniteGroup>(group);
  const int n = static_cast<int>(g->names.size());
  CoalgebraSpec c;
  c.id = "D(k[G])";
  c.finite = true;
  c.delta = [g, n](const BasisKey& k) {
    auto [a, x] = splitDouble(*g, k);
    TensorSum out;
    for (int a1 = 0; a1 < n; ++a1) out.add({doubleKey(*g, a1, x), doubleKey(*g, g->mul[g->inv[a1]][a], x)}, Scalar(1));
    return out;
  };
  c.counit = [g](const BasisKey& k) { return Scalar(splitDouble(*g, k).first == g->identity ? 1 : 0); };
  c.grading = [](const BasisKey&) { return 0; };
  std::vector<BasisKey> keys;
  for (int a = 0; a < n; ++a)
    for (int x = 0; x < n; ++x) keys.push_back(doubleKey(*g, a, x));
  c = finishSpec(std::move(c), std::move(keys));

  AlgebraSpec alg;
  alg.id = c.id;
  alg.product = [g](const BasisKey& l, const BasisKey& r) {
    auto [a, x] = splitDouble(*g, l);
    auto [b, y] = splitDouble(*g, r);
    if (a != g->mul[g->mul[x][b]][g->inv[x]]) return FormalSum();
    return FormalSum(doubleKey(*g, a, g->mul[x][y]));
  };
  for (int a = 0; a < n; ++a) alg.unit.add(doubleKey(*g, a, g->identity), Scalar(1));
  alg.inverse = [](const FormalSum&) -> std::optional<FormalSum> { return std::nullopt; };
  alg.commutative = false;

  BialgebraSpec b;
  b.id = c.id;
  b.coalgebra = std::move(c);
  b.algebra = std::move(alg);
  b.closedFormAntipode = [g](const BasisKey& k) {
    auto [a, x] = splitDouble(*g, k);
    int xi = g->inv[x];
    return FormalSum(doubleKey(*g, g->mul[g->mul[xi][g->inv[a]]][x], xi));
  };
  return b;
}

BialgebraSpec buildDrinfeldDoubleDual(const FiniteGroup& group) {
  auto g = std::make_shared<const FiniteGroup>(group);
  const int n = static_cast<int>(g->names.size());
  CoalgebraSpec c;
  c.id = "D(k[G])*";
  c.finite = true;
  c.delta = [g, n](const BasisKey& k) {
    auto [a, x] = splitDouble(*g, k);
    TensorSum out;
    for (int y = 0; y < n; ++y) {
      int yi = g->inv[y];
      out.add({doubleDualKey(*g, a, y), doubleDualKey(*g, g->mul[g->mul[yi][a]][y], g->mul[yi][x])}, Scalar(1));
    }
    return out;
  };
  c.counit = [g](const BasisKey& k) { return Scalar(splitDouble(*g, k).second == g->identity ? 1 : 0); };
  c.grading = [](const BasisKey&) { return 0; };
  std::vector<BasisKey> keys;
  for (int a = 0; a < n; ++a)
    for (int x = 0; x < n; ++x) keys.push_back(doubleDualKey(*g, a, x));
  c = finishSpec(std::move(c), std::move(keys));

  AlgebraSpec alg;
  alg.id = c.id;
  alg.product = [g](const BasisKey& l, const BasisKey& r) {
    auto [a, x] = splitDouble(*g, l);
    auto [b, y] = splitDouble(*g, r);
    if (x != y) return FormalSum();
    return FormalSum(doubleDualKey(*g, g->mul[a][b], x));
  };
  for (int x = 0; x < n; ++x) alg.unit.add(doubleDualKey(*g, g->identity, x), Scalar(1));
  alg.inverse = [](const FormalSum&) -> std::optional<FormalSum> { return std::nullopt; };

  BialgebraSpec b;
  b.id = c.id;
  b.coalgebra = std::move(c);
  b.algebra = std::move(alg);
  b.closedFormAntipode = [g](const BasisKey& k) {
    auto [a, x] = splitDouble(*g, k);
    int xi = g->inv[x];
    return FormalSum(doubleDualKey(*g, g->mul[g->mul[xi][g->inv[a]]][x], xi));
  };
  return b;
}

CoalgebraSpec coopposite(const CoalgebraSpec& c) {
  CoalgebraSpec out = c;
  out.id = c.id + "^cop";
  auto d = c.delta;
  out.delta = [d](const BasisKey& k) { return flip(d(k)); };
  return out;
}

}  // namespace hopf
