#include <CLI11.hpp>
#include <json.hpp>

#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>

#include "hopf/constructions.hpp"
#include "hopf/convolution.hpp"
#include "hopf/errors.hpp"
#include "hopf/gallery.hpp"
#include "hopf/graphs.hpp"
#include "hopf/renormalization.hpp"
#include "hopf/structure.hpp"
#include "hopf/trees.hpp"

using namespace hopf;
using nlohmann::json;

namespace {

/// Input problems that are not parse errors of a grammar (exit code 2).
class InputError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

struct Options {
  std::string format = "text";
  std::uint64_t seed = 1;
  std::string mode = "symmetric";
  int truncation = 4;
  int corollas = -1;
  std::string bialgebra = "trees";
  std::string quotient = "none";
  std::vector<std::string> keys;
  std::string character;
  std::string method = "auto";
  bool laurent = false;
  bool single = false;
  bool connected = false;
  std::string tree;
  std::string graph;
  std::string graphDoc;
  std::string kind = "normalized";
  std::string suite = "all";
  int maxN = 64;
};

struct Output {
  std::ostringstream text;
  json doc = json::object();
  bool failed = false;
};

TreeMode treeMode(const Options& o) { return o.mode == "planar" ? TreeMode::Planar : TreeMode::Symmetric; }

int corollaBound(const Options& o) { return o.corollas > 0 ? o.corollas : std::min(o.truncation + 1, 4); }

std::string readFile(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw InputError("cannot read '" + path + "'");
  std::stringstream s;
  s << in.rdbuf();
  return s.str();
}

json parseJson(const std::string& text, const std::string& what) {
  try {
    return json::parse(text);
  } catch (const json::parse_error& e) {
    throw InputError(what + ": " + e.what());
  }
}

/// Inline JSON or, with a leading '@', a file path.
json documentArgument(const std::string& value, const std::string& what) {
  if (value.empty()) throw InputError("missing " + what);
  return parseJson(value[0] == '@' ? readFile(value.substr(1)) : value, what);
}

FiniteGroup groupNamed(const std::string& name) {
  if (name == "Z2") return FiniteGroup::cyclic(2);
  if (name == "Z3") return FiniteGroup::cyclic(3);
  if (name == "S3") return FiniteGroup::symmetric3();
  throw InputError("unknown group '" + name + "'");
}

QuotientKind quotientKind(const std::string& name) {
  if (name == "normalized") return QuotientKind::Normalized;
  if (name == "commutator") return QuotientKind::Commutator;
  if (name == "central") return QuotientKind::Central;
  throw InputError("unknown quotient '" + name + "'");
}

/// A coalgebra instance, with a bialgebra when the name has one.
struct Instance {
  CoalgebraSpec coalgebra;
  std::optional<BialgebraSpec> bialgebra;
  std::optional<QuotientSpec> quotient;
  std::function<BasisKey(const std::string&)> parseKey;
};

BasisKey findByRendering(const CoalgebraSpec& c, const std::string& text) {
  for (const auto& k : c.keys())
    if (render(k) == text) return k;
  throw InputError("no key '" + text + "' in " + c.id + " at this truncation");
}

BialgebraSpec rawBialgebra(const Options& o) {
  if (o.bialgebra == "trees") return buildTreeBialgebra(o.truncation, treeMode(o));
  if (o.bialgebra == "graphs") return buildGraphBialgebra(corollaBound(o), o.truncation, false);
  if (o.bialgebra == "connected-graphs") return buildGraphBialgebra(corollaBound(o), o.truncation, true);
  if (o.bialgebra.rfind("double-", 0) == 0) return buildDrinfeldDouble(groupNamed(o.bialgebra.substr(7)));
  if (o.bialgebra.rfind("dual-double-", 0) == 0) return buildDrinfeldDoubleDual(groupNamed(o.bialgebra.substr(12)));
  throw InputError("'" + o.bialgebra + "' is not a bialgebra");
}

Instance makeInstance(const Options& o, bool needBialgebra) {
  Instance inst;
  const bool isBialgebra = o.bialgebra == "trees" || o.bialgebra == "graphs" || o.bialgebra == "connected-graphs" ||
                           o.bialgebra.rfind("double-", 0) == 0 || o.bialgebra.rfind("dual-double-", 0) == 0;
  if (isBialgebra) {
    BialgebraSpec b = rawBialgebra(o);
    if (o.quotient != "none") {
      inst.quotient = makeQuotient(b, quotientKind(o.quotient));
      b = inst.quotient->quotient;
    }
    inst.bialgebra = b;
    inst.coalgebra = b.coalgebra;
  } else if (needBialgebra) {
    throw InputError("'" + o.bialgebra + "' is not a bialgebra");
  } else if (o.bialgebra == "path") {
    inst.coalgebra = buildPathCoalgebra(completeQuiver(2), o.truncation);
  } else if (o.bialgebra == "chain") {
    inst.coalgebra = buildIncidenceCoalgebra(chainPoset(o.truncation));
  } else if (o.bialgebra == "boolean") {
    inst.coalgebra = buildIncidenceCoalgebra(booleanLattice(3));
  } else if (o.bialgebra == "goncharov") {
    inst.coalgebra = buildGoncharovCoalgebra({"a", "b", "c"}, o.truncation);
  } else {
    throw InputError("unknown instance '" + o.bialgebra + "'");
  }

  const CoalgebraSpec c = inst.coalgebra;
  const std::optional<QuotientSpec> q = inst.quotient;
  const std::string name = o.bialgebra;
  const TreeMode mode = treeMode(o);
  inst.parseKey = [c, q, name, mode](const std::string& text) {
    BasisKey k;
    if (name == "trees")
      k = treeCanonicalForm(parseForest(text), mode);
    else if (name == "graphs" || name == "connected-graphs")
      k = parseGraphClass(text);
    else
      return findByRendering(c, text);
    if (q) k = q->normalForm(k);
    return k;
  };
  return inst;
}

KeyList selectedKeys(const Options& o, const Instance& inst) {
  if (o.keys.empty()) return keysUpTo(inst.coalgebra, o.truncation);
  KeyList out;
  for (const auto& text : o.keys) out.push_back(inst.parseKey(text));
  return out;
}

bool isLaurent(const std::string& algebraId) { return algebraId == laurentAlgebra().id; }

std::string renderValue(const FormalSum& v, bool laurent) { return laurent ? renderLaurent(v) : render(v); }

json termsJson(const TensorSum& t) {
  json out = json::array();
  for (const auto& [pair, c] : t)
    out.push_back({{"left", render(pair.first)}, {"right", render(pair.second)}, {"coefficient", c.str()}});
  return out;
}

void reportJson(Output& out, const ValidationReport& r) {
  json failures = json::array();
  for (const auto& f : r.failures) failures.push_back({{"key", f.key}, {"message", f.message}});
  out.doc["checks"].push_back(
      {{"subject", r.subject}, {"checked", r.checked}, {"passed", r.passed()}, {"failures", failures}});
  out.text << (r.passed() ? "PASS " : "FAIL ") << r.summary() << "\n";
  if (!r.passed()) out.failed = true;
}

// Subcommands.

void runCoproduct(const Options& o, Output& out) {
  TensorSum t;
  BasisKey input;
  if (!o.tree.empty()) {
    Forest f = parseForest(o.tree);
    input = treeCanonicalForm(f, treeMode(o));
    t = treeCoproduct(f, treeMode(o));
  } else if (!o.graph.empty()) {
    input = parseGraphClass(o.graph);
    t = graphCoproduct(input, o.connected);
  } else if (!o.graphDoc.empty()) {
    GraphMorphism m = GraphMorphism::fromJson(documentArgument(o.graphDoc, "graph document"));
    input = graphClassKey(m, o.connected);
    t = graphCoproduct(m, o.connected);
  } else {
    Instance inst = makeInstance(o, false);
    if (o.keys.size() != 1) throw InputError("coproduct needs --tree, --graph, --graph-doc or one --key");
    input = inst.parseKey(o.keys.front());
    t = inst.coalgebra.delta(input);
  }
  out.text << render(t) << "\n";
  out.doc = {{"input", render(input)}, {"coproduct", termsJson(t)}};
}

void runAntipode(const Options& o, Output& out) {
  Instance inst = makeInstance(o, true);
  const BialgebraSpec& b = *inst.bialgebra;
  InverseMethod method = InverseMethod::Auto;
  if (o.method == "takeuchi")
    method = InverseMethod::Takeuchi;
  else if (o.method == "recursive")
    method = InverseMethod::Recursive;
  else if (o.method == "linear")
    method = InverseMethod::LinearSolve;
  else if (o.method != "auto")
    throw InputError("unknown method '" + o.method + "'");
  ConvMap s = antipode(b, method, o.maxN);
  out.doc["bialgebra"] = b.id;
  out.doc["antipode"] = json::array();
  for (const auto& k : selectedKeys(o, inst)) {
    FormalSum v = s(k);
    out.text << "S(" << render(k) << ") = " << render(v) << "\n";
    out.doc["antipode"].push_back({{"key", render(k)}, {"value", render(v)}});
  }
}

CharacterSpec characterOption(const Options& o) {
  return CharacterSpec::fromJson(documentArgument(o.character, "character document"));
}

void runInverse(const Options& o, Output& out) {
  Instance inst = makeInstance(o, true);
  const BialgebraSpec& b = *inst.bialgebra;
  CharacterSpec phi = characterOption(o);
  AlgebraSpec a = phi.targetAlgebra();
  ConvMap f = characterMap(phi, b);
  ConvMap inv = invertCharacter(f, b, a, o.maxN);
  const bool laurent = isLaurent(a.id);
  out.doc["bialgebra"] = b.id;
  out.doc["inverse"] = json::array();
  for (const auto& k : selectedKeys(o, inst)) {
    FormalSum v = inv(k);
    out.text << render(k) << " | " << renderValue(f(k), laurent) << " | " << renderValue(v, laurent) << "\n";
    out.doc["inverse"].push_back(
        {{"key", render(k)}, {"value", renderValue(f(k), laurent)}, {"inverse", renderValue(v, laurent)}});
  }
}

void runBirkhoff(const Options& o, Output& out) {
  Instance inst = makeInstance(o, true);
  const BialgebraSpec& b = *inst.bialgebra;
  CharacterSpec phi = characterOption(o);
  BirkhoffPair pair = birkhoff(phi, b, polePartOperator(), o.truncation);
  out.doc["bialgebra"] = b.id;
  out.doc["factorization"] = json::array();
  out.text << "key | phi_minus | phi_plus\n";
  for (const auto& k : selectedKeys(o, inst)) {
    std::string m = renderLaurent(pair.minus(k)), p = renderLaurent(pair.plus(k));
    out.text << render(k) << " | " << m << " | " << p << "\n";
    out.doc["factorization"].push_back({{"key", render(k)}, {"minus", m}, {"plus", p}});
  }
  reportJson(out, pair.report);
}

void runQuotient(const Options& o, Output& out) {
  Options raw = o;
  raw.quotient = "none";
  Instance inst = makeInstance(raw, true);
  QuotientSpec q = makeQuotient(*inst.bialgebra, quotientKind(o.kind));
  out.doc["quotient"] = q.quotient.id;
  out.doc["keys"] = q.quotient.coalgebra.keys().size();
  out.text << q.quotient.id << ": " << q.quotient.coalgebra.keys().size() << " keys\n";
  out.doc["normalForms"] = json::array();
  for (const auto& text : o.keys) {
    BasisKey k = inst.parseKey(text);
    BasisKey n = q.normalForm(k);
    TensorSum d = q.quotient.coalgebra.delta(n);
    out.text << render(k) << " -> " << render(n) << "\n  Delta = " << render(d) << "\n";
    out.doc["normalForms"].push_back({{"key", render(k)}, {"normalForm", render(n)}, {"coproduct", termsJson(d)}});
  }
  reportJson(out, checkCoideal(q, o.truncation, 200, o.seed));
}

void runQDeform(const Options& o, Output& out) {
  Instance inst = makeInstance(o, true);
  QDeformed d = qDeform(*inst.bialgebra, {o.laurent, o.single});
  out.doc["deformed"] = d.deformed.id;
  out.doc["quotient"] = d.quotient.id;
  out.text << d.quotient.id << ": " << d.quotient.coalgebra.keys().size() << " keys\n";
  KeyList keys;
  for (const auto& k : o.keys.empty() ? keysUpTo(inst.coalgebra, o.truncation) : selectedKeys(o, inst))
    keys.push_back(d.fromParent(k));
  std::sort(keys.begin(), keys.end());
  keys.erase(std::unique(keys.begin(), keys.end()), keys.end());
  out.doc["keys"] = json::array();
  std::optional<ConvMap> s;
  if (o.laurent) s = antipode(d.quotient, InverseMethod::Auto, o.maxN);
  for (const auto& k : keys) {
    json row = {{"key", render(k)}, {"coproduct", termsJson(d.quotient.coalgebra.delta(k))}};
    out.text << render(k) << "\n  Delta = " << render(d.quotient.coalgebra.delta(k)) << "\n";
    if (s) {
      row["antipode"] = render((*s)(k));
      out.text << "  S = " << render((*s)(k)) << "\n";
    }
    out.doc["keys"].push_back(row);
  }
  if (s) reportJson(out, validateAntipode(d.quotient, *s, o.truncation));
}

void runCoaction(const Options& o, Output& out) {
  Instance inst = makeInstance(o, true);
  CoactionMap co = brownCoaction(*inst.bialgebra, {o.laurent, o.single});
  out.doc["coaction"] = json::array();
  for (const auto& text : o.keys) {
    BasisKey k = co.deformation.fromParent(inst.parseKey(text));
    TensorSum t = co(k);
    out.text << render(k) << " -> " << render(t) << "\n";
    out.doc["coaction"].push_back({{"key", render(k)}, {"value", termsJson(t)}});
  }
  reportJson(out, checkCoaction(co, o.truncation));
}

void runFiltration(const Options& o, Output& out) {
  Instance inst = makeInstance(o, false);
  FiltrationTable table = computeFiltration(inst.coalgebra, o.maxN, o.truncation);
  out.doc["coalgebra"] = inst.coalgebra.id;
  out.doc["degrees"] = json::array();
  for (const auto& [k, d] : table.degree) {
    std::string deg = d ? std::to_string(*d) : "not reached";
    out.text << render(k) << " : " << deg << "\n";
    out.doc["degrees"].push_back({{"key", render(k)}, {"degree", d ? json(*d) : json(nullptr)}});
  }
  out.text << "histogram:";
  json hist = json::object();
  for (const auto& [d, n] : table.histogram()) {
    out.text << " " << d << "->" << n;
    hist[std::to_string(d)] = n;
  }
  out.text << "\n";
  out.doc["histogram"] = hist;
  reportJson(out, checkQTLaw(inst.coalgebra, table));
}

void runStructure(const Options& o, Output& out) {
  Instance inst = makeInstance(o, false);
  StructureReport r = analyzeStructure(inst.coalgebra, o.truncation);
  out.doc["coalgebra"] = inst.coalgebra.id;
  json gl = json::array(), sgl = json::array(), skew = json::array();
  out.text << "grouplikes:";
  for (const auto& g : r.sets.grouplikes) {
    out.text << " " << render(g);
    gl.push_back(render(g));
  }
  out.text << "\nsemigrouplikes:";
  for (const auto& g : r.sets.semigrouplikes) {
    out.text << " " << render(g);
    sgl.push_back(render(g));
  }
  out.text << "\n";
  for (const auto& [flanks, keys] : r.skewPrimitives) {
    if (keys.empty()) continue;
    out.text << "skew primitives (" << render(flanks.first) << ", " << render(flanks.second) << "):";
    json list = json::array();
    for (const auto& k : keys) {
      out.text << " " << render(k);
      list.push_back(render(k));
    }
    out.text << "\n";
    skew.push_back({{"g", render(flanks.first)}, {"h", render(flanks.second)}, {"keys", list}});
  }
  PathlikeVerdict v = verifyPathlike(inst.coalgebra, o.maxN, o.truncation);
  out.text << "pathlike: " << (v.isPathlike ? "yes" : "no") << "\n";
  for (const auto& w : v.witnesses) out.text << "  " << w << "\n";
  out.doc["grouplikes"] = gl;
  out.doc["semigrouplikes"] = sgl;
  out.doc["skewPrimitives"] = skew;
  out.doc["pathlike"] = v.isPathlike;
  out.doc["witnesses"] = v.witnesses;
}

void runCheck(const Options& o, Output& out) {
  const std::set<std::string> suites{"all", "coalgebra", "bialgebra", "antipode", "inverse", "rota-baxter",
                                     "birkhoff", "coaction", "structure"};
  if (!suites.count(o.suite)) throw InputError("unknown suite '" + o.suite + "'");
  auto want = [&](const std::string& s) { return o.suite == "all" || o.suite == s; };
  const int n = o.truncation;
  const int edges = std::min(n, 3);
  out.doc["checks"] = json::array();

  if (want("coalgebra")) {
    reportJson(out, validateCoalgebra(buildPathCoalgebra(completeQuiver(2), n + 2), n + 2));
    reportJson(out, validateCoalgebra(buildIncidenceCoalgebra(chainPoset(5)), 5));
    reportJson(out, validateCoalgebra(buildIncidenceCoalgebra(booleanLattice(3)), 3));
    reportJson(out, validateCoalgebra(buildGoncharovCoalgebra({"a", "b", "c"}, n), n));
    for (auto mode : {TreeMode::Planar, TreeMode::Symmetric})
      reportJson(out, validateCoalgebra(buildTreeBialgebra(n, mode).coalgebra, n));
    for (bool connected : {true, false})
      reportJson(out, validateCoalgebra(buildGraphBialgebra(3, edges, connected).coalgebra, 2 * edges));
  }
  if (want("bialgebra")) {
    for (auto mode : {TreeMode::Planar, TreeMode::Symmetric})
      reportJson(out, validateBialgebra(buildTreeBialgebra(n, mode), n, 4000, o.seed));
    reportJson(out, validateBialgebra(buildGraphBialgebra(3, edges, true), edges, 4000, o.seed));
    reportJson(out, validateBialgebra(buildGraphBialgebra(3, edges, false), edges, 4000, o.seed));
  }
  if (want("antipode")) {
    auto q = normalizedQuotient(buildTreeBialgebra(n, TreeMode::Symmetric));
    reportJson(out, validateAntipode(q.quotient, antipode(q.quotient), n));
    auto g = normalizedQuotient(buildGraphBialgebra(3, edges, true));
    reportJson(out, validateAntipode(g.quotient, antipode(g.quotient), 2 * edges));
    for (const auto& group : {FiniteGroup::cyclic(2), FiniteGroup::cyclic(3), FiniteGroup::symmetric3()}) {
      auto d = buildDrinfeldDouble(group);
      reportJson(out, validateAntipode(d, antipode(d), 1));
    }
    auto dq = qDeform(buildTreeBialgebra(n, TreeMode::Symmetric), {true, true});
    reportJson(out, validateAntipode(dq.quotient, antipode(dq.quotient), n));
  }
  if (want("inverse")) {
    auto b = buildTreeBialgebra(n, TreeMode::Symmetric);
    auto phi = characterMap(CharacterSpec::fromJson(json::parse(R"({"rules":{"vertex":"z^-1","grouplike":"z"}})")), b);
    reportJson(out, validateInverse(phi, invertCharacter(phi, b, laurentAlgebra()), b.coalgebra, laurentAlgebra(), n));
  }
  if (want("rota-baxter")) {
    reportJson(out, checkRotaBaxter(polePartOperator(), randomLaurentPairs(500, o.seed)));
    reportJson(out, atkinsonSplit(polePartOperator(), randomLaurentPairs(200, o.seed)).report);
  }
  if (want("birkhoff")) {
    auto q = normalizedQuotient(buildTreeBialgebra(n, TreeMode::Symmetric));
    auto phi = CharacterSpec::fromJson(json::parse(R"({"rules":{"vertex":"z^-1","grouplike":"1"}})"));
    reportJson(out, birkhoff(phi, q.quotient, polePartOperator(), n).report);
  }
  if (want("coaction")) reportJson(out, checkCoaction(brownCoaction(buildTreeBialgebra(n, TreeMode::Symmetric)), n));
  if (want("structure")) {
    auto c = buildPathCoalgebra(completeQuiver(2), n + 2);
    ValidationReport r;
    r.subject = "pathlike verdicts";
    for (const auto& inst : {c, buildIncidenceCoalgebra(chainPoset(5)), buildTreeBialgebra(n, TreeMode::Symmetric).coalgebra}) {
      ++r.checked;
      if (!verifyPathlike(inst, o.maxN, n).isPathlike) r.fail(inst.id, "not pathlike");
    }
    reportJson(out, r);
  }
  std::size_t passed = 0, total = out.doc["checks"].size();
  for (const auto& c : out.doc["checks"])
    if (c["passed"].get<bool>()) ++passed;
  out.text << passed << "/" << total << " checks passed\n";
  out.doc["passed"] = passed;
  out.doc["total"] = total;
}

void addKeyOptions(CLI::App* sub, Options& o) {
  // A string callback per occurrence keeps graph literals such as "[2,3;0-1]"
  // from being read as bracketed lists.
  sub->add_option_function<std::string>(
         "--key", [&o](const std::string& k) { o.keys.push_back(k); },
         "Basis key literal (repeatable); default all keys up to the truncation")
      ->multi_option_policy(CLI::MultiOptionPolicy::TakeAll)
      ->trigger_on_parse();
}

void addInstanceOptions(CLI::App* sub, Options& o, bool quotient) {
  sub->add_option("--bialgebra", o.bialgebra,
                  "trees | graphs | connected-graphs | double-G | dual-double-G (G in Z2, Z3, S3); "
                  "filtration and structure also take path | chain | boolean | goncharov");
  sub->add_option("--corollas", o.corollas, "Corolla bound for graph classes (default min(truncation+1, 4))");
  if (quotient)
    sub->add_option("--quotient", o.quotient, "none | normalized | commutator | central")
        ->check(CLI::IsMember({"none", "normalized", "commutator", "central"}));
}

}  // namespace

int main(int argc, char** argv) {
  Options o;
  CLI::App app{"Exact computations in combinatorial bialgebras and Hopf algebras", "hopfcalc"};
  app.require_subcommand(1, 1);
  app.fallthrough();
  app.add_option("--format", o.format, "Output format")->check(CLI::IsMember({"text", "json"}));
  app.add_option("--seed", o.seed, "Seed for randomized checks");
  app.add_option("--mode", o.mode, "Tree mode")->check(CLI::IsMember({"planar", "symmetric"}));
  app.add_option("--truncation", o.truncation, "Degree truncation")->check(CLI::Range(0, 12));
  app.add_option("--max-n", o.maxN, "Filtration depth bound")->check(CLI::Range(1, 1024));

  auto* coproductCmd = app.add_subcommand("coproduct", "Coproduct of a tree, graph class or key");
  coproductCmd->add_option("--tree", o.tree, "Forest literal");
  coproductCmd->add_option("--graph", o.graph, "Graph class literal");
  coproductCmd->add_option("--graph-doc", o.graphDoc, "Graph morphism document, inline or @file");
  coproductCmd->add_flag("--connected", o.connected, "Connected-graph coproduct");
  addInstanceOptions(coproductCmd, o, true);
  addKeyOptions(coproductCmd, o);

  auto* antipodeCmd = app.add_subcommand("antipode", "Antipode on the keys of a bialgebra");
  addInstanceOptions(antipodeCmd, o, true);
  addKeyOptions(antipodeCmd, o);
  antipodeCmd->add_option("--method", o.method, "auto | takeuchi | recursive | linear");

  auto* inverseCmd = app.add_subcommand("inverse", "Convolution inverse of a character");
  addInstanceOptions(inverseCmd, o, true);
  addKeyOptions(inverseCmd, o);
  inverseCmd->add_option("--character", o.character, "Character document, inline or @file")->required();

  auto* birkhoffCmd = app.add_subcommand("birkhoff", "Birkhoff factorization along the pole part");
  addInstanceOptions(birkhoffCmd, o, true);
  addKeyOptions(birkhoffCmd, o);
  birkhoffCmd->add_option("--character", o.character, "Character document, inline or @file")->required();

  auto* quotientCmd = app.add_subcommand("quotient", "Quotient bialgebra and normal forms");
  addInstanceOptions(quotientCmd, o, false);
  addKeyOptions(quotientCmd, o);
  quotientCmd->add_option("--kind", o.kind, "normalized | commutator | central")
      ->check(CLI::IsMember({"normalized", "commutator", "central"}));

  auto* qdeformCmd = app.add_subcommand("qdeform", "Deformation by central grouplike parameters");
  addInstanceOptions(qdeformCmd, o, true);
  addKeyOptions(qdeformCmd, o);
  qdeformCmd->add_flag("--laurent", o.laurent, "Adjoin inverses and compute the antipode");
  qdeformCmd->add_flag("--single", o.single, "Collapse to one parameter q");

  auto* coactionCmd = app.add_subcommand("coaction", "Coaction on the deformation");
  addInstanceOptions(coactionCmd, o, true);
  addKeyOptions(coactionCmd, o);
  coactionCmd->add_flag("--laurent", o.laurent, "Adjoin inverses");
  coactionCmd->add_flag("--single", o.single, "Collapse to one parameter q");

  auto* filtrationCmd = app.add_subcommand("filtration", "Filtration degrees and the QT law");
  addInstanceOptions(filtrationCmd, o, true);

  auto* structureCmd = app.add_subcommand("structure", "Grouplikes, skew primitives and the pathlike verdict");
  addInstanceOptions(structureCmd, o, true);

  auto* checkCmd = app.add_subcommand("check", "Property suites");
  checkCmd->add_option("--suite", o.suite,
                       "all | coalgebra | bialgebra | antipode | inverse | rota-baxter | birkhoff | coaction | structure");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    if (e.get_exit_code() == 0) return app.exit(e);
    std::cerr << "error: " << e.what() << "\n" << app.help();
    return 2;
  }

  Output out;
  try {
    const auto* sub = app.get_subcommands().front();
    const std::string name = sub->get_name();
    if (name == "coproduct") runCoproduct(o, out);
    if (name == "antipode") runAntipode(o, out);
    if (name == "inverse") runInverse(o, out);
    if (name == "birkhoff") runBirkhoff(o, out);
    if (name == "quotient") runQuotient(o, out);
    if (name == "qdeform") runQDeform(o, out);
    if (name == "coaction") runCoaction(o, out);
    if (name == "filtration") runFiltration(o, out);
    if (name == "structure") runStructure(o, out);
    if (name == "check") runCheck(o, out);
  } catch (const ParseError& e) {
    std::cerr << "parse error: " << e.what() << "\n";
    return 2;
  } catch (const InputError& e) {
    std::cerr << "input error: " << e.what() << "\n";
    return 2;
  } catch (const ConfigurationError& e) {
    std::cerr << "input error: " << e.what() << "\n";
    return 2;
  } catch (const MathError& e) {
    std::cerr << "math error: " << e.what() << "\n";
    return 1;
  } catch (const PreconditionError& e) {
    std::cerr << "math error: " << e.what() << "\n";
    return 1;
  } catch (const UnsupportedError& e) {
    std::cerr << "math error: " << e.what() << "\n";
    return 1;
  }

  if (o.format == "json")
    std::cout << out.doc.dump(2) << "\n";
  else
    std::cout << out.text.str();
  return out.failed ? 1 : 0;
}
