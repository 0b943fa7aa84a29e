// Acceptance gate: one line per criterion, exit status 1 if any fails.

#include <chrono>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <functional>
#include <iostream>
#include <random>
#include <sstream>
#include <sys/wait.h>

#include "hopf/constructions.hpp"
#include "hopf/convolution.hpp"
#include "hopf/errors.hpp"
#include "hopf/gallery.hpp"
#include "hopf/graphs.hpp"
#include "hopf/renormalization.hpp"
#include "hopf/structure.hpp"
#include "hopf/trees.hpp"

using namespace hopf;
namespace fs = std::filesystem;

namespace {

// Every comparison is over exact rationals. The tolerance is pinned at zero:
// a check passes only when both sides are equal as formal sums.
constexpr int kExactTolerance = 0;

// Truncations and sample sizes.
constexpr int kPathLength = 6;
constexpr int kWordLength = 5;
constexpr int kTreeVertices = 5;
constexpr int kGraphCorollas = 4;
constexpr int kGraphEdges = 4;
constexpr int kBialgebraTreeVertices = 4;
constexpr int kBialgebraGraphCorollas = 3;
constexpr int kBialgebraGraphEdges = 3;
constexpr int kQuotientTreeVertices = 6;
constexpr int kQuotientGraphCorollas = 4;
constexpr int kQuotientGraphEdges = 3;
constexpr int kDeformedTruncation = 4;
constexpr int kClosedFormArity = 4;
constexpr std::size_t kRotaBaxterPairs = 500;
constexpr std::size_t kGateSamples = 100;
constexpr int kCoactionVertices = 4;
constexpr std::size_t kMinGoldenCases = 20;

struct Outcome {
  bool passed = true;
  std::ostringstream detail;

  void require(bool ok, const std::string& what) {
    if (!ok) {
      passed = false;
      detail << " [failed: " << what << "]";
    }
  }
  void note(const std::string& s) { detail << " " << s << ";"; }
  void report(const ValidationReport& r) {
    require(r.passed(), r.summary() + (r.failures.empty() ? "" : ": " + r.failures.front().key + ": " +
                                                                     r.failures.front().message));
    if (r.passed()) note(r.subject + " (" + std::to_string(r.checked) + ")");
  }
};

Quiver lineQuiver() { return Quiver{{"u", "v", "w"}, {{"a", "u", "v"}, {"b", "v", "w"}}}; }

Quiver cycleQuiver() {
  return Quiver{{"u", "v", "w"}, {{"a", "u", "v"}, {"b", "v", "w"}, {"c", "w", "u"}, {"l", "v", "v"}}};
}

int maxGrading(const CoalgebraSpec& c) {
  int m = 0;
  for (const auto& k : c.keys()) m = std::max(m, c.grading(k));
  return m;
}

BasisKey forest(const std::string& literal, TreeMode mode = TreeMode::Symmetric) {
  return treeCanonicalForm(parseForest(literal), mode);
}

CharacterSpec character(const std::string& doc) { return CharacterSpec::fromJson(nlohmann::json::parse(doc)); }

BasisKey plain(const BasisKey& base) { return deformedKey(base, {}); }

// Criteria.

void coalgebraLaws(Outcome& o) {
  for (const auto& q : {completeQuiver(2), lineQuiver(), cycleQuiver()})
    o.report(validateCoalgebra(buildPathCoalgebra(q, kPathLength), kPathLength));
  o.report(validateCoalgebra(buildIncidenceCoalgebra(chainPoset(4)), 5));
  o.report(validateCoalgebra(buildIncidenceCoalgebra(booleanLattice(3)), 3));
  o.report(validateCoalgebra(buildGoncharovCoalgebra({"a", "b", "c"}, kWordLength), kWordLength));
  for (auto mode : {TreeMode::Planar, TreeMode::Symmetric}) {
    auto b = buildTreeBialgebra(kTreeVertices, mode, kTreeVertices);
    o.report(validateCoalgebra(b.coalgebra, kTreeVertices));
  }
  for (bool connected : {true, false}) {
    auto b = buildGraphBialgebra(kGraphCorollas, kGraphEdges, connected);
    o.report(validateCoalgebra(b.coalgebra, maxGrading(b.coalgebra)));
  }
}

void bialgebraCompatibility(Outcome& o) {
  for (auto mode : {TreeMode::Planar, TreeMode::Symmetric}) {
    auto b = buildTreeBialgebra(kBialgebraTreeVertices, mode, kBialgebraTreeVertices);
    o.report(validateBialgebra(b, kBialgebraTreeVertices, std::size_t(1) << 40));
  }
  for (bool connected : {true, false}) {
    auto b = buildGraphBialgebra(kBialgebraGraphCorollas, kBialgebraGraphEdges, connected);
    o.report(validateBialgebra(b, maxGrading(b.coalgebra), std::size_t(1) << 40));
  }
  // [τ₁]·[τ₁]: the middle term carries multiplicity 2.
  TensorSum square = treeCoproduct(parseForest("v(.),v(.)"), TreeMode::Symmetric);
  o.require(square.coefficient({forest("v(.),|"), forest("v(.),|")}) == Scalar(2), "tree square multiplicity 2");
  // The same case for graphs: Δ(e·e) = Δ(e)Δ(e) holds with multiplicities
  // and fails when each class pair is counted once.
  BasisKey e = parseGraphClass("[2,2;0-1]");
  for (bool connected : {true, false}) {
    BasisKey ee = parseGraphClass("[2,2;0-1][2,2;0-1]");
    auto rhs = multiply(buildGraphBialgebra(4, 2, connected).algebra, graphCoproduct(e, connected),
                        graphCoproduct(e, connected));
    o.require(graphCoproduct(ee, connected) == rhs, "graph square with multiplicities");
    auto channel = multiply(buildGraphBialgebra(4, 2, connected).algebra,
                            graphCoproduct(e, connected, GraphCounting::Channel),
                            graphCoproduct(e, connected, GraphCounting::Channel));
    o.require(graphCoproduct(ee, connected, GraphCounting::Channel) != channel,
              "channel counting should break the square");
  }
  o.note("square multiplicity case distinguishes the counting conventions");
}

void antipodeAxiom(Outcome& o) {
  auto trees = normalizedQuotient(buildTreeBialgebra(kQuotientTreeVertices, TreeMode::Symmetric));
  o.report(validateAntipode(trees.quotient, antipode(trees.quotient), kQuotientTreeVertices));
  for (bool connected : {true, false}) {
    auto graphs = normalizedQuotient(buildGraphBialgebra(kQuotientGraphCorollas, kQuotientGraphEdges, connected));
    o.report(validateAntipode(graphs.quotient, antipode(graphs.quotient), maxGrading(graphs.quotient.coalgebra)));
  }
  for (const auto& g : {FiniteGroup::cyclic(2), FiniteGroup::cyclic(3), FiniteGroup::symmetric3()}) {
    for (const auto& d : {buildDrinfeldDouble(g), buildDrinfeldDoubleDual(g)}) {
      auto s = antipode(d);
      std::size_t matched = 0;
      for (const auto& k : d.coalgebra.keys())
        if (s(k) == d.closedFormAntipode(k)) ++matched;
      o.require(matched == d.coalgebra.keys().size(), d.id + " closed form key-for-key");
      o.report(validateAntipode(d, s, 0));
    }
  }
  for (auto mode : {TreeMode::Planar, TreeMode::Symmetric}) {
    for (bool single : {true, false}) {
      auto q = qDeform(buildTreeBialgebra(kDeformedTruncation, mode), {true, single});
      o.report(validateAntipode(q.quotient, antipode(q.quotient), kDeformedTruncation));
    }
  }
  auto local = localizeCentral(buildTreeBialgebra(kDeformedTruncation, TreeMode::Symmetric));
  o.report(validateAntipode(local, antipode(local), kDeformedTruncation));
  for (bool connected : {true, false}) {
    auto q = qDeform(buildGraphBialgebra(3, kDeformedTruncation, connected), {true, true});
    o.report(validateAntipode(q.quotient, antipode(q.quotient), maxGrading(q.quotient.coalgebra)));
  }
}

void closedForms(Outcome& o) {
  int compared = 0;
  for (auto mode : {TreeMode::Planar, TreeMode::Symmetric}) {
    auto q = qDeform(buildTreeBialgebra(4, mode), {true, true});
    auto s = antipode(q.quotient);
    for (int n = 1; n <= 4; ++n, ++compared)
      o.require(s(plain(treeCanonicalForm({corollaTree(n)}, mode))) == corollaAntipode(n),
                "S(tau_" + std::to_string(n) + ")");
  }
  const int flags = 2 * kClosedFormArity;
  auto connectedSingle = qDeform(buildGraphBialgebra(2, 1, true, flags), {true, true});
  auto connectedMulti = qDeform(buildGraphBialgebra(2, 1, true, flags), {true, false});
  auto mergeSingle = qDeform(buildGraphBialgebra(2, 1, false, flags), {true, true});
  auto mergeMulti = qDeform(buildGraphBialgebra(2, 1, false, flags), {true, false});
  auto sc = antipode(connectedSingle.quotient), scm = antipode(connectedMulti.quotient);
  auto sm = antipode(mergeSingle.quotient), smm = antipode(mergeMulti.quotient);
  for (int s = 0; s <= kClosedFormArity; ++s) {
    for (int t = s; t <= kClosedFormArity; ++t) {
      std::string ar = std::to_string(s) + "," + std::to_string(t);
      o.require(sm(plain(parseGraphClass("[" + ar + ";]"))) == mergerAntipode(s, t), "merger " + ar);
      o.require(smm(plain(parseGraphClass("[" + ar + ";]"))) == mergerAntipodeMulti(s, t), "multi merger " + ar);
      compared += 2;
      if (s == 0) continue;
      std::string edge = "[" + ar + ";0-1]";
      o.require(sc(plain(parseGraphClass(edge))) == edgeContractionAntipode(s, t), "edge " + ar);
      o.require(scm(plain(parseGraphClass(edge))) == edgeContractionAntipodeMulti(s, t), "multi edge " + ar);
      compared += 2;
    }
    if (s < 2) continue;
    std::string loop = "[" + std::to_string(s) + ";0-0]";
    o.require(sc(plain(parseGraphClass(loop))) == loopContractionAntipode(s), "loop " + loop);
    o.require(scm(plain(parseGraphClass(loop))) == loopContractionAntipodeMulti(s), "multi loop " + loop);
    compared += 2;
  }
  o.note(std::to_string(compared) + " closed forms compared");
}

void seriesAgreesWithRecursion(Outcome& o) {
  struct Named {
    std::string name;
    BialgebraSpec b;
  };
  std::vector<Named> instances;
  instances.push_back({"trees/normalized",
                       normalizedQuotient(buildTreeBialgebra(kQuotientTreeVertices, TreeMode::Symmetric)).quotient});
  for (bool connected : {true, false})
    instances.push_back(
        {"graphs/normalized",
         normalizedQuotient(buildGraphBialgebra(kQuotientGraphCorollas, kQuotientGraphEdges, connected)).quotient});
  for (auto mode : {TreeMode::Planar, TreeMode::Symmetric})
    for (bool single : {true, false})
      instances.push_back({"deformed trees", qDeform(buildTreeBialgebra(kDeformedTruncation, mode), {true, single}).quotient});
  instances.push_back({"localized trees", localizeCentral(buildTreeBialgebra(kDeformedTruncation, TreeMode::Symmetric))});
  for (bool connected : {true, false})
    instances.push_back({"deformed graphs", qDeform(buildGraphBialgebra(3, kDeformedTruncation, connected), {true, true}).quotient});

  for (const auto& [name, b] : instances) {
    auto takeuchi = antipode(b, InverseMethod::Takeuchi);
    auto recursive = antipode(b, InverseMethod::Recursive);
    std::size_t agree = 0;
    for (const auto& k : b.coalgebra.keys())
      if (takeuchi(k) == recursive(k)) ++agree;
    o.require(agree == b.coalgebra.keys().size(), b.id + " series vs recursion");
    auto id = identityMap(b);
    const int top = maxGrading(b.coalgebra);
    o.report(validateInverse(id, takeuchi, b.coalgebra, b.algebra, top));
    o.report(validateInverse(id, recursive, b.coalgebra, b.algebra, top));
  }

  // The doubles have no basis grouplikes besides sums, so their keys never
  // enter the filtration; both methods must say so on every key.
  for (const auto& g : {FiniteGroup::cyclic(2), FiniteGroup::cyclic(3), FiniteGroup::symmetric3()}) {
    auto d = buildDrinfeldDouble(g);
    std::size_t both = 0, takeuchiOk = 0;
    auto takeuchi = antipode(d, InverseMethod::Takeuchi);
    auto recursive = antipode(d, InverseMethod::Recursive);
    auto linear = antipode(d, InverseMethod::LinearSolve);
    for (const auto& k : d.coalgebra.keys()) {
      std::optional<FormalSum> a, r;
      try {
        a = takeuchi(k);
      } catch (const FiltrationNotExhaustive&) {
      }
      try {
        r = recursive(k);
      } catch (const FiltrationNotExhaustive&) {
      }
      if (a.has_value() == r.has_value() && (!a || *a == *r)) ++both;
      if (a && *a == linear(k)) ++takeuchiOk;
    }
    o.require(both == d.coalgebra.keys().size(), d.id + " methods disagree");
    o.note(d.id + ": series and recursion agree on all " + std::to_string(both) + " keys (" +
           std::to_string(takeuchiOk) + " inside the filtration)");
  }
}

void grouplikeGate(Outcome& o) {
  auto b = buildTreeBialgebra(4, TreeMode::Symmetric);
  auto a = laurentAlgebra();
  auto good = characterMap(character(R"({"rules":{"vertex":"z^-1","grouplike":"z"}})"), b);
  auto inverse = invertCharacter(good, b, a);
  o.report(validateInverse(good, inverse, b.coalgebra, a, 4));
  auto bad = characterMap(character(R"({"rules":{"vertex":"z^-1","grouplike":"1 + z"}})"), b);
  bool raised = false;
  try {
    invertCharacter(bad, b, a)(forest("v(.),|"));
  } catch (const GrouplikeNotInvertible& e) {
    raised = true;
    o.note(e.what());
  }
  o.require(raised, "grouplike value 1+z must raise GrouplikeNotInvertible");

  auto normalized = character(R"({"rules":{"vertex":"2 + z^-1","vertex:2":"z^-2","grouplike":"1"}})");
  auto q = normalizedQuotient(b);
  std::mt19937_64 rng(17);
  std::size_t equal = 0;
  for (std::size_t i = 0; i < kGateSamples; ++i) {
    const auto& k = b.coalgebra.keys()[rng() % b.coalgebra.keys().size()];
    if (evalCharacter(normalized, k) == evalCharacter(normalized, q.normalForm(k))) ++equal;
  }
  o.require(equal == kGateSamples, "normalized character factors through B/I_N");
  o.note(std::to_string(equal) + "/" + std::to_string(kGateSamples) + " sampled keys factor through B/I_N");
}

void rotaBaxter(Outcome& o) {
  auto t = polePartOperator();
  auto pairs = randomLaurentPairs(kRotaBaxterPairs, 2024);
  o.report(checkRotaBaxter(t, pairs));
  for (Scalar mu : {Scalar(3), Scalar(-2), Scalar(1, 5)}) {
    auto s = scaled(t, mu);
    o.require(s.weight == t.weight * mu, "scaled weight");
    o.report(checkRotaBaxter(s, randomLaurentPairs(100, 7)));
  }
  o.report(atkinsonSplit(t, pairs).report);
  FormalSum a = parseLaurent("2z^-1 + 3");
  o.require(t(a) == parseLaurent("2z^-1") && a - t(a) == parseLaurent("3"), "split of 2z^-1 + 3");
  auto corrupted = exponentProjector({-1, 0}, Scalar(-1), "projector onto {z^-1, 1}");
  o.require(!atkinsonSplit(corrupted, randomLaurentPairs(50, 3)).report.passed(), "negative control must fail");
  o.note("negative control fails as expected");
}

void birkhoffFactorization(Outcome& o) {
  auto trees = normalizedQuotient(buildTreeBialgebra(kTreeVertices, TreeMode::Symmetric));
  auto vertex = character(R"({"target":"laurent","rules":{"vertex":"z^-1","grouplike":"1"}})");
  auto tp = birkhoff(vertex, trees.quotient, polePartOperator(), kTreeVertices);
  o.report(tp.report);
  o.require(tp.report.checked == trees.quotient.coalgebra.keys().size(), "all tree keys checked");
  o.require(tp.minus(forest("v(.)")) == zPower(-1, Scalar(-1)), "phi_-(tau_1) = -z^-1");
  o.require(tp.plus(forest("v(.)")).isZero(), "phi_+(tau_1) = 0");
  o.require(tp.minus(forest("v(v(.))")).isZero(), "phi_-(l_2) = 0");

  auto graphs = normalizedQuotient(buildGraphBialgebra(kQuotientGraphCorollas, kQuotientGraphEdges, true));
  auto edge = character(R"({"target":"laurent","rules":{"edge":"z^-1","loop":"z^-1","grouplike":"1"}})");
  auto gp = birkhoff(edge, graphs.quotient, polePartOperator(), kQuotientGraphEdges);
  o.report(gp.report);
  o.require(gp.report.checked == graphs.quotient.coalgebra.keys().size(), "all graph keys checked");
}

void structureSuite(Outcome& o) {
  auto c = buildPathCoalgebra(cycleQuiver(), 4);
  auto sets = findGrouplikes(c);
  KeyList vertices;
  for (const auto& v : cycleQuiver().vertices) vertices.push_back(vertexPathKey(v));
  std::sort(vertices.begin(), vertices.end());
  o.require(sets.grouplikes == vertices, "grouplikes are the vertices");
  std::set<BasisKey> skew, edges;
  for (const auto& g : sets.grouplikes)
    for (const auto& h : sets.grouplikes)
      for (const auto& k : findSkewPrimitives(c, g, h)) skew.insert(k);
  for (const auto& e : cycleQuiver().edges) edges.insert(pathKey({e.name}));
  o.require(skew == edges, "basis skew primitives are the length-1 paths");
  o.note(std::to_string(vertices.size()) + " grouplikes, " + std::to_string(skew.size()) + " skew primitives");

  std::vector<CoalgebraSpec> instances{
      buildPathCoalgebra(completeQuiver(2), kPathLength),
      buildPathCoalgebra(cycleQuiver(), kPathLength),
      buildIncidenceCoalgebra(chainPoset(4)),
      buildIncidenceCoalgebra(booleanLattice(3)),
      buildCategoricalCoalgebra(freeMonoidOneGenerator(5), 5),
      buildGoncharovCoalgebra({"a", "b", "c"}, 4),
      buildSetlikeCoalgebra({"x", "y"}),
      buildTreeBialgebra(4, TreeMode::Planar).coalgebra,
      buildTreeBialgebra(4, TreeMode::Symmetric).coalgebra,
      buildGraphBialgebra(3, 3, true).coalgebra,
      buildGraphBialgebra(3, 3, false).coalgebra,
  };
  std::size_t pathlike = 0;
  for (const auto& inst : instances) {
    bool ok = verifyPathlike(inst, 64, maxGrading(inst)).isPathlike;
    o.require(ok, inst.id + " pathlike");
    if (ok) ++pathlike;
  }
  o.note(std::to_string(pathlike) + "/" + std::to_string(instances.size()) + " instances pathlike");

  auto control = buildSetlikeCoalgebra({"x", "y"});
  auto counit = control.counit;
  control.counit = [counit](const BasisKey& k) { return k.payload == "y" ? Scalar(0) : counit(k); };
  o.require(!verifyPathlike(control, 0, 0).isPathlike, "negative control must not be pathlike");
  o.note("negative control rejected");
}

void coaction(Outcome& o) {
  for (auto mode : {TreeMode::Planar, TreeMode::Symmetric})
    for (bool single : {false, true})
      o.report(checkCoaction(brownCoaction(buildTreeBialgebra(kCoactionVertices, mode), {false, single}),
                             kCoactionVertices));
}

std::string runCli(const std::string& argsFile) {
  std::ifstream in(argsFile);
  std::string cmd = std::string("cd '") + GOLDEN_DIR + "' && '" + HOPFCALC_PATH + "'";
  for (std::string line; std::getline(in, line);) {
    if (line.empty()) continue;
    std::string quoted = "'";
    for (char c : line) quoted += c == '\'' ? std::string("'\\''") : std::string(1, c);
    cmd += " " + quoted + "'";
  }
  cmd += " 2>&1";
  FILE* pipe = popen(cmd.c_str(), "r");
  if (!pipe) return "popen failed";
  std::string out;
  char buffer[4096];
  while (std::size_t n = fread(buffer, 1, sizeof buffer, pipe)) out.append(buffer, n);
  int status = pclose(pipe);
  return out + "exit " + std::to_string(WIFEXITED(status) ? WEXITSTATUS(status) : -1) + "\n";
}

void cliDeterminism(Outcome& o) {
  std::vector<fs::path> cases;
  for (const auto& e : fs::directory_iterator(GOLDEN_DIR))
    if (e.path().extension() == ".args") cases.push_back(e.path());
  std::sort(cases.begin(), cases.end());
  o.require(cases.size() >= kMinGoldenCases, "at least 20 golden cases");
  std::size_t identical = 0;
  for (const auto& p : cases) {
    std::string first = runCli(p.string()), second = runCli(p.string());
    fs::path expected = p;
    expected.replace_extension(".out");
    std::ifstream in(expected, std::ios::binary);
    std::stringstream golden;
    golden << in.rdbuf();
    bool ok = first == second && first == golden.str();
    o.require(ok, p.stem().string());
    if (ok) ++identical;
  }
  o.note(std::to_string(identical) + "/" + std::to_string(cases.size()) + " golden cases byte-identical on two runs");
}

}  // namespace

int main() {
  const std::vector<std::pair<std::string, std::function<void(Outcome&)>>> criteria{
      {"coassociativity and counit laws", coalgebraLaws},
      {"bialgebra compatibility", bialgebraCompatibility},
      {"antipode axiom", antipodeAxiom},
      {"closed-form antipodes", closedForms},
      {"Takeuchi series and colored recursion agree", seriesAgreesWithRecursion},
      {"grouplike gate", grouplikeGate},
      {"Rota-Baxter and Atkinson", rotaBaxter},
      {"Birkhoff factorization", birkhoffFactorization},
      {"structure suite", structureSuite},
      {"coaction", coaction},
      {"CLI determinism", cliDeterminism},
  };
  std::cout << "tolerance: " << kExactTolerance << " (exact rational arithmetic)\n";
  bool all = true;
  for (std::size_t i = 0; i < criteria.size(); ++i) {
    Outcome o;
    auto start = std::chrono::steady_clock::now();
    try {
      criteria[i].second(o);
    } catch (const std::exception& e) {
      o.require(false, std::string("exception: ") + e.what());
    }
    double seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    char time[32];
    std::snprintf(time, sizeof time, "%.1fs", seconds);
    std::cout << "criterion " << (i + 1) << " " << (o.passed ? "PASS" : "FAIL") << " " << criteria[i].first << " ("
              << time << "):" << o.detail.str() << std::endl;
    all = all && o.passed;
  }
  return all ? 0 : 1;
}
