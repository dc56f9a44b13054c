#include <gtest/gtest.h>

#include <random>

#include "criticut/formula.hpp"
#include "criticut/graph_io.hpp"
#include "oracle.hpp"

namespace criticut {
namespace {

using testing::data_path;

const char* kGoldenFormula =
    "c1 & ( d & ( ( ( a & s ) & ( b & s ) ) | ( ( b & s ) & ( c & s ) ) ) )";

Formula golden() {
  return form(add_artificial_source(load_graph(data_path("listing1.json"))), "c1");
}

TEST(Formula, GoldenExampleText) {
  EXPECT_EQ(to_string(golden()), kGoldenFormula);
  EXPECT_EQ(to_string(negate(golden())), std::string("~( ") + kGoldenFormula + " )");
}

TEST(Formula, GoldenExampleEvaluation) {
  const Formula f = golden();
  Assignment all;
  for (const auto& id : atoms_of(f)) all[id] = true;
  EXPECT_TRUE(evaluate(f, all));
  Assignment ac = all;
  ac["a"] = ac["c"] = false;
  EXPECT_FALSE(evaluate(f, ac));
  Assignment c = all;
  c["c"] = false;
  EXPECT_TRUE(evaluate(f, c));
}

TEST(Formula, EvaluateNamesMissingAtom) {
  try {
    evaluate(golden(), {{"c1", true}});
    FAIL();
  } catch (const Error& e) {
    EXPECT_NE(std::string(e.what()).find("\""), std::string::npos);
  }
}

TEST(Formula, AtomsInFirstAppearanceOrder) {
  EXPECT_EQ(atoms_of(golden()), (std::vector<std::string>{"c1", "d", "a", "s", "b", "c"}));
}

TEST(Formula, MultiSentenceShapes) {
  const AndOrGraph g = AndOrGraph({{"p", NodeKind::sensor, Cost::parse("1")},
                                   {"q", NodeKind::sensor, Cost::parse("1")}},
                                  {}, "p");
  EXPECT_EQ(get_multi_sentence(g, {}, Formula::Kind::conjunction).kind(),
            Formula::Kind::constant_true);
  const std::vector<std::string> one = {"q"};
  EXPECT_EQ(get_multi_sentence(g, one, Formula::Kind::disjunction), Formula::atom("q"));
  const std::vector<std::string> two = {"p", "q"};
  EXPECT_EQ(to_string(get_multi_sentence(g, two, Formula::Kind::conjunction)), "p & q");
}

TEST(Formula, IsolatedNodeIsAtom) {
  const AndOrGraph g({{"t", NodeKind::actuator, Cost::parse("1")}}, {}, "t");
  EXPECT_EQ(form(g, "t"), Formula::atom("t"));
}

TEST(Formula, NonAtomicTargetThrows) {
  const AndOrGraph g = add_artificial_source(load_graph(data_path("listing1.json")));
  EXPECT_THROW(form(g, "or-d"), Error);
}

TEST(Formula, CycleExpandsEachLoopNodeOncePerPath) {
  const AndOrGraph g = add_artificial_source(load_graph(data_path("cycle.json")));
  const Formula f = form(g, "c1");
  // Predecessors in id order: or-a lists c before s1.
  EXPECT_EQ(to_string(f),
            "c1 & ( d & ( ( ( a & ( ( c & b ) | s1 ) ) & ( b & ( a & ( c | s1 ) ) ) ) | "
            "( ( b & ( a & ( c | s1 ) ) ) & ( c & ( b & ( a & s1 ) ) ) ) ) )");
}

TEST(Formula, TerminatesOnDenseCycles) {
  std::vector<Node> nodes;
  std::vector<Edge> edges;
  const int k = 6;
  for (int i = 0; i < k; ++i) {
    nodes.push_back({"n" + std::to_string(i), NodeKind::agent, Cost::parse("1")});
    nodes.push_back({"g" + std::to_string(i), NodeKind::or_gate, std::nullopt});
    edges.push_back({"g" + std::to_string(i), "n" + std::to_string(i)});
  }
  for (int i = 0; i < k; ++i)
    for (int j = 0; j < k; ++j)
      if (i != j) edges.push_back({"n" + std::to_string(j), "g" + std::to_string(i)});
  const AndOrGraph g(std::move(nodes), std::move(edges), "n0");
  const Formula f = form(g, "n0");
  EXPECT_EQ(atoms_of(f).size(), static_cast<std::size_t>(k));
}

TEST(Formula, MonotoneOnAcyclicGraphs) {
  std::mt19937_64 rng(11);
  for (int iter = 0; iter < 50; ++iter) {
    const AndOrGraph g = add_artificial_source(testing::small_graph(rng(), {}));
    const Formula f = form(g, g.target());
    const auto atoms = atoms_of(f);
    Assignment a;
    for (const auto& id : atoms) a[id] = (rng() & 3) != 0;
    if (evaluate(f, a)) continue;
    for (const auto& id : atoms) {
      if (a[id]) {
        a[id] = false;
        EXPECT_FALSE(evaluate(f, a));
        a[id] = true;
      }
    }
  }
}

TEST(Formula, BackwardReachableAtomsAppear) {
  std::mt19937_64 rng(5);
  for (int iter = 0; iter < 50; ++iter) {
    const AndOrGraph g = add_artificial_source(testing::small_graph(rng(), {}));
    const auto atoms = atoms_of(form(g, g.target()));
    // Generated graphs are grown backwards from the target: every node reaches it.
    std::size_t atomic = 0;
    for (const Node& n : g.nodes()) atomic += is_atomic(n.kind) ? 1 : 0;
    EXPECT_EQ(atoms.size(), atomic);
  }
}

}  // namespace
}  // namespace criticut
