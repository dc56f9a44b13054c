#include <gtest/gtest.h>

#include <map>

#include "criticut/genbench.hpp"
#include "criticut/graph_io.hpp"
#include "criticut/metric.hpp"

namespace criticut {
namespace {

TEST(Composition, ParseAndValidate) {
  EXPECT_EQ(CompositionConfig::parse("60,20,20"), (CompositionConfig{60, 20, 20}));
  EXPECT_EQ(CompositionConfig::parse("80-10-10"), (CompositionConfig{80, 10, 10}));
  EXPECT_EQ((CompositionConfig{80, 10, 10}).to_string(), "80-10-10");
  EXPECT_THROW(CompositionConfig::parse("50,50,50"), Error);
  EXPECT_THROW(CompositionConfig::parse("0,50,50"), Error);
  EXPECT_THROW(CompositionConfig::parse("60,20"), Error);
  EXPECT_THROW(CompositionConfig::parse("60,20,x"), Error);
  EXPECT_THROW(CompositionConfig::parse("120,-10,-10"), Error);
}

TEST(Generator, SingleNode) {
  const AndOrGraph g = generate(1, {}, 3);
  ASSERT_EQ(g.size(), 1u);
  EXPECT_EQ(g.node(0).kind, NodeKind::actuator);
  EXPECT_EQ(g.target(), g.node(0).id);
}

TEST(Generator, Deterministic) {
  const AndOrGraph a = generate(300, {}, 42);
  const AndOrGraph b = generate(300, {}, 42);
  EXPECT_EQ(graph_document(a), graph_document(b));
  EXPECT_NE(graph_document(a), graph_document(generate(300, {}, 43)));
}

TEST(Generator, ValidSolvableAndSized) {
  for (std::uint64_t seed = 0; seed < 40; ++seed) {
    for (const CompositionConfig cfg : {CompositionConfig{60, 20, 20}, CompositionConfig{80, 10, 10},
                                        CompositionConfig{34, 33, 33}, CompositionConfig{100, 0, 0}}) {
      const std::size_t n = 1 + seed * 7;
      const AndOrGraph g = generate(n, cfg, seed);
      EXPECT_GE(g.size(), n);
      const auto report = validate(g);
      ASSERT_TRUE(report.ok()) << report.to_string();
      for (const Node& node : g.nodes()) {
        if (!node.cost) continue;
        EXPECT_TRUE(node.cost->is_finite());
        EXPECT_GE(node.cost->milli(), 1000);
        EXPECT_LE(node.cost->milli(), 10000);
      }
      const CutSolution cut = mu(g, g.target());
      EXPECT_TRUE(cut.cost.is_finite());
    }
  }
}

TEST(Generator, KindProportionsTrackConfig) {
  for (const CompositionConfig cfg : {CompositionConfig{60, 20, 20}, CompositionConfig{80, 10, 10}}) {
    std::map<bool, double> share;
    double and_share = 0, or_share = 0, atomic_share = 0;
    const int graphs = 100;
    for (int seed = 0; seed < graphs; ++seed) {
      const AndOrGraph g = generate(1000, cfg, derive_seed(9, 1000, seed));
      double a = 0, an = 0, o = 0;
      for (const Node& n : g.nodes()) {
        if (n.kind == NodeKind::and_gate) ++an;
        else if (n.kind == NodeKind::or_gate) ++o;
        else ++a;
      }
      atomic_share += a / g.size();
      and_share += an / g.size();
      or_share += o / g.size();
    }
    EXPECT_NEAR(100 * atomic_share / graphs, cfg.atomic, 5.0);
    EXPECT_NEAR(100 * and_share / graphs, cfg.and_gate, 5.0);
    EXPECT_NEAR(100 * or_share / graphs, cfg.or_gate, 5.0);
  }
}

TEST(Generator, DeriveSeedIsPairedAcrossConfigs) {
  EXPECT_EQ(derive_seed(1, 1000, 3), derive_seed(1, 1000, 3));
  EXPECT_NE(derive_seed(1, 1000, 3), derive_seed(1, 1000, 4));
  EXPECT_NE(derive_seed(1, 1000, 3), derive_seed(1, 1500, 3));
  EXPECT_NE(derive_seed(1, 1000, 3), derive_seed(2, 1000, 3));
}

TEST(Bench, RecordCountAndOrder) {
  const auto records = run_bench({50, 80}, {}, 3, 1);
  ASSERT_EQ(records.size(), 6u);
  for (std::size_t i = 0; i < records.size(); ++i) {
    EXPECT_EQ(records[i].size, i < 3 ? 50u : 80u);
    EXPECT_EQ(records[i].iteration, i % 3);
    EXPECT_EQ(records[i].status, "ok");
    EXPECT_EQ(records[i].seed, derive_seed(1, records[i].size, records[i].iteration));
    EXPECT_GT(records[i].cnf_clauses, 0u);
  }
}

TEST(Bench, CsvRoundTrip) {
  auto records = run_bench({40}, {80, 10, 10}, 2, 5);
  BenchRecord failed;
  failed.size = 7;
  failed.status = "error";
  failed.error = "boom, with \"quotes\"\nand a newline";
  records.push_back(failed);
  const std::string csv = bench_csv(records);
  EXPECT_EQ(csv.substr(0, csv.find('\n')), bench_csv_header());
  EXPECT_EQ(bench_csv_header(),
            "size,config,iteration,seed,nodes,transformationMs,solveMs,cnfVariables,cnfClauses,"
            "cutCost,cutSize,status,error");
  EXPECT_EQ(parse_bench_csv(csv), records);
}

TEST(Bench, CsvRejectsGarbage) {
  EXPECT_THROW(parse_bench_csv("nope\n"), Error);
  EXPECT_THROW(parse_bench_csv(bench_csv_header() + "\n1,2\n"), Error);
}

}  // namespace
}  // namespace criticut
