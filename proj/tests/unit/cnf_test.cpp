#include <gtest/gtest.h>

#include <algorithm>
#include <random>
#include <set>

#include "criticut/cnf.hpp"
#include "criticut/graph_io.hpp"
#include "criticut/maxsat.hpp"
#include "oracle.hpp"

namespace criticut {
namespace {

using testing::data_path;

std::set<std::set<int>> as_set(const std::vector<Clause>& clauses) {
  std::set<std::set<int>> out;
  for (const auto& c : clauses) out.insert(std::set<int>(c.begin(), c.end()));
  return out;
}

Formula worked_example() {
  return Formula::conjunction(
      {Formula::disjunction({Formula::atom("p"), Formula::atom("q")}), Formula::atom("r")});
}

TEST(Tseitin, SevenClauseExample) {
  const CnfFormula cnf = tseitin(worked_example());
  ASSERT_EQ(cnf.variables(), 5);
  const int p = *cnf.var_map.var_of("p"), q = *cnf.var_map.var_of("q"),
            r = *cnf.var_map.var_of("r");
  const int x1 = 4, x2 = 5;
  EXPECT_EQ((std::vector<int>{p, q, r}), (std::vector<int>{1, 2, 3}));
  EXPECT_FALSE(cnf.var_map.is_named(x1));
  const std::set<std::set<int>> expected = {
      {x2},
      {-x1, p, q}, {-p, x1}, {-q, x1},
      {-x2, x1}, {-x2, r}, {-x1, -r, x2},
  };
  EXPECT_EQ(cnf.clause_count(), 7u);
  EXPECT_EQ(as_set(cnf.clauses), expected);
  EXPECT_EQ(cnf.clauses.front(), Clause{x2});
}

TEST(Tseitin, GoldenExampleCounts) {
  const AndOrGraph g = add_artificial_source(load_graph(data_path("listing1.json")));
  const CnfFormula cnf = tseitin(negate(form(g, "c1")));
  EXPECT_EQ(cnf.variables(), 15);
  EXPECT_EQ(cnf.clause_count(), 28u);
  EXPECT_EQ(cnf.var_map.named_count(), 6);
}

TEST(Tseitin, ConstantTrueRootThrows) {
  EXPECT_THROW(tseitin(Formula::constant_true()), Error);
}

TEST(Tseitin, NegatedAtomIsUnit) {
  const CnfFormula cnf = tseitin(negate(Formula::atom("a")));
  EXPECT_EQ(cnf.clauses, (std::vector<Clause>{{-1}}));
}

TEST(Tseitin, EquisatisfiableOnRandomFormulas) {
  std::mt19937_64 rng(2024);
  int sat = 0;
  for (int i = 0; i < 300; ++i) {
    const Formula f = testing::random_formula(rng, 1 + static_cast<int>(rng() % 12), 4);
    if (f.kind() == Formula::Kind::constant_true) continue;
    for (bool polarity : {false, true}) {
      CnfFormula cnf;
      try {
        cnf = tseitin(f, {polarity});
      } catch (const Error&) {
        continue;
      }
      const bool expected = testing::satisfiable(f);
      EXPECT_EQ(testing::satisfiable(cnf.clauses, cnf.variables()), expected) << to_string(f);
      sat += expected;
    }
  }
  EXPECT_GT(sat, 0);
}

TEST(Tseitin, ModelsProjectToModels) {
  // Full encoding: every model of f extends uniquely to a model of the CNF.
  std::mt19937_64 rng(7);
  for (int i = 0; i < 100; ++i) {
    const Formula f = testing::random_formula(rng, 4, 3);
    if (f.kind() == Formula::Kind::constant_true) continue;
    const CnfFormula cnf = tseitin(f);
    const auto atoms = atoms_of(f);
    const int named = cnf.var_map.named_count();
    const int aux = cnf.variables() - named;
    if (aux > 16) continue;
    for (std::uint32_t m = 0; m < (1u << atoms.size()); ++m) {
      Assignment a;
      std::vector<bool> model(cnf.variables() + 1);
      for (std::size_t k = 0; k < atoms.size(); ++k) {
        a[atoms[k]] = (m >> k) & 1u;
        model[*cnf.var_map.var_of(atoms[k])] = a[atoms[k]];
      }
      int extensions = 0;
      for (std::uint32_t x = 0; x < (1u << aux); ++x) {
        for (int v = 0; v < aux; ++v) model[named + 1 + v] = (x >> v) & 1u;
        extensions += satisfies(cnf.clauses, model);
      }
      EXPECT_EQ(extensions, evaluate(f, a) ? 1 : 0) << to_string(f);
    }
  }
}

TEST(Dimacs, CommentsHeaderAndClauses) {
  const CnfFormula cnf = tseitin(worked_example());
  const std::string text = emit_dimacs(cnf);
  EXPECT_EQ(text.substr(0, 24), "c 1 p\nc 2 q\nc 3 r\np cnf ");
  EXPECT_NE(text.find("p cnf 5 7\n5 0\n"), std::string::npos) << text;
  EXPECT_EQ(emit_var_map(cnf.var_map), "1\tp\n2\tq\n3\tr\n");
}

TEST(Wcnf, RoundTrip) {
  const AndOrGraph g = add_artificial_source(load_graph(data_path("listing1.json")));
  const CnfFormula cnf = tseitin(negate(form(g, "c1")));
  std::map<std::string, Cost> costs;
  for (const Node& n : g.nodes())
    if (n.cost) costs[n.id] = *n.cost;
  const WpmsInstance inst = build_instance(cnf, costs);
  const std::string text = emit_wcnf(inst);
  const WpmsInstance back = parse_wcnf(text);
  EXPECT_EQ(back.hard, inst.hard);
  ASSERT_EQ(back.soft.size(), inst.soft.size());
  for (std::size_t i = 0; i < inst.soft.size(); ++i) {
    EXPECT_EQ(back.soft[i].var, inst.soft[i].var);
    EXPECT_EQ(back.soft[i].weight, inst.soft[i].weight);
  }
  for (int v = 1; v <= inst.variables(); ++v)
    if (inst.var_map.is_named(v)) EXPECT_EQ(back.var_map.name(v), inst.var_map.name(v));
  EXPECT_EQ(emit_wcnf(back), text);
}

TEST(Wcnf, HeaderlessFormatAndRelaxation) {
  const WpmsInstance inst = parse_wcnf("c comment\nh 1 2 0\n3 -1 0\n2 -2 0\n5 1 2 0\n");
  EXPECT_EQ(inst.hard.size(), 4u);  // original hard plus three relaxed clauses
  EXPECT_EQ(inst.soft.size(), 3u);
  const auto sol = solve(inst);
  ASSERT_TRUE(sol);
  EXPECT_EQ(sol->penalty, 2);
}

TEST(Wcnf, MalformedInputNamesLine) {
  for (const char* bad : {"p wcnf 2 1 10\n1 2\n", "p wcnf x\n", "p wcnf 1 1 10\n10 3 0\n",
                          "p wcnf 1 1 10\n0 1 0\n", "p wcnf 1 1 10\n10 x 0\n"}) {
    try {
      parse_wcnf(bad);
      ADD_FAILURE() << "accepted: " << bad;
    } catch (const Error& e) {
      EXPECT_NE(std::string(e.what()).find("line"), std::string::npos) << e.what();
    }
  }
  EXPECT_THROW(parse_wcnf("p wcnf 2 2 10\n10 1 0\n"), Error);
}

}  // namespace
}  // namespace criticut
