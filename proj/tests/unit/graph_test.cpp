#include <gtest/gtest.h>

#include <algorithm>

#include "criticut/graph.hpp"
#include "criticut/graph_io.hpp"
#include "oracle.hpp"

namespace criticut {
namespace {

using testing::data_path;

AndOrGraph make(std::vector<Node> nodes, std::vector<Edge> edges, std::string target) {
  return AndOrGraph(std::move(nodes), std::move(edges), std::move(target));
}

Node atom(std::string id, NodeKind k = NodeKind::agent, const char* cost = "1") {
  return {std::move(id), k, Cost::parse(cost)};
}

Node gate(std::string id, NodeKind k) { return {std::move(id), k, std::nullopt}; }

std::vector<std::string> ids(const AndOrGraph& g) {
  std::vector<std::string> out;
  for (const Node& n : g.nodes()) out.push_back(n.id);
  std::sort(out.begin(), out.end());
  return out;
}

TEST(Graph, ShippedGraphsValidate) {
  for (const char* f : {"listing1.json", "wtn_basic.json", "cycle.json", "wtn_expanded.json"}) {
    const auto report = validate(load_graph(data_path(f)));
    EXPECT_TRUE(report.ok()) << f << ": " << report.to_string();
  }
}

TEST(Graph, AdjacencyIsSortedById) {
  const AndOrGraph g = load_graph(data_path("listing1.json"));
  const auto preds = g.predecessors(g.index_of("or-d"));
  ASSERT_EQ(preds.size(), 2u);
  EXPECT_EQ(g.node(preds[0]).id, "a-b");
  EXPECT_EQ(g.node(preds[1]).id, "b-c");
}

TEST(Graph, ConstructorRejectsStructuralNonsense) {
  EXPECT_THROW(make({atom("a"), atom("a")}, {}, "a"), Error);
  EXPECT_THROW(make({atom("")}, {}, ""), Error);
  EXPECT_THROW(make({{"g", NodeKind::and_gate, Cost::parse("1")}}, {}, "g"), Error);
  EXPECT_THROW(make({{"a", NodeKind::agent, std::nullopt}}, {}, "a"), Error);
  EXPECT_THROW(make({atom("a"), atom("b")}, {{"a", "b"}, {"a", "b"}}, "b"), Error);
}

struct RuleCase {
  const char* rule;
  std::vector<Node> nodes;
  std::vector<Edge> edges;
  std::string target;
};

TEST(Graph, EachRuleIsReported) {
  const std::vector<RuleCase> cases = {
      {"unknown-endpoint", {atom("a")}, {{"zz", "a"}}, "a"},
      {"actuator-out-degree",
       {atom("x", NodeKind::actuator), atom("y")},
       {{"x", "y"}},
       "y"},
      {"logical-out-degree", {atom("p"), atom("q"), gate("g", NodeKind::and_gate)},
       {{"p", "g"}, {"q", "g"}},
       "p"},
      {"logical-in-degree",
       {atom("p"), gate("g", NodeKind::or_gate), atom("t")},
       {{"p", "g"}, {"g", "t"}},
       "t"},
      {"atomic-in-degree", {atom("p"), atom("q"), atom("t")}, {{"p", "t"}, {"q", "t"}}, "t"},
      {"logical-to-sensor",
       {atom("p"), atom("q"), gate("g", NodeKind::or_gate), atom("t", NodeKind::sensor)},
       {{"p", "g"}, {"q", "g"}, {"g", "t"}},
       "t"},
      {"actuator-to-logical",
       {atom("p", NodeKind::actuator), atom("q"), gate("g", NodeKind::or_gate), atom("t")},
       {{"p", "g"}, {"q", "g"}, {"g", "t"}},
       "t"},
      {"target-missing", {atom("a")}, {}, "nope"},
      {"target-not-atomic",
       {atom("p"), atom("q"), gate("g", NodeKind::or_gate)},
       {{"p", "g"}, {"q", "g"}},
       "g"},
  };
  for (const auto& c : cases) {
    const auto report = validate(make(c.nodes, c.edges, c.target));
    EXPECT_TRUE(report.has_rule(c.rule)) << c.rule << " not in: " << report.to_string();
  }
}

TEST(Graph, ArtificialSourceFeedsEveryRoot) {
  const AndOrGraph g = load_graph(data_path("listing1.json"));
  const AndOrGraph s = add_artificial_source(g);
  ASSERT_EQ(s.size(), g.size() + 1);
  const NodeIndex src = s.index_of("s");
  EXPECT_EQ(s.node(src).kind, NodeKind::source);
  EXPECT_TRUE(s.node(src).cost->is_infinite());
  EXPECT_EQ(s.out_degree(src), 3u);
  EXPECT_EQ(unique_root(s), "s");
  EXPECT_TRUE(validate(s).ok());
}

TEST(Graph, ArtificialSourceAvoidsNameClash) {
  const AndOrGraph g = make({atom("s"), atom("r"), atom("t"), gate("g", NodeKind::and_gate)},
                            {{"s", "g"}, {"r", "g"}, {"g", "t"}}, "t");
  const AndOrGraph s = add_artificial_source(g);
  EXPECT_TRUE(s.contains("s_1"));
  EXPECT_EQ(s.node("s_1").kind, NodeKind::source);
}

TEST(Graph, SingleRootNeedsNoSource) {
  const AndOrGraph g = make({atom("a"), atom("t")}, {{"a", "t"}}, "t");
  EXPECT_EQ(add_artificial_source(g).size(), 2u);
}

TEST(Graph, RemovalPropagatesThroughAndAndAtomic) {
  const AndOrGraph g = load_graph(data_path("listing1.json"));
  const std::vector<std::string> rm = {"b"};
  const AndOrGraph r = remove_nodes(g, rm);
  // b kills both ANDs, hence the OR, d and c1.
  EXPECT_EQ(ids(r), (std::vector<std::string>{"a", "c"}));
}

TEST(Graph, RemovalKeepsOrWithRemainingInput) {
  const AndOrGraph g = load_graph(data_path("listing1.json"));
  const std::vector<std::string> rm = {"a"};
  const AndOrGraph r = remove_nodes(g, rm);
  EXPECT_EQ(ids(r), (std::vector<std::string>{"b", "b-c", "c", "c1", "d", "or-d"}));
  EXPECT_EQ(r.in_degree(r.index_of("or-d")), 1u);
}

TEST(Graph, RemovalOfBothOrInputsRemovesOr) {
  const AndOrGraph g = load_graph(data_path("listing1.json"));
  const std::vector<std::string> rm = {"a", "c"};
  EXPECT_EQ(ids(remove_nodes(g, rm)), (std::vector<std::string>{"b"}));
}

TEST(Graph, RemovalOfUnknownIdThrows) {
  const AndOrGraph g = load_graph(data_path("listing1.json"));
  const std::vector<std::string> rm = {"zz"};
  EXPECT_THROW(remove_nodes(g, rm), Error);
}

TEST(Graph, RemovalFixtures) {
  const auto doc = nlohmann::ordered_json::parse(
      read_text_file(testing::fixture_path("removal_cases.json")));
  for (const auto& c : doc) {
    const AndOrGraph g = graph_from_json(nlohmann::ordered_json{{"graph", c.at("graph")}});
    const auto rm = c.at("removed").get<std::vector<std::string>>();
    auto expected = c.at("remaining").get<std::vector<std::string>>();
    std::sort(expected.begin(), expected.end());
    EXPECT_EQ(ids(remove_nodes(g, rm)), expected) << c.at("name").get<std::string>();
  }
}

TEST(Graph, WeaklyConnectedComponents) {
  EXPECT_EQ(wcc(AndOrGraph()), 0u);
  const AndOrGraph g = load_graph(data_path("listing1.json"));
  EXPECT_EQ(wcc(g), 1u);
  const std::vector<std::string> rm = {"b"};
  EXPECT_EQ(wcc(remove_nodes(g, rm)), 2u);
}

TEST(Graph, Depths) {
  const AndOrGraph g = add_artificial_source(load_graph(data_path("listing1.json")));
  EXPECT_EQ(depth(g, "s"), 0u);
  EXPECT_EQ(depth(g, "a"), 1u);
  EXPECT_EQ(depth(g, "a-b"), 2u);
  EXPECT_EQ(depth(g, "d"), 4u);
  EXPECT_EQ(depth(g, "d", DepthMode::skip_logical), 2u);
  EXPECT_THROW(depth(load_graph(data_path("listing1.json")), "a"), Error);
}

TEST(GraphIo, RoundTripPreservesDeclarationOrder) {
  const std::string text = read_text_file(data_path("listing1.json"));
  const AndOrGraph g = parse_graph(text);
  const AndOrGraph again = parse_graph(graph_document(g).dump());
  ASSERT_EQ(again.size(), g.size());
  for (std::size_t i = 0; i < g.size(); ++i) {
    EXPECT_EQ(again.node(i).id, g.node(i).id);
    EXPECT_EQ(again.node(i).kind, g.node(i).kind);
    EXPECT_EQ(again.node(i).cost, g.node(i).cost);
  }
  EXPECT_EQ(again.edges(), g.edges());
  EXPECT_EQ(nlohmann::ordered_json::parse(text), graph_document(g));
}

TEST(GraphIo, StrictParsing) {
  EXPECT_THROW(parse_graph("{"), ParseError);
  EXPECT_THROW(parse_graph("[]"), ParseError);
  EXPECT_THROW(parse_graph(R"({"graph": {"target": "a", "nodes": [], "edges": [], "x": 1}})"),
               ParseError);
  EXPECT_THROW(
      parse_graph(
          R"({"graph": {"target": "a", "nodes": [{"id": "a", "type": "plc", "value": "1"}], "edges": []}})"),
      ParseError);
  EXPECT_THROW(
      parse_graph(
          R"({"graph": {"target": "a", "nodes": [{"id": "a", "type": "source", "value": "inf"}], "edges": []}})"),
      ParseError);
  EXPECT_THROW(
      parse_graph(
          R"({"graph": {"target": "a", "nodes": [{"id": "a", "type": "agent", "value": "-1"}], "edges": []}})"),
      ParseError);
}

TEST(GraphIo, ParseErrorsCarryLocation) {
  try {
    parse_graph("{\"graph\": {\"target\": 1,, }}");
    FAIL();
  } catch (const ParseError& e) {
    EXPECT_NE(std::string(e.what()).find("byte"), std::string::npos) << e.what();
  }
}

}  // namespace
}  // namespace criticut
