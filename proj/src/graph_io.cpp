#include "criticut/graph_io.hpp"

#include <fstream>
#include <initializer_list>
#include <sstream>

#include <fmt/format.h>

namespace criticut {

using json = nlohmann::ordered_json;

namespace {

void check_fields(const json& obj, const std::string& where,
                  std::initializer_list<std::string_view> required,
                  std::initializer_list<std::string_view> optional = {}) {
  if (!obj.is_object()) throw ParseError(fmt::format("{}: expected an object", where));
  for (auto it = obj.begin(); it != obj.end(); ++it) {
    bool known = false;
    for (auto f : required) known = known || it.key() == f;
    for (auto f : optional) known = known || it.key() == f;
    if (!known) throw ParseError(fmt::format("{}: unknown field \"{}\"", where, it.key()));
  }
  for (auto f : required) {
    if (!obj.contains(std::string(f))) throw ParseError(fmt::format("{}: missing field \"{}\"", where, f));
  }
}

const std::string& string_field(const json& obj, const char* key, const std::string& where) {
  const json& v = obj.at(key);
  if (!v.is_string()) throw ParseError(fmt::format("{}/{}: expected a string", where, key));
  return v.get_ref<const std::string&>();
}

}  // namespace

AndOrGraph graph_from_json(const json& doc) {
  check_fields(doc, "", {"graph"});
  const json& g = doc.at("graph");
  check_fields(g, "/graph", {"target", "nodes", "edges"});
  const std::string target = string_field(g, "target", "/graph");

  const json& jnodes = g.at("nodes");
  if (!jnodes.is_array()) throw ParseError("/graph/nodes: expected an array");
  std::vector<Node> nodes;
  nodes.reserve(jnodes.size());
  for (std::size_t i = 0; i < jnodes.size(); ++i) {
    const std::string where = fmt::format("/graph/nodes/{}", i);
    const json& jn = jnodes[i];
    check_fields(jn, where, {"id", "type", "value"});
    Node n;
    n.id = string_field(jn, "id", where);
    const std::string& type = string_field(jn, "type", where);
    auto kind = parse_node_kind(type);
    if (!kind || *kind == NodeKind::source)
      throw ParseError(fmt::format("{}/type: unknown node type \"{}\"", where, type));
    n.kind = *kind;
    const std::string& value = string_field(jn, "value", where);
    if (is_logical(n.kind)) {
      if (value != "none")
        throw ParseError(fmt::format("{}/value: logical nodes take \"none\", got \"{}\"", where,
                                     value));
    } else {
      auto cost = Cost::try_parse(value);
      if (!cost)
        throw ParseError(fmt::format("{}/value: invalid cost \"{}\"", where, value));
      n.cost = *cost;
    }
    nodes.push_back(std::move(n));
  }

  const json& jedges = g.at("edges");
  if (!jedges.is_array()) throw ParseError("/graph/edges: expected an array");
  std::vector<Edge> edges;
  edges.reserve(jedges.size());
  for (std::size_t i = 0; i < jedges.size(); ++i) {
    const std::string where = fmt::format("/graph/edges/{}", i);
    check_fields(jedges[i], where, {"source", "target"});
    edges.push_back({string_field(jedges[i], "source", where),
                     string_field(jedges[i], "target", where)});
  }

  try {
    return AndOrGraph(std::move(nodes), std::move(edges), target);
  } catch (const ParseError&) {
    throw;
  } catch (const Error& e) {
    throw ParseError(fmt::format("/graph: {}", e.what()));
  }
}

AndOrGraph parse_graph(std::string_view text) {
  json doc;
  try {
    doc = json::parse(text);
  } catch (const json::parse_error& e) {
    throw ParseError(fmt::format("malformed JSON at byte {}: {}", e.byte, e.what()));
  }
  return graph_from_json(doc);
}

AndOrGraph load_graph(const std::filesystem::path& path) {
  try {
    return parse_graph(read_text_file(path));
  } catch (const ParseError& e) {
    throw ParseError(fmt::format("{}: {}", path.string(), e.what()));
  }
}

json node_to_json(const Node& n) {
  return json{{"id", n.id},
              {"type", std::string(to_string(n.kind))},
              {"value", n.cost ? n.cost->to_string() : std::string("none")}};
}

json graph_to_json(const AndOrGraph& graph) {
  json nodes = json::array();
  for (const Node& n : graph.nodes()) nodes.push_back(node_to_json(n));
  json edges = json::array();
  for (const Edge& e : graph.edges()) edges.push_back({{"source", e.source}, {"target", e.target}});
  return json{{"target", graph.target()}, {"nodes", std::move(nodes)}, {"edges", std::move(edges)}};
}

json graph_document(const AndOrGraph& graph) { return json{{"graph", graph_to_json(graph)}}; }

std::string read_text_file(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error(fmt::format("cannot open {}", path.string()));
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

void write_text_file(const std::filesystem::path& path, std::string_view text) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw Error(fmt::format("cannot write {}", path.string()));
  out << text;
  if (!out) throw Error(fmt::format("write failed for {}", path.string()));
}

}  // namespace criticut
