#pragma once

#include <filesystem>
#include <string>
#include <string_view>

#include <nlohmann/json.hpp>

#include "criticut/graph.hpp"

namespace criticut {

/// Malformed graph document; the message carries the JSON location.
class ParseError : public Error {
 public:
  using Error::Error;
};

/// Strict reader for {"graph": {"target", "nodes": [{id,type,value}], "edges": [{source,target}]}}.
/// Unknown fields, duplicate ids and the reserved "source" type are rejected.
AndOrGraph graph_from_json(const nlohmann::ordered_json& doc);
AndOrGraph parse_graph(std::string_view text);
AndOrGraph load_graph(const std::filesystem::path& path);

/// The inner "graph" object (nodes and edges in declaration order).
nlohmann::ordered_json graph_to_json(const AndOrGraph& graph);
/// {"graph": ...}
nlohmann::ordered_json graph_document(const AndOrGraph& graph);

/// {"id", "type", "value"} for one node; value is the canonical cost text or "none".
nlohmann::ordered_json node_to_json(const Node& node);

std::string read_text_file(const std::filesystem::path& path);
void write_text_file(const std::filesystem::path& path, std::string_view text);

}  // namespace criticut
