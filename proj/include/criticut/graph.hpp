#pragma once

#include <cstddef>
#include <map>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <unordered_map>
#include <vector>

#include "criticut/cost.hpp"

namespace criticut {

enum class NodeKind { sensor, actuator, agent, and_gate, or_gate, source };

/// Sensors, actuators, agents and the artificial source are atomic; AND/OR are logical.
constexpr bool is_atomic(NodeKind k) { return k != NodeKind::and_gate && k != NodeKind::or_gate; }
constexpr bool is_logical(NodeKind k) { return !is_atomic(k); }

/// File-format name: "sensor", "actuator", "agent", "and", "or", "source".
std::string_view to_string(NodeKind kind);
std::optional<NodeKind> parse_node_kind(std::string_view name);

struct Node {
  std::string id;
  NodeKind kind = NodeKind::sensor;
  /// Present iff the node is atomic.
  std::optional<Cost> cost;
};

struct Edge {
  std::string source;
  std::string target;
  friend bool operator==(const Edge&, const Edge&) = default;
};

using NodeIndex = std::size_t;

/// Directed dependency graph of typed components plus the analysed target.
///
/// Values are immutable once built. Nodes keep their declaration order (used
/// for report output); adjacency lists are sorted by node id so every
/// traversal is reproducible. Edges naming unknown nodes are retained so
/// validate() can report them, but take no part in adjacency.
class AndOrGraph {
 public:
  AndOrGraph() = default;
  /// Throws Error on an empty or duplicate node id, a cost on a logical node,
  /// a missing cost on an atomic node, or a repeated edge.
  AndOrGraph(std::vector<Node> nodes, std::vector<Edge> edges, std::string target);

  const std::vector<Node>& nodes() const { return nodes_; }
  const std::vector<Edge>& edges() const { return edges_; }
  const std::string& target() const { return target_; }
  std::size_t size() const { return nodes_.size(); }
  bool empty() const { return nodes_.empty(); }

  std::optional<NodeIndex> find(std::string_view id) const;
  /// Throws Error naming the id when absent.
  NodeIndex index_of(std::string_view id) const;
  bool contains(std::string_view id) const { return find(id).has_value(); }
  const Node& node(NodeIndex i) const { return nodes_[i]; }
  const Node& node(std::string_view id) const { return nodes_[index_of(id)]; }

  std::span<const NodeIndex> predecessors(NodeIndex i) const { return preds_[i]; }
  std::span<const NodeIndex> successors(NodeIndex i) const { return succs_[i]; }
  std::size_t in_degree(NodeIndex i) const { return preds_[i].size(); }
  std::size_t out_degree(NodeIndex i) const { return succs_[i].size(); }

  /// Copy with a different target id.
  AndOrGraph with_target(std::string target) const;
  /// Copy with the given atomic costs replaced; unknown or logical ids throw.
  AndOrGraph with_costs(const std::map<std::string, Cost>& overrides) const;

 private:
  std::vector<Node> nodes_;
  std::vector<Edge> edges_;
  std::string target_;
  std::unordered_map<std::string, NodeIndex> index_;
  std::vector<std::vector<NodeIndex>> preds_;
  std::vector<std::vector<NodeIndex>> succs_;
};

struct Violation {
  /// Stable rule code, e.g. "actuator-out-degree", "logical-in-degree".
  std::string rule;
  std::string message;
  /// Offending node ids (or the two endpoints of an offending edge).
  std::vector<std::string> ids;
};

struct ValidationReport {
  std::vector<Violation> violations;
  bool ok() const { return violations.empty(); }
  bool has_rule(std::string_view rule) const;
  std::string to_string() const;
};

/// Raised by operations that require a structurally valid graph.
class ValidationError : public Error {
 public:
  explicit ValidationError(ValidationReport report);
  const ValidationReport& report() const { return report_; }

 private:
  ValidationReport report_;
};

/// Checks every structural property of an AND/OR graph. Never throws; an
/// empty report means the graph is valid.
ValidationReport validate(const AndOrGraph& graph);

/// Throws ValidationError when validate() reports anything.
void require_valid(const AndOrGraph& graph);

/// When two or more nodes have no incoming edge, returns a copy with one
/// extra infinite-cost source node ("s", or "s_1", "s_2", ... on collision)
/// feeding each of them. Otherwise returns the graph unchanged.
AndOrGraph add_artificial_source(const AndOrGraph& graph);

/// Id of the unique zero-in-degree node, if there is exactly one.
std::optional<std::string> unique_root(const AndOrGraph& graph);

/// Logical node removal with propagation: removing a node also removes each
/// dependent atomic or AND node, and each dependent OR node left with no
/// other input. Unknown ids throw Error.
AndOrGraph remove_nodes(const AndOrGraph& graph, std::span<const std::string> ids);

/// Number of weakly connected components (0 for the empty graph).
std::size_t wcc(const AndOrGraph& graph);

enum class DepthMode {
  count_logical,  ///< every node on the path is one step
  skip_logical,   ///< only atomic nodes count as steps
};

/// Shortest directed distance from the graph's unique root. Throws Error when
/// the graph has no unique root or `id` is unreachable from it.
std::size_t depth(const AndOrGraph& graph, std::string_view id,
                  DepthMode mode = DepthMode::count_logical);

/// Depth of every node reachable from the unique root, keyed by id.
std::map<std::string, std::size_t> depths(const AndOrGraph& graph,
                                          DepthMode mode = DepthMode::count_logical);

}  // namespace criticut
