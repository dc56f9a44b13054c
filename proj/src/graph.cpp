#include "criticut/graph.hpp"

#include <algorithm>
#include <deque>
#include <limits>
#include <numeric>
#include <set>

#include <fmt/format.h>

namespace criticut {

std::string_view to_string(NodeKind kind) {
  switch (kind) {
    case NodeKind::sensor: return "sensor";
    case NodeKind::actuator: return "actuator";
    case NodeKind::agent: return "agent";
    case NodeKind::and_gate: return "and";
    case NodeKind::or_gate: return "or";
    case NodeKind::source: return "source";
  }
  return "?";
}

std::optional<NodeKind> parse_node_kind(std::string_view name) {
  if (name == "sensor") return NodeKind::sensor;
  if (name == "actuator") return NodeKind::actuator;
  if (name == "agent") return NodeKind::agent;
  if (name == "and") return NodeKind::and_gate;
  if (name == "or") return NodeKind::or_gate;
  if (name == "source") return NodeKind::source;
  return std::nullopt;
}

AndOrGraph::AndOrGraph(std::vector<Node> nodes, std::vector<Edge> edges, std::string target)
    : nodes_(std::move(nodes)), edges_(std::move(edges)), target_(std::move(target)) {
  index_.reserve(nodes_.size());
  for (NodeIndex i = 0; i < nodes_.size(); ++i) {
    const Node& n = nodes_[i];
    if (n.id.empty()) throw Error("node with empty id");
    if (!index_.emplace(n.id, i).second) throw Error(fmt::format("duplicate node id \"{}\"", n.id));
    if (is_atomic(n.kind) && !n.cost)
      throw Error(fmt::format("atomic node \"{}\" has no cost", n.id));
    if (is_logical(n.kind) && n.cost)
      throw Error(fmt::format("logical node \"{}\" cannot carry a cost", n.id));
  }

  preds_.assign(nodes_.size(), {});
  succs_.assign(nodes_.size(), {});
  std::set<std::pair<std::string_view, std::string_view>> seen;
  for (const Edge& e : edges_) {
    if (!seen.emplace(e.source, e.target).second)
      throw Error(fmt::format("duplicate edge ({}, {})", e.source, e.target));
    auto s = find(e.source);
    auto t = find(e.target);
    if (!s || !t) continue;
    succs_[*s].push_back(*t);
    preds_[*t].push_back(*s);
  }
  auto by_id = [this](NodeIndex a, NodeIndex b) { return nodes_[a].id < nodes_[b].id; };
  for (auto& v : preds_) std::sort(v.begin(), v.end(), by_id);
  for (auto& v : succs_) std::sort(v.begin(), v.end(), by_id);
}

std::optional<NodeIndex> AndOrGraph::find(std::string_view id) const {
  auto it = index_.find(std::string(id));
  if (it == index_.end()) return std::nullopt;
  return it->second;
}

NodeIndex AndOrGraph::index_of(std::string_view id) const {
  if (auto i = find(id)) return *i;
  throw Error(fmt::format("unknown node \"{}\"", id));
}

AndOrGraph AndOrGraph::with_target(std::string target) const {
  return AndOrGraph(nodes_, edges_, std::move(target));
}

AndOrGraph AndOrGraph::with_costs(const std::map<std::string, Cost>& overrides) const {
  std::vector<Node> nodes = nodes_;
  for (const auto& [id, cost] : overrides) {
    Node& n = nodes[index_of(id)];
    if (is_logical(n.kind))
      throw Error(fmt::format("cannot assign a cost to logical node \"{}\"", id));
    n.cost = cost;
  }
  return AndOrGraph(std::move(nodes), edges_, target_);
}

bool ValidationReport::has_rule(std::string_view rule) const {
  return std::any_of(violations.begin(), violations.end(),
                     [&](const Violation& v) { return v.rule == rule; });
}

std::string ValidationReport::to_string() const {
  std::string out;
  for (const Violation& v : violations) {
    out += fmt::format("[{}] {}\n", v.rule, v.message);
  }
  return out;
}

ValidationError::ValidationError(ValidationReport report)
    : Error("invalid graph:\n" + report.to_string()), report_(std::move(report)) {}

ValidationReport validate(const AndOrGraph& g) {
  ValidationReport report;
  auto add = [&](std::string rule, std::string message, std::vector<std::string> ids) {
    report.violations.push_back({std::move(rule), std::move(message), std::move(ids)});
  };

  for (const Edge& e : g.edges()) {
    for (const std::string* end : {&e.source, &e.target}) {
      if (!g.contains(*end))
        add("unknown-endpoint",
            fmt::format("edge ({}, {}) names unknown node \"{}\"", e.source, e.target, *end),
            {e.source, e.target});
    }
  }

  std::size_t source_count = 0;
  for (NodeIndex i = 0; i < g.size(); ++i) {
    if (g.node(i).kind == NodeKind::source) ++source_count;
  }
  if (source_count > 1) {
    std::vector<std::string> ids;
    for (const Node& n : g.nodes())
      if (n.kind == NodeKind::source) ids.push_back(n.id);
    add("source-unique", "at most one artificial source node is allowed", ids);
  }
  const bool augmented = source_count == 1;

  for (NodeIndex i = 0; i < g.size(); ++i) {
    const Node& n = g.node(i);
    const std::size_t in = g.in_degree(i);
    const std::size_t out = g.out_degree(i);
    switch (n.kind) {
      case NodeKind::actuator:
        if (out != 0)
          add("actuator-out-degree",
              fmt::format("actuator \"{}\" has {} outgoing edges; out-degree 0 for actuators", n.id,
                          out),
              {n.id});
        break;
      case NodeKind::and_gate:
      case NodeKind::or_gate:
        if (out < 1)
          add("logical-out-degree",
              fmt::format("logical node \"{}\" feeds nothing; out-degree >= 1 required", n.id),
              {n.id});
        if (in < 2)
          add("logical-in-degree",
              fmt::format("logical node \"{}\" has {} inputs; in-degree >= 2 required", n.id, in),
              {n.id});
        break;
      case NodeKind::source:
        if (in != 0)
          add("source-in-degree", fmt::format("source \"{}\" has incoming edges", n.id), {n.id});
        break;
      default: break;
    }
    if (is_atomic(n.kind) && n.kind != NodeKind::source) {
      if (in > 1)
        add("atomic-in-degree",
            fmt::format("atomic node \"{}\" has {} incoming edges; at most one allowed", n.id, in),
            {n.id});
      else if (augmented && in == 0)
        add("atomic-in-degree",
            fmt::format("atomic node \"{}\" is not fed by the source; exactly one incoming edge "
                        "required after source insertion",
                        n.id),
            {n.id});
    }
    for (NodeIndex s : g.successors(i)) {
      const Node& m = g.node(s);
      if (is_logical(n.kind) && m.kind == NodeKind::sensor)
        add("logical-to-sensor",
            fmt::format("edge ({}, {}) enters a sensor from a logical node", n.id, m.id),
            {n.id, m.id});
      if (n.kind == NodeKind::actuator && is_logical(m.kind))
        add("actuator-to-logical",
            fmt::format("edge ({}, {}) leaves an actuator into a logical node", n.id, m.id),
            {n.id, m.id});
    }
  }

  if (g.target().empty()) {
    add("target-missing", "no target node given", {});
  } else if (auto t = g.find(g.target()); !t) {
    add("target-missing", fmt::format("target \"{}\" is not a node of the graph", g.target()),
        {g.target()});
  } else if (!is_atomic(g.node(*t).kind)) {
    add("target-not-atomic", fmt::format("target \"{}\" must be an atomic node", g.target()),
        {g.target()});
  }
  return report;
}

void require_valid(const AndOrGraph& graph) {
  auto report = validate(graph);
  if (!report.ok()) throw ValidationError(std::move(report));
}

namespace {

std::vector<NodeIndex> zero_in_degree(const AndOrGraph& g) {
  std::vector<NodeIndex> roots;
  for (NodeIndex i = 0; i < g.size(); ++i)
    if (g.in_degree(i) == 0) roots.push_back(i);
  return roots;
}

}  // namespace

AndOrGraph add_artificial_source(const AndOrGraph& g) {
  const auto roots = zero_in_degree(g);
  if (roots.size() < 2) return g;

  std::string name = "s";
  for (int k = 1; g.contains(name); ++k) name = fmt::format("s_{}", k);

  std::vector<Node> nodes = g.nodes();
  std::vector<Edge> edges = g.edges();
  nodes.push_back({name, NodeKind::source, Cost::infinite()});
  for (NodeIndex r : roots) edges.push_back({name, g.node(r).id});
  return AndOrGraph(std::move(nodes), std::move(edges), g.target());
}

std::optional<std::string> unique_root(const AndOrGraph& g) {
  const auto roots = zero_in_degree(g);
  if (roots.size() != 1) return std::nullopt;
  return g.node(roots.front()).id;
}

AndOrGraph remove_nodes(const AndOrGraph& g, std::span<const std::string> ids) {
  std::deque<NodeIndex> work;
  for (const auto& id : ids) work.push_back(g.index_of(id));

  std::vector<char> removed(g.size(), 0);
  std::vector<std::size_t> in_degree(g.size());
  for (NodeIndex i = 0; i < g.size(); ++i) in_degree[i] = g.in_degree(i);

  while (!work.empty()) {
    const NodeIndex n = work.front();
    work.pop_front();
    if (removed[n]) continue;
    for (NodeIndex x : g.successors(n)) {
      if (removed[x]) continue;
      const NodeKind k = g.node(x).kind;
      if (is_atomic(k) || k == NodeKind::and_gate || in_degree[x] == 1) work.push_back(x);
    }
    removed[n] = 1;
    for (NodeIndex x : g.successors(n)) {
      if (!removed[x]) --in_degree[x];
    }
  }

  std::vector<Node> nodes;
  for (NodeIndex i = 0; i < g.size(); ++i)
    if (!removed[i]) nodes.push_back(g.node(i));
  std::vector<Edge> edges;
  for (const Edge& e : g.edges()) {
    auto s = g.find(e.source);
    auto t = g.find(e.target);
    if ((s && removed[*s]) || (t && removed[*t])) continue;
    edges.push_back(e);
  }
  return AndOrGraph(std::move(nodes), std::move(edges), g.target());
}

std::size_t wcc(const AndOrGraph& g) {
  std::vector<NodeIndex> parent(g.size());
  std::iota(parent.begin(), parent.end(), NodeIndex{0});
  auto root = [&](NodeIndex x) {
    while (parent[x] != x) x = parent[x] = parent[parent[x]];
    return x;
  };
  std::size_t components = g.size();
  for (NodeIndex i = 0; i < g.size(); ++i) {
    for (NodeIndex j : g.successors(i)) {
      const NodeIndex a = root(i), b = root(j);
      if (a != b) {
        parent[a] = b;
        --components;
      }
    }
  }
  return components;
}

namespace {

std::vector<std::size_t> distances_from_root(const AndOrGraph& g, DepthMode mode) {
  const auto roots = zero_in_degree(g);
  if (roots.size() != 1)
    throw Error(fmt::format("depth needs a unique source node; graph has {} zero-in-degree nodes",
                            roots.size()));
  constexpr auto kUnreached = std::numeric_limits<std::size_t>::max();
  std::vector<std::size_t> dist(g.size(), kUnreached);
  std::deque<NodeIndex> queue{roots.front()};
  dist[roots.front()] = 0;
  // 0-1 BFS: entering a logical node is free when logical nodes are skipped.
  while (!queue.empty()) {
    const NodeIndex n = queue.front();
    queue.pop_front();
    for (NodeIndex x : g.successors(n)) {
      const std::size_t step =
          (mode == DepthMode::skip_logical && is_logical(g.node(x).kind)) ? 0 : 1;
      if (dist[n] + step < dist[x]) {
        dist[x] = dist[n] + step;
        if (step == 0)
          queue.push_front(x);
        else
          queue.push_back(x);
      }
    }
  }
  return dist;
}

}  // namespace

std::size_t depth(const AndOrGraph& g, std::string_view id, DepthMode mode) {
  const NodeIndex target = g.index_of(id);
  const auto dist = distances_from_root(g, mode);
  if (dist[target] == std::numeric_limits<std::size_t>::max())
    throw Error(fmt::format("node \"{}\" is unreachable from source", id));
  return dist[target];
}

std::map<std::string, std::size_t> depths(const AndOrGraph& g, DepthMode mode) {
  const auto dist = distances_from_root(g, mode);
  std::map<std::string, std::size_t> out;
  for (NodeIndex i = 0; i < g.size(); ++i)
    if (dist[i] != std::numeric_limits<std::size_t>::max()) out.emplace(g.node(i).id, dist[i]);
  return out;
}

}  // namespace criticut
