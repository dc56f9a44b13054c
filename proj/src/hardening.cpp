#include "criticut/hardening.hpp"

#include <algorithm>
#include <set>

#include <fmt/format.h>

#include "criticut/metric.hpp"

namespace criticut {

using json = nlohmann::ordered_json;

namespace {

constexpr Measure kAllMeasures[] = {
    Measure::container,       Measure::locked_container, Measure::fenced_area,
    Measure::building,        Measure::locked_building,  Measure::alarm_system,
    Measure::multi_authentication};

}  // namespace

int measure_weight(Measure m) {
  switch (m) {
    case Measure::container: return 1;
    case Measure::locked_container: return 2;
    case Measure::fenced_area: return 1;
    case Measure::building: return 2;
    case Measure::locked_building: return 3;
    case Measure::alarm_system: return 3;
    case Measure::multi_authentication: return 4;
  }
  return 0;
}

std::string_view measure_code(Measure m) {
  switch (m) {
    case Measure::container: return "C";
    case Measure::locked_container: return "LC";
    case Measure::fenced_area: return "F";
    case Measure::building: return "B";
    case Measure::locked_building: return "LB";
    case Measure::alarm_system: return "AS";
    case Measure::multi_authentication: return "MA";
  }
  return "?";
}

std::optional<Measure> parse_measure(std::string_view code) {
  for (Measure m : kAllMeasures)
    if (measure_code(m) == code) return m;
  return std::nullopt;
}

std::vector<Measure> MeasureSet::members() const {
  std::vector<Measure> out;
  for (Measure m : kAllMeasures)
    if (contains(m)) out.push_back(m);
  return out;
}

MeasureSet MeasureSet::parse(std::string_view text) {
  MeasureSet set;
  std::size_t pos = 0;
  while (pos <= text.size()) {
    std::size_t end = text.find(',', pos);
    if (end == std::string_view::npos) end = text.size();
    std::string_view tok = text.substr(pos, end - pos);
    while (!tok.empty() && tok.front() == ' ') tok.remove_prefix(1);
    while (!tok.empty() && tok.back() == ' ') tok.remove_suffix(1);
    if (!tok.empty()) {
      auto m = parse_measure(tok);
      if (!m) throw Error(fmt::format("unknown security measure \"{}\"", tok));
      set.add(*m);
    } else if (text.find_first_not_of(' ') != std::string_view::npos) {
      throw Error(fmt::format("empty measure code in \"{}\"", text));
    }
    pos = end + 1;
  }
  return set;
}

std::string MeasureSet::to_string() const {
  std::string out = "{";
  bool first = true;
  for (Measure m : members()) {
    if (!first) out += ", ";
    first = false;
    out += measure_code(m);
  }
  return out + "}";
}

Cost score(const MeasureSet& measures) {
  std::int64_t total = 0;
  for (Measure m : measures.members()) total += measure_weight(m);
  return Cost::from_units(total);
}

namespace {

// Copy of the graph with a dedicated source feeding every node without inputs.
std::pair<AndOrGraph, std::string> with_virtual_source(const AndOrGraph& g) {
  for (const Node& n : g.nodes())
    if (n.kind == NodeKind::source) return {g, n.id};
  std::string name = "s";
  for (int k = 1; g.contains(name); ++k) name = fmt::format("s_{}", k);
  std::vector<Node> nodes = g.nodes();
  std::vector<Edge> edges = g.edges();
  for (NodeIndex i = 0; i < g.size(); ++i)
    if (g.in_degree(i) == 0) edges.push_back({name, g.node(i).id});
  nodes.push_back({name, NodeKind::source, Cost::infinite()});
  return {AndOrGraph(std::move(nodes), std::move(edges), g.target()), name};
}

}  // namespace

std::map<std::string, Cost> perimeter_costs(const AndOrGraph& graph, DepthMode mode) {
  auto [g, source] = with_virtual_source(graph);
  const auto d = depths(g, mode);
  std::map<std::string, Cost> out;
  for (const Node& n : g.nodes()) {
    if (!is_atomic(n.kind)) continue;
    auto it = d.find(n.id);
    if (it == d.end())
      throw Error(fmt::format("node \"{}\" is unreachable from the source", n.id));
    if (n.id == g.target() && n.cost && n.cost->is_infinite()) {
      out[n.id] = Cost::infinite();
    } else {
      out[n.id] = Cost::from_units(static_cast<std::int64_t>(it->second));
    }
  }
  return out;
}

AndOrGraph with_perimeter_costs(const AndOrGraph& graph, DepthMode mode) {
  auto costs = perimeter_costs(graph, mode);
  std::map<std::string, Cost> apply;
  for (const auto& [id, c] : costs)
    if (graph.contains(id)) apply.emplace(id, c);
  return graph.with_costs(apply);
}

HardeningTrace harden_iterate(const AndOrGraph& graph, std::string_view t,
                              const HardenOptions& options) {
  HardeningTrace trace;
  AndOrGraph current = graph.with_target(std::string(t));
  std::set<std::string> remediated;
  AnalyzeOptions opts;
  opts.skip_texts = true;
  while (true) {
    if (options.max_rounds && trace.rounds.size() >= *options.max_rounds) {
      trace.stop_reason = "max rounds";
      break;
    }
    HardeningRound round;
    round.remediated_so_far.assign(remediated.begin(), remediated.end());
    try {
      const MetricReport r = analyze(current, std::nullopt, opts);
      round.cut = r.cut.nodes;
      round.cost = r.cut.cost;
    } catch (const UnsatError&) {
      round.cut = {std::string(t)};
      round.cost = Cost::infinite();
      round.terminal = true;
      trace.stop_reason = trace.rounds.empty() ? "target undisruptable" : "fully hardened";
      trace.rounds.push_back(std::move(round));
      break;
    }
    trace.rounds.push_back(round);
    if (options.threshold && round.cost >= *options.threshold) {
      trace.stop_reason = "threshold reached";
      break;
    }
    std::map<std::string, Cost> fix;
    for (const auto& id : round.cut) {
      fix.emplace(id, Cost::infinite());
      remediated.insert(id);
    }
    current = current.with_costs(fix);
  }
  return trace;
}

json trace_to_json(const HardeningTrace& trace) {
  json rounds = json::array();
  for (std::size_t i = 0; i < trace.rounds.size(); ++i) {
    const HardeningRound& r = trace.rounds[i];
    rounds.push_back({{"round", i + 1},
                      {"cut", r.cut},
                      {"cost", r.cost.is_infinite() ? json("inf") : json(r.cost.to_double())},
                      {"remediatedSoFar", r.remediated_so_far},
                      {"terminal", r.terminal}});
  }
  return json{{"rounds", std::move(rounds)}, {"stopReason", trace.stop_reason}};
}

std::map<std::string, Cost> budget_costs(const std::map<std::string, Cost>& costs,
                                         const std::map<std::string, Cost>& budgets, Cost alpha,
                                         Cost beta) {
  const Cost one = Cost::from_units(1);
  if (alpha.is_infinite() || beta.is_infinite() || alpha > one || beta > one)
    throw Error("alpha and beta must lie in [0, 1]");
  if (alpha.milli() + beta.milli() != Cost::kScale)
    throw Error(fmt::format("alpha + beta must equal 1 (got {} + {})", alpha.to_string(),
                            beta.to_string()));
  std::map<std::string, Cost> out;
  for (const auto& [id, c] : costs) {
    if (c.is_infinite()) {
      out.emplace(id, c);
      continue;
    }
    auto b = budgets.find(id);
    if (b == budgets.end()) throw Error(fmt::format("no budget for node \"{}\"", id));
    if (b->second.is_infinite()) throw Error(fmt::format("budget for \"{}\" must be finite", id));
    const __int128 num = static_cast<__int128>(alpha.milli()) * c.milli() +
                         static_cast<__int128>(beta.milli()) * b->second.milli();
    const __int128 q = (num + Cost::kScale / 2) / Cost::kScale;
    if (q > Cost::kMaxMilli) throw Error(fmt::format("weighted cost for \"{}\" overflows", id));
    out.emplace(id, Cost::from_milli(static_cast<std::int64_t>(q)));
  }
  return out;
}

}  // namespace criticut
