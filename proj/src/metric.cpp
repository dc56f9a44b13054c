#include "criticut/metric.hpp"

#include <algorithm>
#include <ctime>
#include <map>
#include <unordered_set>

#include <fmt/format.h>

#include "criticut/graph_io.hpp"

namespace criticut {

using json = nlohmann::ordered_json;

namespace {

// CPU time of the calling thread in milliseconds; unaffected by preemption.
double cpu_ms() {
  timespec ts{};
  clock_gettime(CLOCK_THREAD_CPUTIME_ID, &ts);
  return static_cast<double>(ts.tv_sec) * 1e3 + static_cast<double>(ts.tv_nsec) / 1e6;
}

double ms_since(double start) { return cpu_ms() - start; }

}  // namespace

Analysis analyze_full(const AndOrGraph& graph, const std::optional<std::string>& target,
                      const AnalyzeOptions& options) {
  const AndOrGraph g =
      target && *target != graph.target() ? graph.with_target(*target) : graph;
  ValidationReport check = validate(g);
  if (options.allow_reduced_gates) {
    std::erase_if(check.violations, [&](const Violation& v) {
      return v.rule == "logical-in-degree" && g.in_degree(g.index_of(v.ids.front())) >= 1;
    });
  }
  if (!check.ok()) throw ValidationError(std::move(check));
  const std::string& t = g.target();

  Analysis a;
  a.graph = add_artificial_source(g);

  const double t0 = cpu_ms();
  a.formula = form(a.graph, t);
  const Formula objective = negate(a.formula);
  a.cnf = tseitin(objective, options.tseitin);
  const double transformation_ms = ms_since(t0);

  const double t1 = cpu_ms();
  std::map<std::string, Cost> costs;
  for (const Node& n : a.graph.nodes())
    if (n.cost) costs.emplace(n.id, *n.cost);
  a.instance = build_instance(a.cnf, costs);
  SolverStats stats;
  auto sol = solve(a.instance, &stats);
  const double solve_ms = ms_since(t1);
  if (!sol)
    throw UnsatError(fmt::format(
        "target \"{}\" cannot be disabled: every attack path is blocked by infinite costs", t));

  MetricReport& r = a.report;
  r.target = t;
  r.cut.nodes = falsified_names(a.instance, *sol);
  std::sort(r.cut.nodes.begin(), r.cut.nodes.end());
  r.cut.cost = cut_cost(g, r.cut.nodes);
  r.cut.target_only = r.cut.nodes.size() == 1 && r.cut.nodes.front() == t;
  r.kappa = r.cut.cost;
  if (!options.skip_texts) {
    r.formula_text = to_string(a.formula);
    r.objective_text = to_string(objective);
  }
  r.cnf = {a.cnf.variables(), a.cnf.clause_count()};
  r.transformation_ms = transformation_ms;
  r.solve_ms = solve_ms;
  r.components_after_cut = cut_components(g, r.cut.nodes);
  r.solver = stats;
  return a;
}

MetricReport analyze(const AndOrGraph& graph, const std::optional<std::string>& target,
                     const AnalyzeOptions& options) {
  return analyze_full(graph, target, options).report;
}

CutSolution mu(const AndOrGraph& graph, std::string_view t) {
  AnalyzeOptions opts;
  opts.skip_texts = true;
  return analyze(graph, std::string(t), opts).cut;
}

Cost kappa(const AndOrGraph& graph, std::string_view t) { return mu(graph, t).cost; }

bool verify_cut(const AndOrGraph& graph, std::string_view t, std::span<const std::string> cut) {
  std::unordered_set<std::string> off;
  for (const auto& id : cut) {
    if (!is_atomic(graph.node(id).kind))
      throw Error(fmt::format("cut member \"{}\" is not an atomic node", id));
    off.insert(id);
  }
  if (off.size() == 1 && *off.begin() == t) return true;
  const AndOrGraph g = add_artificial_source(graph);
  const Formula f = form(g, t);
  Assignment a;
  for (const auto& id : atoms_of(f)) a[id] = !off.contains(id);
  return !evaluate(f, a);
}

std::size_t cut_components(const AndOrGraph& graph, std::span<const std::string> cut) {
  return wcc(remove_nodes(graph, cut));
}

Cost cut_cost(const AndOrGraph& graph, std::span<const std::string> ids) {
  Cost total;
  for (const auto& id : ids) {
    const Node& n = graph.node(id);
    if (!n.cost) throw Error(fmt::format("node \"{}\" has no cost", id));
    total += *n.cost;
  }
  return total;
}

std::string text_report(const AndOrGraph& graph, const MetricReport& r,
                        std::optional<int> precision) {
  std::string out;
  auto line = [&](std::string_view s) {
    out += s;
    out += '\n';
  };
  line(" Logical formula: ");
  line(" " + r.formula_text);
  line(" ");
  line(" Objective: ");
  line(" " + r.objective_text);
  line(" ");
  line(" Tseitin CNF sentence (DIMACS): ");
  line(fmt::format(" - Number of variables: {}", r.cnf.variables));
  line(fmt::format(" - Number of clauses: {}", r.cnf.clauses));
  line(" ");
  line("==================================");
  line("### BEST solution found: ");
  line("=== Security Metric ===");
  line("CUT cost: " + r.cut.cost.to_display(precision));
  std::string members;
  const std::unordered_set<std::string> in_cut(r.cut.nodes.begin(), r.cut.nodes.end());
  for (const Node& n : graph.nodes()) {
    if (!in_cut.contains(n.id)) continue;
    const std::string c = precision ? n.cost->to_display(precision) : n.cost->to_string();
    members += fmt::format("({},{}); ", n.id, c);
  }
  line("CUT solution: " + members);
  return out;
}

json cut_to_json(const AndOrGraph& graph, const CutSolution& cut) {
  std::vector<std::string> ids = cut.nodes;
  std::sort(ids.begin(), ids.end());
  json nodes = json::array();
  for (const auto& id : ids) nodes.push_back(node_to_json(graph.node(id)));
  json cost = cut.cost.is_infinite() ? json("inf") : json(cut.cost.to_double());
  return json{{"nodes", std::move(nodes)}, {"cost", std::move(cost)}};
}

json output_document(const AndOrGraph& graph, const CutSolution& cut) {
  return json{{"graph", graph_to_json(graph)}, {"cut", cut_to_json(graph, cut)}};
}

json report_to_json(const AndOrGraph& graph, const MetricReport& r) {
  return json{{"target", r.target},
              {"cut", cut_to_json(graph, r.cut)},
              {"kappa", r.kappa.is_infinite() ? json("inf") : json(r.kappa.to_double())},
              {"targetOnly", r.cut.target_only},
              {"formula", r.formula_text},
              {"objective", r.objective_text},
              {"cnf", {{"variables", r.cnf.variables}, {"clauses", r.cnf.clauses}}},
              {"timings", {{"transformationMs", r.transformation_ms}, {"solveMs", r.solve_ms}}},
              {"componentsAfterCut", r.components_after_cut}};
}

}  // namespace criticut
