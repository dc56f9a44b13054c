#pragma once

#include <optional>
#include <span>
#include <string>
#include <vector>

#include <nlohmann/json.hpp>

#include "criticut/cnf.hpp"
#include "criticut/formula.hpp"
#include "criticut/graph.hpp"
#include "criticut/maxsat.hpp"

namespace criticut {

/// No finite-cost set of nodes disables the target.
class UnsatError : public Error {
 public:
  using Error::Error;
};

/// Minimum-cost set of atomic nodes whose compromise disables the target.
struct CutSolution {
  /// Sorted node ids.
  std::vector<std::string> nodes;
  /// Exact sum of member costs; infinite only for a terminal target-only cut.
  Cost cost;
  /// True when the cut is exactly {target}.
  bool target_only = false;
  std::size_t cardinality() const { return nodes.size(); }
};

struct CnfStats {
  int variables = 0;
  std::size_t clauses = 0;
};

struct MetricReport {
  std::string target;
  CutSolution cut;
  Cost kappa;
  std::string formula_text;
  std::string objective_text;
  CnfStats cnf;
  /// Thread CPU time of form + negate + Tseitin.
  double transformation_ms = 0;
  /// Thread CPU time of instance construction + MAX-SAT search.
  double solve_ms = 0;
  /// Weakly connected components left after removing the cut (diagnostic).
  std::size_t components_after_cut = 0;
  SolverStats solver;
};

struct AnalyzeOptions {
  TseitinOptions tseitin;
  /// Skip building formula_text/objective_text (large graphs).
  bool skip_texts = false;
  /// Accept OR/AND nodes left with a single input (graphs produced by
  /// remove_nodes); every other structural rule still applies.
  bool allow_reduced_gates = false;
};

/// Every intermediate product of one analysis.
struct Analysis {
  /// Input graph plus the artificial source, if one was needed.
  AndOrGraph graph;
  Formula formula = Formula::constant_true();
  CnfFormula cnf;
  WpmsInstance instance;
  MetricReport report;
};

/// Full pipeline. Throws ValidationError for an invalid graph and UnsatError
/// when the target cannot be disabled. `target` overrides the graph's target.
Analysis analyze_full(const AndOrGraph& graph, const std::optional<std::string>& target = {},
                      const AnalyzeOptions& options = {});
MetricReport analyze(const AndOrGraph& graph, const std::optional<std::string>& target = {},
                     const AnalyzeOptions& options = {});

/// The optimal cut (least cost, then fewest nodes, then smallest id list).
CutSolution mu(const AndOrGraph& graph, std::string_view t);
Cost kappa(const AndOrGraph& graph, std::string_view t);

/// True iff `cut` is {t}, or the target's formula is false with the cut's
/// atoms false and every other atom true. Unknown or logical ids throw Error.
bool verify_cut(const AndOrGraph& graph, std::string_view t, std::span<const std::string> cut);

/// wcc(remove_nodes(graph, cut)).
std::size_t cut_components(const AndOrGraph& graph, std::span<const std::string> cut);

/// Cost of the given node set (sum of node costs).
Cost cut_cost(const AndOrGraph& graph, std::span<const std::string> ids);

/// Console report: formula, objective, CNF stats, then the cut with its
/// members in graph declaration order.
std::string text_report(const AndOrGraph& graph, const MetricReport& report,
                        std::optional<int> precision = std::nullopt);

/// {"nodes": [{id,type,value}...], "cost": number} with nodes sorted by id.
/// An infinite cost is written as the string "inf".
nlohmann::ordered_json cut_to_json(const AndOrGraph& graph, const CutSolution& cut);

/// {"graph": ..., "cut": ...} for the input graph (without artificial source).
nlohmann::ordered_json output_document(const AndOrGraph& graph, const CutSolution& cut);

/// Report as JSON: target, cut, kappa, formula, objective, cnf, timings.
nlohmann::ordered_json report_to_json(const AndOrGraph& graph, const MetricReport& report);

}  // namespace criticut
