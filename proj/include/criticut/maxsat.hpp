#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "criticut/cnf.hpp"
#include "criticut/cost.hpp"

namespace criticut {

struct WpmsSolution {
  /// model[v] for v in 1..variables(); index 0 unused.
  std::vector<bool> model;
  /// Falsified soft variables, ordered by variable name.
  std::vector<int> falsified;
  /// Sum of falsified soft weights, milli-units.
  std::int64_t penalty = 0;
  std::size_t cardinality() const { return falsified.size(); }
};

struct SolverStats {
  std::uint64_t nodes = 0;
  std::uint64_t propagations = 0;
};

/// Hard clauses are the CNF's clauses plus a unit (v) for every infinite-cost
/// atom; every finite-cost atom becomes a soft unit weighted in milli-units.
/// Throws Error naming a named variable without a cost, or with cost 0.
WpmsInstance build_instance(const CnfFormula& cnf, const std::map<std::string, Cost>& costs);

/// Exact optimum: least penalty, then fewest falsified softs, then the
/// lexicographically smallest sorted list of falsified names. Returns
/// nullopt when the hard clauses are unsatisfiable.
std::optional<WpmsSolution> solve(const WpmsInstance& inst, SolverStats* stats = nullptr);

/// Exhaustive reference with the same contract as solve(). Throws Error for
/// more than kBruteForceMaxSoft soft clauses.
inline constexpr std::size_t kBruteForceMaxSoft = 24;
std::optional<WpmsSolution> brute_force(const WpmsInstance& inst);

/// Names of the falsified soft variables, in the solution's order.
std::vector<std::string> falsified_names(const WpmsInstance& inst, const WpmsSolution& sol);

/// Rechecks a solution against the instance: hard clauses hold, the
/// falsified list, penalty and order match the model. Throws Error otherwise.
void check_solution(const WpmsInstance& inst, const WpmsSolution& sol);

}  // namespace criticut
