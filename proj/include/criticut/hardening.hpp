#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include <nlohmann/json.hpp>

#include "criticut/graph.hpp"

namespace criticut {

/// Physical protection measures and their weights.
enum class Measure : std::uint8_t {
  container,            ///< C, 1
  locked_container,     ///< LC, 2
  fenced_area,          ///< F, 1
  building,             ///< B, 2
  locked_building,      ///< LB, 3
  alarm_system,         ///< AS, 3
  multi_authentication  ///< MA, 4
};

int measure_weight(Measure m);
std::string_view measure_code(Measure m);
std::optional<Measure> parse_measure(std::string_view code);

class MeasureSet {
 public:
  MeasureSet() = default;
  MeasureSet(std::initializer_list<Measure> ms) {
    for (Measure m : ms) add(m);
  }
  void add(Measure m) { bits_ |= bit(m); }
  bool contains(Measure m) const { return (bits_ & bit(m)) != 0; }
  std::vector<Measure> members() const;
  /// Comma-separated codes such as "C,F,AS"; empty text is the empty set.
  static MeasureSet parse(std::string_view text);
  /// Codes in table order, e.g. "{C, F}".
  std::string to_string() const;

 private:
  static std::uint8_t bit(Measure m) { return static_cast<std::uint8_t>(1u << static_cast<int>(m)); }
  std::uint8_t bits_ = 0;
};

/// Sum of member weights.
Cost score(const MeasureSet& measures);

/// Depth of every atomic node from a virtual source feeding every node
/// without inputs (so those nodes get 1; the source itself is reported as 0).
/// An infinite target keeps its infinite cost.
std::map<std::string, Cost> perimeter_costs(const AndOrGraph& graph,
                                            DepthMode mode = DepthMode::count_logical);

/// The graph with perimeter_costs applied (virtual source excluded).
AndOrGraph with_perimeter_costs(const AndOrGraph& graph,
                                DepthMode mode = DepthMode::count_logical);

struct HardeningRound {
  std::vector<std::string> cut;
  Cost cost;
  /// Nodes made infinite before this round was analysed.
  std::vector<std::string> remediated_so_far;
  /// Cut is {target} at infinite cost: no finite attack remains.
  bool terminal = false;
};

struct HardeningTrace {
  std::vector<HardeningRound> rounds;
  /// "threshold reached", "max rounds", "fully hardened" or "target undisruptable".
  std::string stop_reason;
};

struct HardenOptions {
  std::optional<Cost> threshold;
  std::optional<std::size_t> max_rounds;
};

/// Repeatedly computes the optimal cut and remediates it (cost := inf).
HardeningTrace harden_iterate(const AndOrGraph& graph, std::string_view t,
                              const HardenOptions& options = {});

nlohmann::ordered_json trace_to_json(const HardeningTrace& trace);

/// cost'(n) = alpha * cost(n) + beta * budget(n), in milli-units rounded half
/// away from zero. alpha and beta lie in [0, 1] and sum to exactly 1.
/// Infinite costs stay infinite; every finite-cost node needs a budget.
std::map<std::string, Cost> budget_costs(const std::map<std::string, Cost>& costs,
                                         const std::map<std::string, Cost>& budgets, Cost alpha,
                                         Cost beta);

}  // namespace criticut
