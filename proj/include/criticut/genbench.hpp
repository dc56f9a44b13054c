#pragma once

#include <cstdint>
#include <functional>
#include <string>
#include <string_view>
#include <vector>

#include "criticut/graph.hpp"

namespace criticut {

/// Node-kind percentages for generated graphs.
struct CompositionConfig {
  int atomic = 60;
  int and_gate = 20;
  int or_gate = 20;

  /// Throws Error unless the parts are nonnegative, sum to 100 and atomic >= 1.
  void validate() const;
  /// Accepts "60,20,20" or "60-20-20".
  static CompositionConfig parse(std::string_view text);
  /// "60-20-20".
  std::string to_string() const;
  friend bool operator==(const CompositionConfig&, const CompositionConfig&) = default;
};

/// Seeded random AND/OR graph grown backwards from an actuator target. Every
/// frontier node gets predecessors whose kinds are drawn per `cfg`: atomic
/// nodes one, logical nodes two or three. Growth stops once at least `n`
/// nodes exist; logical nodes still waiting for inputs then draw them from
/// the unexpanded atomic leaves. Atomic costs are uniform integers 1..10.
AndOrGraph generate(std::size_t n, const CompositionConfig& cfg, std::uint64_t seed);

/// Per-(size, iteration) seed, independent of the configuration so that
/// different configurations can be compared on paired seeds.
std::uint64_t derive_seed(std::uint64_t base, std::size_t size, std::size_t iteration);

struct BenchRecord {
  std::size_t size = 0;
  CompositionConfig config;
  std::size_t iteration = 0;
  std::uint64_t seed = 0;
  std::size_t nodes = 0;
  double transformation_ms = 0;
  double solve_ms = 0;
  int cnf_variables = 0;
  std::size_t cnf_clauses = 0;
  /// Canonical cost text; empty on failure.
  std::string cut_cost;
  std::size_t cut_size = 0;
  /// "ok" or "error".
  std::string status = "ok";
  std::string error;
  friend bool operator==(const BenchRecord&, const BenchRecord&) = default;
};

using BenchProgress = std::function<void(const BenchRecord&)>;

/// Generates and analyses one graph per (size, iteration), in that order.
/// Failures are recorded in the record and the run continues.
std::vector<BenchRecord> run_bench(const std::vector<std::size_t>& sizes,
                                   const CompositionConfig& cfg, std::size_t iterations,
                                   std::uint64_t seed_base, const BenchProgress& progress = {});

/// One analysis as a record (used by run_bench).
BenchRecord bench_one(std::size_t size, const CompositionConfig& cfg, std::size_t iteration,
                      std::uint64_t seed);

std::string bench_csv_header();
std::string bench_csv_row(const BenchRecord& r);
std::string bench_csv(const std::vector<BenchRecord>& records);
/// Inverse of bench_csv; throws Error on malformed input.
std::vector<BenchRecord> parse_bench_csv(std::string_view text);

}  // namespace criticut
