#pragma once

#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <unordered_map>
#include <vector>

#include "criticut/formula.hpp"

namespace criticut {

/// Signed DIMACS literal: v or -v, v >= 1.
using Literal = int;
using Clause = std::vector<Literal>;

/// Variable numbering. Named variables (graph atoms) occupy 1..k densely;
/// auxiliary variables follow and have an empty name.
class VarMap {
 public:
  /// Returns the existing variable for `name` or allocates the next one.
  /// Throws Error once an auxiliary variable has been allocated.
  int add_named(const std::string& name);
  int add_auxiliary();

  int variables() const { return static_cast<int>(names_.size()); }
  int named_count() const { return named_; }
  std::optional<int> var_of(std::string_view name) const;
  /// Empty for auxiliaries; throws Error for v outside 1..variables().
  const std::string& name(int v) const;
  bool is_named(int v) const { return v >= 1 && v <= named_; }

 private:
  std::vector<std::string> names_;
  std::unordered_map<std::string, int> index_;
  int named_ = 0;
};

struct CnfFormula {
  std::vector<Clause> clauses;
  VarMap var_map;
  int variables() const { return var_map.variables(); }
  std::size_t clause_count() const { return clauses.size(); }
};

struct TseitinOptions {
  /// Emit only the implication direction each gate's polarity needs
  /// (Plaisted-Greenbaum). Off by default.
  bool polarity = false;
};

/// Equisatisfiable CNF. Atoms get 1..k in first-appearance order, gates get
/// auxiliaries in post-order; the root unit clause comes first, then each
/// gate's biconditional clauses in post-order. Negations fold into literals.
/// Throws Error("trivially satisfiable") for a constant-true root.
CnfFormula tseitin(const Formula& f, const TseitinOptions& options = {});

/// "c <var> <nodeId>" comment per named variable, then "p cnf V C" and one
/// 0-terminated clause per line.
std::string emit_dimacs(const CnfFormula& cnf);

/// Sidecar file: "var<TAB>nodeId" per named variable.
std::string emit_var_map(const VarMap& vars);

/// Evaluates every clause; `model[v]` is the value of variable v (index 0 unused).
bool satisfies(std::span<const Clause> clauses, const std::vector<bool>& model);

struct SoftClause {
  int var = 0;
  /// Milli-units, > 0.
  std::int64_t weight = 0;
};

/// Weighted partial MAX-SAT instance whose soft clauses are positive units.
struct WpmsInstance {
  std::vector<Clause> hard;
  std::vector<SoftClause> soft;
  VarMap var_map;
  int variables() const { return var_map.variables(); }
};

/// Classic weighted DIMACS: variable-name comments, "p wcnf V C TOP", hard
/// clauses weighted TOP = 1 + sum of soft weights. Throws Error on overflow.
std::string emit_wcnf(const WpmsInstance& inst);

/// Reads classic ("p wcnf") or header-less ("h" prefixed hard clauses)
/// weighted DIMACS. "c <var> <name>" comments restore names; unnamed
/// variables become "v00001"-style. Soft clauses that are not positive units
/// are rewritten with a fresh relaxation variable ("r00001"-style).
/// Throws Error with the line number on malformed input.
WpmsInstance parse_wcnf(std::string_view text);

}  // namespace criticut
