#pragma once

#include <memory>
#include <span>
#include <string>
#include <string_view>
#include <unordered_map>
#include <vector>

#include "criticut/graph.hpp"

namespace criticut {

/// Immutable propositional formula. Copies share structure.
class Formula {
 public:
  enum class Kind { atom, negation, conjunction, disjunction, constant_true };

  static Formula atom(std::string id);
  static Formula negation(Formula operand);
  /// One or more operands; a single operand is kept as a unary conjunction.
  static Formula conjunction(std::vector<Formula> operands);
  /// Two or more operands.
  static Formula disjunction(std::vector<Formula> operands);
  static Formula constant_true();

  Kind kind() const { return rep_->kind; }
  bool is_atom() const { return kind() == Kind::atom; }
  /// Node id of an atom; empty for other kinds.
  const std::string& atom_id() const { return rep_->id; }
  std::span<const Formula> operands() const { return rep_->operands; }

  /// Number of AST nodes, counting shared subtrees once per occurrence.
  std::size_t size() const;

  friend bool operator==(const Formula& a, const Formula& b);

 private:
  struct Rep {
    Kind kind;
    std::string id;
    std::vector<Formula> operands;
  };
  explicit Formula(std::shared_ptr<const Rep> rep) : rep_(std::move(rep)) {}
  std::shared_ptr<const Rep> rep_;
};

/// Truth values per atom id: true = operational, false = compromised.
using Assignment = std::unordered_map<std::string, bool>;

/// Builds the sentence describing when node `n` operates, walking the graph
/// backwards. `visited` holds the nodes already expanded on the current path.
/// Predecessors are visited in ascending id order.
Formula get_sentence(const AndOrGraph& graph, std::string_view n,
                     const std::vector<std::string>& visited = {});

/// Joins the sentences of `nodes` with `op` (conjunction or disjunction).
/// An empty list yields constant_true(); a single node yields its sentence.
Formula get_multi_sentence(const AndOrGraph& graph, std::span<const std::string> nodes,
                           Formula::Kind op, const std::vector<std::string>& visited = {});

/// Operating condition of target `t`; throws Error if `t` is not atomic.
Formula form(const AndOrGraph& graph, std::string_view t);

/// Not(f), without rewriting.
Formula negate(Formula f);

/// Throws Error naming the first atom missing from `a`.
bool evaluate(const Formula& f, const Assignment& a);

/// Atom ids in order of first appearance (left to right).
std::vector<std::string> atoms_of(const Formula& f);

/// Tool notation: "&", "|", "~", space-separated tokens, every compound
/// operand parenthesised, the outermost parentheses omitted. For example
/// "c1 & ( d & ( a | b ) )" and "~( c1 & d )".
std::string to_string(const Formula& f);

}  // namespace criticut
