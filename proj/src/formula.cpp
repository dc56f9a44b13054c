#include "criticut/formula.hpp"

#include <unordered_set>

#include <fmt/format.h>

namespace criticut {

Formula Formula::atom(std::string id) {
  return Formula(std::make_shared<const Rep>(Rep{Kind::atom, std::move(id), {}}));
}

Formula Formula::negation(Formula operand) {
  return Formula(std::make_shared<const Rep>(Rep{Kind::negation, {}, {std::move(operand)}}));
}

Formula Formula::conjunction(std::vector<Formula> operands) {
  if (operands.empty()) throw Error("conjunction needs at least one operand");
  return Formula(std::make_shared<const Rep>(Rep{Kind::conjunction, {}, std::move(operands)}));
}

Formula Formula::disjunction(std::vector<Formula> operands) {
  if (operands.size() < 2) throw Error("disjunction needs at least two operands");
  return Formula(std::make_shared<const Rep>(Rep{Kind::disjunction, {}, std::move(operands)}));
}

Formula Formula::constant_true() {
  static const Formula kTrue(std::make_shared<const Rep>(Rep{Kind::constant_true, {}, {}}));
  return kTrue;
}

std::size_t Formula::size() const {
  std::size_t n = 1;
  for (const Formula& op : operands()) n += op.size();
  return n;
}

bool operator==(const Formula& a, const Formula& b) {
  if (a.rep_ == b.rep_) return true;
  if (a.kind() != b.kind() || a.atom_id() != b.atom_id()) return false;
  auto x = a.operands();
  auto y = b.operands();
  if (x.size() != y.size()) return false;
  for (std::size_t i = 0; i < x.size(); ++i)
    if (!(x[i] == y[i])) return false;
  return true;
}

namespace {

class SentenceBuilder {
 public:
  SentenceBuilder(const AndOrGraph& g, const std::vector<std::string>& visited)
      : g_(g), visited_(g.size(), 0) {
    for (const auto& id : visited) visited_[g.index_of(id)] = 1;
  }

  Formula sentence(NodeIndex n) {
    const char was_visited = visited_[n];
    visited_[n] = 1;
    const Node& node = g_.node(n);
    Formula p = Formula::constant_true();
    if (is_atomic(node.kind)) {
      auto preds = g_.predecessors(n);
      // The visited check uses the set as it was before n was marked.
      const bool stop =
          preds.empty() || (preds.front() == n ? was_visited != 0 : visited_[preds.front()] != 0);
      if (stop)
        p = Formula::atom(node.id);
      else
        p = Formula::conjunction({Formula::atom(node.id), sentence(preds.front())});
    } else {
      std::vector<NodeIndex> unseen;
      for (NodeIndex x : g_.predecessors(n))
        if (!visited_[x]) unseen.push_back(x);
      p = multi(unseen, node.kind == NodeKind::and_gate ? Formula::Kind::conjunction
                                                        : Formula::Kind::disjunction);
    }
    visited_[n] = was_visited;
    return p;
  }

  Formula multi(std::span<const NodeIndex> nodes, Formula::Kind op) {
    if (nodes.empty()) return Formula::constant_true();
    if (nodes.size() == 1) return sentence(nodes.front());
    std::vector<Formula> parts;
    parts.reserve(nodes.size());
    for (NodeIndex x : nodes) parts.push_back(sentence(x));
    return op == Formula::Kind::conjunction ? Formula::conjunction(std::move(parts))
                                            : Formula::disjunction(std::move(parts));
  }

 private:
  const AndOrGraph& g_;
  std::vector<char> visited_;
};

}  // namespace

Formula get_sentence(const AndOrGraph& graph, std::string_view n,
                     const std::vector<std::string>& visited) {
  SentenceBuilder builder(graph, visited);
  return builder.sentence(graph.index_of(n));
}

Formula get_multi_sentence(const AndOrGraph& graph, std::span<const std::string> nodes,
                           Formula::Kind op, const std::vector<std::string>& visited) {
  if (op != Formula::Kind::conjunction && op != Formula::Kind::disjunction)
    throw Error("multi-sentence operator must be a conjunction or a disjunction");
  SentenceBuilder builder(graph, visited);
  std::vector<NodeIndex> idx;
  idx.reserve(nodes.size());
  for (const auto& id : nodes) idx.push_back(graph.index_of(id));
  return builder.multi(idx, op);
}

Formula form(const AndOrGraph& graph, std::string_view t) {
  const NodeIndex i = graph.index_of(t);
  if (!is_atomic(graph.node(i).kind))
    throw Error(fmt::format("target \"{}\" is not an atomic node", t));
  SentenceBuilder builder(graph, {});
  return builder.sentence(i);
}

Formula negate(Formula f) { return Formula::negation(std::move(f)); }

bool evaluate(const Formula& f, const Assignment& a) {
  switch (f.kind()) {
    case Formula::Kind::constant_true: return true;
    case Formula::Kind::atom: {
      auto it = a.find(f.atom_id());
      if (it == a.end()) throw Error(fmt::format("assignment has no value for \"{}\"", f.atom_id()));
      return it->second;
    }
    case Formula::Kind::negation: return !evaluate(f.operands().front(), a);
    case Formula::Kind::conjunction:
      for (const Formula& op : f.operands())
        if (!evaluate(op, a)) return false;
      return true;
    case Formula::Kind::disjunction:
      for (const Formula& op : f.operands())
        if (evaluate(op, a)) return true;
      return false;
  }
  return false;
}

namespace {

void collect_atoms(const Formula& f, std::unordered_set<std::string>& seen,
                   std::vector<std::string>& out) {
  if (f.is_atom()) {
    if (seen.insert(f.atom_id()).second) out.push_back(f.atom_id());
    return;
  }
  for (const Formula& op : f.operands()) collect_atoms(op, seen, out);
}

void print(const Formula& f, std::string& out, bool outermost) {
  switch (f.kind()) {
    case Formula::Kind::atom: out += f.atom_id(); return;
    case Formula::Kind::constant_true: out += "true"; return;
    case Formula::Kind::negation: {
      const Formula& inner = f.operands().front();
      out += '~';
      if (inner.is_atom() || inner.kind() == Formula::Kind::constant_true) {
        print(inner, out, false);
      } else {
        out += "( ";
        print(inner, out, true);
        out += " )";
      }
      return;
    }
    case Formula::Kind::conjunction:
    case Formula::Kind::disjunction: {
      const char* sep = f.kind() == Formula::Kind::conjunction ? " & " : " | ";
      if (!outermost) out += "( ";
      bool first = true;
      for (const Formula& op : f.operands()) {
        if (!first) out += sep;
        first = false;
        print(op, out, false);
      }
      if (!outermost) out += " )";
      return;
    }
  }
}

}  // namespace

std::vector<std::string> atoms_of(const Formula& f) {
  std::unordered_set<std::string> seen;
  std::vector<std::string> out;
  collect_atoms(f, seen, out);
  return out;
}

std::string to_string(const Formula& f) {
  std::string out;
  print(f, out, true);
  return out;
}

}  // namespace criticut
