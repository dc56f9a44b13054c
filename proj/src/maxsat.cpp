#include "criticut/maxsat.hpp"

#include <algorithm>
#include <cstdlib>
#include <limits>
#include <unordered_map>

#include <fmt/format.h>

namespace criticut {

WpmsInstance build_instance(const CnfFormula& cnf, const std::map<std::string, Cost>& costs) {
  WpmsInstance inst;
  inst.var_map = cnf.var_map;
  inst.hard = cnf.clauses;
  for (int v = 1; v <= cnf.var_map.named_count(); ++v) {
    const std::string& id = cnf.var_map.name(v);
    auto it = costs.find(id);
    if (it == costs.end()) throw Error(fmt::format("no cost for node \"{}\"", id));
    const Cost& c = it->second;
    if (c.is_infinite()) {
      inst.hard.push_back({v});
    } else if (c.is_zero()) {
      throw Error(fmt::format(
          "node \"{}\" has cost 0; use a small positive cost such as 0.001, or remove the node "
          "to model it as already compromised",
          id));
    } else {
      inst.soft.push_back({v, c.milli()});
    }
  }
  return inst;
}

std::vector<std::string> falsified_names(const WpmsInstance& inst, const WpmsSolution& sol) {
  std::vector<std::string> out;
  out.reserve(sol.falsified.size());
  for (int v : sol.falsified) out.push_back(inst.var_map.name(v));
  return out;
}

namespace {

constexpr std::int64_t kInf = std::numeric_limits<std::int64_t>::max() / 4;

/// Soft variables with merged weights, indexed by variable.
struct SoftTable {
  std::vector<int> vars;
  std::vector<std::int64_t> weight;  // per variable, 0 when not soft
};

SoftTable soft_table(const WpmsInstance& inst) {
  SoftTable t;
  t.weight.assign(static_cast<std::size_t>(inst.variables()) + 1, 0);
  std::int64_t total = 0;
  for (const SoftClause& s : inst.soft) {
    if (s.var < 1 || s.var > inst.variables())
      throw Error(fmt::format("soft clause on unknown variable {}", s.var));
    if (s.weight <= 0) throw Error(fmt::format("soft clause on variable {} has weight <= 0", s.var));
    if (s.weight > kInf - total) throw Error("sum of soft weights is too large");
    total += s.weight;
    if (t.weight[s.var] == 0) t.vars.push_back(s.var);
    t.weight[s.var] += s.weight;
  }
  std::sort(t.vars.begin(), t.vars.end());
  for (const Clause& c : inst.hard)
    for (Literal l : c)
      if (l == 0 || std::abs(l) > inst.variables())
        throw Error(fmt::format("hard clause literal {} out of range", l));
  return t;
}

bool name_less(const WpmsInstance& inst, const std::vector<int>& a, const std::vector<int>& b) {
  return std::lexicographical_compare(
      a.begin(), a.end(), b.begin(), b.end(),
      [&](int x, int y) { return inst.var_map.name(x) < inst.var_map.name(y); });
}

void sort_by_name(const WpmsInstance& inst, std::vector<int>& vars) {
  std::sort(vars.begin(), vars.end(), [&](int x, int y) {
    return inst.var_map.name(x) < inst.var_map.name(y);
  });
}

WpmsSolution make_solution(const WpmsInstance& inst, const SoftTable& t, std::vector<bool> model) {
  WpmsSolution sol;
  sol.model = std::move(model);
  for (int v : t.vars)
    if (!sol.model[v]) {
      sol.falsified.push_back(v);
      sol.penalty += t.weight[v];
    }
  sort_by_name(inst, sol.falsified);
  return sol;
}

// Unit propagation over the hard clauses with two watched literals.
class Engine {
 public:
  Engine(const WpmsInstance& inst, const SoftTable& softs) : vars_(inst.variables()), soft_(softs) {
    const auto n = static_cast<std::size_t>(vars_) + 1;
    val_.assign(n, -1);
    lev_.assign(n, 0);
    reason_.assign(n, -1);
    watches_.resize(2 * n);
    for (const Clause& raw : inst.hard) {
      Clause c;
      bool taut = false;
      for (Literal l : raw) {
        if (std::find(c.begin(), c.end(), -l) != c.end()) taut = true;
        if (std::find(c.begin(), c.end(), l) == c.end()) c.push_back(l);
      }
      if (taut) continue;
      if (c.empty()) {
        empty_clause_ = true;
      } else if (c.size() == 1) {
        units_.push_back(c.front());
      } else {
        const int id = static_cast<int>(start_.size());
        start_.push_back(lits_.size());
        size_.push_back(static_cast<int>(c.size()));
        lits_.insert(lits_.end(), c.begin(), c.end());
        watches_[index(c[0])].push_back(id);
        watches_[index(c[1])].push_back(id);
      }
    }
  }

  int variables() const { return vars_; }
  int value(int v) const { return val_[v]; }
  int lit_value(Literal l) const {
    const int x = val_[std::abs(l)];
    return x < 0 ? -1 : (l > 0 ? x : 1 - x);
  }
  int level() const { return static_cast<int>(level_start_.size()); }
  int var_level(int v) const { return lev_[v]; }
  std::int64_t penalty() const { return pen_; }
  std::int64_t cardinality() const { return card_; }
  std::uint64_t propagations() const { return props_; }

  /// Clears every assignment and asserts the unit clauses at level 0.
  bool reset() {
    backtrack(0);
    while (!trail_.empty()) unassign_last();
    qhead_ = 0;
    if (empty_clause_) return false;
    for (Literal l : units_) {
      const int x = lit_value(l);
      if (x == 0) return false;
      if (x < 0) assign(l, -1);
    }
    return propagate() < 0;
  }

  void new_level() { level_start_.push_back(trail_.size()); }

  void assign(Literal l, int reason) {
    const int v = std::abs(l);
    val_[v] = l > 0 ? 1 : 0;
    lev_[v] = level();
    reason_[v] = reason;
    trail_.push_back(l);
    if (l < 0 && soft_.weight[v] > 0) {
      pen_ += soft_.weight[v];
      ++card_;
    }
  }

  /// Index of a conflicting clause, or -1.
  int propagate() {
    while (qhead_ < trail_.size()) {
      const Literal p = trail_[qhead_++];
      ++props_;
      auto& ws = watches_[index(-p)];
      std::size_t i = 0, j = 0;
      while (i < ws.size()) {
        const int c = ws[i++];
        Literal* cl = &lits_[start_[c]];
        const int n = size_[c];
        if (cl[0] == -p) std::swap(cl[0], cl[1]);
        if (lit_value(cl[0]) == 1) {
          ws[j++] = c;
          continue;
        }
        bool moved = false;
        for (int k = 2; k < n; ++k) {
          if (lit_value(cl[k]) != 0) {
            std::swap(cl[1], cl[k]);
            watches_[index(cl[1])].push_back(c);
            moved = true;
            break;
          }
        }
        if (moved) continue;
        ws[j++] = c;
        if (lit_value(cl[0]) == 0) {
          while (i < ws.size()) ws[j++] = ws[i++];
          ws.resize(j);
          qhead_ = trail_.size();
          return c;
        }
        assign(cl[0], c);
      }
      ws.resize(j);
    }
    return -1;
  }

  void backtrack(int lvl) {
    if (lvl >= level()) return;
    const std::size_t keep = level_start_[static_cast<std::size_t>(lvl)];
    while (trail_.size() > keep) unassign_last();
    level_start_.resize(static_cast<std::size_t>(lvl));
    qhead_ = std::min(qhead_, trail_.size());
  }

  /// Decisions above `base` in the implication cone of clause `c`.
  std::vector<int> cone_of_clause(int c, int base) {
    std::vector<int> stack;
    for (int k = 0; k < size_[c]; ++k) stack.push_back(std::abs(lits_[start_[c] + k]));
    return cone(std::move(stack), base);
  }

  /// Decisions above `base` that forced the current value of `v`.
  std::vector<int> cone_of_var(int v, int base) { return cone({v}, base); }

  std::vector<bool> snapshot() const {
    std::vector<bool> m(static_cast<std::size_t>(vars_) + 1, false);
    for (int v = 1; v <= vars_; ++v) m[v] = val_[v] == 1;
    return m;
  }

 private:
  static std::size_t index(Literal l) {
    return l > 0 ? 2 * static_cast<std::size_t>(l) : 2 * static_cast<std::size_t>(-l) + 1;
  }

  void unassign_last() {
    const Literal l = trail_.back();
    trail_.pop_back();
    const int v = std::abs(l);
    if (l < 0 && soft_.weight[v] > 0) {
      pen_ -= soft_.weight[v];
      --card_;
    }
    val_[v] = -1;
    reason_[v] = -1;
  }

  std::vector<int> cone(std::vector<int> stack, int base) {
    std::vector<int> out;
    seen_.resize(val_.size(), 0);
    std::vector<int> touched;
    while (!stack.empty()) {
      const int u = stack.back();
      stack.pop_back();
      if (seen_[u] || val_[u] < 0 || lev_[u] <= base) continue;
      seen_[u] = 1;
      touched.push_back(u);
      const int r = reason_[u];
      if (r < 0) {
        out.push_back(u);
      } else {
        for (int k = 0; k < size_[r]; ++k) stack.push_back(std::abs(lits_[start_[r] + k]));
      }
    }
    for (int u : touched) seen_[u] = 0;
    return out;
  }

  int vars_;
  const SoftTable& soft_;
  std::vector<Literal> lits_;
  std::vector<std::size_t> start_;
  std::vector<int> size_;
  std::vector<Literal> units_;
  bool empty_clause_ = false;
  std::vector<std::vector<int>> watches_;
  std::vector<signed char> val_;
  std::vector<int> lev_;
  std::vector<int> reason_;
  std::vector<Literal> trail_;
  std::vector<std::size_t> level_start_;
  std::size_t qhead_ = 0;
  std::int64_t pen_ = 0;
  std::int64_t card_ = 0;
  std::uint64_t props_ = 0;
  std::vector<char> seen_;
};

struct Incumbent {
  std::int64_t penalty = 0;
  std::int64_t cardinality = 0;
  std::vector<bool> model;
};

struct Bound {
  bool reached = false;
  std::int64_t lb = 0;
  std::vector<int> first_core;
};

enum class Step { prune, branch, stop };

struct NodeResult {
  Step step = Step::prune;
  int var = 0;
  bool value = true;
};

class Solver {
 public:
  Solver(const WpmsInstance& inst, const SoftTable& softs)
      : inst_(inst), softs_(softs), e_(inst, softs) {
    const auto n = static_cast<std::size_t>(inst.variables()) + 1;
    unit_.assign(n, 0);
    for (int v : softs_.vars) unit_[v] = 1;
    resid_.assign(n, 0);
    by_weight_ = softs_.vars;
    std::sort(by_weight_.begin(), by_weight_.end(), [&](int a, int b) {
      if (softs_.weight[a] != softs_.weight[b]) return softs_.weight[a] > softs_.weight[b];
      return a < b;
    });
  }

  std::optional<WpmsSolution> run(SolverStats* stats) {
    auto best = minimize_penalty();
    if (best) {
      const std::int64_t p = best->penalty;
      const std::int64_t k = minimize_cardinality(*best);
      auto model = least_names(p, k);
      best = Incumbent{p, k, std::move(model)};
    }
    if (stats) {
      stats->nodes = nodes_;
      stats->propagations = e_.propagations();
    }
    if (!best) return std::nullopt;
    WpmsSolution sol = make_solution(inst_, softs_, std::move(best->model));
    check_solution(inst_, sol);
    return sol;
  }

 private:
  // Core-guided lower bound on the weight of softs still unassigned that any
  // extension of the current state must falsify. Stops once the bound reaches
  // `threshold`. Without early stop, all positive-residual softs remain
  // assumed true on the trail; the caller backtracks.
  Bound lower_bound(const std::vector<std::int64_t>& weight, std::int64_t threshold) {
    Bound out;
    const int base = e_.level();
    if (threshold <= 0) {
      out.reached = true;
      return out;
    }
    std::vector<int> cand;
    for (int v : by_weight_)
      if (e_.value(v) < 0 && weight[v] > 0) {
        cand.push_back(v);
        resid_[v] = weight[v];
      }
    struct Assumed {
      int var;
      std::size_t pos;
    };
    std::vector<Assumed> assumed;
    std::size_t pos = 0;

    auto take_core = [&](std::vector<int> core) -> bool {
      if (core.empty()) {
        out.lb = threshold;
        return true;
      }
      if (out.first_core.empty()) out.first_core = core;
      std::int64_t delta = kInf;
      for (int v : core) delta = std::min(delta, resid_[v]);
      out.lb += delta;
      for (int v : core) resid_[v] -= delta;
      if (out.lb >= threshold) return true;
      for (std::size_t k = 0; k < assumed.size(); ++k) {
        if (resid_[assumed[k].var] == 0) {
          e_.backtrack(base + static_cast<int>(k));
          pos = assumed[k].pos;
          assumed.resize(k);
          break;
        }
      }
      return false;
    };

    while (pos < cand.size()) {
      const int v = cand[pos];
      if (resid_[v] == 0 || e_.value(v) == 1) {
        ++pos;
        continue;
      }
      if (e_.value(v) == 0) {
        std::vector<int> core = e_.cone_of_var(v, base);
        core.push_back(v);
        if (take_core(std::move(core))) {
          out.reached = true;
          e_.backtrack(base);
          return out;
        }
        continue;
      }
      e_.new_level();
      e_.assign(v, -1);
      assumed.push_back({v, pos});
      ++pos;
      const int conflict = e_.propagate();
      if (conflict >= 0) {
        const int level_before = e_.level();
        if (take_core(e_.cone_of_clause(conflict, base))) {
          out.reached = true;
          e_.backtrack(base);
          return out;
        }
        if (e_.level() >= level_before) throw Error("internal solver error: core without drop");
      }
    }
    return out;
  }

  // Completes the current state over the remaining variables with a
  // chronological search. Leaves the engine at its starting level.
  bool complete(std::vector<bool>& model) {
    const int base = e_.level();
    struct Decision {
      int var;
      bool flipped;
    };
    std::vector<Decision> stack;
    int next = 1;
    const int n = e_.variables();
    while (true) {
      while (next <= n && e_.value(next) >= 0) ++next;
      if (next > n) {
        model = e_.snapshot();
        e_.backtrack(base);
        return true;
      }
      const int v = next;
      const bool prefer_true = unit_[v] != 0;
      e_.new_level();
      e_.assign(prefer_true ? v : -v, -1);
      stack.push_back({v, false});
      while (e_.propagate() >= 0) {
        while (!stack.empty() && stack.back().flipped) {
          stack.pop_back();
          e_.backtrack(e_.level() - 1);
        }
        if (stack.empty()) {
          e_.backtrack(base);
          return false;
        }
        e_.backtrack(e_.level() - 1);
        stack.back().flipped = true;
        const int u = stack.back().var;
        e_.new_level();
        e_.assign(unit_[u] != 0 ? -u : u, -1);
      }
      next = 1;
    }
  }

  // Assigns every soft per `model` (flipping `flip` if non-zero) and
  // completes; runs from and returns to level 0.
  bool try_softs(const std::vector<bool>& model, int flip, std::vector<bool>& out) {
    e_.backtrack(0);
    e_.new_level();
    bool ok = true;
    for (int v : softs_.vars) {
      const bool want = v == flip ? !model[v] : model[v];
      const int cur = e_.value(v);
      if (cur >= 0) {
        if ((cur == 1) != want) ok = false;
        continue;
      }
      e_.assign(want ? v : -v, -1);
    }
    ok = ok && e_.propagate() < 0 && complete(out);
    e_.backtrack(0);
    return ok;
  }

  std::int64_t penalty_of(const std::vector<bool>& model) const {
    std::int64_t p = 0;
    for (int v : softs_.vars)
      if (!model[v]) p += softs_.weight[v];
    return p;
  }

  std::int64_t cardinality_of(const std::vector<bool>& model) const {
    std::int64_t k = 0;
    for (int v : softs_.vars)
      if (!model[v]) ++k;
    return k;
  }

  // After a root lower bound left positive-residual softs assumed: falsify
  // the rest, complete, then greedily re-enable falsified softs.
  std::optional<Incumbent> greedy() {
    std::vector<int> dropped;
    for (int v : softs_.vars)
      if (e_.value(v) < 0) dropped.push_back(v);
    bool ok = true;
    for (int v : dropped) {
      if (e_.value(v) >= 0) continue;
      e_.new_level();
      e_.assign(-v, -1);
      if (e_.propagate() >= 0) {
        ok = false;
        break;
      }
    }
    std::vector<bool> model;
    ok = ok && complete(model);
    e_.backtrack(0);
    if (!ok) return std::nullopt;
    std::vector<int> off;
    for (int v : by_weight_)
      if (!model[v]) off.push_back(v);
    for (int v : off) {
      std::vector<bool> better;
      if (try_softs(model, v, better)) model = std::move(better);
    }
    return Incumbent{penalty_of(model), cardinality_of(model), std::move(model)};
  }

  int pick(const std::vector<int>& core) const {
    int best = 0;
    for (int v : core) {
      if (e_.value(v) >= 0) continue;
      if (best == 0 || softs_.weight[v] > softs_.weight[best] ||
          (softs_.weight[v] == softs_.weight[best] && v < best))
        best = v;
    }
    return best;
  }

  int pick_unassigned() const {
    for (int v : by_weight_)
      if (e_.value(v) < 0) return v;
    return 0;
  }

  // Fixes softs true at level 0; false when that is contradictory.
  bool fix_true(const std::vector<int>& vars) {
    for (int v : vars) {
      if (e_.value(v) == 0) return false;
      if (e_.value(v) < 0) e_.assign(v, -1);
    }
    return e_.propagate() < 0;
  }

  template <typename Node>
  void branch_and_bound(Node&& node) {
    struct Frame {
      int var;
      bool value;
      bool flipped;
    };
    std::vector<Frame> stack;
    const int root = e_.level();
    auto backtrack = [&]() -> bool {
      while (!stack.empty()) {
        Frame& f = stack.back();
        e_.backtrack(root + static_cast<int>(stack.size()) - 1);
        if (f.flipped) {
          stack.pop_back();
          continue;
        }
        f.flipped = true;
        f.value = !f.value;
        e_.new_level();
        e_.assign(f.value ? f.var : -f.var, -1);
        if (e_.propagate() < 0) return true;
      }
      return false;
    };
    while (true) {
      ++nodes_;
      const NodeResult r = node();
      if (r.step == Step::stop) break;
      if (r.step == Step::branch) {
        stack.push_back({r.var, r.value, false});
        e_.new_level();
        e_.assign(r.value ? r.var : -r.var, -1);
        if (e_.propagate() >= 0 && !backtrack()) break;
      } else if (!backtrack()) {
        break;
      }
    }
    e_.backtrack(root);
  }

  std::optional<Incumbent> minimize_penalty() {
    if (!e_.reset()) return std::nullopt;
    Bound root = lower_bound(softs_.weight, kInf);
    if (root.reached) return std::nullopt;
    root_lb_ = root.lb;
    root_resid_ = resid_;
    for (int v : softs_.vars)
      if (e_.value(v) >= 0 && e_.var_level(v) == 0) root_resid_[v] = 0;
    std::optional<Incumbent> best = greedy();
    e_.backtrack(0);
    if (best) {
      if (best->penalty == root_lb_) return best;
      std::vector<int> fixed;
      for (int v : softs_.vars)
        if (e_.value(v) < 0 && root_resid_[v] >= best->penalty - root_lb_) fixed.push_back(v);
      if (!fix_true(fixed)) return best;
    }
    branch_and_bound([&]() -> NodeResult {
      const std::int64_t ub = best ? best->penalty : kInf;
      const std::int64_t pen = e_.penalty();
      if (pen >= ub) return {};
      const int base = e_.level();
      Bound b = lower_bound(softs_.weight, ub - pen);
      if (b.reached) return {};
      if (b.lb == 0) {
        std::vector<bool> model;
        const bool ok = complete(model);
        e_.backtrack(base);
        if (ok) {
          best = Incumbent{pen, e_.cardinality(), std::move(model)};
          return {};
        }
        const int v = pick_unassigned();
        if (v == 0) return {};
        return {Step::branch, v, true};
      }
      e_.backtrack(base);
      return {Step::branch, pick(b.first_core), true};
    });
    return best;
  }

  // Softs that no solution with penalty <= p can falsify, per the root bound.
  std::vector<int> penalty_fixings(std::int64_t p) const {
    std::vector<int> out;
    for (int v : softs_.vars)
      if (root_resid_[v] > p - root_lb_) out.push_back(v);
    return out;
  }

  std::int64_t minimize_cardinality(const Incumbent& start) {
    const std::int64_t p = start.penalty;
    Incumbent best = start;
    if (!e_.reset() || !fix_true(penalty_fixings(p)))
      throw Error("internal solver error: penalty fixings contradict the optimum");
    Bound root = lower_bound(unit_, kInf);
    e_.backtrack(0);
    if (root.lb >= best.cardinality) return best.cardinality;
    std::vector<int> fixed;
    for (int v : softs_.vars)
      if (e_.value(v) < 0 && resid_[v] >= best.cardinality - root.lb) fixed.push_back(v);
    if (!fix_true(fixed)) return best.cardinality;
    branch_and_bound([&]() -> NodeResult {
      const std::int64_t pen = e_.penalty();
      const std::int64_t card = e_.cardinality();
      if (pen > p || card >= best.cardinality) return {};
      const int base = e_.level();
      if (lower_bound(softs_.weight, p + 1 - pen).reached) return {};
      e_.backtrack(base);
      Bound b = lower_bound(unit_, best.cardinality - card);
      if (b.reached) return {};
      if (b.lb == 0) {
        std::vector<bool> model;
        const bool ok = complete(model);
        e_.backtrack(base);
        if (ok) {
          best = Incumbent{pen, card, std::move(model)};
          return {};
        }
        const int v = pick_unassigned();
        if (v == 0) return {};
        return {Step::branch, v, true};
      }
      e_.backtrack(base);
      return {Step::branch, pick(b.first_core), true};
    });
    return best.cardinality;
  }

  std::vector<bool> least_names(std::int64_t p, std::int64_t k) {
    if (!e_.reset() || !fix_true(penalty_fixings(p)))
      throw Error("internal solver error: penalty fixings contradict the optimum");
    Bound root = lower_bound(unit_, kInf);
    e_.backtrack(0);
    std::vector<int> fixed;
    for (int v : softs_.vars)
      if (e_.value(v) < 0 && resid_[v] > k - root.lb) fixed.push_back(v);
    if (!fix_true(fixed)) throw Error("internal solver error: cardinality fixings contradict");
    std::vector<int> cand;
    for (int v : softs_.vars)
      if (e_.value(v) < 0) cand.push_back(v);
    sort_by_name(inst_, cand);

    std::optional<std::vector<bool>> found;
    branch_and_bound([&]() -> NodeResult {
      const std::int64_t pen = e_.penalty();
      const std::int64_t card = e_.cardinality();
      if (pen > p || card > k) return {};
      const int base = e_.level();
      std::vector<bool> model;
      if (card == k) {
        e_.new_level();
        for (int v : cand)
          if (e_.value(v) < 0) e_.assign(v, -1);
        const bool ok = e_.propagate() < 0 && complete(model);
        e_.backtrack(base);
        if (!ok) return {};
        found = std::move(model);
        return {Step::stop};
      }
      if (lower_bound(softs_.weight, p + 1 - pen).reached) return {};
      e_.backtrack(base);
      if (lower_bound(unit_, k + 1 - card).reached) return {};
      e_.backtrack(base);
      for (int v : cand)
        if (e_.value(v) < 0) return {Step::branch, v, false};
      if (!complete(model)) return {};
      found = std::move(model);
      return {Step::stop};
    });
    if (!found) throw Error("internal solver error: no optimum in the final phase");
    return std::move(*found);
  }

  const WpmsInstance& inst_;
  const SoftTable& softs_;
  Engine e_;
  std::vector<std::int64_t> unit_;
  std::vector<std::int64_t> resid_;
  std::vector<int> by_weight_;
  std::int64_t root_lb_ = 0;
  std::vector<std::int64_t> root_resid_;
  std::uint64_t nodes_ = 0;
};

// Plain recursive DPLL used by the exhaustive oracle.
bool dpll(const std::vector<Clause>& clauses, std::vector<signed char>& val) {
  bool changed = true;
  while (changed) {
    changed = false;
    for (const Clause& c : clauses) {
      int unassigned = 0;
      Literal last = 0;
      bool sat = false;
      for (Literal l : c) {
        const signed char x = val[std::abs(l)];
        if (x < 0) {
          ++unassigned;
          last = l;
        } else if ((x == 1) == (l > 0)) {
          sat = true;
          break;
        }
      }
      if (sat) continue;
      if (unassigned == 0) return false;
      if (unassigned == 1) {
        val[std::abs(last)] = last > 0 ? 1 : 0;
        changed = true;
      }
    }
  }
  for (std::size_t v = 1; v < val.size(); ++v) {
    if (val[v] >= 0) continue;
    for (signed char b : {0, 1}) {
      std::vector<signed char> copy = val;
      copy[v] = b;
      if (dpll(clauses, copy)) {
        val = std::move(copy);
        return true;
      }
    }
    return false;
  }
  return true;
}

}  // namespace

std::optional<WpmsSolution> solve(const WpmsInstance& inst, SolverStats* stats) {
  const SoftTable softs = soft_table(inst);
  Solver solver(inst, softs);
  return solver.run(stats);
}

std::optional<WpmsSolution> brute_force(const WpmsInstance& inst) {
  const SoftTable softs = soft_table(inst);
  const std::size_t m = softs.vars.size();
  if (m > kBruteForceMaxSoft)
    throw Error(fmt::format("brute force supports at most {} soft clauses, got {}",
                            kBruteForceMaxSoft, m));
  std::optional<WpmsSolution> best;
  const auto n = static_cast<std::size_t>(inst.variables()) + 1;
  for (std::uint64_t mask = 0; mask < (std::uint64_t{1} << m); ++mask) {
    std::int64_t pen = 0;
    std::vector<int> off;
    for (std::size_t i = 0; i < m; ++i)
      if (mask >> i & 1) {
        pen += softs.weight[softs.vars[i]];
        off.push_back(softs.vars[i]);
      }
    if (best) {
      if (pen > best->penalty) continue;
      if (pen == best->penalty && off.size() > best->falsified.size()) continue;
    }
    sort_by_name(inst, off);
    if (best && pen == best->penalty && off.size() == best->falsified.size() &&
        !name_less(inst, off, best->falsified))
      continue;
    std::vector<signed char> val(n, -1);
    for (std::size_t i = 0; i < m; ++i) val[softs.vars[i]] = (mask >> i & 1) ? 0 : 1;
    if (!dpll(inst.hard, val)) continue;
    WpmsSolution sol;
    sol.model.assign(n, false);
    for (std::size_t v = 1; v < n; ++v) sol.model[v] = val[v] == 1;
    sol.falsified = std::move(off);
    sol.penalty = pen;
    best = std::move(sol);
  }
  return best;
}

void check_solution(const WpmsInstance& inst, const WpmsSolution& sol) {
  const SoftTable softs = soft_table(inst);
  if (sol.model.size() != static_cast<std::size_t>(inst.variables()) + 1)
    throw Error("solution model has the wrong size");
  if (!satisfies(inst.hard, sol.model)) throw Error("solution violates a hard clause");
  WpmsSolution expect = make_solution(inst, softs, sol.model);
  if (expect.falsified != sol.falsified || expect.penalty != sol.penalty)
    throw Error("solution falsified set or penalty does not match its model");
}

}  // namespace criticut
