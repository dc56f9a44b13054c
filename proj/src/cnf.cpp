#include "criticut/cnf.hpp"

#include <algorithm>
#include <charconv>
#include <cstdlib>
#include <limits>
#include <map>

#include <fmt/format.h>

namespace criticut {

int VarMap::add_named(const std::string& name) {
  if (auto it = index_.find(name); it != index_.end()) return it->second;
  if (named_ != variables())
    throw Error(fmt::format("cannot name \"{}\" after auxiliary variables were allocated", name));
  names_.push_back(name);
  index_.emplace(name, variables());
  named_ = variables();
  return named_;
}

int VarMap::add_auxiliary() {
  names_.emplace_back();
  return variables();
}

std::optional<int> VarMap::var_of(std::string_view name) const {
  auto it = index_.find(std::string(name));
  if (it == index_.end()) return std::nullopt;
  return it->second;
}

const std::string& VarMap::name(int v) const {
  if (v < 1 || v > variables()) throw Error(fmt::format("variable {} out of range", v));
  return names_[static_cast<std::size_t>(v - 1)];
}

namespace {

enum class Polarity { positive, negative, both };

Polarity flip(Polarity p) {
  switch (p) {
    case Polarity::positive: return Polarity::negative;
    case Polarity::negative: return Polarity::positive;
    case Polarity::both: return Polarity::both;
  }
  return p;
}

bool tautology(const Clause& c) {
  for (std::size_t i = 0; i < c.size(); ++i)
    for (std::size_t j = i + 1; j < c.size(); ++j)
      if (c[i] == -c[j]) return true;
  return false;
}

class Encoder {
 public:
  explicit Encoder(const TseitinOptions& options) : options_(options) {}

  CnfFormula run(const Formula& f) {
    if (f.kind() == Formula::Kind::constant_true)
      throw Error("formula is trivially satisfiable");
    for (const auto& id : atoms_of(f)) out_.var_map.add_named(id);
    const Polarity root = options_.polarity ? Polarity::positive : Polarity::both;
    const Literal lit = encode(f, root);
    out_.clauses.reserve(gates_.size() + 1);
    out_.clauses.push_back({lit});
    for (auto& c : gates_) out_.clauses.push_back(std::move(c));
    return std::move(out_);
  }

 private:
  Literal encode(const Formula& f, Polarity pol) {
    switch (f.kind()) {
      case Formula::Kind::atom: return *out_.var_map.var_of(f.atom_id());
      case Formula::Kind::negation: return -encode(f.operands().front(), flip(pol));
      case Formula::Kind::constant_true: {
        const int t = out_.var_map.add_auxiliary();
        gates_.push_back({t});
        return t;
      }
      case Formula::Kind::conjunction:
      case Formula::Kind::disjunction: break;
    }
    auto ops = f.operands();
    if (ops.size() == 1) return encode(ops.front(), pol);
    Clause lits;
    lits.reserve(ops.size());
    for (const Formula& op : ops) {
      const Literal l = encode(op, pol);
      if (std::find(lits.begin(), lits.end(), l) == lits.end()) lits.push_back(l);
    }
    const int x = out_.var_map.add_auxiliary();
    const bool want_forward = pol != Polarity::negative;
    const bool want_backward = pol != Polarity::positive;
    if (f.kind() == Formula::Kind::disjunction) {
      if (want_forward) {
        Clause c{-x};
        c.insert(c.end(), lits.begin(), lits.end());
        emit(std::move(c));
      }
      if (want_backward)
        for (Literal l : lits) emit({-l, x});
    } else {
      if (want_forward)
        for (Literal l : lits) emit({-x, l});
      if (want_backward) {
        Clause c;
        c.reserve(lits.size() + 1);
        for (Literal l : lits) c.push_back(-l);
        c.push_back(x);
        emit(std::move(c));
      }
    }
    return x;
  }

  void emit(Clause c) {
    if (!tautology(c)) gates_.push_back(std::move(c));
  }

  TseitinOptions options_;
  CnfFormula out_;
  std::vector<Clause> gates_;
};

void append_clause(fmt::memory_buffer& buf, const Clause& c) {
  for (Literal l : c) fmt::format_to(std::back_inserter(buf), "{} ", l);
  buf.push_back('0');
  buf.push_back('\n');
}

void append_names(fmt::memory_buffer& buf, const VarMap& vars) {
  for (int v = 1; v <= vars.named_count(); ++v)
    fmt::format_to(std::back_inserter(buf), "c {} {}\n", v, vars.name(v));
}

}  // namespace

CnfFormula tseitin(const Formula& f, const TseitinOptions& options) {
  return Encoder(options).run(f);
}

std::string emit_dimacs(const CnfFormula& cnf) {
  fmt::memory_buffer buf;
  append_names(buf, cnf.var_map);
  fmt::format_to(std::back_inserter(buf), "p cnf {} {}\n", cnf.variables(), cnf.clause_count());
  for (const Clause& c : cnf.clauses) append_clause(buf, c);
  return fmt::to_string(buf);
}

std::string emit_var_map(const VarMap& vars) {
  fmt::memory_buffer buf;
  for (int v = 1; v <= vars.named_count(); ++v)
    fmt::format_to(std::back_inserter(buf), "{}\t{}\n", v, vars.name(v));
  return fmt::to_string(buf);
}

bool satisfies(std::span<const Clause> clauses, const std::vector<bool>& model) {
  for (const Clause& c : clauses) {
    bool sat = false;
    for (Literal l : c) {
      const auto v = static_cast<std::size_t>(std::abs(l));
      if (v < model.size() && model[v] == (l > 0)) {
        sat = true;
        break;
      }
    }
    if (!sat) return false;
  }
  return true;
}

std::string emit_wcnf(const WpmsInstance& inst) {
  constexpr std::int64_t kMax = std::numeric_limits<std::int64_t>::max();
  std::int64_t total = 0;
  for (const SoftClause& s : inst.soft) {
    if (s.weight <= 0) throw Error(fmt::format("soft clause on variable {} has weight <= 0", s.var));
    if (s.weight > kMax - 1 - total) throw Error("sum of soft weights overflows 64-bit WCNF weights");
    total += s.weight;
  }
  const std::int64_t top = total + 1;
  fmt::memory_buffer buf;
  append_names(buf, inst.var_map);
  fmt::format_to(std::back_inserter(buf), "p wcnf {} {} {}\n", inst.variables(),
                 inst.hard.size() + inst.soft.size(), top);
  for (const Clause& c : inst.hard) {
    fmt::format_to(std::back_inserter(buf), "{} ", top);
    append_clause(buf, c);
  }
  for (const SoftClause& s : inst.soft)
    fmt::format_to(std::back_inserter(buf), "{} {} 0\n", s.weight, s.var);
  return fmt::to_string(buf);
}

namespace {

std::vector<std::string_view> split_ws(std::string_view line) {
  std::vector<std::string_view> out;
  std::size_t i = 0;
  while (i < line.size()) {
    while (i < line.size() && (line[i] == ' ' || line[i] == '\t' || line[i] == '\r')) ++i;
    std::size_t j = i;
    while (j < line.size() && line[j] != ' ' && line[j] != '\t' && line[j] != '\r') ++j;
    if (j > i) out.push_back(line.substr(i, j - i));
    i = j;
  }
  return out;
}

template <typename T>
std::optional<T> to_int(std::string_view s) {
  T v{};
  auto [p, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
  if (ec != std::errc() || p != s.data() + s.size()) return std::nullopt;
  return v;
}

struct RawClause {
  bool hard = false;
  std::int64_t weight = 0;
  Clause lits;
};

}  // namespace

WpmsInstance parse_wcnf(std::string_view text) {
  enum class Format { none, cnf, wcnf };
  Format format = Format::none;
  std::optional<std::int64_t> top;
  long declared_vars = -1;
  long declared_clauses = -1;
  std::map<int, std::string> names;
  std::vector<RawClause> raw;
  int max_var = 0;

  std::size_t line_no = 0;
  std::size_t pos = 0;
  while (pos <= text.size()) {
    std::size_t end = text.find('\n', pos);
    if (end == std::string_view::npos) end = text.size();
    const std::string_view line = text.substr(pos, end - pos);
    pos = end + 1;
    ++line_no;
    auto fail = [&](const std::string& msg) {
      return Error(fmt::format("WCNF line {}: {}", line_no, msg));
    };
    const auto tok = split_ws(line);
    if (tok.empty()) continue;
    if (tok[0] == "c") {
      if (tok.size() == 3) {
        auto v = to_int<int>(tok[1]);
        if (v && *v > 0) {
          if (!names.emplace(*v, std::string(tok[2])).second)
            throw fail(fmt::format("variable {} named twice", *v));
        }
      }
      continue;
    }
    if (tok[0][0] == 'c') continue;
    if (tok[0] == "p") {
      if (format != Format::none || !raw.empty()) throw fail("unexpected problem line");
      if (tok.size() < 4) throw fail("problem line needs a format, variables and clauses");
      if (tok[1] == "cnf") {
        format = Format::cnf;
      } else if (tok[1] == "wcnf") {
        format = Format::wcnf;
      } else {
        throw fail(fmt::format("unknown format \"{}\"", tok[1]));
      }
      auto v = to_int<long>(tok[2]);
      auto c = to_int<long>(tok[3]);
      if (!v || !c || *v < 0 || *c < 0) throw fail("invalid problem line counts");
      declared_vars = *v;
      declared_clauses = *c;
      if (tok.size() >= 5) {
        top = to_int<std::int64_t>(tok[4]);
        if (!top || *top <= 0) throw fail("invalid top weight");
      }
      if (tok.size() > 5 || (format == Format::cnf && tok.size() != 4))
        throw fail("too many fields on problem line");
      continue;
    }

    RawClause rc;
    std::size_t first = 0;
    if (format == Format::cnf) {
      rc.hard = true;
    } else if (tok[0] == "h") {
      if (format == Format::wcnf) throw fail("\"h\" clauses are not allowed after a wcnf header");
      rc.hard = true;
      first = 1;
    } else {
      auto w = to_int<std::int64_t>(tok[0]);
      if (!w || *w <= 0) throw fail(fmt::format("invalid weight \"{}\"", tok[0]));
      rc.hard = top && *w >= *top;
      rc.weight = *w;
      first = 1;
    }
    if (tok.size() <= first || tok.back() != "0") throw fail("clause must end with 0");
    for (std::size_t i = first; i + 1 < tok.size(); ++i) {
      auto l = to_int<int>(tok[i]);
      if (!l || *l == 0 || *l == std::numeric_limits<int>::min())
        throw fail(fmt::format("invalid literal \"{}\"", tok[i]));
      if (declared_vars >= 0 && std::abs(*l) > declared_vars)
        throw fail(fmt::format("literal {} exceeds the declared {} variables", *l, declared_vars));
      if (std::find(rc.lits.begin(), rc.lits.end(), *l) == rc.lits.end()) rc.lits.push_back(*l);
      max_var = std::max(max_var, std::abs(*l));
    }
    raw.push_back(std::move(rc));
  }

  if (declared_clauses >= 0 && static_cast<std::size_t>(declared_clauses) != raw.size())
    throw Error(fmt::format("WCNF header declares {} clauses, found {}", declared_clauses,
                            raw.size()));
  const int vars = declared_vars >= 0 ? static_cast<int>(declared_vars) : max_var;
  for (const auto& [v, name] : names)
    if (v > vars) throw Error(fmt::format("WCNF name comment for variable {} out of range", v));

  // With name comments present, unnamed variables past every named or soft
  // variable are auxiliaries (as written by emit_wcnf).
  int named_upto = vars;
  const bool relaxes = std::any_of(raw.begin(), raw.end(), [](const RawClause& rc) {
    return !rc.hard && !(rc.lits.size() == 1 && rc.lits.front() > 0);
  });
  if (!names.empty() && !relaxes) {
    named_upto = names.rbegin()->first;
    for (const RawClause& rc : raw)
      if (!rc.hard) named_upto = std::max(named_upto, rc.lits.front());
  }
  WpmsInstance inst;
  for (int v = 1; v <= vars; ++v) {
    if (v > named_upto) {
      inst.var_map.add_auxiliary();
      continue;
    }
    auto it = names.find(v);
    const std::string name = it != names.end() ? it->second : fmt::format("v{:05}", v);
    if (inst.var_map.add_named(name) != v)
      throw Error(fmt::format("WCNF variable name \"{}\" used twice", name));
  }

  std::map<int, std::int64_t> soft_units;
  int relax = 0;
  for (RawClause& rc : raw) {
    if (rc.hard) {
      inst.hard.push_back(std::move(rc.lits));
    } else if (rc.lits.size() == 1 && rc.lits.front() > 0) {
      auto& w = soft_units[rc.lits.front()];
      if (rc.weight > std::numeric_limits<std::int64_t>::max() - w)
        throw Error("soft weight overflow");
      w += rc.weight;
    } else {
      std::string name;
      do {
        name = fmt::format("r{:05}", ++relax);
      } while (inst.var_map.var_of(name));
      const int r = inst.var_map.add_named(name);
      Clause c{-r};
      c.insert(c.end(), rc.lits.begin(), rc.lits.end());
      inst.hard.push_back(std::move(c));
      soft_units[r] += rc.weight;
    }
  }
  for (const auto& [v, w] : soft_units) inst.soft.push_back({v, w});
  return inst;
}

}  // namespace criticut
