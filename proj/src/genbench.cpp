#include "criticut/genbench.hpp"

#include <charconv>
#include <deque>
#include <random>

#include <fmt/format.h>

#include "criticut/metric.hpp"

namespace criticut {

void CompositionConfig::validate() const {
  if (atomic < 0 || and_gate < 0 || or_gate < 0)
    throw Error(fmt::format("composition {} has a negative part", to_string()));
  if (atomic + and_gate + or_gate != 100)
    throw Error(fmt::format("composition {} does not sum to 100", to_string()));
  if (atomic < 1) throw Error("composition needs at least 1% atomic nodes");
}

CompositionConfig CompositionConfig::parse(std::string_view text) {
  int parts[3];
  std::size_t pos = 0;
  for (int i = 0; i < 3; ++i) {
    const std::size_t end = i < 2 ? text.find_first_of(",-", pos) : text.size();
    if (end == std::string_view::npos) throw Error(fmt::format("invalid composition \"{}\"", text));
    const std::string_view tok = text.substr(pos, end - pos);
    auto [p, ec] = std::from_chars(tok.data(), tok.data() + tok.size(), parts[i]);
    if (tok.empty() || ec != std::errc() || p != tok.data() + tok.size())
      throw Error(fmt::format("invalid composition \"{}\"", text));
    pos = end + 1;
  }
  CompositionConfig cfg{parts[0], parts[1], parts[2]};
  cfg.validate();
  return cfg;
}

std::string CompositionConfig::to_string() const {
  return fmt::format("{}-{}-{}", atomic, and_gate, or_gate);
}

AndOrGraph generate(std::size_t n, const CompositionConfig& cfg, std::uint64_t seed) {
  cfg.validate();
  if (n == 0) throw Error("graph size must be at least 1");
  std::mt19937_64 rng(seed);
  std::uniform_int_distribution<int> percent(0, 99);
  std::uniform_int_distribution<int> cost(1, 10);
  std::uniform_int_distribution<int> arity(2, 3);

  struct Proto {
    NodeKind kind;
    int cost;
  };
  std::vector<Proto> nodes;
  std::vector<std::pair<std::size_t, std::size_t>> edges;
  std::vector<std::size_t> in_degree;
  auto add = [&](NodeKind kind) {
    const int c = is_atomic(kind) ? cost(rng) : 0;
    nodes.push_back({kind, c});
    in_degree.push_back(0);
    return nodes.size() - 1;
  };
  auto link = [&](std::size_t from, std::size_t to) {
    edges.emplace_back(from, to);
    ++in_degree[to];
  };
  auto draw_kind = [&] {
    const int r = percent(rng);
    if (r < cfg.atomic) return NodeKind::agent;
    if (r < cfg.atomic + cfg.and_gate) return NodeKind::and_gate;
    return NodeKind::or_gate;
  };

  add(NodeKind::actuator);
  std::deque<std::size_t> frontier{0};
  while (nodes.size() < n) {
    const std::size_t u = frontier.front();
    frontier.pop_front();
    const int k = is_atomic(nodes[u].kind) ? 1 : arity(rng);
    for (int i = 0; i < k; ++i) {
      const std::size_t p = add(draw_kind());
      link(p, u);
      frontier.push_back(p);
    }
  }

  std::vector<std::size_t> pool;
  for (std::size_t u : frontier)
    if (is_atomic(nodes[u].kind) && u != 0) pool.push_back(u);
  for (std::size_t u : frontier) {
    if (is_atomic(nodes[u].kind)) continue;
    std::vector<std::size_t> inputs;
    if (pool.size() >= 2) {
      const auto k = std::min<std::size_t>(static_cast<std::size_t>(arity(rng)), pool.size());
      std::vector<std::size_t> choice = pool;
      for (std::size_t i = 0; i < k; ++i) {
        std::uniform_int_distribution<std::size_t> pick(i, choice.size() - 1);
        std::swap(choice[i], choice[pick(rng)]);
        inputs.push_back(choice[i]);
      }
    } else {
      inputs = pool;
      while (inputs.size() < 2) {
        const std::size_t s = add(NodeKind::sensor);
        pool.push_back(s);
        inputs.push_back(s);
      }
    }
    for (std::size_t p : inputs) link(p, u);
  }

  std::vector<Node> out;
  out.reserve(nodes.size());
  for (std::size_t i = 0; i < nodes.size(); ++i) {
    Node node;
    node.id = fmt::format("n{}", i);
    node.kind = nodes[i].kind;
    if (i != 0 && is_atomic(node.kind))
      node.kind = in_degree[i] == 0 ? NodeKind::sensor : NodeKind::agent;
    if (is_atomic(node.kind)) node.cost = Cost::from_units(nodes[i].cost);
    out.push_back(std::move(node));
  }
  std::vector<Edge> out_edges;
  out_edges.reserve(edges.size());
  for (auto [a, b] : edges) out_edges.push_back({out[a].id, out[b].id});
  return AndOrGraph(std::move(out), std::move(out_edges), "n0");
}

namespace {

std::uint64_t splitmix64(std::uint64_t x) {
  x += 0x9E3779B97F4A7C15ull;
  x = (x ^ (x >> 30)) * 0xBF58476D1CE4E5B9ull;
  x = (x ^ (x >> 27)) * 0x94D049BB133111EBull;
  return x ^ (x >> 31);
}

}  // namespace

std::uint64_t derive_seed(std::uint64_t base, std::size_t size, std::size_t iteration) {
  return splitmix64(splitmix64(splitmix64(base) ^ size) ^ iteration);
}

BenchRecord bench_one(std::size_t size, const CompositionConfig& cfg, std::size_t iteration,
                      std::uint64_t seed) {
  BenchRecord r;
  r.size = size;
  r.config = cfg;
  r.iteration = iteration;
  r.seed = seed;
  try {
    const AndOrGraph g = generate(size, cfg, seed);
    r.nodes = g.size();
    AnalyzeOptions opts;
    opts.skip_texts = true;
    const MetricReport rep = analyze(g, std::nullopt, opts);
    r.transformation_ms = rep.transformation_ms;
    r.solve_ms = rep.solve_ms;
    r.cnf_variables = rep.cnf.variables;
    r.cnf_clauses = rep.cnf.clauses;
    r.cut_cost = rep.cut.cost.to_string();
    r.cut_size = rep.cut.cardinality();
  } catch (const std::exception& e) {
    r.status = "error";
    r.error = e.what();
  }
  return r;
}

std::vector<BenchRecord> run_bench(const std::vector<std::size_t>& sizes,
                                   const CompositionConfig& cfg, std::size_t iterations,
                                   std::uint64_t seed_base, const BenchProgress& progress) {
  cfg.validate();
  std::vector<BenchRecord> out;
  out.reserve(sizes.size() * iterations);
  for (std::size_t size : sizes) {
    for (std::size_t it = 0; it < iterations; ++it) {
      out.push_back(bench_one(size, cfg, it, derive_seed(seed_base, size, it)));
      if (progress) progress(out.back());
    }
  }
  return out;
}

namespace {

std::string csv_field(std::string_view s) {
  if (s.find_first_of(",\"\n\r") == std::string_view::npos) return std::string(s);
  std::string out = "\"";
  for (char c : s) {
    if (c == '"') out += '"';
    out += c;
  }
  out += '"';
  return out;
}

std::vector<std::vector<std::string>> parse_csv(std::string_view text) {
  std::vector<std::vector<std::string>> rows;
  std::vector<std::string> row;
  std::string field;
  bool quoted = false;
  bool any = false;
  for (std::size_t i = 0; i < text.size(); ++i) {
    const char c = text[i];
    if (quoted) {
      if (c == '"') {
        if (i + 1 < text.size() && text[i + 1] == '"') {
          field += '"';
          ++i;
        } else {
          quoted = false;
        }
      } else {
        field += c;
      }
      continue;
    }
    any = true;
    if (c == '"') {
      quoted = true;
    } else if (c == ',') {
      row.push_back(std::move(field));
      field.clear();
    } else if (c == '\n') {
      row.push_back(std::move(field));
      field.clear();
      rows.push_back(std::move(row));
      row.clear();
      any = false;
    } else if (c != '\r') {
      field += c;
    }
  }
  if (quoted) throw Error("CSV ends inside a quoted field");
  if (any || !field.empty() || !row.empty()) {
    row.push_back(std::move(field));
    rows.push_back(std::move(row));
  }
  return rows;
}

template <typename T>
T parse_number(const std::string& s, const char* column) {
  T v{};
  auto [p, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
  if (s.empty() || ec != std::errc() || p != s.data() + s.size())
    throw Error(fmt::format("CSV column {}: invalid number \"{}\"", column, s));
  return v;
}

}  // namespace

std::string bench_csv_header() {
  return "size,config,iteration,seed,nodes,transformationMs,solveMs,cnfVariables,cnfClauses,"
         "cutCost,cutSize,status,error";
}

std::string bench_csv_row(const BenchRecord& r) {
  return fmt::format("{},{},{},{},{},{},{},{},{},{},{},{},{}", r.size, r.config.to_string(),
                     r.iteration, r.seed, r.nodes, r.transformation_ms, r.solve_ms,
                     r.cnf_variables, r.cnf_clauses, r.cut_cost, r.cut_size, r.status,
                     csv_field(r.error));
}

std::string bench_csv(const std::vector<BenchRecord>& records) {
  std::string out = bench_csv_header() + "\n";
  for (const BenchRecord& r : records) out += bench_csv_row(r) + "\n";
  return out;
}

std::vector<BenchRecord> parse_bench_csv(std::string_view text) {
  auto rows = parse_csv(text);
  if (rows.empty()) throw Error("CSV has no header");
  std::string header;
  for (std::size_t i = 0; i < rows[0].size(); ++i) header += (i ? "," : "") + rows[0][i];
  if (header != bench_csv_header()) throw Error("CSV header does not match the bench format");
  std::vector<BenchRecord> out;
  for (std::size_t i = 1; i < rows.size(); ++i) {
    const auto& f = rows[i];
    if (f.size() != 13) throw Error(fmt::format("CSV row {} has {} fields, expected 13", i, f.size()));
    BenchRecord r;
    r.size = parse_number<std::size_t>(f[0], "size");
    r.config = CompositionConfig::parse(f[1]);
    r.iteration = parse_number<std::size_t>(f[2], "iteration");
    r.seed = parse_number<std::uint64_t>(f[3], "seed");
    r.nodes = parse_number<std::size_t>(f[4], "nodes");
    r.transformation_ms = parse_number<double>(f[5], "transformationMs");
    r.solve_ms = parse_number<double>(f[6], "solveMs");
    r.cnf_variables = parse_number<int>(f[7], "cnfVariables");
    r.cnf_clauses = parse_number<std::size_t>(f[8], "cnfClauses");
    r.cut_cost = f[9];
    r.cut_size = parse_number<std::size_t>(f[10], "cutSize");
    r.status = f[11];
    r.error = f[12];
    out.push_back(std::move(r));
  }
  return out;
}

}  // namespace criticut
