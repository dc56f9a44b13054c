#include <csignal>
#include <cstdlib>
#include <iostream>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <fmt/format.h>
#include <spdlog/sinks/stdout_color_sinks.h>
#include <spdlog/spdlog.h>

#include "criticut/cnf.hpp"
#include "criticut/genbench.hpp"
#include "criticut/graph_io.hpp"
#include "criticut/hardening.hpp"
#include "criticut/maxsat.hpp"
#include "criticut/metric.hpp"
#include "criticut/service.hpp"

namespace {

using namespace criticut;

constexpr int kExitOk = 0;
constexpr int kExitFailure = 1;
constexpr int kExitInvalid = 2;
constexpr int kExitUnsat = 3;

void setup_logging() {
  auto logger = spdlog::stderr_color_mt("criticut");
  spdlog::set_default_logger(logger);
  spdlog::set_pattern("[%l] %v");
  spdlog::set_level(spdlog::level::warn);
  if (const char* env = std::getenv("CRITICUT_LOG")) {
    const auto level = spdlog::level::from_str(env);
    if (level == spdlog::level::off && std::string_view(env) != "off") {
      spdlog::warn("unknown CRITICUT_LOG level \"{}\"", env);
    } else {
      spdlog::set_level(level);
    }
  }
}

std::vector<std::size_t> parse_sizes(const std::string& text) {
  std::vector<std::size_t> out;
  std::size_t pos = 0;
  while (pos <= text.size()) {
    std::size_t end = text.find(',', pos);
    if (end == std::string::npos) end = text.size();
    const std::string tok = text.substr(pos, end - pos);
    std::size_t used = 0;
    unsigned long long v = 0;
    try {
      v = std::stoull(tok, &used);
    } catch (const std::exception&) {
      used = 0;
    }
    if (tok.empty() || used != tok.size() || tok.front() == '-')
      throw Error(fmt::format("invalid size \"{}\" in --sizes", tok));
    out.push_back(static_cast<std::size_t>(v));
    pos = end + 1;
  }
  return out;
}

std::map<std::string, Cost> parse_overrides(const std::vector<std::string>& items) {
  std::map<std::string, Cost> out;
  for (const auto& item : items) {
    const auto eq = item.find('=');
    if (eq == std::string::npos || eq == 0)
      throw Error(fmt::format("--override expects id=cost, got \"{}\"", item));
    out[item.substr(0, eq)] = Cost::parse(item.substr(eq + 1));
  }
  return out;
}

struct AnalyzeArgs {
  std::string input;
  std::string output;
  std::string target;
  std::string export_wcnf;
  std::string export_dimacs;
  std::optional<int> precision;
  std::vector<std::string> overrides;
  bool perimeter = false;
  bool polarity = false;
};

int run_analyze(const AnalyzeArgs& a) {
  AndOrGraph g = load_graph(a.input);
  spdlog::info("loaded {} nodes, {} edges from {}", g.size(), g.edges().size(), a.input);
  if (!a.target.empty()) g = g.with_target(a.target);
  if (a.perimeter) g = with_perimeter_costs(g);
  if (!a.overrides.empty()) g = g.with_costs(parse_overrides(a.overrides));

  AnalyzeOptions opts;
  opts.tseitin.polarity = a.polarity;
  const Analysis an = analyze_full(g, std::nullopt, opts);
  const MetricReport& r = an.report;
  spdlog::info("transformation {:.3f} ms, solve {:.3f} ms, {} search nodes", r.transformation_ms,
               r.solve_ms, r.solver.nodes);

  std::cout << text_report(g, r, a.precision) << std::flush;
  if (!a.output.empty()) write_text_file(a.output, output_document(g, r.cut).dump(2) + "\n");
  if (!a.export_wcnf.empty()) write_text_file(a.export_wcnf, emit_wcnf(an.instance));
  if (!a.export_dimacs.empty()) write_text_file(a.export_dimacs, emit_dimacs(an.cnf));
  return kExitOk;
}

struct BenchArgs {
  std::string sizes = "1000";
  std::string config = "60,20,20";
  std::size_t iters = 10;
  std::uint64_t seed = 1;
  std::string csv;
};

int run_bench_cmd(const BenchArgs& a) {
  const auto cfg = CompositionConfig::parse(a.config);
  const auto sizes = parse_sizes(a.sizes);
  const auto records = run_bench(sizes, cfg, a.iters, a.seed, [](const BenchRecord& r) {
    if (r.status == "ok") {
      spdlog::info("n={} iter={} nodes={} transform={:.3f}ms solve={:.3f}ms cut={}", r.size,
                   r.iteration, r.nodes, r.transformation_ms, r.solve_ms, r.cut_cost);
    } else {
      spdlog::warn("n={} iter={} failed: {}", r.size, r.iteration, r.error);
    }
  });
  const std::string csv = bench_csv(records);
  if (a.csv.empty()) {
    std::cout << csv;
  } else {
    write_text_file(a.csv, csv);
  }
  for (const auto& r : records)
    if (r.status != "ok") return kExitFailure;
  return kExitOk;
}

int run_solve(const std::string& input) {
  const WpmsInstance inst = parse_wcnf(read_text_file(input));
  SolverStats stats;
  const auto sol = solve(inst, &stats);
  spdlog::info("{} search nodes, {} propagations", stats.nodes, stats.propagations);
  if (!sol) {
    std::cout << "s UNSATISFIABLE\n";
    return kExitUnsat;
  }
  std::cout << "s OPTIMUM FOUND\n";
  std::cout << "o " << Cost::from_milli(sol->penalty).to_string() << "\n";
  std::string names;
  for (const auto& n : falsified_names(inst, *sol)) names += " " + n;
  std::cout << "c falsified" << names << "\n";
  std::string v = "v";
  for (int i = 1; i <= inst.variables(); ++i) v += fmt::format(" {}", sol->model[i] ? i : -i);
  std::cout << v << "\n";
  return kExitOk;
}

struct HardenArgs {
  std::string input;
  std::string target;
  std::string threshold;
  std::size_t max_rounds = 0;
  bool perimeter = false;
};

int run_harden(const HardenArgs& a) {
  AndOrGraph g = load_graph(a.input);
  if (a.perimeter) g = with_perimeter_costs(g);
  const std::string t = a.target.empty() ? g.target() : a.target;
  require_valid(g.with_target(t));
  HardenOptions opts;
  if (!a.threshold.empty()) opts.threshold = Cost::parse(a.threshold);
  if (a.max_rounds > 0) opts.max_rounds = a.max_rounds;
  const HardeningTrace trace = harden_iterate(g, t, opts);
  std::cout << trace_to_json(trace).dump(2) << "\n";
  return trace.stop_reason == "target undisruptable" ? kExitUnsat : kExitOk;
}

int run_generate(std::size_t size, const std::string& config, std::uint64_t seed,
                 const std::string& output) {
  const AndOrGraph g = generate(size, CompositionConfig::parse(config), seed);
  const std::string text = graph_document(g).dump(2) + "\n";
  if (output.empty()) {
    std::cout << text;
  } else {
    write_text_file(output, text);
  }
  return kExitOk;
}

Server* g_server = nullptr;

void on_signal(int) {
  if (g_server) g_server->stop();
}

int run_serve(const ServeOptions& options) {
  Server server(options);
  const int port = server.bind();
  g_server = &server;
  std::signal(SIGINT, on_signal);
  std::signal(SIGTERM, on_signal);
  spdlog::set_level(std::min(spdlog::get_level(), spdlog::level::info));
  spdlog::info("listening on http://{}:{}", options.host, port);
  server.listen();
  g_server = nullptr;
  return kExitOk;
}

}  // namespace

int main(int argc, char** argv) {
  setup_logging();
  CLI::App app{"Minimal weighted vertex cuts of AND/OR dependency graphs"};
  app.name("criticut");
  app.require_subcommand(1);

  AnalyzeArgs analyze_args;
  auto* analyze = app.add_subcommand("analyze", "Compute the optimal cut of a graph file");
  analyze->add_option("-i,--input", analyze_args.input, "Graph JSON file")
      ->required()
      ->check(CLI::ExistingFile);
  analyze->add_option("-o,--output", analyze_args.output, "Write graph plus cut JSON here");
  analyze->add_option("-t,--target", analyze_args.target, "Target node id (overrides the file)");
  analyze->add_option("--export-wcnf", analyze_args.export_wcnf, "Write the WCNF instance here");
  analyze->add_option("--export-dimacs", analyze_args.export_dimacs, "Write the CNF here");
  analyze->add_option("--precision", analyze_args.precision, "Decimals in the text report")
      ->check(CLI::Range(0, 3));
  analyze->add_option("--override", analyze_args.overrides, "Cost override id=cost (repeatable)");
  analyze->add_flag("--perimeter", analyze_args.perimeter, "Use depth-based costs");
  analyze->add_flag("--polarity", analyze_args.polarity, "Polarity-aware Tseitin encoding");

  BenchArgs bench_args;
  auto* bench = app.add_subcommand("bench", "Generate and analyse random graphs");
  bench->add_option("--sizes", bench_args.sizes, "Comma-separated node counts")
      ->capture_default_str();
  bench->add_option("--config", bench_args.config, "atomic,and,or percentages")
      ->capture_default_str();
  bench->add_option("--iters", bench_args.iters, "Iterations per size")
      ->capture_default_str()
      ->check(CLI::PositiveNumber);
  bench->add_option("--seed", bench_args.seed, "Base seed")->capture_default_str();
  bench->add_option("--csv", bench_args.csv, "Write CSV here instead of standard output");

  ServeOptions serve_opts;
  std::string static_dir;
  auto* serve = app.add_subcommand("serve", "Run the HTTP JSON service");
  serve->add_option("--port", serve_opts.port, "Port (0 = ephemeral)")
      ->capture_default_str()
      ->check(CLI::Range(0, 65535));
  serve->add_option("--host", serve_opts.host, "Bind address")->capture_default_str();
  serve->add_option("--static", static_dir, "Directory served at /")
      ->check(CLI::ExistingDirectory);

  std::string solve_input;
  auto* solve_cmd = app.add_subcommand("solve", "Solve a weighted DIMACS (WCNF) file");
  solve_cmd->add_option("-i,--input", solve_input, "WCNF file")
      ->required()
      ->check(CLI::ExistingFile);

  HardenArgs harden_args;
  auto* harden = app.add_subcommand("harden", "Iteratively remediate optimal cuts");
  harden->add_option("-i,--input", harden_args.input, "Graph JSON file")
      ->required()
      ->check(CLI::ExistingFile);
  harden->add_option("-t,--target", harden_args.target, "Target node id");
  harden->add_option("--threshold", harden_args.threshold, "Stop once a round costs this much");
  harden->add_option("--max-rounds", harden_args.max_rounds, "Round limit")
      ->check(CLI::PositiveNumber);
  harden->add_flag("--perimeter", harden_args.perimeter, "Use depth-based costs");

  std::string measures;
  auto* score_cmd = app.add_subcommand("score", "Physical security score of a measure set");
  score_cmd->add_option("measures", measures, "Comma-separated codes: C,LC,F,B,LB,AS,MA");

  std::size_t gen_size = 100;
  std::string gen_config = "60,20,20";
  std::uint64_t gen_seed = 1;
  std::string gen_output;
  auto* gen = app.add_subcommand("generate", "Write a random graph");
  gen->add_option("-n,--size", gen_size, "Node count")->capture_default_str();
  gen->add_option("--config", gen_config, "atomic,and,or percentages")->capture_default_str();
  gen->add_option("--seed", gen_seed, "Seed")->capture_default_str();
  gen->add_option("-o,--output", gen_output, "Output file (default standard output)");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return kExitInvalid;
  }

  try {
    if (*analyze) return run_analyze(analyze_args);
    if (*bench) return run_bench_cmd(bench_args);
    if (*serve) {
      if (!static_dir.empty()) serve_opts.static_dir = static_dir;
      return run_serve(serve_opts);
    }
    if (*solve_cmd) return run_solve(solve_input);
    if (*harden) return run_harden(harden_args);
    if (*score_cmd) {
      const MeasureSet set = MeasureSet::parse(measures);
      std::cout << set.to_string() << " " << score(set).to_string() << "\n";
      return kExitOk;
    }
    if (*gen) return run_generate(gen_size, gen_config, gen_seed, gen_output);
  } catch (const ValidationError& e) {
    spdlog::error("invalid graph: {}", e.what());
    for (const auto& v : e.report().violations) spdlog::error("  [{}] {}", v.rule, v.message);
    return kExitInvalid;
  } catch (const UnsatError& e) {
    spdlog::error("{}", e.what());
    return kExitUnsat;
  } catch (const Error& e) {
    spdlog::error("{}", e.what());
    return kExitInvalid;
  } catch (const std::exception& e) {
    spdlog::error("{}", e.what());
    return kExitFailure;
  }
  return kExitFailure;
}
