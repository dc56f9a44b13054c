#include <optional>
#include <string>

#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "criticut/cnf.hpp"
#include "criticut/genbench.hpp"
#include "criticut/graph_io.hpp"
#include "criticut/hardening.hpp"
#include "criticut/metric.hpp"

namespace py = pybind11;
using namespace criticut;

namespace {

std::string analyze_json(const std::string& document, std::optional<std::string> target) {
  const AndOrGraph g = parse_graph(document);
  const MetricReport r = analyze(g, target);
  auto out = output_document(g.with_target(r.target), r.cut);
  const auto extra = report_to_json(g, r);
  for (auto it = extra.begin(); it != extra.end(); ++it)
    if (it.key() != "cut") out[it.key()] = it.value();
  return out.dump();
}

std::string harden_json(const std::string& document, std::optional<std::string> target,
                        std::optional<std::string> threshold, std::optional<std::size_t> max_rounds) {
  const AndOrGraph g = parse_graph(document);
  const std::string t = target.value_or(g.target());
  require_valid(g.with_target(t));
  HardenOptions opts;
  if (threshold) opts.threshold = Cost::parse(*threshold);
  opts.max_rounds = max_rounds;
  return trace_to_json(harden_iterate(g, t, opts)).dump();
}

std::string generate_json(std::size_t n, const std::string& config, std::uint64_t seed) {
  return graph_document(generate(n, CompositionConfig::parse(config), seed)).dump();
}

std::string dimacs(const std::string& document) {
  const AndOrGraph g = add_artificial_source(parse_graph(document));
  return emit_dimacs(tseitin(negate(form(g, g.target()))));
}

}  // namespace

PYBIND11_MODULE(_criticut, m) {
  m.doc() = "Minimal weighted vertex cuts of AND/OR dependency graphs";

  static py::exception<Error> error(m, "Error");
  static py::exception<ValidationError> validation_error(m, "ValidationError", error.ptr());
  static py::exception<UnsatError> unsat_error(m, "UnsatError", error.ptr());
  py::register_exception_translator([](std::exception_ptr p) {
    try {
      if (p) std::rethrow_exception(p);
    } catch (const ValidationError& e) {
      py::set_error(validation_error, e.what());
    } catch (const UnsatError& e) {
      py::set_error(unsat_error, e.what());
    } catch (const Error& e) {
      py::set_error(error, e.what());
    }
  });

  m.def("analyze", &analyze_json, py::arg("document"), py::arg("target") = py::none(),
        "Analyse a graph document (JSON text); returns the report as JSON text.");
  m.def("harden", &harden_json, py::arg("document"), py::arg("target") = py::none(),
        py::arg("threshold") = py::none(), py::arg("max_rounds") = py::none(),
        "Iterative hardening trace as JSON text.");
  m.def("generate", &generate_json, py::arg("n"), py::arg("config") = "60,20,20",
        py::arg("seed") = 1, "Random graph document as JSON text.");
  m.def("dimacs", &dimacs, py::arg("document"), "Tseitin CNF of the attacker objective.");
  m.def(
      "score", [](const std::string& measures) { return score(MeasureSet::parse(measures)).to_double(); },
      py::arg("measures"), "Physical security score of comma-separated measure codes.");
}
