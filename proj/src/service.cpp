#include "criticut/service.hpp"

#include <map>

#include <fmt/format.h>
#include <httplib.h>
#include <nlohmann/json.hpp>

#include "criticut/graph_io.hpp"
#include "criticut/hardening.hpp"
#include "criticut/metric.hpp"

namespace criticut {

using json = nlohmann::ordered_json;

std::string request_hash(std::string_view body) {
  std::uint64_t h = 0xcbf29ce484222325ull;
  for (unsigned char c : body) {
    h ^= c;
    h *= 0x100000001b3ull;
  }
  return fmt::format("{:016x}", h);
}

namespace {

/// Malformed request (400) carrying an optional violation list.
class BadRequest : public Error {
 public:
  explicit BadRequest(const std::string& message, json violations = json::array())
      : Error(message), violations_(std::move(violations)) {}
  const json& violations() const { return violations_; }

 private:
  json violations_;
};

HttpResponse reply(int status, json body, std::string_view request) {
  body["requestHash"] = request_hash(request);
  return {status, body.dump()};
}

HttpResponse error_reply(int status, const std::string& message, json violations,
                         std::string_view request) {
  return reply(status, json{{"error", message}, {"violations", std::move(violations)}}, request);
}

json violations_json(const ValidationReport& report) {
  json out = json::array();
  for (const Violation& v : report.violations)
    out.push_back({{"rule", v.rule}, {"message", v.message}, {"ids", v.ids}});
  return out;
}

json parse_body(std::string_view body, std::initializer_list<std::string_view> allowed) {
  json doc;
  try {
    doc = json::parse(body);
  } catch (const json::parse_error& e) {
    throw BadRequest(fmt::format("malformed JSON at byte {}", e.byte));
  }
  if (!doc.is_object()) throw BadRequest("request body must be a JSON object");
  for (auto it = doc.begin(); it != doc.end(); ++it) {
    bool ok = false;
    for (auto a : allowed) ok = ok || it.key() == a;
    if (!ok) throw BadRequest(fmt::format("unknown field \"{}\"", it.key()));
  }
  if (!doc.contains("graph")) throw BadRequest("missing field \"graph\"");
  return doc;
}

AndOrGraph graph_of(const json& doc) {
  try {
    return graph_from_json(json{{"graph", doc.at("graph")}});
  } catch (const Error& e) {
    throw BadRequest(e.what());
  }
}

std::optional<std::string> target_of(const json& doc) {
  if (!doc.contains("target")) return std::nullopt;
  if (!doc["target"].is_string()) throw BadRequest("\"target\" must be a string");
  return doc["target"].get<std::string>();
}

Cost cost_value(const json& v, const std::string& where) {
  try {
    if (v.is_string()) return Cost::parse(v.get<std::string>());
    if (v.is_number()) return Cost::from_double(v.get<double>());
  } catch (const Error& e) {
    throw BadRequest(fmt::format("{}: {}", where, e.what()));
  }
  throw BadRequest(fmt::format("{}: expected a cost string or number", where));
}

template <typename F>
HttpResponse guarded(std::string_view body, F&& f) {
  try {
    return reply(200, f(), body);
  } catch (const BadRequest& e) {
    return error_reply(400, e.what(), e.violations(), body);
  } catch (const ValidationError& e) {
    return error_reply(400, "invalid graph", violations_json(e.report()), body);
  } catch (const UnsatError& e) {
    return error_reply(422, fmt::format("target undisruptable: {}", e.what()), json::array(),
                       body);
  } catch (const Error& e) {
    return error_reply(400, e.what(), json::array(), body);
  } catch (const std::exception& e) {
    return error_reply(500, e.what(), json::array(), body);
  }
}

json analysis_body(const AndOrGraph& graph, const MetricReport& report) {
  json out = output_document(graph, report.cut);
  const json extra = report_to_json(graph, report);
  for (auto it = extra.begin(); it != extra.end(); ++it)
    if (it.key() != "cut") out[it.key()] = it.value();
  return out;
}

}  // namespace

HttpResponse handle_health() { return {200, json{{"status", "ok"}}.dump()}; }

HttpResponse handle_analyze(std::string_view body) {
  return guarded(body, [&] {
    const json doc = parse_body(body, {"graph", "target"});
    const AndOrGraph g = graph_of(doc);
    const MetricReport r = analyze(g, target_of(doc));
    return analysis_body(g.with_target(r.target), r);
  });
}

HttpResponse handle_whatif(std::string_view body) {
  return guarded(body, [&] {
    const json doc = parse_body(body, {"graph", "overrides", "removedNodes", "target"});
    AndOrGraph g = graph_of(doc);
    if (auto t = target_of(doc)) {
      if (!g.contains(*t)) throw BadRequest(fmt::format("unknown target \"{}\"", *t));
      g = g.with_target(*t);
    }
    if (doc.contains("overrides")) {
      const json& o = doc["overrides"];
      if (!o.is_object()) throw BadRequest("\"overrides\" must be an object");
      std::map<std::string, Cost> costs;
      for (auto it = o.begin(); it != o.end(); ++it) {
        if (!g.contains(it.key())) throw BadRequest(fmt::format("unknown node \"{}\"", it.key()));
        costs[it.key()] = cost_value(it.value(), "/overrides/" + it.key());
      }
      try {
        g = g.with_costs(costs);
      } catch (const Error& e) {
        throw BadRequest(e.what());
      }
    }
    if (doc.contains("removedNodes")) {
      const json& r = doc["removedNodes"];
      if (!r.is_array()) throw BadRequest("\"removedNodes\" must be an array");
      std::vector<std::string> ids;
      for (const json& id : r) {
        if (!id.is_string()) throw BadRequest("\"removedNodes\" entries must be strings");
        if (!g.contains(id.get<std::string>()))
          throw BadRequest(fmt::format("unknown node \"{}\"", id.get<std::string>()));
        ids.push_back(id.get<std::string>());
      }
      g = remove_nodes(g, ids);
      if (!g.contains(g.target()))
        throw UnsatError(fmt::format("target \"{}\" already disrupted by the removals", g.target()));
    }
    AnalyzeOptions opts;
    opts.allow_reduced_gates = true;
    const MetricReport r = analyze(g, std::nullopt, opts);
    return analysis_body(g, r);
  });
}

HttpResponse handle_harden(std::string_view body) {
  return guarded(body, [&] {
    const json doc = parse_body(body, {"graph", "threshold", "maxRounds", "target"});
    AndOrGraph g = graph_of(doc);
    const std::string t = target_of(doc).value_or(g.target());
    require_valid(g.with_target(t));
    HardenOptions opts;
    if (doc.contains("threshold")) opts.threshold = cost_value(doc["threshold"], "/threshold");
    if (doc.contains("maxRounds")) {
      const json& m = doc["maxRounds"];
      if (!m.is_number_unsigned() || m.get<std::size_t>() == 0)
        throw BadRequest("\"maxRounds\" must be a positive integer");
      opts.max_rounds = m.get<std::size_t>();
    }
    return trace_to_json(harden_iterate(g, t, opts));
  });
}

struct Server::Impl {
  ServeOptions options;
  httplib::Server http;
  int port = -1;
};

Server::Server(ServeOptions options) : impl_(std::make_unique<Impl>()) {
  impl_->options = std::move(options);
  auto& http = impl_->http;
  auto send = [](httplib::Response& res, const HttpResponse& r) {
    res.status = r.status;
    res.set_content(r.body, r.content_type);
  };
  http.Get("/api/health", [send](const httplib::Request&, httplib::Response& res) {
    send(res, handle_health());
  });
  http.Post("/api/analyze", [send](const httplib::Request& req, httplib::Response& res) {
    send(res, handle_analyze(req.body));
  });
  http.Post("/api/whatif", [send](const httplib::Request& req, httplib::Response& res) {
    send(res, handle_whatif(req.body));
  });
  http.Post("/api/harden", [send](const httplib::Request& req, httplib::Response& res) {
    send(res, handle_harden(req.body));
  });
  if (impl_->options.static_dir && !http.set_mount_point("/", *impl_->options.static_dir))
    throw Error(fmt::format("cannot serve static files from {}", *impl_->options.static_dir));
}

Server::~Server() { stop(); }

int Server::bind() {
  auto& o = impl_->options;
  if (o.port == 0) {
    impl_->port = impl_->http.bind_to_any_port(o.host);
  } else {
    impl_->port = impl_->http.bind_to_port(o.host, o.port) ? o.port : -1;
  }
  if (impl_->port < 0) throw Error(fmt::format("cannot bind {}:{}", o.host, o.port));
  return impl_->port;
}

void Server::listen() {
  if (!impl_->http.listen_after_bind()) throw Error("HTTP server stopped with an error");
}

void Server::stop() {
  if (impl_->http.is_running()) impl_->http.stop();
}

}  // namespace criticut
