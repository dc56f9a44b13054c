#include <gtest/gtest.h>

#include <thread>

#include <httplib.h>
#include <nlohmann/json.hpp>

#include "criticut/graph_io.hpp"
#include "criticut/metric.hpp"
#include "criticut/service.hpp"
#include "oracle.hpp"

namespace criticut {
namespace {

using json = nlohmann::ordered_json;
using testing::data_path;

json listing1_graph() { return json::parse(read_text_file(data_path("listing1.json")))["graph"]; }

json body_of(const HttpResponse& r) { return json::parse(r.body); }

TEST(Service, RequestHash) {
  EXPECT_EQ(request_hash(""), "cbf29ce484222325");
  EXPECT_EQ(request_hash("a"), "af63dc4c8601ec8c");
  EXPECT_EQ(request_hash("abc").size(), 16u);
}

TEST(Service, Health) {
  const HttpResponse r = handle_health();
  EXPECT_EQ(r.status, 200);
  EXPECT_EQ(body_of(r), json({{"status", "ok"}}));
}

TEST(Service, AnalyzeGoldenExample) {
  const std::string req = json{{"graph", listing1_graph()}}.dump();
  const HttpResponse r = handle_analyze(req);
  ASSERT_EQ(r.status, 200) << r.body;
  const json b = body_of(r);
  EXPECT_EQ(b["cut"]["nodes"][0]["id"], "a");
  EXPECT_EQ(b["cut"]["nodes"][1]["id"], "c");
  EXPECT_EQ(b["cut"]["cost"], 4.0);
  EXPECT_EQ(b["requestHash"], request_hash(req));
  EXPECT_EQ(b["graph"], listing1_graph());
  EXPECT_EQ(b["kappa"], 4.0);
}

TEST(Service, CutJsonMatchesLibraryOutput) {
  const AndOrGraph g = load_graph(data_path("listing1.json"));
  const json expected = output_document(g, analyze(g).cut)["cut"];
  const json b = body_of(handle_analyze(json{{"graph", listing1_graph()}}.dump()));
  EXPECT_EQ(b["cut"].dump(), expected.dump());
}

TEST(Service, Stateless) {
  const std::string a = json{{"graph", listing1_graph()}}.dump();
  const std::string b = json{{"graph", listing1_graph()}, {"overrides", {{"b", "3.2"}}}}.dump();
  const HttpResponse a1 = handle_analyze(a);
  handle_whatif(b);
  const HttpResponse a2 = handle_analyze(a);
  json j1 = body_of(a1), j2 = body_of(a2);
  j1.erase("timings");
  j2.erase("timings");
  EXPECT_EQ(j1, j2);
}

TEST(Service, WhatIfOverride) {
  for (const json& cost : {json("3.2"), json(3.2)}) {
    const HttpResponse r =
        handle_whatif(json{{"graph", listing1_graph()}, {"overrides", {{"b", cost}}}}.dump());
    ASSERT_EQ(r.status, 200) << r.body;
    const json b = body_of(r);
    ASSERT_EQ(b["cut"]["nodes"].size(), 1u);
    EXPECT_EQ(b["cut"]["nodes"][0]["id"], "b");
    EXPECT_EQ(b["cut"]["nodes"][0]["value"], "3.2");
    EXPECT_EQ(b["cut"]["cost"], 3.2);
  }
}

TEST(Service, WhatIfRemovalLeavesReducedOr) {
  const HttpResponse r =
      handle_whatif(json{{"graph", listing1_graph()}, {"removedNodes", {"a"}}}.dump());
  ASSERT_EQ(r.status, 200) << r.body;
  const json b = body_of(r);
  // Only the b-c branch remains: cheapest is c (2).
  EXPECT_EQ(b["cut"]["nodes"][0]["id"], "c");
  EXPECT_EQ(b["cut"]["cost"], 2.0);
}

TEST(Service, WhatIfRemovalDisruptsTarget) {
  const HttpResponse r =
      handle_whatif(json{{"graph", listing1_graph()}, {"removedNodes", {"a", "c"}}}.dump());
  EXPECT_EQ(r.status, 422) << r.body;
  EXPECT_NE(body_of(r)["error"].get<std::string>().find("target undisruptable"), std::string::npos);
}

TEST(Service, WhatIfRemediatedRound) {
  const HttpResponse r = handle_whatif(
      json{{"graph", listing1_graph()}, {"overrides", {{"a", "inf"}, {"c", "inf"}}}}.dump());
  ASSERT_EQ(r.status, 200) << r.body;
  EXPECT_EQ(body_of(r)["cut"]["nodes"][0]["id"], "b");
  EXPECT_EQ(body_of(r)["kappa"], 5.0);
}

TEST(Service, WhatIfRejectsUnknownNodes) {
  EXPECT_EQ(handle_whatif(json{{"graph", listing1_graph()}, {"overrides", {{"zz", "1"}}}}.dump())
                .status,
            400);
  EXPECT_EQ(handle_whatif(json{{"graph", listing1_graph()}, {"removedNodes", {"zz"}}}.dump())
                .status,
            400);
}

TEST(Service, InvalidModelListsViolations) {
  json g = listing1_graph();
  g["edges"].push_back({{"source", "c1"}, {"target", "d"}});
  const HttpResponse r = handle_analyze(json{{"graph", g}}.dump());
  ASSERT_EQ(r.status, 400);
  const json b = body_of(r);
  ASSERT_FALSE(b["violations"].empty());
  EXPECT_EQ(b["violations"][0]["rule"], "actuator-out-degree");
  EXPECT_TRUE(b.contains("requestHash"));
}

TEST(Service, MalformedRequests) {
  EXPECT_EQ(handle_analyze("{").status, 400);
  EXPECT_EQ(handle_analyze("[]").status, 400);
  EXPECT_EQ(handle_analyze("{}").status, 400);
  EXPECT_EQ(handle_analyze(json{{"graph", listing1_graph()}, {"extra", 1}}.dump()).status, 400);
}

TEST(Service, Unsat) {
  json g = listing1_graph();
  for (auto& n : g["nodes"])
    if (n["id"] == "a" || n["id"] == "b" || n["id"] == "d") n["value"] = "inf";
  const HttpResponse r = handle_analyze(json{{"graph", g}}.dump());
  EXPECT_EQ(r.status, 422);
  EXPECT_NE(body_of(r)["error"].get<std::string>().find("target undisruptable"), std::string::npos);
}

TEST(Service, Harden) {
  const HttpResponse r = handle_harden(json{{"graph", listing1_graph()}}.dump());
  ASSERT_EQ(r.status, 200) << r.body;
  const json b = body_of(r);
  ASSERT_EQ(b["rounds"].size(), 4u);
  EXPECT_EQ(b["rounds"][1]["cost"], 5.0);
  EXPECT_EQ(b["stopReason"], "fully hardened");
  const HttpResponse t =
      handle_harden(json{{"graph", listing1_graph()}, {"threshold", 4.5}, {"maxRounds", 3}}.dump());
  EXPECT_EQ(body_of(t)["rounds"].size(), 2u);
  EXPECT_EQ(handle_harden(json{{"graph", listing1_graph()}, {"maxRounds", 0}}.dump()).status, 400);
}

TEST(Service, LiveServer) {
  ServeOptions opts;
  opts.port = 0;
  Server server(opts);
  const int port = server.bind();
  ASSERT_GT(port, 0);
  std::thread worker([&] { server.listen(); });
  httplib::Client client("127.0.0.1", port);
  client.set_connection_timeout(5);
  auto health = client.Get("/api/health");
  for (int i = 0; !health && i < 50; ++i) {
    std::this_thread::sleep_for(std::chrono::milliseconds(20));
    health = client.Get("/api/health");
  }
  ASSERT_TRUE(health);
  EXPECT_EQ(health->status, 200);
  const std::string req = json{{"graph", listing1_graph()}}.dump();
  auto res = client.Post("/api/analyze", req, "application/json");
  ASSERT_TRUE(res);
  EXPECT_EQ(res->status, 200);
  EXPECT_EQ(json::parse(res->body)["cut"].dump(), body_of(handle_analyze(req))["cut"].dump());
  EXPECT_EQ(json::parse(res->body)["cut"]["cost"], 4.0);
  res = client.Post("/api/whatif",
                    json{{"graph", listing1_graph()}, {"overrides", {{"b", "3.2"}}}}.dump(),
                    "application/json");
  ASSERT_TRUE(res);
  EXPECT_EQ(json::parse(res->body)["cut"]["nodes"][0]["id"], "b");
  res = client.Post("/api/harden", req, "application/json");
  ASSERT_TRUE(res);
  EXPECT_EQ(res->status, 200);
  res = client.Post("/api/analyze", "{", "application/json");
  ASSERT_TRUE(res);
  EXPECT_EQ(res->status, 400);
  server.stop();
  worker.join();
}

}  // namespace
}  // namespace criticut
