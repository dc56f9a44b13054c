#pragma once

#include <memory>
#include <optional>
#include <string>
#include <string_view>

namespace criticut {

struct HttpResponse {
  int status = 200;
  std::string body;
  std::string content_type = "application/json";
};

/// 16 lowercase hex digits of the 64-bit FNV-1a hash of `body`.
std::string request_hash(std::string_view body);

/// GET /api/health
HttpResponse handle_health();
/// POST /api/analyze: {graph, target?}
HttpResponse handle_analyze(std::string_view body);
/// POST /api/whatif: {graph, overrides?: {id: cost}, removedNodes?: [id], target?}
HttpResponse handle_whatif(std::string_view body);
/// POST /api/harden: {graph, threshold?, maxRounds?, target?}
HttpResponse handle_harden(std::string_view body);

struct ServeOptions {
  std::string host = "127.0.0.1";
  /// 0 binds an ephemeral port.
  int port = 8080;
  std::optional<std::string> static_dir;
};

/// HTTP front end over the handle_* functions.
class Server {
 public:
  explicit Server(ServeOptions options);
  ~Server();
  Server(const Server&) = delete;
  Server& operator=(const Server&) = delete;

  /// Binds the socket and returns the bound port; throws Error on failure.
  int bind();
  /// Serves until stop(); call after bind().
  void listen();
  void stop();

 private:
  struct Impl;
  std::unique_ptr<Impl> impl_;
};

}  // namespace criticut
