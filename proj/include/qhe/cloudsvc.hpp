#pragma once

// The stateless addition service behind POST /process.
//
// It holds no keys: for Chen it XORs segments, for GSW it adds entries mod q,
// for QOTP it applies a transversal CNOT.

#include <chrono>
#include <cstddef>
#include <cstdint>
#include <memory>
#include <string>

#include "qhe/service.hpp"
#include "qhe/wire.hpp"

namespace qhe::cloud {

inline constexpr std::string_view kBuildId = "qhe-cloud/1.0.0";
inline constexpr const char* kPortEnvVar = "QHE_PORT";

struct ServiceConfig {
  std::string host = "0.0.0.0";
  int port = 8080;
  std::size_t max_payload_bytes = 8 * 1024 * 1024;
  std::chrono::seconds request_timeout{30};
  std::size_t worker_threads = 64;

  // Defaults with QHE_PORT applied when set.
  static ServiceConfig from_env();
  // Throws ParameterError for port outside [1, 65535] or max payload < 1 KiB.
  void validate() const;
};

wire::ProcessResponse handle_process(const wire::ProcessRequest& request);

struct HttpReply {
  int status = 200;
  std::string body;
};

// Decode, combine, encode. Maps ParseError/SchemeError to 400 and
// ValidationError/ShapeError to 422, with a JSON error body.
HttpReply handle_document(const std::string& body);

// In-process stand-in for the remote service; exercises the same codec path.
class LoopbackService final : public AdditionService {
 public:
  std::string process(const std::string& request_document) override;
};

// Talks to a running service at e.g. "http://127.0.0.1:8080".
class HttpService final : public AdditionService {
 public:
  explicit HttpService(std::string endpoint, std::chrono::seconds timeout = std::chrono::seconds{30});
  ~HttpService() override;
  HttpService(const HttpService&) = delete;
  HttpService& operator=(const HttpService&) = delete;

  std::string process(const std::string& request_document) override;

 private:
  struct Impl;
  std::unique_ptr<Impl> impl_;
};

// Owns the HTTP server. start() binds and serves on a background thread;
// run() binds and blocks.
class Server {
 public:
  explicit Server(ServiceConfig config);
  ~Server();
  Server(const Server&) = delete;
  Server& operator=(const Server&) = delete;

  // Binds to an ephemeral port on `host` and serves in the background.
  // Returns the bound port. Used by tests.
  int start_on_any_port(const std::string& host = "127.0.0.1");
  // Throws Error when the configured port cannot be bound.
  void run();
  void stop();

 private:
  struct Impl;
  std::unique_ptr<Impl> impl_;
};

// Blocks serving `config` until the process is terminated.
void serve(const ServiceConfig& config);

}  // namespace qhe::cloud
