#include "qhe/cloudsvc.hpp"

#include <cstdlib>
#include <iostream>
#include <string>
#include <thread>
#include <utility>

#include "httplib.h"
#include "json.hpp"
#include "qhe/error.hpp"

namespace qhe::cloud {

namespace {

std::string error_body(std::string_view kind, const std::string& message, const std::string& path = {}) {
  nlohmann::json body{{"error", std::string(kind)}, {"message", message}};
  if (!path.empty()) body["path"] = path;
  return body.dump();
}

}  // namespace

ServiceConfig ServiceConfig::from_env() {
  ServiceConfig config;
  if (const char* port = std::getenv(kPortEnvVar); port != nullptr && *port != '\0') {
    try {
      config.port = std::stoi(port);
    } catch (const std::exception&) {
      throw ParameterError(std::string(kPortEnvVar) + " is not a number: " + port);
    }
  }
  return config;
}

void ServiceConfig::validate() const {
  if (port < 1 || port > 65535) throw ParameterError("port must be in [1, 65535], got " + std::to_string(port));
  if (max_payload_bytes < 1024) throw ParameterError("max payload must be at least 1 KiB");
  if (worker_threads < 1) throw ParameterError("need at least one worker thread");
}

wire::ProcessResponse handle_process(const wire::ProcessRequest& request) {
  if (const auto* r = std::get_if<wire::ChenRequest>(&request)) {
    return wire::ChenResult{chen::xor_add(r->a, r->b)};
  }
  if (const auto* r = std::get_if<wire::GswRequest>(&request)) {
    return wire::GswResult{zq::add(r->c1, r->c2)};
  }
  return wire::QotpResult{qotp::cloud_parity_add(std::get<wire::QotpRequest>(request).pair)};
}

HttpReply handle_document(const std::string& body) {
  try {
    const auto request = wire::decode_request(body);
    return {200, wire::encode_response(handle_process(request))};
  } catch (const ParseError& e) {
    return {400, error_body("parse", e.what())};
  } catch (const SchemeError& e) {
    return {400, error_body("scheme", e.what())};
  } catch (const ValidationError& e) {
    return {422, error_body("validation", e.what(), e.path())};
  } catch (const ShapeError& e) {
    return {422, error_body("validation", e.what())};
  } catch (const std::exception& e) {
    return {500, error_body("internal", e.what())};
  }
}

std::string LoopbackService::process(const std::string& request_document) {
  auto reply = handle_document(request_document);
  if (reply.status != 200) throw ProtocolError("service answered " + std::to_string(reply.status) + ": " + reply.body, reply.status);
  return std::move(reply.body);
}

struct HttpService::Impl {
  httplib::Client client;
  explicit Impl(const std::string& base) : client(base) {}
};

HttpService::HttpService(std::string endpoint, std::chrono::seconds timeout) {
  constexpr std::string_view suffix = "/process";
  if (endpoint.ends_with(suffix)) endpoint.resize(endpoint.size() - suffix.size());
  while (endpoint.ends_with('/')) endpoint.pop_back();
  impl_ = std::make_unique<Impl>(endpoint);
  if (!impl_->client.is_valid()) throw ProtocolError("invalid endpoint \"" + endpoint + "\"");
  impl_->client.set_connection_timeout(timeout);
  impl_->client.set_read_timeout(timeout);
  impl_->client.set_write_timeout(timeout);
}

HttpService::~HttpService() = default;

std::string HttpService::process(const std::string& request_document) {
  auto res = impl_->client.Post("/process", request_document, "application/json");
  if (!res) throw ProtocolError("request to /process failed: " + httplib::to_string(res.error()));
  if (res->status != 200) {
    throw ProtocolError("service answered " + std::to_string(res->status) + ": " + res->body, res->status);
  }
  return std::move(res->body);
}

struct Server::Impl {
  ServiceConfig config;
  httplib::Server server;
  std::thread worker;

  explicit Impl(ServiceConfig cfg) : config(std::move(cfg)) {
    const std::size_t threads = config.worker_threads;
    server.new_task_queue = [threads] { return new httplib::ThreadPool(threads); };
    server.set_payload_max_length(config.max_payload_bytes);
    server.set_read_timeout(config.request_timeout);
    server.set_write_timeout(config.request_timeout);

    server.Post("/process", [](const httplib::Request& req, httplib::Response& res) {
      auto reply = handle_document(req.body);
      res.status = reply.status;
      res.set_content(std::move(reply.body), "application/json");
    });
    server.Get("/process", [](const httplib::Request&, httplib::Response& res) {
      res.status = 405;
      res.set_header("Allow", "POST");
      res.set_content(error_body("method", "use POST"), "application/json");
    });
    server.Get("/health", [](const httplib::Request&, httplib::Response& res) {
      res.set_content(nlohmann::json{{"build", std::string(kBuildId)}, {"status", "ok"}}.dump(), "application/json");
    });
  }
};

Server::Server(ServiceConfig config) {
  config.validate();
  impl_ = std::make_unique<Impl>(std::move(config));
}

Server::~Server() { stop(); }

int Server::start_on_any_port(const std::string& host) {
  const int port = impl_->server.bind_to_any_port(host);
  if (port <= 0) throw IoError("could not bind an ephemeral port on " + host);
  impl_->worker = std::thread([this] { impl_->server.listen_after_bind(); });
  impl_->server.wait_until_ready();
  return port;
}

void Server::run() {
  if (!impl_->server.bind_to_port(impl_->config.host, impl_->config.port)) {
    throw IoError("could not bind " + impl_->config.host + ":" + std::to_string(impl_->config.port));
  }
  impl_->server.listen_after_bind();
}

void Server::stop() {
  if (!impl_) return;
  if (impl_->server.is_running()) impl_->server.stop();
  if (impl_->worker.joinable()) impl_->worker.join();
}

void serve(const ServiceConfig& config) {
  Server server(config);
  std::cerr << "qhe cloud service " << kBuildId << " listening on " << config.host << ":" << config.port << '\n';
  server.run();
}

}  // namespace qhe::cloud
