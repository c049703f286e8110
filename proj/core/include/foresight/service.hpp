/**
 * @file service.hpp
 * @brief JSON-over-HTTP front end for a portfolio store.
 *
 * Service::handle() is transport-independent and does all routing; the
 * HttpServer adapter only moves requests and responses between cpp-httplib
 * and handle(). Mutations go through one writer lock and are persisted before
 * the response is produced. Reads and ad-hoc simulations work on immutable
 * snapshots and never wait for the writer.
 */
#pragma once

#include <atomic>
#include <cstdint>
#include <functional>
#include <map>
#include <memory>
#include <mutex>
#include <string>

#include "foresight/error.hpp"
#include "foresight/monte_carlo.hpp"
#include "foresight/serialization.hpp"
#include "foresight/store.hpp"

namespace foresight {

struct ApiRequest {
  std::string method;
  std::string path;
  std::map<std::string, std::string> query;
  std::map<std::string, std::string> headers;
  std::string body;
};

struct ApiResponse {
  int status = 200;
  std::string content_type = "application/json";
  std::string body;
};

/// HTTP status and machine code for an inner-module error.
struct ApiError {
  int status = 500;
  std::string code;
  std::string message;
  std::string path;

  static ApiError from(const Error& error);
  Json to_json() const;
};

int http_status(ErrorCode code);

using Clock = std::function<Timestamp()>;

/// Wall clock truncated to whole seconds.
Timestamp system_now();

struct ServiceOptions {
  SimulationOptions simulation{};
  Clock clock = system_now;
};

class Service {
 public:
  /// Loads the portfolio immediately; load errors propagate.
  explicit Service(std::shared_ptr<PortfolioStore> store, ServiceOptions options = {});

  ApiResponse handle(const ApiRequest& request);

  std::shared_ptr<const PortfolioFile> snapshot() const;

 private:
  template <class Fn>
  ApiResponse mutate(int status, Fn&& fn);

  ApiResponse route(const ApiRequest& request);

  std::shared_ptr<PortfolioStore> store_;
  ServiceOptions options_;
  std::mutex writer_;
  mutable std::mutex snapshot_mutex_;
  std::shared_ptr<const PortfolioFile> snapshot_;
};

struct BindAddress {
  std::string host = "127.0.0.1";
  int port = 8080;
};

/// "host:port", ":port" or "port". Throws Error(Config).
BindAddress parse_bind_address(const std::string& text);

class HttpServer {
 public:
  explicit HttpServer(Service& service);
  ~HttpServer();
  HttpServer(const HttpServer&) = delete;
  HttpServer& operator=(const HttpServer&) = delete;

  /// Binds; port 0 picks a free port. Returns the bound port.
  int bind(const BindAddress& address);
  /// Blocks until stop() is called.
  void listen();
  void stop();
  bool running() const;

 private:
  struct Impl;
  std::unique_ptr<Impl> impl_;
};

}  // namespace foresight
