// Copyright 2026 The foldplan Authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <memory>
#include <string>

#include "foldplan/service.hpp"

namespace httplib {
class Server;
}

namespace foldplan {

/// Serves a Service over HTTP/1.1.
class HttpServer {
 public:
  explicit HttpServer(Service& service);
  ~HttpServer();
  HttpServer(const HttpServer&) = delete;
  HttpServer& operator=(const HttpServer&) = delete;

  /// Binds the listening socket; port 0 picks a free one. Returns the bound
  /// port, or -1 on failure.
  int bind(const std::string& host, int port);
  /// Accepts connections until stop(). Returns false if the loop failed.
  bool run();
  void stop();

 private:
  Service& service_;
  std::unique_ptr<httplib::Server> server_;
};

/// Splits "host:port"; a bare port binds all interfaces.
std::pair<std::string, int> parse_listen_address(const std::string& text);

}  // namespace foldplan
