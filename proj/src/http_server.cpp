// Copyright 2026 The foldplan Authors
// SPDX-License-Identifier: Apache-2.0

#include "foldplan/http_server.hpp"

#include <algorithm>
#include <cctype>

#include <httplib.h>

namespace foldplan {

HttpServer::HttpServer(Service& service)
    : service_(service), server_(std::make_unique<httplib::Server>()) {
  auto handler = [this](const httplib::Request& in, httplib::Response& out) {
    Request r;
    r.method = in.method;
    r.path = in.path;
    for (const auto& [k, v] : in.params) r.query.emplace(k, v);
    for (const auto& [k, v] : in.headers) {
      std::string key = k;
      std::transform(key.begin(), key.end(), key.begin(), [](unsigned char c) { return char(std::tolower(c)); });
      r.headers.emplace(std::move(key), v);
    }
    r.body = in.body;
    Response resp = service_.handle(r);
    out.status = resp.status;
    for (const auto& [k, v] : resp.headers) out.set_header(k, v);
    out.set_header("Access-Control-Allow-Origin", "*");
    out.set_header("Access-Control-Expose-Headers", "ETag, Location");
    out.set_content(resp.body, resp.content_type);
  };
  server_->Get(".*", handler);
  server_->Post(".*", handler);
  server_->Patch(".*", handler);
  server_->Options(".*", [](const httplib::Request&, httplib::Response& out) {
    out.set_header("Access-Control-Allow-Origin", "*");
    out.set_header("Access-Control-Allow-Methods", "GET, POST, PATCH, OPTIONS");
    out.set_header("Access-Control-Allow-Headers", "Content-Type, If-Match");
    out.status = 204;
  });
}

HttpServer::~HttpServer() = default;

int HttpServer::bind(const std::string& host, int port) {
  if (port == 0) return server_->bind_to_any_port(host);
  return server_->bind_to_port(host, port) ? port : -1;
}

bool HttpServer::run() { return server_->listen_after_bind(); }

void HttpServer::stop() { server_->stop(); }

std::pair<std::string, int> parse_listen_address(const std::string& text) {
  std::string host = "0.0.0.0";
  std::string port = text;
  if (auto colon = text.rfind(':'); colon != std::string::npos) {
    host = text.substr(0, colon);
    port = text.substr(colon + 1);
  }
  if (port.empty() || !std::all_of(port.begin(), port.end(), [](unsigned char c) { return std::isdigit(c); }))
    throw Error(ErrorCode::InvalidArgument, "listen address must be host:port, got '" + text + "'");
  const int p = std::stoi(port);
  if (p < 0 || p > 65535) throw Error(ErrorCode::InvalidArgument, "port out of range");
  return {host.empty() ? "0.0.0.0" : host, p};
}

}  // namespace foldplan
