// Copyright 2026 The foldplan Authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <filesystem>
#include <map>
#include <memory>
#include <mutex>
#include <optional>
#include <shared_mutex>
#include <string>

#include "foldplan/foldsim.hpp"
#include "foldplan/pipeline.hpp"
#include "foldplan/plan.hpp"

namespace foldplan {

struct Request {
  std::string method;
  std::string path;  // without query string, percent-decoded
  std::map<std::string, std::string> query;
  std::map<std::string, std::string> headers;  // lower-case names
  std::string body;
};

struct Response {
  int status = 200;
  std::string content_type = "application/json";
  std::string body;
  std::map<std::string, std::string> headers;
};

struct ServiceConfig {
  /// Where plans are loaded from at start and saved to; empty keeps them in
  /// memory only.
  std::filesystem::path plan_dir;
  ExtractConfig extract;
};

/// The folding workflow over HTTP-shaped requests.
///
/// Every session carries a version that increases with each mutation and is
/// returned in the ETag header. Mutating requests must send the current
/// version in If-Match: 428 when it is missing, 412 when it is stale.
/// Requests against one session are serialized; reads share a lock.
class Service {
 public:
  explicit Service(ServiceConfig config = {});
  ~Service();
  Service(const Service&) = delete;
  Service& operator=(const Service&) = delete;

  Response handle(const Request& request);

 private:
  struct Session;
  struct Route;

  std::shared_ptr<Session> find_session(const std::string& id);
  Response create_session(const Request& r);
  Response session_request(const Request& r, const Route& route);
  Response plans_request(const Request& r, const Route& route);
  void store_plan(const FoldingPlan& plan);
  std::optional<FoldingPlan> lookup_plan(const std::string& class_label);

  ServiceConfig config_;
  std::shared_mutex sessions_mu_;
  std::map<std::string, std::shared_ptr<Session>> sessions_;
  std::uint64_t next_session_ = 1;
  std::mutex plans_mu_;
  std::map<std::string, FoldingPlan> plans_;
};

/// Maps an error code to its HTTP status.
int http_status(ErrorCode code);

}  // namespace foldplan
