// Copyright 2026 The foldplan Authors
// SPDX-License-Identifier: Apache-2.0

#include "foldplan/service.hpp"

#include <algorithm>
#include <cctype>
#include <charconv>
#include <vector>

#include "foldplan/image_io.hpp"

namespace fs = std::filesystem;
using nlohmann::json;

namespace foldplan {

int http_status(ErrorCode code) {
  switch (code) {
    case ErrorCode::InvalidArgument:
    case ErrorCode::MalformedImage:
    case ErrorCode::MalformedDocument:
    case ErrorCode::SchemaVersionUnsupported:
    case ErrorCode::SameNode:
    case ErrorCode::NonPositiveHeight:
    case ErrorCode::StepOutOfRange:
      return 400;
    case ErrorCode::UnknownNode:
    case ErrorCode::NoPendingAction:
    case ErrorCode::MissingPlanForClass:
      return 404;
    case ErrorCode::OffGarment:
    case ErrorCode::RepresentationMismatch:
    case ErrorCode::DegenerateFold:
    case ErrorCode::NoActivePlan:
      return 409;
    case ErrorCode::EmptyMask:
    case ErrorCode::EmptySkeleton:
      return 422;
    case ErrorCode::Io:
    case ErrorCode::EmptyLibrary:
      return 500;
  }
  return 500;
}

struct Service::Session {
  std::string id;
  std::shared_mutex mu;
  std::uint64_t version = 1;
  BinaryMask mask;
  SkeletonGraph graph;  // always the extraction of `mask`, plus node edits
  /// Skeleton of the unfolded garment; proposals resolve on it and are then
  /// carried through `folds`.
  SkeletonGraph base_graph;
  std::optional<FoldingPlan> active_plan;
  bool plan_defined_here = false;
  PendingSlot pending;
  std::vector<FoldResult> executed;
  std::vector<FoldLine> folds;
  std::optional<std::string> class_label;
};

struct Service::Route {
  std::vector<std::string> parts;
};

namespace {

Response json_response(int status, const json& body) {
  Response r;
  r.status = status;
  r.body = body.dump();
  return r;
}

Response error_response(int status, std::string_view code, std::string_view detail) {
  return json_response(status, {{"error", code}, {"detail", detail}});
}

json parse_body(const Request& r) {
  if (r.body.empty()) return json::object();
  json j = json::parse(r.body, nullptr, false);
  if (j.is_discarded() || !j.is_object())
    throw Error(ErrorCode::MalformedDocument, "request body must be a JSON object");
  return j;
}

int parse_int(const std::string& s, const char* what) {
  int v = 0;
  auto [p, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
  if (ec != std::errc() || p != s.data() + s.size())
    throw Error(ErrorCode::InvalidArgument, std::string("invalid ") + what + " '" + s + "'");
  return v;
}

template <class T>
T field(const json& j, const char* name) {
  auto it = j.find(name);
  if (it == j.end()) throw Error(ErrorCode::MalformedDocument, std::string("missing field '") + name + "'");
  try {
    return it->get<T>();
  } catch (const json::exception&) {
    throw Error(ErrorCode::MalformedDocument, std::string("field '") + name + "' has the wrong type");
  }
}

MaskConfig mask_config(const Request& r, MaskConfig cfg) {
  if (auto it = r.query.find("threshold"); it != r.query.end())
    cfg.threshold = parse_int(it->second, "threshold");
  if (auto it = r.query.find("mode"); it != r.query.end()) {
    if (it->second == "luminance")
      cfg.threshold_mode = ThresholdMode::Luminance;
    else if (it->second == "chroma")
      cfg.threshold_mode = ThresholdMode::ChromaDistance;
    else
      throw Error(ErrorCode::InvalidArgument, "mode must be luminance or chroma");
  }
  if (auto it = r.query.find("keep_largest"); it != r.query.end())
    cfg.keep_largest_component = it->second != "0" && it->second != "false";
  if (auto it = r.query.find("fill_holes"); it != r.query.end())
    cfg.fill_holes_below = parse_int(it->second, "fill_holes");
  cfg.validate();
  return cfg;
}

std::string plan_file_name(const std::string& label) {
  std::string out;
  for (char c : label) out += std::isalnum((unsigned char)c) ? c : '_';
  return out + ".json";
}

std::string class_key(std::string s) {
  std::replace(s.begin(), s.end(), '_', ' ');
  return s;
}

json plan_summary(const FoldingPlan& p) {
  return {{"class_label", p.class_label}, {"length", p.size()}};
}

}  // namespace

Service::Service(ServiceConfig config) : config_(std::move(config)) {
  config_.extract.validate();
  if (config_.plan_dir.empty()) return;
  fs::create_directories(config_.plan_dir);
  std::vector<fs::path> files;
  for (const auto& e : fs::directory_iterator(config_.plan_dir))
    if (e.path().extension() == ".json") files.push_back(e.path());
  std::sort(files.begin(), files.end());
  for (const auto& f : files) {
    try {
      FoldingPlan p = plan::load_plan(io::read_text(f));
      plans_[p.class_label] = std::move(p);
    } catch (const Error&) {
      // unreadable plan files are left on disk and ignored
    }
  }
}

Service::~Service() = default;

std::shared_ptr<Service::Session> Service::find_session(const std::string& id) {
  std::shared_lock lock(sessions_mu_);
  auto it = sessions_.find(id);
  return it == sessions_.end() ? nullptr : it->second;
}

void Service::store_plan(const FoldingPlan& p) {
  const std::string doc = plan::save_plan(p);
  std::lock_guard lock(plans_mu_);
  if (!config_.plan_dir.empty()) io::write_file(config_.plan_dir / plan_file_name(p.class_label), doc);
  plans_[p.class_label] = p;
}

std::optional<FoldingPlan> Service::lookup_plan(const std::string& class_label) {
  std::lock_guard lock(plans_mu_);
  auto it = plans_.find(class_label);
  if (it == plans_.end()) it = plans_.find(class_key(class_label));
  if (it == plans_.end()) return std::nullopt;
  return it->second;
}

Response Service::handle(const Request& request) {
  Route route;
  {
    std::string_view p = request.path;
    while (!p.empty()) {
      while (!p.empty() && p.front() == '/') p.remove_prefix(1);
      auto slash = p.find('/');
      if (!p.empty()) route.parts.emplace_back(p.substr(0, slash));
      p = slash == std::string_view::npos ? std::string_view{} : p.substr(slash);
    }
  }
  try {
    if (!route.parts.empty() && route.parts[0] == "sessions") {
      if (route.parts.size() == 1) {
        if (request.method != "POST") return error_response(405, "MethodNotAllowed", request.method);
        return create_session(request);
      }
      return session_request(request, route);
    }
    if (!route.parts.empty() && route.parts[0] == "plans") return plans_request(request, route);
    return error_response(404, "NotFound", "no route for " + request.path);
  } catch (const RepresentationMismatchError& e) {
    return json_response(409, {{"error", to_string(e.code())},
                               {"detail", e.what()},
                               {"expected", plan::to_json(e.expected())},
                               {"actual", plan::to_json(e.actual())}});
  } catch (const Error& e) {
    return error_response(http_status(e.code()), to_string(e.code()), e.what());
  } catch (const std::exception& e) {
    return error_response(500, "Internal", e.what());
  }
}

Response Service::create_session(const Request& r) {
  const MaskConfig cfg = mask_config(r, config_.extract.mask);
  const RgbImage image = io::decode_png(
      std::span<const std::uint8_t>(reinterpret_cast<const std::uint8_t*>(r.body.data()), r.body.size()));
  ExtractConfig ecfg = config_.extract;
  ecfg.mask = cfg;
  Representation rep = extract(image, ecfg);

  auto s = std::make_shared<Session>();
  s->mask = std::move(rep.mask);
  s->graph = std::move(rep.graph);
  {
    std::unique_lock lock(sessions_mu_);
    s->id = "s" + std::to_string(next_session_++);
    sessions_[s->id] = s;
  }
  Response out = json_response(201, {{"id", s->id},
                                     {"version", s->version},
                                     {"graph", graph::to_json(s->graph)},
                                     {"mask", "/sessions/" + s->id + "/mask.png"}});
  out.headers["ETag"] = std::to_string(s->version);
  out.headers["Location"] = "/sessions/" + s->id;
  return out;
}

Response Service::session_request(const Request& r, const Route& route) {
  const auto& parts = route.parts;
  std::shared_ptr<Session> s = find_session(parts[1]);
  if (!s) return error_response(404, "UnknownSession", "no session '" + parts[1] + "'");

  const bool read = r.method == "GET";
  std::shared_lock<std::shared_mutex> read_lock(s->mu, std::defer_lock);
  std::unique_lock<std::shared_mutex> write_lock(s->mu, std::defer_lock);
  if (read)
    read_lock.lock();
  else
    write_lock.lock();

  auto with_version = [&](Response resp) {
    resp.headers["ETag"] = std::to_string(s->version);
    return resp;
  };
  auto state = [&](json extra) {
    extra["version"] = s->version;
    return with_version(json_response(200, extra));
  };
  const std::size_t n = parts.size();

  if (read) {
    if (n == 2) {
      json body = {{"id", s->id},
                   {"graph", graph::to_json(s->graph)},
                   {"mask", "/sessions/" + s->id + "/mask.png"},
                   {"executed", s->executed.size()},
                   {"class_label", s->class_label ? json(*s->class_label) : json()},
                   {"active_plan", s->active_plan ? plan::to_json(*s->active_plan) : json()},
                   {"pending", s->pending.has_value() ? plan::to_json(s->pending.value()) : json()}};
      return state(body);
    }
    if (n == 3 && parts[2] == "graph") return state({{"graph", graph::to_json(s->graph)}});
    if (n == 3 && parts[2] == "mask.png") {
      Response resp;
      resp.content_type = "image/png";
      const auto png = io::encode_png(s->mask);
      resp.body.assign(png.begin(), png.end());
      return with_version(resp);
    }
    if (n == 4 && parts[2] == "folds" && parts[3].size() > 4 &&
        parts[3].compare(parts[3].size() - 4, 4, ".png") == 0) {
      const int k = parse_int(parts[3].substr(0, parts[3].size() - 4), "fold index");
      if (k < 0 || std::size_t(k) >= s->executed.size())
        return error_response(404, "UnknownFold", "no executed fold " + std::to_string(k));
      Response resp;
      resp.content_type = "image/png";
      const auto png = io::encode_png(s->executed[std::size_t(k)].mask);
      resp.body.assign(png.begin(), png.end());
      return with_version(resp);
    }
    return error_response(404, "NotFound", "no route for " + r.path);
  }

  // Mutations: check the route first so unknown paths are 404 regardless of
  // the version header.
  const bool known = (r.method == "PATCH" && n == 4 && parts[2] == "nodes") ||
                     (r.method == "POST" && n == 3 &&
                      (parts[2] == "plan" || parts[2] == "propose" || parts[2] == "accept" ||
                       parts[2] == "reset")) ||
                     (r.method == "POST" && n == 4 && parts[2] == "plan" && parts[3] == "actions");
  if (!known) return error_response(404, "NotFound", "no route for " + r.method + " " + r.path);

  auto im = r.headers.find("if-match");
  if (im == r.headers.end())
    return with_version(error_response(428, "PreconditionRequired", "If-Match header with the session version is required"));
  std::string tag = im->second;
  tag.erase(std::remove(tag.begin(), tag.end(), '"'), tag.end());
  if (tag != std::to_string(s->version))
    return with_version(error_response(412, "PreconditionFailed",
                                       "session is at version " + std::to_string(s->version)));

  const json body = parse_body(r);

  if (parts[2] == "nodes") {
    const int nid = parse_int(parts[3], "node id");
    s->graph = graph::move_node(s->graph, nid, field<int>(body, "x"), field<int>(body, "y"), s->mask);
    ++s->version;
    return state({{"graph", graph::to_json(s->graph)}});
  }

  if (parts[2] == "plan" && n == 3) {
    FoldingPlan p;
    bool here = false;
    if (body.contains("plan")) {
      p = plan::plan_from_json(body.at("plan"));
    } else if (body.contains("new")) {
      p = plan::make_plan(field<std::string>(body, "new"), s->executed.empty() ? s->graph : s->base_graph);
      here = true;
    } else if (body.contains("class_label")) {
      const std::string label = field<std::string>(body, "class_label");
      auto found = lookup_plan(label);
      if (!found) return with_version(error_response(404, "MissingPlanForClass", "no plan for class '" + label + "'"));
      p = std::move(*found);
    } else {
      throw Error(ErrorCode::MalformedDocument, "expected one of 'class_label', 'plan' or 'new'");
    }
    s->class_label = p.class_label;
    s->active_plan = std::move(p);
    s->plan_defined_here = here;
    ++s->version;
    return state({{"plan", plan::to_json(*s->active_plan)}});
  }

  if (parts[2] == "plan") {  // plan/actions
    if (!s->active_plan) throw Error(ErrorCode::NoActivePlan, "no active plan");
    FoldingPlan& p = *s->active_plan;
    // A plan being defined on this garment follows the operator's node edits.
    if (s->plan_defined_here && s->executed.empty() &&
        graph::adjacency_matrix(s->graph) == p.reference_adjacency)
      p.reference_graph = s->graph;
    std::optional<double> h;
    if (body.contains("mid_height")) h = field<double>(body, "mid_height");
    const FoldingAction a =
        plan::define_action(p.reference_graph, field<int>(body, "pick"), field<int>(body, "place"), h);
    p = plan::add_action(p, a);
    ++s->version;
    return state({{"plan", plan::to_json(p)}});
  }

  if (parts[2] == "propose") {
    if (!s->active_plan) throw Error(ErrorCode::NoActivePlan, "no active plan");
    const int step = field<int>(body, "step");
    ResolvedAction a;
    if (s->executed.empty()) {
      a = plan::propose_action(*s->active_plan, step, s->graph);
    } else {
      a = plan::propose_action(*s->active_plan, step, s->base_graph);
      a.pick_xy = foldsim::map_point(s->folds, a.pick_xy);
      a.place_xy = foldsim::map_point(s->folds, a.place_xy);
    }
    s->pending.set(a);
    ++s->version;
    return state({{"pending", plan::to_json(a)},
                  {"trajectory", plan::to_json(plan::make_trajectory(a))}});
  }

  if (parts[2] == "accept") {
    const ResolvedAction a = s->pending.value();
    FoldResult result = foldsim::apply_fold(s->mask, a);
    Representation rep = extract(result.mask, config_.extract);
    if (s->executed.empty()) s->base_graph = s->graph;
    s->pending.take();
    s->mask = result.mask;
    s->graph = std::move(rep.graph);
    s->folds.push_back(result.fold_line);
    s->executed.push_back(std::move(result));
    ++s->version;
    const std::size_t k = s->executed.size() - 1;
    return state({{"fold", foldsim::to_json(s->executed.back())},
                  {"fold_png", "/sessions/" + s->id + "/folds/" + std::to_string(k) + ".png"},
                  {"graph", graph::to_json(s->graph)}});
  }

  // reset
  s->pending.reset();
  ++s->version;
  return state({{"pending", nullptr}});
}

Response Service::plans_request(const Request& r, const Route& route) {
  const auto& parts = route.parts;
  if (parts.size() == 1 && r.method == "GET") {
    json list = json::array();
    std::lock_guard lock(plans_mu_);
    for (const auto& [label, p] : plans_) list.push_back(plan_summary(p));
    return json_response(200, {{"plans", list}});
  }
  if (parts.size() == 1 && r.method == "POST") {
    const json body = parse_body(r);
    FoldingPlan p;
    if (body.contains("session")) {
      auto s = find_session(field<std::string>(body, "session"));
      if (!s) return error_response(404, "UnknownSession", "no such session");
      std::shared_lock lock(s->mu);
      if (!s->active_plan) throw Error(ErrorCode::NoActivePlan, "session has no active plan");
      p = *s->active_plan;
    } else {
      p = plan::plan_from_json(body);
    }
    store_plan(p);
    return json_response(201, plan_summary(p));
  }
  if (parts.size() == 2 && r.method == "GET") {
    auto p = lookup_plan(parts[1]);
    if (!p) return error_response(404, "MissingPlanForClass", "no plan for class '" + parts[1] + "'");
    return json_response(200, plan::to_json(*p));
  }
  return error_response(404, "NotFound", "no route for " + r.method + " " + r.path);
}

}  // namespace foldplan
