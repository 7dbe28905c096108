// Copyright 2026 The foldplan Authors
// SPDX-License-Identifier: Apache-2.0

#include "foldplan/plan.hpp"

#include <cmath>

namespace foldplan {

const ResolvedAction& PendingSlot::value() const {
  if (!pending_) throw Error(ErrorCode::NoPendingAction, "no pending action");
  return *pending_;
}

void PendingSlot::reset() {
  if (!pending_) throw Error(ErrorCode::NoPendingAction, "no pending action to reset");
  pending_.reset();
}

ResolvedAction PendingSlot::take() {
  if (!pending_) throw Error(ErrorCode::NoPendingAction, "no pending action to execute");
  ResolvedAction a = *pending_;
  pending_.reset();
  return a;
}

namespace plan {
namespace {

void check_action(const SkeletonGraph& g, const FoldingAction& a) {
  g.node(a.pick);
  g.node(a.place);
  if (a.pick == a.place) throw Error(ErrorCode::SameNode, "pick and place must differ");
  if (!(a.mid_height > 0) || !std::isfinite(a.mid_height))
    throw Error(ErrorCode::NonPositiveHeight, "trajectory height must be positive");
}

Trajectory trajectory_between(Pixel pick, Pixel place, double height) {
  return {{Point3{double(pick.x), double(pick.y), 0.0},
           Point3{(pick.x + place.x) / 2.0, (pick.y + place.y) / 2.0, height},
           Point3{double(place.x), double(place.y), 0.0}}};
}

}  // namespace

FoldingAction define_action(const SkeletonGraph& g, int pick, int place,
                            std::optional<double> mid_height) {
  g.node(pick);
  g.node(place);
  if (pick == place) throw Error(ErrorCode::SameNode, "pick and place must differ");
  double h = mid_height ? *mid_height : 0.5 * distance(g.node(pick).pos(), g.node(place).pos());
  FoldingAction a{pick, place, h};
  check_action(g, a);
  return a;
}

Trajectory make_trajectory(const FoldingAction& a, const SkeletonGraph& g) {
  check_action(g, a);
  return trajectory_between(g.node(a.pick).pos(), g.node(a.place).pos(), a.mid_height);
}

Trajectory make_trajectory(const ResolvedAction& a) {
  return trajectory_between(a.pick_xy, a.place_xy, a.mid_height);
}

FoldingPlan make_plan(std::string class_label, SkeletonGraph reference_graph) {
  FoldingPlan p;
  p.class_label = std::move(class_label);
  p.reference_adjacency = graph::adjacency_matrix(reference_graph);
  p.reference_graph = std::move(reference_graph);
  return p;
}

FoldingPlan add_action(const FoldingPlan& plan, const FoldingAction& a) {
  check_action(plan.reference_graph, a);
  FoldingPlan out = plan;
  out.actions.push_back(a);
  return out;
}

Pixel resolve_node(const SkeletonGraph& reference, const SkeletonGraph& target, int id) {
  const SkeletonNode& on_target = target.node(id);
  const SkeletonNode& on_reference = reference.node(id);
  if (on_target.moved || !on_reference.moved) return on_target.pos();
  auto [fx, fy] = graph::normalized_position(reference, on_reference.pos());
  return {target.bbox.x0 + int(std::lround(fx * target.bbox.width())),
          target.bbox.y0 + int(std::lround(fy * target.bbox.height()))};
}

ResolvedAction propose_action(const FoldingPlan& plan, int step, const SkeletonGraph& new_graph) {
  if (step < 0 || std::size_t(step) >= plan.actions.size())
    throw Error(ErrorCode::StepOutOfRange, "step " + std::to_string(step) + " outside plan of " +
                                               std::to_string(plan.actions.size()));
  AdjacencyMatrix adjacency = graph::adjacency_matrix(new_graph);
  if (adjacency != plan.reference_adjacency)
    throw RepresentationMismatchError(plan.reference_adjacency, std::move(adjacency));

  const FoldingAction& a = plan.actions[std::size_t(step)];
  ResolvedAction r;
  r.pick_xy = resolve_node(plan.reference_graph, new_graph, a.pick);
  r.place_xy = resolve_node(plan.reference_graph, new_graph, a.place);
  r.mid_height = a.mid_height * new_graph.bbox.diagonal() / plan.reference_graph.bbox.diagonal();
  r.source_step = step;
  if (r.pick_xy == r.place_xy)
    throw Error(ErrorCode::DegenerateFold, "pick and place resolve to the same pixel");
  return r;
}

nlohmann::json to_json(const AdjacencyMatrix& m) {
  nlohmann::json out = nlohmann::json::array();
  for (const auto& row : m) out.push_back(row);
  return out;
}

nlohmann::json to_json(const FoldingPlan& plan) {
  nlohmann::json actions = nlohmann::json::array();
  for (const auto& a : plan.actions)
    actions.push_back({{"pick", a.pick}, {"place", a.place}, {"mid_height", a.mid_height}});
  return {{"version", kSchemaVersion},
          {"class_label", plan.class_label},
          {"actions", std::move(actions)},
          {"reference_graph", graph::to_json(plan.reference_graph)},
          {"reference_adjacency", to_json(plan.reference_adjacency)}};
}

FoldingPlan plan_from_json(const nlohmann::json& doc) {
  if (!doc.is_object()) throw Error(ErrorCode::MalformedDocument, "plan document must be an object");
  auto version = doc.find("version");
  if (version == doc.end() || !version->is_number_integer())
    throw Error(ErrorCode::MalformedDocument, "plan document lacks an integer version");
  if (version->get<int>() != kSchemaVersion)
    throw Error(ErrorCode::SchemaVersionUnsupported,
                "plan schema version " + version->dump() + " is not supported");
  try {
    FoldingPlan p;
    p.class_label = doc.at("class_label").get<std::string>();
    if (p.class_label.empty()) throw Error(ErrorCode::MalformedDocument, "class_label is empty");
    p.reference_graph = graph::graph_from_json(doc.at("reference_graph"));
    p.reference_adjacency = doc.at("reference_adjacency").get<AdjacencyMatrix>();
    if (p.reference_adjacency != graph::adjacency_matrix(p.reference_graph))
      throw Error(ErrorCode::MalformedDocument, "reference_adjacency does not match reference_graph");
    for (const auto& ja : doc.at("actions")) {
      FoldingAction a{ja.at("pick").get<int>(), ja.at("place").get<int>(),
                      ja.at("mid_height").get<double>()};
      try {
        check_action(p.reference_graph, a);
      } catch (const Error& e) {
        throw Error(ErrorCode::MalformedDocument, std::string("invalid action: ") + e.what());
      }
      p.actions.push_back(a);
    }
    return p;
  } catch (const nlohmann::json::exception& e) {
    throw Error(ErrorCode::MalformedDocument, std::string("plan document: ") + e.what());
  }
}

std::string save_plan(const FoldingPlan& plan) {
  if (plan.actions.empty()) throw Error(ErrorCode::InvalidArgument, "cannot save an empty plan");
  return to_json(plan).dump(2);
}

FoldingPlan load_plan(std::string_view document) {
  nlohmann::json doc = nlohmann::json::parse(document, nullptr, false);
  if (doc.is_discarded()) throw Error(ErrorCode::MalformedDocument, "plan document is not valid JSON");
  return plan_from_json(doc);
}

nlohmann::json to_json(const ResolvedAction& a) {
  return {{"pick_xy", {a.pick_xy.x, a.pick_xy.y}},
          {"place_xy", {a.place_xy.x, a.place_xy.y}},
          {"mid_height", a.mid_height},
          {"source_step", a.source_step}};
}

ResolvedAction resolved_from_json(const nlohmann::json& j) {
  try {
    ResolvedAction a;
    a.pick_xy = {j.at("pick_xy").at(0).get<int>(), j.at("pick_xy").at(1).get<int>()};
    a.place_xy = {j.at("place_xy").at(0).get<int>(), j.at("place_xy").at(1).get<int>()};
    a.mid_height = j.value("mid_height", 0.0);
    a.source_step = j.value("source_step", 0);
    return a;
  } catch (const nlohmann::json::exception& e) {
    throw Error(ErrorCode::MalformedDocument, std::string("resolved action: ") + e.what());
  }
}

nlohmann::json to_json(const Trajectory& t) {
  nlohmann::json out = nlohmann::json::array();
  for (const auto& w : t.waypoints) out.push_back({w.x, w.y, w.z});
  return out;
}

}  // namespace plan
}  // namespace foldplan
