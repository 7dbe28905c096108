// Copyright 2026 The foldplan Authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <array>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include <json.hpp>

#include "foldplan/graph.hpp"

namespace foldplan {

/// One pick-place fold on canonical node ids. mid_height is the lift of the
/// trajectory's middle waypoint, in pixel units.
struct FoldingAction {
  int pick = 0;
  int place = 0;
  double mid_height = 0;

  friend bool operator==(const FoldingAction&, const FoldingAction&) = default;
};

struct FoldingPlan {
  std::string class_label;
  AdjacencyMatrix reference_adjacency;
  SkeletonGraph reference_graph;
  std::vector<FoldingAction> actions;

  std::size_t size() const { return actions.size(); }
  friend bool operator==(const FoldingPlan&, const FoldingPlan&) = default;
};

struct Trajectory {
  std::array<Point3, 3> waypoints;

  friend bool operator==(const Trajectory&, const Trajectory&) = default;
};

/// A plan step bound to pixel positions on a concrete garment.
struct ResolvedAction {
  Pixel pick_xy;
  Pixel place_xy;
  double mid_height = 0;
  int source_step = 0;

  friend bool operator==(const ResolvedAction&, const ResolvedAction&) = default;
};

/// Holds at most one proposed-but-not-executed action.
class PendingSlot {
 public:
  bool has_value() const { return pending_.has_value(); }
  const ResolvedAction& value() const;
  void set(ResolvedAction action) { pending_ = action; }
  /// Discards the pending action; throws NoPendingAction when there is none.
  void reset();
  /// Removes and returns the pending action; throws NoPendingAction when empty.
  ResolvedAction take();

 private:
  std::optional<ResolvedAction> pending_;
};

namespace plan {

inline constexpr int kSchemaVersion = 1;

/// Without an explicit height the lift is half the pick-place distance.
FoldingAction define_action(const SkeletonGraph& g, int pick, int place,
                            std::optional<double> mid_height = std::nullopt);

Trajectory make_trajectory(const FoldingAction& a, const SkeletonGraph& g);
Trajectory make_trajectory(const ResolvedAction& a);

FoldingPlan make_plan(std::string class_label, SkeletonGraph reference_graph);
FoldingPlan add_action(const FoldingPlan& plan, const FoldingAction& a);

/// Where node `id` of the plan's reference sits on `target`. A node the user
/// moved on the target wins; otherwise a node moved on the reference is
/// transferred by its bbox-relative position; otherwise the target's node.
Pixel resolve_node(const SkeletonGraph& reference, const SkeletonGraph& target, int id);

/// Binds plan step `step` to `new_graph`. Throws StepOutOfRange, or
/// RepresentationMismatchError when the adjacency matrices differ.
ResolvedAction propose_action(const FoldingPlan& plan, int step, const SkeletonGraph& new_graph);

nlohmann::json to_json(const FoldingPlan& plan);
FoldingPlan plan_from_json(const nlohmann::json& doc);
std::string save_plan(const FoldingPlan& plan);
/// Throws MalformedDocument or SchemaVersionUnsupported.
FoldingPlan load_plan(std::string_view document);

nlohmann::json to_json(const ResolvedAction& a);
ResolvedAction resolved_from_json(const nlohmann::json& j);
nlohmann::json to_json(const Trajectory& t);
nlohmann::json to_json(const AdjacencyMatrix& m);

}  // namespace plan
}  // namespace foldplan
