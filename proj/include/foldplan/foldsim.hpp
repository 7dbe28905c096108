// Copyright 2026 The foldplan Authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <vector>

#include <json.hpp>

#include "foldplan/pipeline.hpp"
#include "foldplan/plan.hpp"
#include "foldplan/raster.hpp"

namespace foldplan {

/// Perpendicular bisector of pick -> place. Pixels are unit squares and
/// pick/place are taken as the continuous points with those coordinates, so a
/// pixel is on the pick side when its centre is.
struct FoldLine {
  Pixel pick;
  Pixel place;

  /// Twice the signed offset of the pixel centre along place - pick, times
  /// |place - pick|. Negative on the pick side, zero on the line.
  long long side(Pixel c) const;
  bool moves(Pixel c) const { return side(c) < 0; }
  /// Reflection of the pixel centre across the line, rounded half-up.
  Pixel reflect(Pixel c) const;
  /// reflect() on the pick side, identity elsewhere.
  Pixel map(Pixel c) const { return moves(c) ? reflect(c) : c; }

  /// Midpoint of pick and place and the line direction.
  std::pair<double, double> point() const;
  std::pair<double, double> direction() const;
};

struct FoldResult {
  BinaryMask mask;
  FoldLine fold_line;
  std::size_t moved_area = 0;
  std::size_t overlap_area = 0;  // reflected pixels landing on unmoved garment
  std::size_t clipped = 0;       // reflected pixels that left the canvas
};

namespace foldsim {

/// Folds the pick side of the mask onto the other side. Throws DegenerateFold
/// when pick equals place and OffGarment when either is background.
FoldResult apply_fold(const BinaryMask& mask, const ResolvedAction& action);

/// Carries a point of the unfolded garment through a sequence of folds.
Pixel map_point(const std::vector<FoldLine>& folds, Pixel p);

/// Executes every plan step in order. Steps resolve against `graph` (the
/// unfolded garment's skeleton); pick and place are then carried through the
/// folds already applied.
std::vector<FoldResult> simulate_plan(const BinaryMask& mask, const FoldingPlan& plan,
                                      const SkeletonGraph& graph);
std::vector<FoldResult> simulate_plan(const BinaryMask& mask, const FoldingPlan& plan,
                                      const ExtractConfig& config = {});

nlohmann::json to_json(const FoldResult& r);

}  // namespace foldsim
}  // namespace foldplan
