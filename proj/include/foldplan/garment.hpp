// Copyright 2026 The foldplan Authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <optional>
#include <string>
#include <vector>

#include "foldplan/plan.hpp"
#include "foldplan/raster.hpp"

namespace foldplan {

/// One laying-out of a garment on the table.
struct Capture {
  BinaryMask mask;
  /// Reference node positions in canonical order, when known.
  std::optional<std::vector<Pixel>> landmarks;
  /// Reference actions per plan step, when known. Takes precedence over
  /// landmarks.
  std::optional<std::vector<ResolvedAction>> truth;
};

/// A physical garment. Evaluation repetition r uses captures[r % size].
struct GarmentItem {
  std::string class_label;
  std::string item_name;
  std::vector<Capture> captures;
};

}  // namespace foldplan
