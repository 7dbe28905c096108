// Copyright 2026 The foldplan Authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include "foldplan/graph.hpp"
#include "foldplan/raster.hpp"

namespace foldplan {

/// Settings for turning a garment silhouette into its skeleton graph.
///
/// Extraction happens on a working raster: the mask's bounding box is
/// resampled (nearest neighbour) so that its longer side spans `working_size`
/// pixels. Thinning, tracing and spur pruning run there, so `prune_length` is
/// in working pixels and behaves the same for every garment size. Node
/// coordinates are then mapped back to the source pixel each working pixel
/// sampled, which keeps them on the garment.
struct ExtractConfig {
  MaskConfig mask;
  int working_size = 160;
  double prune_length = 8.0;
  double row_band = graph::kDefaultRowBand;

  void validate() const;
};

struct Representation {
  BinaryMask mask;
  SkeletonMask skeleton;  // working skeleton mapped back onto the source raster
  SkeletonGraph graph;    // canonical
};

Representation extract(const BinaryMask& mask, const ExtractConfig& config = {});
Representation extract(const RgbImage& image, const ExtractConfig& config = {});

/// Bbox-relative position of a node, snapped to the centre of the working
/// pixel it came from. Unlike plain normalization this is exactly invariant
/// under integer upscaling of the garment, as long as its bbox is at least
/// `working_size` pixels on the longer side.
std::pair<double, double> working_position(const BBox& bbox, Pixel p, int working_size = 160);

}  // namespace foldplan
