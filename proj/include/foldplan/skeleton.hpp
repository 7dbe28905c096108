// Copyright 2026 The foldplan Authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include "foldplan/raster.hpp"

namespace foldplan {

/// One-pixel-wide skeleton. Same raster layout as the mask it came from.
using SkeletonMask = BinaryMask;

namespace skeleton {

/// Topology-preserving thinning by iterative boundary peeling.
///
/// Each pass runs four directional sub-iterations in the fixed order
/// north, south, east, west. A sub-iteration collects the pixels whose
/// neighbour on that side is background, then visits them in row-major order
/// and deletes each one that is still 8-simple (Yokoi 8-connectivity number
/// equal to 1) and is not an end point (at least two set 8-neighbours).
/// Passes repeat until nothing changes. Out-of-canvas pixels count as
/// background. Any fully set 2x2 block left over is then broken, in row-major
/// order: by deleting a simple block pixel, or where two diagonal strokes
/// cross, by moving one block pixel onto an adjacent garment pixel. Peeling
/// resumes after each round.
///
/// Throws EmptyMask when the input has no set bits.
SkeletonMask thin(const BinaryMask& mask);

/// Yokoi 8-connectivity number of (x, y); exposed for tests.
int connectivity_number(const BinaryMask& mask, int x, int y);

/// Number of set 8-neighbours.
int neighbor_count(const BinaryMask& mask, int x, int y);

}  // namespace skeleton
}  // namespace foldplan
