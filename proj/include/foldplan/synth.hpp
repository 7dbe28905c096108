// Copyright 2026 The foldplan Authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <array>
#include <cstdint>
#include <string>
#include <string_view>

#include "foldplan/garment.hpp"
#include "foldplan/pipeline.hpp"
#include "foldplan/plan.hpp"

namespace foldplan {

enum class GarmentClass { ShortSleeveTop, LongSleeveTop, Trousers };

inline constexpr std::array<GarmentClass, 3> kGarmentClasses = {
    GarmentClass::ShortSleeveTop, GarmentClass::LongSleeveTop, GarmentClass::Trousers};

/// Stick-figure garment silhouettes: unions of round-capped strokes laid out
/// on a 100x100 grid and drawn into a 200x200 base raster, the scale-0.5
/// image. When 2s is a whole number, scale s is that raster enlarged by
/// nearest neighbour to 400*s pixels, so scales 0.5, 1 and 2 agree exactly.
/// Other scales are drawn directly at 400*s pixels. Jitter is applied in
/// output pixels, so jittered scales are not enlargements of each other.
struct SynthParams {
  GarmentClass garment = GarmentClass::ShortSleeveTop;
  double scale = 1.0;
  double jitter = 0.0;     // per-vertex noise amplitude, output pixels
  double variation = 0.0;  // relative noise on limb lengths and widths
  std::uint64_t seed = 0;
  std::string item_name;   // defaults to "synthetic"

  void validate() const;
};

namespace synth {

std::string_view class_label(GarmentClass c);
/// Accepts labels ("short sleeve top") and their dashed or underscored forms.
GarmentClass parse_class(std::string_view text);

/// Deterministic in the parameters. The capture's landmarks are the skeleton
/// nodes of the same garment without jitter or variation, each shifted by the
/// displacement of its stroke vertex, in canonical node order.
GarmentItem synth_garment(const SynthParams& params);

/// `count` layouts of the same garment; capture i uses seed + i.
GarmentItem synth_item(const SynthParams& params, int count);

/// Light garment on a dark table.
RgbImage render(const BinaryMask& mask, std::array<std::uint8_t, 3> colour);

/// Reference actions of a capture for each step of `plan`, from its landmarks.
std::vector<ResolvedAction> truth_from_landmarks(const FoldingPlan& plan,
                                                 const std::vector<Pixel>& landmarks,
                                                 const BBox& bbox);

/// Demonstration plan for a class, defined on the unjittered scale-1 garment.
FoldingPlan default_plan(GarmentClass c, const ExtractConfig& config = {});

struct DemoItem {
  GarmentItem item;
  std::array<std::uint8_t, 3> colour;
};

/// A small object set: three short sleeve tops (purple, green, white), two
/// long sleeve tops (large, small) and two trousers (pois, white), each laid
/// out `captures` times.
std::vector<DemoItem> demo_items(double jitter, std::uint64_t seed, int captures);

}  // namespace synth
}  // namespace foldplan
