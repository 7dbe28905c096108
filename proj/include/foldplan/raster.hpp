// Copyright 2026 The foldplan Authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <cstdint>
#include <span>
#include <vector>

#include "foldplan/geometry.hpp"

namespace foldplan {

/// 8-bit RGB raster, row-major, three bytes per pixel.
struct RgbImage {
  int width = 0;
  int height = 0;
  std::vector<std::uint8_t> pixels;

  RgbImage() = default;
  RgbImage(int w, int h);

  bool valid() const {
    return width > 0 && height > 0 &&
           pixels.size() == std::size_t(width) * std::size_t(height) * 3;
  }
  std::uint8_t* at(int x, int y) { return &pixels[(std::size_t(y) * width + x) * 3]; }
  const std::uint8_t* at(int x, int y) const {
    return &pixels[(std::size_t(y) * width + x) * 3];
  }

  friend bool operator==(const RgbImage&, const RgbImage&) = default;
};

/// Row-major boolean occupancy raster; true marks garment.
class BinaryMask {
 public:
  BinaryMask() = default;
  BinaryMask(int width, int height);

  int width() const { return width_; }
  int height() const { return height_; }
  bool empty_canvas() const { return width_ == 0 || height_ == 0; }

  bool contains(int x, int y) const {
    return x >= 0 && y >= 0 && x < width_ && y < height_;
  }
  bool contains(Pixel p) const { return contains(p.x, p.y); }

  bool get(int x, int y) const { return bits_[std::size_t(y) * width_ + x] != 0; }
  bool get(Pixel p) const { return get(p.x, p.y); }
  /// Bounds-checked read; anything outside the canvas is background.
  bool test(int x, int y) const { return contains(x, y) && get(x, y); }
  bool test(Pixel p) const { return test(p.x, p.y); }

  void set(int x, int y, bool v = true) {
    bits_[std::size_t(y) * width_ + x] = v ? 1 : 0;
  }
  void set(Pixel p, bool v = true) { set(p.x, p.y, v); }

  std::size_t count() const;
  bool any() const;

  std::span<const std::uint8_t> bits() const { return bits_; }
  std::span<std::uint8_t> bits() { return bits_; }

  friend bool operator==(const BinaryMask&, const BinaryMask&) = default;

 private:
  int width_ = 0;
  int height_ = 0;
  std::vector<std::uint8_t> bits_;
};

enum class ThresholdMode { Luminance, ChromaDistance };

struct MaskConfig {
  ThresholdMode threshold_mode = ThresholdMode::Luminance;
  int threshold = 128;
  bool keep_largest_component = true;
  int fill_holes_below = 0;

  void validate() const;
};

enum class Connectivity { Four = 4, Eight = 8 };

struct ComponentLabels {
  std::vector<int> labels;  // -1 for background, else component index
  std::vector<std::size_t> areas;
  std::vector<Pixel> first_pixel;  // topmost-leftmost pixel of each component
  int count = 0;
};

namespace raster {

/// Thresholds the image into a garment mask. Luminance mode keeps pixels whose
/// Rec.601 luma exceeds the threshold; chroma-distance mode keeps pixels whose
/// RGB distance from the median border colour exceeds it.
BinaryMask mask_background(const RgbImage& image, const MaskConfig& config);

ComponentLabels label_components(const BinaryMask& mask, Connectivity connectivity);
int count_components(const BinaryMask& mask, Connectivity connectivity);

/// Background regions (4-connected) that do not touch the border.
int count_holes(const BinaryMask& mask);

/// Keeps the 8-connected component with the largest area. Ties go to the
/// component whose topmost-leftmost pixel comes first in row-major order.
BinaryMask keep_largest_component(const BinaryMask& mask);

/// Fills enclosed background regions whose area is strictly below `max_area`.
BinaryMask fill_holes(const BinaryMask& mask, int max_area);

/// Throws EmptyMask when no bit is set.
BBox bounding_box(const BinaryMask& mask);

BinaryMask mirror_horizontal(const BinaryMask& mask);

/// Shifts the content by (dx, dy) on the same canvas; pixels leaving it are dropped.
BinaryMask translate(const BinaryMask& mask, int dx, int dy);

/// Nearest-neighbour resampling by an integer factor.
BinaryMask upscale(const BinaryMask& mask, int factor);

RgbImage to_rgb(const BinaryMask& mask);

}  // namespace raster
}  // namespace foldplan
