// Copyright 2026 The foldplan Authors
// SPDX-License-Identifier: Apache-2.0

#include "foldplan/raster.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <vector>

#include "foldplan/error.hpp"

namespace foldplan {

RgbImage::RgbImage(int w, int h) : width(w), height(h) {
  if (w <= 0 || h <= 0) throw Error(ErrorCode::InvalidArgument, "image dimensions must be positive");
  pixels.assign(std::size_t(w) * std::size_t(h) * 3, 0);
}

BinaryMask::BinaryMask(int width, int height) : width_(width), height_(height) {
  if (width <= 0 || height <= 0)
    throw Error(ErrorCode::InvalidArgument, "mask dimensions must be positive");
  bits_.assign(std::size_t(width) * std::size_t(height), 0);
}

std::size_t BinaryMask::count() const {
  return std::size_t(std::count(bits_.begin(), bits_.end(), std::uint8_t{1}));
}

bool BinaryMask::any() const {
  return std::find(bits_.begin(), bits_.end(), std::uint8_t{1}) != bits_.end();
}

void MaskConfig::validate() const {
  if (threshold < 0 || threshold > 255)
    throw Error(ErrorCode::InvalidArgument, "threshold must lie in [0, 255]");
  if (fill_holes_below < 0)
    throw Error(ErrorCode::InvalidArgument, "fill_holes_below must be non-negative");
}

namespace raster {
namespace {

constexpr std::array<Pixel, 8> kNeighbors8{{{-1, -1}, {0, -1}, {1, -1}, {-1, 0},
                                            {1, 0}, {-1, 1}, {0, 1}, {1, 1}}};
constexpr std::array<Pixel, 4> kNeighbors4{{{0, -1}, {-1, 0}, {1, 0}, {0, 1}}};

template <typename Pred>
ComponentLabels label_impl(int w, int h, Pred&& member, Connectivity connectivity) {
  ComponentLabels out;
  out.labels.assign(std::size_t(w) * h, -1);
  std::vector<Pixel> stack;
  const bool eight = connectivity == Connectivity::Eight;
  for (int y = 0; y < h; ++y) {
    for (int x = 0; x < w; ++x) {
      std::size_t idx = std::size_t(y) * w + x;
      if (!member(x, y) || out.labels[idx] >= 0) continue;
      int label = out.count++;
      std::size_t area = 0;
      out.labels[idx] = label;
      stack.push_back({x, y});
      while (!stack.empty()) {
        Pixel p = stack.back();
        stack.pop_back();
        ++area;
        auto visit = [&](Pixel d) {
          int nx = p.x + d.x, ny = p.y + d.y;
          if (nx < 0 || ny < 0 || nx >= w || ny >= h) return;
          std::size_t n = std::size_t(ny) * w + nx;
          if (out.labels[n] >= 0 || !member(nx, ny)) return;
          out.labels[n] = label;
          stack.push_back({nx, ny});
        };
        if (eight) {
          for (Pixel d : kNeighbors8) visit(d);
        } else {
          for (Pixel d : kNeighbors4) visit(d);
        }
      }
      out.areas.push_back(area);
      out.first_pixel.push_back({x, y});
    }
  }
  return out;
}

std::uint8_t median(std::vector<std::uint8_t>& v) {
  auto mid = v.begin() + std::ptrdiff_t(v.size() / 2);
  std::nth_element(v.begin(), mid, v.end());
  return *mid;
}

}  // namespace

BinaryMask mask_background(const RgbImage& image, const MaskConfig& config) {
  if (!image.valid()) throw Error(ErrorCode::MalformedImage, "image buffer does not match its dimensions");
  config.validate();
  BinaryMask mask(image.width, image.height);

  if (config.threshold_mode == ThresholdMode::Luminance) {
    for (int y = 0; y < image.height; ++y) {
      for (int x = 0; x < image.width; ++x) {
        const std::uint8_t* px = image.at(x, y);
        int luma = (299 * px[0] + 587 * px[1] + 114 * px[2]) / 1000;
        if (luma > config.threshold) mask.set(x, y);
      }
    }
  } else {
    std::array<std::vector<std::uint8_t>, 3> border;
    auto sample = [&](int x, int y) {
      const std::uint8_t* px = image.at(x, y);
      for (int c = 0; c < 3; ++c) border[c].push_back(px[c]);
    };
    for (int x = 0; x < image.width; ++x) {
      sample(x, 0);
      if (image.height > 1) sample(x, image.height - 1);
    }
    for (int y = 1; y + 1 < image.height; ++y) {
      sample(0, y);
      if (image.width > 1) sample(image.width - 1, y);
    }
    const int br = median(border[0]), bg = median(border[1]), bb = median(border[2]);
    const long limit = long(config.threshold) * config.threshold;
    for (int y = 0; y < image.height; ++y) {
      for (int x = 0; x < image.width; ++x) {
        const std::uint8_t* px = image.at(x, y);
        long dr = px[0] - br, dg = px[1] - bg, db = px[2] - bb;
        if (dr * dr + dg * dg + db * db > limit) mask.set(x, y);
      }
    }
  }

  if (!mask.any()) throw Error(ErrorCode::EmptyMask, "no foreground pixel survived thresholding");
  if (config.keep_largest_component) mask = keep_largest_component(mask);
  if (config.fill_holes_below > 0) mask = fill_holes(mask, config.fill_holes_below);
  return mask;
}

ComponentLabels label_components(const BinaryMask& mask, Connectivity connectivity) {
  return label_impl(
      mask.width(), mask.height(), [&](int x, int y) { return mask.get(x, y); }, connectivity);
}

int count_components(const BinaryMask& mask, Connectivity connectivity) {
  if (mask.empty_canvas()) return 0;
  return label_components(mask, connectivity).count;
}

namespace {

// Background components under 4-connectivity, flagged by whether they reach the border.
struct BackgroundRegions {
  ComponentLabels labels;
  std::vector<bool> touches_border;
};

BackgroundRegions background_regions(const BinaryMask& mask) {
  BackgroundRegions out;
  out.labels = label_impl(
      mask.width(), mask.height(), [&](int x, int y) { return !mask.get(x, y); },
      Connectivity::Four);
  out.touches_border.assign(std::size_t(out.labels.count), false);
  const int w = mask.width(), h = mask.height();
  auto flag = [&](int x, int y) {
    int l = out.labels.labels[std::size_t(y) * w + x];
    if (l >= 0) out.touches_border[std::size_t(l)] = true;
  };
  for (int x = 0; x < w; ++x) {
    flag(x, 0);
    flag(x, h - 1);
  }
  for (int y = 0; y < h; ++y) {
    flag(0, y);
    flag(w - 1, y);
  }
  return out;
}

}  // namespace

int count_holes(const BinaryMask& mask) {
  if (mask.empty_canvas()) return 0;
  auto regions = background_regions(mask);
  return int(std::count(regions.touches_border.begin(), regions.touches_border.end(), false));
}

BinaryMask keep_largest_component(const BinaryMask& mask) {
  auto comps = label_components(mask, Connectivity::Eight);
  if (comps.count <= 1) return mask;
  int best = 0;
  for (int i = 1; i < comps.count; ++i) {
    // first_pixel is discovered in row-major order, so a strict comparison
    // keeps the earliest component on ties.
    if (comps.areas[std::size_t(i)] > comps.areas[std::size_t(best)]) best = i;
  }
  BinaryMask out(mask.width(), mask.height());
  for (std::size_t i = 0; i < comps.labels.size(); ++i)
    if (comps.labels[i] == best) out.bits()[i] = 1;
  return out;
}

BinaryMask fill_holes(const BinaryMask& mask, int max_area) {
  if (max_area <= 0 || mask.empty_canvas()) return mask;
  auto regions = background_regions(mask);
  BinaryMask out = mask;
  for (std::size_t i = 0; i < regions.labels.labels.size(); ++i) {
    int l = regions.labels.labels[i];
    if (l < 0 || regions.touches_border[std::size_t(l)]) continue;
    if (regions.labels.areas[std::size_t(l)] < std::size_t(max_area)) out.bits()[i] = 1;
  }
  return out;
}

BBox bounding_box(const BinaryMask& mask) {
  BBox box{mask.width(), mask.height(), -1, -1};
  for (int y = 0; y < mask.height(); ++y) {
    for (int x = 0; x < mask.width(); ++x) {
      if (!mask.get(x, y)) continue;
      box.x0 = std::min(box.x0, x);
      box.y0 = std::min(box.y0, y);
      box.x1 = std::max(box.x1, x);
      box.y1 = std::max(box.y1, y);
    }
  }
  if (box.x1 < 0) throw Error(ErrorCode::EmptyMask, "mask has no set bits");
  return box;
}

BinaryMask mirror_horizontal(const BinaryMask& mask) {
  BinaryMask out(mask.width(), mask.height());
  for (int y = 0; y < mask.height(); ++y)
    for (int x = 0; x < mask.width(); ++x)
      if (mask.get(x, y)) out.set(mask.width() - 1 - x, y);
  return out;
}

BinaryMask translate(const BinaryMask& mask, int dx, int dy) {
  BinaryMask out(mask.width(), mask.height());
  for (int y = 0; y < mask.height(); ++y)
    for (int x = 0; x < mask.width(); ++x)
      if (mask.get(x, y) && out.contains(x + dx, y + dy)) out.set(x + dx, y + dy);
  return out;
}

BinaryMask upscale(const BinaryMask& mask, int factor) {
  if (factor < 1) throw Error(ErrorCode::InvalidArgument, "upscale factor must be >= 1");
  BinaryMask out(mask.width() * factor, mask.height() * factor);
  for (int y = 0; y < out.height(); ++y)
    for (int x = 0; x < out.width(); ++x)
      if (mask.get(x / factor, y / factor)) out.set(x, y);
  return out;
}

RgbImage to_rgb(const BinaryMask& mask) {
  RgbImage img(mask.width(), mask.height());
  for (int y = 0; y < mask.height(); ++y)
    for (int x = 0; x < mask.width(); ++x)
      if (mask.get(x, y)) std::fill_n(img.at(x, y), 3, std::uint8_t{255});
  return img;
}

}  // namespace raster
}  // namespace foldplan
