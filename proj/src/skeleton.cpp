// Copyright 2026 The foldplan Authors
// SPDX-License-Identifier: Apache-2.0

#include "foldplan/skeleton.hpp"

#include <array>
#include <vector>

#include "foldplan/error.hpp"

namespace foldplan::skeleton {
namespace {

// Neighbour ring starting east and turning counter-clockwise:
// E, NE, N, NW, W, SW, S, SE. Odd positions are diagonals.
constexpr std::array<int, 8> kRingDx{1, 1, 0, -1, -1, -1, 0, 1};
constexpr std::array<int, 8> kRingDy{0, -1, -1, -1, 0, 1, 1, 1};

// Padded byte raster so neighbourhood reads never need bounds checks.
class Canvas {
 public:
  explicit Canvas(const BinaryMask& mask)
      : w_(mask.width() + 2), h_(mask.height() + 2), data_(std::size_t(w_) * h_, 0) {
    for (int y = 0; y < mask.height(); ++y)
      for (int x = 0; x < mask.width(); ++x)
        if (mask.get(x, y)) data_[index(x + 1, y + 1)] = 1;
  }

  std::size_t index(int x, int y) const { return std::size_t(y) * w_ + x; }
  std::uint8_t& operator()(int x, int y) { return data_[index(x, y)]; }
  std::uint8_t operator()(int x, int y) const { return data_[index(x, y)]; }
  int width() const { return w_; }
  int height() const { return h_; }

  std::array<int, 8> ring(int x, int y) const {
    std::array<int, 8> r{};
    for (int k = 0; k < 8; ++k) r[std::size_t(k)] = (*this)(x + kRingDx[std::size_t(k)], y + kRingDy[std::size_t(k)]);
    return r;
  }

  BinaryMask unpad() const {
    BinaryMask out(w_ - 2, h_ - 2);
    for (int y = 1; y + 1 < h_; ++y)
      for (int x = 1; x + 1 < w_; ++x)
        if ((*this)(x, y)) out.set(x - 1, y - 1);
    return out;
  }

 private:
  int w_;
  int h_;
  std::vector<std::uint8_t> data_;
};

int yokoi8(const std::array<int, 8>& r) {
  // Sum over the 4-neighbours k of  x̄k - x̄k x̄k+1 x̄k+2  with x̄ = 1 - x.
  int n = 0;
  for (int k = 0; k < 8; k += 2) {
    int a = 1 - r[std::size_t(k)];
    int b = 1 - r[std::size_t((k + 1) % 8)];
    int c = 1 - r[std::size_t((k + 2) % 8)];
    n += a - a * b * c;
  }
  return n;
}

int ring_count(const std::array<int, 8>& r) {
  int n = 0;
  for (int v : r) n += v;
  return n;
}

struct Direction {
  int dx;
  int dy;
};
constexpr std::array<Direction, 4> kPassOrder{{{0, -1}, {0, 1}, {1, 0}, {-1, 0}}};

bool deletable(const Canvas& c, int x, int y) {
  auto r = c.ring(x, y);
  return ring_count(r) >= 2 && yokoi8(r) == 1;
}

bool full_block(const Canvas& c, int x, int y) {
  return c(x, y) && c(x + 1, y) && c(x, y + 1) && c(x + 1, y + 1);
}

bool in_any_block(const Canvas& c, int x, int y) {
  return full_block(c, x - 1, y - 1) || full_block(c, x, y - 1) || full_block(c, x - 1, y) ||
         full_block(c, x, y);
}

bool peel(Canvas& canvas) {
  std::vector<std::pair<int, int>> candidates;
  bool any = false;
  bool changed = true;
  while (changed) {
    changed = false;
    for (const Direction& dir : kPassOrder) {
      candidates.clear();
      for (int y = 1; y + 1 < canvas.height(); ++y)
        for (int x = 1; x + 1 < canvas.width(); ++x)
          if (canvas(x, y) && !canvas(x + dir.dx, y + dir.dy)) candidates.emplace_back(x, y);

      for (auto [x, y] : candidates) {
        if (!deletable(canvas, x, y)) continue;
        canvas(x, y) = 0;
        changed = any = true;
      }
    }
  }
  return any;
}

// Peeling only visits border pixels and only removes simple ones, so a fully
// set 2x2 block can survive: either its pixels have no background 4-neighbour,
// or two diagonal strokes cross there and none of the four is simple. The
// first case deletes a simple block pixel directly. The second swaps a block
// pixel for an adjacent garment pixel: adding a simple pixel and then deleting
// a simple one never changes the topology. Returns false when nothing helps.
bool break_block(Canvas& canvas, const Canvas& source, int bx, int by) {
  for (int k = 0; k < 4; ++k) {
    const int x = bx + (k & 1), y = by + (k >> 1);
    if (deletable(canvas, x, y)) {
      canvas(x, y) = 0;
      return true;
    }
  }
  for (int k = 0; k < 4; ++k) {
    const int x = bx + (k & 1), y = by + (k >> 1);
    for (int j = 0; j < 8; ++j) {
      const int qx = x + kRingDx[std::size_t(j)], qy = y + kRingDy[std::size_t(j)];
      if (canvas(qx, qy) || !source(qx, qy)) continue;
      if (qx < 1 || qy < 1 || qx + 1 >= canvas.width() || qy + 1 >= canvas.height()) continue;
      if (yokoi8(canvas.ring(qx, qy)) != 1) continue;
      canvas(qx, qy) = 1;
      if (!in_any_block(canvas, qx, qy) && deletable(canvas, x, y)) {
        canvas(x, y) = 0;
        return true;
      }
      canvas(qx, qy) = 0;
    }
  }
  return false;
}

}  // namespace

int connectivity_number(const BinaryMask& mask, int x, int y) {
  std::array<int, 8> r{};
  for (int k = 0; k < 8; ++k)
    r[std::size_t(k)] = mask.test(x + kRingDx[std::size_t(k)], y + kRingDy[std::size_t(k)]) ? 1 : 0;
  return yokoi8(r);
}

int neighbor_count(const BinaryMask& mask, int x, int y) {
  int n = 0;
  for (int k = 0; k < 8; ++k)
    n += mask.test(x + kRingDx[std::size_t(k)], y + kRingDy[std::size_t(k)]) ? 1 : 0;
  return n;
}

SkeletonMask thin(const BinaryMask& mask) {
  if (mask.empty_canvas() || !mask.any())
    throw Error(ErrorCode::EmptyMask, "cannot thin an empty mask");

  const Canvas source(mask);
  Canvas canvas(mask);
  peel(canvas);
  for (bool broke = true; broke;) {
    broke = false;
    for (int y = 1; y + 2 < canvas.height(); ++y)
      for (int x = 1; x + 2 < canvas.width(); ++x)
        if (full_block(canvas, x, y) && break_block(canvas, source, x, y)) broke = true;
    if (broke) peel(canvas);
  }
  return canvas.unpad();
}

}  // namespace foldplan::skeleton
