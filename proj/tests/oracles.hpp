// Copyright 2026 The foldplan Authors
// SPDX-License-Identifier: Apache-2.0

// Brute-force reference implementations used to check the library. They only
// rely on BinaryMask's accessors, never on library algorithms.

#pragma once

#include <algorithm>
#include <cstdint>
#include <filesystem>
#include <fstream>
#include <map>
#include <random>
#include <set>
#include <string>
#include <vector>

#include "foldplan/geometry.hpp"
#include "foldplan/image_io.hpp"
#include "foldplan/raster.hpp"

namespace oracle {

using foldplan::BinaryMask;
using foldplan::Pixel;

inline void fill_from(const BinaryMask& m, std::vector<int>& seen, int x, int y, bool fg, int conn,
                      int label) {
  std::vector<Pixel> stack{{x, y}};
  while (!stack.empty()) {
    const Pixel p = stack.back();
    stack.pop_back();
    if (!m.contains(p)) continue;
    const std::size_t i = std::size_t(p.y) * m.width() + p.x;
    if (seen[i] != -1 || m.get(p) != fg) continue;
    seen[i] = label;
    for (int dy = -1; dy <= 1; ++dy)
      for (int dx = -1; dx <= 1; ++dx) {
        if (dx == 0 && dy == 0) continue;
        if (conn == 4 && dx != 0 && dy != 0) continue;
        stack.push_back({p.x + dx, p.y + dy});
      }
  }
}

/// Flood fill with an explicit stack.
inline int components(const BinaryMask& m, int conn) {
  std::vector<int> seen(std::size_t(m.width()) * m.height(), -1);
  int n = 0;
  for (int y = 0; y < m.height(); ++y)
    for (int x = 0; x < m.width(); ++x)
      if (m.get(x, y) && seen[std::size_t(y) * m.width() + x] == -1) fill_from(m, seen, x, y, true, conn, n++);
  return n;
}

/// Background 4-components that the one-pixel frame around the canvas cannot reach.
inline int holes(const BinaryMask& m) {
  BinaryMask padded(m.width() + 2, m.height() + 2);
  for (int y = 0; y < m.height(); ++y)
    for (int x = 0; x < m.width(); ++x) padded.set(x + 1, y + 1, m.get(x, y));
  std::vector<int> seen(std::size_t(padded.width()) * padded.height(), -1);
  fill_from(padded, seen, 0, 0, false, 4, 0);
  int n = 0;
  for (int y = 0; y < padded.height(); ++y)
    for (int x = 0; x < padded.width(); ++x)
      if (!padded.get(x, y) && seen[std::size_t(y) * padded.width() + x] == -1)
        fill_from(padded, seen, x, y, false, 4, ++n);
  return n;
}

inline int neighbours(const BinaryMask& m, int x, int y) {
  int n = 0;
  for (int dy = -1; dy <= 1; ++dy)
    for (int dx = -1; dx <= 1; ++dx)
      if ((dx || dy) && m.test(x + dx, y + dy)) ++n;
  return n;
}

struct Census {
  int endpoints = 0;       // pixels with at most one neighbour
  int junction_clusters = 0;  // 8-connected groups of pixels with three or more
  int rings = 0;              // components where every pixel has exactly two
  int pixels = 0;
};

inline Census census(const BinaryMask& skel) {
  Census c;
  BinaryMask junction(skel.width(), skel.height());
  for (int y = 0; y < skel.height(); ++y)
    for (int x = 0; x < skel.width(); ++x) {
      if (!skel.get(x, y)) continue;
      ++c.pixels;
      const int n = neighbours(skel, x, y);
      if (n <= 1) ++c.endpoints;
      if (n >= 3) junction.set(x, y);
    }
  c.junction_clusters = components(junction, 8);
  std::vector<int> seen(std::size_t(skel.width()) * skel.height(), -1);
  int label = 0;
  for (int y = 0; y < skel.height(); ++y)
    for (int x = 0; x < skel.width(); ++x)
      if (skel.get(x, y) && seen[std::size_t(y) * skel.width() + x] == -1) fill_from(skel, seen, x, y, true, 8, label++);
  std::vector<bool> plain(std::size_t(label), true);
  for (int y = 0; y < skel.height(); ++y)
    for (int x = 0; x < skel.width(); ++x)
      if (skel.get(x, y) && neighbours(skel, x, y) != 2) plain[std::size_t(seen[std::size_t(y) * skel.width() + x])] = false;
  c.rings = int(std::count(plain.begin(), plain.end(), true));
  return c;
}

inline bool has_full_2x2(const BinaryMask& m) {
  for (int y = 0; y + 1 < m.height(); ++y)
    for (int x = 0; x + 1 < m.width(); ++x)
      if (m.get(x, y) && m.get(x + 1, y) && m.get(x, y + 1) && m.get(x + 1, y + 1)) return true;
  return false;
}

inline bool subset(const BinaryMask& a, const BinaryMask& b) {
  for (int y = 0; y < a.height(); ++y)
    for (int x = 0; x < a.width(); ++x)
      if (a.get(x, y) && !b.get(x, y)) return false;
  return true;
}

inline std::size_t area(const BinaryMask& m) {
  std::size_t n = 0;
  for (int y = 0; y < m.height(); ++y)
    for (int x = 0; x < m.width(); ++x) n += m.get(x, y);
  return n;
}

/// Floor of the pixel centre reflected across the perpendicular bisector of
/// pick -> place. Works on doubled coordinates so everything stays integral:
/// with w = 2c + 1 - p - q and d = q - p, the reflected doubled centre is
/// p + q + w - 2 (w.d) d / |d|^2.
struct Reflection {
  bool moves = false;
  Pixel to;
};

inline long long floor_div(long long a, long long b) {
  long long q = a / b;
  if ((a % b != 0) && ((a < 0) != (b < 0))) --q;
  return q;
}

inline Reflection reflect(Pixel c, Pixel pick, Pixel place) {
  const long long dx = place.x - pick.x, dy = place.y - pick.y;
  const long long D = dx * dx + dy * dy;
  const long long wx = 2LL * c.x + 1 - pick.x - place.x;
  const long long wy = 2LL * c.y + 1 - pick.y - place.y;
  const long long wd = wx * dx + wy * dy;
  Reflection r;
  r.moves = wd < 0;
  // doubled reflected centre times D
  const long long X = D * (pick.x + place.x) + D * wx - 2 * wd * dx;
  const long long Y = D * (pick.y + place.y) + D * wy - 2 * wd * dy;
  r.to = {int(floor_div(X, 2 * D)), int(floor_div(Y, 2 * D))};
  return r;
}

struct FoldOracle {
  BinaryMask mask;
  std::size_t moved = 0;
  std::size_t clipped = 0;
};

inline FoldOracle fold(const BinaryMask& m, Pixel pick, Pixel place) {
  FoldOracle out{BinaryMask(m.width(), m.height())};
  std::vector<Pixel> landed;
  for (int y = 0; y < m.height(); ++y)
    for (int x = 0; x < m.width(); ++x) {
      if (!m.get(x, y)) continue;
      const Reflection r = reflect({x, y}, pick, place);
      if (!r.moves) {
        out.mask.set(x, y);
        continue;
      }
      ++out.moved;
      if (m.contains(r.to))
        landed.push_back(r.to);
      else
        ++out.clipped;
    }
  for (Pixel p : landed) out.mask.set(p);
  return out;
}

/// 4-connected blob grown from the centre by random accretion. Accretion
/// leaves enclosed gaps often enough to exercise hole handling.
inline BinaryMask random_blob(std::mt19937_64& rng, int max_side = 64) {
  std::uniform_int_distribution<int> side(6, max_side);
  const int w = side(rng), h = side(rng);
  BinaryMask m(w, h);
  std::vector<Pixel> grown{{w / 2, h / 2}};
  m.set(w / 2, h / 2);
  const double fill = std::uniform_real_distribution<double>(0.15, 0.7)(rng);
  const std::size_t target = std::max<std::size_t>(1, std::size_t(fill * w * h));
  static constexpr int kStep[4][2] = {{1, 0}, {-1, 0}, {0, 1}, {0, -1}};
  while (grown.size() < target) {
    const Pixel p = grown[std::uniform_int_distribution<std::size_t>(0, grown.size() - 1)(rng)];
    const auto* s = kStep[std::uniform_int_distribution<int>(0, 3)(rng)];
    const Pixel q{p.x + s[0], p.y + s[1]};
    if (!m.contains(q) || m.get(q)) continue;
    m.set(q);
    grown.push_back(q);
  }
  return m;
}

inline BinaryMask from_rows(const std::vector<std::string>& rows) {
  BinaryMask m(int(rows.front().size()), int(rows.size()));
  for (int y = 0; y < m.height(); ++y)
    for (int x = 0; x < m.width(); ++x) m.set(x, y, rows[std::size_t(y)][std::size_t(x)] == '#');
  return m;
}

inline std::string fixtures() { return FOLDPLAN_FIXTURES; }

inline std::vector<std::filesystem::path> fixture_files(const std::string& sub, const std::string& ext) {
  std::vector<std::filesystem::path> out;
  for (const auto& e : std::filesystem::directory_iterator(fixtures() + "/" + sub))
    if (e.path().extension() == ext) out.push_back(e.path());
  std::sort(out.begin(), out.end());
  return out;
}

inline BinaryMask load_pbm(const std::filesystem::path& path) {
  return foldplan::io::decode_pbm(foldplan::io::read_text(path));
}

}  // namespace oracle
