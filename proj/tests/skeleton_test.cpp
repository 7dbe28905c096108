// Copyright 2026 The foldplan Authors
// SPDX-License-Identifier: Apache-2.0

#include <chrono>

#include <gtest/gtest.h>

#include "foldplan/graph.hpp"
#include "foldplan/skeleton.hpp"
#include "oracles.hpp"

using namespace foldplan;

namespace {

void expect_thinning_properties(const BinaryMask& m, const std::string& what) {
  const SkeletonMask s = skeleton::thin(m);
  ASSERT_EQ(s.width(), m.width()) << what;
  EXPECT_TRUE(oracle::subset(s, m)) << what;
  EXPECT_FALSE(oracle::has_full_2x2(s)) << what;
  EXPECT_EQ(oracle::components(s, 8), oracle::components(m, 8)) << what;
  EXPECT_EQ(oracle::holes(s), oracle::holes(m)) << what;
  EXPECT_EQ(skeleton::thin(s), s) << what;
}

}  // namespace

TEST(Thin, EmptyMaskThrows) {
  try {
    skeleton::thin(BinaryMask(5, 5));
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::EmptyMask);
  }
}

TEST(Thin, SinglePixelIsKept) {
  BinaryMask m(5, 5);
  m.set(2, 3);
  EXPECT_EQ(skeleton::thin(m), m);
}

TEST(Thin, HorizontalSegmentIsAlreadyThin) {
  BinaryMask m(40, 5);
  for (int x = 3; x < 37; ++x) m.set(x, 2);
  EXPECT_EQ(skeleton::thin(m), m);
}

TEST(Thin, Rectangle60x20BecomesOneCurve) {
  BinaryMask m(70, 30);
  for (int y = 5; y < 25; ++y)
    for (int x = 5; x < 65; ++x) m.set(x, y);
  const SkeletonMask s = skeleton::thin(m);
  const oracle::Census c = oracle::census(s);
  EXPECT_EQ(c.endpoints, 2);
  EXPECT_EQ(c.junction_clusters, 0);
  EXPECT_EQ(oracle::components(s, 8), 1);
  EXPECT_EQ(oracle::holes(s), 0);
  expect_thinning_properties(m, "rectangle");
}

TEST(Thin, AnnulusBecomesRing) {
  BinaryMask m(41, 41);
  for (int y = 0; y < 41; ++y)
    for (int x = 0; x < 41; ++x) {
      const int d2 = (x - 20) * (x - 20) + (y - 20) * (y - 20);
      if (d2 <= 400 && d2 > 100) m.set(x, y);
    }
  const SkeletonMask s = skeleton::thin(m);
  EXPECT_EQ(oracle::holes(s), 1);
  // Thinning may leave short spurs on the ring; pruning removes them.
  const SkeletonGraph g = graph::prune_spurs(graph::build_graph(s), 8);
  ASSERT_EQ(g.nodes.size(), 1u);
  ASSERT_EQ(g.edges.size(), 1u);
  EXPECT_TRUE(g.edges[0].self_loop());
  expect_thinning_properties(m, "annulus");
}

TEST(Thin, ConnectivityNumber) {
  // isolated, interior, bridge and end configurations around the centre
  EXPECT_EQ(skeleton::connectivity_number(oracle::from_rows({"...", ".#.", "..."}), 1, 1), 0);
  EXPECT_EQ(skeleton::connectivity_number(oracle::from_rows({"###", "###", "###"}), 1, 1), 0);
  EXPECT_EQ(skeleton::connectivity_number(oracle::from_rows({".#.", ".#.", ".#."}), 1, 1), 2);
  EXPECT_EQ(skeleton::connectivity_number(oracle::from_rows({"...", "##.", "..."}), 1, 1), 1);
  EXPECT_EQ(skeleton::connectivity_number(oracle::from_rows({"#.#", ".#.", "#.#"}), 1, 1), 4);
  EXPECT_EQ(skeleton::neighbor_count(oracle::from_rows({"#.#", ".#.", "#.#"}), 1, 1), 4);
}

TEST(Thin, CrossingDiagonalStrokesLeaveNoBlock) {
  // Two thick diagonal strokes cross; peeling alone stops at a 2x2 block.
  BinaryMask m(24, 24);
  for (int i = 0; i < 24; ++i)
    for (int t = -1; t <= 1; ++t) {
      if (m.contains(i + t, i)) m.set(i + t, i);
      if (m.contains(23 - i + t, i)) m.set(23 - i + t, i);
    }
  expect_thinning_properties(m, "cross");
}

TEST(ThinProperties, RandomBlobs) {
  std::mt19937_64 rng(424242);
  const auto start = std::chrono::steady_clock::now();
  int with_holes = 0;
  for (int i = 0; i < 250; ++i) {
    const BinaryMask m = oracle::random_blob(rng);
    with_holes += oracle::holes(m) > 0;
    expect_thinning_properties(m, "blob " + std::to_string(i));
    if (HasFailure()) return;
  }
  EXPECT_GT(with_holes, 20);
  EXPECT_LT(std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count(), 10.0);
}

TEST(ThinProperties, FixtureMasks) {
  for (const auto& f : oracle::fixture_files("masks", ".pbm"))
    expect_thinning_properties(oracle::load_pbm(f), f.filename().string());
}

TEST(ThinProperties, MirrorKeepsTopology) {
  std::mt19937_64 rng(99);
  for (int i = 0; i < 60; ++i) {
    const BinaryMask m = oracle::random_blob(rng);
    const SkeletonGraph a = graph::build_graph(skeleton::thin(m));
    const SkeletonGraph b = graph::build_graph(skeleton::thin(raster::mirror_horizontal(m)));
    const SkeletonMask sa = skeleton::thin(m);
    const SkeletonMask sb = skeleton::thin(raster::mirror_horizontal(m));
    EXPECT_EQ(oracle::components(sa, 8), oracle::components(sb, 8));
    EXPECT_EQ(oracle::holes(sa), oracle::holes(sb));
    // Edge counts follow the cycle rank once node counts agree.
    if (a.nodes.size() == b.nodes.size()) EXPECT_EQ(a.edges.size(), b.edges.size()) << i;
  }
}
