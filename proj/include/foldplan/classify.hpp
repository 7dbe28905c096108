// Copyright 2026 The foldplan Authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <array>
#include <cstdint>
#include <map>
#include <string>
#include <string_view>
#include <vector>

#include <json.hpp>

#include "foldplan/graph.hpp"

namespace foldplan {

/// Fixed-width structural summary of a canonical skeleton graph.
struct GraphDescriptor {
  static constexpr int kPositionSlots = 12;
  static constexpr int kDimensions = 3 + 6 + 2 * kPositionSlots + 3;

  int node_count = 0;
  int endpoint_count = 0;
  int junction_count = 0;
  std::array<int, 6> degree_histogram{};  // degrees 1..6, clamped
  /// (x, y) per node in canonical order, bbox-relative, zero padded.
  std::array<double, 2 * kPositionSlots> positions{};
  std::array<double, 3> edge_quantiles{};  // min, median, max over bbox diagonal

  std::array<double, kDimensions> vector() const;
  friend bool operator==(const GraphDescriptor&, const GraphDescriptor&) = default;
};

struct LibraryEntry {
  GraphDescriptor descriptor;
  std::string label;
};

using DescriptorLibrary = std::vector<LibraryEntry>;

struct KnnResult {
  std::string label;
  std::map<std::string, int> votes;
};

namespace classify {

GraphDescriptor descriptor(const SkeletonGraph& g, int working_size = 160);

double distance(const GraphDescriptor& a, const GraphDescriptor& b);

/// Majority vote among the k nearest entries. Vote ties go to the larger sum
/// of inverse distances, then to the lexicographically smaller label.
KnnResult knn_classify(const GraphDescriptor& d, const DescriptorLibrary& lib, int k);

/// Fraction of entries whose label the rest of the library predicts.
double leave_one_out_accuracy(const DescriptorLibrary& lib, int k);

/// Leave-one-out accuracy averaged over `rounds` random label permutations.
double shuffled_label_accuracy(const DescriptorLibrary& lib, int k, std::uint64_t seed, int rounds);

nlohmann::json to_json(const GraphDescriptor& d);
GraphDescriptor descriptor_from_json(const nlohmann::json& j);

std::string save_library(const DescriptorLibrary& lib);
/// One {"label": ..., "descriptor": {...}} object per line; blank lines skipped.
DescriptorLibrary load_library(std::string_view jsonl);

}  // namespace classify
}  // namespace foldplan
