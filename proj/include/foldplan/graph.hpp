// Copyright 2026 The foldplan Authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <string>
#include <vector>

#include <json.hpp>

#include "foldplan/error.hpp"
#include "foldplan/geometry.hpp"
#include "foldplan/skeleton.hpp"

namespace foldplan {

enum class NodeKind { Endpoint, Junction };

struct SkeletonNode {
  int id = 0;
  int x = 0;
  int y = 0;
  NodeKind kind = NodeKind::Endpoint;
  bool moved = false;

  Pixel pos() const { return {x, y}; }
  friend bool operator==(const SkeletonNode&, const SkeletonNode&) = default;
};

struct SkeletonEdge {
  int a = 0;
  int b = 0;
  std::vector<Pixel> polyline;
  double length = 0;

  bool self_loop() const { return a == b; }
  friend bool operator==(const SkeletonEdge&, const SkeletonEdge&) = default;
};

/// Node/edge view of a skeleton. After canonicalize(), node ids follow the
/// canonical order and are the handles folding actions refer to.
struct SkeletonGraph {
  std::vector<SkeletonNode> nodes;
  std::vector<SkeletonEdge> edges;
  BBox bbox;      // bounding box of the garment mask
  int width = 0;  // source raster dimensions
  int height = 0;

  /// Polyline ends at the node; a self-loop counts twice.
  int degree(int id) const;
  std::vector<int> degrees() const;
  const SkeletonNode& node(int id) const;

  friend bool operator==(const SkeletonGraph&, const SkeletonGraph&) = default;
};

namespace graph {

/// Height of a canonical-order row as a fraction of the bbox height. Nodes
/// whose normalized heights chain together with gaps no larger than this are
/// ordered left to right.
inline constexpr double kDefaultRowBand = 0.06;

/// Traces a skeleton into nodes and edges.
///
/// Pixels with one set 8-neighbour (or none) become endpoint nodes; 8-connected
/// clusters of pixels with three or more neighbours collapse into one junction
/// node at the cluster centroid, snapped to the nearest cluster pixel. Chains
/// of two-neighbour pixels between node pixels become edges. A component made
/// only of two-neighbour pixels is a ring: it gets one anchor node at its
/// topmost-leftmost pixel and a self-loop edge. bbox is the skeleton's own
/// bounding box; callers that know the garment mask overwrite it.
SkeletonGraph build_graph(const SkeletonMask& skel);

/// Repeatedly removes the shortest edge that joins an endpoint to a node of
/// degree three or more while it is shorter than `min_len`. A node left with
/// degree two is dissolved by joining its two edges; a node left holding only
/// a self-loop becomes a ring anchor again.
SkeletonGraph prune_spurs(const SkeletonGraph& g, double min_len);

/// Reindexes nodes by normalized (bbox-relative) position: rows top to bottom,
/// left to right inside a row, then higher degree first. Edges are rewritten
/// with a <= b and sorted.
SkeletonGraph canonicalize(const SkeletonGraph& g, double row_band = kDefaultRowBand);

AdjacencyMatrix adjacency_matrix(const SkeletonGraph& g);

/// Relocates a node anywhere on the garment. Edges are left untouched.
SkeletonGraph move_node(const SkeletonGraph& g, int id, int x, int y, const BinaryMask& mask);

double polyline_length(const std::vector<Pixel>& polyline);

/// Normalized position of a node within the graph bbox, in [0, 1).
std::pair<double, double> normalized_position(const SkeletonGraph& g, Pixel p);

nlohmann::json to_json(const SkeletonGraph& g);
/// Throws MalformedDocument on schema violations.
SkeletonGraph graph_from_json(const nlohmann::json& j);

}  // namespace graph
}  // namespace foldplan
