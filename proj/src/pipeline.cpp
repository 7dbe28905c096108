// Copyright 2026 The foldplan Authors
// SPDX-License-Identifier: Apache-2.0

#include "foldplan/pipeline.hpp"

#include <algorithm>
#include <cmath>

namespace foldplan {

void ExtractConfig::validate() const {
  mask.validate();
  if (working_size < 8) throw Error(ErrorCode::InvalidArgument, "working_size must be >= 8");
  if (prune_length < 0) throw Error(ErrorCode::InvalidArgument, "prune_length must be >= 0");
  if (row_band < 0) throw Error(ErrorCode::InvalidArgument, "row_band must be >= 0");
}

namespace {

constexpr int kMargin = 2;

// Maps working-raster coordinates back to source pixels. All arithmetic is
// integer so that integer nearest-neighbour upscalings of a mask produce the
// same working raster.
struct WorkingFrame {
  BBox box;
  int gw = 0;
  int gh = 0;

  int source_x(int u) const { return box.x0 + int((2L * u + 1) * box.width() / (2L * gw)); }
  int source_y(int v) const { return box.y0 + int((2L * v + 1) * box.height() / (2L * gh)); }
  Pixel to_source(Pixel working) const {
    return {source_x(working.x - kMargin), source_y(working.y - kMargin)};
  }
  double step_x() const { return double(box.width()) / gw; }
  double step_y() const { return double(box.height()) / gh; }
};

WorkingFrame make_frame(const BBox& box, int size) {
  const long longest = std::max(box.width(), box.height());
  WorkingFrame f;
  f.box = box;
  f.gw = std::max(1, int((2L * box.width() * size + longest) / (2 * longest)));
  f.gh = std::max(1, int((2L * box.height() * size + longest) / (2 * longest)));
  return f;
}

}  // namespace

Representation extract(const BinaryMask& mask, const ExtractConfig& config) {
  config.validate();
  const BBox box = raster::bounding_box(mask);
  const WorkingFrame frame = make_frame(box, config.working_size);

  BinaryMask working(frame.gw + 2 * kMargin, frame.gh + 2 * kMargin);
  for (int v = 0; v < frame.gh; ++v)
    for (int u = 0; u < frame.gw; ++u)
      if (mask.get(frame.source_x(u), frame.source_y(v))) working.set(u + kMargin, v + kMargin);

  const SkeletonMask skel = skeleton::thin(working);
  SkeletonGraph wg = graph::prune_spurs(graph::build_graph(skel), config.prune_length);

  SkeletonGraph g;
  g.bbox = box;
  g.width = mask.width();
  g.height = mask.height();
  for (const auto& n : wg.nodes) {
    Pixel p = frame.to_source(n.pos());
    g.nodes.push_back({n.id, p.x, p.y, n.kind, false});
  }
  const double sx = frame.step_x(), sy = frame.step_y();
  for (const auto& e : wg.edges) {
    SkeletonEdge out;
    out.a = e.a;
    out.b = e.b;
    out.length = 0;
    for (std::size_t i = 0; i < e.polyline.size(); ++i) {
      Pixel p = frame.to_source(e.polyline[i]);
      if (out.polyline.empty() || out.polyline.back() != p)
        out.polyline.push_back(p);
      if (i > 0) {
        double dx = (e.polyline[i].x - e.polyline[i - 1].x) * sx;
        double dy = (e.polyline[i].y - e.polyline[i - 1].y) * sy;
        out.length += std::hypot(dx, dy);
      }
    }
    g.edges.push_back(std::move(out));
  }

  Representation rep;
  rep.mask = mask;
  rep.skeleton = BinaryMask(mask.width(), mask.height());
  for (int y = 0; y < skel.height(); ++y)
    for (int x = 0; x < skel.width(); ++x)
      if (skel.get(x, y)) rep.skeleton.set(frame.to_source({x, y}));
  rep.graph = graph::canonicalize(g, config.row_band);
  return rep;
}

std::pair<double, double> working_position(const BBox& bbox, Pixel p, int working_size) {
  if (working_size < 1) throw Error(ErrorCode::InvalidArgument, "working_size must be >= 1");
  const WorkingFrame f = make_frame(bbox, working_size);
  // inverse of source_x: the u with (2u+1)W/(2gw) in [x - x0, x - x0 + 1)
  auto cell = [](long off, long span, long cells) {
    long num = 2 * off * cells - span, den = 2 * span;
    long q = num / den;
    if (num % den != 0 && num > 0) ++q;
    return std::clamp(q, 0L, cells - 1);
  };
  const long u = cell(p.x - bbox.x0, bbox.width(), f.gw);
  const long v = cell(p.y - bbox.y0, bbox.height(), f.gh);
  return {(double(u) + 0.5) / f.gw, (double(v) + 0.5) / f.gh};
}

Representation extract(const RgbImage& image, const ExtractConfig& config) {
  return extract(raster::mask_background(image, config.mask), config);
}

}  // namespace foldplan
