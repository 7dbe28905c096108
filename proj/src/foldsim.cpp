// Copyright 2026 The foldplan Authors
// SPDX-License-Identifier: Apache-2.0

#include "foldplan/foldsim.hpp"

#include <cmath>

namespace foldplan {
namespace {

long long floor_div(long long a, long long b) {
  long long q = a / b;
  if ((a % b != 0) && ((a < 0) != (b < 0))) --q;
  return q;
}

}  // namespace

long long FoldLine::side(Pixel c) const {
  const long long dx = place.x - pick.x, dy = place.y - pick.y;
  const long long ux = 2LL * c.x + 1 - pick.x - place.x;
  const long long uy = 2LL * c.y + 1 - pick.y - place.y;
  return ux * dx + uy * dy;
}

Pixel FoldLine::reflect(Pixel c) const {
  const long long dx = place.x - pick.x, dy = place.y - pick.y;
  const long long d2 = dx * dx + dy * dy;
  const long long s = side(c);
  // centre' = centre - s * d / d2; the half-pixel offsets cancel.
  const long long nx = d2 * c.x - s * dx;
  const long long ny = d2 * c.y - s * dy;
  return {int(floor_div(2 * nx + d2, 2 * d2)), int(floor_div(2 * ny + d2, 2 * d2))};
}

std::pair<double, double> FoldLine::point() const {
  return {(pick.x + place.x) / 2.0, (pick.y + place.y) / 2.0};
}

std::pair<double, double> FoldLine::direction() const {
  const double dx = place.x - pick.x, dy = place.y - pick.y;
  const double n = std::hypot(dx, dy);
  return {-dy / n, dx / n};
}

namespace foldsim {

FoldResult apply_fold(const BinaryMask& mask, const ResolvedAction& action) {
  if (action.pick_xy == action.place_xy)
    throw Error(ErrorCode::DegenerateFold, "pick and place coincide");
  if (!mask.test(action.pick_xy)) throw Error(ErrorCode::OffGarment, "pick is not on the garment");
  if (!mask.test(action.place_xy)) throw Error(ErrorCode::OffGarment, "place is not on the garment");

  FoldResult r;
  r.fold_line = {action.pick_xy, action.place_xy};
  r.mask = BinaryMask(mask.width(), mask.height());
  std::vector<Pixel> moved;
  for (int y = 0; y < mask.height(); ++y)
    for (int x = 0; x < mask.width(); ++x) {
      if (!mask.get(x, y)) continue;
      if (r.fold_line.moves({x, y}))
        moved.push_back({x, y});
      else
        r.mask.set(x, y);
    }
  r.moved_area = moved.size();
  BinaryMask landed(mask.width(), mask.height());
  for (Pixel p : moved) {
    Pixel q = r.fold_line.reflect(p);
    if (!mask.contains(q)) {
      ++r.clipped;
      continue;
    }
    landed.set(q);
  }
  for (int y = 0; y < mask.height(); ++y)
    for (int x = 0; x < mask.width(); ++x) {
      if (!landed.get(x, y)) continue;
      if (r.mask.get(x, y)) ++r.overlap_area;
      r.mask.set(x, y);
    }
  return r;
}

Pixel map_point(const std::vector<FoldLine>& folds, Pixel p) {
  for (const auto& f : folds) p = f.map(p);
  return p;
}

std::vector<FoldResult> simulate_plan(const BinaryMask& mask, const FoldingPlan& plan,
                                      const SkeletonGraph& graph) {
  std::vector<FoldResult> results;
  results.reserve(plan.actions.size());
  std::vector<FoldLine> folds;
  const BinaryMask* current = &mask;
  for (std::size_t i = 0; i < plan.actions.size(); ++i) {
    ResolvedAction a = plan::propose_action(plan, int(i), graph);
    a.pick_xy = map_point(folds, a.pick_xy);
    a.place_xy = map_point(folds, a.place_xy);
    results.push_back(apply_fold(*current, a));
    folds.push_back(results.back().fold_line);
    current = &results.back().mask;
  }
  return results;
}

std::vector<FoldResult> simulate_plan(const BinaryMask& mask, const FoldingPlan& plan,
                                      const ExtractConfig& config) {
  if (plan.actions.empty()) return {};
  return simulate_plan(mask, plan, extract(mask, config).graph);
}

nlohmann::json to_json(const FoldResult& r) {
  auto [px, py] = r.fold_line.point();
  auto [dx, dy] = r.fold_line.direction();
  return {{"fold_line", {{"point", {px, py}}, {"direction", {dx, dy}}}},
          {"pick_xy", {r.fold_line.pick.x, r.fold_line.pick.y}},
          {"place_xy", {r.fold_line.place.x, r.fold_line.place.y}},
          {"area", r.mask.count()},
          {"moved_area", r.moved_area},
          {"overlap_area", r.overlap_area},
          {"clipped", r.clipped}};
}

}  // namespace foldsim
}  // namespace foldplan
