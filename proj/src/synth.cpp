// Copyright 2026 The foldplan Authors
// SPDX-License-Identifier: Apache-2.0

#include "foldplan/synth.hpp"

#include <algorithm>
#include <cctype>
#include <cmath>
#include <random>

namespace foldplan {

void SynthParams::validate() const {
  if (!(scale > 0) || !std::isfinite(scale)) throw Error(ErrorCode::InvalidArgument, "scale must be > 0");
  if (!(jitter >= 0)) throw Error(ErrorCode::InvalidArgument, "jitter must be >= 0");
  if (!(variation >= 0) || variation >= 0.5)
    throw Error(ErrorCode::InvalidArgument, "variation must be in [0, 0.5)");
}

namespace synth {
namespace {

constexpr int kBase = 200;       // base raster, the scale-0.5 image
constexpr double kUnit = 2.0;   // base pixels per layout unit
constexpr double kScale1 = 400;  // scale-1 image size

struct Vec {
  double x = 0, y = 0;
};

// Radius varies linearly from ra at vertex a to rb at vertex b.
struct Stroke {
  int a, b;
  double ra, rb;
};

struct Figure {
  std::vector<Vec> vertices;
  std::vector<Stroke> strokes;
  std::vector<int> nodes;  // vertex index per canonical node
};

// Vertex layouts in base units. Vertices listed in `nodes` are where the
// skeleton's nodes land.
Figure figure(GarmentClass c) {
  switch (c) {
    case GarmentClass::ShortSleeveTop:
      // raised sleeves meeting above the torso
      return {{{14, 16}, {50, 26}, {86, 16}, {50, 84}, {50, 42}, {50, 62}},
              {{1, 0, 7, 3}, {1, 2, 7, 3}, {1, 4, 7, 14}, {4, 5, 14, 14}, {5, 3, 14, 3}},
              {0, 2, 1, 3}};
    case GarmentClass::LongSleeveTop:
      // collar, shoulders, cuffs, hem; sleeves hang beside the torso
      return {{{50, 18}, {17, 18}, {83, 18}, {17, 66}, {83, 66}, {50, 84}, {50, 34}, {50, 62}},
              {{1, 0, 7, 7}, {0, 2, 7, 7}, {1, 3, 7, 3}, {2, 4, 7, 3}, {0, 6, 7, 14}, {6, 7, 14, 14},
               {7, 5, 14, 3}},
              {0, 3, 4, 5}};
    case GarmentClass::Trousers:
      // waistband, rise, two legs
      return {{{22, 15}, {50, 12}, {78, 15}, {50, 40}, {32, 88}, {68, 88}, {39, 58}, {61, 58}},
              {{1, 0, 7, 3}, {1, 2, 7, 3}, {1, 3, 7, 12}, {3, 6, 9, 8}, {6, 4, 8, 3}, {3, 7, 9, 8}, {7, 5, 8, 3}},
              {0, 1, 2, 3, 4, 5}};
  }
  throw Error(ErrorCode::InvalidArgument, "unknown garment class");
}

// Whether p lies in the union of the discs centred on [a, b] whose radius
// runs from ra to rb. Distance minus radius is convex along the segment, so
// the stationary point, clamped, is the minimum.
bool inside_stroke(Vec p, Vec a, Vec b, double ra, double rb) {
  const double dx = b.x - a.x, dy = b.y - a.y;
  const double len = std::hypot(dx, dy);
  if (len == 0) return std::hypot(p.x - a.x, p.y - a.y) <= std::max(ra, rb);
  const double ux = dx / len, uy = dy / len;
  const double along = (p.x - a.x) * ux + (p.y - a.y) * uy;
  const double perp = std::abs((p.x - a.x) * uy - (p.y - a.y) * ux);
  const double k = (rb - ra) / len;
  double s = std::abs(k) < 1 ? along + k * perp / std::sqrt(1 - k * k) : (k > 0 ? len : 0.0);
  s = std::clamp(s, 0.0, len);
  return std::hypot(s - along, perp) <= ra + k * s;
}

std::string lower(std::string_view s) {
  std::string out;
  for (char ch : s) out += (ch == '-' || ch == '_') ? ' ' : char(std::tolower((unsigned char)ch));
  return out;
}

}  // namespace

std::string_view class_label(GarmentClass c) {
  switch (c) {
    case GarmentClass::ShortSleeveTop: return "short sleeve top";
    case GarmentClass::LongSleeveTop: return "long sleeve top";
    case GarmentClass::Trousers: return "trousers";
  }
  return "unknown";
}

GarmentClass parse_class(std::string_view text) {
  const std::string t = lower(text);
  for (GarmentClass c : kGarmentClasses)
    if (t == class_label(c)) return c;
  throw Error(ErrorCode::InvalidArgument, "unknown garment class '" + std::string(text) + "'");
}

GarmentItem synth_garment(const SynthParams& params) {
  params.validate();
  Figure f = figure(params.garment);
  for (auto& v : f.vertices) {
    v.x *= kUnit;
    v.y *= kUnit;
  }
  for (auto& s : f.strokes) {
    s.ra *= kUnit;
    s.rb *= kUnit;
  }
  const std::vector<Vec> rest = f.vertices;
  std::mt19937_64 rng(params.seed);
  std::uniform_real_distribution<double> unit(-1.0, 1.0);

  if (params.variation > 0) {
    // stretch each stroke away from its first vertex, vary its width
    for (auto& s : f.strokes) {
      const double k = 1.0 + params.variation * unit(rng);
      Vec& b = f.vertices[std::size_t(s.b)];
      const Vec& a = f.vertices[std::size_t(s.a)];
      b.x = a.x + (b.x - a.x) * k;
      b.y = a.y + (b.y - a.y) * k;
      const double w = 1.0 + 0.5 * params.variation * unit(rng);
      s.ra *= w;
      s.rb *= w;
    }
  }
  const double factor = params.scale * kScale1 / kBase;
  const double base_per_px = 1.0 / factor;
  if (params.jitter > 0)
    for (auto& v : f.vertices) {
      v.x += params.jitter * base_per_px * unit(rng);
      v.y += params.jitter * base_per_px * unit(rng);
    }

  // Integer factors upscale the base raster, so the scales they cover are
  // exact nearest-neighbour copies of each other. Other factors sample the
  // figure directly at the output resolution.
  const int size = std::max(1, int(std::lround(kBase * factor)));
  const double rounded = std::round(factor);
  const int block = std::abs(factor - rounded) < 1e-9 ? int(rounded) : 1;
  const int grid = block > 1 ? kBase : size;
  const double grid_per_base = double(grid) / kBase;
  BinaryMask drawn(grid, grid);
  for (int y = 0; y < grid; ++y)
    for (int x = 0; x < grid; ++x) {
      const Vec p{(x + 0.5) / grid_per_base, (y + 0.5) / grid_per_base};
      for (const auto& s : f.strokes)
        if (inside_stroke(p, f.vertices[std::size_t(s.a)], f.vertices[std::size_t(s.b)], s.ra, s.rb)) {
          drawn.set(x, y);
          break;
        }
    }
  BinaryMask out = block > 1 ? raster::upscale(drawn, block) : std::move(drawn);

  // Landmarks are the nodes of the unperturbed garment, carried along with
  // the displacement of their stroke vertex.
  std::vector<Pixel> landmarks;
  const bool perturbed = params.jitter > 0 || params.variation > 0;
  std::vector<Pixel> nominal;
  if (perturbed) {
    SynthParams plain = params;
    plain.jitter = 0;
    plain.variation = 0;
    nominal = *synth_garment(plain).captures.front().landmarks;
  } else {
    const SkeletonGraph g = extract(out).graph;
    if (g.nodes.size() == f.nodes.size())
      for (const auto& n : g.nodes) nominal.push_back(n.pos());
  }
  for (std::size_t i = 0; i < f.nodes.size(); ++i) {
    const Vec& v = f.vertices[std::size_t(f.nodes[i])];
    const Vec& v0 = rest[std::size_t(f.nodes[i])];
    if (nominal.size() == f.nodes.size())
      landmarks.push_back({nominal[i].x + int(std::lround((v.x - v0.x) * factor)),
                           nominal[i].y + int(std::lround((v.y - v0.y) * factor))});
    else
      landmarks.push_back({int(std::floor(v.x * factor)), int(std::floor(v.y * factor))});
  }

  GarmentItem item;
  item.class_label = std::string(class_label(params.garment));
  item.item_name = params.item_name.empty() ? "synthetic" : params.item_name;
  item.captures.push_back({std::move(out), std::move(landmarks), std::nullopt});
  return item;
}

GarmentItem synth_item(const SynthParams& params, int count) {
  if (count < 1) throw Error(ErrorCode::InvalidArgument, "capture count must be >= 1");
  GarmentItem item;
  for (int i = 0; i < count; ++i) {
    SynthParams p = params;
    p.seed = params.seed + std::uint64_t(i);
    GarmentItem one = synth_garment(p);
    if (i == 0) {
      item.class_label = one.class_label;
      item.item_name = one.item_name;
    }
    item.captures.push_back(std::move(one.captures.front()));
  }
  return item;
}

RgbImage render(const BinaryMask& mask, std::array<std::uint8_t, 3> colour) {
  RgbImage img(mask.width(), mask.height());
  const std::array<std::uint8_t, 3> table{24, 26, 32};
  for (int y = 0; y < mask.height(); ++y)
    for (int x = 0; x < mask.width(); ++x) {
      const auto& c = mask.get(x, y) ? colour : table;
      std::copy(c.begin(), c.end(), img.at(x, y));
    }
  return img;
}

std::vector<ResolvedAction> truth_from_landmarks(const FoldingPlan& plan,
                                                 const std::vector<Pixel>& landmarks,
                                                 const BBox& bbox) {
  std::vector<ResolvedAction> out;
  const double ratio = bbox.diagonal() / plan.reference_graph.bbox.diagonal();
  for (std::size_t i = 0; i < plan.actions.size(); ++i) {
    const auto& a = plan.actions[i];
    if (std::size_t(std::max(a.pick, a.place)) >= landmarks.size())
      throw Error(ErrorCode::UnknownNode, "plan refers to a node without a landmark");
    out.push_back({landmarks[std::size_t(a.pick)], landmarks[std::size_t(a.place)],
                   a.mid_height * ratio, int(i)});
  }
  return out;
}

FoldingPlan default_plan(GarmentClass c, const ExtractConfig& config) {
  SynthParams params;
  params.garment = c;
  const GarmentItem item = synth_garment(params);
  SkeletonGraph g = extract(item.captures.front().mask, config).graph;
  FoldingPlan p = plan::make_plan(std::string(class_label(c)), g);
  auto add = [&](int pick, int place) { p = plan::add_action(p, plan::define_action(g, pick, place)); };
  switch (c) {
    case GarmentClass::ShortSleeveTop:
      add(0, 2);  // left sleeve over the right
      add(3, 1);  // hem up to the collar
      break;
    case GarmentClass::LongSleeveTop:
      add(1, 0);  // left cuff to the collar
      add(2, 0);  // right cuff to the collar
      add(3, 0);  // hem to the collar
      break;
    case GarmentClass::Trousers:
      add(4, 5);  // left leg over the right
      add(5, 2);  // feet to the waist
      break;
  }
  return p;
}

std::vector<DemoItem> demo_items(double jitter, std::uint64_t seed, int captures) {
  struct Spec {
    GarmentClass garment;
    const char* name;
    double scale;
    std::array<std::uint8_t, 3> colour;
  };
  const Spec specs[] = {
      {GarmentClass::ShortSleeveTop, "purple", 1.0, {196, 160, 232}},
      {GarmentClass::ShortSleeveTop, "green", 1.0, {150, 226, 160}},
      {GarmentClass::ShortSleeveTop, "white", 1.0, {244, 244, 240}},
      {GarmentClass::LongSleeveTop, "large", 1.25, {230, 200, 150}},
      {GarmentClass::LongSleeveTop, "small", 0.9, {170, 200, 240}},
      {GarmentClass::Trousers, "pois", 1.0, {200, 220, 250}},
      {GarmentClass::Trousers, "white", 1.0, {240, 240, 236}},
  };
  std::vector<DemoItem> out;
  std::uint64_t k = 0;
  for (const auto& spec : specs) {
    SynthParams p;
    p.garment = spec.garment;
    p.scale = spec.scale;
    p.jitter = jitter;
    p.seed = seed + 1000 * k++;
    p.item_name = spec.name;
    out.push_back({synth_item(p, captures), spec.colour});
  }
  return out;
}

}  // namespace synth
}  // namespace foldplan
