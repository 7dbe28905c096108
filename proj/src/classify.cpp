// Copyright 2026 The foldplan Authors
// SPDX-License-Identifier: Apache-2.0

#include "foldplan/classify.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>
#include <random>
#include <sstream>

#include "foldplan/pipeline.hpp"

namespace foldplan {

std::array<double, GraphDescriptor::kDimensions> GraphDescriptor::vector() const {
  std::array<double, kDimensions> v{};
  std::size_t i = 0;
  v[i++] = node_count;
  v[i++] = endpoint_count;
  v[i++] = junction_count;
  for (int h : degree_histogram) v[i++] = h;
  for (double p : positions) v[i++] = p;
  for (double q : edge_quantiles) v[i++] = q;
  return v;
}

namespace classify {

GraphDescriptor descriptor(const SkeletonGraph& g, int working_size) {
  GraphDescriptor d;
  d.node_count = int(g.nodes.size());
  for (const auto& n : g.nodes) {
    if (n.kind == NodeKind::Endpoint)
      ++d.endpoint_count;
    else
      ++d.junction_count;
    const int deg = std::clamp(g.degree(n.id), 1, 6);
    ++d.degree_histogram[std::size_t(deg - 1)];
  }
  for (std::size_t i = 0; i < g.nodes.size() && i < GraphDescriptor::kPositionSlots; ++i) {
    auto [x, y] = working_position(g.bbox, g.nodes[i].pos(), working_size);
    d.positions[2 * i] = x;
    d.positions[2 * i + 1] = y;
  }
  std::vector<double> lengths;
  // Rounded so that rescaled copies of a garment, whose lengths agree up to
  // floating-point summation order, give identical descriptors.
  for (const auto& e : g.edges) lengths.push_back(std::round(e.length / g.bbox.diagonal() * 1e6) / 1e6);
  if (!lengths.empty()) {
    std::sort(lengths.begin(), lengths.end());
    const std::size_t n = lengths.size();
    d.edge_quantiles = {lengths.front(),
                        n % 2 ? lengths[n / 2] : (lengths[n / 2 - 1] + lengths[n / 2]) / 2,
                        lengths.back()};
  }
  return d;
}

double distance(const GraphDescriptor& a, const GraphDescriptor& b) {
  const auto va = a.vector(), vb = b.vector();
  double s = 0;
  for (std::size_t i = 0; i < va.size(); ++i) s += (va[i] - vb[i]) * (va[i] - vb[i]);
  return std::sqrt(s);
}

KnnResult knn_classify(const GraphDescriptor& d, const DescriptorLibrary& lib, int k) {
  if (lib.empty()) throw Error(ErrorCode::EmptyLibrary, "descriptor library is empty");
  if (k < 1 || std::size_t(k) > lib.size())
    throw Error(ErrorCode::InvalidArgument, "k must be in [1, library size]");

  std::vector<std::pair<double, std::size_t>> dist;
  for (std::size_t i = 0; i < lib.size(); ++i) dist.push_back({distance(d, lib[i].descriptor), i});
  std::partial_sort(dist.begin(), dist.begin() + k, dist.end());

  KnnResult r;
  std::map<std::string, double> weight;
  for (int i = 0; i < k; ++i) {
    const auto& [dd, idx] = dist[std::size_t(i)];
    ++r.votes[lib[idx].label];
    weight[lib[idx].label] += dd > 0 ? 1.0 / dd : std::numeric_limits<double>::infinity();
  }
  // map order is lexicographic, so strict comparisons keep the smaller label
  std::pair<int, double> best{0, 0.0};
  for (const auto& [label, v] : r.votes) {
    const std::pair<int, double> score{v, weight[label]};
    if (r.label.empty() || score > best) {
      best = score;
      r.label = label;
    }
  }
  return r;
}

double leave_one_out_accuracy(const DescriptorLibrary& lib, int k) {
  if (lib.size() < 2) throw Error(ErrorCode::EmptyLibrary, "leave-one-out needs two entries");
  int correct = 0;
  for (std::size_t i = 0; i < lib.size(); ++i) {
    DescriptorLibrary rest;
    rest.reserve(lib.size() - 1);
    for (std::size_t j = 0; j < lib.size(); ++j)
      if (j != i) rest.push_back(lib[j]);
    if (knn_classify(lib[i].descriptor, rest, k).label == lib[i].label) ++correct;
  }
  return double(correct) / double(lib.size());
}

double shuffled_label_accuracy(const DescriptorLibrary& lib, int k, std::uint64_t seed, int rounds) {
  if (rounds < 1) throw Error(ErrorCode::InvalidArgument, "rounds must be >= 1");
  std::mt19937_64 rng(seed);
  std::vector<std::string> labels;
  for (const auto& e : lib) labels.push_back(e.label);
  double sum = 0;
  for (int r = 0; r < rounds; ++r) {
    std::shuffle(labels.begin(), labels.end(), rng);
    DescriptorLibrary shuffled = lib;
    for (std::size_t i = 0; i < lib.size(); ++i) shuffled[i].label = labels[i];
    sum += leave_one_out_accuracy(shuffled, k);
  }
  return sum / rounds;
}

nlohmann::json to_json(const GraphDescriptor& d) {
  return {{"node_count", d.node_count},
          {"endpoint_count", d.endpoint_count},
          {"junction_count", d.junction_count},
          {"degree_histogram", d.degree_histogram},
          {"positions", d.positions},
          {"edge_quantiles", d.edge_quantiles}};
}

GraphDescriptor descriptor_from_json(const nlohmann::json& j) {
  try {
    GraphDescriptor d;
    d.node_count = j.at("node_count").get<int>();
    d.endpoint_count = j.at("endpoint_count").get<int>();
    d.junction_count = j.at("junction_count").get<int>();
    d.degree_histogram = j.at("degree_histogram").get<std::array<int, 6>>();
    d.positions = j.at("positions").get<std::array<double, 2 * GraphDescriptor::kPositionSlots>>();
    d.edge_quantiles = j.at("edge_quantiles").get<std::array<double, 3>>();
    return d;
  } catch (const nlohmann::json::exception& e) {
    throw Error(ErrorCode::MalformedDocument, std::string("descriptor: ") + e.what());
  }
}

std::string save_library(const DescriptorLibrary& lib) {
  std::string out;
  for (const auto& e : lib)
    out += nlohmann::json{{"label", e.label}, {"descriptor", to_json(e.descriptor)}}.dump() + "\n";
  return out;
}

DescriptorLibrary load_library(std::string_view jsonl) {
  DescriptorLibrary lib;
  std::istringstream in{std::string(jsonl)};
  std::string line;
  int line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    if (line.find_first_not_of(" \t\r") == std::string::npos) continue;
    auto j = nlohmann::json::parse(line, nullptr, false);
    if (j.is_discarded() || !j.is_object() || !j.contains("label") || !j["label"].is_string())
      throw Error(ErrorCode::MalformedDocument, "library line " + std::to_string(line_no));
    lib.push_back({descriptor_from_json(j.at("descriptor")), j["label"].get<std::string>()});
  }
  return lib;
}

}  // namespace classify
}  // namespace foldplan
