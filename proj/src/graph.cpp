// Copyright 2026 The foldplan Authors
// SPDX-License-Identifier: Apache-2.0

#include "foldplan/graph.hpp"

#include <algorithm>
#include <array>
#include <limits>
#include <numeric>
#include <set>
#include <tuple>

namespace foldplan {

int SkeletonGraph::degree(int id) const {
  int d = 0;
  for (const auto& e : edges) {
    if (e.a == id) ++d;
    if (e.b == id) ++d;
  }
  return d;
}

std::vector<int> SkeletonGraph::degrees() const {
  std::vector<int> d(nodes.size(), 0);
  for (const auto& e : edges) {
    ++d[std::size_t(e.a)];
    ++d[std::size_t(e.b)];
  }
  return d;
}

const SkeletonNode& SkeletonGraph::node(int id) const {
  if (id < 0 || std::size_t(id) >= nodes.size())
    throw Error(ErrorCode::UnknownNode, "node " + std::to_string(id) + " does not exist");
  return nodes[std::size_t(id)];
}

namespace graph {
namespace {

constexpr std::array<Pixel, 8> kNeighbors{{{-1, -1}, {0, -1}, {1, -1}, {-1, 0},
                                           {1, 0}, {-1, 1}, {0, 1}, {1, 1}}};

Pixel operator+(Pixel a, Pixel b) { return {a.x + b.x, a.y + b.y}; }

struct ClusterNode {
  std::vector<Pixel> pixels;
  NodeKind kind = NodeKind::Endpoint;
  Pixel pos;
};

Pixel snapped_centroid(const std::vector<Pixel>& pixels) {
  double cx = 0, cy = 0;
  for (Pixel p : pixels) {
    cx += p.x;
    cy += p.y;
  }
  cx /= double(pixels.size());
  cy /= double(pixels.size());
  Pixel best = pixels.front();
  double best_d = std::numeric_limits<double>::max();
  for (Pixel p : pixels) {  // pixels arrive row-major, so strict < keeps the first on ties
    double d = (p.x - cx) * (p.x - cx) + (p.y - cy) * (p.y - cy);
    if (d < best_d) {
      best_d = d;
      best = p;
    }
  }
  return best;
}

std::vector<Pixel> with_node_ends(Pixel a_pos, const std::vector<Pixel>& path, Pixel b_pos) {
  std::vector<Pixel> out;
  out.reserve(path.size() + 2);
  out.push_back(a_pos);
  for (Pixel p : path)
    if (p != out.back()) out.push_back(p);
  if (b_pos != out.back() || out.size() == 1) out.push_back(b_pos);
  return out;
}

}  // namespace

double polyline_length(const std::vector<Pixel>& polyline) {
  double len = 0;
  for (std::size_t i = 1; i < polyline.size(); ++i) len += distance(polyline[i - 1], polyline[i]);
  return len;
}

SkeletonGraph build_graph(const SkeletonMask& skel) {
  if (skel.empty_canvas() || !skel.any())
    throw Error(ErrorCode::EmptySkeleton, "skeleton has no set pixels");

  const int w = skel.width(), h = skel.height();
  auto idx = [w](Pixel p) { return std::size_t(p.y) * std::size_t(w) + std::size_t(p.x); };

  std::vector<int> degree(std::size_t(w) * h, 0);
  for (int y = 0; y < h; ++y)
    for (int x = 0; x < w; ++x)
      if (skel.get(x, y)) degree[idx({x, y})] = skeleton::neighbor_count(skel, x, y);

  // Node clusters, discovered in row-major order.
  std::vector<int> owner(std::size_t(w) * h, -1);
  std::vector<ClusterNode> clusters;
  for (int y = 0; y < h; ++y) {
    for (int x = 0; x < w; ++x) {
      Pixel p{x, y};
      if (!skel.get(p) || owner[idx(p)] >= 0) continue;
      int d = degree[idx(p)];
      if (d == 2) continue;
      int id = int(clusters.size());
      ClusterNode node;
      if (d <= 1) {
        node.pixels = {p};
        node.kind = NodeKind::Endpoint;
        owner[idx(p)] = id;
      } else {
        node.kind = NodeKind::Junction;
        std::vector<Pixel> stack{p};
        owner[idx(p)] = id;
        while (!stack.empty()) {
          Pixel c = stack.back();
          stack.pop_back();
          node.pixels.push_back(c);
          for (Pixel dlt : kNeighbors) {
            Pixel n = c + dlt;
            if (!skel.test(n) || owner[idx(n)] >= 0 || degree[idx(n)] < 3) continue;
            owner[idx(n)] = id;
            stack.push_back(n);
          }
        }
        std::sort(node.pixels.begin(), node.pixels.end());
      }
      node.pos = snapped_centroid(node.pixels);
      clusters.push_back(std::move(node));
    }
  }

  std::vector<std::uint8_t> visited(std::size_t(w) * h, 0);
  std::set<std::pair<Pixel, Pixel>> direct_links;
  SkeletonGraph g;
  g.width = w;
  g.height = h;

  auto add_edge = [&](int a, int b, const std::vector<Pixel>& path) {
    SkeletonEdge e;
    e.a = a;
    e.b = b;
    e.polyline = with_node_ends(clusters[std::size_t(a)].pos, path,
                                clusters[std::size_t(b)].pos);
    e.length = polyline_length(e.polyline);
    g.edges.push_back(std::move(e));
  };

  // Walks a chain of two-neighbour pixels starting at `first`, entered from `from`.
  // Returns the node pixel the chain ends on.
  auto walk = [&](Pixel from, Pixel first, std::vector<Pixel>& path) -> Pixel {
    Pixel prev = from, cur = first;
    for (;;) {
      visited[idx(cur)] = 1;
      path.push_back(cur);
      Pixel next = cur;
      for (Pixel dlt : kNeighbors) {
        Pixel n = cur + dlt;
        if (n != prev && skel.test(n)) {
          next = n;
          break;
        }
      }
      if (next == cur) return cur;  // dead end; cannot happen for degree-2 pixels
      if (owner[idx(next)] >= 0) {
        path.push_back(next);
        return next;
      }
      if (visited[idx(next)]) return cur;
      prev = cur;
      cur = next;
    }
  };

  const std::size_t node_clusters = clusters.size();
  for (std::size_t n = 0; n < node_clusters; ++n) {
    const std::vector<Pixel> pixels = clusters[n].pixels;
    for (Pixel p : pixels) {
      for (Pixel dlt : kNeighbors) {
        Pixel q = p + dlt;
        if (!skel.test(q)) continue;
        int other = owner[idx(q)];
        if (other == int(n)) continue;
        if (other >= 0) {
          auto key = std::minmax(p, q);
          if (!direct_links.insert({key.first, key.second}).second) continue;
          add_edge(int(n), other, {p, q});
          continue;
        }
        if (visited[idx(q)]) continue;
        std::vector<Pixel> path{p};
        Pixel end = walk(p, q, path);
        add_edge(int(n), owner[idx(end)] >= 0 ? owner[idx(end)] : int(n), path);
      }
    }
  }

  // Remaining unvisited pixels lie on pure cycles.
  for (int y = 0; y < h; ++y) {
    for (int x = 0; x < w; ++x) {
      Pixel anchor{x, y};
      if (!skel.get(anchor) || owner[idx(anchor)] >= 0 || visited[idx(anchor)]) continue;
      int id = int(clusters.size());
      clusters.push_back({{anchor}, NodeKind::Junction, anchor});
      owner[idx(anchor)] = id;
      Pixel first = anchor;
      for (Pixel dlt : kNeighbors) {
        if (skel.test(anchor + dlt)) {
          first = anchor + dlt;
          break;
        }
      }
      std::vector<Pixel> path{anchor};
      if (first != anchor) walk(anchor, first, path);
      add_edge(id, id, path);
    }
  }

  g.nodes.reserve(clusters.size());
  for (std::size_t i = 0; i < clusters.size(); ++i)
    g.nodes.push_back({int(i), clusters[i].pos.x, clusters[i].pos.y, clusters[i].kind, false});
  g.bbox = raster::bounding_box(skel);
  return g;
}

SkeletonGraph prune_spurs(const SkeletonGraph& g, double min_len) {
  if (min_len < 0) throw Error(ErrorCode::InvalidArgument, "min_len must be non-negative");

  std::vector<SkeletonNode> nodes = g.nodes;
  std::vector<bool> node_alive(nodes.size(), true);
  std::vector<SkeletonEdge> edges = g.edges;
  std::vector<bool> edge_alive(edges.size(), true);

  auto degree = [&](int id) {
    int d = 0;
    for (std::size_t i = 0; i < edges.size(); ++i) {
      if (!edge_alive[i]) continue;
      if (edges[i].a == id) ++d;
      if (edges[i].b == id) ++d;
    }
    return d;
  };
  auto incident = [&](int id) {
    std::vector<std::size_t> out;
    for (std::size_t i = 0; i < edges.size(); ++i)
      if (edge_alive[i] && (edges[i].a == id || edges[i].b == id)) out.push_back(i);
    return out;
  };

  auto dissolve = [&](int id) {
    auto inc = incident(id);
    SkeletonNode& node = nodes[std::size_t(id)];
    if (inc.size() == 1 && edges[inc[0]].self_loop()) {
      // Only a loop remains: re-anchor at its topmost-leftmost pixel.
      auto& poly = edges[inc[0]].polyline;
      std::vector<Pixel> cycle(poly.begin(), poly.end() - 1);
      auto it = std::min_element(cycle.begin(), cycle.end());
      std::rotate(cycle.begin(), it, cycle.end());
      cycle.push_back(cycle.front());
      poly = std::move(cycle);
      node.x = poly.front().x;
      node.y = poly.front().y;
      node.kind = NodeKind::Junction;
      return;
    }
    if (inc.size() != 2) return;
    SkeletonEdge first = edges[inc[0]];
    SkeletonEdge second = edges[inc[1]];
    if (first.a == id) {  // orient first to end at the node
      std::reverse(first.polyline.begin(), first.polyline.end());
      std::swap(first.a, first.b);
    }
    if (second.b == id && second.a != id) {  // orient second to start at the node
      std::reverse(second.polyline.begin(), second.polyline.end());
      std::swap(second.a, second.b);
    }
    SkeletonEdge joined;
    joined.a = first.a;
    joined.b = second.b;
    joined.polyline = first.polyline;
    joined.polyline.insert(joined.polyline.end(), second.polyline.begin() + 1, second.polyline.end());
    joined.length = first.length + second.length;
    edge_alive[inc[0]] = false;
    edge_alive[inc[1]] = false;
    node_alive[std::size_t(id)] = false;
    edges.push_back(std::move(joined));
    edge_alive.push_back(true);
  };

  for (;;) {
    std::size_t best = edges.size();
    for (std::size_t i = 0; i < edges.size(); ++i) {
      const auto& e = edges[i];
      if (!edge_alive[i] || e.self_loop() || !(e.length < min_len)) continue;
      int da = degree(e.a), db = degree(e.b);
      bool spur = (da == 1 && db >= 3) || (db == 1 && da >= 3);
      if (!spur) continue;
      if (best == edges.size() || e.length < edges[best].length) best = i;
    }
    if (best == edges.size()) break;

    const SkeletonEdge spur = edges[best];
    int tip = degree(spur.a) == 1 ? spur.a : spur.b;
    int root = tip == spur.a ? spur.b : spur.a;
    edge_alive[best] = false;
    node_alive[std::size_t(tip)] = false;
    int d = degree(root);
    if (d == 2) {
      dissolve(root);
    } else if (d == 1) {
      nodes[std::size_t(root)].kind = NodeKind::Endpoint;
    }
  }

  SkeletonGraph out;
  out.bbox = g.bbox;
  out.width = g.width;
  out.height = g.height;
  std::vector<int> remap(nodes.size(), -1);
  for (std::size_t i = 0; i < nodes.size(); ++i) {
    if (!node_alive[i]) continue;
    remap[i] = int(out.nodes.size());
    SkeletonNode n = nodes[i];
    n.id = remap[i];
    out.nodes.push_back(n);
  }
  for (std::size_t i = 0; i < edges.size(); ++i) {
    if (!edge_alive[i]) continue;
    SkeletonEdge e = edges[i];
    e.a = remap[std::size_t(e.a)];
    e.b = remap[std::size_t(e.b)];
    out.edges.push_back(std::move(e));
  }
  return out;
}

std::pair<double, double> normalized_position(const SkeletonGraph& g, Pixel p) {
  const double w = std::max(1, g.bbox.width());
  const double h = std::max(1, g.bbox.height());
  return {(p.x - g.bbox.x0) / w, (p.y - g.bbox.y0) / h};
}

SkeletonGraph canonicalize(const SkeletonGraph& g, double row_band) {
  const std::size_t n = g.nodes.size();
  const std::vector<int> deg = g.degrees();

  struct Key {
    double nx, ny;
    int neg_degree;
    std::vector<std::pair<double, double>> neighbors;
  };
  std::vector<Key> keys(n);
  for (std::size_t i = 0; i < n; ++i) {
    auto [nx, ny] = normalized_position(g, g.nodes[i].pos());
    keys[i] = {nx, ny, -deg[i], {}};
  }
  for (const auto& e : g.edges) {
    keys[std::size_t(e.a)].neighbors.push_back({keys[std::size_t(e.b)].ny, keys[std::size_t(e.b)].nx});
    keys[std::size_t(e.b)].neighbors.push_back({keys[std::size_t(e.a)].ny, keys[std::size_t(e.a)].nx});
  }
  for (auto& k : keys) std::sort(k.neighbors.begin(), k.neighbors.end());

  std::vector<std::size_t> order(n);
  std::iota(order.begin(), order.end(), 0);
  auto by_row = [&](std::size_t a, std::size_t b) {
    const Key &ka = keys[a], &kb = keys[b];
    return std::tie(ka.ny, ka.nx, ka.neg_degree, ka.neighbors) <
           std::tie(kb.ny, kb.nx, kb.neg_degree, kb.neighbors);
  };
  auto by_column = [&](std::size_t a, std::size_t b) {
    const Key &ka = keys[a], &kb = keys[b];
    return std::tie(ka.nx, ka.ny, ka.neg_degree, ka.neighbors) <
           std::tie(kb.nx, kb.ny, kb.neg_degree, kb.neighbors);
  };
  std::sort(order.begin(), order.end(), by_row);
  for (std::size_t start = 0; start < n;) {
    std::size_t end = start + 1;
    while (end < n && keys[order[end]].ny - keys[order[end - 1]].ny <= row_band) ++end;
    std::sort(order.begin() + std::ptrdiff_t(start), order.begin() + std::ptrdiff_t(end), by_column);
    start = end;
  }

  std::vector<int> new_id(n);
  for (std::size_t rank = 0; rank < n; ++rank) new_id[order[rank]] = int(rank);

  SkeletonGraph out;
  out.bbox = g.bbox;
  out.width = g.width;
  out.height = g.height;
  out.nodes.reserve(n);
  for (std::size_t rank = 0; rank < n; ++rank) {
    SkeletonNode node = g.nodes[order[rank]];
    node.id = int(rank);
    out.nodes.push_back(node);
  }
  for (SkeletonEdge e : g.edges) {
    e.a = new_id[std::size_t(e.a)];
    e.b = new_id[std::size_t(e.b)];
    if (e.a > e.b) {
      std::swap(e.a, e.b);
      std::reverse(e.polyline.begin(), e.polyline.end());
    } else if (e.a == e.b) {
      std::vector<Pixel> rev(e.polyline.rbegin(), e.polyline.rend());
      if (rev < e.polyline) e.polyline = std::move(rev);
    }
    out.edges.push_back(std::move(e));
  }
  std::sort(out.edges.begin(), out.edges.end(), [](const SkeletonEdge& x, const SkeletonEdge& y) {
    return std::tie(x.a, x.b, x.length, x.polyline) < std::tie(y.a, y.b, y.length, y.polyline);
  });
  return out;
}

AdjacencyMatrix adjacency_matrix(const SkeletonGraph& g) {
  AdjacencyMatrix m(g.nodes.size(), std::vector<int>(g.nodes.size(), 0));
  for (const auto& e : g.edges) {
    m[std::size_t(e.a)][std::size_t(e.b)] = 1;
    m[std::size_t(e.b)][std::size_t(e.a)] = 1;
  }
  return m;
}

SkeletonGraph move_node(const SkeletonGraph& g, int id, int x, int y, const BinaryMask& mask) {
  g.node(id);  // throws UnknownNode
  if (!mask.test(x, y))
    throw Error(ErrorCode::OffGarment, "(" + std::to_string(x) + ", " + std::to_string(y) +
                                           ") is not on the garment");
  SkeletonGraph out = g;
  auto& node = out.nodes[std::size_t(id)];
  node.x = x;
  node.y = y;
  node.moved = true;
  return out;
}

nlohmann::json to_json(const SkeletonGraph& g) {
  using nlohmann::json;
  json nodes = json::array();
  for (const auto& n : g.nodes) {
    nodes.push_back({{"id", n.id},
                     {"x", n.x},
                     {"y", n.y},
                     {"kind", n.kind == NodeKind::Endpoint ? "endpoint" : "junction"},
                     {"moved", n.moved}});
  }
  json edges = json::array();
  for (const auto& e : g.edges) {
    json poly = json::array();
    for (Pixel p : e.polyline) poly.push_back({p.x, p.y});
    edges.push_back({{"a", e.a}, {"b", e.b}, {"length", e.length}, {"polyline", std::move(poly)}});
  }
  return {{"nodes", std::move(nodes)},
          {"edges", std::move(edges)},
          {"bbox", {g.bbox.x0, g.bbox.y0, g.bbox.x1, g.bbox.y1}},
          {"dims", {g.width, g.height}}};
}

SkeletonGraph graph_from_json(const nlohmann::json& j) {
  try {
    SkeletonGraph g;
    const auto& nodes = j.at("nodes");
    if (!nodes.is_array()) throw Error(ErrorCode::MalformedDocument, "nodes must be an array");
    for (const auto& jn : nodes) {
      SkeletonNode n;
      n.id = jn.at("id").get<int>();
      n.x = jn.at("x").get<int>();
      n.y = jn.at("y").get<int>();
      const auto kind = jn.at("kind").get<std::string>();
      if (kind == "endpoint") {
        n.kind = NodeKind::Endpoint;
      } else if (kind == "junction") {
        n.kind = NodeKind::Junction;
      } else {
        throw Error(ErrorCode::MalformedDocument, "unknown node kind '" + kind + "'");
      }
      n.moved = jn.at("moved").get<bool>();
      if (n.id != int(g.nodes.size()))
        throw Error(ErrorCode::MalformedDocument, "node ids must be contiguous from 0");
      g.nodes.push_back(n);
    }
    for (const auto& je : j.at("edges")) {
      SkeletonEdge e;
      e.a = je.at("a").get<int>();
      e.b = je.at("b").get<int>();
      e.length = je.at("length").get<double>();
      for (const auto& p : je.at("polyline")) {
        if (!p.is_array() || p.size() != 2)
          throw Error(ErrorCode::MalformedDocument, "polyline points must be [x, y]");
        e.polyline.push_back({p[0].get<int>(), p[1].get<int>()});
      }
      if (e.a < 0 || e.b < 0 || std::size_t(e.a) >= g.nodes.size() ||
          std::size_t(e.b) >= g.nodes.size())
        throw Error(ErrorCode::MalformedDocument, "edge references an unknown node");
      g.edges.push_back(std::move(e));
    }
    const auto& bbox = j.at("bbox");
    const auto& dims = j.at("dims");
    if (!bbox.is_array() || bbox.size() != 4 || !dims.is_array() || dims.size() != 2)
      throw Error(ErrorCode::MalformedDocument, "bbox needs 4 entries and dims 2");
    g.bbox = {bbox[0].get<int>(), bbox[1].get<int>(), bbox[2].get<int>(), bbox[3].get<int>()};
    g.width = dims[0].get<int>();
    g.height = dims[1].get<int>();
    return g;
  } catch (const nlohmann::json::exception& e) {
    throw Error(ErrorCode::MalformedDocument, std::string("graph document: ") + e.what());
  }
}

}  // namespace graph
}  // namespace foldplan
