// Copyright 2026 The nswlab Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#pragma once

#include <algorithm>
#include <cstdint>
#include <numeric>
#include <random>
#include <vector>

#include "nswlab/graph.hpp"

namespace nswlab {

/// Random simple cubic graph from the pairing (configuration) model.
///
/// Pairings with loops or parallel edges are rejected and redrawn from the
/// same generator stream, so the result depends only on (n, seed). Edges come
/// back sorted.
inline Graph gen_random_cubic(int n, std::uint64_t seed) {
  if (n < 4 || n % 2 != 0) {
    throw InputError("cubic graphs need an even vertex count >= 4, got " + std::to_string(n));
  }
  std::mt19937_64 rng(seed);
  std::vector<int> points(static_cast<std::size_t>(3 * n));
  for (;;) {
    for (std::size_t p = 0; p < points.size(); ++p) points[p] = static_cast<int>(p / 3);
    std::shuffle(points.begin(), points.end(), rng);
    std::vector<Edge> edges;
    bool simple = true;
    for (std::size_t p = 0; p < points.size() && simple; p += 2) {
      Edge e{std::min(points[p], points[p + 1]), std::max(points[p], points[p + 1])};
      if (e.u == e.v || std::find(edges.begin(), edges.end(), e) != edges.end()) {
        simple = false;
      } else {
        edges.push_back(e);
      }
    }
    if (!simple) continue;
    std::sort(edges.begin(), edges.end());
    return Graph(n, std::move(edges));
  }
}

namespace detail {

// Per-vertex invariant: (triangles through v, vertices at distance exactly 2).
inline std::vector<std::pair<int, int>> vertex_invariants(const Graph& g) {
  const int n = g.vertex_count();
  std::vector<std::pair<int, int>> inv(static_cast<std::size_t>(n));
  for (int v = 0; v < n; ++v) {
    int triangles = 0;
    std::vector<char> seen(static_cast<std::size_t>(n), 0);
    seen[static_cast<std::size_t>(v)] = 1;
    for (int w : g.neighbors(v)) seen[static_cast<std::size_t>(w)] = 1;
    int second = 0;
    for (int w : g.neighbors(v)) {
      for (int x : g.neighbors(w)) {
        if (x > w && g.adjacent(v, x)) ++triangles;
        if (!seen[static_cast<std::size_t>(x)]) {
          seen[static_cast<std::size_t>(x)] = 1;
          ++second;
        }
      }
    }
    inv[static_cast<std::size_t>(v)] = {triangles, second};
  }
  return inv;
}

inline bool extend_isomorphism(const Graph& a, const Graph& b,
                               const std::vector<std::pair<int, int>>& inv_a,
                               const std::vector<std::pair<int, int>>& inv_b,
                               std::vector<int>& map, std::vector<char>& used, int v) {
  const int n = a.vertex_count();
  if (v == n) return true;
  for (int w = 0; w < n; ++w) {
    if (used[static_cast<std::size_t>(w)] ||
        inv_a[static_cast<std::size_t>(v)] != inv_b[static_cast<std::size_t>(w)]) {
      continue;
    }
    bool ok = true;
    for (int u = 0; u < v && ok; ++u) {
      ok = a.adjacent(u, v) == b.adjacent(map[static_cast<std::size_t>(u)], w);
    }
    if (!ok) continue;
    map[static_cast<std::size_t>(v)] = w;
    used[static_cast<std::size_t>(w)] = 1;
    if (extend_isomorphism(a, b, inv_a, inv_b, map, used, v + 1)) return true;
    used[static_cast<std::size_t>(w)] = 0;
  }
  return false;
}

}  // namespace detail

inline bool isomorphic(const Graph& a, const Graph& b) {
  if (a.vertex_count() != b.vertex_count() || a.edge_count() != b.edge_count()) return false;
  auto inv_a = detail::vertex_invariants(a);
  auto inv_b = detail::vertex_invariants(b);
  auto sa = inv_a;
  auto sb = inv_b;
  std::sort(sa.begin(), sa.end());
  std::sort(sb.begin(), sb.end());
  if (sa != sb) return false;
  std::vector<int> map(static_cast<std::size_t>(a.vertex_count()), -1);
  std::vector<char> used(static_cast<std::size_t>(a.vertex_count()), 0);
  return detail::extend_isomorphism(a, b, inv_a, inv_b, map, used, 0);
}

/// One representative of every isomorphism class of cubic graphs on n
/// vertices, connected or not (n even, 4 <= n <= 10).
///
/// Labeled graphs are generated with N(0) = {1, 2, 3}, which every class
/// admits after relabeling, and then deduplicated by isomorphism.
inline std::vector<Graph> enumerate_cubic_graphs(int n) {
  if (n < 4 || n % 2 != 0 || n > 10) {
    throw InputError("cubic graph enumeration supports even n in [4, 10], got " +
                     std::to_string(n));
  }
  std::vector<Graph> classes;
  std::vector<int> degree(static_cast<std::size_t>(n), 0);
  std::vector<std::vector<char>> adj(static_cast<std::size_t>(n),
                                     std::vector<char>(static_cast<std::size_t>(n), 0));
  std::vector<Edge> edges;
  auto add = [&](int u, int v) {
    adj[u][v] = adj[v][u] = 1;
    ++degree[u];
    ++degree[v];
    edges.push_back({u, v});
  };
  auto remove = [&](int u, int v) {
    adj[u][v] = adj[v][u] = 0;
    --degree[u];
    --degree[v];
    edges.pop_back();
  };
  add(0, 1);
  add(0, 2);
  add(0, 3);

  // Fill the smallest unsaturated vertex; its new neighbors are taken in
  // increasing order above `floor` so every labeled graph appears once.
  auto recurse = [&](auto&& self, int floor) -> void {
    int v = 0;
    while (v < n && degree[static_cast<std::size_t>(v)] == 3) ++v;
    if (v == n) {
      Graph g(n, edges);
      for (const auto& c : classes) {
        if (isomorphic(c, g)) return;
      }
      std::vector<Edge> sorted = edges;
      std::sort(sorted.begin(), sorted.end());
      classes.emplace_back(n, std::move(sorted));
      return;
    }
    for (int w = std::max(floor, v + 1); w < n; ++w) {
      if (degree[static_cast<std::size_t>(w)] == 3 || adj[v][w]) continue;
      add(v, w);
      const bool saturated = degree[static_cast<std::size_t>(v)] == 3;
      self(self, saturated ? 0 : w + 1);
      remove(v, w);
    }
  };
  recurse(recurse, 0);
  return classes;
}

}  // namespace nswlab
