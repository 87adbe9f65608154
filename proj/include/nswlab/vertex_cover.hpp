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

#include <bit>
#include <cstdint>
#include <vector>

#include "nswlab/graph.hpp"

namespace nswlab {

struct VertexCoverOptions {
  int max_vertices = 40;
};

namespace detail {

/// Bitmask branch-and-reduce decision procedure for small vertex cover:
/// is there a cover containing `in`, avoiding `out`, of size <= budget?
class CoverSearch {
 public:
  explicit CoverSearch(const Graph& g) : n_(g.vertex_count()), adj_(static_cast<std::size_t>(n_)) {
    for (const auto& e : g.edges()) {
      adj_[static_cast<std::size_t>(e.u)] |= bit(e.v);
      adj_[static_cast<std::size_t>(e.v)] |= bit(e.u);
    }
    all_ = n_ == 64 ? ~std::uint64_t{0} : (std::uint64_t{1} << n_) - 1;
  }

  bool feasible(std::uint64_t in, std::uint64_t out, int budget) const {
    // Excluding a vertex forces its whole neighborhood in.
    for (std::uint64_t rest = out; rest != 0; rest &= rest - 1) {
      const int v = std::countr_zero(rest);
      const std::uint64_t need = adj_[static_cast<std::size_t>(v)];
      if ((need & out) != 0) return false;
      in |= need;
    }
    const int used = std::popcount(in);
    if (used > budget) return false;
    const std::uint64_t free = all_ & ~(in | out);
    int best = -1;
    int best_degree = 0;
    int uncovered_twice = 0;
    for (std::uint64_t rest = free; rest != 0; rest &= rest - 1) {
      const int v = std::countr_zero(rest);
      const int d = std::popcount(adj_[static_cast<std::size_t>(v)] & free);
      uncovered_twice += d;
      if (d > best_degree) {
        best_degree = d;
        best = v;
      }
    }
    if (best < 0) return true;
    const int uncovered = uncovered_twice / 2;
    if (used + (uncovered + best_degree - 1) / best_degree > budget) return false;
    return feasible(in | bit(best), out, budget) || feasible(in, out | bit(best), budget);
  }

  int size() const { return n_; }

 private:
  static std::uint64_t bit(int v) { return std::uint64_t{1} << v; }

  int n_;
  std::vector<std::uint64_t> adj_;
  std::uint64_t all_ = 0;
};

}  // namespace detail

/// Exact minimum vertex cover; among minimum covers, the lexicographically
/// smallest sorted member list.
inline VertexSet min_vertex_cover(const Graph& g, const VertexCoverOptions& options = {}) {
  const int limit = options.max_vertices < 64 ? options.max_vertices : 64;
  if (g.vertex_count() > limit) {
    throw ResourceError("graph has " + std::to_string(g.vertex_count()) +
                        " vertices; the exact vertex-cover bound is " + std::to_string(limit) +
                        " (raise it with --vc-limit, at most 64)");
  }
  const detail::CoverSearch search(g);
  int tau = 0;
  while (!search.feasible(0, 0, tau)) ++tau;
  std::uint64_t in = 0;
  std::uint64_t out = 0;
  for (int v = 0; v < g.vertex_count(); ++v) {
    const std::uint64_t b = std::uint64_t{1} << v;
    if (search.feasible(in | b, out, tau)) {
      in |= b;
    } else {
      out |= b;
    }
  }
  std::vector<int> members;
  for (int v = 0; v < g.vertex_count(); ++v) {
    if ((in >> v) & 1U) members.push_back(v);
  }
  return VertexSet(std::move(members));
}

inline int cover_number(const Graph& g, const VertexCoverOptions& options = {}) {
  return static_cast<int>(min_vertex_cover(g, options).size());
}

}  // namespace nswlab
