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
#include <compare>
#include <cstddef>
#include <filesystem>
#include <fstream>
#include <optional>
#include <sstream>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "nswlab/errors.hpp"

namespace nswlab {

// Undirected edge stored with u < v.
struct Edge {
  int u = 0;
  int v = 0;

  friend auto operator<=>(const Edge&, const Edge&) = default;
};

inline std::string to_string(const Edge& e) {
  return std::to_string(e.u) + "-" + std::to_string(e.v);
}

/// Simple undirected graph on vertices 0..N-1 with an ordered edge list.
class Graph {
 public:
  Graph() = default;

  Graph(int vertex_count, std::vector<Edge> edges)
      : vertex_count_(vertex_count), edges_(std::move(edges)) {
    if (vertex_count_ < 1) throw InputError("graph needs at least one vertex");
    adjacency_.assign(static_cast<std::size_t>(vertex_count_), {});
    for (auto& e : edges_) {
      if (e.u > e.v) std::swap(e.u, e.v);
      if (e.u < 0 || e.v >= vertex_count_) {
        throw InputError("edge " + to_string(e) + " out of range for N=" +
                         std::to_string(vertex_count_));
      }
      if (e.u == e.v) throw InputError("self-loop at vertex " + std::to_string(e.u));
      auto& nu = adjacency_[static_cast<std::size_t>(e.u)];
      if (std::find(nu.begin(), nu.end(), e.v) != nu.end()) {
        throw InputError("parallel edge " + to_string(e));
      }
      nu.push_back(e.v);
      adjacency_[static_cast<std::size_t>(e.v)].push_back(e.u);
    }
    for (auto& n : adjacency_) std::sort(n.begin(), n.end());
  }

  int vertex_count() const { return vertex_count_; }
  std::size_t edge_count() const { return edges_.size(); }
  const std::vector<Edge>& edges() const { return edges_; }
  const std::vector<int>& neighbors(int v) const {
    return adjacency_.at(static_cast<std::size_t>(v));
  }
  int degree(int v) const { return static_cast<int>(neighbors(v).size()); }

  bool adjacent(int u, int v) const {
    const auto& n = neighbors(u);
    return std::binary_search(n.begin(), n.end(), v);
  }

  std::optional<std::size_t> edge_index(int u, int v) const {
    const Edge key{std::min(u, v), std::max(u, v)};
    for (std::size_t i = 0; i < edges_.size(); ++i) {
      if (edges_[i] == key) return i;
    }
    return std::nullopt;
  }

  friend bool operator==(const Graph& a, const Graph& b) {
    return a.vertex_count_ == b.vertex_count_ && a.edges_ == b.edges_;
  }

 private:
  int vertex_count_ = 0;
  std::vector<Edge> edges_;
  std::vector<std::vector<int>> adjacency_;
};

/// Sorted, duplicate-free set of vertex indices.
class VertexSet {
 public:
  VertexSet() = default;
  VertexSet(std::vector<int> members) : members_(std::move(members)) {  // NOLINT
    std::sort(members_.begin(), members_.end());
    members_.erase(std::unique(members_.begin(), members_.end()), members_.end());
  }
  VertexSet(std::initializer_list<int> members) : VertexSet(std::vector<int>(members)) {}

  const std::vector<int>& members() const { return members_; }
  std::size_t size() const { return members_.size(); }
  bool empty() const { return members_.empty(); }
  bool contains(int v) const { return std::binary_search(members_.begin(), members_.end(), v); }
  auto begin() const { return members_.begin(); }
  auto end() const { return members_.end(); }

  friend bool operator==(const VertexSet&, const VertexSet&) = default;

 private:
  std::vector<int> members_;
};

inline void require_within(const Graph& g, const VertexSet& s) {
  for (int v : s) {
    if (v < 0 || v >= g.vertex_count()) {
      throw InputError("vertex " + std::to_string(v) + " not in graph with N=" +
                       std::to_string(g.vertex_count()));
    }
  }
}

inline bool is_cubic(const Graph& g) {
  for (int v = 0; v < g.vertex_count(); ++v) {
    if (g.degree(v) != 3) return false;
  }
  return true;
}

inline bool is_vertex_cover(const Graph& g, const VertexSet& s) {
  require_within(g, s);
  return std::all_of(g.edges().begin(), g.edges().end(),
                     [&](const Edge& e) { return s.contains(e.u) || s.contains(e.v); });
}

// Edges with both endpoints in `s`, in graph edge order.
inline std::vector<Edge> induced_edges(const Graph& g, const VertexSet& s) {
  require_within(g, s);
  std::vector<Edge> out;
  for (const auto& e : g.edges()) {
    if (s.contains(e.u) && s.contains(e.v)) out.push_back(e);
  }
  return out;
}

inline VertexSet complement(const Graph& g, const VertexSet& s) {
  std::vector<int> rest;
  for (int v = 0; v < g.vertex_count(); ++v) {
    if (!s.contains(v)) rest.push_back(v);
  }
  return VertexSet(std::move(rest));
}

inline const std::vector<std::string_view>& named_graph_choices() {
  static const std::vector<std::string_view> names{"K4", "K33", "Petersen", "Prism"};
  return names;
}

inline Graph named_graph(std::string_view name) {
  if (name == "K4") return Graph(4, {{0, 1}, {0, 2}, {0, 3}, {1, 2}, {1, 3}, {2, 3}});
  if (name == "K33") {
    return Graph(6, {{0, 3}, {0, 4}, {0, 5}, {1, 3}, {1, 4}, {1, 5}, {2, 3}, {2, 4}, {2, 5}});
  }
  if (name == "Prism") {
    return Graph(6, {{0, 1}, {0, 2}, {0, 3}, {1, 2}, {1, 4}, {2, 5}, {3, 4}, {3, 5}, {4, 5}});
  }
  if (name == "Petersen") {
    // Outer 5-cycle 0..4, spokes i -> i+5, inner pentagram on 5..9.
    return Graph(10, {{0, 1}, {0, 4}, {0, 5}, {1, 2}, {1, 6}, {2, 3}, {2, 7}, {3, 4},
                      {3, 8}, {4, 9}, {5, 7}, {5, 8}, {6, 8}, {6, 9}, {7, 9}});
  }
  std::string msg = "unknown graph \"" + std::string(name) + "\"; choices:";
  for (auto c : named_graph_choices()) msg += " " + std::string(c);
  throw InputError(msg);
}

// Graph file: "N M" then M lines "u v" with 0 <= u < v < N.
inline std::string format_graph(const Graph& g) {
  std::string out = std::to_string(g.vertex_count()) + " " + std::to_string(g.edge_count()) + "\n";
  for (const auto& e : g.edges()) {
    out += std::to_string(e.u) + " " + std::to_string(e.v) + "\n";
  }
  return out;
}

inline Graph parse_graph(const std::string& text, const std::string& origin = "graph") {
  std::istringstream in(text);
  std::string line;
  int line_no = 0;
  auto fail = [&](const std::string& what) {
    return ParseError(origin + ":" + std::to_string(line_no) + ": " + what);
  };
  auto read_pair = [&](long long& a, long long& b) {
    std::istringstream fields(line);
    std::string extra;
    if (!(fields >> a >> b) || (fields >> extra)) throw fail("expected two integers");
  };
  long long n = 0;
  long long m = 0;
  if (!std::getline(in, line)) throw fail("empty file");
  ++line_no;
  read_pair(n, m);
  if (n < 1 || m < 0) throw fail("bad header \"" + line + "\"");
  std::vector<Edge> edges;
  for (long long k = 0; k < m; ++k) {
    if (!std::getline(in, line)) {
      ++line_no;
      throw fail("expected " + std::to_string(m) + " edges, found " + std::to_string(k));
    }
    ++line_no;
    long long u = 0;
    long long v = 0;
    read_pair(u, v);
    if (!(0 <= u && u < v && v < n)) throw fail("edge must satisfy 0 <= u < v < N");
    edges.push_back({static_cast<int>(u), static_cast<int>(v)});
  }
  while (std::getline(in, line)) {
    ++line_no;
    if (line.find_first_not_of(" \t\r") != std::string::npos) throw fail("trailing content");
  }
  try {
    return Graph(static_cast<int>(n), std::move(edges));
  } catch (const InputError& e) {
    throw ParseError(origin + ": " + e.what());
  }
}

inline Graph read_graph(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw InputError("cannot open " + path.string());
  std::ostringstream buf;
  buf << in.rdbuf();
  return parse_graph(buf.str(), path.string());
}

inline void write_graph(const Graph& g, const std::filesystem::path& path) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw InputError("cannot write " + path.string());
  out << format_graph(g);
}

}  // namespace nswlab
