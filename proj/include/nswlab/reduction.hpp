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

#include <array>
#include <cmath>
#include <cstddef>
#include <filesystem>
#include <string>
#include <vector>

#include <json.hpp>

#include "nswlab/core.hpp"
#include "nswlab/graph.hpp"
#include "nswlab/io.hpp"

namespace nswlab {

/// `alpha` must lie strictly inside (1/3, 1/2); `allow_boundary` admits the
/// closed interval. `vertex_item_count` is the number of identical vertex
/// items (k), 0 <= k <= N.
struct ReductionParams {
  Rational alpha = make_rational(2, 5);
  int vertex_item_count = 0;
  bool allow_boundary = false;
};

inline void check_alpha(const Rational& alpha, bool allow_boundary) {
  const Rational lo = make_rational(1, 3);
  const Rational hi = make_rational(1, 2);
  const bool inside = allow_boundary ? (lo <= alpha && alpha <= hi) : (lo < alpha && alpha < hi);
  if (!inside) {
    throw InputError("alpha=" + to_string(alpha) + " must lie in " +
                     (allow_boundary ? "[1/3, 1/2]" : "(1/3, 1/2); pass --allow-boundary for the endpoints"));
  }
}

// Shared item i(v, e).
struct Incidence {
  int vertex = 0;
  std::size_t edge = 0;
};

enum class ItemRole { kVertex, kEdge, kShared };

/// The gadget instance built from a cubic graph, with the bookkeeping that
/// ties agents and items back to vertices, edges and incidences.
///
/// Agents: a(v) = v, then a(e) = N + e. Items: k vertex items, then one edge
/// item per edge, then one shared item per incidence in (v, e) order.
class ReducedInstance {
 public:
  ReducedInstance(Instance instance, Graph graph, ReductionParams params,
                  std::vector<Incidence> incidences)
      : instance_(std::move(instance)),
        graph_(std::move(graph)),
        params_(std::move(params)),
        incidences_(std::move(incidences)),
        by_vertex_(static_cast<std::size_t>(graph_.vertex_count())),
        by_edge_(graph_.edge_count()) {
    for (std::size_t s = 0; s < incidences_.size(); ++s) {
      by_vertex_[static_cast<std::size_t>(incidences_[s].vertex)].push_back(s);
      by_edge_[incidences_[s].edge].push_back(s);
    }
  }

  const Instance& instance() const { return instance_; }
  const Graph& graph() const { return graph_; }
  const ReductionParams& params() const { return params_; }
  const Rational& alpha() const { return params_.alpha; }
  int k() const { return params_.vertex_item_count; }
  int vertex_count() const { return graph_.vertex_count(); }
  std::size_t edge_count() const { return graph_.edge_count(); }

  std::size_t vertex_agent(int v) const { return static_cast<std::size_t>(v); }
  std::size_t edge_agent(std::size_t e) const {
    return static_cast<std::size_t>(vertex_count()) + e;
  }
  bool is_vertex_agent(std::size_t agent) const {
    return agent < static_cast<std::size_t>(vertex_count());
  }

  std::size_t vertex_item(int j) const { return static_cast<std::size_t>(j); }
  std::size_t edge_item(std::size_t e) const { return static_cast<std::size_t>(k()) + e; }
  std::size_t shared_item(std::size_t incidence) const {
    return static_cast<std::size_t>(k()) + edge_count() + incidence;
  }

  ItemRole role(std::size_t item) const {
    if (item < static_cast<std::size_t>(k())) return ItemRole::kVertex;
    if (item < static_cast<std::size_t>(k()) + edge_count()) return ItemRole::kEdge;
    return ItemRole::kShared;
  }

  const std::vector<Incidence>& incidences() const { return incidences_; }
  // Incidence indices touching vertex v (3) or edge e (2), ascending.
  const std::vector<std::size_t>& vertex_incidences(int v) const {
    return by_vertex_.at(static_cast<std::size_t>(v));
  }
  const std::vector<std::size_t>& edge_incidences(std::size_t e) const { return by_edge_.at(e); }

 private:
  Instance instance_;
  Graph graph_;
  ReductionParams params_;
  std::vector<Incidence> incidences_;
  std::vector<std::vector<std::size_t>> by_vertex_;
  std::vector<std::vector<std::size_t>> by_edge_;
};

inline std::string vertex_agent_name(int v) { return "v:" + std::to_string(v); }
inline std::string edge_agent_name(const Edge& e) { return "e:" + to_string(e); }
inline std::string vertex_item_name(int j) { return "vi:" + std::to_string(j); }
inline std::string edge_item_name(const Edge& e) { return "ei:" + to_string(e); }
inline std::string shared_item_name(int v, const Edge& e) {
  return "si:" + std::to_string(v) + "@" + to_string(e);
}

inline ReducedInstance build_instance(const Graph& g, const ReductionParams& params) {
  if (!is_cubic(g)) throw InputError("the reduction needs a cubic (3-regular) graph");
  check_alpha(params.alpha, params.allow_boundary);
  const int n_vertices = g.vertex_count();
  const int k = params.vertex_item_count;
  if (k < 0 || k > n_vertices) {
    throw InputError("vertex item count k=" + std::to_string(k) + " must lie in [0, N=" +
                     std::to_string(n_vertices) + "]");
  }
  const std::size_t m_edges = g.edge_count();
  const Rational one(1);
  const Rational third = make_rational(1, 3);

  std::vector<std::string> agents;
  for (int v = 0; v < n_vertices; ++v) agents.push_back(vertex_agent_name(v));
  for (const auto& e : g.edges()) agents.push_back(edge_agent_name(e));

  std::vector<std::string> items;
  std::vector<std::vector<UtilityEntry>> utilities;
  for (int j = 0; j < k; ++j) {
    items.push_back(vertex_item_name(j));
    std::vector<UtilityEntry> row;
    for (int v = 0; v < n_vertices; ++v) row.push_back({static_cast<std::size_t>(v), one});
    utilities.push_back(std::move(row));
  }
  for (std::size_t e = 0; e < m_edges; ++e) {
    items.push_back(edge_item_name(g.edges()[e]));
    utilities.push_back({{static_cast<std::size_t>(n_vertices) + e, one - params.alpha}});
  }
  std::vector<Incidence> incidences;
  for (int v = 0; v < n_vertices; ++v) {
    for (std::size_t e = 0; e < m_edges; ++e) {
      const auto& edge = g.edges()[e];
      if (edge.u != v && edge.v != v) continue;
      incidences.push_back({v, e});
      items.push_back(shared_item_name(v, edge));
      utilities.push_back({{static_cast<std::size_t>(v), third},
                           {static_cast<std::size_t>(n_vertices) + e, params.alpha}});
    }
  }
  return ReducedInstance(Instance(std::move(agents), std::move(items), std::move(utilities)), g,
                         params, std::move(incidences));
}

/// Allocation built from a vertex cover of size k: cover vertices take one
/// vertex item each, the others take their three shared items, and every
/// edge agent takes its edge item plus the shared items left on its edge.
inline Allocation completeness_allocation(const ReducedInstance& r, const VertexSet& cover) {
  if (!is_vertex_cover(r.graph(), cover)) throw InputError("not a vertex cover");
  if (static_cast<int>(cover.size()) != r.k()) {
    throw InputError("cover has " + std::to_string(cover.size()) + " vertices but k=" +
                     std::to_string(r.k()));
  }
  Allocation alloc{std::vector<AgentIndex>(r.instance().item_count(), kUnassigned)};
  int j = 0;
  for (int v : cover) alloc.holder[r.vertex_item(j++)] = static_cast<AgentIndex>(r.vertex_agent(v));
  for (std::size_t e = 0; e < r.edge_count(); ++e) {
    alloc.holder[r.edge_item(e)] = static_cast<AgentIndex>(r.edge_agent(e));
  }
  for (std::size_t s = 0; s < r.incidences().size(); ++s) {
    const auto& inc = r.incidences()[s];
    const std::size_t holder =
        cover.contains(inc.vertex) ? r.edge_agent(inc.edge) : r.vertex_agent(inc.vertex);
    alloc.holder[r.shared_item(s)] = static_cast<AgentIndex>(holder);
  }
  return alloc;
}

// (1 + alpha)^(3k - M): the product reached by any size-k cover.
inline WelfareValue completeness_value(const Graph& g, int k, const Rational& alpha) {
  const auto excess = 3 * static_cast<std::int64_t>(k) - static_cast<std::int64_t>(g.edge_count());
  if (excess < 0) {
    throw InputError("3k < M (k=" + std::to_string(k) + ", M=" + std::to_string(g.edge_count()) +
                     "): no vertex cover of size k can exist in a cubic graph");
  }
  return WelfareValue::from_product(pow(Rational(1) + alpha, excess),
                                    static_cast<std::size_t>(g.vertex_count()) + g.edge_count());
}

struct HardnessConstants {
  Rational alpha;
  double c_min = 0.5103;
  double c_max = 0.5155;
  double beta = 0.0;
  double gamma = 0.0;
  double mu = 0.0;
};

inline HardnessConstants hardness_constants(const Rational& alpha, double c_min = 0.5103,
                                            double c_max = 0.5155) {
  if (!(c_min > 0.5)) throw InputError("c_min must exceed 0.5 (beta would be <= 0)");
  if (!(c_max > c_min)) throw InputError("c_max must exceed c_min");
  if (!(alpha > 0 && alpha < 1)) throw InputError("alpha must lie in (0, 1)");
  HardnessConstants h;
  h.alpha = alpha;
  h.c_min = c_min;
  h.c_max = c_max;
  h.beta = 3.0 * (c_min - 0.5);
  h.gamma = (c_max - c_min) / 3.0;
  const double ratio = 2.0 * (1.0 + to_double(alpha)) / 3.0;
  h.mu = std::pow(ratio, -h.gamma / 2.5);
  return h;
}

struct InequalityCheck {
  std::string name;
  Rational value;  // compared against 1
  bool holds = false;
};

/// The four strict ratio conditions behind the normal-form exchange moves.
struct InequalityReport {
  std::array<InequalityCheck, 4> checks;

  bool all_hold() const {
    for (const auto& c : checks) {
      if (!c.holds) return false;
    }
    return true;
  }
};

inline InequalityReport lemma2_inequalities(const Rational& alpha) {
  if (!(alpha > 0 && alpha < 1)) throw InputError("alpha must lie in (0, 1)");
  const Rational one(1);
  const std::array<std::pair<const char*, Rational>, 4> values{{
      {"(3/4)(1+alpha) > 1", make_rational(3, 4) * (one + alpha)},
      {"(3/2)/(1+alpha) > 1", make_rational(3, 2) / (one + alpha)},
      {"(2/3)/(1-alpha) > 1", make_rational(2, 3) / (one - alpha)},
      {"2(1-alpha) > 1", Rational(2) * (one - alpha)},
  }};
  InequalityReport report;
  for (std::size_t i = 0; i < 4; ++i) {
    report.checks[i] = {values[i].first, values[i].second, values[i].second > one};
  }
  return report;
}

// Sidecar naming every agent and item by role, plus what is needed to
// rebuild the instance.
inline nlohmann::ordered_json tags_to_json(const ReducedInstance& r) {
  const auto& g = r.graph();
  nlohmann::ordered_json doc;
  doc["alpha"] = to_string(r.alpha());
  doc["k"] = r.k();
  doc["allow_boundary"] = r.params().allow_boundary;
  nlohmann::ordered_json graph;
  graph["N"] = g.vertex_count();
  auto edges = nlohmann::ordered_json::array();
  for (const auto& e : g.edges()) edges.push_back({e.u, e.v});
  graph["edges"] = std::move(edges);
  doc["graph"] = std::move(graph);

  auto agents = nlohmann::ordered_json::object();
  for (int v = 0; v < g.vertex_count(); ++v) {
    agents[vertex_agent_name(v)] = {{"role", "vertex"}, {"vertex", v}};
  }
  for (const auto& e : g.edges()) {
    agents[edge_agent_name(e)] = {{"role", "edge"}, {"edge", {e.u, e.v}}};
  }
  doc["agents"] = std::move(agents);

  auto items = nlohmann::ordered_json::object();
  for (int j = 0; j < r.k(); ++j) {
    items[vertex_item_name(j)] = {{"role", "vertex-item"}, {"index", j}};
  }
  for (const auto& e : g.edges()) {
    items[edge_item_name(e)] = {{"role", "edge-item"}, {"edge", {e.u, e.v}}};
  }
  for (const auto& inc : r.incidences()) {
    const auto& e = g.edges()[inc.edge];
    items[shared_item_name(inc.vertex, e)] = {
        {"role", "shared"}, {"vertex", inc.vertex}, {"edge", {e.u, e.v}}};
  }
  doc["items"] = std::move(items);
  return doc;
}

inline void write_tags(const ReducedInstance& r, const std::filesystem::path& path) {
  detail::spit(path, tags_to_json(r).dump(2) + "\n");
}

// Rebuilds from the tags and checks the instance file agrees.
inline ReducedInstance reduced_from_json(const Instance& instance, const nlohmann::json& tags,
                                         const std::string& origin = "tags") {
  ReductionParams params;
  Graph graph;
  try {
    params.alpha = parse_rational(tags.at("alpha").get<std::string>());
    params.vertex_item_count = tags.at("k").get<int>();
    params.allow_boundary = tags.value("allow_boundary", false);
    const auto& gj = tags.at("graph");
    std::vector<Edge> edges;
    for (const auto& e : gj.at("edges")) edges.push_back({e.at(0).get<int>(), e.at(1).get<int>()});
    graph = Graph(gj.at("N").get<int>(), std::move(edges));
  } catch (const nlohmann::json::exception& e) {
    throw ParseError(origin + ": " + e.what());
  } catch (const InputError& e) {
    throw ParseError(origin + ": " + e.what());
  }
  ReducedInstance r = build_instance(graph, params);
  if (!(r.instance() == instance)) {
    throw InputError(origin + ": instance does not match the reduction described by the tags");
  }
  return r;
}

inline ReducedInstance read_reduced(const std::filesystem::path& instance_path,
                                    const std::filesystem::path& tags_path) {
  const Instance instance = read_instance(instance_path);
  return reduced_from_json(
      instance, detail::parse_json(detail::slurp(tags_path), tags_path.string()),
      tags_path.string());
}

}  // namespace nswlab
