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

#include <cstdint>
#include <string>
#include <vector>

#include <json.hpp>

#include "nswlab/normal_form.hpp"
#include "nswlab/vertex_cover.hpp"

namespace nswlab {

/// Vertex and edge partition read off a normal-form allocation.
///
/// C: vertex agents holding a vertex item; I = V \ C, split into I3 (agent
/// holds all three shared items) and I2 (exactly two). E0/E1/E2: edges whose
/// agent holds that many shared items; E1 splits into E1C (touching C) and
/// E1I (inside I).
struct StructureProfile {
  VertexSet C, I, I2, I3;
  std::vector<Edge> E0, E1C, E1I, E2;
  std::int64_t t = 0;  // |E2| - |I2| - |E0|

  std::size_t vertex_count() const { return C.size() + I.size(); }
  std::size_t edge_count() const { return E0.size() + E1C.size() + E1I.size() + E2.size(); }
  std::size_t e1() const { return E1C.size() + E1I.size(); }
};

inline StructureProfile analyze_structure(const ReducedInstance& r, const Allocation& alloc) {
  if (auto violation = normal_form_violation(r, alloc); !violation.empty()) {
    throw InputError("allocation is not in normal form: " + violation);
  }
  const Graph& g = r.graph();
  std::vector<int> c, i, i2, i3;
  for (int v = 0; v < g.vertex_count(); ++v) {
    if (detail::vertex_items_held(r, alloc, v) == 1) {
      c.push_back(v);
      continue;
    }
    i.push_back(v);
    const auto held = detail::shared_held(r, alloc, r.vertex_incidences(v), r.vertex_agent(v),
                                          r.incidences().size());
    if (held == 3) {
      i3.push_back(v);
    } else if (held == 2) {
      i2.push_back(v);
    } else {
      throw Error("vertex " + std::to_string(v) + " outside C holds " + std::to_string(held) +
                  " shared items in a normal-form allocation");
    }
  }
  StructureProfile p;
  p.C = VertexSet(std::move(c));
  p.I = VertexSet(std::move(i));
  p.I2 = VertexSet(std::move(i2));
  p.I3 = VertexSet(std::move(i3));
  for (std::size_t e = 0; e < g.edge_count(); ++e) {
    const Edge& edge = g.edges()[e];
    const auto held = detail::shared_held(r, alloc, r.edge_incidences(e), r.edge_agent(e),
                                          r.incidences().size());
    if (held == 0) {
      p.E0.push_back(edge);
    } else if (held == 2) {
      p.E2.push_back(edge);
    } else if (p.C.contains(edge.u) || p.C.contains(edge.v)) {
      p.E1C.push_back(edge);
    } else {
      p.E1I.push_back(edge);
    }
  }
  p.t = static_cast<std::int64_t>(p.E2.size()) - static_cast<std::int64_t>(p.I2.size()) -
        static_cast<std::int64_t>(p.E0.size());
  return p;
}

struct IdentityCheck {
  std::string name;
  std::int64_t lhs = 0;
  std::string relation;  // "=" or ">="
  std::int64_t rhs = 0;
  bool holds = false;
};

struct IdentityReport {
  std::vector<IdentityCheck> checks;

  bool all_hold() const {
    for (const auto& c : checks) {
      if (!c.holds) return false;
    }
    return true;
  }
};

/// Counting identities and structural facts of a profile, with N, M and k
/// taken from the reduced instance.
inline IdentityReport verify_identities(const ReducedInstance& r, const StructureProfile& p) {
  const auto n = static_cast<std::int64_t>(r.vertex_count());
  const auto m = static_cast<std::int64_t>(r.edge_count());
  const auto k = static_cast<std::int64_t>(r.k());
  const auto sz = [](const auto& x) { return static_cast<std::int64_t>(x.size()); };
  IdentityReport report;
  auto eq = [&](std::string name, std::int64_t lhs, std::int64_t rhs) {
    report.checks.push_back({std::move(name), lhs, "=", rhs, lhs == rhs});
  };
  auto ge = [&](std::string name, std::int64_t lhs, std::int64_t rhs) {
    report.checks.push_back({std::move(name), lhs, ">=", rhs, lhs >= rhs});
  };
  const std::int64_t e1 = sz(p.E1C) + sz(p.E1I);

  eq("shared items: 3|I3| + 2|I2| + 2|E2| + |E1| = 3N",
     3 * sz(p.I3) + 2 * sz(p.I2) + 2 * sz(p.E2) + e1, 3 * n);
  eq("vertices: |I3| + |I2| = N - k", sz(p.I3) + sz(p.I2), n - k);
  eq("edges: |E2| + |E1| + |E0| = M", sz(p.E2) + e1 + sz(p.E0), m);
  eq("|E2| = (3k - M) + |I2| + |E0|", sz(p.E2), (3 * k - m) + sz(p.I2) + sz(p.E0));

  auto count_outside = [](const std::vector<Edge>& edges, const VertexSet& s) {
    std::int64_t bad = 0;
    for (const auto& e : edges) {
      if (!s.contains(e.u) || !s.contains(e.v)) ++bad;
    }
    return bad;
  };
  auto count_inside = [](const std::vector<Edge>& edges, const VertexSet& s) {
    std::int64_t bad = 0;
    for (const auto& e : edges) {
      if (s.contains(e.u) && s.contains(e.v)) ++bad;
    }
    return bad;
  };
  eq("E2 edges with an endpoint outside C", count_outside(p.E2, p.C), 0);
  eq("E0 edges with an endpoint outside I2", count_outside(p.E0, p.I2), 0);
  std::vector<Edge> e1_all = p.E1C;
  e1_all.insert(e1_all.end(), p.E1I.begin(), p.E1I.end());
  eq("E1 edges inside C", count_inside(e1_all, p.C), 0);
  eq("E1 edges inside I3", count_inside(e1_all, p.I3), 0);
  eq("E1I edges without an endpoint in I2", [&] {
       std::int64_t bad = 0;
       for (const auto& e : p.E1I) {
         if (!p.I2.contains(e.u) && !p.I2.contains(e.v)) ++bad;
       }
       return bad;
     }(), 0);
  eq("edges induced by I = |E1I| + |E0|", sz(induced_edges(r.graph(), p.I)),
     sz(p.E1I) + sz(p.E0));
  ge("3|I2| >= |E1I| + 2|E0|", 3 * sz(p.I2), sz(p.E1I) + 2 * sz(p.E0));
  return report;
}

// (2/3)^|I2| (1+alpha)^|E2| (1-alpha)^|E0|.
inline WelfareValue product_formula(const StructureProfile& p, const Rational& alpha) {
  const Rational one(1);
  const Rational product = pow(make_rational(2, 3), static_cast<std::int64_t>(p.I2.size())) *
                           pow(one + alpha, static_cast<std::int64_t>(p.E2.size())) *
                           pow(one - alpha, static_cast<std::int64_t>(p.E0.size()));
  return WelfareValue::from_product(product, p.vertex_count() + p.edge_count());
}

/// Upper bound on the optimal product of the reduced instance for (g, k):
/// (1+alpha)^(3k-M), times (2(1+alpha)/3)^ceil((tau-k)/3) when no size-k
/// cover exists.
inline WelfareValue soundness_bound(const Graph& g, int k, const Rational& alpha,
                                    const VertexCoverOptions& vc = {}) {
  const int tau = cover_number(g, vc);
  const auto excess = 3 * static_cast<std::int64_t>(k) - static_cast<std::int64_t>(g.edge_count());
  const Rational one(1);
  Rational product;
  if (tau <= k) {
    if (excess < 0) throw InputError("3k < M although a size-k cover exists");
    product = pow(one + alpha, excess);
  } else {
    const std::int64_t deficit = tau - k;
    product = pow(one + alpha, excess) *
              pow(Rational(2) * (one + alpha) / 3, (deficit + 2) / 3);
  }
  return WelfareValue::from_product(product,
                                    static_cast<std::size_t>(g.vertex_count()) + g.edge_count());
}

inline nlohmann::ordered_json profile_to_json(const StructureProfile& p, const Rational& alpha) {
  auto edges = [](const std::vector<Edge>& list) {
    auto out = nlohmann::ordered_json::array();
    for (const auto& e : list) out.push_back({e.u, e.v});
    return out;
  };
  nlohmann::ordered_json doc;
  doc["C"] = p.C.members();
  doc["I"] = p.I.members();
  doc["I2"] = p.I2.members();
  doc["I3"] = p.I3.members();
  doc["E0"] = edges(p.E0);
  doc["E1C"] = edges(p.E1C);
  doc["E1I"] = edges(p.E1I);
  doc["E2"] = edges(p.E2);
  doc["t"] = p.t;
  doc["product"] = to_string(product_formula(p, alpha).product);
  return doc;
}

inline nlohmann::ordered_json identities_to_json(const IdentityReport& report) {
  auto out = nlohmann::ordered_json::array();
  for (const auto& c : report.checks) {
    out.push_back({{"name", c.name},
                   {"lhs", c.lhs},
                   {"relation", c.relation},
                   {"rhs", c.rhs},
                   {"holds", c.holds}});
  }
  return out;
}

}  // namespace nswlab
