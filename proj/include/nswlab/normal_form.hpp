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

#include <cstddef>
#include <string>
#include <vector>

#include "nswlab/core.hpp"
#include "nswlab/reduction.hpp"

namespace nswlab {

// Which branch of the shared-item cascade applies, and who should hold it.
struct RuleVerdict {
  int rule = 0;  // 1..4
  std::size_t holder = 0;
};

namespace detail {

inline std::size_t vertex_items_held(const ReducedInstance& r, const Allocation& alloc, int v) {
  std::size_t held = 0;
  for (int j = 0; j < r.k(); ++j) {
    if (alloc.holder[r.vertex_item(j)] == static_cast<AgentIndex>(r.vertex_agent(v))) ++held;
  }
  return held;
}

// Shared items of `incidences` held by `agent`, not counting `skip`.
inline std::size_t shared_held(const ReducedInstance& r, const Allocation& alloc,
                               const std::vector<std::size_t>& incidences, std::size_t agent,
                               std::size_t skip) {
  std::size_t held = 0;
  for (std::size_t s : incidences) {
    if (s != skip && alloc.holder[r.shared_item(s)] == static_cast<AgentIndex>(agent)) ++held;
  }
  return held;
}

inline void require_for(const ReducedInstance& r, const Allocation& alloc) {
  if (alloc.holder.size() != r.instance().item_count()) {
    throw InputError("allocation has " + std::to_string(alloc.holder.size()) +
                     " items; this reduced instance has " +
                     std::to_string(r.instance().item_count()));
  }
  require_valid(r.instance(), alloc);
}

}  // namespace detail

/// Cascade for shared item i(v, e), evaluated in order:
///   1. a(v) holds a vertex item                 -> a(e)
///   2. a(e) holds its other shared item         -> a(v)
///   3. a(v) holds both of its other shared items -> a(e)
///   4. otherwise                                -> a(v)
inline RuleVerdict lemma2_rule(const ReducedInstance& r, const Allocation& alloc,
                               std::size_t incidence) {
  detail::require_for(r, alloc);
  const auto& inc = r.incidences().at(incidence);
  const std::size_t av = r.vertex_agent(inc.vertex);
  const std::size_t ae = r.edge_agent(inc.edge);
  if (detail::vertex_items_held(r, alloc, inc.vertex) >= 1) return {1, ae};
  if (detail::shared_held(r, alloc, r.edge_incidences(inc.edge), ae, incidence) == 1) {
    return {2, av};
  }
  if (detail::shared_held(r, alloc, r.vertex_incidences(inc.vertex), av, incidence) == 2) {
    return {3, ae};
  }
  return {4, av};
}

/// Improving moves to the normal form. Never decreases the exact product.
///
/// Pass 0 hands every item held by an uninterested agent to an interested
/// one (edge items to their edge agent, vertex items to the vertex agent
/// with the fewest, shared items to their edge agent). Pass 1 moves vertex
/// items from agents holding two or more to agents holding none. Pass 2
/// sweeps the incidences in order, moving each shared item to the holder
/// its cascade prescribes, until a sweep makes no move.
inline Allocation normalize(const ReducedInstance& r, const Allocation& input) {
  detail::require_for(r, input);
  Allocation alloc = input;
  const Instance& inst = r.instance();
  const int n_vertices = r.vertex_count();

  std::vector<std::size_t> vertex_count(static_cast<std::size_t>(n_vertices), 0);
  for (int j = 0; j < r.k(); ++j) {
    const auto h = static_cast<std::size_t>(alloc.holder[r.vertex_item(j)]);
    if (r.is_vertex_agent(h)) ++vertex_count[h];
  }
  auto fewest_vertex_items = [&] {
    std::size_t best = 0;
    for (std::size_t v = 1; v < vertex_count.size(); ++v) {
      if (vertex_count[v] < vertex_count[best]) best = v;
    }
    return best;
  };

  // Pass 0.
  for (std::size_t i = 0; i < inst.item_count(); ++i) {
    const auto holder = static_cast<std::size_t>(alloc.holder[i]);
    if (inst.utility(holder, i) > 0) continue;
    switch (r.role(i)) {
      case ItemRole::kVertex: {
        const std::size_t to = fewest_vertex_items();
        ++vertex_count[to];
        alloc.holder[i] = static_cast<AgentIndex>(r.vertex_agent(static_cast<int>(to)));
        break;
      }
      case ItemRole::kEdge:
        alloc.holder[i] = static_cast<AgentIndex>(r.edge_agent(i - r.edge_item(0)));
        break;
      case ItemRole::kShared: {
        const auto& inc = r.incidences()[i - r.shared_item(0)];
        alloc.holder[i] = static_cast<AgentIndex>(r.edge_agent(inc.edge));
        break;
      }
    }
  }

  // Pass 1.
  for (;;) {
    std::size_t from = 0;
    for (std::size_t v = 1; v < vertex_count.size(); ++v) {
      if (vertex_count[v] > vertex_count[from]) from = v;
    }
    if (vertex_count.empty() || vertex_count[from] < 2) break;
    const std::size_t to = fewest_vertex_items();  // holds none since k <= N
    for (int j = 0; j < r.k(); ++j) {
      if (alloc.holder[r.vertex_item(j)] == static_cast<AgentIndex>(from)) {
        alloc.holder[r.vertex_item(j)] = static_cast<AgentIndex>(to);
        break;
      }
    }
    --vertex_count[from];
    ++vertex_count[to];
  }

  // Pass 2. Each move strictly raises the (zero count, product) order for
  // alpha strictly inside (1/3, 1/2); the sweep cap only matters at the
  // boundary values, where some moves are neutral.
  const std::size_t incidences = r.incidences().size();
  const std::size_t max_sweeps = 16 * incidences * incidences + 16;
  for (std::size_t sweep = 0;; ++sweep) {
    if (sweep == max_sweeps) {
      throw Error("normalization did not reach a fixpoint within " + std::to_string(max_sweeps) +
                  " sweeps");
    }
    bool moved = false;
    for (std::size_t s = 0; s < incidences; ++s) {
      const RuleVerdict verdict = lemma2_rule(r, alloc, s);
      AgentIndex& holder = alloc.holder[r.shared_item(s)];
      if (holder != static_cast<AgentIndex>(verdict.holder)) {
        holder = static_cast<AgentIndex>(verdict.holder);
        moved = true;
      }
    }
    if (!moved) break;
  }
  return alloc;
}

// First normal-form violation, as a human-readable message; empty if none.
inline std::string normal_form_violation(const ReducedInstance& r, const Allocation& alloc) {
  detail::require_for(r, alloc);
  const Instance& inst = r.instance();
  for (std::size_t i = 0; i < inst.item_count(); ++i) {
    const auto holder = static_cast<std::size_t>(alloc.holder[i]);
    if (!inst.interested(i).empty() && inst.utility(holder, i) == 0) {
      return "item \"" + inst.items()[i] + "\" is held by \"" + inst.agents()[holder] +
             "\", who does not value it";
    }
  }
  for (int v = 0; v < r.vertex_count(); ++v) {
    if (detail::vertex_items_held(r, alloc, v) > 1) {
      return "agent \"" + inst.agents()[r.vertex_agent(v)] + "\" holds more than one vertex item";
    }
  }
  for (std::size_t s = 0; s < r.incidences().size(); ++s) {
    const RuleVerdict verdict = lemma2_rule(r, alloc, s);
    if (alloc.holder[r.shared_item(s)] != static_cast<AgentIndex>(verdict.holder)) {
      return "shared item \"" + inst.items()[r.shared_item(s)] + "\" violates rule " +
             std::to_string(verdict.rule) + " (should go to \"" + inst.agents()[verdict.holder] +
             "\")";
    }
  }
  return {};
}

}  // namespace nswlab
