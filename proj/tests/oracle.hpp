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

// Brute-force reference implementations. Nothing here calls the solver,
// the vertex cover search or the normalizer.

#include <algorithm>
#include <bit>
#include <cstdint>
#include <map>
#include <utility>
#include <vector>

#include "nswlab/nswlab.hpp"

namespace oracle {

using nswlab::Allocation;
using nswlab::AgentIndex;
using nswlab::BigInt;
using nswlab::Graph;
using nswlab::Instance;
using nswlab::Rational;

// Minimum vertex cover size by subset enumeration.
inline int cover_number(const Graph& g) {
  const int n = g.vertex_count();
  int best = n;
  for (std::uint32_t s = 0; s < (1U << n); ++s) {
    const int size = std::popcount(s);
    if (size >= best) continue;
    bool covers = true;
    for (const auto& e : g.edges()) {
      if (!((s >> e.u) & 1U) && !((s >> e.v) & 1U)) {
        covers = false;
        break;
      }
    }
    if (covers) best = size;
  }
  return best;
}

inline std::vector<nswlab::VertexSet> all_covers(const Graph& g) {
  std::vector<nswlab::VertexSet> out;
  const int n = g.vertex_count();
  for (std::uint32_t s = 0; s < (1U << n); ++s) {
    bool covers = true;
    for (const auto& e : g.edges()) {
      if (!((s >> e.u) & 1U) && !((s >> e.v) & 1U)) covers = false;
    }
    if (!covers) continue;
    std::vector<int> members;
    for (int v = 0; v < n; ++v) {
      if ((s >> v) & 1U) members.push_back(v);
    }
    out.emplace_back(std::move(members));
  }
  return out;
}

// (zero agents, product of the nonzero utilities), compared as
// "fewer zeros first, then larger product".
struct Key {
  std::size_t zeros = 0;
  Rational nonzero{1};
};

inline bool better(const Key& a, const Key& b) {
  if (a.zeros != b.zeros) return a.zeros < b.zeros;
  return a.nonzero > b.nonzero;
}

inline Key key_of(const Instance& inst, const std::vector<AgentIndex>& holder) {
  std::vector<Rational> u(inst.agent_count(), Rational(0));
  for (std::size_t i = 0; i < holder.size(); ++i) {
    u[static_cast<std::size_t>(holder[i])] += inst.utility(static_cast<std::size_t>(holder[i]), i);
  }
  Key k;
  for (const auto& x : u) {
    if (x == 0) {
      ++k.zeros;
    } else {
      k.nonzero *= x;
    }
  }
  return k;
}

struct Optimum {
  Allocation allocation;
  Key key;
  Rational product() const { return key.zeros == 0 ? key.nonzero : Rational(0); }
};

// Every allocation, in lexicographic order of holder vectors; the first
// strictly best one wins.
inline Optimum exhaustive(const Instance& inst) {
  const std::size_t m = inst.item_count();
  const auto n = static_cast<AgentIndex>(inst.agent_count());
  std::vector<AgentIndex> holder(m, 0);
  Optimum best{Allocation{holder}, key_of(inst, holder)};
  for (;;) {
    std::size_t pos = m;
    while (pos > 0 && holder[pos - 1] == n - 1) holder[--pos] = 0;
    if (pos == 0) break;
    ++holder[pos - 1];
    const Key k = key_of(inst, holder);
    if (better(k, best.key)) best = {Allocation{holder}, k};
  }
  return best;
}

/// Optimal product of the reduced instance of (g, k, alpha).
///
/// Vertices are processed one at a time; each picks how many vertex items it
/// takes and which of its shared items it keeps (the rest go to the edge
/// agents). The state is the set of open edges whose processed endpoint kept
/// its shared item, plus the number of vertex items used. Edge agents always
/// hold their edge item. Utilities are scaled to integers: vertex agents by 3,
/// edge agents by alpha's denominator.
inline Rational reduced_optimum(const Graph& g, int k, const Rational& alpha) {
  using u128 = unsigned __int128;
  const int n = g.vertex_count();
  const auto p = static_cast<std::uint64_t>(boost::multiprecision::numerator(alpha));
  const auto q = static_cast<std::uint64_t>(boost::multiprecision::denominator(alpha));

  // Order: greedily keep the number of open edges small.
  std::vector<int> order;
  std::vector<char> done(static_cast<std::size_t>(n), 0);
  for (int step = 0; step < n; ++step) {
    int pick = -1;
    int best_score = 1 << 30;
    for (int v = 0; v < n; ++v) {
      if (done[static_cast<std::size_t>(v)]) continue;
      int score = 0;
      for (int w : g.neighbors(v)) score += done[static_cast<std::size_t>(w)] ? -1 : 1;
      if (score < best_score) {
        best_score = score;
        pick = v;
      }
    }
    done[static_cast<std::size_t>(pick)] = 1;
    order.push_back(pick);
  }

  std::vector<char> processed(static_cast<std::size_t>(n), 0);
  std::map<std::pair<std::uint64_t, int>, u128> states{{{0, 0}, 1}};
  for (int v : order) {
    const auto& nb = g.neighbors(v);
    std::map<std::pair<std::uint64_t, int>, u128> next;
    for (const auto& [state, value] : states) {
      const auto [bits, used] = state;
      for (int c = 0; used + c <= k; ++c) {
        for (unsigned mask = 0; mask < (1U << nb.size()); ++mask) {
          u128 factor = 3 * static_cast<u128>(c) + static_cast<u128>(std::popcount(mask));
          std::uint64_t out = bits;
          for (std::size_t j = 0; j < nb.size(); ++j) {
            const auto e = *g.edge_index(v, nb[j]);
            const unsigned keep = (mask >> j) & 1U;
            if (processed[static_cast<std::size_t>(nb[j])]) {
              const unsigned other = static_cast<unsigned>((bits >> e) & 1U);
              factor *= (q - p) + p * (2 - keep - other);
              out &= ~(std::uint64_t{1} << e);
            } else if (keep) {
              out |= std::uint64_t{1} << e;
            }
          }
          u128& slot = next[{out, used + c}];
          slot = std::max(slot, value * factor);
        }
      }
    }
    processed[static_cast<std::size_t>(v)] = 1;
    states = std::move(next);
  }
  const u128 best = states[{0, k}];
  auto to_big = [](u128 x) {
    BigInt b = static_cast<std::uint64_t>(x >> 64);
    b <<= 64;
    b += static_cast<std::uint64_t>(x);
    return b;
  };
  BigInt scale = 1;
  for (int v = 0; v < n; ++v) scale *= 3;
  for (std::size_t e = 0; e < g.edge_count(); ++e) scale *= q;
  return Rational(to_big(best), scale);
}

}  // namespace oracle
