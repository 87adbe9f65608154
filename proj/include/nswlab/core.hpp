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
#include <cmath>
#include <compare>
#include <cstddef>
#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <unordered_map>
#include <utility>
#include <vector>

#include "nswlab/errors.hpp"
#include "nswlab/rational.hpp"

namespace nswlab {

using AgentIndex = std::int32_t;
inline constexpr AgentIndex kUnassigned = -1;

struct UtilityEntry {
  std::size_t agent;
  Rational value;

  friend bool operator==(const UtilityEntry&, const UtilityEntry&) = default;
};

/// Agents, items, and an additive utility matrix stored sparsely per item.
///
/// Absent entries are exact zeros. Each item's entry list is sorted by agent
/// index and holds only positive values. Immutable after construction.
class Instance {
 public:
  Instance(std::vector<std::string> agents, std::vector<std::string> items,
           std::vector<std::vector<UtilityEntry>> utilities)
      : agents_(std::move(agents)), items_(std::move(items)), utilities_(std::move(utilities)) {
    if (agents_.empty()) throw InputError("instance needs at least one agent");
    if (utilities_.size() != items_.size()) {
      throw InputError("utility table has " + std::to_string(utilities_.size()) +
                       " rows for " + std::to_string(items_.size()) + " items");
    }
    for (std::size_t a = 0; a < agents_.size(); ++a) {
      if (!agent_index_.emplace(agents_[a], a).second) {
        throw InputError("duplicate agent identifier \"" + agents_[a] + "\"");
      }
    }
    for (std::size_t i = 0; i < items_.size(); ++i) {
      if (!item_index_.emplace(items_[i], i).second) {
        throw InputError("duplicate item identifier \"" + items_[i] + "\"");
      }
      auto& row = utilities_[i];
      for (const auto& entry : row) {
        if (entry.agent >= agents_.size()) {
          throw InputError("item \"" + items_[i] + "\" references agent #" +
                           std::to_string(entry.agent));
        }
        if (entry.value < 0) {
          throw InputError("negative utility for item \"" + items_[i] + "\"");
        }
      }
      std::erase_if(row, [](const UtilityEntry& e) { return e.value == 0; });
      std::sort(row.begin(), row.end(),
                [](const UtilityEntry& x, const UtilityEntry& y) { return x.agent < y.agent; });
      for (std::size_t k = 1; k < row.size(); ++k) {
        if (row[k].agent == row[k - 1].agent) {
          throw InputError("item \"" + items_[i] + "\" lists agent \"" +
                           agents_[row[k].agent] + "\" twice");
        }
      }
    }
  }

  std::size_t agent_count() const { return agents_.size(); }
  std::size_t item_count() const { return items_.size(); }
  const std::vector<std::string>& agents() const { return agents_; }
  const std::vector<std::string>& items() const { return items_; }

  // Agents with positive utility for `item`, sorted by agent index.
  std::span<const UtilityEntry> interested(std::size_t item) const { return utilities_.at(item); }

  Rational utility(std::size_t agent, std::size_t item) const {
    for (const auto& e : utilities_.at(item)) {
      if (e.agent == agent) return e.value;
    }
    return Rational(0);
  }

  std::optional<std::size_t> agent_index(std::string_view name) const {
    auto it = agent_index_.find(std::string(name));
    if (it == agent_index_.end()) return std::nullopt;
    return it->second;
  }
  std::optional<std::size_t> item_index(std::string_view name) const {
    auto it = item_index_.find(std::string(name));
    if (it == item_index_.end()) return std::nullopt;
    return it->second;
  }

  friend bool operator==(const Instance& a, const Instance& b) {
    return a.agents_ == b.agents_ && a.items_ == b.items_ && a.utilities_ == b.utilities_;
  }

 private:
  std::vector<std::string> agents_;
  std::vector<std::string> items_;
  std::vector<std::vector<UtilityEntry>> utilities_;
  std::unordered_map<std::string, std::size_t> agent_index_;
  std::unordered_map<std::string, std::size_t> item_index_;
};

/// holder[i] is the agent receiving item i. Ordering is lexicographic on the
/// holder vector, which is the tie-break the exact solver uses.
struct Allocation {
  std::vector<AgentIndex> holder;

  friend auto operator<=>(const Allocation&, const Allocation&) = default;
};

// Empty iff `alloc` is a total partition of the items among the agents.
inline std::vector<std::string> validate(const Instance& instance, const Allocation& alloc) {
  std::vector<std::string> violations;
  if (alloc.holder.size() != instance.item_count()) {
    violations.push_back("allocation lists " + std::to_string(alloc.holder.size()) +
                         " items but the instance has " + std::to_string(instance.item_count()));
  }
  const std::size_t common = std::min(alloc.holder.size(), instance.item_count());
  for (std::size_t i = 0; i < common; ++i) {
    const AgentIndex a = alloc.holder[i];
    if (a == kUnassigned) {
      violations.push_back("item \"" + instance.items()[i] + "\" is unassigned");
    } else if (a < 0 || static_cast<std::size_t>(a) >= instance.agent_count()) {
      violations.push_back("item \"" + instance.items()[i] + "\" is assigned to unknown agent #" +
                           std::to_string(a));
    }
  }
  return violations;
}

inline void require_valid(const Instance& instance, const Allocation& alloc) {
  auto violations = validate(instance, alloc);
  if (!violations.empty()) {
    std::string msg = "invalid allocation: " + violations.front();
    if (violations.size() > 1) msg += " (+" + std::to_string(violations.size() - 1) + " more)";
    throw InputError(msg);
  }
}

// Utilities of every agent, in agent order.
inline std::vector<Rational> agent_utilities(const Instance& instance, const Allocation& alloc) {
  require_valid(instance, alloc);
  std::vector<Rational> u(instance.agent_count());
  for (std::size_t i = 0; i < instance.item_count(); ++i) {
    const auto holder = static_cast<std::size_t>(alloc.holder[i]);
    for (const auto& e : instance.interested(i)) {
      if (e.agent == holder) u[holder] += e.value;
    }
  }
  return u;
}

inline Rational agent_utility(const Instance& instance, const Allocation& alloc,
                              std::size_t agent) {
  if (agent >= instance.agent_count()) {
    throw InputError("unknown agent #" + std::to_string(agent));
  }
  require_valid(instance, alloc);
  Rational total(0);
  for (std::size_t i = 0; i < instance.item_count(); ++i) {
    if (static_cast<std::size_t>(alloc.holder[i]) == agent) total += instance.utility(agent, i);
  }
  return total;
}

inline Rational agent_utility(const Instance& instance, const Allocation& alloc,
                              std::string_view agent) {
  auto idx = instance.agent_index(agent);
  if (!idx) throw InputError("unknown agent \"" + std::string(agent) + "\"");
  return agent_utility(instance, alloc, *idx);
}

/// Nash social welfare in exact product form plus a floating log-geomean.
///
/// `zero_count` and `nonzero_product` carry the tie-break used when two
/// products are both zero.
struct WelfareValue {
  Rational product{0};
  double log_geomean = -INFINITY;
  std::size_t agent_count = 0;
  std::size_t zero_count = 0;
  Rational nonzero_product{1};

  static WelfareValue from_utilities(std::span<const Rational> utilities) {
    WelfareValue w;
    w.agent_count = utilities.size();
    double log_sum = 0.0;
    for (const auto& u : utilities) {
      if (u == 0) {
        ++w.zero_count;
      } else {
        w.nonzero_product *= u;
        log_sum += log_of(u);
      }
    }
    if (w.zero_count == 0) {
      w.product = w.nonzero_product;
      w.log_geomean = utilities.empty() ? 0.0 : log_sum / static_cast<double>(utilities.size());
    }
    return w;
  }

  // Closed-form values: only the product is known, so a zero product is
  // recorded as a single starving agent.
  static WelfareValue from_product(Rational product, std::size_t agent_count) {
    WelfareValue w;
    w.agent_count = agent_count;
    w.product = product;
    if (product == 0) {
      w.zero_count = 1;
    } else {
      w.nonzero_product = product;
      w.log_geomean = log_of(product) / static_cast<double>(agent_count);
    }
    return w;
  }

  // exp(log_geomean); 0 when some agent starves.
  double nsw() const { return zero_count == 0 ? std::exp(log_geomean) : 0.0; }
};

// Exact product first; among zero products, fewer starving agents wins, then
// the larger product of the nonzero utilities.
inline std::strong_ordering compare(const WelfareValue& a, const WelfareValue& b) {
  if (a.zero_count != b.zero_count) return b.zero_count <=> a.zero_count;
  if (a.nonzero_product < b.nonzero_product) return std::strong_ordering::less;
  if (b.nonzero_product < a.nonzero_product) return std::strong_ordering::greater;
  return std::strong_ordering::equal;
}

inline WelfareValue nsw_product(const Instance& instance, const Allocation& alloc) {
  const auto u = agent_utilities(instance, alloc);
  return WelfareValue::from_utilities(u);
}

}  // namespace nswlab
