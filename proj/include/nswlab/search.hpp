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
#include <atomic>
#include <chrono>
#include <cmath>
#include <cstdint>
#include <functional>
#include <limits>
#include <map>
#include <mutex>
#include <optional>
#include <thread>
#include <vector>

#include "nswlab/core.hpp"

namespace nswlab {

struct SearchConfig {
  std::size_t item_limit = 64;  // choice points left after forced items
  unsigned worker_count = 1;
  std::optional<std::chrono::milliseconds> time_limit;
};

struct SolveResult {
  Allocation allocation;
  WelfareValue value;
  std::uint64_t nodes = 0;
};

// Thrown when the time limit expires; carries the best allocation seen.
class SearchTimeout : public ResourceError {
 public:
  SearchTimeout(const std::string& what, std::optional<SolveResult> partial)
      : ResourceError(what), partial_(std::move(partial)) {}
  const std::optional<SolveResult>& partial() const { return partial_; }

 private:
  std::optional<SolveResult> partial_;
};

namespace detail {

// Utilities rescaled by the lcm of all denominators, so agent totals are
// exact int64 sums and products compare as big integers.
struct ScaledProblem {
  std::size_t agents = 0;
  std::size_t items = 0;
  struct Candidate {
    std::size_t agent;
    std::int64_t value;
  };
  std::vector<std::vector<Candidate>> interested;  // per item, ascending agent
  std::vector<AgentIndex> forced;                  // per item; kUnassigned for choice items
  std::vector<std::size_t> choices;                // choice items in item order
  std::vector<std::ptrdiff_t> twin;  // per choice: earlier identical choice, or -1
  // Interest entries of the choice items, flattened; choice c owns
  // [entry_offset[c], entry_offset[c + 1]).
  std::vector<std::size_t> entry_offset{0};
  std::vector<std::size_t> entry_agent;
  std::vector<double> entry_value;

  explicit ScaledProblem(const Instance& instance)
      : agents(instance.agent_count()), items(instance.item_count()) {
    BigInt scale(1);
    for (std::size_t i = 0; i < items; ++i) {
      for (const auto& e : instance.interested(i)) {
        scale = boost::multiprecision::lcm(scale, boost::multiprecision::denominator(e.value));
      }
    }
    const BigInt cap(std::numeric_limits<std::int64_t>::max() / 4);
    std::vector<BigInt> totals(agents);
    interested.resize(items);
    forced.assign(items, kUnassigned);
    std::map<std::vector<UtilityEntry>, std::size_t, ColumnLess> last_of_column;
    for (std::size_t i = 0; i < items; ++i) {
      const auto row = instance.interested(i);
      for (const auto& e : row) {
        const BigInt scaled = boost::multiprecision::numerator(e.value) *
                              (scale / boost::multiprecision::denominator(e.value));
        totals[e.agent] += scaled;
        if (scaled > cap || totals[e.agent] > cap) {
          throw ResourceError("utilities are too large for the exact search after rescaling");
        }
        interested[i].push_back({e.agent, scaled.convert_to<std::int64_t>()});
      }
      if (row.empty()) {
        forced[i] = 0;
      } else if (row.size() == 1) {
        forced[i] = static_cast<AgentIndex>(row.front().agent);
      } else {
        std::vector<UtilityEntry> column(row.begin(), row.end());
        auto it = last_of_column.find(column);
        twin.push_back(it == last_of_column.end() ? -1
                                                  : static_cast<std::ptrdiff_t>(it->second));
        last_of_column[column] = choices.size();
        choices.push_back(i);
        for (const auto& cand : interested[i]) {
          entry_agent.push_back(cand.agent);
          entry_value.push_back(static_cast<double>(cand.value));
        }
        entry_offset.push_back(entry_agent.size());
      }
    }
  }

  struct ColumnLess {
    bool operator()(const std::vector<UtilityEntry>& a, const std::vector<UtilityEntry>& b) const {
      return std::lexicographical_compare(
          a.begin(), a.end(), b.begin(), b.end(), [](const UtilityEntry& x, const UtilityEntry& y) {
            if (x.agent != y.agent) return x.agent < y.agent;
            return x.value < y.value;
          });
    }
  };
};

// Search key: fewer zero-utility agents first, then the product of the
// nonzero ones. `log` is approximate; `product` is exact when present.
struct Key {
  std::size_t zeros = std::numeric_limits<std::size_t>::max();
  double log = -INFINITY;
};

inline constexpr double kLogSlack = 1e-9;
inline constexpr int kResponseRounds = 12;
inline constexpr double kTiny = 1e-300;

inline BigInt exact_product(const std::vector<std::int64_t>& utility) {
  BigInt p(1);
  for (auto u : utility) {
    if (u > 0) p *= u;
  }
  return p;
}

inline Key key_of(const std::vector<std::int64_t>& utility) {
  Key k{0, 0.0};
  for (auto u : utility) {
    if (u == 0) {
      ++k.zeros;
    } else {
      k.log += std::log(static_cast<double>(u));
    }
  }
  return k;
}

// Incumbent shared by all workers; only its value is used, for strict pruning.
class SharedBound {
 public:
  void offer(const Key& k) {
    std::lock_guard lock(mutex_);
    if (k.zeros < best_.zeros || (k.zeros == best_.zeros && k.log > best_.log)) best_ = k;
  }
  Key get() const {
    std::lock_guard lock(mutex_);
    return best_;
  }

 private:
  mutable std::mutex mutex_;
  Key best_;
};

struct TaskResult {
  bool found = false;
  std::size_t zeros = 0;
  BigInt product;
  std::vector<AgentIndex> holder;
};

class Explorer {
 public:
  Explorer(const ScaledProblem& p, SharedBound& shared, std::atomic<bool>& stop,
           std::atomic<std::uint64_t>& nodes,
           std::optional<std::chrono::steady_clock::time_point> deadline)
      : p_(p),
        shared_(shared),
        stop_(stop),
        nodes_(nodes),
        deadline_(deadline),
        share_(p.entry_agent.size()),
        fu_(p.agents),
        rate_(p.agents) {}

  // Depth-first search below a fixed prefix of choice decisions.
  TaskResult run(const std::vector<std::size_t>& prefix_agents) {
    best_ = TaskResult{};
    best_log_ = -INFINITY;
    cur_.assign(p_.agents, 0);
    rem_.assign(p_.agents, 0);
    holder_.assign(p_.items, kUnassigned);
    for (std::size_t i = 0; i < p_.items; ++i) {
      if (p_.forced[i] == kUnassigned) continue;
      holder_[i] = p_.forced[i];
      for (const auto& c : p_.interested[i]) {
        if (static_cast<AgentIndex>(c.agent) == p_.forced[i]) cur_[c.agent] += c.value;
      }
    }
    for (std::size_t c = 0; c < p_.choices.size(); ++c) {
      for (const auto& cand : p_.interested[p_.choices[c]]) rem_[cand.agent] += cand.value;
    }
    for (std::size_t d = 0; d < prefix_agents.size(); ++d) assign(d, prefix_agents[d]);
    snapshot_ = shared_.get();
    local_nodes_ = 0;
    dfs(prefix_agents.size());
    nodes_.fetch_add(local_nodes_, std::memory_order_relaxed);
    return std::move(best_);
  }

 private:
  void assign(std::size_t depth, std::size_t agent) {
    const std::size_t item = p_.choices[depth];
    holder_[item] = static_cast<AgentIndex>(agent);
    for (const auto& c : p_.interested[item]) {
      rem_[c.agent] -= c.value;
      if (c.agent == agent) cur_[agent] += c.value;
    }
  }

  void unassign(std::size_t depth, std::size_t agent) {
    const std::size_t item = p_.choices[depth];
    holder_[item] = kUnassigned;
    for (const auto& c : p_.interested[item]) {
      rem_[c.agent] += c.value;
      if (c.agent == agent) cur_[agent] -= c.value;
    }
  }

  void tick() {
    const auto n = ++local_nodes_;
    if ((n & 1023U) == 0) {
      snapshot_ = shared_.get();
      if (deadline_ && std::chrono::steady_clock::now() > *deadline_) stop_ = true;
    }
  }

  // True when no completion below this node can beat what is known.
  bool prune(std::size_t depth) {
    std::size_t zeros = 0;
    double log_potential = 0.0;
    double log_greedy = 0.0;
    for (std::size_t a = 0; a < p_.agents; ++a) {
      const std::int64_t pot = cur_[a] + rem_[a];
      if (pot == 0) {
        ++zeros;
        continue;
      }
      const double lp = std::log(static_cast<double>(pot));
      log_potential += lp;
      log_greedy += cur_[a] > 0 ? std::log(static_cast<double>(cur_[a])) : lp;
    }
    // Diminishing returns of log(additive): each remaining item adds at most
    // its best single-item gain to an agent that already holds something.
    for (std::size_t d = depth; d < p_.choices.size() && log_greedy < log_potential; ++d) {
      double gain = 0.0;
      for (const auto& c : p_.interested[p_.choices[d]]) {
        if (cur_[c.agent] > 0) {
          gain = std::max(gain, std::log1p(static_cast<double>(c.value) /
                                           static_cast<double>(cur_[c.agent])));
        }
      }
      log_greedy += gain;
    }
    const double bound = std::min(log_potential, log_greedy);

    // Whether a completion whose nonzero-log is at most `b` loses to an
    // incumbent: the shared one strictly, or this task's one.
    auto beaten = [&](double b) {
      if (zeros > snapshot_.zeros) return true;
      if (zeros == snapshot_.zeros && b < snapshot_.log - kLogSlack) return true;
      if (!best_.found) return false;
      return zeros > best_.zeros || (zeros == best_.zeros && b < best_log_ - kLogSlack);
    };
    if (beaten(bound)) return true;
    const bool comparable =
        zeros == snapshot_.zeros || (best_.found && zeros == best_.zeros);
    if (comparable && beaten(fractional_bound(depth))) return true;
    if (!best_.found || zeros != best_.zeros) return false;
    if (log_potential > best_log_ + kLogSlack) return false;
    // Near tie: settle exactly with the potential bound. Later leaves in
    // this subtree are lexicographically larger, so equality prunes too.
    BigInt pot_product(1);
    for (std::size_t a = 0; a < p_.agents; ++a) {
      const std::int64_t pot = cur_[a] + rem_[a];
      if (pot > 0) pot_product *= pot;
    }
    return pot_product <= best_.product;
  }

  /// Upper bound on the log-product of the agents that can still be served,
  /// from the Lagrangian dual of the divisible relaxation:
  ///   sum_i price_i + sum_a max_s [log(cur_a + r_a s) - s],
  /// where r_a is agent a's best utility per unit price. Valid for any
  /// positive prices; a few proportional-response rounds on the fractional
  /// allocation make them close to market-clearing.
  double fractional_bound(std::size_t depth) {
    const std::size_t first = p_.entry_offset[depth];
    const std::size_t last = p_.entry_offset.back();
    for (std::size_t c = depth; c < p_.choices.size(); ++c) {
      const std::size_t lo = p_.entry_offset[c];
      const std::size_t hi = p_.entry_offset[c + 1];
      for (std::size_t k = lo; k < hi; ++k) share_[k] = 1.0 / static_cast<double>(hi - lo);
    }
    auto refresh_utilities = [&] {
      for (std::size_t a = 0; a < p_.agents; ++a) fu_[a] = static_cast<double>(cur_[a]);
      for (std::size_t k = first; k < last; ++k) {
        fu_[p_.entry_agent[k]] += share_[k] * p_.entry_value[k];
      }
    };
    for (int round = 0; round < kResponseRounds; ++round) {
      refresh_utilities();
      for (std::size_t c = depth; c < p_.choices.size(); ++c) {
        const std::size_t lo = p_.entry_offset[c];
        const std::size_t hi = p_.entry_offset[c + 1];
        double total = 0.0;
        for (std::size_t k = lo; k < hi; ++k) {
          share_[k] *= p_.entry_value[k] / std::max(fu_[p_.entry_agent[k]], kTiny);
          total += share_[k];
        }
        for (std::size_t k = lo; k < hi; ++k) share_[k] /= total;
      }
    }
    refresh_utilities();
    std::fill(rate_.begin(), rate_.end(), 0.0);
    double bound = 0.0;
    for (std::size_t c = depth; c < p_.choices.size(); ++c) {
      const std::size_t lo = p_.entry_offset[c];
      const std::size_t hi = p_.entry_offset[c + 1];
      double price = 0.0;
      for (std::size_t k = lo; k < hi; ++k) {
        price = std::max(price, p_.entry_value[k] / std::max(fu_[p_.entry_agent[k]], kTiny));
      }
      bound += price;
      for (std::size_t k = lo; k < hi; ++k) {
        auto& r = rate_[p_.entry_agent[k]];
        r = std::max(r, p_.entry_value[k] / price);
      }
    }
    for (std::size_t a = 0; a < p_.agents; ++a) {
      const double c = static_cast<double>(cur_[a]);
      const double r = rate_[a];
      if (r > c) {
        bound += std::log(r) - 1.0 + c / r;
      } else if (c > 0) {
        bound += std::log(c);
      }
    }
    return bound;
  }

  void leaf() {
    const Key k = key_of(cur_);
    bool better = !best_.found || k.zeros < best_.zeros;
    if (!better && k.zeros == best_.zeros) {
      if (k.log > best_log_ + kLogSlack) {
        better = true;
      } else if (k.log >= best_log_ - kLogSlack) {
        better = exact_product(cur_) > best_.product;
      }
    }
    if (!better) return;
    best_.found = true;
    best_.zeros = k.zeros;
    best_.product = exact_product(cur_);
    best_.holder = holder_;
    best_log_ = k.log;
    shared_.offer(k);
  }

  void dfs(std::size_t depth) {
    if (stop_) return;
    tick();
    if (depth == p_.choices.size()) {
      leaf();
      return;
    }
    if (prune(depth)) return;
    const std::size_t item = p_.choices[depth];
    const auto twin = p_.twin[depth];
    const AgentIndex floor = twin < 0 ? 0 : holder_[p_.choices[static_cast<std::size_t>(twin)]];
    for (const auto& c : p_.interested[item]) {
      if (static_cast<AgentIndex>(c.agent) < floor) continue;
      assign(depth, c.agent);
      dfs(depth + 1);
      unassign(depth, c.agent);
      if (stop_) return;
    }
  }

  const ScaledProblem& p_;
  SharedBound& shared_;
  std::atomic<bool>& stop_;
  std::atomic<std::uint64_t>& nodes_;
  std::optional<std::chrono::steady_clock::time_point> deadline_;
  std::vector<std::int64_t> cur_;
  std::vector<std::int64_t> rem_;
  std::vector<AgentIndex> holder_;
  std::vector<double> share_;  // fractional allocation, per interest entry
  std::vector<double> fu_;     // fractional utilities
  std::vector<double> rate_;   // best utility per unit price
  TaskResult best_;
  double best_log_ = -INFINITY;
  Key snapshot_;
  std::uint64_t local_nodes_ = 0;
};

// Greedy placement followed by single-item relocations; gives the workers
// an early incumbent value to prune against.
inline std::vector<AgentIndex> warm_start(const ScaledProblem& p) {
  std::vector<std::int64_t> cur(p.agents, 0);
  std::vector<AgentIndex> holder(p.forced);
  for (std::size_t i = 0; i < p.items; ++i) {
    if (holder[i] == kUnassigned) continue;
    for (const auto& c : p.interested[i]) {
      if (static_cast<AgentIndex>(c.agent) == holder[i]) cur[c.agent] += c.value;
    }
  }
  auto gain = [&](std::size_t agent, std::int64_t value) {
    if (cur[agent] == 0) return std::numeric_limits<double>::infinity();
    return std::log1p(static_cast<double>(value) / static_cast<double>(cur[agent]));
  };
  for (std::size_t item : p.choices) {
    const auto* pick = &p.interested[item].front();
    for (const auto& c : p.interested[item]) {
      if (gain(c.agent, c.value) > gain(pick->agent, pick->value)) pick = &c;
    }
    holder[item] = static_cast<AgentIndex>(pick->agent);
    cur[pick->agent] += pick->value;
  }
  for (int round = 0; round < 64; ++round) {
    bool moved = false;
    for (std::size_t item : p.choices) {
      const auto from = static_cast<std::size_t>(holder[item]);
      std::int64_t from_value = 0;
      for (const auto& c : p.interested[item]) {
        if (c.agent == from) from_value = c.value;
      }
      for (const auto& c : p.interested[item]) {
        if (c.agent == from) continue;
        const std::int64_t a_before = cur[from];
        const std::int64_t b_before = cur[c.agent];
        const std::int64_t a_after = a_before - from_value;
        const std::int64_t b_after = b_before + c.value;
        const auto zeros = [](std::int64_t x, std::int64_t y) { return (x == 0) + (y == 0); };
        const int dz = zeros(a_after, b_after) - zeros(a_before, b_before);
        auto lg = [](std::int64_t x) { return x > 0 ? std::log(static_cast<double>(x)) : 0.0; };
        const double dl = lg(a_after) + lg(b_after) - lg(a_before) - lg(b_before);
        if (dz < 0 || (dz == 0 && dl > kLogSlack)) {
          cur[from] = a_after;
          cur[c.agent] = b_after;
          holder[item] = static_cast<AgentIndex>(c.agent);
          moved = true;
          break;
        }
      }
    }
    if (!moved) break;
  }
  return holder;
}

}  // namespace detail

/// Exact Nash social welfare maximization by branch and bound.
///
/// Items with at most one interested agent are placed up front. Remaining
/// items branch over their interested agents in index order; items with
/// identical utility columns take non-decreasing holders. The returned
/// allocation is the lexicographically smallest optimum under `compare`,
/// independent of `worker_count`.
inline SolveResult exact_max_nsw(const Instance& instance, const SearchConfig& cfg = {}) {
  if (cfg.item_limit == 0) throw InputError("item limit must be positive");
  if (cfg.worker_count == 0) throw InputError("worker count must be positive");
  if (cfg.time_limit && cfg.time_limit->count() <= 0) throw InputError("time limit must be positive");
  const detail::ScaledProblem problem(instance);
  if (problem.choices.size() > cfg.item_limit) {
    throw ResourceError("search has " + std::to_string(problem.choices.size()) +
                        " choice points after forced placements; the limit is " +
                        std::to_string(cfg.item_limit));
  }
  std::optional<std::chrono::steady_clock::time_point> deadline;
  if (cfg.time_limit) deadline = std::chrono::steady_clock::now() + *cfg.time_limit;

  detail::SharedBound shared;
  const auto warm = detail::warm_start(problem);
  {
    std::vector<std::int64_t> cur(problem.agents, 0);
    for (std::size_t i = 0; i < problem.items; ++i) {
      for (const auto& c : problem.interested[i]) {
        if (static_cast<AgentIndex>(c.agent) == warm[i]) cur[c.agent] += c.value;
      }
    }
    shared.offer(detail::key_of(cur));
  }

  // Fixed prefix split (independent of worker count) so every run explores
  // the same tasks and reduces them in the same order.
  std::vector<std::vector<std::size_t>> tasks{{}};
  std::vector<AgentIndex> scratch(problem.items, kUnassigned);
  constexpr std::size_t kTargetTasks = 64;
  for (std::size_t depth = 0; depth < problem.choices.size() && tasks.size() < kTargetTasks;
       ++depth) {
    std::vector<std::vector<std::size_t>> next;
    const std::size_t item = problem.choices[depth];
    const auto twin = problem.twin[depth];
    for (const auto& prefix : tasks) {
      const std::size_t floor = twin < 0 ? 0 : prefix[static_cast<std::size_t>(twin)];
      for (const auto& c : problem.interested[item]) {
        if (c.agent < floor) continue;
        auto extended = prefix;
        extended.push_back(c.agent);
        next.push_back(std::move(extended));
      }
    }
    tasks = std::move(next);
  }

  std::vector<detail::TaskResult> results(tasks.size());
  std::atomic<std::size_t> next_task{0};
  std::atomic<bool> stop{false};
  std::atomic<std::uint64_t> nodes{0};
  const std::function<void()> work = [&] {
    detail::Explorer explorer(problem, shared, stop, nodes, deadline);
    for (;;) {
      const std::size_t t = next_task.fetch_add(1);
      if (t >= tasks.size() || stop) return;
      results[t] = explorer.run(tasks[t]);
    }
  };
  const unsigned workers =
      std::min<unsigned>(cfg.worker_count, static_cast<unsigned>(tasks.size()));
  if (workers <= 1) {
    work();
  } else {
    std::vector<std::jthread> pool;
    for (unsigned w = 0; w < workers; ++w) pool.emplace_back(work);
  }

  const detail::TaskResult* best = nullptr;
  for (const auto& r : results) {
    if (!r.found) continue;
    if (best == nullptr || r.zeros < best->zeros ||
        (r.zeros == best->zeros && r.product > best->product)) {
      best = &r;
    }
  }
  auto finish = [&](const std::vector<AgentIndex>& holder) {
    SolveResult out;
    out.allocation.holder = holder;
    out.value = nsw_product(instance, out.allocation);
    out.nodes = nodes.load();
    return out;
  };
  if (stop) {
    std::optional<SolveResult> partial = best ? finish(best->holder) : finish(warm);
    if (best) {
      auto warm_result = finish(warm);
      if (compare(warm_result.value, partial->value) > 0) partial = std::move(warm_result);
    }
    throw SearchTimeout("time limit of " + std::to_string(cfg.time_limit->count()) +
                            " ms exceeded; returning the best allocation found so far",
                        std::move(partial));
  }
  if (best == nullptr) throw Error("search finished without a leaf");  // unreachable
  return finish(best->holder);
}

}  // namespace nswlab
