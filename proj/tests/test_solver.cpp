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

#include <random>

#include <gtest/gtest.h>

#include "nswlab/nswlab.hpp"
#include "oracle.hpp"

using namespace nswlab;

namespace {

const Rational kAlpha = make_rational(2, 5);

// Small generic instances; some items share a utility column.
Instance random_instance(std::mt19937_64& rng) {
  const std::vector<Rational> values{Rational(0), Rational(0), make_rational(1, 2), Rational(1),
                                     Rational(2), make_rational(7, 3)};
  const int n = 2 + static_cast<int>(rng() % 3);
  const int m = 3 + static_cast<int>(rng() % 4);
  std::vector<std::string> agents;
  for (int a = 0; a < n; ++a) agents.push_back("a" + std::to_string(a));
  std::vector<std::string> items;
  std::vector<std::vector<UtilityEntry>> rows;
  for (int i = 0; i < m; ++i) {
    items.push_back("i" + std::to_string(i));
    if (i > 0 && rng() % 3 == 0) {
      rows.push_back(rows.back());
      continue;
    }
    std::vector<UtilityEntry> row;
    for (int a = 0; a < n; ++a) {
      row.push_back({static_cast<std::size_t>(a), values[rng() % values.size()]});
    }
    rows.push_back(std::move(row));
  }
  return Instance(agents, items, rows);
}

Allocation random_allocation(const Instance& inst, std::mt19937_64& rng) {
  Allocation a{std::vector<AgentIndex>(inst.item_count())};
  for (auto& h : a.holder) h = static_cast<AgentIndex>(rng() % inst.agent_count());
  return a;
}

}  // namespace

TEST(Solver, MatchesExhaustiveOnGenericInstances) {
  std::mt19937_64 rng(2024);
  for (int trial = 0; trial < 300; ++trial) {
    const Instance inst = random_instance(rng);
    const auto expect = oracle::exhaustive(inst);
    const auto got = exact_max_nsw(inst);
    ASSERT_EQ(got.value.product, expect.product()) << format_instance(inst);
    ASSERT_EQ(got.value.zero_count, expect.key.zeros);
    ASSERT_EQ(got.value.nonzero_product, expect.key.nonzero);
    // Lexicographically smallest optimal assignment.
    ASSERT_EQ(got.allocation, expect.allocation) << format_instance(inst);
    ASSERT_EQ(exact_max_nsw(inst, {64, 3}).allocation, got.allocation);
  }
}

TEST(Solver, NamedReducedInstances) {
  struct Case {
    const char* graph;
    int k;
    Rational product;
  };
  const std::vector<Case> cases{{"K4", 3, make_rational(343, 125)},
                                {"K4", 2, make_rational(14, 15)},
                                {"K33", 3, Rational(1)},
                                {"Prism", 4, make_rational(343, 125)},
                                {"Petersen", 6, make_rational(343, 125)}};
  for (const auto& c : cases) {
    const Graph g = named_graph(c.graph);
    ASSERT_EQ(oracle::reduced_optimum(g, c.k, kAlpha), c.product) << c.graph;
    const auto r = build_instance(g, {kAlpha, c.k});
    const auto res = exact_max_nsw(r.instance());
    EXPECT_EQ(res.value.product, c.product) << c.graph << " k=" << c.k;
    EXPECT_EQ(nsw_product(r.instance(), res.allocation).product, c.product);
  }
}

TEST(Solver, MatchesFrontierOracleOnAllSmallGraphs) {
  for (int n : {4, 6, 8}) {
    for (const Graph& g : enumerate_cubic_graphs(n)) {
      for (int k = 0; k <= n; ++k) {
        for (const Rational& alpha : {kAlpha, make_rational(11, 24)}) {
          const auto r = build_instance(g, {alpha, k});
          ASSERT_EQ(exact_max_nsw(r.instance()).value.product,
                    oracle::reduced_optimum(g, k, alpha))
              << format_graph(g) << "k=" << k;
        }
      }
    }
  }
}

TEST(Solver, DeterministicAcrossWorkers) {
  const auto r = build_instance(named_graph("Petersen"), {kAlpha, 5});
  const auto one = exact_max_nsw(r.instance(), {64, 1});
  EXPECT_EQ(one.value.product, make_rational(196, 225));
  EXPECT_EQ(oracle::reduced_optimum(r.graph(), 5, kAlpha), make_rational(196, 225));
  for (unsigned w : {2U, 4U, 8U}) {
    const auto many = exact_max_nsw(r.instance(), {64, w});
    EXPECT_EQ(many.allocation, one.allocation) << w;
    EXPECT_EQ(many.value.product, one.value.product);
  }
}

TEST(Solver, Limits) {
  const auto r = build_instance(named_graph("Petersen"), {kAlpha, 6});
  EXPECT_THROW(exact_max_nsw(r.instance(), {10, 1}), ResourceError);
  EXPECT_THROW(exact_max_nsw(r.instance(), {0, 1}), InputError);
  const auto big = build_instance(gen_random_cubic(40, 1), {kAlpha, 22});
  SearchConfig cfg;
  cfg.item_limit = 1000;
  cfg.time_limit = std::chrono::milliseconds(50);
  try {
    exact_max_nsw(big.instance(), cfg);
    FAIL() << "expected a timeout";
  } catch (const SearchTimeout& e) {
    ASSERT_TRUE(e.partial().has_value());
    EXPECT_EQ(nsw_product(big.instance(), e.partial()->allocation).product,
              e.partial()->value.product);
  }
}

TEST(Normalizer, MonotoneAndFixpoint) {
  std::mt19937_64 rng(7);
  for (auto [name, k] : std::vector<std::pair<const char*, int>>{
           {"K4", 3}, {"K4", 2}, {"K33", 3}, {"Prism", 4}, {"Petersen", 6}, {"Petersen", 4}}) {
    const auto r = build_instance(named_graph(name), {kAlpha, k});
    for (int trial = 0; trial < 200; ++trial) {
      const Allocation a = random_allocation(r.instance(), rng);
      const Allocation b = normalize(r, a);
      ASSERT_TRUE(compare(nsw_product(r.instance(), b), nsw_product(r.instance(), a)) >= 0);
      ASSERT_EQ(normal_form_violation(r, b), "");
      ASSERT_EQ(normalize(r, b), b);
      for (int v = 0; v < r.vertex_count(); ++v) {
        ASSERT_LE(detail::vertex_items_held(r, b, v), 1U);
      }
    }
  }
}

TEST(Normalizer, Rules) {
  const auto r = build_instance(named_graph("K4"), {kAlpha, 3});
  const Allocation cover = completeness_allocation(r, VertexSet{0, 1, 2});
  // si:0@0-1: vertex 0 holds a vertex item.
  EXPECT_EQ(lemma2_rule(r, cover, 0).rule, 1);
  EXPECT_EQ(lemma2_rule(r, cover, 0).holder, r.edge_agent(0));
  // Vertex 3 is uncovered; each of its edges already has the other shared
  // item, so rule 2 hands i(3, e) back to a(3).
  for (std::size_t s : r.vertex_incidences(3)) {
    EXPECT_EQ(lemma2_rule(r, cover, s).rule, 2);
    EXPECT_EQ(lemma2_rule(r, cover, s).holder, r.vertex_agent(3));
  }
  EXPECT_EQ(normal_form_violation(r, cover), "");

  // All shared items to vertex agents, no vertex items on vertex 3.
  Allocation a = cover;
  for (std::size_t s = 0; s < r.incidences().size(); ++s) {
    a.holder[r.shared_item(s)] = static_cast<AgentIndex>(r.vertex_agent(r.incidences()[s].vertex));
  }
  for (int j = 0; j < 3; ++j) a.holder[r.vertex_item(j)] = 0;
  // Vertex 3 keeps its other two shared items and holds no vertex item.
  EXPECT_EQ(lemma2_rule(r, a, r.vertex_incidences(3)[0]).rule, 3);
  // Vertex 1 holds no vertex item and e = 0-1's agent holds nothing else.
  const auto verdict = lemma2_rule(r, a, r.vertex_incidences(1)[0]);
  EXPECT_EQ(verdict.rule, 3);
  EXPECT_NE(normal_form_violation(r, a), "");
  EXPECT_THROW(lemma2_rule(r, Allocation{{0}}, 0), InputError);
}

TEST(Structure, OptimaOfSmallGraphs) {
  for (int n : {4, 6, 8}) {
    for (const Graph& g : enumerate_cubic_graphs(n)) {
      const int tau = cover_number(g);
      for (int k : {tau - 1, tau}) {
        const auto r = build_instance(g, {kAlpha, k});
        const auto opt = exact_max_nsw(r.instance());
        const Allocation normal = normalize(r, opt.allocation);
        ASSERT_TRUE(compare(nsw_product(r.instance(), normal), opt.value) == 0);
        const auto profile = analyze_structure(r, normal);
        const auto report = verify_identities(r, profile);
        for (const auto& c : report.checks) {
          EXPECT_TRUE(c.holds) << c.name << ": " << c.lhs << " " << c.relation << " " << c.rhs;
        }
        EXPECT_EQ(product_formula(profile, kAlpha).product, opt.value.product);
        EXPECT_EQ(profile.C.size(), static_cast<std::size_t>(k));
        EXPECT_EQ(profile.vertex_count(), static_cast<std::size_t>(n));
        EXPECT_EQ(profile.edge_count(), g.edge_count());
      }
    }
  }
}

TEST(Structure, RejectsNonNormalForm) {
  const auto r = build_instance(named_graph("K4"), {kAlpha, 3});
  Allocation a = completeness_allocation(r, VertexSet{0, 1, 2});
  a.holder[r.shared_item(0)] = 0;
  try {
    analyze_structure(r, a);
    FAIL();
  } catch (const InputError& e) {
    EXPECT_NE(std::string(e.what()).find("rule 1"), std::string::npos) << e.what();
  }
}

TEST(Soundness, BoundDominatesOptimum) {
  for (int n : {4, 6, 8}) {
    for (const Graph& g : enumerate_cubic_graphs(n)) {
      const int tau = oracle::cover_number(g);
      for (int k = std::max(0, tau - 3); k <= tau; ++k) {
        const Rational opt = oracle::reduced_optimum(g, k, kAlpha);
        const auto bound = soundness_bound(g, k, kAlpha);
        EXPECT_LE(opt, bound.product) << format_graph(g) << "k=" << k;
        if (k == tau) EXPECT_EQ(opt, bound.product);
      }
    }
  }
  // K4, k=2: bound (7/5)^0 (14/15)^1.
  EXPECT_EQ(soundness_bound(named_graph("K4"), 2, kAlpha).product, make_rational(14, 15));
}
