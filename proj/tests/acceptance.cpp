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

// One PASS/FAIL line per acceptance criterion; exit status 1 if any fails.

#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <iostream>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include "nswlab/cli.hpp"
#include "nswlab/nswlab.hpp"
#include "oracle.hpp"
#include "test_support.hpp"

using namespace nswlab;

namespace {

const Rational kAlpha = make_rational(2, 5);

// Tolerances for the constants check.
constexpr double kMuTarget = 1.00008;
constexpr double kMuTol = 1e-5;
constexpr double kBetaTarget = 0.0309;
constexpr double kBetaTol = 5e-4;
constexpr double kGammaTarget = 0.001733;
constexpr double kGammaTol = 5e-5;

constexpr int kNormalizerTrials = 1000;
constexpr int kGridPoints = 100;

struct Outcome {
  bool pass = true;
  std::string detail;

  void fail(const std::string& why) {
    if (pass) detail = why;
    pass = false;
  }
};

std::vector<Graph> cubic_up_to_8() {
  std::vector<Graph> out;
  for (int n : {4, 6, 8}) {
    for (auto& g : enumerate_cubic_graphs(n)) out.push_back(std::move(g));
  }
  return out;
}

std::string label(const Graph& g) {
  std::string s = "N=" + std::to_string(g.vertex_count()) + " {";
  for (const auto& e : g.edges()) s += " " + to_string(e);
  return s + " }";
}

Outcome constants() {
  Outcome o;
  const auto h = hardness_constants(make_rational(1, 3), 0.5103, 0.5155);
  char buf[160];
  std::snprintf(buf, sizeof buf, "mu=%.9f beta=%.6f gamma=%.7f", h.mu, h.beta, h.gamma);
  o.detail = buf;
  if (std::abs(h.mu - kMuTarget) > kMuTol) o.fail(std::string("mu off: ") + buf);
  if (std::abs(h.beta - kBetaTarget) > kBetaTol) o.fail(std::string("beta off: ") + buf);
  if (std::abs(h.gamma - kGammaTarget) > kGammaTol) o.fail(std::string("gamma off: ") + buf);
  return o;
}

Outcome completeness() {
  Outcome o;
  std::size_t checked = 0;
  for (const Graph& g : cubic_up_to_8()) {
    for (const auto& cover : oracle::all_covers(g)) {
      for (const Rational& alpha : {kAlpha, make_rational(5, 12), make_rational(11, 24)}) {
        const int k = static_cast<int>(cover.size());
        const auto r = build_instance(g, {alpha, k});
        const Rational got = nsw_product(r.instance(), completeness_allocation(r, cover)).product;
        const Rational want =
            pow(Rational(1) + alpha, 3 * k - static_cast<std::int64_t>(g.edge_count()));
        ++checked;
        if (got != want) o.fail(label(g) + " alpha=" + to_string(alpha) + ": " + to_string(got));
      }
    }
  }
  if (o.pass) o.detail = std::to_string(checked) + " (graph, cover, alpha) triples exact";
  return o;
}

Outcome named_optima() {
  Outcome o;
  struct Case {
    const char* graph;
    int k;
    Rational product;
  };
  const std::vector<Case> cases{{"K4", 3, make_rational(343, 125)},
                                {"K33", 3, Rational(1)},
                                {"Petersen", 6, pow(make_rational(7, 5), 3)},
                                {"K4", 2, make_rational(14, 15)}};
  std::string summary;
  for (const auto& c : cases) {
    const Graph g = named_graph(c.graph);
    const Rational reference = oracle::reduced_optimum(g, c.k, kAlpha);
    if (reference != c.product) {
      o.fail(std::string("oracle disagrees on ") + c.graph + ": " + to_string(reference));
    }
    const auto t0 = std::chrono::steady_clock::now();
    const auto res = exact_max_nsw(build_instance(g, {kAlpha, c.k}).instance());
    const double secs =
        std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    if (res.value.product != c.product) {
      o.fail(std::string(c.graph) + " k=" + std::to_string(c.k) + ": " +
             to_string(res.value.product));
    }
    if (secs > 60) o.fail(std::string(c.graph) + " took over a minute");
    summary += std::string(summary.empty() ? "" : ", ") + c.graph + "/" + std::to_string(c.k) +
               "=" + to_string(res.value.product);
  }
  if (o.pass) o.detail = summary;
  return o;
}

Outcome soundness() {
  Outcome o;
  std::size_t checked = 0;
  for (const Graph& g : cubic_up_to_8()) {
    const int tau = cover_number(g);
    for (int k : {tau - 1, tau}) {
      const auto opt = exact_max_nsw(build_instance(g, {kAlpha, k}).instance()).value;
      const auto bound = soundness_bound(g, k, kAlpha);
      ++checked;
      if (compare(opt, bound) > 0) {
        o.fail(label(g) + " k=" + std::to_string(k) + ": optimum " + to_string(opt.product) +
               " above bound " + to_string(bound.product));
      }
      const bool has_cover = k >= tau;
      const bool equals_completeness =
          3 * k >= static_cast<int>(g.edge_count()) &&
          compare(opt, completeness_value(g, k, kAlpha)) == 0;
      if (has_cover != equals_completeness) {
        o.fail(label(g) + " k=" + std::to_string(k) + ": completeness equality is " +
               (equals_completeness ? "true" : "false"));
      }
    }
  }
  if (o.pass) o.detail = std::to_string(checked) + " (graph, k) pairs";
  return o;
}

Outcome normalizer() {
  Outcome o;
  std::mt19937_64 rng(20260101);
  std::size_t runs = 0;
  for (auto name : named_graph_choices()) {
    const Graph g = named_graph(name);
    const auto r = build_instance(g, {kAlpha, cover_number(g)});
    const auto& inst = r.instance();
    for (int trial = 0; trial < kNormalizerTrials; ++trial) {
      Allocation a{std::vector<AgentIndex>(inst.item_count())};
      for (auto& h : a.holder) h = static_cast<AgentIndex>(rng() % inst.agent_count());
      Allocation b;
      try {
        b = normalize(r, a);
      } catch (const Error& e) {
        o.fail(std::string(name) + ": " + e.what());
        continue;
      }
      ++runs;
      if (compare(nsw_product(inst, b), nsw_product(inst, a)) < 0) {
        o.fail(std::string(name) + ": product decreased");
      }
      for (std::size_t s = 0; s < r.incidences().size(); ++s) {
        if (b.holder[r.shared_item(s)] != static_cast<AgentIndex>(lemma2_rule(r, b, s).holder)) {
          o.fail(std::string(name) + ": incidence " + std::to_string(s) + " off its rule");
        }
      }
      for (int v = 0; v < r.vertex_count(); ++v) {
        std::size_t held = 0;
        for (int j = 0; j < r.k(); ++j) held += b.holder[r.vertex_item(j)] == v ? 1 : 0;
        if (held > 1) o.fail(std::string(name) + ": vertex agent with two vertex items");
      }
    }
  }
  if (o.pass) o.detail = std::to_string(runs) + " random allocations normalized";
  return o;
}

Outcome identities() {
  Outcome o;
  std::vector<Graph> graphs = cubic_up_to_8();
  for (auto name : named_graph_choices()) graphs.push_back(named_graph(name));
  std::size_t optima = 0;
  std::size_t checks = 0;
  for (const Graph& g : graphs) {
    const int tau = cover_number(g);
    for (int k : {tau - 1, tau}) {
      const auto r = build_instance(g, {kAlpha, k});
      const auto opt = exact_max_nsw(r.instance());
      const Allocation normal = normalize(r, opt.allocation);
      ++optima;
      if (compare(nsw_product(r.instance(), normal), opt.value) != 0) {
        o.fail(label(g) + ": normalizing an optimum changed its value");
      }
      const auto profile = analyze_structure(r, normal);
      for (const auto& c : verify_identities(r, profile).checks) {
        ++checks;
        if (!c.holds) {
          o.fail(label(g) + " k=" + std::to_string(k) + ": " + c.name + " (" +
                 std::to_string(c.lhs) + " " + c.relation + " " + std::to_string(c.rhs) + ")");
        }
      }
      if (product_formula(profile, kAlpha).product != opt.value.product) {
        o.fail(label(g) + ": product formula mismatch");
      }
    }
  }
  if (o.pass) {
    o.detail = std::to_string(optima) + " optima, " + std::to_string(checks) + " checks, 0 failures";
  }
  return o;
}

Outcome inequality_grid() {
  Outcome o;
  const Rational lo = make_rational(1, 3);
  const Rational width = make_rational(1, 6);
  for (int i = 1; i <= kGridPoints; ++i) {
    const Rational alpha = lo + width * make_rational(i, kGridPoints + 1);
    if (!lemma2_inequalities(alpha).all_hold()) o.fail("false entry at alpha=" + to_string(alpha));
  }
  if (lemma2_inequalities(lo).all_hold()) o.fail("all true at 1/3");
  if (lemma2_inequalities(make_rational(1, 2)).all_hold()) o.fail("all true at 1/2");
  if (o.pass) o.detail = std::to_string(kGridPoints) + " interior points all true; both endpoints fail";
  return o;
}

Outcome determinism() {
  Outcome o;
  test::TempDir dir;
  const std::string inst = (dir / "petersen.json").string();
  auto run = [](std::vector<std::string> args, std::string& out) {
    std::ostringstream so;
    std::ostringstream se;
    const int code = cli::run(args, so, se);
    out = so.str() + se.str();
    return code;
  };
  std::string text;
  if (run({"reduce", "--named", "Petersen", "--k", "6", "--out", inst}, text) != 0) {
    o.fail("reduce failed: " + text);
    return o;
  }
  std::string reference;
  for (const char* workers : {"1", "4", "8"}) {
    std::string out;
    if (run({"solve", inst, "--json", "--workers", workers}, out) != 0) {
      o.fail(std::string("solve failed with ") + workers + " workers");
      continue;
    }
    if (reference.empty()) {
      reference = out;
    } else if (out != reference) {
      o.fail(std::string("output differs with ") + workers + " workers");
    }
  }
  if (o.pass) {
    o.detail = "identical output (" + std::to_string(reference.size()) + " bytes) for 1/4/8 workers";
  }
  return o;
}

}  // namespace

int main() {
  const std::vector<std::pair<std::string, std::function<Outcome()>>> criteria{
      {"constants reproduction", constants},
      {"completeness exactness", completeness},
      {"oracle optimality on named graphs", named_optima},
      {"soundness-bound domination", soundness},
      {"normalizer properties", normalizer},
      {"identity suite", identities},
      {"inequality grid", inequality_grid},
      {"determinism across workers", determinism},
  };
  int failures = 0;
  for (std::size_t i = 0; i < criteria.size(); ++i) {
    Outcome o;
    const auto t0 = std::chrono::steady_clock::now();
    try {
      o = criteria[i].second();
    } catch (const std::exception& e) {
      o.fail(std::string("exception: ") + e.what());
    }
    const double secs =
        std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    if (!o.pass) ++failures;
    char timing[32];
    std::snprintf(timing, sizeof timing, "%.2fs", secs);
    std::cout << (o.pass ? "PASS" : "FAIL") << " criterion " << (i + 1) << " ("
              << criteria[i].first << ", " << timing << "): " << o.detail << std::endl;
  }
  return failures == 0 ? 0 : 1;
}
