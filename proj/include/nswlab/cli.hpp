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

#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "nswlab/nswlab.hpp"

namespace nswlab::cli {

inline constexpr int kExitOk = 0;
inline constexpr int kExitInput = 2;
inline constexpr int kExitResource = 3;

// Floats are reported with 12 significant digits.
inline double approx(double x) {
  if (!std::isfinite(x)) return x;
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.12g", x);
  return std::strtod(buf, nullptr);
}

inline std::string approx_text(double x) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.12g", x);
  return buf;
}

inline nlohmann::ordered_json welfare_json(const WelfareValue& w) {
  nlohmann::ordered_json doc;
  doc["product"] = to_string(w.product);
  doc["zero_agents"] = w.zero_count;
  if (w.zero_count == 0) {
    doc["log_geomean_approx"] = approx(w.log_geomean);
    doc["nsw_approx"] = approx(w.nsw());
  } else {
    doc["log_geomean_approx"] = nullptr;
    doc["nsw_approx"] = 0.0;
  }
  return doc;
}

inline std::string welfare_text(const WelfareValue& w) {
  return to_string(w.product) + " (nsw~" + approx_text(w.nsw()) + ")";
}

/// "K4" and friends, "random:N" (with `seed`), or a graph file path.
inline Graph resolve_graph(const std::string& spec, std::uint64_t seed = 1) {
  for (auto name : named_graph_choices()) {
    if (spec == name) return named_graph(spec);
  }
  if (spec.rfind("random:", 0) == 0) {
    const std::string size = spec.substr(7);
    int n = 0;
    try {
      std::size_t used = 0;
      n = std::stoi(size, &used);
      if (used != size.size()) throw std::invalid_argument(size);
    } catch (const std::exception&) {
      throw InputError("bad random graph spec \"" + spec + "\"; expected random:N");
    }
    return gen_random_cubic(n, seed);
  }
  if (!std::filesystem::exists(spec)) {
    std::string msg = "\"" + spec + "\" is neither a graph file nor a named graph (";
    for (auto name : named_graph_choices()) msg += std::string(name) + " ";
    msg += "random:N)";
    throw InputError(msg);
  }
  return read_graph(spec);
}

struct GapReport {
  std::string graph_label;
  int n_vertices = 0;
  std::size_t n_edges = 0;
  int tau = 0;
  Rational alpha;
  int k = 0;
  std::optional<WelfareValue> completeness;  // absent when 3k < M
  WelfareValue soundness;
  WelfareValue optimum;
  std::string verdict;
  bool bound_ok = false;
  HardnessConstants constants;
  InequalityReport inequalities;
};

inline GapReport make_gap_report(const Graph& g, std::string label, const Rational& alpha,
                                 std::optional<int> k, double c_min, double c_max,
                                 bool allow_boundary, const SearchConfig& search,
                                 const VertexCoverOptions& vc) {
  GapReport rep;
  rep.graph_label = std::move(label);
  rep.n_vertices = g.vertex_count();
  rep.n_edges = g.edge_count();
  rep.tau = cover_number(g, vc);
  rep.alpha = alpha;
  rep.k = k.value_or(rep.tau);
  rep.constants = hardness_constants(alpha, c_min, c_max);
  rep.inequalities = lemma2_inequalities(alpha);
  const ReducedInstance r = build_instance(g, {alpha, rep.k, allow_boundary});
  if (3 * rep.k >= static_cast<int>(g.edge_count())) {
    rep.completeness = completeness_value(g, rep.k, alpha);
  }
  rep.soundness = soundness_bound(g, rep.k, alpha, vc);
  rep.optimum = exact_max_nsw(r.instance(), search).value;
  rep.bound_ok = compare(rep.optimum, rep.soundness) <= 0;
  rep.verdict = rep.completeness && compare(rep.optimum, *rep.completeness) == 0
                    ? "cover-achievable"
                    : "gap-realized";
  return rep;
}

inline nlohmann::ordered_json gap_report_json(const GapReport& rep) {
  nlohmann::ordered_json doc;
  doc["graph"] = {{"name", rep.graph_label},
                  {"N", rep.n_vertices},
                  {"M", rep.n_edges},
                  {"tau", rep.tau}};
  doc["params"] = {{"alpha", to_string(rep.alpha)}, {"k", rep.k}};
  doc["completeness"] = rep.completeness ? welfare_json(*rep.completeness) : nullptr;
  doc["soundness_bound"] = welfare_json(rep.soundness);
  doc["optimum"] = welfare_json(rep.optimum);
  doc["verdict"] = rep.verdict;
  doc["bound_ok"] = rep.bound_ok;
  doc["constants"] = {{"c_min", rep.constants.c_min},
                      {"c_max", rep.constants.c_max},
                      {"beta_approx", approx(rep.constants.beta)},
                      {"gamma_approx", approx(rep.constants.gamma)},
                      {"mu_approx", approx(rep.constants.mu)}};
  auto checks = nlohmann::ordered_json::array();
  for (const auto& c : rep.inequalities.checks) {
    checks.push_back({{"name", c.name}, {"value", to_string(c.value)}, {"holds", c.holds}});
  }
  doc["inequalities"] = std::move(checks);
  return doc;
}

inline void print_gap_report(const GapReport& rep, std::ostream& out) {
  out << "graph " << rep.graph_label << ": N=" << rep.n_vertices << " M=" << rep.n_edges
      << " tau=" << rep.tau << "\n";
  out << "alpha=" << to_string(rep.alpha) << " k=" << rep.k << "\n";
  out << "completeness: "
      << (rep.completeness ? welfare_text(*rep.completeness) : std::string("undefined (3k < M)"))
      << "\n";
  out << "soundness bound: " << welfare_text(rep.soundness) << "\n";
  out << "optimum: " << welfare_text(rep.optimum) << "\n";
  out << "verdict: " << rep.verdict << (rep.bound_ok ? "" : " (BOUND VIOLATED)") << "\n";
  out << "constants: beta~" << approx_text(rep.constants.beta) << " gamma~"
      << approx_text(rep.constants.gamma) << " mu~" << approx_text(rep.constants.mu) << "\n";
}

namespace detail {

inline unsigned default_workers() {
  if (const char* env = std::getenv("NSWLAB_WORKERS")) {
    try {
      const long v = std::stol(env);
      if (v > 0) return static_cast<unsigned>(v);
    } catch (const std::exception&) {
    }
  }
  return 1;
}

inline std::vector<std::string> split(const std::string& text, char sep) {
  std::vector<std::string> parts;
  std::string part;
  std::istringstream in(text);
  while (std::getline(in, part, sep)) {
    if (!part.empty()) parts.push_back(part);
  }
  return parts;
}

// "1..3", "1,4,9" or "7".
inline std::vector<std::uint64_t> parse_seeds(const std::string& text) {
  std::vector<std::uint64_t> seeds;
  try {
    if (auto dots = text.find(".."); dots != std::string::npos) {
      const auto lo = std::stoull(text.substr(0, dots));
      const auto hi = std::stoull(text.substr(dots + 2));
      for (auto s = lo; s <= hi; ++s) seeds.push_back(s);
    } else {
      for (const auto& s : split(text, ',')) seeds.push_back(std::stoull(s));
    }
  } catch (const std::exception&) {
    throw InputError("bad seed list \"" + text + "\"");
  }
  if (seeds.empty()) throw InputError("empty seed list");
  return seeds;
}

struct GraphOptions {
  std::string path;
  std::string named;
  std::uint64_t seed = 1;

  void add(CLI::App* cmd) {
    cmd->add_option("graph", path, "Graph file (\"N M\" header, then \"u v\" lines)");
    cmd->add_option("--named", named, "K4, K33, Petersen, Prism, or random:N");
    cmd->add_option("--seed", seed, "Seed for random:N graphs");
  }

  std::pair<Graph, std::string> load() const {
    if (path.empty() == named.empty()) {
      throw InputError("give exactly one of a graph file or --named");
    }
    const std::string spec = named.empty() ? path : named;
    return {resolve_graph(spec, seed), spec};
  }
};

struct SearchOptions {
  unsigned workers = default_workers();
  std::size_t limit = 64;
  long time_limit_ms = 0;

  // Only `solve` searches concurrently.
  void add(CLI::App* cmd, bool concurrent) {
    if (concurrent) {
      cmd->add_option("--workers", workers, "Search threads (default $NSWLAB_WORKERS or 1)");
    }
    cmd->add_option("--limit", limit, "Maximum number of branching items");
    cmd->add_option("--time-limit", time_limit_ms, "Search time limit in ms (0: none)");
  }

  SearchConfig config() const {
    SearchConfig cfg;
    cfg.worker_count = workers;
    cfg.item_limit = limit;
    if (time_limit_ms > 0) cfg.time_limit = std::chrono::milliseconds(time_limit_ms);
    return cfg;
  }
};

inline std::filesystem::path default_tags_path(const std::filesystem::path& instance) {
  std::filesystem::path tags = instance;
  tags.replace_extension(".tags.json");
  return tags;
}

}  // namespace detail

/// Runs the command line; returns the process exit code.
inline int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Nash social welfare hardness-gadget toolkit"};
  app.require_subcommand(1);

  // reduce
  auto* reduce = app.add_subcommand("reduce", "Build the NSW instance of a cubic graph");
  detail::GraphOptions reduce_graph;
  reduce_graph.add(reduce);
  std::string alpha_text = "2/5";
  std::optional<int> k_opt;
  bool allow_boundary = false;
  std::string out_path;
  std::string tags_path;
  int vc_limit = 40;
  reduce->add_option("--alpha", alpha_text, "Shared-item weight, strictly inside (1/3, 1/2)");
  reduce->add_option("--k", k_opt, "Number of vertex items (default: minimum cover size)");
  reduce->add_flag("--allow-boundary", allow_boundary, "Admit alpha = 1/3 or 1/2");
  reduce->add_option("--out", out_path, "Instance file to write");
  reduce->add_option("--tags", tags_path, "Tags file (default: <out>.tags.json)");
  reduce->add_option("--vc-limit", vc_limit, "Largest N for the exact vertex cover");

  // solve
  auto* solve = app.add_subcommand("solve", "Exact NSW maximization of an instance file");
  std::string instance_path;
  detail::SearchOptions search_opts;
  bool json = false;
  solve->add_option("instance", instance_path, "Instance file")->required();
  search_opts.add(solve, true);
  solve->add_option("--out", out_path, "Allocation file to write");
  solve->add_flag("--json", json, "Print one JSON document");

  // vc
  auto* vc = app.add_subcommand("vc", "Exact minimum vertex cover");
  detail::GraphOptions vc_graph;
  vc_graph.add(vc);
  vc->add_option("--vc-limit", vc_limit, "Largest N for the exact vertex cover");
  vc->add_flag("--json", json, "Print one JSON document");

  // normalize / analyze
  std::string allocation_path;
  auto* normalize_cmd = app.add_subcommand("normalize", "Apply the normal-form improving moves");
  normalize_cmd->add_option("instance", instance_path, "Instance file")->required();
  normalize_cmd->add_option("tags", tags_path, "Tags file")->required();
  normalize_cmd->add_option("allocation", allocation_path, "Allocation file")->required();
  normalize_cmd->add_option("--out", out_path, "Normalized allocation file to write");
  normalize_cmd->add_flag("--json", json, "Print one JSON document");

  auto* analyze = app.add_subcommand("analyze", "Soundness partition of a normal-form allocation");
  analyze->add_option("instance", instance_path, "Instance file")->required();
  analyze->add_option("tags", tags_path, "Tags file")->required();
  analyze->add_option("allocation", allocation_path, "Allocation file")->required();
  analyze->add_flag("--json", json, "Print one JSON document");

  // gap
  auto* gap = app.add_subcommand("gap", "Completeness value, soundness bound and exact optimum");
  detail::GraphOptions gap_graph;
  gap_graph.add(gap);
  double c_min = 0.5103;
  double c_max = 0.5155;
  gap->add_option("--alpha", alpha_text, "Shared-item weight");
  gap->add_option("--k", k_opt, "Number of vertex items (default: minimum cover size)");
  gap->add_option("--cmin", c_min, "Completeness cover fraction");
  gap->add_option("--cmax", c_max, "Soundness cover fraction");
  gap->add_flag("--allow-boundary", allow_boundary, "Admit alpha = 1/3 or 1/2");
  gap->add_option("--vc-limit", vc_limit, "Largest N for the exact vertex cover");
  gap->add_flag("--json", json, "Print one JSON document");
  detail::SearchOptions serial_opts;
  serial_opts.workers = 1;
  serial_opts.add(gap, false);

  // sweep
  auto* sweep = app.add_subcommand("sweep", "CSV of gap reports over alphas, graphs and seeds");
  std::string alpha_grid;
  std::string graphs = "K4,K33";
  std::string seeds = "1";
  std::string k_offsets = "0";
  sweep->add_option("--alpha-grid", alpha_grid, "Comma-separated alphas, e.g. 2/5,5/12")
      ->required();
  sweep->add_option("--graphs", graphs, "Comma-separated graph specs (names, random:N, files)");
  sweep->add_option("--seeds", seeds, "Seeds for random:N graphs, e.g. 1..3");
  sweep->add_option("--k-offsets", k_offsets, "k relative to the cover size, e.g. -1,0");
  sweep->add_option("--cmin", c_min, "Completeness cover fraction");
  sweep->add_option("--cmax", c_max, "Soundness cover fraction");
  sweep->add_flag("--allow-boundary", allow_boundary, "Admit alpha = 1/3 or 1/2");
  sweep->add_option("--out", out_path, "CSV file to write (default: stdout)");
  serial_opts.add(sweep, false);

  // constants
  auto* constants = app.add_subcommand("constants", "Gap constants and exchange inequalities");
  constants->add_option("--alpha", alpha_text, "Shared-item weight");
  constants->add_option("--cmin", c_min, "Completeness cover fraction");
  constants->add_option("--cmax", c_max, "Soundness cover fraction");
  constants->add_flag("--json", json, "Print one JSON document");

  std::vector<std::string> argv_store{"nswlab"};
  argv_store.insert(argv_store.end(), args.begin(), args.end());
  std::vector<char*> argv;
  for (auto& a : argv_store) argv.push_back(a.data());
  try {
    app.parse(static_cast<int>(argv.size()), argv.data());
  } catch (const CLI::CallForHelp& e) {
    app.exit(e, out, err);
    return kExitOk;
  } catch (const CLI::ParseError& e) {
    app.exit(e, out, err);
    return kExitInput;
  }

  const VertexCoverOptions vc_options{vc_limit};
  try {
    if (*reduce) {
      auto [g, label] = reduce_graph.load();
      const Rational alpha = parse_rational(alpha_text);
      const int k = k_opt ? *k_opt : cover_number(g, vc_options);
      const ReducedInstance r = build_instance(g, {alpha, k, allow_boundary});
      if (!out_path.empty()) {
        write_instance(r.instance(), out_path);
        write_tags(r, tags_path.empty() ? detail::default_tags_path(out_path)
                                        : std::filesystem::path(tags_path));
      }
      out << "n=" << r.instance().agent_count() << " m=" << r.instance().item_count() << "\n";
    } else if (*solve) {
      const Instance instance = read_instance(instance_path);
      SolveResult result;
      try {
        result = exact_max_nsw(instance, search_opts.config());
      } catch (const SearchTimeout& e) {
        err << "error: " << e.what() << "\n";
        if (e.partial()) err << "partial product=" << to_string(e.partial()->value.product) << "\n";
        return kExitResource;
      }
      if (!out_path.empty()) write_allocation(instance, result.allocation, out_path);
      if (json) {
        auto doc = welfare_json(result.value);
        doc["allocation"] = allocation_to_json(instance, result.allocation);
        out << doc.dump(2) << "\n";
      } else {
        out << "product=" << to_string(result.value.product) << "\n";
        out << "nsw_approx=" << approx_text(result.value.nsw()) << "\n";
        if (out_path.empty()) out << allocation_to_json(instance, result.allocation).dump(2) << "\n";
      }
    } else if (*vc) {
      auto [g, label] = vc_graph.load();
      const VertexSet cover = min_vertex_cover(g, vc_options);
      if (json) {
        nlohmann::ordered_json doc;
        doc["N"] = g.vertex_count();
        doc["M"] = g.edge_count();
        doc["tau"] = cover.size();
        doc["cover"] = cover.members();
        out << doc.dump(2) << "\n";
      } else {
        out << "tau=" << cover.size() << "\ncover=";
        for (std::size_t i = 0; i < cover.size(); ++i) out << (i ? " " : "") << cover.members()[i];
        out << "\n";
      }
    } else if (*normalize_cmd) {
      const ReducedInstance r = read_reduced(instance_path, tags_path);
      const Allocation before = read_allocation(r.instance(), allocation_path);
      const Allocation after = normalize(r, before);
      const auto v0 = nsw_product(r.instance(), before);
      const auto v1 = nsw_product(r.instance(), after);
      if (!out_path.empty()) write_allocation(r.instance(), after, out_path);
      if (json) {
        nlohmann::ordered_json doc;
        doc["before"] = welfare_json(v0);
        doc["after"] = welfare_json(v1);
        doc["allocation"] = allocation_to_json(r.instance(), after);
        out << doc.dump(2) << "\n";
      } else {
        out << "before=" << to_string(v0.product) << "\nafter=" << to_string(v1.product) << "\n";
        if (out_path.empty()) out << allocation_to_json(r.instance(), after).dump(2) << "\n";
      }
    } else if (*analyze) {
      const ReducedInstance r = read_reduced(instance_path, tags_path);
      const Allocation alloc = read_allocation(r.instance(), allocation_path);
      const StructureProfile p = analyze_structure(r, alloc);
      const IdentityReport report = verify_identities(r, p);
      const bool matches =
          compare(product_formula(p, r.alpha()), nsw_product(r.instance(), alloc)) == 0;
      if (json) {
        nlohmann::ordered_json doc;
        doc["profile"] = profile_to_json(p, r.alpha());
        doc["identities"] = identities_to_json(report);
        doc["product_matches_allocation"] = matches;
        out << doc.dump(2) << "\n";
      } else {
        out << "|C|=" << p.C.size() << " |I2|=" << p.I2.size() << " |I3|=" << p.I3.size()
            << " |E0|=" << p.E0.size() << " |E1C|=" << p.E1C.size() << " |E1I|=" << p.E1I.size()
            << " |E2|=" << p.E2.size() << " t=" << p.t << "\n";
        out << "product=" << to_string(product_formula(p, r.alpha()).product)
            << (matches ? " (matches allocation)" : " (DOES NOT match allocation)") << "\n";
        for (const auto& c : report.checks) {
          out << (c.holds ? "[ok]   " : "[FAIL] ") << c.name << ": " << c.lhs << " "
              << c.relation << " " << c.rhs << "\n";
        }
      }
    } else if (*gap) {
      auto [g, label] = gap_graph.load();
      const auto rep = make_gap_report(g, label, parse_rational(alpha_text), k_opt, c_min, c_max,
                                       allow_boundary, serial_opts.config(), vc_options);
      if (json) {
        out << gap_report_json(rep).dump(2) << "\n";
      } else {
        print_gap_report(rep, out);
      }
    } else if (*sweep) {
      std::vector<Rational> alphas;
      for (const auto& a : detail::split(alpha_grid, ',')) {
        alphas.push_back(parse_rational(a));
        check_alpha(alphas.back(), allow_boundary);
      }
      if (alphas.empty()) throw InputError("empty alpha grid");
      std::vector<std::pair<Graph, std::string>> corpus;
      for (const auto& spec : detail::split(graphs, ',')) {
        if (spec.rfind("random:", 0) == 0) {
          for (auto seed : detail::parse_seeds(seeds)) {
            corpus.emplace_back(resolve_graph(spec, seed), spec + "#" + std::to_string(seed));
          }
        } else {
          corpus.emplace_back(resolve_graph(spec), spec);
        }
      }
      if (corpus.empty()) throw InputError("empty graph list");
      std::vector<int> offsets;
      for (const auto& o : detail::split(k_offsets, ',')) {
        try {
          offsets.push_back(std::stoi(o));
        } catch (const std::exception&) {
          throw InputError("bad k offset \"" + o + "\"");
        }
      }
      if (offsets.empty()) throw InputError("empty k offset list");
      std::ostringstream csv;
      csv << "alpha,graph,N,M,tau,k,completeness,soundness_bound,optimum,verdict,bound_ok,"
             "ineq_1,ineq_2,ineq_3,ineq_4\n";
      for (const auto& alpha : alphas) {
        for (const auto& [g, label] : corpus) {
          const int tau = cover_number(g, vc_options);
          for (int offset : offsets) {
            const int k = tau + offset;
            if (k < 0 || k > g.vertex_count()) continue;
            const auto rep = make_gap_report(g, label, alpha, k, c_min, c_max, allow_boundary,
                                             serial_opts.config(), vc_options);
            csv << to_string(alpha) << "," << label << "," << rep.n_vertices << ","
                << rep.n_edges << "," << rep.tau << "," << rep.k << ","
                << (rep.completeness ? to_string(rep.completeness->product) : "") << ","
                << to_string(rep.soundness.product) << "," << to_string(rep.optimum.product)
                << "," << rep.verdict << "," << (rep.bound_ok ? "true" : "false");
            for (const auto& c : rep.inequalities.checks) csv << "," << (c.holds ? "true" : "false");
            csv << "\n";
          }
        }
      }
      if (out_path.empty()) {
        out << csv.str();
      } else {
        nswlab::detail::spit(out_path, csv.str());
      }
    } else if (*constants) {
      const Rational alpha = parse_rational(alpha_text);
      const auto h = hardness_constants(alpha, c_min, c_max);
      const auto ineq = lemma2_inequalities(alpha);
      if (json) {
        nlohmann::ordered_json doc;
        doc["alpha"] = to_string(alpha);
        doc["c_min"] = h.c_min;
        doc["c_max"] = h.c_max;
        doc["beta_approx"] = approx(h.beta);
        doc["gamma_approx"] = approx(h.gamma);
        doc["mu_approx"] = approx(h.mu);
        auto checks = nlohmann::ordered_json::array();
        for (const auto& c : ineq.checks) {
          checks.push_back({{"name", c.name}, {"value", to_string(c.value)}, {"holds", c.holds}});
        }
        doc["inequalities"] = std::move(checks);
        out << doc.dump(2) << "\n";
      } else {
        out << "beta~" << approx_text(h.beta) << " gamma~" << approx_text(h.gamma) << " mu~"
            << approx_text(h.mu) << "\n";
        for (const auto& c : ineq.checks) {
          out << (c.holds ? "[ok]   " : "[FAIL] ") << c.name << ": " << to_string(c.value) << "\n";
        }
      }
    }
  } catch (const InputError& e) {
    err << "error: " << e.what() << "\n";
    return kExitInput;
  } catch (const ResourceError& e) {
    err << "error: " << e.what() << "\n";
    return kExitResource;
  }
  return kExitOk;
}

}  // namespace nswlab::cli
