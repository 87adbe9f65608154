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

#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>

#include <json.hpp>

#include "nswlab/core.hpp"

namespace nswlab {

namespace detail {

inline std::string slurp(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw InputError("cannot open " + path.string());
  std::ostringstream buf;
  buf << in.rdbuf();
  return buf.str();
}

inline void spit(const std::filesystem::path& path, const std::string& text) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw InputError("cannot write " + path.string());
  out << text;
  if (!text.empty() && text.back() != '\n') out << '\n';
}

inline nlohmann::json parse_json(const std::string& text, const std::string& origin) {
  try {
    return nlohmann::json::parse(text);
  } catch (const nlohmann::json::parse_error& e) {
    throw ParseError(origin + ": " + e.what());
  }
}

}  // namespace detail

// Instance file: {"agents": [...], "items": [{"name": ..., "utilities": {agent: "p/q"}}]}.
inline nlohmann::ordered_json instance_to_json(const Instance& instance) {
  nlohmann::ordered_json doc;
  doc["agents"] = instance.agents();
  auto items = nlohmann::ordered_json::array();
  for (std::size_t i = 0; i < instance.item_count(); ++i) {
    nlohmann::ordered_json item;
    item["name"] = instance.items()[i];
    auto utilities = nlohmann::ordered_json::object();
    for (const auto& e : instance.interested(i)) {
      utilities[instance.agents()[e.agent]] = to_string(e.value);
    }
    item["utilities"] = std::move(utilities);
    items.push_back(std::move(item));
  }
  doc["items"] = std::move(items);
  return doc;
}

inline Instance instance_from_json(const nlohmann::json& doc, const std::string& origin = "instance") {
  auto fail = [&](const std::string& field, const std::string& what) -> ParseError {
    return ParseError(origin + ": " + field + ": " + what);
  };
  if (!doc.is_object()) throw fail("<root>", "expected a JSON object");
  if (!doc.contains("agents") || !doc["agents"].is_array()) {
    throw fail("agents", "missing or not an array");
  }
  if (!doc.contains("items") || !doc["items"].is_array()) {
    throw fail("items", "missing or not an array");
  }
  std::vector<std::string> agents;
  std::unordered_map<std::string, std::size_t> agent_index;
  for (std::size_t a = 0; a < doc["agents"].size(); ++a) {
    const auto& name = doc["agents"][a];
    const std::string field = "agents[" + std::to_string(a) + "]";
    if (!name.is_string()) throw fail(field, "expected a string");
    if (!agent_index.emplace(name.get<std::string>(), a).second) {
      throw fail(field, "duplicate agent \"" + name.get<std::string>() + "\"");
    }
    agents.push_back(name.get<std::string>());
  }
  std::vector<std::string> items;
  std::vector<std::vector<UtilityEntry>> utilities;
  std::unordered_map<std::string, std::size_t> seen_items;
  for (std::size_t i = 0; i < doc["items"].size(); ++i) {
    const auto& item = doc["items"][i];
    const std::string field = "items[" + std::to_string(i) + "]";
    if (!item.is_object() || !item.contains("name") || !item["name"].is_string()) {
      throw fail(field, "expected an object with a string \"name\"");
    }
    const auto name = item["name"].get<std::string>();
    if (!seen_items.emplace(name, i).second) throw fail(field, "duplicate item \"" + name + "\"");
    std::vector<UtilityEntry> row;
    if (item.contains("utilities")) {
      const auto& u = item["utilities"];
      if (!u.is_object()) throw fail(field + ".utilities", "expected an object");
      for (const auto& [agent, literal] : u.items()) {
        const std::string ufield = field + ".utilities[\"" + agent + "\"]";
        auto it = agent_index.find(agent);
        if (it == agent_index.end()) throw fail(ufield, "unknown agent");
        if (!literal.is_string()) throw fail(ufield, "expected a rational string");
        Rational value;
        try {
          value = parse_rational(literal.get<std::string>());
        } catch (const ParseError& e) {
          throw fail(ufield, e.what());
        }
        if (value < 0) throw fail(ufield, "negative utility " + literal.get<std::string>());
        row.push_back({it->second, value});
      }
    }
    items.push_back(name);
    utilities.push_back(std::move(row));
  }
  return Instance(std::move(agents), std::move(items), std::move(utilities));
}

inline std::string format_instance(const Instance& instance) {
  return instance_to_json(instance).dump(2) + "\n";
}

inline Instance parse_instance(const std::string& text, const std::string& origin = "instance") {
  return instance_from_json(detail::parse_json(text, origin), origin);
}

inline Instance read_instance(const std::filesystem::path& path) {
  return parse_instance(detail::slurp(path), path.string());
}

inline void write_instance(const Instance& instance, const std::filesystem::path& path) {
  detail::spit(path, format_instance(instance));
}

// Allocation file: {item name: agent name}, written in item order.
inline nlohmann::ordered_json allocation_to_json(const Instance& instance, const Allocation& alloc) {
  require_valid(instance, alloc);
  auto doc = nlohmann::ordered_json::object();
  for (std::size_t i = 0; i < instance.item_count(); ++i) {
    doc[instance.items()[i]] = instance.agents()[static_cast<std::size_t>(alloc.holder[i])];
  }
  return doc;
}

// Items missing from the file stay unassigned; `validate` reports them.
inline Allocation allocation_from_json(const Instance& instance, const nlohmann::json& doc,
                                       const std::string& origin = "allocation") {
  if (!doc.is_object()) throw ParseError(origin + ": expected a JSON object");
  Allocation alloc{std::vector<AgentIndex>(instance.item_count(), kUnassigned)};
  for (const auto& [item, agent] : doc.items()) {
    auto i = instance.item_index(item);
    if (!i) throw ParseError(origin + ": [\"" + item + "\"]: unknown item");
    if (!agent.is_string()) throw ParseError(origin + ": [\"" + item + "\"]: expected agent name");
    auto a = instance.agent_index(agent.get<std::string>());
    if (!a) {
      throw ParseError(origin + ": [\"" + item + "\"]: unknown agent \"" +
                       agent.get<std::string>() + "\"");
    }
    alloc.holder[*i] = static_cast<AgentIndex>(*a);
  }
  return alloc;
}

inline Allocation read_allocation(const Instance& instance, const std::filesystem::path& path) {
  return allocation_from_json(instance, detail::parse_json(detail::slurp(path), path.string()),
                              path.string());
}

inline void write_allocation(const Instance& instance, const Allocation& alloc,
                             const std::filesystem::path& path) {
  detail::spit(path, allocation_to_json(instance, alloc).dump(2) + "\n");
}

}  // namespace nswlab
