/*
 * Copyright 2026 The tltl authors
 *
 * Licensed under the Apache License, Version 2.0 (the "License");
 * you may not use this file except in compliance with the License.
 * You may obtain a copy of the License at
 *
 *     http://www.apache.org/licenses/LICENSE-2.0
 *
 * Unless required by applicable law or agreed to in writing, software
 * distributed under the License is distributed on an "AS IS" BASIS,
 * WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
 * See the License for the specific language governing permissions and
 * limitations under the License.
 */

#pragma once

#include <fstream>
#include <sstream>
#include <string>
#include <vector>

#include <json.hpp>

#include "tltl/kripke.hpp"
#include "tltl/team.hpp"

namespace tltl {

// Team file:      {"alphabet": [...], "traces": [<trace literal>...]}
// Trace literal:  {"prefix": [["p"],[]], "loop": [["q"]]}
// Structure file: {"states": n, "edges": [[i,j]...], "labels": [["p",...]...],
//                  "root": 0}

inline Label label_from_json(const nlohmann::json& j, const std::vector<std::string>& alphabet) {
  Label l;
  for (const auto& name : j) {
    const std::string p = name.get<std::string>();
    bool found = false;
    for (std::size_t i = 0; i < alphabet.size(); ++i)
      if (alphabet[i] == p) {
        l.set(i);
        found = true;
        break;
      }
    if (!found) throw TltlError("proposition '" + p + "' not in declared alphabet");
  }
  return l;
}

inline nlohmann::json label_to_json(const Label& l, const std::vector<std::string>& alphabet) {
  nlohmann::json out = nlohmann::json::array();
  for (std::size_t i = 0; i < alphabet.size(); ++i)
    if (l.test(i)) out.push_back(alphabet[i]);
  return out;
}

inline LassoTrace trace_from_json(const nlohmann::json& j,
                                  const std::vector<std::string>& alphabet) {
  LassoTrace t;
  for (const auto& lab : j.at("prefix")) t.prefix.push_back(label_from_json(lab, alphabet));
  for (const auto& lab : j.at("loop")) t.loop.push_back(label_from_json(lab, alphabet));
  if (t.loop.empty()) throw TltlError("trace loop must be nonempty");
  return t;
}

inline nlohmann::json trace_to_json(const LassoTrace& t, const std::vector<std::string>& alphabet) {
  nlohmann::json out;
  out["prefix"] = nlohmann::json::array();
  for (const auto& l : t.prefix) out["prefix"].push_back(label_to_json(l, alphabet));
  out["loop"] = nlohmann::json::array();
  for (const auto& l : t.loop) out["loop"].push_back(label_to_json(l, alphabet));
  return out;
}

inline Team team_from_json(const nlohmann::json& j) {
  std::vector<std::string> alphabet = j.at("alphabet").get<std::vector<std::string>>();
  std::vector<LassoTrace> traces;
  for (const auto& tr : j.at("traces")) traces.push_back(trace_from_json(tr, alphabet));
  return Team::make(std::move(alphabet), traces);
}

inline nlohmann::json team_to_json(const Team& t) {
  nlohmann::json out;
  out["alphabet"] = t.alphabet;
  out["traces"] = nlohmann::json::array();
  for (const auto& tr : t.traces) out["traces"].push_back(trace_to_json(tr, t.alphabet));
  return out;
}

inline Kripke kripke_from_json(const nlohmann::json& j) {
  Kripke k;
  k.alphabet = j.contains("alphabet") ? j.at("alphabet").get<std::vector<std::string>>()
                                      : std::vector<std::string>{};
  std::size_t n = j.at("states").get<std::size_t>();
  // labels may introduce propositions; collect the alphabet if not declared
  if (k.alphabet.empty()) {
    for (const auto& lab : j.at("labels"))
      for (const auto& p : lab) {
        std::string name = p.get<std::string>();
        if (std::find(k.alphabet.begin(), k.alphabet.end(), name) == k.alphabet.end())
          k.alphabet.push_back(name);
      }
  }
  for (const auto& lab : j.at("labels")) k.labels.push_back(label_from_json(lab, k.alphabet));
  if (k.labels.size() != n) throw TltlError("labels array size must equal state count");
  for (const auto& e : j.at("edges"))
    k.edges.emplace_back(e.at(0).get<std::uint32_t>(), e.at(1).get<std::uint32_t>());
  k.num_states = static_cast<std::uint32_t>(n);
  k.root = j.contains("root") ? j.at("root").get<std::uint32_t>() : 0;
  return k;
}

inline nlohmann::json kripke_to_json(const Kripke& k) {
  nlohmann::json out;
  out["states"] = k.num_states;
  out["edges"] = nlohmann::json::array();
  for (const auto& [a, b] : k.edges) out["edges"].push_back({a, b});
  out["labels"] = nlohmann::json::array();
  for (const auto& l : k.labels) out["labels"].push_back(label_to_json(l, k.alphabet));
  out["root"] = k.root;
  out["alphabet"] = k.alphabet;
  return out;
}

inline std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw TltlError("cannot open file: " + path);
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

inline void write_file(const std::string& path, const std::string& content) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw TltlError("cannot write file: " + path);
  out << content;
}

inline Team load_team(const std::string& path) {
  return team_from_json(nlohmann::json::parse(read_file(path)));
}

inline Kripke load_kripke(const std::string& path) {
  return kripke_from_json(nlohmann::json::parse(read_file(path)));
}

}  // namespace tltl
