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

#include <numeric>
#include <optional>
#include <string>
#include <unordered_map>
#include <unordered_set>
#include <vector>

#include "tltl/trace.hpp"

namespace tltl {

struct HorizonOverflow : TltlError {
  using TltlError::TltlError;
};

// Teams are at most 64 traces so subteams fit in one bitmask word.
inline constexpr std::size_t kMaxTeam = 64;
using TeamMask = std::uint64_t;

inline TeamMask full_mask(std::size_t n) {
  return n >= 64 ? ~0ull : ((1ull << n) - 1);
}

// A finite set of normalized lasso traces over a declared alphabet.  Traces
// are deduplicated under semantic (= structural after normalize) equality and
// keep their insertion order as stable base indices.
struct Team {
  std::vector<std::string> alphabet;
  std::vector<LassoTrace> traces;

  static Team make(std::vector<std::string> alphabet, const std::vector<LassoTrace>& raw) {
    if (alphabet.size() > kMaxAlphabet) throw AlphabetOverflow("alphabet exceeds cap");
    Team t;
    t.alphabet = std::move(alphabet);
    std::unordered_set<LassoTrace, LassoHash> seen;
    for (const auto& tr : raw) {
      LassoTrace n = normalize(tr);
      for (const auto& l : n.prefix) check_label(l, t.alphabet.size());
      for (const auto& l : n.loop) check_label(l, t.alphabet.size());
      if (seen.insert(n).second) {
        if (t.traces.size() == kMaxTeam) throw TltlError("team exceeds trace cap");
        t.traces.push_back(std::move(n));
      }
    }
    return t;
  }

  std::optional<std::size_t> index_of(const std::string& prop) const {
    for (std::size_t i = 0; i < alphabet.size(); ++i)
      if (alphabet[i] == prop) return i;
    return std::nullopt;
  }

  std::size_t size() const { return traces.size(); }
  bool empty() const { return traces.empty(); }

  // Set equality, ignoring trace order.
  bool same_traces(const Team& o) const {
    if (traces.size() != o.traces.size()) return false;
    std::unordered_set<LassoTrace, LassoHash> s(traces.begin(), traces.end());
    for (const auto& t : o.traces)
      if (!s.count(t)) return false;
    return true;
  }

 private:
  static void check_label(const Label& l, std::size_t n) {
    for (std::size_t i = n; i < kMaxAlphabet; ++i)
      if (l.test(i)) throw TltlError("label bit outside declared alphabet");
  }
};

// P = longest prefix, L = lcm of loop lengths, H = P + L.  For every trace
// and k >= P, suffix(t, k + L) = suffix(t, k), so shifts canonicalize into
// [0, H).
struct Horizon {
  std::size_t prefix_len = 0;
  std::size_t loop_lcm = 1;
  std::size_t horizon() const { return prefix_len + loop_lcm; }
};

inline Horizon horizon(const Team& t) {
  Horizon h;
  if (t.traces.empty()) return h;
  for (const auto& tr : t.traces) {
    h.prefix_len = std::max(h.prefix_len, tr.prefix.size());
    h.loop_lcm = std::lcm(h.loop_lcm, tr.loop.size());
    if (h.loop_lcm > (1u << 20))
      throw HorizonOverflow("loop lcm exceeds 2^20; team loops too heterogeneous");
  }
  return h;
}

inline std::size_t canonical_shift(const Horizon& h, std::size_t k) {
  if (k < h.prefix_len) return k;
  return h.prefix_len + (k - h.prefix_len) % h.loop_lcm;
}

inline std::size_t canonical_shift(const Team& t, std::size_t k) {
  return canonical_shift(horizon(t), k);
}

inline Team team_suffix(const Team& t, std::size_t k) {
  std::vector<LassoTrace> out;
  out.reserve(t.traces.size());
  for (const auto& tr : t.traces) out.push_back(suffix(tr, k));
  return Team::make(t.alphabet, out);
}

// Snapshot of the team as a single lasso over the product alphabet
// (prop, trace index); bit layout is trace * |alphabet| + prop.
struct Snapshot {
  LassoTrace trace;            // normalized
  std::size_t team_size = 0;
  std::size_t alphabet_size = 0;
};

inline Snapshot snapshot(const Team& t) {
  Snapshot s;
  s.team_size = t.traces.size();
  s.alphabet_size = t.alphabet.size();
  if (s.team_size * s.alphabet_size > kMaxAlphabet)
    throw AlphabetOverflow("snapshot product alphabet exceeds cap");
  Horizon h = horizon(t);
  LassoTrace sn;
  auto column = [&](std::size_t pos) {
    Label col;
    for (std::size_t i = 0; i < t.traces.size(); ++i) {
      const Label& l = at(t.traces[i], pos);
      for (std::size_t p = 0; p < s.alphabet_size; ++p)
        if (l.test(p)) col.set(i * s.alphabet_size + p);
    }
    return col;
  };
  for (std::size_t k = 0; k < h.prefix_len; ++k) sn.prefix.push_back(column(k));
  for (std::size_t k = 0; k < h.loop_lcm; ++k) sn.loop.push_back(column(h.prefix_len + k));
  s.trace = normalize(std::move(sn));
  return s;
}

// Permute label bits of `t` into the order of `alphabet`.  Every proposition
// actually used by a trace must exist in the target alphabet.
inline Team reindex_team(const Team& t, const std::vector<std::string>& alphabet) {
  if (t.alphabet == alphabet) return t;
  std::vector<std::optional<std::size_t>> map(t.alphabet.size());
  for (std::size_t i = 0; i < t.alphabet.size(); ++i)
    for (std::size_t j = 0; j < alphabet.size(); ++j)
      if (alphabet[j] == t.alphabet[i]) {
        map[i] = j;
        break;
      }
  auto remap = [&](const Label& l) {
    Label out;
    for (std::size_t i = 0; i < t.alphabet.size(); ++i)
      if (l.test(i)) {
        if (!map[i]) throw TltlError("proposition '" + t.alphabet[i] + "' missing from target");
        out.set(*map[i]);
      }
    return out;
  };
  std::vector<LassoTrace> traces;
  for (const auto& tr : t.traces) {
    LassoTrace n;
    for (const auto& l : tr.prefix) n.prefix.push_back(remap(l));
    for (const auto& l : tr.loop) n.loop.push_back(remap(l));
    traces.push_back(std::move(n));
  }
  return Team::make(alphabet, traces);
}

// Rebuild per-trace lassos from snapshot columns (inverse of snapshot up to
// normalization).
inline Team team_from_snapshot_columns(const std::vector<std::string>& alphabet,
                                       std::size_t team_size,
                                       const std::vector<Label>& prefix_cols,
                                       const std::vector<Label>& loop_cols) {
  std::vector<LassoTrace> traces;
  const std::size_t n = alphabet.size();
  for (std::size_t i = 0; i < team_size; ++i) {
    LassoTrace tr;
    auto slice = [&](const Label& col) {
      Label l;
      for (std::size_t p = 0; p < n; ++p)
        if (col.test(i * n + p)) l.set(p);
      return l;
    };
    for (const auto& c : prefix_cols) tr.prefix.push_back(slice(c));
    for (const auto& c : loop_cols) tr.loop.push_back(slice(c));
    if (tr.loop.empty()) tr.loop.push_back(Label{});
    traces.push_back(std::move(tr));
  }
  return Team::make(alphabet, traces);
}

}  // namespace tltl
