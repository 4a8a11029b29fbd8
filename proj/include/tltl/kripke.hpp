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

#include <algorithm>
#include <cstdint>
#include <set>
#include <string>
#include <unordered_set>
#include <vector>

#include "tltl/formula.hpp"
#include "tltl/team.hpp"
#include "tltl/trace.hpp"

namespace tltl {

// Finite serial rooted labeled transition system.  States are 0..n-1.
struct Kripke {
  std::uint32_t num_states = 0;
  std::vector<std::pair<std::uint32_t, std::uint32_t>> edges;
  std::vector<Label> labels;
  std::vector<std::string> alphabet;
  std::uint32_t root = 0;

  std::vector<std::vector<std::uint32_t>> successors() const {
    std::vector<std::vector<std::uint32_t>> succ(num_states);
    for (auto [a, b] : edges)
      if (a < num_states && b < num_states) succ[a].push_back(b);
    return succ;
  }
};

struct KripkeDiagnostic {
  enum class Code { NotSerial, BadRoot, BadEdge, BadLabel };
  Code code;
  std::uint32_t state;
  std::string message;
};

inline std::vector<KripkeDiagnostic> validate(const Kripke& k) {
  std::vector<KripkeDiagnostic> out;
  using Code = KripkeDiagnostic::Code;
  if (k.num_states == 0 || k.root >= k.num_states)
    out.push_back({Code::BadRoot, k.root, "root state out of range"});
  for (auto [a, b] : k.edges)
    if (a >= k.num_states || b >= k.num_states)
      out.push_back({Code::BadEdge, a, "edge endpoint out of range"});
  std::vector<bool> has_succ(k.num_states, false);
  for (auto [a, b] : k.edges)
    if (a < k.num_states && b < k.num_states) has_succ[a] = true;
  for (std::uint32_t w = 0; w < k.num_states; ++w)
    if (!has_succ[w])
      out.push_back({Code::NotSerial, w, "state " + std::to_string(w) + " has no successor"});
  for (std::uint32_t w = 0; w < k.num_states && w < k.labels.size(); ++w)
    for (std::size_t bit = k.alphabet.size(); bit < kMaxAlphabet; ++bit)
      if (k.labels[w].test(bit)) {
        out.push_back({Code::BadLabel, w, "label bit outside alphabet"});
        break;
      }
  return out;
}

// Does some path from the root induce exactly t?  Decided on the product of
// states with canonical trace positions: t is a member iff the matching
// product graph contains a reachable cycle.
inline bool trace_member(const Kripke& k, const LassoTrace& raw) {
  LassoTrace t = normalize(raw);
  const std::size_t period = t.prefix.size() + t.loop.size();
  auto canon = [&](std::size_t pos) {
    return pos < t.prefix.size()
               ? pos
               : t.prefix.size() + (pos - t.prefix.size()) % t.loop.size();
  };
  auto succ = k.successors();
  const std::size_t total = k.num_states * period;
  auto id = [&](std::uint32_t w, std::size_t pos) { return w * period + pos; };
  if (k.num_states == 0 || !(k.labels[k.root] == at(t, 0))) return false;

  // DFS with on-stack cycle detection over valid product nodes.
  std::vector<std::uint8_t> color(total, 0);  // 0 unvisited, 1 on stack, 2 done
  struct Frame {
    std::uint32_t w;
    std::size_t pos;
    std::size_t next = 0;
  };
  std::vector<Frame> stack{{k.root, 0, 0}};
  color[id(k.root, 0)] = 1;
  while (!stack.empty()) {
    Frame& f = stack.back();
    if (f.next < succ[f.w].size()) {
      std::uint32_t v = succ[f.w][f.next++];
      std::size_t npos = canon(f.pos + 1);
      if (!(k.labels[v] == at(t, npos))) continue;
      std::size_t nid = id(v, npos);
      if (color[nid] == 1) return true;  // reachable matching cycle
      if (color[nid] == 0) {
        color[nid] = 1;
        stack.push_back({v, npos, 0});
      }
    } else {
      color[id(f.w, f.pos)] = 2;
      stack.pop_back();
    }
  }
  return false;
}

// All normalized member lassos with prefix <= max_prefix and loop <=
// max_loop.  Realizable label words are enumerated by subset construction, so
// only labels that actually occur in the structure are ever considered.
inline std::vector<LassoTrace> enumerate_ulp_traces(const Kripke& k, std::size_t max_prefix,
                                                    std::size_t max_loop,
                                                    std::size_t cap = 1u << 20) {
  std::vector<LassoTrace> out;
  std::unordered_set<LassoTrace, LassoHash> seen;
  auto succ = k.successors();
  std::vector<Label> word;

  auto try_word = [&](std::size_t len) {
    // split the current word into prefix + loop candidates
    for (std::size_t lp = 1; lp <= len && lp <= max_loop; ++lp) {
      std::size_t p = len - lp;
      if (p > max_prefix) continue;
      LassoTrace cand;
      cand.prefix.assign(word.begin(), word.begin() + static_cast<std::ptrdiff_t>(p));
      cand.loop.assign(word.begin() + static_cast<std::ptrdiff_t>(p), word.end());
      cand = normalize(std::move(cand));
      if (seen.count(cand)) continue;
      if (trace_member(k, cand)) {
        if (out.size() == cap) throw TltlError("trace enumeration exceeds output cap");
        seen.insert(cand);
        out.push_back(cand);
      }
    }
  };

  // DFS over realizable words of length <= max_prefix + max_loop
  struct Frame {
    std::vector<std::uint32_t> states;
    std::unordered_set<Label> tried;
  };
  if (k.num_states == 0) return out;
  std::vector<Frame> stack;
  word.push_back(k.labels[k.root]);
  stack.push_back({{k.root}, {}});
  try_word(1);
  while (!stack.empty()) {
    Frame& f = stack.back();
    Label next_label;
    bool found = false;
    if (word.size() < max_prefix + max_loop) {
      for (std::uint32_t w : f.states) {
        for (std::uint32_t v : succ[w])
          if (!f.tried.count(k.labels[v])) {
            next_label = k.labels[v];
            found = true;
            break;
          }
        if (found) break;
      }
    }
    if (!found) {
      stack.pop_back();
      word.pop_back();
      continue;
    }
    f.tried.insert(next_label);
    std::vector<std::uint32_t> nxt;
    std::vector<bool> in(k.num_states, false);
    for (std::uint32_t w : f.states)
      for (std::uint32_t v : succ[w])
        if (k.labels[v] == next_label && !in[v]) {
          in[v] = true;
          nxt.push_back(v);
        }
    word.push_back(next_label);
    stack.push_back({std::move(nxt), {}});
    try_word(word.size());
  }
  std::sort(out.begin(), out.end(), [](const LassoTrace& a, const LassoTrace& b) {
    auto key = [](const LassoTrace& t) {
      std::vector<std::string> v;
      for (const auto& l : t.prefix) v.push_back(l.to_string());
      v.push_back("|");
      for (const auto& l : t.loop) v.push_back(l.to_string());
      return v;
    };
    return key(a) < key(b);
  });
  return out;
}

// K' with fresh per-state marker propositions, and the classical formula
// satisfied by exactly the traces of K':
//   p_r ∧ G ⋁_w (p_w ∧ ⋀_{w'≠w} ¬p_{w'} ∧ ⋀_{q∈η(w)} q ∧ ⋀_{q∈Φ∖η(w)} ¬q
//                ∧ ⋁_{(w,w')∈R} X p_{w'})
// The q-conjunctions range over the declared alphabet of K.
struct ChiResult {
  Kripke structure;  // K'
  FormulaId chi;
};

inline ChiResult chi_formula(const Kripke& k, FormulaStore& st) {
  Kripke aug = k;
  const std::size_t phi_n = k.alphabet.size();
  if (phi_n + k.num_states > kMaxAlphabet) throw AlphabetOverflow("marker props exceed cap");
  std::vector<FormulaId> marker(k.num_states);
  for (std::uint32_t w = 0; w < k.num_states; ++w) {
    std::string name = "@pw_" + std::to_string(w);
    aug.alphabet.push_back(name);
    marker[w] = st.prop(name);
    aug.labels[w].set(phi_n + w);
  }
  auto succ = k.successors();
  std::vector<FormulaId> branches;
  for (std::uint32_t w = 0; w < k.num_states; ++w) {
    std::vector<FormulaId> parts{marker[w]};
    for (std::uint32_t w2 = 0; w2 < k.num_states; ++w2)
      if (w2 != w) parts.push_back(st.neg(marker[w2]));
    for (std::size_t q = 0; q < phi_n; ++q)
      parts.push_back(k.labels[w].test(q) ? st.prop(k.alphabet[q])
                                          : st.neg(st.prop(k.alphabet[q])));
    std::vector<FormulaId> steps;
    for (std::uint32_t v : succ[w]) steps.push_back(st.next(marker[v]));
    parts.push_back(st.split_or_all(steps));
    branches.push_back(st.conj_all(parts));
  }
  FormulaId chi = st.conj(marker[k.root], st.globally(st.split_or_all(branches)));
  return {std::move(aug), chi};
}

enum class CountabilityClass { AllUlp, Uncountable };

// T(K) is uncountable iff some root-reachable state admits two equal-length
// closed walks with different label sequences (equivalently, two
// non-commuting cycle labels).  Decided on the product of K with itself,
// tracking whether a label mismatch has occurred.
inline CountabilityClass countability_class(const Kripke& k) {
  auto succ = k.successors();
  std::vector<bool> reachable(k.num_states, false);
  std::vector<std::uint32_t> todo{k.root};
  if (k.root < k.num_states) reachable[k.root] = true;
  while (!todo.empty()) {
    std::uint32_t w = todo.back();
    todo.pop_back();
    for (std::uint32_t v : succ[w])
      if (!reachable[v]) {
        reachable[v] = true;
        todo.push_back(v);
      }
  }
  const std::size_t n = k.num_states;
  auto id = [n](std::uint32_t a, std::uint32_t b, bool flag) {
    return (static_cast<std::size_t>(flag) * n + a) * n + b;
  };
  for (std::uint32_t w = 0; w < n; ++w) {
    if (!reachable[w]) continue;
    // search for a path (w,w,0) ->+ (w,w,1)
    std::vector<bool> vis(2 * n * n, false);
    std::vector<std::size_t> stack;
    auto push = [&](std::uint32_t a, std::uint32_t b, bool fl) {
      std::size_t node = id(a, b, fl);
      if (!vis[node]) {
        vis[node] = true;
        stack.push_back(node);
      }
    };
    // seed with one synchronized step from (w,w)
    for (std::uint32_t a : succ[w])
      for (std::uint32_t b : succ[w]) {
        bool fl = !(k.labels[a] == k.labels[b]);
        if (a == w && b == w && fl) return CountabilityClass::Uncountable;
        push(a, b, fl);
      }
    while (!stack.empty()) {
      std::size_t node = stack.back();
      stack.pop_back();
      bool fl = node >= n * n;
      std::uint32_t a = static_cast<std::uint32_t>((node % (n * n)) / n);
      std::uint32_t b = static_cast<std::uint32_t>(node % n);
      for (std::uint32_t a2 : succ[a])
        for (std::uint32_t b2 : succ[b]) {
          bool fl2 = fl || !(k.labels[a2] == k.labels[b2]);
          if (a2 == w && b2 == w && fl2) return CountabilityClass::Uncountable;
          push(a2, b2, fl2);
        }
    }
  }
  return CountabilityClass::AllUlp;
}

}  // namespace tltl
