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

#include <cstdint>
#include <map>
#include <string>
#include <vector>

#include "tltl/kripke.hpp"
#include "tltl/team.hpp"
#include "tltl/trace.hpp"

namespace tltl {

// Structures whose traces encode numbers, sets and tuples.
//
// Number gadget (one digit track):
//   root(∅) -> zero({0}) -> one({1}) -> sink({0,end}), with root -> one,
//   self-loops on zero and sink.  Traces: ∅{0}^n{1}{0,end}^ω plus the stuck
//   trace ∅{0}^ω; the former represents n.
//
// Relation gadget: root(∅) plus fully connected {0}/{1} pair; a trace
// represents A ⊆ ℕ via 1 ∈ t(n+1) ⇔ n ∈ A.
//
// Tuple gadget: the ℓ-fold product of the number gadget over digit copies
// Σ_k = {0_k, 1_k}; `end` appears exactly when every coordinate is done.
//
// Generated names: digits "0"/"1" for the first copy, "@d0_k"/"@d1_k" for
// copies k >= 2, markers "@end", "@hash", "@root", "@<var>" per variable.

enum class VarKind : std::uint8_t {
  FirstOrder,
  SecondOrderUnary,
  SecondOrderTuple2,
  SecondOrderTuple3,
  ThirdOrderUnary,
};

inline std::string digit_prop(int bit, std::size_t track) {
  if (track == 1) return bit ? "1" : "0";
  return std::string("@d") + (bit ? "1" : "0") + "_" + std::to_string(track);
}

namespace detail {

// Per-coordinate phase inside the number word: before the 1, at the 1, after.
enum class Phase : std::uint8_t { Pre, One, Done };

inline Kripke product_number_gadget(std::size_t arity) {
  Kripke k;
  for (std::size_t track = 1; track <= arity; ++track) {
    k.alphabet.push_back(digit_prop(0, track));
    k.alphabet.push_back(digit_prop(1, track));
  }
  k.alphabet.push_back("@end");
  auto digit_bit = [&](std::size_t track, int bit) { return (track - 1) * 2 + bit; };
  const std::size_t end_bit = arity * 2;

  // state 0 is the root; phase tuples follow in lexicographic order with
  // Pre < One < Done
  std::size_t n_tuples = 1;
  for (std::size_t i = 0; i < arity; ++i) n_tuples *= 3;
  auto tuple_state = [&](const std::vector<Phase>& ph) {
    std::size_t idx = 0;
    for (Phase p : ph) idx = idx * 3 + static_cast<std::size_t>(p);
    return static_cast<std::uint32_t>(1 + idx);
  };
  auto phases_of = [&](std::size_t idx) {
    std::vector<Phase> ph(arity);
    for (std::size_t i = arity; i-- > 0;) {
      ph[i] = static_cast<Phase>(idx % 3);
      idx /= 3;
    }
    return ph;
  };

  k.num_states = static_cast<std::uint32_t>(1 + n_tuples);
  k.labels.assign(k.num_states, Label{});
  for (std::size_t idx = 0; idx < n_tuples; ++idx) {
    auto ph = phases_of(idx);
    Label l;
    bool all_done = true;
    for (std::size_t i = 0; i < arity; ++i) {
      l.set(digit_bit(i + 1, ph[i] == Phase::One ? 1 : 0));
      all_done = all_done && ph[i] == Phase::Done;
    }
    if (all_done) l.set(end_bit);
    k.labels[tuple_state(ph)] = l;
  }

  auto allowed = [](Phase from, Phase to) {
    switch (from) {
      case Phase::Pre: return to == Phase::Pre || to == Phase::One;
      case Phase::One: return to == Phase::Done;
      case Phase::Done: return to == Phase::Done;
    }
    return false;
  };
  // root enters any all-{Pre,One} tuple
  for (std::size_t idx = 0; idx < n_tuples; ++idx) {
    auto ph = phases_of(idx);
    bool ok = true;
    for (Phase p : ph) ok = ok && p != Phase::Done;
    if (ok) k.edges.emplace_back(0, tuple_state(ph));
  }
  for (std::size_t a = 0; a < n_tuples; ++a) {
    auto pa = phases_of(a);
    for (std::size_t b = 0; b < n_tuples; ++b) {
      auto pb = phases_of(b);
      bool ok = true;
      for (std::size_t i = 0; i < arity && ok; ++i) ok = allowed(pa[i], pb[i]);
      if (ok) k.edges.emplace_back(tuple_state(pa), tuple_state(pb));
    }
  }
  return k;
}

}  // namespace detail

inline Kripke number_gadget() { return detail::product_number_gadget(1); }

inline Kripke relation_gadget() {
  Kripke k;
  k.alphabet = {"0", "1"};
  k.num_states = 3;  // root, zero, one
  k.labels.resize(3);
  k.labels[1].set(0);
  k.labels[2].set(1);
  k.edges = {{0, 1}, {0, 2}, {1, 1}, {1, 2}, {2, 1}, {2, 2}};
  return k;
}

inline Kripke tuple_gadget(std::size_t arity) {
  if (arity < 2 || arity > 3) throw TltlError("tuple gadget arity must be 2 or 3");
  return detail::product_number_gadget(arity);
}

inline Kripke gadget(VarKind kind) {
  switch (kind) {
    case VarKind::FirstOrder: return number_gadget();
    case VarKind::SecondOrderUnary: return relation_gadget();
    case VarKind::SecondOrderTuple2: return tuple_gadget(2);
    case VarKind::SecondOrderTuple3: return tuple_gadget(3);
    case VarKind::ThirdOrderUnary: return relation_gadget();
  }
  throw TltlError("unknown gadget kind");
}

inline std::string var_marker(const std::string& var) { return "@" + var; }

// Disjoint union of per-variable gadgets with all roots identified; every
// non-root state of K_X is additionally labeled @X.
inline Kripke assemble_k_phi(const std::vector<std::pair<std::string, VarKind>>& vars) {
  Kripke k;
  k.num_states = 1;  // shared root, labeled ∅
  k.labels.push_back(Label{});
  auto bit_of = [&](const std::string& name) {
    for (std::size_t i = 0; i < k.alphabet.size(); ++i)
      if (k.alphabet[i] == name) return i;
    k.alphabet.push_back(name);
    if (k.alphabet.size() > kMaxAlphabet) throw AlphabetOverflow("gadget alphabet exceeds cap");
    return k.alphabet.size() - 1;
  };
  for (const auto& [var, kind] : vars) {
    Kripke g = gadget(kind);
    std::size_t marker = bit_of(var_marker(var));
    std::vector<std::uint32_t> remap(g.num_states);
    remap[g.root] = k.root;
    for (std::uint32_t w = 0; w < g.num_states; ++w) {
      if (w == g.root) continue;
      remap[w] = k.num_states++;
      Label l;
      for (std::size_t b = 0; b < g.alphabet.size(); ++b)
        if (g.labels[w].test(b)) l.set(bit_of(g.alphabet[b]));
      l.set(marker);
      k.labels.push_back(l);
    }
    for (auto [a, b] : g.edges) k.edges.emplace_back(remap[a], remap[b]);
  }
  return k;
}

// Number encoding: ∅ {0,@x}^n {1,@x} ({0,@end,@x})^ω over the assembled
// alphabet.
inline LassoTrace encode_number(std::size_t n, const std::string& var,
                                const std::vector<std::string>& alphabet) {
  if (n > 10000) throw TltlError("number encoding cap exceeded");
  auto bit = [&](const std::string& name) {
    for (std::size_t i = 0; i < alphabet.size(); ++i)
      if (alphabet[i] == name) return i;
    throw TltlError("alphabet misses proposition " + name);
  };
  const std::size_t zero = bit("0"), one = bit("1"), end = bit("@end"),
                    mark = bit(var_marker(var));
  LassoTrace t;
  t.prefix.emplace_back();
  for (std::size_t i = 0; i < n; ++i) {
    Label l;
    l.set(zero);
    l.set(mark);
    t.prefix.push_back(l);
  }
  Label lone;
  lone.set(one);
  lone.set(mark);
  t.prefix.push_back(lone);
  Label tail;
  tail.set(zero);
  tail.set(end);
  tail.set(mark);
  t.loop.push_back(tail);
  return normalize(std::move(t));
}

// Set encoding over the relation gadget: 1 at position m+1 iff m ∈ A.
// Finite sets get a {0,@X} tail; the periodic overload repeats `pattern`
// after `threshold` positions.
inline LassoTrace encode_set(const std::vector<std::size_t>& finite_set, const std::string& var,
                             const std::vector<std::string>& alphabet) {
  auto bit = [&](const std::string& name) {
    for (std::size_t i = 0; i < alphabet.size(); ++i)
      if (alphabet[i] == name) return i;
    throw TltlError("alphabet misses proposition " + name);
  };
  const std::size_t zero = bit("0"), one = bit("1"), mark = bit(var_marker(var));
  std::size_t top = 0;
  for (std::size_t m : finite_set) {
    if (m > 10000) throw TltlError("set encoding cap exceeded");
    top = std::max(top, m + 1);
  }
  LassoTrace t;
  t.prefix.emplace_back();
  for (std::size_t m = 0; m < top; ++m) {
    Label l;
    bool member = std::find(finite_set.begin(), finite_set.end(), m) != finite_set.end();
    l.set(member ? one : zero);
    l.set(mark);
    t.prefix.push_back(l);
  }
  Label tail;
  tail.set(zero);
  tail.set(mark);
  t.loop.push_back(tail);
  return normalize(std::move(t));
}

inline LassoTrace encode_set_periodic(const std::vector<bool>& prefix_bits,
                                      const std::vector<bool>& loop_bits, const std::string& var,
                                      const std::vector<std::string>& alphabet) {
  if (loop_bits.empty()) throw TltlError("periodic set pattern must be nonempty");
  auto bit = [&](const std::string& name) {
    for (std::size_t i = 0; i < alphabet.size(); ++i)
      if (alphabet[i] == name) return i;
    throw TltlError("alphabet misses proposition " + name);
  };
  const std::size_t zero = bit("0"), one = bit("1"), mark = bit(var_marker(var));
  auto lab = [&](bool b) {
    Label l;
    l.set(b ? one : zero);
    l.set(mark);
    return l;
  };
  LassoTrace t;
  t.prefix.emplace_back();
  for (bool b : prefix_bits) t.prefix.push_back(lab(b));
  for (bool b : loop_bits) t.loop.push_back(lab(b));
  return normalize(std::move(t));
}

// Tuple encoding on the product gadget: track j carries the number word of
// the j-th coordinate; end is set once all coordinates are done.
inline LassoTrace encode_tuple(const std::vector<std::size_t>& tuple, const std::string& var,
                               const std::vector<std::string>& alphabet) {
  if (tuple.size() < 2 || tuple.size() > 3) throw TltlError("tuple arity must be 2 or 3");
  auto bit = [&](const std::string& name) {
    for (std::size_t i = 0; i < alphabet.size(); ++i)
      if (alphabet[i] == name) return i;
    throw TltlError("alphabet misses proposition " + name);
  };
  const std::size_t mark = bit(var_marker(var)), end = bit("@end");
  std::size_t top = 0;
  for (std::size_t n : tuple) {
    if (n > 10000) throw TltlError("number encoding cap exceeded");
    top = std::max(top, n);
  }
  LassoTrace t;
  t.prefix.emplace_back();
  for (std::size_t pos = 1; pos <= top + 1; ++pos) {
    Label l;
    l.set(mark);
    for (std::size_t j = 0; j < tuple.size(); ++j)
      l.set(bit(digit_prop(pos == tuple[j] + 1 ? 1 : 0, j + 1)));
    t.prefix.push_back(l);
  }
  Label tail;
  tail.set(mark);
  tail.set(end);
  for (std::size_t j = 0; j < tuple.size(); ++j) tail.set(bit(digit_prop(0, j + 1)));
  t.loop.push_back(tail);
  return normalize(std::move(t));
}

// Structure from the finite-satisfiability discussion: a root state feeding
// a fully connected set of label states (one per subset of Phi) plus, per
// proposition, a prototrace path root -> ∅* -> {p} -> {#}^ω.
inline Kripke root_gadget(const std::vector<std::string>& phi) {
  if (phi.size() > 6) throw TltlError("root gadget alphabet too large");
  Kripke k;
  k.alphabet = phi;
  k.alphabet.push_back("@hash");
  k.alphabet.push_back("@root");
  const std::size_t hash_bit = phi.size(), root_bit = phi.size() + 1;
  const std::size_t n_labels = std::size_t{1} << phi.size();

  // 0: root, 1: empty proto spacer, 2: hash sink, 3..: per-p proto states,
  // then the 2^|phi| full-team label states.
  k.num_states = static_cast<std::uint32_t>(3 + phi.size() + n_labels);
  k.labels.assign(k.num_states, Label{});
  k.labels[0].set(root_bit);
  k.labels[2].set(hash_bit);
  for (std::size_t p = 0; p < phi.size(); ++p) k.labels[3 + p].set(p);
  const std::uint32_t label_base = static_cast<std::uint32_t>(3 + phi.size());
  for (std::size_t m = 0; m < n_labels; ++m) {
    for (std::size_t p = 0; p < phi.size(); ++p)
      if (m & (std::size_t{1} << p)) k.labels[label_base + m].set(p);
  }

  k.edges.emplace_back(0, 1);
  k.edges.emplace_back(1, 1);
  k.edges.emplace_back(2, 2);
  for (std::size_t p = 0; p < phi.size(); ++p) {
    k.edges.emplace_back(0, static_cast<std::uint32_t>(3 + p));
    k.edges.emplace_back(1, static_cast<std::uint32_t>(3 + p));
    k.edges.emplace_back(static_cast<std::uint32_t>(3 + p), 2);
  }
  for (std::size_t a = 0; a < n_labels; ++a) {
    k.edges.emplace_back(0, label_base + static_cast<std::uint32_t>(a));
    for (std::size_t b = 0; b < n_labels; ++b)
      k.edges.emplace_back(label_base + static_cast<std::uint32_t>(a),
                           label_base + static_cast<std::uint32_t>(b));
  }
  return k;
}

}  // namespace tltl
