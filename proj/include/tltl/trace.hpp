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

#include <bitset>
#include <cstddef>
#include <cstdint>
#include <functional>
#include <stdexcept>
#include <vector>

namespace tltl {

// Hard cap on the number of propositions in one alphabet.  Labels are
// fixed-width bitsets, so everything downstream (teams, snapshots, gadget
// alphabets) must fit below this.
inline constexpr std::size_t kMaxAlphabet = 512;

using Label = std::bitset<kMaxAlphabet>;

struct TltlError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct AlphabetOverflow : TltlError {
  using TltlError::TltlError;
};

// An ultimately periodic omega-word stored as finite prefix plus repeating
// loop.  Value at position i is prefix[i] for i < |prefix| and
// loop[(i - |prefix|) mod |loop|] otherwise.  The loop is never empty.
struct LassoTrace {
  std::vector<Label> prefix;
  std::vector<Label> loop;

  bool operator==(const LassoTrace& o) const = default;
};

inline const Label& at(const LassoTrace& t, std::size_t i) {
  if (i < t.prefix.size()) return t.prefix[i];
  return t.loop[(i - t.prefix.size()) % t.loop.size()];
}

namespace detail {

// Smallest p such that w is a power of its length-p prefix (p divides |w|),
// via the KMP border array.
inline std::size_t primitive_period(const std::vector<Label>& w) {
  const std::size_t n = w.size();
  if (n <= 1) return n;
  std::vector<std::size_t> border(n + 1, 0);
  std::size_t k = 0;
  for (std::size_t i = 1; i < n; ++i) {
    while (k > 0 && !(w[i] == w[k])) k = border[k];
    if (w[i] == w[k]) ++k;
    border[i + 1] = k;
  }
  const std::size_t p = n - border[n];
  return (n % p == 0) ? p : n;
}

}  // namespace detail

// Canonical representative: minimal-period loop, shortest prefix.  Two
// LassoTraces denote the same omega-word iff their normalizations compare
// equal field by field.
inline LassoTrace normalize(LassoTrace t) {
  if (t.loop.empty()) throw TltlError("lasso loop must be nonempty");
  const std::size_t p = detail::primitive_period(t.loop);
  if (p < t.loop.size()) t.loop.resize(p);
  // Roll the prefix back into the loop while its last label coincides with
  // the loop's last label (rotating the loop keeps the denoted word fixed).
  while (!t.prefix.empty() && t.prefix.back() == t.loop.back()) {
    t.prefix.pop_back();
    t.loop.insert(t.loop.begin(), t.loop.back());
    t.loop.pop_back();
  }
  return t;
}

inline LassoTrace suffix(const LassoTrace& t, std::size_t k) {
  LassoTrace r;
  if (k < t.prefix.size()) {
    r.prefix.assign(t.prefix.begin() + static_cast<std::ptrdiff_t>(k), t.prefix.end());
    r.loop = t.loop;
  } else {
    const std::size_t off = (k - t.prefix.size()) % t.loop.size();
    r.loop.assign(t.loop.begin() + static_cast<std::ptrdiff_t>(off), t.loop.end());
    r.loop.insert(r.loop.end(), t.loop.begin(), t.loop.begin() + static_cast<std::ptrdiff_t>(off));
  }
  return normalize(std::move(r));
}

inline LassoTrace project(const LassoTrace& t, const Label& keep) {
  LassoTrace r = t;
  for (auto& l : r.prefix) l &= keep;
  for (auto& l : r.loop) l &= keep;
  return normalize(std::move(r));
}

// After normalization an ultimately constant trace is exactly one with a
// unit loop.
inline bool is_ultimately_constant(const LassoTrace& t) {
  return normalize(t).loop.size() == 1;
}

inline bool is_constant(const LassoTrace& t) {
  LassoTrace n = normalize(t);
  return n.loop.size() == 1 && n.prefix.empty();
}

inline std::size_t hash_value(const LassoTrace& t) {
  std::size_t seed = t.prefix.size() * 1000003u + t.loop.size();
  auto mix = [&seed](const Label& l) {
    std::hash<Label> h;
    seed ^= h(l) + 0x9e3779b97f4a7c15ull + (seed << 6) + (seed >> 2);
  };
  for (const auto& l : t.prefix) mix(l);
  for (const auto& l : t.loop) mix(l);
  return seed;
}

struct LassoHash {
  std::size_t operator()(const LassoTrace& t) const { return hash_value(t); }
};

}  // namespace tltl
