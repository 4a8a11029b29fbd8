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
#include <random>
#include <string>
#include <vector>

#include "tltl/formula.hpp"
#include "tltl/team.hpp"

namespace tltl {

// Seeded generator.  Bounded draws avoid std distributions, which are not
// portable across standard libraries; same seed must give the same stream
// everywhere.
class Rng {
 public:
  explicit Rng(std::uint64_t seed) : eng_(seed) {}

  std::uint64_t next() { return eng_(); }

  std::uint64_t below(std::uint64_t n) { return n == 0 ? 0 : next() % n; }

  // true with probability num/den
  bool chance(std::uint64_t num, std::uint64_t den) { return below(den) < num; }

  template <typename T>
  const T& pick(const std::vector<T>& v) {
    return v[below(v.size())];
  }

 private:
  std::mt19937_64 eng_;
};

inline Label random_label(Rng& rng, std::size_t alphabet_size) {
  Label l;
  for (std::size_t i = 0; i < alphabet_size; ++i)
    if (rng.chance(1, 2)) l.set(i);
  return l;
}

inline LassoTrace random_lasso(Rng& rng, std::size_t alphabet_size, std::size_t max_prefix,
                               std::size_t max_loop) {
  LassoTrace t;
  std::size_t np = rng.below(max_prefix + 1);
  std::size_t nl = 1 + rng.below(max_loop);
  for (std::size_t i = 0; i < np; ++i) t.prefix.push_back(random_label(rng, alphabet_size));
  for (std::size_t i = 0; i < nl; ++i) t.loop.push_back(random_label(rng, alphabet_size));
  return normalize(std::move(t));
}

inline Team random_team(Rng& rng, std::vector<std::string> alphabet, std::size_t max_traces,
                        std::size_t max_prefix, std::size_t max_loop, bool allow_empty = true) {
  std::size_t n = allow_empty ? rng.below(max_traces + 1) : 1 + rng.below(max_traces);
  std::vector<LassoTrace> traces;
  for (std::size_t i = 0; i < n; ++i)
    traces.push_back(random_lasso(rng, alphabet.size(), max_prefix, max_loop));
  return Team::make(std::move(alphabet), traces);
}

struct FormulaGenOptions {
  unsigned max_temporal_depth = 3;
  unsigned max_size = 24;      // node budget
  bool allow_bneg = true;
  bool allow_next = true;
  bool allow_dep = true;
  bool allow_sugar = true;      // quantifiers, hook, Boolean connectives
};

namespace detail {

inline FormulaId gen_formula(FormulaStore& st, Rng& rng, const std::vector<PropId>& props,
                             const FormulaGenOptions& o, unsigned td_budget, unsigned size_budget) {
  if (size_budget <= 1 || rng.chance(1, 5)) {
    std::uint64_t c = rng.below(10);
    if (c == 0) return st.top();
    if (c == 1) return st.bot();
    return st.prop(props[rng.below(props.size())]);
  }
  auto sub = [&](unsigned td, unsigned sz) { return gen_formula(st, rng, props, o, td, sz); };
  const unsigned half = size_budget / 2;
  for (;;) {
    switch (rng.below(16)) {
      case 0: return st.neg(sub(td_budget, size_budget - 1));
      case 1: return st.conj(sub(td_budget, half), sub(td_budget, half));
      case 2: return st.split_or(sub(td_budget, half), sub(td_budget, half));
      case 3:
        if (o.allow_bneg) return st.bneg(sub(td_budget, size_budget - 1));
        break;
      case 4:
        if (td_budget > 0 && o.allow_next) return st.next(sub(td_budget - 1, size_budget - 1));
        break;
      case 5:
        if (td_budget > 0) return st.future(sub(td_budget - 1, size_budget - 1));
        break;
      case 6:
        if (td_budget > 0) return st.globally(sub(td_budget - 1, size_budget - 1));
        break;
      case 7:
        if (td_budget > 0) return st.until(sub(td_budget - 1, half), sub(td_budget - 1, half));
        break;
      case 8:
        if (td_budget > 0) return st.release(sub(td_budget - 1, half), sub(td_budget - 1, half));
        break;
      case 9:
        if (o.allow_dep) {
          std::vector<FormulaId> args;
          std::size_t na = rng.below(3);
          for (std::size_t i = 0; i < na; ++i) args.push_back(sub(td_budget, half / 2 + 1));
          return st.dep(std::move(args), sub(td_budget, half / 2 + 1));
        }
        break;
      case 10:
        if (o.allow_sugar) return st.hook(sub(td_budget, half), sub(td_budget, half));
        break;
      case 11:
        if (o.allow_sugar && o.allow_bneg) return st.bor(sub(td_budget, half), sub(td_budget, half));
        break;
      case 12:
        if (o.allow_sugar && o.allow_bneg)
          return st.bimp(sub(td_budget, half), sub(td_budget, half));
        break;
      case 13:
        if (o.allow_sugar && o.allow_bneg) {
          switch (rng.below(4)) {
            case 0: return st.sub_ex(sub(td_budget, size_budget - 1));
            case 1: return st.sub_all(sub(td_budget, size_budget - 1));
            case 2: return st.sing_ex(sub(td_budget, size_budget - 1));
            default: return st.sing_all(sub(td_budget, size_budget - 1));
          }
        }
        break;
      case 14:
        if (o.allow_sugar && o.allow_bneg) {
          FormulaId g = sub(td_budget, half / 2 + 1);
          FormulaId b = sub(td_budget, half);
          switch (rng.below(4)) {
            case 0: return st.cond_sub_ex(g, b);
            case 1: return st.cond_sub_all(g, b);
            case 2: return st.cond_sing_ex(g, b);
            default: return st.cond_sing_all(g, b);
          }
        }
        break;
      case 15:
        if (o.allow_sugar && o.allow_bneg)
          return st.biff(sub(td_budget, half), sub(td_budget, half));
        break;
    }
  }
}

}  // namespace detail

inline FormulaId random_formula(FormulaStore& st, Rng& rng, const std::vector<PropId>& props,
                                const FormulaGenOptions& o = {}) {
  return detail::gen_formula(st, rng, props, o, o.max_temporal_depth, o.max_size);
}

// Pure LTL only (no ~, dep, or sugar): the fragment the classical oracle
// accepts.
inline FormulaId random_pure_ltl(FormulaStore& st, Rng& rng, const std::vector<PropId>& props,
                                 unsigned max_td, unsigned max_size = 20, bool allow_next = true) {
  FormulaGenOptions o;
  o.max_temporal_depth = max_td;
  o.max_size = max_size;
  o.allow_bneg = false;
  o.allow_dep = false;
  o.allow_sugar = false;
  o.allow_next = allow_next;
  return detail::gen_formula(st, rng, props, o, max_td, max_size);
}

}  // namespace tltl
