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
#include <optional>
#include <random>
#include <unordered_map>
#include <vector>

#include "tltl/formula.hpp"
#include "tltl/team.hpp"

namespace tltl {

struct UnknownProposition : TltlError {
  using TltlError::TltlError;
};
struct BudgetExceeded : TltlError {
  using TltlError::TltlError;
};
struct NonClassicalFormula : TltlError {
  using TltlError::TltlError;
};

struct EvalOptions {
  std::uint64_t budget = 100'000'000;  // visited evaluation states
  // Disables the exact-2-partition shortcut for splits whose disjuncts are
  // downward closed; used to validate that the shortcut never changes results.
  bool force_three_way_splits = false;
  // When set, split sides are tried in a seeded shuffled order instead of
  // ascending bitmask order.  Results must not depend on it.
  std::optional<std::uint64_t> split_shuffle_seed;
};

struct EvalStats {
  std::uint64_t visited = 0;
  std::uint64_t memo_hits = 0;
  std::uint64_t split_nodes = 0;
};

// Exact decision of T |= phi under synchronous team semantics.
//
// State during evaluation is a pair (shift, mask): shift is a canonical
// suffix offset in [0, P+L) and mask selects a subset of the *distinct*
// suffix traces at that shift.  Temporal operators search shifts up to the
// horizon; disjunction enumerates covers of the mask.
class EvalContext {
 public:
  EvalContext(const FormulaStore& store, const Team& team, EvalOptions opt = {})
      : st_(store), base_(team), opt_(opt) {
    hz_ = horizon(team);
    views_.resize(hz_.horizon());
    prop_bit_.clear();
  }

  const EvalStats& stats() const { return stats_; }
  const Team& team() const { return base_; }

  bool check(FormulaId f) {
    bind_props(f);
    const View& v = view(0);
    return eval(f, 0, full_mask(v.traces.size()));
  }

  // Truth of phi on the singleton {t} where t is base trace #i.
  bool check_singleton_base(FormulaId f, std::size_t i) {
    bind_props(f);
    const View& v = view(0);
    return eval(f, 0, TeamMask(1) << v.base_to_distinct[i]);
  }

 private:
  struct View {
    std::vector<LassoTrace> traces;               // distinct suffixes at this shift
    std::vector<std::uint32_t> base_to_distinct;  // base index -> distinct index
    std::vector<std::uint32_t> step;              // distinct index -> index at shift+1
    std::unordered_map<LassoTrace, std::uint32_t, LassoHash> index;
  };

  struct Key {
    FormulaId f;
    std::uint32_t shift;
    TeamMask mask;
    bool operator==(const Key& o) const {
      return f == o.f && shift == o.shift && mask == o.mask;
    }
  };
  struct KeyHash {
    std::size_t operator()(const Key& k) const {
      std::uint64_t h = k.f * 0x9e3779b97f4a7c15ull ^ (std::uint64_t(k.shift) << 32) ^ k.mask;
      h ^= h >> 33;
      h *= 0xff51afd7ed558ccdull;
      h ^= h >> 33;
      return static_cast<std::size_t>(h);
    }
  };

  void bind_props(FormulaId f) {
    for (PropId p : props_of(st_, f)) {
      if (prop_bit_.count(p)) continue;
      auto idx = base_.index_of(st_.prop_name(p));
      if (!idx)
        throw UnknownProposition("proposition '" + st_.prop_name(p) +
                                 "' not in team alphabet");
      prop_bit_[p] = *idx;
    }
  }

  const View& view(std::size_t shift) {
    auto& slot = views_[shift];
    if (slot) return *slot;
    View v;
    for (std::size_t i = 0; i < base_.traces.size(); ++i) {
      LassoTrace s = suffix(base_.traces[i], shift);
      auto it = v.index.find(s);
      std::uint32_t di;
      if (it == v.index.end()) {
        di = static_cast<std::uint32_t>(v.traces.size());
        v.index.emplace(s, di);
        v.traces.push_back(std::move(s));
      } else {
        di = it->second;
      }
      v.base_to_distinct.push_back(di);
    }
    slot = std::move(v);
    return *slot;
  }

  // Map a mask at `shift` to the equivalent mask at canonical shift+d.
  TeamMask advance(std::size_t shift, TeamMask mask, std::size_t d, std::size_t* out_shift) {
    std::size_t target = canonical_shift(hz_, shift + d);
    *out_shift = target;
    const View& from = view(shift);
    const View& to = view(target);
    TeamMask result = 0;
    for (std::size_t i = 0; i < base_.traces.size(); ++i) {
      if (mask & (TeamMask(1) << from.base_to_distinct[i]))
        result |= TeamMask(1) << to.base_to_distinct[i];
    }
    return result;
  }

  // Effective horizon from `shift`: all distinct suffix teams are reached
  // within (P - shift)^+ + L steps.
  std::size_t steps_from(std::size_t shift) const {
    std::size_t p = shift < hz_.prefix_len ? hz_.prefix_len - shift : 0;
    return p + hz_.loop_lcm;
  }

  bool singleton(FormulaId f, std::size_t shift, std::uint32_t distinct_idx) {
    return eval(f, shift, TeamMask(1) << distinct_idx);
  }

  std::vector<TeamMask> submask_order(TeamMask mask) {
    std::vector<TeamMask> order;
    TeamMask s = 0;
    for (;;) {
      order.push_back(s);
      if (s == mask) break;
      s = (s - mask) & mask;
    }
    if (opt_.split_shuffle_seed) {
      std::mt19937_64 g(*opt_.split_shuffle_seed ^ mask);
      for (std::size_t i = order.size(); i > 1; --i) {
        std::size_t j = static_cast<std::size_t>(g() % i);
        std::swap(order[i - 1], order[j]);
      }
    }
    return order;
  }

  bool eval(FormulaId f, std::size_t shift, TeamMask mask) {
    if (++stats_.visited > opt_.budget) throw BudgetExceeded("evaluation budget exceeded");
    Key key{f, static_cast<std::uint32_t>(shift), mask};
    auto it = memo_.find(key);
    if (it != memo_.end()) {
      ++stats_.memo_hits;
      return it->second;
    }
    bool r = eval_raw(f, shift, mask);
    memo_.emplace(key, r);
    return r;
  }

  bool eval_raw(FormulaId f, std::size_t shift, TeamMask mask) {
    const auto& n = st_.node(f);
    const View& v = view(shift);
    auto each_bit = [&](auto&& fn) {
      for (std::uint32_t i = 0; i < v.traces.size(); ++i)
        if (mask & (TeamMask(1) << i))
          if (!fn(i)) return false;
      return true;
    };

    switch (n.kind) {
      case Kind::Top:
        return true;
      case Kind::Bot:
        return mask == 0;
      case Kind::Prop: {
        std::size_t bit = prop_bit_.at(n.prop);
        return each_bit([&](std::uint32_t i) { return at(v.traces[i], 0).test(bit); });
      }
      case Kind::Neg:
        return each_bit([&](std::uint32_t i) { return !singleton(n.children[0], shift, i); });
      case Kind::And:
        return eval(n.children[0], shift, mask) && eval(n.children[1], shift, mask);
      case Kind::BNeg:
        return !eval(n.children[0], shift, mask);
      case Kind::SplitOr: {
        ++stats_.split_nodes;
        bool two_way = !opt_.force_three_way_splits &&
                       downward_closed_syntactic(st_, n.children[0]) &&
                       downward_closed_syntactic(st_, n.children[1]);
        auto order = submask_order(mask);
        if (two_way) {
          for (TeamMask s : order)
            if (eval(n.children[0], shift, s) && eval(n.children[1], shift, mask ^ s))
              return true;
          return false;
        }
        for (TeamMask s : order) {
          if (!eval(n.children[0], shift, s)) continue;
          // right side must cover mask \ s and may repeat any part of s
          TeamMask rest = mask ^ s;
          for (TeamMask extra : submask_order(s))
            if (eval(n.children[1], shift, rest | extra)) return true;
        }
        return false;
      }
      case Kind::Next: {
        std::size_t ns;
        TeamMask nm = advance(shift, mask, 1, &ns);
        return eval(n.children[0], ns, nm);
      }
      case Kind::Future: {
        std::size_t bound = steps_from(shift);
        for (std::size_t d = 0; d < bound; ++d) {
          std::size_t ns;
          TeamMask nm = advance(shift, mask, d, &ns);
          if (eval(n.children[0], ns, nm)) return true;
        }
        return false;
      }
      case Kind::Globally: {
        std::size_t bound = steps_from(shift);
        for (std::size_t d = 0; d < bound; ++d) {
          std::size_t ns;
          TeamMask nm = advance(shift, mask, d, &ns);
          if (!eval(n.children[0], ns, nm)) return false;
        }
        return true;
      }
      case Kind::Until: {
        std::size_t bound = steps_from(shift);
        for (std::size_t d = 0; d < bound; ++d) {
          std::size_t ns;
          TeamMask nm = advance(shift, mask, d, &ns);
          if (eval(n.children[1], ns, nm)) return true;
          if (!eval(n.children[0], ns, nm)) return false;
        }
        return false;
      }
      case Kind::Release: {
        std::size_t bound = steps_from(shift);
        for (std::size_t d = 0; d < bound; ++d) {
          std::size_t ns;
          TeamMask nm = advance(shift, mask, d, &ns);
          if (!eval(n.children[1], ns, nm)) return false;
          if (eval(n.children[0], ns, nm)) return true;
        }
        return true;
      }
      case Kind::Dep: {
        // Pairwise: agreeing on all argument truths forces agreement on the
        // target truth.
        std::vector<std::uint32_t> idx;
        for (std::uint32_t i = 0; i < v.traces.size(); ++i)
          if (mask & (TeamMask(1) << i)) idx.push_back(i);
        const std::size_t na = dep_arg_count(n);
        for (std::size_t a = 0; a < idx.size(); ++a)
          for (std::size_t b = a + 1; b < idx.size(); ++b) {
            bool agree = true;
            for (std::size_t j = 0; j < na && agree; ++j)
              agree = singleton(n.children[j], shift, idx[a]) ==
                      singleton(n.children[j], shift, idx[b]);
            if (agree && singleton(dep_target(n), shift, idx[a]) !=
                             singleton(dep_target(n), shift, idx[b]))
              return false;
          }
        return true;
      }
      case Kind::BOr:
        return eval(n.children[0], shift, mask) || eval(n.children[1], shift, mask);
      case Kind::BImp:
        return !eval(n.children[0], shift, mask) || eval(n.children[1], shift, mask);
      case Kind::BIff:
        return eval(n.children[0], shift, mask) == eval(n.children[1], shift, mask);
      case Kind::Hook:
        return eval(n.children[1], shift, guard_mask(n.children[0], shift, mask));
      case Kind::SubEx: {
        for (TeamMask s : submask_order(mask))
          if (eval(n.children[0], shift, s)) return true;
        return false;
      }
      case Kind::SubAll: {
        for (TeamMask s : submask_order(mask))
          if (!eval(n.children[0], shift, s)) return false;
        return true;
      }
      case Kind::SingEx: {
        for (std::uint32_t i = 0; i < v.traces.size(); ++i)
          if ((mask & (TeamMask(1) << i)) && singleton(n.children[0], shift, i)) return true;
        return false;
      }
      case Kind::SingAll:
        return each_bit([&](std::uint32_t i) { return singleton(n.children[0], shift, i); });
      case Kind::CondSubEx: {
        TeamMask g = guard_mask(n.children[0], shift, mask);
        TeamMask rest = mask & ~g;
        for (TeamMask s : submask_order(g))
          if (eval(n.children[1], shift, rest | s)) return true;
        return false;
      }
      case Kind::CondSubAll: {
        TeamMask g = guard_mask(n.children[0], shift, mask);
        TeamMask rest = mask & ~g;
        for (TeamMask s : submask_order(g))
          if (!eval(n.children[1], shift, rest | s)) return false;
        return true;
      }
      case Kind::CondSingEx: {
        TeamMask g = guard_mask(n.children[0], shift, mask);
        TeamMask rest = mask & ~g;
        for (std::uint32_t i = 0; i < v.traces.size(); ++i)
          if ((g & (TeamMask(1) << i)) && eval(n.children[1], shift, rest | (TeamMask(1) << i)))
            return true;
        return false;
      }
      case Kind::CondSingAll: {
        TeamMask g = guard_mask(n.children[0], shift, mask);
        TeamMask rest = mask & ~g;
        for (std::uint32_t i = 0; i < v.traces.size(); ++i)
          if ((g & (TeamMask(1) << i)) && !eval(n.children[1], shift, rest | (TeamMask(1) << i)))
            return false;
        return true;
      }
    }
    throw TltlError("unhandled formula kind");
  }

  // Subset of mask whose singletons satisfy the guard.
  TeamMask guard_mask(FormulaId guard, std::size_t shift, TeamMask mask) {
    const View& v = view(shift);
    TeamMask g = 0;
    for (std::uint32_t i = 0; i < v.traces.size(); ++i)
      if ((mask & (TeamMask(1) << i)) && singleton(guard, shift, i)) g |= TeamMask(1) << i;
    return g;
  }

  const FormulaStore& st_;
  Team base_;
  EvalOptions opt_;
  Horizon hz_;
  EvalStats stats_;
  std::vector<std::optional<View>> views_;
  std::unordered_map<PropId, std::size_t> prop_bit_;
  std::unordered_map<Key, bool, KeyHash> memo_;
};

inline bool check(const FormulaStore& store, const Team& team, FormulaId f,
                  EvalOptions opt = {}, EvalStats* stats = nullptr) {
  EvalContext ctx(store, team, opt);
  bool r = ctx.check(f);
  if (stats) *stats = ctx.stats();
  return r;
}

// Classical trace semantics, as an independent oracle against check() on
// singleton teams.  Rejects anything outside pure LTL.
class ClassicalEval {
 public:
  ClassicalEval(const FormulaStore& store, const LassoTrace& trace,
                const std::vector<std::string>& alphabet)
      : st_(store), t_(normalize(trace)), alphabet_(alphabet) {}

  bool check(FormulaId f) {
    if (!is_pure_ltl(st_, f)) throw NonClassicalFormula("formula is not pure LTL");
    return eval(f, 0);
  }

 private:
  std::size_t canonical(std::size_t pos) const {
    std::size_t p = t_.prefix.size();
    return pos < p ? pos : p + (pos - p) % t_.loop.size();
  }
  std::size_t steps_from(std::size_t pos) const {
    std::size_t p = t_.prefix.size();
    return (pos < p ? p - pos : 0) + t_.loop.size();
  }

  bool eval(FormulaId f, std::size_t pos) {
    pos = canonical(pos);
    std::uint64_t key = (std::uint64_t(f) << 32) | pos;
    auto it = memo_.find(key);
    if (it != memo_.end()) return it->second;
    bool r = eval_raw(f, pos);
    memo_.emplace(key, r);
    return r;
  }

  bool eval_raw(FormulaId f, std::size_t pos) {
    const auto& n = st_.node(f);
    switch (n.kind) {
      case Kind::Top: return true;
      case Kind::Bot: return false;
      case Kind::Prop: {
        const std::string& name = st_.prop_name(n.prop);
        for (std::size_t i = 0; i < alphabet_.size(); ++i)
          if (alphabet_[i] == name) return at(t_, pos).test(i);
        throw UnknownProposition("proposition '" + name + "' not in alphabet");
      }
      case Kind::Neg: return !eval(n.children[0], pos);
      case Kind::And: return eval(n.children[0], pos) && eval(n.children[1], pos);
      case Kind::SplitOr: return eval(n.children[0], pos) || eval(n.children[1], pos);
      case Kind::Next: return eval(n.children[0], pos + 1);
      case Kind::Future: {
        for (std::size_t d = 0, b = steps_from(pos); d < b; ++d)
          if (eval(n.children[0], pos + d)) return true;
        return false;
      }
      case Kind::Globally: {
        for (std::size_t d = 0, b = steps_from(pos); d < b; ++d)
          if (!eval(n.children[0], pos + d)) return false;
        return true;
      }
      case Kind::Until: {
        for (std::size_t d = 0, b = steps_from(pos); d < b; ++d) {
          if (eval(n.children[1], pos + d)) return true;
          if (!eval(n.children[0], pos + d)) return false;
        }
        return false;
      }
      case Kind::Release: {
        for (std::size_t d = 0, b = steps_from(pos); d < b; ++d) {
          if (!eval(n.children[1], pos + d)) return false;
          if (eval(n.children[0], pos + d)) return true;
        }
        return true;
      }
      default:
        throw NonClassicalFormula("formula is not pure LTL");
    }
  }

  const FormulaStore& st_;
  LassoTrace t_;
  const std::vector<std::string>& alphabet_;
  std::unordered_map<std::uint64_t, bool> memo_;
};

inline bool check_classical(const FormulaStore& store, const LassoTrace& t,
                            const std::vector<std::string>& alphabet, FormulaId f) {
  return ClassicalEval(store, t, alphabet).check(f);
}

// T_gamma and its complement; always a disjoint partition of T.
inline std::pair<Team, Team> condition(const FormulaStore& store, const Team& team,
                                       FormulaId gamma, EvalOptions opt = {}) {
  std::vector<LassoTrace> yes, no;
  for (const auto& tr : team.traces) {
    Team single = Team::make(team.alphabet, {tr});
    if (check(store, single, gamma, opt))
      yes.push_back(tr);
    else
      no.push_back(tr);
  }
  return {Team::make(team.alphabet, yes), Team::make(team.alphabet, no)};
}

}  // namespace tltl
