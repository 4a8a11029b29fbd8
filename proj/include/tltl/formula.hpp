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
#include <unordered_map>
#include <vector>

#include "tltl/trace.hpp"

namespace tltl {

// Formulas live in an interning store: structurally identical subtrees share
// one node id, which gives O(1) equality and stable keys for memoization.

using FormulaId = std::uint32_t;
using PropId = std::uint32_t;

enum class Kind : std::uint8_t {
  // core
  Prop,
  Neg,       // ¬, first-class: every singleton fails the child
  And,
  SplitOr,   // team-splitting ∨
  BNeg,      // Boolean (contradictory) negation ~
  Next,
  Future,
  Globally,
  Until,
  Release,
  Top,
  Bot,
  // sugar
  Dep,         // dep(args...; target), target stored as last child
  BOr,         // BOR, Boolean disjunction
  BImp,        // ->>
  BIff,        // <->>
  Hook,        // ~>, conditions the team on the left operand
  SubEx,       // EE
  SubAll,      // AA
  SingEx,      // E1
  SingAll,     // A1
  CondSubEx,   // EE[g], guard stored as first child
  CondSubAll,  // AA[g]
  CondSingEx,  // E1[g]
  CondSingAll, // A1[g]
};

inline bool is_temporal(Kind k) {
  switch (k) {
    case Kind::Next:
    case Kind::Future:
    case Kind::Globally:
    case Kind::Until:
    case Kind::Release:
      return true;
    default:
      return false;
  }
}

struct FormulaNode {
  Kind kind{};
  PropId prop{0};  // meaningful for Kind::Prop only
  std::vector<FormulaId> children;

  bool operator==(const FormulaNode& o) const {
    return kind == o.kind && prop == o.prop && children == o.children;
  }
};

struct FormulaNodeHash {
  std::size_t operator()(const FormulaNode& n) const {
    std::size_t seed = static_cast<std::size_t>(n.kind) * 0x9e3779b9u + n.prop;
    for (FormulaId c : n.children) seed ^= c + 0x9e3779b97f4a7c15ull + (seed << 6) + (seed >> 2);
    return seed;
  }
};

class FormulaStore {
 public:
  const FormulaNode& node(FormulaId id) const { return nodes_[id]; }
  Kind kind(FormulaId id) const { return nodes_[id].kind; }
  const std::vector<FormulaId>& children(FormulaId id) const { return nodes_[id].children; }

  PropId prop_id(const std::string& name) {
    auto it = prop_ids_.find(name);
    if (it != prop_ids_.end()) return it->second;
    PropId id = static_cast<PropId>(prop_names_.size());
    prop_names_.push_back(name);
    prop_ids_.emplace(name, id);
    return id;
  }
  const std::string& prop_name(PropId p) const { return prop_names_[p]; }
  std::size_t prop_count() const { return prop_names_.size(); }

  FormulaId prop(const std::string& name) { return intern({Kind::Prop, prop_id(name), {}}); }
  FormulaId prop(PropId p) { return intern({Kind::Prop, p, {}}); }
  FormulaId top() { return intern({Kind::Top, 0, {}}); }
  FormulaId bot() { return intern({Kind::Bot, 0, {}}); }
  FormulaId neg(FormulaId a) { return intern({Kind::Neg, 0, {a}}); }
  FormulaId conj(FormulaId a, FormulaId b) { return intern({Kind::And, 0, {a, b}}); }
  FormulaId split_or(FormulaId a, FormulaId b) { return intern({Kind::SplitOr, 0, {a, b}}); }
  FormulaId bneg(FormulaId a) { return intern({Kind::BNeg, 0, {a}}); }
  FormulaId next(FormulaId a) { return intern({Kind::Next, 0, {a}}); }
  FormulaId future(FormulaId a) { return intern({Kind::Future, 0, {a}}); }
  FormulaId globally(FormulaId a) { return intern({Kind::Globally, 0, {a}}); }
  FormulaId until(FormulaId a, FormulaId b) { return intern({Kind::Until, 0, {a, b}}); }
  FormulaId release(FormulaId a, FormulaId b) { return intern({Kind::Release, 0, {a, b}}); }
  FormulaId bor(FormulaId a, FormulaId b) { return intern({Kind::BOr, 0, {a, b}}); }
  FormulaId bimp(FormulaId a, FormulaId b) { return intern({Kind::BImp, 0, {a, b}}); }
  FormulaId biff(FormulaId a, FormulaId b) { return intern({Kind::BIff, 0, {a, b}}); }
  FormulaId hook(FormulaId a, FormulaId b) { return intern({Kind::Hook, 0, {a, b}}); }
  FormulaId sub_ex(FormulaId a) { return intern({Kind::SubEx, 0, {a}}); }
  FormulaId sub_all(FormulaId a) { return intern({Kind::SubAll, 0, {a}}); }
  FormulaId sing_ex(FormulaId a) { return intern({Kind::SingEx, 0, {a}}); }
  FormulaId sing_all(FormulaId a) { return intern({Kind::SingAll, 0, {a}}); }
  FormulaId cond_sub_ex(FormulaId g, FormulaId a) { return intern({Kind::CondSubEx, 0, {g, a}}); }
  FormulaId cond_sub_all(FormulaId g, FormulaId a) { return intern({Kind::CondSubAll, 0, {g, a}}); }
  FormulaId cond_sing_ex(FormulaId g, FormulaId a) { return intern({Kind::CondSingEx, 0, {g, a}}); }
  FormulaId cond_sing_all(FormulaId g, FormulaId a) { return intern({Kind::CondSingAll, 0, {g, a}}); }

  FormulaId dep(std::vector<FormulaId> args, FormulaId target) {
    args.push_back(target);
    return intern({Kind::Dep, 0, std::move(args)});
  }

  // Left-assoc folds; empty conjunction is top, empty disjunction is bot.
  FormulaId conj_all(const std::vector<FormulaId>& fs) {
    if (fs.empty()) return top();
    FormulaId r = fs[0];
    for (std::size_t i = 1; i < fs.size(); ++i) r = conj(r, fs[i]);
    return r;
  }
  FormulaId split_or_all(const std::vector<FormulaId>& fs) {
    if (fs.empty()) return bot();
    FormulaId r = fs[0];
    for (std::size_t i = 1; i < fs.size(); ++i) r = split_or(r, fs[i]);
    return r;
  }

  std::size_t size() const { return nodes_.size(); }

 private:
  FormulaId intern(FormulaNode n) {
    auto it = intern_.find(n);
    if (it != intern_.end()) return it->second;
    FormulaId id = static_cast<FormulaId>(nodes_.size());
    intern_.emplace(n, id);
    nodes_.push_back(std::move(n));
    return id;
  }

  std::vector<FormulaNode> nodes_;
  std::unordered_map<FormulaNode, FormulaId, FormulaNodeHash> intern_;
  std::vector<std::string> prop_names_;
  std::unordered_map<std::string, PropId> prop_ids_;
};

// For Dep nodes: all children but the last are the arguments.
inline std::size_t dep_arg_count(const FormulaNode& n) { return n.children.size() - 1; }
inline FormulaId dep_target(const FormulaNode& n) { return n.children.back(); }

inline std::set<PropId> props_of(const FormulaStore& st, FormulaId f) {
  std::set<PropId> out;
  std::vector<FormulaId> stack{f};
  std::set<FormulaId> seen;
  while (!stack.empty()) {
    FormulaId id = stack.back();
    stack.pop_back();
    if (!seen.insert(id).second) continue;
    const auto& n = st.node(id);
    if (n.kind == Kind::Prop) out.insert(n.prop);
    for (FormulaId c : n.children) stack.push_back(c);
  }
  return out;
}

// Temporal depth.  Sugar contributes what its expansion contributes: all
// expansions wrap their operands in temporal-free connectives only, so every
// sugar node is a plain max over children.
inline unsigned temporal_depth(const FormulaStore& st, FormulaId f,
                               std::unordered_map<FormulaId, unsigned>* memo = nullptr) {
  std::unordered_map<FormulaId, unsigned> local;
  auto& m = memo ? *memo : local;
  auto it = m.find(f);
  if (it != m.end()) return it->second;
  const auto& n = st.node(f);
  unsigned best = 0;
  for (FormulaId c : n.children) best = std::max(best, temporal_depth(st, c, &m));
  if (is_temporal(n.kind)) ++best;
  m.emplace(f, best);
  return best;
}

inline bool is_pure_ltl(const FormulaStore& st, FormulaId f) {
  const auto& n = st.node(f);
  switch (n.kind) {
    case Kind::Prop:
    case Kind::Top:
    case Kind::Bot:
      return true;
    case Kind::Neg:
    case Kind::And:
    case Kind::SplitOr:
    case Kind::Next:
    case Kind::Future:
    case Kind::Globally:
    case Kind::Until:
    case Kind::Release: {
      for (FormulaId c : n.children)
        if (!is_pure_ltl(st, c)) return false;
      return true;
    }
    default:
      return false;
  }
}

inline bool contains_kind(const FormulaStore& st, FormulaId f, Kind k) {
  if (st.kind(f) == k) return true;
  for (FormulaId c : st.children(f))
    if (contains_kind(st, c, k)) return true;
  return false;
}

// Syntactic under-approximation of downward closure, used to justify the
// exact-2-partition optimization for splits.  Neg, Dep and Hook guards
// condition per singleton, so their operands may be arbitrary.
inline bool downward_closed_syntactic(const FormulaStore& st, FormulaId f) {
  const auto& n = st.node(f);
  switch (n.kind) {
    case Kind::Prop:
    case Kind::Top:
    case Kind::Bot:
    case Kind::Neg:
    case Kind::Dep:
      return true;
    case Kind::And:
    case Kind::SplitOr:
    case Kind::Next:
    case Kind::Future:
    case Kind::Globally:
    case Kind::Until:
    case Kind::Release: {
      for (FormulaId c : n.children)
        if (!downward_closed_syntactic(st, c)) return false;
      return true;
    }
    case Kind::Hook:
      return downward_closed_syntactic(st, n.children[1]);
    default:
      return false;
  }
}

// Expansion of every derived connective into the core kinds
// {Prop, Neg, And, SplitOr, BNeg, Next, Future, Globally, Until, Release,
//  Top, Bot}.
inline FormulaId desugar(FormulaStore& st, FormulaId f,
                         std::unordered_map<FormulaId, FormulaId>* memo = nullptr) {
  std::unordered_map<FormulaId, FormulaId> local;
  auto& m = memo ? *memo : local;
  auto it = m.find(f);
  if (it != m.end()) return it->second;

  const FormulaNode n = st.node(f);  // copy; the store may grow below
  std::vector<FormulaId> ch;
  ch.reserve(n.children.size());
  for (FormulaId c : n.children) ch.push_back(desugar(st, c, &m));

  auto bor_of = [&st](FormulaId a, FormulaId b) {
    return st.bneg(st.conj(st.bneg(a), st.bneg(b)));
  };
  auto bimp_of = [&](FormulaId a, FormulaId b) { return bor_of(st.bneg(a), b); };
  auto sub_ex_of = [&st](FormulaId a) { return st.split_or(st.top(), a); };
  auto sub_all_of = [&](FormulaId a) { return st.bneg(sub_ex_of(st.bneg(a))); };
  auto sing_ex_of = [&](FormulaId a) {
    return sub_ex_of(st.conj(st.bneg(st.bot()), sub_all_of(bor_of(st.bot(), a))));
  };
  auto cond_sub_ex_of = [&st](FormulaId g, FormulaId a) {
    return st.split_or(st.neg(st.neg(g)), a);
  };
  // dep(φ) ≡ ¬¬φ BOR ¬φ: the truth of φ is constant across the team.
  auto dep0_of = [&](FormulaId a) { return bor_of(st.neg(st.neg(a)), st.neg(a)); };

  FormulaId r = 0;
  switch (n.kind) {
    case Kind::Prop:
    case Kind::Top:
    case Kind::Bot:
      r = f;
      break;
    case Kind::Neg:
      r = st.neg(ch[0]);
      break;
    case Kind::And:
      r = st.conj(ch[0], ch[1]);
      break;
    case Kind::SplitOr:
      r = st.split_or(ch[0], ch[1]);
      break;
    case Kind::BNeg:
      r = st.bneg(ch[0]);
      break;
    case Kind::Next:
      r = st.next(ch[0]);
      break;
    case Kind::Future:
      r = st.future(ch[0]);
      break;
    case Kind::Globally:
      r = st.globally(ch[0]);
      break;
    case Kind::Until:
      r = st.until(ch[0], ch[1]);
      break;
    case Kind::Release:
      r = st.release(ch[0], ch[1]);
      break;
    case Kind::BOr:
      r = bor_of(ch[0], ch[1]);
      break;
    case Kind::BImp:
      r = bimp_of(ch[0], ch[1]);
      break;
    case Kind::BIff:
      r = st.conj(bimp_of(ch[0], ch[1]), bimp_of(ch[1], ch[0]));
      break;
    case Kind::Hook:
      r = st.split_or(st.neg(ch[0]), st.conj(st.neg(st.neg(ch[0])), ch[1]));
      break;
    case Kind::SubEx:
      r = sub_ex_of(ch[0]);
      break;
    case Kind::SubAll:
      r = sub_all_of(ch[0]);
      break;
    case Kind::SingEx:
      r = sing_ex_of(ch[0]);
      break;
    case Kind::SingAll:
      r = st.bneg(sing_ex_of(st.bneg(ch[0])));
      break;
    case Kind::CondSubEx:
      r = cond_sub_ex_of(ch[0], ch[1]);
      break;
    case Kind::CondSubAll:
      r = st.bneg(cond_sub_ex_of(ch[0], st.bneg(ch[1])));
      break;
    case Kind::CondSingEx: {
      auto inner = [&](FormulaId body) {
        return cond_sub_ex_of(ch[0], st.conj(sing_ex_of(ch[0]), st.bneg(body)));
      };
      r = cond_sub_ex_of(ch[0], st.conj(sing_ex_of(ch[0]), st.bneg(inner(ch[1]))));
      break;
    }
    case Kind::CondSingAll: {
      FormulaId body = st.bneg(ch[1]);
      auto inner = [&](FormulaId b) {
        return cond_sub_ex_of(ch[0], st.conj(sing_ex_of(ch[0]), st.bneg(b)));
      };
      r = st.bneg(cond_sub_ex_of(ch[0], st.conj(sing_ex_of(ch[0]), st.bneg(inner(body)))));
      break;
    }
    case Kind::Dep: {
      FormulaId target = ch.back();
      if (ch.size() == 1) {
        r = dep0_of(target);
      } else {
        FormulaId agree = dep0_of(ch[0]);
        for (std::size_t i = 1; i + 1 < ch.size(); ++i) agree = st.conj(agree, dep0_of(ch[i]));
        r = st.bneg(st.split_or(st.top(), st.conj(agree, st.bneg(dep0_of(target)))));
      }
      break;
    }
  }
  m.emplace(f, r);
  return r;
}

// Rewrite ¬φ as A1 ~φ (the singleton-universal form); provided as a separate
// rewrite, not part of desugaring.
inline FormulaId rewrite_neg_to_sing_all(FormulaStore& st, FormulaId f) {
  const FormulaNode n = st.node(f);
  std::vector<FormulaId> ch;
  for (FormulaId c : n.children) ch.push_back(rewrite_neg_to_sing_all(st, c));
  if (n.kind == Kind::Neg) return st.sing_all(st.bneg(ch[0]));
  switch (n.kind) {
    case Kind::Prop:
    case Kind::Top:
    case Kind::Bot:
      return f;
    default: {
      // rebuild with rewritten children
      FormulaStore* s = &st;
      switch (n.kind) {
        case Kind::And: return s->conj(ch[0], ch[1]);
        case Kind::SplitOr: return s->split_or(ch[0], ch[1]);
        case Kind::BNeg: return s->bneg(ch[0]);
        case Kind::Next: return s->next(ch[0]);
        case Kind::Future: return s->future(ch[0]);
        case Kind::Globally: return s->globally(ch[0]);
        case Kind::Until: return s->until(ch[0], ch[1]);
        case Kind::Release: return s->release(ch[0], ch[1]);
        case Kind::BOr: return s->bor(ch[0], ch[1]);
        case Kind::BImp: return s->bimp(ch[0], ch[1]);
        case Kind::BIff: return s->biff(ch[0], ch[1]);
        case Kind::Hook: return s->hook(ch[0], ch[1]);
        case Kind::SubEx: return s->sub_ex(ch[0]);
        case Kind::SubAll: return s->sub_all(ch[0]);
        case Kind::SingEx: return s->sing_ex(ch[0]);
        case Kind::SingAll: return s->sing_all(ch[0]);
        case Kind::CondSubEx: return s->cond_sub_ex(ch[0], ch[1]);
        case Kind::CondSubAll: return s->cond_sub_all(ch[0], ch[1]);
        case Kind::CondSingEx: return s->cond_sing_ex(ch[0], ch[1]);
        case Kind::CondSingAll: return s->cond_sing_all(ch[0], ch[1]);
        case Kind::Dep: {
          FormulaId t = ch.back();
          ch.pop_back();
          return s->dep(ch, t);
        }
        default: return f;
      }
    }
  }
}

struct OpSet {
  bool x = false, f = false, g = false, u = false, r = false;

  static OpSet of(std::initializer_list<Kind> ks) {
    OpSet s;
    for (Kind k : ks) {
      if (k == Kind::Next) s.x = true;
      if (k == Kind::Future) s.f = true;
      if (k == Kind::Globally) s.g = true;
      if (k == Kind::Until) s.u = true;
      if (k == Kind::Release) s.r = true;
    }
    return s;
  }
};

enum class FragmentMode { Strict, Lenient };

// Does desugar(φ) stay within the fragment LTL_k(O_1..O_n)?  Strict mode
// counts each operator as itself; lenient mode first applies the rewrites
// G ≡ ~F~, F ≡ ⊤U, R ≡ ~(~U~), which leave temporal depth unchanged.
inline bool fragment_check(FormulaStore& st, FormulaId f, OpSet ops, unsigned k,
                           FragmentMode mode = FragmentMode::Strict) {
  FormulaId d = desugar(st, f);
  if (temporal_depth(st, d) > k) return false;
  std::vector<FormulaId> stack{d};
  std::set<FormulaId> seen;
  while (!stack.empty()) {
    FormulaId id = stack.back();
    stack.pop_back();
    if (!seen.insert(id).second) continue;
    Kind kd = st.kind(id);
    if (is_temporal(kd)) {
      bool ok = false;
      switch (kd) {
        case Kind::Next: ok = ops.x; break;
        case Kind::Future: ok = ops.f || (mode == FragmentMode::Lenient && ops.u); break;
        case Kind::Globally:
          ok = ops.g || (mode == FragmentMode::Lenient && (ops.f || ops.u));
          break;
        case Kind::Until: ok = ops.u; break;
        case Kind::Release: ok = ops.r || (mode == FragmentMode::Lenient && ops.u); break;
        default: break;
      }
      if (!ok) return false;
    }
    for (FormulaId c : st.children(id)) stack.push_back(c);
  }
  return true;
}

}  // namespace tltl
