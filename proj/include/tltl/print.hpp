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

#include <string>

#include "tltl/formula.hpp"

namespace tltl {

namespace detail {

// Levels mirror the grammar in parse.hpp; larger binds tighter.
inline int print_level(Kind k) {
  switch (k) {
    case Kind::BIff: return 0;
    case Kind::BImp:
    case Kind::Hook: return 1;
    case Kind::BOr: return 2;
    case Kind::SplitOr: return 3;
    case Kind::And: return 4;
    case Kind::Until:
    case Kind::Release: return 5;
    case Kind::Neg:
    case Kind::BNeg:
    case Kind::Next:
    case Kind::Future:
    case Kind::Globally:
    case Kind::SubEx:
    case Kind::SubAll:
    case Kind::SingEx:
    case Kind::SingAll:
    case Kind::CondSubEx:
    case Kind::CondSubAll:
    case Kind::CondSingEx:
    case Kind::CondSingAll: return 6;
    default: return 7;
  }
}

inline void print_rec(const FormulaStore& st, FormulaId f, int parent_level, bool right_operand,
                      std::string& out) {
  const auto& n = st.node(f);
  const int lvl = print_level(n.kind);
  // Right-assoc binary levels (U/R and the implication level) omit parens on
  // their right operand; left-assoc ones omit them on the left.
  bool need_paren = false;
  if (lvl < parent_level) need_paren = true;
  else if (lvl == parent_level && lvl != 6 && lvl != 7) {
    bool right_assoc = (lvl == 5 || lvl == 1);
    need_paren = right_assoc ? !right_operand : right_operand;
  }
  if (need_paren) out += '(';

  auto binary = [&](const char* op) {
    print_rec(st, n.children[0], lvl, false, out);
    out += ' ';
    out += op;
    out += ' ';
    print_rec(st, n.children[1], lvl, true, out);
  };
  auto unary = [&](const char* op, bool space) {
    out += op;
    if (space) out += ' ';
    print_rec(st, n.children[0], lvl, true, out);
  };
  auto quant = [&](const char* q, bool conditional) {
    out += q;
    std::size_t body = 0;
    if (conditional) {
      out += '[';
      print_rec(st, n.children[0], 0, true, out);
      out += ']';
      body = 1;
    }
    out += ' ';
    print_rec(st, n.children[body], lvl, true, out);
  };

  switch (n.kind) {
    case Kind::Prop: out += st.prop_name(n.prop); break;
    case Kind::Top: out += "top"; break;
    case Kind::Bot: out += "bot"; break;
    case Kind::Neg: unary("!", false); break;
    case Kind::BNeg: unary("~", false); break;
    case Kind::Next: unary("X", true); break;
    case Kind::Future: unary("F", true); break;
    case Kind::Globally: unary("G", true); break;
    case Kind::And: binary("&"); break;
    case Kind::SplitOr: binary("|"); break;
    case Kind::BOr: binary("BOR"); break;
    case Kind::BImp: binary("->>"); break;
    case Kind::BIff: binary("<->>"); break;
    case Kind::Hook: binary("~>"); break;
    case Kind::Until: binary("U"); break;
    case Kind::Release: binary("R"); break;
    case Kind::SubEx: quant("EE", false); break;
    case Kind::SubAll: quant("AA", false); break;
    case Kind::SingEx: quant("E1", false); break;
    case Kind::SingAll: quant("A1", false); break;
    case Kind::CondSubEx: quant("EE", true); break;
    case Kind::CondSubAll: quant("AA", true); break;
    case Kind::CondSingEx: quant("E1", true); break;
    case Kind::CondSingAll: quant("A1", true); break;
    case Kind::Dep: {
      out += "dep(";
      for (std::size_t i = 0; i + 1 < n.children.size(); ++i) {
        if (i) out += ',';
        print_rec(st, n.children[i], 0, true, out);
      }
      out += "; ";
      print_rec(st, n.children.back(), 0, true, out);
      out += ')';
      break;
    }
  }
  if (need_paren) out += ')';
}

}  // namespace detail

inline std::string print_formula(const FormulaStore& st, FormulaId f) {
  std::string out;
  detail::print_rec(st, f, -1, true, out);
  return out;
}

}  // namespace tltl
