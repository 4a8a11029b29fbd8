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

#include <cctype>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "tltl/formula.hpp"

namespace tltl {

// ASCII surface syntax.
//
//   !  ¬      ~  Boolean negation      &  ∧        |  splitting ∨
//   BOR       Boolean disjunction      ->>  Boolean implication
//   <->>      Boolean equivalence      ~>   hook (team conditioning)
//   X F G     unary temporal           U R  infix temporal (right-assoc)
//   E1 A1 EE AA            subteam/singleton quantifiers
//   E1[g] A1[g] EE[g] AA[g]  conditional variants
//   dep(a,...,b; c)        dependence atom
//   top bot   constants
//   -> <->    classical abbreviations, expanded at parse time
//
// Binding, tightest first: unary, U/R, &, |, BOR, {->> ~>}, <->>.
// Identifiers are over [A-Za-z0-9_@'], '#' starts a line comment.  Names
// beginning with '@' are reserved for generated propositions; parsing them
// is allowed by default so generated artifacts round-trip.

struct ParseError : TltlError {
  ParseError(const std::string& msg, std::size_t pos)
      : TltlError(msg + " at offset " + std::to_string(pos)), position(pos) {}
  std::size_t position;
};

namespace detail {

enum class Tok : std::uint8_t {
  Ident, Bang, Tilde, Amp, Pipe, BorKw, ImpB, IffB, HookArrow, ImpC, IffC,
  LParen, RParen, LBrack, RBrack, Comma, Semi, X, F, G, U, R, E1, A1, EE, AA,
  Dep, Top, Bot, End,
};

struct Token {
  Tok tok;
  std::string text;
  std::size_t pos;
};

inline bool ident_char(char c) {
  return std::isalnum(static_cast<unsigned char>(c)) || c == '_' || c == '@' || c == '\'';
}

inline std::vector<Token> lex(std::string_view s) {
  std::vector<Token> out;
  std::size_t i = 0;
  auto push = [&out](Tok t, std::string text, std::size_t p) {
    out.push_back({t, std::move(text), p});
  };
  while (i < s.size()) {
    char c = s[i];
    if (c == '#') {  // comment to end of line
      while (i < s.size() && s[i] != '\n') ++i;
      continue;
    }
    if (std::isspace(static_cast<unsigned char>(c))) {
      ++i;
      continue;
    }
    if (s.compare(i, 4, "<->>") == 0) { push(Tok::IffB, "<->>", i); i += 4; continue; }
    if (s.compare(i, 3, "->>") == 0) { push(Tok::ImpB, "->>", i); i += 3; continue; }
    if (s.compare(i, 3, "<->") == 0) { push(Tok::IffC, "<->", i); i += 3; continue; }
    if (s.compare(i, 2, "->") == 0) { push(Tok::ImpC, "->", i); i += 2; continue; }
    if (s.compare(i, 2, "~>") == 0) { push(Tok::HookArrow, "~>", i); i += 2; continue; }
    switch (c) {
      case '!': push(Tok::Bang, "!", i); ++i; continue;
      case '~': push(Tok::Tilde, "~", i); ++i; continue;
      case '&': push(Tok::Amp, "&", i); ++i; continue;
      case '|': push(Tok::Pipe, "|", i); ++i; continue;
      case '(': push(Tok::LParen, "(", i); ++i; continue;
      case ')': push(Tok::RParen, ")", i); ++i; continue;
      case '[': push(Tok::LBrack, "[", i); ++i; continue;
      case ']': push(Tok::RBrack, "]", i); ++i; continue;
      case ',': push(Tok::Comma, ",", i); ++i; continue;
      case ';': push(Tok::Semi, ";", i); ++i; continue;
      default: break;
    }
    if (ident_char(c)) {
      std::size_t j = i;
      while (j < s.size() && ident_char(s[j])) ++j;
      std::string w(s.substr(i, j - i));
      Tok t = Tok::Ident;
      if (w == "X") t = Tok::X;
      else if (w == "F") t = Tok::F;
      else if (w == "G") t = Tok::G;
      else if (w == "U") t = Tok::U;
      else if (w == "R") t = Tok::R;
      else if (w == "E1") t = Tok::E1;
      else if (w == "A1") t = Tok::A1;
      else if (w == "EE") t = Tok::EE;
      else if (w == "AA") t = Tok::AA;
      else if (w == "BOR") t = Tok::BorKw;
      else if (w == "dep") t = Tok::Dep;
      else if (w == "top") t = Tok::Top;
      else if (w == "bot") t = Tok::Bot;
      push(t, std::move(w), i);
      i = j;
      continue;
    }
    throw ParseError(std::string("unexpected character '") + c + "'", i);
  }
  push(Tok::End, "", s.size());
  return out;
}

class Parser {
 public:
  Parser(FormulaStore& st, std::vector<Token> toks, bool allow_reserved)
      : st_(st), toks_(std::move(toks)), allow_reserved_(allow_reserved) {}

  FormulaId run() {
    FormulaId f = parse_iff();
    expect(Tok::End, "trailing input");
    return f;
  }

 private:
  const Token& cur() const { return toks_[pos_]; }
  bool accept(Tok t) {
    if (cur().tok == t) { ++pos_; return true; }
    return false;
  }
  void expect(Tok t, const char* what) {
    if (!accept(t)) throw ParseError(std::string("expected ") + what, cur().pos);
  }

  FormulaId parse_iff() {
    FormulaId lhs = parse_imp();
    for (;;) {
      if (accept(Tok::IffB)) {
        lhs = st_.biff(lhs, parse_imp());
      } else if (accept(Tok::IffC)) {
        FormulaId rhs = parse_imp();
        lhs = st_.conj(st_.split_or(st_.neg(lhs), rhs), st_.split_or(st_.neg(rhs), lhs));
      } else {
        return lhs;
      }
    }
  }

  // ->>, -> and ~> share a level and associate to the right.
  FormulaId parse_imp() {
    FormulaId lhs = parse_bor();
    if (accept(Tok::ImpB)) return st_.bimp(lhs, parse_imp());
    if (accept(Tok::ImpC)) return st_.split_or(st_.neg(lhs), parse_imp());
    if (accept(Tok::HookArrow)) return st_.hook(lhs, parse_imp());
    return lhs;
  }

  FormulaId parse_bor() {
    FormulaId lhs = parse_or();
    while (accept(Tok::BorKw)) lhs = st_.bor(lhs, parse_or());
    return lhs;
  }

  FormulaId parse_or() {
    FormulaId lhs = parse_and();
    while (accept(Tok::Pipe)) lhs = st_.split_or(lhs, parse_and());
    return lhs;
  }

  FormulaId parse_and() {
    FormulaId lhs = parse_until();
    while (accept(Tok::Amp)) lhs = st_.conj(lhs, parse_until());
    return lhs;
  }

  FormulaId parse_until() {
    FormulaId lhs = parse_unary();
    if (accept(Tok::U)) return st_.until(lhs, parse_until());
    if (accept(Tok::R)) return st_.release(lhs, parse_until());
    return lhs;
  }

  FormulaId parse_unary() {
    if (accept(Tok::Bang)) return st_.neg(parse_unary());
    if (accept(Tok::Tilde)) return st_.bneg(parse_unary());
    if (accept(Tok::X)) return st_.next(parse_unary());
    if (accept(Tok::F)) return st_.future(parse_unary());
    if (accept(Tok::G)) return st_.globally(parse_unary());
    if (cur().tok == Tok::E1 || cur().tok == Tok::A1 || cur().tok == Tok::EE ||
        cur().tok == Tok::AA) {
      Tok q = cur().tok;
      ++pos_;
      std::optional<FormulaId> guard;
      if (accept(Tok::LBrack)) {
        guard = parse_iff();
        expect(Tok::RBrack, "']'");
      }
      FormulaId body = parse_unary();
      switch (q) {
        case Tok::E1: return guard ? st_.cond_sing_ex(*guard, body) : st_.sing_ex(body);
        case Tok::A1: return guard ? st_.cond_sing_all(*guard, body) : st_.sing_all(body);
        case Tok::EE: return guard ? st_.cond_sub_ex(*guard, body) : st_.sub_ex(body);
        default: return guard ? st_.cond_sub_all(*guard, body) : st_.sub_all(body);
      }
    }
    return parse_primary();
  }

  FormulaId parse_primary() {
    if (accept(Tok::LParen)) {
      FormulaId f = parse_iff();
      expect(Tok::RParen, "')'");
      return f;
    }
    if (accept(Tok::Top)) return st_.top();
    if (accept(Tok::Bot)) return st_.bot();
    if (cur().tok == Tok::Dep) {
      ++pos_;
      expect(Tok::LParen, "'(' after dep");
      std::vector<FormulaId> args;
      if (cur().tok != Tok::Semi) {
        args.push_back(parse_iff());
        while (accept(Tok::Comma)) args.push_back(parse_iff());
      }
      expect(Tok::Semi, "';' in dep");
      FormulaId target = parse_iff();
      expect(Tok::RParen, "')'");
      return st_.dep(std::move(args), target);
    }
    if (cur().tok == Tok::Ident) {
      const Token& t = cur();
      if (!allow_reserved_ && !t.text.empty() && t.text[0] == '@')
        throw ParseError("reserved proposition name '" + t.text + "'", t.pos);
      ++pos_;
      return st_.prop(t.text);
    }
    throw ParseError("expected a formula", cur().pos);
  }

  FormulaStore& st_;
  std::vector<Token> toks_;
  std::size_t pos_ = 0;
  bool allow_reserved_;
};

}  // namespace detail

inline FormulaId parse_formula(FormulaStore& st, std::string_view text,
                               bool allow_reserved = true) {
  return detail::Parser(st, detail::lex(text), allow_reserved).run();
}

}  // namespace tltl
