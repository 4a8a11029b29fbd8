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
#include <map>
#include <memory>
#include <set>
#include <string>
#include <string_view>
#include <vector>

#include "tltl/trace.hpp"  // TltlError

namespace tltl {

// Third-order arithmetic over (+, ×, 0, 1, =, <, ≤) with typed variables:
// first-order individuals, second-order relations of arity n, third-order
// relations over tuples of relations, and (only inside intermediate passes)
// function variables.

struct ArithType {
  enum class Order : std::uint8_t { First, Second, Third, Function };
  Order order = Order::First;
  std::vector<std::size_t> arities;  // Second/Function: {n}; Third: {n_1..n_k}

  bool operator==(const ArithType&) const = default;

  static ArithType first() { return {Order::First, {}}; }
  static ArithType second(std::size_t n) { return {Order::Second, {n}}; }
  static ArithType third(std::vector<std::size_t> ns) { return {Order::Third, std::move(ns)}; }
  static ArithType function(std::size_t n) { return {Order::Function, {n}}; }
};

struct Term;
using TermPtr = std::shared_ptr<const Term>;

struct Term {
  enum class K : std::uint8_t { Zero, One, Var, Plus, Times, FunApp };
  K k;
  std::string name;           // Var / FunApp
  std::vector<TermPtr> args;  // Plus, Times: 2; FunApp: n
};

inline TermPtr t_zero() { return std::make_shared<Term>(Term{Term::K::Zero, {}, {}}); }
inline TermPtr t_one() { return std::make_shared<Term>(Term{Term::K::One, {}, {}}); }
inline TermPtr t_var(std::string n) {
  return std::make_shared<Term>(Term{Term::K::Var, std::move(n), {}});
}
inline TermPtr t_plus(TermPtr a, TermPtr b) {
  return std::make_shared<Term>(Term{Term::K::Plus, {}, {std::move(a), std::move(b)}});
}
inline TermPtr t_times(TermPtr a, TermPtr b) {
  return std::make_shared<Term>(Term{Term::K::Times, {}, {std::move(a), std::move(b)}});
}
inline TermPtr t_funapp(std::string f, std::vector<TermPtr> args) {
  return std::make_shared<Term>(Term{Term::K::FunApp, std::move(f), std::move(args)});
}

// Unary numeral 1+1+...+1 (left-assoc), 0 for m = 0.
inline TermPtr t_numeral(std::size_t m) {
  if (m == 0) return t_zero();
  TermPtr t = t_one();
  for (std::size_t i = 1; i < m; ++i) t = t_plus(t, t_one());
  return t;
}

struct AFormula;
using AFormulaPtr = std::shared_ptr<const AFormula>;

struct AFormula {
  enum class K : std::uint8_t {
    Less, Leq, Eq,       // term comparisons
    RelApp,              // A(t_1..t_n)
    ThirdApp,            // a(A_1..A_k), args are relation variable names
    Not, And, Or, Imp, Iff,
    Exists, Forall,
  };
  K k;
  std::vector<TermPtr> terms;
  std::string head;                   // RelApp / ThirdApp
  std::vector<std::string> rel_args;  // ThirdApp
  std::vector<AFormulaPtr> sub;
  std::string qvar;
  ArithType qtype;
};

inline AFormulaPtr a_less(TermPtr a, TermPtr b) {
  return std::make_shared<AFormula>(AFormula{AFormula::K::Less, {std::move(a), std::move(b)},
                                             {}, {}, {}, {}, {}});
}
inline AFormulaPtr a_leq(TermPtr a, TermPtr b) {
  return std::make_shared<AFormula>(AFormula{AFormula::K::Leq, {std::move(a), std::move(b)},
                                             {}, {}, {}, {}, {}});
}
inline AFormulaPtr a_eq(TermPtr a, TermPtr b) {
  return std::make_shared<AFormula>(AFormula{AFormula::K::Eq, {std::move(a), std::move(b)},
                                             {}, {}, {}, {}, {}});
}
inline AFormulaPtr a_rel(std::string head, std::vector<TermPtr> ts) {
  return std::make_shared<AFormula>(AFormula{AFormula::K::RelApp, std::move(ts), std::move(head),
                                             {}, {}, {}, {}});
}
inline AFormulaPtr a_third(std::string head, std::vector<std::string> rels) {
  return std::make_shared<AFormula>(AFormula{AFormula::K::ThirdApp, {}, std::move(head),
                                             std::move(rels), {}, {}, {}});
}
inline AFormulaPtr a_not(AFormulaPtr f) {
  return std::make_shared<AFormula>(AFormula{AFormula::K::Not, {}, {}, {}, {std::move(f)}, {}, {}});
}
inline AFormulaPtr a_bin(AFormula::K k, AFormulaPtr a, AFormulaPtr b) {
  return std::make_shared<AFormula>(AFormula{k, {}, {}, {}, {std::move(a), std::move(b)}, {}, {}});
}
inline AFormulaPtr a_and(AFormulaPtr a, AFormulaPtr b) {
  return a_bin(AFormula::K::And, std::move(a), std::move(b));
}
inline AFormulaPtr a_or(AFormulaPtr a, AFormulaPtr b) {
  return a_bin(AFormula::K::Or, std::move(a), std::move(b));
}
inline AFormulaPtr a_imp(AFormulaPtr a, AFormulaPtr b) {
  return a_bin(AFormula::K::Imp, std::move(a), std::move(b));
}
inline AFormulaPtr a_iff(AFormulaPtr a, AFormulaPtr b) {
  return a_bin(AFormula::K::Iff, std::move(a), std::move(b));
}
inline AFormulaPtr a_and_all(std::vector<AFormulaPtr> fs) {
  if (fs.empty()) throw TltlError("empty conjunction");
  AFormulaPtr r = fs[0];
  for (std::size_t i = 1; i < fs.size(); ++i) r = a_and(r, fs[i]);
  return r;
}
inline AFormulaPtr a_or_all(std::vector<AFormulaPtr> fs) {
  if (fs.empty()) return a_less(t_zero(), t_zero());  // canonical false
  AFormulaPtr r = fs[0];
  for (std::size_t i = 1; i < fs.size(); ++i) r = a_or(r, fs[i]);
  return r;
}
inline AFormulaPtr a_quant(bool exists, std::string var, ArithType ty, AFormulaPtr body) {
  return std::make_shared<AFormula>(AFormula{exists ? AFormula::K::Exists : AFormula::K::Forall,
                                             {}, {}, {}, {std::move(body)}, std::move(var),
                                             std::move(ty)});
}
inline AFormulaPtr a_exists(std::string var, ArithType ty, AFormulaPtr body) {
  return a_quant(true, std::move(var), std::move(ty), std::move(body));
}
inline AFormulaPtr a_forall(std::string var, ArithType ty, AFormulaPtr body) {
  return a_quant(false, std::move(var), std::move(ty), std::move(body));
}

inline bool is_quant(const AFormula& f) {
  return f.k == AFormula::K::Exists || f.k == AFormula::K::Forall;
}

// ---------------------------------------------------------------------------
// variable scans

namespace detail {

inline void term_vars(const TermPtr& t, std::set<std::string>* out) {
  switch (t->k) {
    case Term::K::Var: out->insert(t->name); break;
    case Term::K::FunApp:
      out->insert(t->name);
      for (const auto& a : t->args) term_vars(a, out);
      break;
    case Term::K::Plus:
    case Term::K::Times:
      for (const auto& a : t->args) term_vars(a, out);
      break;
    default: break;
  }
}

inline void free_vars_rec(const AFormulaPtr& f, std::set<std::string> bound,
                          std::set<std::string>* out) {
  switch (f->k) {
    case AFormula::K::Less:
    case AFormula::K::Leq:
    case AFormula::K::Eq:
    case AFormula::K::RelApp: {
      std::set<std::string> vs;
      for (const auto& t : f->terms) term_vars(t, &vs);
      if (f->k == AFormula::K::RelApp) vs.insert(f->head);
      for (const auto& v : vs)
        if (!bound.count(v)) out->insert(v);
      break;
    }
    case AFormula::K::ThirdApp: {
      if (!bound.count(f->head)) out->insert(f->head);
      for (const auto& r : f->rel_args)
        if (!bound.count(r)) out->insert(r);
      break;
    }
    case AFormula::K::Exists:
    case AFormula::K::Forall: {
      bound.insert(f->qvar);
      free_vars_rec(f->sub[0], bound, out);
      break;
    }
    default:
      for (const auto& s : f->sub) free_vars_rec(s, bound, out);
      break;
  }
}

}  // namespace detail

inline std::set<std::string> free_vars(const AFormulaPtr& f) {
  std::set<std::string> out;
  detail::free_vars_rec(f, {}, &out);
  return out;
}

inline bool is_closed(const AFormulaPtr& f) { return free_vars(f).empty(); }

// Typing check: every occurrence consistent with the binding in scope.
// Free variables may be given via `env` (used for the translation outputs
// whose contract leaves specific variables free).
inline void well_formed_check(const AFormulaPtr& f, std::map<std::string, ArithType> env = {}) {
  auto term_check = [&env](const TermPtr& t, auto&& self) -> void {
    switch (t->k) {
      case Term::K::Var: {
        auto it = env.find(t->name);
        if (it == env.end()) throw TltlError("unbound variable: " + t->name);
        if (it->second.order != ArithType::Order::First)
          throw TltlError("variable used as a term is not first-order: " + t->name);
        break;
      }
      case Term::K::FunApp: {
        auto it = env.find(t->name);
        if (it == env.end()) throw TltlError("unbound function: " + t->name);
        if (it->second.order != ArithType::Order::Function ||
            it->second.arities[0] != t->args.size())
          throw TltlError("function arity mismatch: " + t->name);
        for (const auto& a : t->args) self(a, self);
        break;
      }
      case Term::K::Plus:
      case Term::K::Times:
        for (const auto& a : t->args) self(a, self);
        break;
      default: break;
    }
  };
  switch (f->k) {
    case AFormula::K::Less:
    case AFormula::K::Leq:
    case AFormula::K::Eq:
      for (const auto& t : f->terms) term_check(t, term_check);
      break;
    case AFormula::K::RelApp: {
      auto it = env.find(f->head);
      if (it == env.end()) throw TltlError("unbound relation: " + f->head);
      if (it->second.order != ArithType::Order::Second ||
          it->second.arities[0] != f->terms.size())
        throw TltlError("relation arity mismatch: " + f->head);
      for (const auto& t : f->terms) term_check(t, term_check);
      break;
    }
    case AFormula::K::ThirdApp: {
      auto it = env.find(f->head);
      if (it == env.end()) throw TltlError("unbound third-order variable: " + f->head);
      if (it->second.order != ArithType::Order::Third ||
          it->second.arities.size() != f->rel_args.size())
        throw TltlError("third-order arity mismatch: " + f->head);
      for (std::size_t i = 0; i < f->rel_args.size(); ++i) {
        auto jt = env.find(f->rel_args[i]);
        if (jt == env.end()) throw TltlError("unbound relation: " + f->rel_args[i]);
        if (jt->second.order != ArithType::Order::Second ||
            jt->second.arities[0] != it->second.arities[i])
          throw TltlError("third-order argument arity mismatch: " + f->rel_args[i]);
      }
      break;
    }
    case AFormula::K::Exists:
    case AFormula::K::Forall: {
      auto saved = env;
      env[f->qvar] = f->qtype;
      well_formed_check(f->sub[0], env);
      env = saved;
      break;
    }
    default:
      for (const auto& s : f->sub) well_formed_check(s, env);
      break;
  }
}

// ---------------------------------------------------------------------------
// s-expression reader/printer
//
//   (exists (x 1) (lt x (plus x (one))))
//   types: 1 | (2 n) | (3 n1 ... nk) | (fun n)
//   terms: (zero) | (one) | <decimal numeral> | name | (plus t t) |
//          (times t t) | (fapp f t ...)
//   atoms: (lt t t) | (le t t) | (eq t t) | (rel A t ...) | (app3 a A ...)

struct SexprError : TltlError {
  using TltlError::TltlError;
};

namespace detail {

struct Sexpr {
  bool is_atom = false;
  std::string atom;
  std::vector<Sexpr> items;
};

inline Sexpr parse_sexpr(std::string_view s, std::size_t* pos) {
  auto skip = [&]() {
    while (*pos < s.size() &&
           (std::isspace(static_cast<unsigned char>(s[*pos])) || s[*pos] == ';')) {
      if (s[*pos] == ';') {
        while (*pos < s.size() && s[*pos] != '\n') ++*pos;
      } else {
        ++*pos;
      }
    }
  };
  skip();
  if (*pos >= s.size()) throw SexprError("unexpected end of input");
  if (s[*pos] == '(') {
    ++*pos;
    Sexpr e;
    for (;;) {
      skip();
      if (*pos >= s.size()) throw SexprError("missing ')'");
      if (s[*pos] == ')') {
        ++*pos;
        return e;
      }
      e.items.push_back(parse_sexpr(s, pos));
    }
  }
  if (s[*pos] == ')') throw SexprError("unexpected ')'");
  Sexpr e;
  e.is_atom = true;
  while (*pos < s.size() && !std::isspace(static_cast<unsigned char>(s[*pos])) &&
         s[*pos] != '(' && s[*pos] != ')' && s[*pos] != ';')
    e.atom += s[(*pos)++];
  return e;
}

inline TermPtr term_of_sexpr(const Sexpr& e);

inline TermPtr fold_terms(Term::K k, const std::vector<Sexpr>& items) {
  if (items.size() < 3) throw SexprError("operator needs at least two arguments");
  TermPtr t = term_of_sexpr(items[1]);
  for (std::size_t i = 2; i < items.size(); ++i) {
    TermPtr u = term_of_sexpr(items[i]);
    t = std::make_shared<Term>(Term{k, {}, {t, u}});
  }
  return t;
}

inline TermPtr term_of_sexpr(const Sexpr& e) {
  if (e.is_atom) {
    if (!e.atom.empty() && std::isdigit(static_cast<unsigned char>(e.atom[0]))) {
      std::size_t v = std::stoull(e.atom);
      return t_numeral(v);
    }
    return t_var(e.atom);
  }
  if (e.items.empty() || !e.items[0].is_atom) throw SexprError("bad term");
  const std::string& h = e.items[0].atom;
  if (h == "zero") return t_zero();
  if (h == "one") return t_one();
  if (h == "plus") return fold_terms(Term::K::Plus, e.items);
  if (h == "times") return fold_terms(Term::K::Times, e.items);
  if (h == "fapp") {
    if (e.items.size() < 2 || !e.items[1].is_atom) throw SexprError("bad fapp");
    std::vector<TermPtr> args;
    for (std::size_t i = 2; i < e.items.size(); ++i) args.push_back(term_of_sexpr(e.items[i]));
    return t_funapp(e.items[1].atom, std::move(args));
  }
  throw SexprError("unknown term head: " + h);
}

inline ArithType type_of_sexpr(const Sexpr& e) {
  if (e.is_atom) {
    if (e.atom == "1") return ArithType::first();
    throw SexprError("bad type: " + e.atom);
  }
  if (e.items.empty() || !e.items[0].is_atom) throw SexprError("bad type");
  const std::string& h = e.items[0].atom;
  auto nat = [](const Sexpr& x) {
    if (!x.is_atom) throw SexprError("bad arity");
    return static_cast<std::size_t>(std::stoull(x.atom));
  };
  if (h == "2") {
    if (e.items.size() != 2) throw SexprError("second-order type takes one arity");
    return ArithType::second(nat(e.items[1]));
  }
  if (h == "3") {
    std::vector<std::size_t> ns;
    for (std::size_t i = 1; i < e.items.size(); ++i) ns.push_back(nat(e.items[i]));
    if (ns.empty()) throw SexprError("third-order type needs arities");
    return ArithType::third(std::move(ns));
  }
  if (h == "fun") {
    if (e.items.size() != 2) throw SexprError("function type takes one arity");
    return ArithType::function(nat(e.items[1]));
  }
  throw SexprError("unknown type head: " + h);
}

inline AFormulaPtr formula_of_sexpr(const Sexpr& e) {
  if (e.is_atom) throw SexprError("formula expected, got atom " + e.atom);
  if (e.items.empty() || !e.items[0].is_atom) throw SexprError("bad formula");
  const std::string& h = e.items[0].atom;
  auto sub = [&](std::size_t i) { return formula_of_sexpr(e.items[i]); };
  if (h == "lt" || h == "le" || h == "eq") {
    if (e.items.size() != 3) throw SexprError(h + " takes two terms");
    TermPtr a = term_of_sexpr(e.items[1]), b = term_of_sexpr(e.items[2]);
    if (h == "lt") return a_less(a, b);
    if (h == "le") return a_leq(a, b);
    return a_eq(a, b);
  }
  if (h == "rel") {
    if (e.items.size() < 3 || !e.items[1].is_atom) throw SexprError("bad rel");
    std::vector<TermPtr> ts;
    for (std::size_t i = 2; i < e.items.size(); ++i) ts.push_back(term_of_sexpr(e.items[i]));
    return a_rel(e.items[1].atom, std::move(ts));
  }
  if (h == "app3") {
    if (e.items.size() < 3 || !e.items[1].is_atom) throw SexprError("bad app3");
    std::vector<std::string> rs;
    for (std::size_t i = 2; i < e.items.size(); ++i) {
      if (!e.items[i].is_atom) throw SexprError("app3 arguments are relation names");
      rs.push_back(e.items[i].atom);
    }
    return a_third(e.items[1].atom, std::move(rs));
  }
  if (h == "not") {
    if (e.items.size() != 2) throw SexprError("not takes one formula");
    return a_not(sub(1));
  }
  if (h == "and" || h == "or") {
    if (e.items.size() < 3) throw SexprError(h + " takes at least two formulas");
    AFormulaPtr r = sub(1);
    for (std::size_t i = 2; i < e.items.size(); ++i)
      r = a_bin(h == "and" ? AFormula::K::And : AFormula::K::Or, r, sub(i));
    return r;
  }
  if (h == "imp" || h == "iff") {
    if (e.items.size() != 3) throw SexprError(h + " takes two formulas");
    return a_bin(h == "imp" ? AFormula::K::Imp : AFormula::K::Iff, sub(1), sub(2));
  }
  if (h == "exists" || h == "forall") {
    if (e.items.size() != 3 || e.items[1].is_atom || e.items[1].items.size() != 2 ||
        !e.items[1].items[0].is_atom)
      throw SexprError(h + " takes (name type) and a body");
    return a_quant(h == "exists", e.items[1].items[0].atom, type_of_sexpr(e.items[1].items[1]),
                   sub(2));
  }
  throw SexprError("unknown formula head: " + h);
}

}  // namespace detail

inline AFormulaPtr parse_arith(std::string_view text) {
  std::size_t pos = 0;
  detail::Sexpr e = detail::parse_sexpr(text, &pos);
  while (pos < text.size() && (std::isspace(static_cast<unsigned char>(text[pos])))) ++pos;
  if (pos != text.size()) throw SexprError("trailing input after formula");
  return detail::formula_of_sexpr(e);
}

// Is `t` the canonical unary numeral for some m (left-assoc sum of ones)?
inline bool numeral_value(const TermPtr& t, std::size_t* out) {
  if (t->k == Term::K::Zero) {
    *out = 0;
    return true;
  }
  std::size_t count = 0;
  const Term* cur = t.get();
  while (cur->k == Term::K::Plus) {
    if (cur->args[1]->k != Term::K::One) return false;
    ++count;
    cur = cur->args[0].get();
  }
  if (cur->k != Term::K::One) return false;
  *out = count + 1;
  return true;
}

inline void print_term(const TermPtr& t, bool decimal_numerals, std::string* out) {
  if (decimal_numerals) {
    std::size_t v;
    if (numeral_value(t, &v)) {
      *out += std::to_string(v);
      return;
    }
  }
  switch (t->k) {
    case Term::K::Zero: *out += "(zero)"; return;
    case Term::K::One: *out += "(one)"; return;
    case Term::K::Var: *out += t->name; return;
    case Term::K::Plus:
    case Term::K::Times:
      *out += t->k == Term::K::Plus ? "(plus " : "(times ";
      print_term(t->args[0], decimal_numerals, out);
      *out += ' ';
      print_term(t->args[1], decimal_numerals, out);
      *out += ')';
      return;
    case Term::K::FunApp:
      *out += "(fapp " + t->name;
      for (const auto& a : t->args) {
        *out += ' ';
        print_term(a, decimal_numerals, out);
      }
      *out += ')';
      return;
  }
}

inline void print_type(const ArithType& ty, std::string* out) {
  switch (ty.order) {
    case ArithType::Order::First: *out += '1'; return;
    case ArithType::Order::Second:
      *out += "(2 " + std::to_string(ty.arities[0]) + ")";
      return;
    case ArithType::Order::Third: {
      *out += "(3";
      for (std::size_t n : ty.arities) *out += ' ' + std::to_string(n);
      *out += ')';
      return;
    }
    case ArithType::Order::Function:
      *out += "(fun " + std::to_string(ty.arities[0]) + ")";
      return;
  }
}

inline void print_arith_rec(const AFormulaPtr& f, bool decimal, std::string* out) {
  switch (f->k) {
    case AFormula::K::Less:
    case AFormula::K::Leq:
    case AFormula::K::Eq: {
      *out += f->k == AFormula::K::Less ? "(lt " : f->k == AFormula::K::Leq ? "(le " : "(eq ";
      print_term(f->terms[0], decimal, out);
      *out += ' ';
      print_term(f->terms[1], decimal, out);
      *out += ')';
      return;
    }
    case AFormula::K::RelApp: {
      *out += "(rel " + f->head;
      for (const auto& t : f->terms) {
        *out += ' ';
        print_term(t, decimal, out);
      }
      *out += ')';
      return;
    }
    case AFormula::K::ThirdApp: {
      *out += "(app3 " + f->head;
      for (const auto& r : f->rel_args) *out += ' ' + r;
      *out += ')';
      return;
    }
    case AFormula::K::Not:
      *out += "(not ";
      print_arith_rec(f->sub[0], decimal, out);
      *out += ')';
      return;
    case AFormula::K::And:
    case AFormula::K::Or:
    case AFormula::K::Imp:
    case AFormula::K::Iff: {
      const char* h = f->k == AFormula::K::And   ? "(and "
                      : f->k == AFormula::K::Or  ? "(or "
                      : f->k == AFormula::K::Imp ? "(imp "
                                                 : "(iff ";
      *out += h;
      print_arith_rec(f->sub[0], decimal, out);
      *out += ' ';
      print_arith_rec(f->sub[1], decimal, out);
      *out += ')';
      return;
    }
    case AFormula::K::Exists:
    case AFormula::K::Forall: {
      *out += f->k == AFormula::K::Exists ? "(exists (" : "(forall (";
      *out += f->qvar + ' ';
      print_type(f->qtype, out);
      *out += ") ";
      print_arith_rec(f->sub[0], decimal, out);
      *out += ')';
      return;
    }
  }
}

inline std::string print_arith(const AFormulaPtr& f, bool decimal_numerals = false) {
  std::string out;
  print_arith_rec(f, decimal_numerals, &out);
  return out;
}

}  // namespace tltl
