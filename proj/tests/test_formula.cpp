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

#include <catch2/catch_amalgamated.hpp>

#include "tltl/formula.hpp"
#include "tltl/parse.hpp"
#include "tltl/print.hpp"
#include "tltl/random.hpp"

using namespace tltl;

TEST_CASE("parsing the documented examples") {
  FormulaStore st;
  SECTION("split or of two futures") {
    FormulaId f = parse_formula(st, "F p | F p");
    FormulaId p = st.prop("p");
    CHECK(f == st.split_or(st.future(p), st.future(p)));
  }
  SECTION("dependence atom with classical arrow inside") {
    FormulaId f = parse_formula(st, "dep(in1,in2; G(end -> out))");
    FormulaId want = st.dep({st.prop("in1"), st.prop("in2")},
                            st.globally(st.split_or(st.neg(st.prop("end")), st.prop("out"))));
    CHECK(f == want);
  }
  SECTION("boolean negation nests") {
    FormulaId f = parse_formula(st, "~(p & ~p)");
    FormulaId p = st.prop("p");
    CHECK(f == st.bneg(st.conj(p, st.bneg(p))));
  }
  SECTION("empty dep argument list") {
    FormulaId f = parse_formula(st, "dep(; p)");
    CHECK(f == st.dep({}, st.prop("p")));
  }
  SECTION("hook and quantifiers") {
    FormulaId f = parse_formula(st, "p ~> F q");
    CHECK(f == st.hook(st.prop("p"), st.future(st.prop("q"))));
    CHECK(parse_formula(st, "E1[F x] p") ==
          st.cond_sing_ex(st.future(st.prop("x")), st.prop("p")));
    CHECK(parse_formula(st, "AA bot") == st.sub_all(st.bot()));
  }
  SECTION("comments and errors") {
    CHECK(parse_formula(st, "p # trailing comment") == st.prop("p"));
    CHECK_THROWS_AS(parse_formula(st, "p &"), ParseError);
    CHECK_THROWS_AS(parse_formula(st, "(p"), ParseError);
    CHECK_THROWS_AS(parse_formula(st, "@gen", /*allow_reserved=*/false), ParseError);
  }
}

TEST_CASE("printer round-trips documented forms") {
  FormulaStore st;
  CHECK(print_formula(st, st.future(st.prop("p"))) == "F p");
  CHECK(print_formula(st, st.hook(st.prop("p"), st.future(st.prop("q")))) == "p ~> F q");
  CHECK(print_formula(st, st.dep({}, st.prop("p"))) == "dep(; p)");
}

TEST_CASE("parse-print round trip on random formulas") {
  FormulaStore st;
  std::vector<PropId> props{st.prop_id("p"), st.prop_id("q"), st.prop_id("r0")};
  Rng rng(21);
  for (int i = 0; i < 500; ++i) {
    FormulaId f = random_formula(st, rng, props);
    std::string s = print_formula(st, f);
    FormulaId g = parse_formula(st, s);
    INFO(s);
    CHECK(f == g);
  }
}

TEST_CASE("temporal depth follows the displayed recursion") {
  FormulaStore st;
  FormulaId p = st.prop("p"), q = st.prop("q");
  CHECK(temporal_depth(st, p) == 0);
  CHECK(temporal_depth(st, st.until(p, st.future(q))) == 2);
  CHECK(temporal_depth(st, st.cond_sing_ex(st.future(p), q)) == 1);
}

TEST_CASE("temporal depth agrees with the desugared form") {
  FormulaStore st;
  std::vector<PropId> props{st.prop_id("p"), st.prop_id("q")};
  Rng rng(22);
  int sugar_seen = 0;
  for (int i = 0; i < 1000; ++i) {
    FormulaId f = random_formula(st, rng, props);
    FormulaId d = desugar(st, f);
    if (f != d) ++sugar_seen;
    CHECK(temporal_depth(st, f) == temporal_depth(st, d));
  }
  CHECK(sugar_seen > 300);
}

TEST_CASE("desugared output uses only core kinds") {
  FormulaStore st;
  std::vector<PropId> props{st.prop_id("p"), st.prop_id("q")};
  Rng rng(23);
  auto core_only = [&st](FormulaId f) {
    std::vector<FormulaId> stack{f};
    while (!stack.empty()) {
      FormulaId id = stack.back();
      stack.pop_back();
      switch (st.kind(id)) {
        case Kind::Prop:
        case Kind::Neg:
        case Kind::And:
        case Kind::SplitOr:
        case Kind::BNeg:
        case Kind::Next:
        case Kind::Future:
        case Kind::Globally:
        case Kind::Until:
        case Kind::Release:
        case Kind::Top:
        case Kind::Bot:
          break;
        default:
          return false;
      }
      for (FormulaId c : st.children(id)) stack.push_back(c);
    }
    return true;
  };
  for (int i = 0; i < 300; ++i) CHECK(core_only(desugar(st, random_formula(st, rng, props))));

  // documented expansions
  FormulaId p = st.prop("p");
  CHECK(desugar(st, st.sub_ex(p)) == st.split_or(st.top(), p));
  FormulaId dep0 = st.bneg(st.conj(st.bneg(st.neg(st.neg(p))), st.bneg(st.neg(p))));
  CHECK(desugar(st, st.dep({}, p)) == dep0);
  FormulaId np = st.neg(parse_formula(st, "p & q"));
  CHECK(desugar(st, np) == np);  // ¬ is core, kept as is
}

TEST_CASE("fragment check in strict and lenient modes") {
  FormulaStore st;
  FormulaId p = st.prop("p");
  OpSet f_only = OpSet::of({Kind::Future});
  CHECK(fragment_check(st, st.future(p), f_only, 1));
  CHECK_FALSE(fragment_check(st, st.next(p), OpSet::of({Kind::Future}), 2));
  CHECK_FALSE(fragment_check(st, st.globally(p), f_only, 1, FragmentMode::Strict));
  CHECK(fragment_check(st, st.globally(p), f_only, 1, FragmentMode::Lenient));
  CHECK(fragment_check(st, st.release(p, p), OpSet::of({Kind::Until}), 1, FragmentMode::Lenient));
  CHECK_FALSE(fragment_check(st, st.future(st.future(p)), f_only, 1));
}

TEST_CASE("fragment soundness: allowed ops really cover the desugared tree") {
  FormulaStore st;
  std::vector<PropId> props{st.prop_id("p"), st.prop_id("q")};
  Rng rng(24);
  OpSet ops = OpSet::of({Kind::Future, Kind::Until, Kind::Next});
  for (int i = 0; i < 300; ++i) {
    FormulaId f = random_formula(st, rng, props);
    if (!fragment_check(st, f, ops, 3, FragmentMode::Strict)) continue;
    FormulaId d = desugar(st, f);
    std::vector<FormulaId> stack{d};
    while (!stack.empty()) {
      FormulaId id = stack.back();
      stack.pop_back();
      Kind k = st.kind(id);
      if (is_temporal(k))
        CHECK((k == Kind::Future || k == Kind::Until || k == Kind::Next));
      for (FormulaId c : st.children(id)) stack.push_back(c);
    }
  }
}

TEST_CASE("neg-to-singleton-universal rewrite is available separately") {
  FormulaStore st;
  FormulaId f = parse_formula(st, "!(p & q)");
  FormulaId r = rewrite_neg_to_sing_all(st, f);
  CHECK(r == st.sing_all(st.bneg(st.conj(st.prop("p"), st.prop("q")))));
}
