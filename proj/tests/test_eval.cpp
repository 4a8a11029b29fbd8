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

#include "tltl/eval.hpp"
#include "tltl/parse.hpp"
#include "tltl/print.hpp"
#include "tltl/probe.hpp"
#include "tltl/random.hpp"

using namespace tltl;

namespace {

Label lab(std::initializer_list<int> bits) {
  Label l;
  for (int b : bits) l.set(static_cast<std::size_t>(b));
  return l;
}

const Label E = lab({});
const Label P = lab({0});

Team paper_team() {
  return Team::make({"p"}, {LassoTrace{{P}, {E}}, LassoTrace{{E, P}, {E}}});
}

Team subteam_of(const Team& t, TeamMask mask) {
  std::vector<LassoTrace> traces;
  for (std::size_t i = 0; i < t.traces.size(); ++i)
    if (mask & (TeamMask(1) << i)) traces.push_back(t.traces[i]);
  return Team::make(t.alphabet, traces);
}

}  // namespace

TEST_CASE("the motivating example: F p fails but F p | F p holds") {
  FormulaStore st;
  Team t = paper_team();
  CHECK_FALSE(check(st, t, parse_formula(st, "F p")));
  CHECK(check(st, t, parse_formula(st, "F p | F p")));
}

TEST_CASE("empty team satisfies every ~-free formula") {
  FormulaStore st;
  Team empty = Team::make({"p", "q"}, {});
  Rng rng(41);
  std::vector<PropId> props{st.prop_id("p"), st.prop_id("q")};
  FormulaGenOptions o;
  o.allow_bneg = false;
  for (int i = 0; i < 200; ++i) CHECK(check(st, empty, random_formula(st, rng, props, o)));
}

TEST_CASE("singleton teams agree with the classical oracle") {
  FormulaStore st;
  Rng rng(42);
  std::vector<PropId> props{st.prop_id("p"), st.prop_id("q")};
  std::vector<std::string> alphabet{"p", "q"};
  for (int i = 0; i < 1000; ++i) {
    FormulaId f = random_pure_ltl(st, rng, props, 3);
    LassoTrace t = random_lasso(rng, 2, 4, 4);
    Team single = Team::make(alphabet, {t});
    INFO(print_formula(st, f));
    CHECK(check(st, single, f) == check_classical(st, t, alphabet, f));
  }
}

TEST_CASE("classical oracle handles the documented cases") {
  FormulaStore st;
  std::vector<std::string> alphabet{"p"};
  CHECK(check_classical(st, LassoTrace{{P}, {E}}, alphabet, parse_formula(st, "F p")));
  CHECK(check_classical(st, LassoTrace{{}, {E}}, alphabet, parse_formula(st, "G !p")));
  CHECK(check_classical(st, LassoTrace{{}, {P, E}}, alphabet, parse_formula(st, "G F p")));
  CHECK_THROWS_AS(check_classical(st, LassoTrace{{}, {P}}, alphabet, parse_formula(st, "~p")),
                  NonClassicalFormula);
}

TEST_CASE("dep is not union closed but is downward closed") {
  FormulaStore st;
  FormulaId d = parse_formula(st, "dep(; p)");
  Team t = Team::make({"p"}, {LassoTrace{{}, {P}}, LassoTrace{{}, {E}}});
  CHECK_FALSE(check(st, t, d));
  CHECK(check(st, subteam_of(t, 1), d));
  CHECK(check(st, subteam_of(t, 2), d));
  CHECK(check(st, subteam_of(t, 0), d));
}

TEST_CASE("downward closure holds exhaustively for ~-free formulas") {
  FormulaStore st;
  Rng rng(43);
  std::vector<PropId> props{st.prop_id("p"), st.prop_id("q")};
  FormulaGenOptions o;
  o.allow_bneg = false;
  for (int i = 0; i < 120; ++i) {
    Team t = random_team(rng, {"p", "q"}, 5, 2, 2);
    FormulaId f = random_formula(st, rng, props, o);
    if (!check(st, t, f)) continue;
    for (TeamMask m = 0; m < full_mask(t.size()); ++m) {
      INFO(print_formula(st, f));
      CHECK(check(st, subteam_of(t, m), f));
    }
  }
}

TEST_CASE("two-partition shortcut matches the general three-way split") {
  FormulaStore st;
  Rng rng(44);
  std::vector<PropId> props{st.prop_id("p"), st.prop_id("q")};
  FormulaGenOptions o;
  o.allow_bneg = false;
  EvalOptions general;
  general.force_three_way_splits = true;
  for (int i = 0; i < 250; ++i) {
    Team t = random_team(rng, {"p", "q"}, 4, 2, 2);
    FormulaId f = random_formula(st, rng, props, o);
    CHECK(check(st, t, f) == check(st, t, f, general));
  }
}

TEST_CASE("split results are independent of enumeration order") {
  FormulaStore st;
  Rng rng(45);
  std::vector<PropId> props{st.prop_id("p"), st.prop_id("q")};
  for (int i = 0; i < 150; ++i) {
    Team t = random_team(rng, {"p", "q"}, 4, 2, 2);
    FormulaId f = random_formula(st, rng, props);
    bool base = check(st, t, f);
    for (std::uint64_t seed : {1ull, 99ull}) {
      EvalOptions o;
      o.split_shuffle_seed = seed;
      CHECK(check(st, t, f, o) == base);
    }
  }
}

TEST_CASE("temporal dualities hold on random teams") {
  FormulaStore st;
  Rng rng(46);
  std::vector<PropId> props{st.prop_id("p"), st.prop_id("q")};
  for (int i = 0; i < 200; ++i) {
    Team t = random_team(rng, {"p", "q"}, 3, 2, 2);
    FormulaId a = random_formula(st, rng, props, {.max_temporal_depth = 1, .max_size = 6});
    FormulaId b = random_formula(st, rng, props, {.max_temporal_depth = 1, .max_size = 6});
    CHECK(check(st, t, st.release(a, b)) ==
          check(st, t, st.bneg(st.until(st.bneg(a), st.bneg(b)))));
    CHECK(check(st, t, st.globally(a)) == check(st, t, st.bneg(st.future(st.bneg(a)))));
    CHECK(check(st, t, st.future(a)) == check(st, t, st.until(st.top(), a)));
  }
}

TEST_CASE("sugar evaluates exactly like its expansion") {
  FormulaStore st;
  Rng rng(47);
  std::vector<PropId> props{st.prop_id("p"), st.prop_id("q")};
  for (int i = 0; i < 400; ++i) {
    Team t = random_team(rng, {"p", "q"}, 4, 2, 2);
    FormulaId f = random_formula(st, rng, props);
    FormulaId d = desugar(st, f);
    INFO(print_formula(st, f));
    CHECK(check(st, t, f) == check(st, t, d));
  }
}

TEST_CASE("singleton quantifier semantics, exhaustively on small teams") {
  FormulaStore st;
  Rng rng(48);
  std::vector<PropId> props{st.prop_id("p"), st.prop_id("q")};
  for (int i = 0; i < 120; ++i) {
    Team t = random_team(rng, {"p", "q"}, 5, 2, 2);
    FormulaId f = random_formula(st, rng, props, {.max_temporal_depth = 1, .max_size = 6});
    bool ex = false, all = true;
    for (std::size_t j = 0; j < t.size(); ++j) {
      bool s = check(st, subteam_of(t, TeamMask(1) << j), f);
      ex = ex || s;
      all = all && s;
    }
    CHECK(check(st, t, st.sing_ex(f)) == ex);
    CHECK(check(st, t, st.sing_all(f)) == all);
    // subteam quantifiers against brute force
    bool subex = false;
    for (TeamMask m = 0; m <= full_mask(t.size()); ++m)
      if (check(st, subteam_of(t, m), f)) {
        subex = true;
        break;
      }
    CHECK(check(st, t, st.sub_ex(f)) == subex);
  }
}

TEST_CASE("conditional subteam quantifiers match their brute-force semantics") {
  FormulaStore st;
  Rng rng(49);
  std::vector<PropId> props{st.prop_id("p"), st.prop_id("q")};
  for (int i = 0; i < 80; ++i) {
    Team t = random_team(rng, {"p", "q"}, 5, 2, 2);
    FormulaId g = random_formula(st, rng, props, {.max_temporal_depth = 1, .max_size = 4});
    FormulaId f = random_formula(st, rng, props, {.max_temporal_depth = 1, .max_size = 6});
    // compute T_gamma as a mask
    TeamMask gm = 0;
    for (std::size_t j = 0; j < t.size(); ++j)
      if (check(st, subteam_of(t, TeamMask(1) << j), g)) gm |= TeamMask(1) << j;
    TeamMask rest = full_mask(t.size()) & ~gm;
    bool want_ex = false, want_sing = false;
    for (TeamMask s = 0;; s = (s - gm) & gm) {
      if (check(st, subteam_of(t, rest | s), f)) {
        want_ex = true;
        if (std::popcount(s) == 1) want_sing = true;
      }
      if (s == gm) break;
    }
    // the singleton variant quantifies only actual traces of T_gamma
    bool sing = false;
    for (std::size_t j = 0; j < t.size(); ++j)
      if ((gm >> j) & 1)
        if (check(st, subteam_of(t, rest | (TeamMask(1) << j)), f)) sing = true;
    CHECK(check(st, t, st.cond_sub_ex(g, f)) == want_ex);
    CHECK(check(st, t, st.cond_sing_ex(g, f)) == sing);
    (void)want_sing;
  }
}

TEST_CASE("hook conditions the team") {
  FormulaStore st;
  Team t = paper_team();
  // T_{F p} is the whole team, which fails p at time 0
  CHECK_FALSE(check(st, t, parse_formula(st, "F p ~> p")));
  // conditioning on p keeps only the first trace
  CHECK(check(st, t, parse_formula(st, "p ~> p")));
}

TEST_CASE("dep native evaluation agrees with its definition on random teams") {
  FormulaStore st;
  Rng rng(50);
  std::vector<PropId> props{st.prop_id("p"), st.prop_id("q")};
  for (int i = 0; i < 150; ++i) {
    Team t = random_team(rng, {"p", "q"}, 4, 2, 2);
    std::vector<FormulaId> args;
    std::size_t na = rng.below(3);
    for (std::size_t j = 0; j < na; ++j)
      args.push_back(random_formula(st, rng, props, {.max_temporal_depth = 1, .max_size = 4}));
    FormulaId target = random_formula(st, rng, props, {.max_temporal_depth = 1, .max_size = 4});
    FormulaId d = st.dep(args, target);
    CHECK(check(st, t, d) == check(st, t, desugar(st, d)));
  }
}

TEST_CASE("probes find the paper's counterexamples") {
  FormulaStore st;
  Rng rng(51);
  TeamSampler sampler = [](Rng& r) { return random_team(r, {"p"}, 4, 3, 2); };

  SECTION("~p is not downward closed") {
    auto r = probe_downward_closed(st, parse_formula(st, "~p"), sampler, 200, rng);
    CHECK(r.outcome == ProbeOutcome::CounterexampleFound);
  }
  SECTION("pure LTL is downward closed") {
    auto r = probe_downward_closed(st, parse_formula(st, "F p"), sampler, 60, rng);
    CHECK(r.outcome == ProbeOutcome::NoneFound);
  }
  SECTION("F p is not union closed") {
    auto r = probe_union_closed(st, parse_formula(st, "F p"), sampler, 200, rng);
    CHECK(r.outcome == ProbeOutcome::CounterexampleFound);
  }
  SECTION("dep(;p) is downward closed but not union closed") {
    FormulaId d = parse_formula(st, "dep(; p)");
    CHECK(probe_downward_closed(st, d, sampler, 100, rng).outcome == ProbeOutcome::NoneFound);
    CHECK(probe_union_closed(st, d, sampler, 200, rng).outcome ==
          ProbeOutcome::CounterexampleFound);
  }
  SECTION("propositional literals are flat") {
    CHECK(probe_flat(st, parse_formula(st, "p"), sampler, 100, rng).outcome ==
          ProbeOutcome::NoneFound);
  }
  SECTION("equivalences and the negative control") {
    FormulaId p = st.prop("p");
    CHECK(equiv_check(st, st.globally(p), st.bneg(st.future(st.bneg(p))), sampler, 100, rng)
              .outcome == ProbeOutcome::NoneFound);
    CHECK(equiv_check(st, st.future(p), st.until(st.top(), p), sampler, 100, rng).outcome ==
          ProbeOutcome::NoneFound);
    auto r = equiv_check(st, parse_formula(st, "F p | F p"), parse_formula(st, "F p"), sampler,
                         100, rng);
    CHECK(r.outcome == ProbeOutcome::CounterexampleFound);
  }
}

TEST_CASE("budget exhaustion fails loudly") {
  FormulaStore st;
  Rng rng(52);
  std::vector<LassoTrace> traces;
  for (int i = 0; i < 5; ++i) traces.push_back(random_lasso(rng, 2, 3, 3));
  Team t = Team::make({"p", "q"}, traces);
  EvalOptions o;
  o.budget = 20;
  FormulaId f = parse_formula(st, "G ((F p | G q) U (X q | dep(p; q)))");
  CHECK_THROWS_AS(check(st, t, f, o), BudgetExceeded);
}

TEST_CASE("unknown propositions are rejected") {
  FormulaStore st;
  Team t = Team::make({"p"}, {});
  CHECK_THROWS_AS(check(st, t, parse_formula(st, "zz")), UnknownProposition);
}
