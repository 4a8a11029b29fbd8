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
#include "tltl/random.hpp"
#include "tltl/stutter.hpp"

using namespace tltl;

namespace {

Label lab(std::initializer_list<int> bits) {
  Label l;
  for (int b : bits) l.set(static_cast<std::size_t>(b));
  return l;
}

const Label E = lab({});
const Label P = lab({0});
const Label Q = lab({1});
const Label Z = lab({2});

// Figure-style pair of stutter-equivalent two-trace teams.
Team fig4_T() {
  return Team::make({"p"}, {LassoTrace{{P, E, E, P}, {E}}, LassoTrace{{E, E, E, E}, {P}}});
}
Team fig4_Tprime() {
  return Team::make({"p"}, {LassoTrace{{P, P, E, E, P, P}, {E}},
                            LassoTrace{{E, E, E, E, E, E}, {P}}});
}

StutterSpec random_spec(Rng& rng, const Team& t, std::uint32_t max_mult = 3) {
  Snapshot sn = snapshot(t);
  StutterSpec s;
  for (std::size_t i = 0; i < sn.trace.prefix.size(); ++i)
    s.prefix_mults.push_back(1 + static_cast<std::uint32_t>(rng.below(max_mult)));
  for (std::size_t i = 0; i < sn.trace.loop.size(); ++i)
    s.loop_mults.push_back(1 + static_cast<std::uint32_t>(rng.below(max_mult)));
  return s;
}

Team subteam_of(const Team& t, TeamMask mask) {
  std::vector<LassoTrace> traces;
  for (std::size_t i = 0; i < t.traces.size(); ++i)
    if (mask & (TeamMask(1) << i)) traces.push_back(t.traces[i]);
  return Team::make(t.alphabet, traces);
}

}  // namespace

TEST_CASE("identity spec is a stuttering function of any team") {
  Rng rng(61);
  for (int i = 0; i < 50; ++i) {
    Team t = random_team(rng, {"p", "q"}, 3, 3, 3);
    StutterSpec id{{}, {1}};
    CHECK(is_stuttering_function(id, t));
  }
}

TEST_CASE("staggered spikes admit only the identity, in finite restriction") {
  // { ∅^n {p} ∅^ω : n ∈ {0,1,2} }
  Team t = Team::make({"p"}, {LassoTrace{{P}, {E}}, LassoTrace{{E, P}, {E}},
                              LassoTrace{{E, E, P}, {E}}});
  CHECK(is_stuttering_function(StutterSpec{{}, {1}}, t));
  // duplicating column 0, 1 or 2 makes the function skip a position <= 3
  for (std::size_t col = 0; col < 3; ++col) {
    StutterSpec s{{1, 1, 1, 1}, {1}};
    s.prefix_mults[col] = 2;
    CHECK_FALSE(is_stuttering_function(s, t));
  }
  // skipping a position in the constant tail is harmless
  CHECK(is_stuttering_function(StutterSpec{{1, 1, 1, 2}, {1}}, t));
}

TEST_CASE("figure pair: equivalence, common canonical team, witness function") {
  Team T = fig4_T(), Tp = fig4_Tprime();
  CHECK(stutter_equivalent(T, Tp));
  Team c1 = canonical_stutter_free(T);
  Team c2 = canonical_stutter_free(Tp);
  CHECK(c1.same_traces(c2));
  Snapshot sn = snapshot(c1);
  CHECK(sn.trace.prefix.size() + sn.trace.loop.size() == 4);  // 4-column canonical team
  Team want = Team::make({"p"}, {LassoTrace{{P, E, P}, {E}}, LassoTrace{{E, E, E}, {P}}});
  CHECK(c1.same_traces(want));
  // the figure's g doubles every canonical column of T'
  StutterSpec g{{2, 2, 2}, {2}};
  CHECK(is_stuttering_function(g, Tp));
}

TEST_CASE("single-trace examples from the stuttering definition") {
  Team a = Team::make({"p", "q", "z"}, {LassoTrace{{P, P, Q}, {Z}}});
  Team b = Team::make({"p", "q", "z"}, {LassoTrace{{P, Q, Q}, {Z}}});
  Team c = Team::make({"p", "q", "z"}, {LassoTrace{{P}, {Z}}});
  CHECK(stutter_equivalent(a, b));
  CHECK_FALSE(stutter_equivalent(a, c));
  CHECK(canonical_stutter_free(a).traces[0] == LassoTrace{{P, Q}, {Z}});

  Team pp = Team::make({"p"}, {LassoTrace{{P, P}, {P}}});
  CHECK(canonical_stutter_free(pp).traces[0] == LassoTrace{{}, {P}});
  CHECK(stuttering_positions(pp).empty());  // constant suffixes never stutter
}

TEST_CASE("canonical team is stutter-free and idempotent") {
  Rng rng(62);
  for (int i = 0; i < 300; ++i) {
    Team t = random_team(rng, {"p", "q"}, 4, 3, 3);
    Team c = canonical_stutter_free(t);
    CHECK(stuttering_positions(c).empty());
    CHECK(canonical_stutter_free(c).same_traces(c));
    CHECK(c.size() == t.size());
  }
}

TEST_CASE("expansion preserves cardinality and equivalence class") {
  Rng rng(63);
  for (int i = 0; i < 300; ++i) {
    Team t = random_team(rng, {"p", "q"}, 4, 3, 3);
    Team e = expand(t, random_spec(rng, t));
    CHECK(e.size() == t.size());
    CHECK(stutter_equivalent(e, t));
  }
}

TEST_CASE("identity-multiplicity expansion returns the team itself") {
  Rng rng(64);
  Team t = random_team(rng, {"p", "q"}, 3, 2, 2, /*allow_empty=*/false);
  Snapshot sn = snapshot(t);
  StutterSpec id;
  id.prefix_mults.assign(sn.trace.prefix.size(), 1);
  id.loop_mults.assign(sn.trace.loop.size(), 1);
  CHECK(expand(t, id).same_traces(t));
  StutterSpec bad = id;
  bad.loop_mults.push_back(1);
  CHECK_THROWS_AS(expand(t, bad), MisalignedSpec);
}

TEST_CASE("duplicate first column example") {
  Team t = Team::make({"p", "q"}, {LassoTrace{{P}, {Q}}});
  Snapshot sn = snapshot(t);
  StutterSpec s;
  s.prefix_mults.assign(sn.trace.prefix.size(), 1);
  s.loop_mults.assign(sn.trace.loop.size(), 1);
  s.prefix_mults[0] = 2;
  Team e = expand(t, s);
  CHECK(e.traces[0] == LassoTrace{{P, P}, {Q}});
}

TEST_CASE("uniqueness: any two expansions canonicalize identically") {
  Rng rng(65);
  for (int i = 0; i < 500; ++i) {
    Team t = random_team(rng, {"p", "q"}, 3, 2, 2);
    Team e1 = expand(t, random_spec(rng, t));
    Team e2 = expand(t, random_spec(rng, t));
    CHECK(canonical_stutter_free(e1).same_traces(canonical_stutter_free(e2)));
  }
}

TEST_CASE("splitting lemma, testable direction, exhaustively for small teams") {
  Rng rng(66);
  for (int i = 0; i < 25; ++i) {
    Team t = random_team(rng, {"p", "q"}, 4, 2, 2);
    Team s = expand(t, random_spec(rng, t));
    REQUIRE(stutter_equivalent(t, s));
    TeamMask full_t = full_mask(t.size());
    TeamMask full_s = full_mask(s.size());
    for (TeamMask a = 0; a <= full_t; ++a) {
      Team t1 = subteam_of(t, a);
      Team t2 = subteam_of(t, full_t & ~a);
      bool found = false;
      for (TeamMask sa = 0; sa <= full_s && !found; ++sa) {
        if (!stutter_equivalent(t1, subteam_of(s, sa))) continue;
        for (TeamMask extra = 0;; extra = (extra - sa) & sa) {
          TeamMask sb = (full_s & ~sa) | extra;
          if (stutter_equivalent(t2, subteam_of(s, sb))) {
            found = true;
            break;
          }
          if (extra == sa) break;
        }
      }
      CHECK(found);
    }
  }
}

TEST_CASE("X-free formulas are stutter-invariant on sampled teams") {
  FormulaStore st;
  Rng rng(67);
  std::vector<PropId> props{st.prop_id("p"), st.prop_id("q")};
  FormulaGenOptions o;
  o.allow_next = false;
  o.max_temporal_depth = 2;
  o.max_size = 10;
  for (int i = 0; i < 500; ++i) {
    Team t = random_team(rng, {"p", "q"}, 3, 2, 2);
    Team e = expand(t, random_spec(rng, t));
    FormulaId f = random_formula(st, rng, props, o);
    INFO(print_formula(st, f));
    CHECK(check(st, t, f) == check(st, e, f));
  }
}

TEST_CASE("X can distinguish stutter-equivalent teams") {
  FormulaStore st;
  Rng rng(68);
  std::vector<PropId> props{st.prop_id("p"), st.prop_id("q")};
  FormulaGenOptions o;
  o.max_temporal_depth = 2;
  o.max_size = 8;
  bool distinguished = false;
  for (int i = 0; i < 3000 && !distinguished; ++i) {
    Team t = random_team(rng, {"p", "q"}, 3, 2, 2);
    Team e = expand(t, random_spec(rng, t));
    FormulaId f = random_formula(st, rng, props, o);
    if (!contains_kind(st, f, Kind::Next)) continue;
    distinguished = check(st, t, f) != check(st, e, f);
  }
  CHECK(distinguished);
}
