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

#include "tltl/random.hpp"
#include "tltl/trace.hpp"

using namespace tltl;

namespace {

Label lab(std::initializer_list<int> bits) {
  Label l;
  for (int b : bits) l.set(static_cast<std::size_t>(b));
  return l;
}

const Label A = lab({});
const Label B = lab({0});
const Label C = lab({1});

}  // namespace

TEST_CASE("at indexes prefix then wraps the loop") {
  LassoTrace t{{B}, {A}};
  CHECK(at(t, 0) == B);
  CHECK(at(t, 7) == A);
  LassoTrace u{{}, {B, C}};
  CHECK(at(u, 3) == C);
}

TEST_CASE("normalize finds the primitive loop and rolls the prefix") {
  CHECK(normalize({{B}, {C, C}}) == LassoTrace{{B}, {C}});
  CHECK(normalize({{B, C}, {C}}) == LassoTrace{{B}, {C}});
  CHECK(normalize({{}, {B, C, B, C}}) == LassoTrace{{}, {B, C}});
}

TEST_CASE("normalize is idempotent and respects pointwise equality") {
  Rng rng(11);
  for (int i = 0; i < 300; ++i) {
    LassoTrace t = random_lasso(rng, 3, 4, 5);
    LassoTrace n = normalize(t);
    CHECK(normalize(n) == n);
    for (std::size_t k = 0; k < 30; ++k) CHECK(at(t, k) == at(n, k));
  }
}

TEST_CASE("two lassos denote the same word iff normal forms coincide") {
  Rng rng(12);
  for (int i = 0; i < 400; ++i) {
    LassoTrace a = random_lasso(rng, 2, 3, 3);
    LassoTrace b = random_lasso(rng, 2, 3, 3);
    bool same_word = true;
    for (std::size_t k = 0; k < 40 && same_word; ++k) same_word = at(a, k) == at(b, k);
    CHECK(same_word == (normalize(a) == normalize(b)));
  }
}

TEST_CASE("suffix points at the right positions and composes") {
  LassoTrace t{{A, B}, {A}};  // ∅{p}∅^ω
  CHECK(suffix(t, 1) == LassoTrace{{B}, {A}});
  CHECK(suffix(t, 0) == normalize(t));
  LassoTrace u{{}, {B, C}};
  CHECK(suffix(u, 5) == LassoTrace{{}, {C, B}});

  Rng rng(13);
  for (int i = 0; i < 200; ++i) {
    LassoTrace r = random_lasso(rng, 3, 4, 4);
    std::size_t a = rng.below(6), b = rng.below(6);
    LassoTrace lhs = suffix(suffix(r, a), b);
    for (std::size_t k = 0; k < 50; ++k) CHECK(at(lhs, k) == at(r, a + b + k));
  }
}

TEST_CASE("projection intersects labels and commutes with suffix") {
  LassoTrace t{{}, {lab({0, 1})}};
  CHECK(project(t, B) == LassoTrace{{}, {B}});
  CHECK(project(t, Label{}) == LassoTrace{{}, {A}});
  LassoTrace u{{B, C}, {lab({0, 1})}};
  CHECK(project(u, C) == LassoTrace{{A}, {C}});

  Rng rng(14);
  for (int i = 0; i < 200; ++i) {
    LassoTrace r = random_lasso(rng, 3, 4, 4);
    Label keep = random_label(rng, 3);
    std::size_t k = rng.below(7);
    CHECK(project(suffix(r, k), keep) == suffix(project(r, keep), k));
  }
}

TEST_CASE("constant and ultimately constant classification") {
  LassoTrace t{{B}, {A}};
  CHECK(is_ultimately_constant(t));
  CHECK_FALSE(is_constant(t));
  LassoTrace u{{B}, {B}};
  CHECK(is_ultimately_constant(u));
  CHECK(is_constant(u));
  LassoTrace v{{}, {B, A}};
  CHECK_FALSE(is_ultimately_constant(v));
  CHECK_FALSE(is_constant(v));
}
