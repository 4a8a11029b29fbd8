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

#include <functional>
#include <optional>
#include <vector>

#include "tltl/eval.hpp"
#include "tltl/random.hpp"

namespace tltl {

using TeamSampler = std::function<Team(Rng&)>;

enum class ProbeOutcome { CounterexampleFound, NoneFound, BudgetExhausted };

struct ProbeResult {
  ProbeOutcome outcome;
  std::optional<Team> witness;        // team violating the property
  std::optional<Team> second;         // subteam / union partner, when relevant
  std::uint64_t samples_used = 0;
};

namespace detail {

inline Team subteam_of(const Team& t, TeamMask mask) {
  std::vector<LassoTrace> traces;
  for (std::size_t i = 0; i < t.traces.size(); ++i)
    if (mask & (TeamMask(1) << i)) traces.push_back(t.traces[i]);
  return Team::make(t.alphabet, traces);
}

}  // namespace detail

// Searches sampled teams for T |= phi with some subteam T' not satisfying it.
inline ProbeResult probe_downward_closed(const FormulaStore& st, FormulaId phi,
                                         const TeamSampler& sampler, std::uint64_t budget,
                                         Rng& rng, EvalOptions opt = {}) {
  for (std::uint64_t s = 0; s < budget; ++s) {
    Team t = sampler(rng);
    if (!check(st, t, phi, opt)) continue;
    TeamMask full = full_mask(t.size());
    for (TeamMask m = 0; m < full; ++m) {  // proper subteams
      Team sub = detail::subteam_of(t, m);
      if (!check(st, sub, phi, opt))
        return {ProbeOutcome::CounterexampleFound, t, sub, s + 1};
    }
  }
  return {ProbeOutcome::NoneFound, std::nullopt, std::nullopt, budget};
}

// Searches for two-member families {A, B} with A |= phi and B |= phi but
// A ∪ B not satisfying phi.
inline ProbeResult probe_union_closed(const FormulaStore& st, FormulaId phi,
                                      const TeamSampler& sampler, std::uint64_t budget, Rng& rng,
                                      EvalOptions opt = {}) {
  for (std::uint64_t s = 0; s < budget; ++s) {
    Team t = sampler(rng);
    if (check(st, t, phi, opt)) continue;
    TeamMask full = full_mask(t.size());
    for (TeamMask a = 0; a <= full; ++a) {
      if (!check(st, detail::subteam_of(t, a), phi, opt)) continue;
      TeamMask b = full & ~a;
      // complete b to any cover partner within t
      for (TeamMask extra = 0;; extra = (extra - a) & a) {
        TeamMask bm = b | extra;
        if (check(st, detail::subteam_of(t, bm), phi, opt))
          return {ProbeOutcome::CounterexampleFound, detail::subteam_of(t, a),
                  detail::subteam_of(t, bm), s + 1};
        if (extra == a) break;
      }
    }
  }
  return {ProbeOutcome::NoneFound, std::nullopt, std::nullopt, budget};
}

// Flatness: T |= phi iff every singleton of T satisfies phi.
inline ProbeResult probe_flat(const FormulaStore& st, FormulaId phi, const TeamSampler& sampler,
                              std::uint64_t budget, Rng& rng, EvalOptions opt = {}) {
  for (std::uint64_t s = 0; s < budget; ++s) {
    Team t = sampler(rng);
    bool whole = check(st, t, phi, opt);
    bool all_singletons = true;
    for (std::size_t i = 0; i < t.size(); ++i)
      if (!check(st, detail::subteam_of(t, TeamMask(1) << i), phi, opt)) {
        all_singletons = false;
        break;
      }
    if (whole != all_singletons)
      return {ProbeOutcome::CounterexampleFound, t, std::nullopt, s + 1};
  }
  return {ProbeOutcome::NoneFound, std::nullopt, std::nullopt, budget};
}

inline ProbeResult equiv_check(const FormulaStore& st, FormulaId phi, FormulaId psi,
                               const TeamSampler& sampler, std::uint64_t budget, Rng& rng,
                               EvalOptions opt = {}) {
  for (std::uint64_t s = 0; s < budget; ++s) {
    Team t = sampler(rng);
    if (check(st, t, phi, opt) != check(st, t, psi, opt))
      return {ProbeOutcome::CounterexampleFound, t, std::nullopt, s + 1};
  }
  return {ProbeOutcome::NoneFound, std::nullopt, std::nullopt, budget};
}

}  // namespace tltl
