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
#include <numeric>
#include <vector>

#include "tltl/team.hpp"
#include "tltl/trace.hpp"

namespace tltl {

// Finite description of a stuttering function relative to a column structure
// (P prefix columns followed by a cycle of L columns): column j is expanded
// to mult(j) >= 1 copies.  The induced function is f(0) = 0,
// f(k+1) = f(k) + mult(k), with mult cycling through loop_mults after the
// prefix part.
struct StutterSpec {
  std::vector<std::uint32_t> prefix_mults;
  std::vector<std::uint32_t> loop_mults;  // nonempty

  std::uint64_t mult(std::size_t k) const {
    if (k < prefix_mults.size()) return prefix_mults[k];
    return loop_mults[(k - prefix_mults.size()) % loop_mults.size()];
  }
  std::uint64_t f(std::size_t k) const {
    std::uint64_t pos = 0;
    for (std::size_t i = 0; i < k; ++i) pos += mult(i);
    return pos;
  }
  bool valid() const {
    if (loop_mults.empty()) return false;
    for (auto m : prefix_mults)
      if (m == 0) return false;
    for (auto m : loop_mults)
      if (m == 0) return false;
    return true;
  }
};

// All stutter computation routes through the snapshot trace: f is a
// stuttering function of T iff it is one of sn(T).
inline bool is_stuttering_function(const StutterSpec& spec, const Team& team) {
  if (!spec.valid()) return false;
  Snapshot sn = snapshot(team);
  const std::size_t P = sn.trace.prefix.size();
  const std::size_t L = sn.trace.loop.size();
  // Past both prefix parts the state (k mod |loop_mults|, f(k) mod L)
  // determines the block condition and evolves through at most
  // |loop_mults| * L states, so this many blocks decide the whole function.
  const std::size_t blocks =
      std::max(spec.prefix_mults.size(), P) + spec.loop_mults.size() * L + 2;
  std::uint64_t fk = 0;
  for (std::size_t k = 0; k < blocks; ++k) {
    std::uint64_t fk1 = fk + spec.mult(k);
    for (std::uint64_t j = fk; j + 1 < fk1; ++j)
      if (!(at(sn.trace, j) == at(sn.trace, j + 1))) return false;
    fk = fk1;
  }
  return true;
}

namespace detail {

// Keep position k of the column sequence iff k = 0 or the column differs
// from its predecessor (run starts).  Constant-suffix positions are not
// stuttering, but dropping duplicates inside an infinite constant run leaves
// the same omega-word, so run-start filtering is exact either way.
inline void stutter_free_columns(const LassoTrace& sn, std::vector<Label>* prefix_cols,
                                 std::vector<Label>* loop_cols) {
  const auto& u = sn.prefix;
  const auto& v = sn.loop;
  prefix_cols->clear();
  loop_cols->clear();
  if (v.size() == 1) {
    // constant tail: dedupe the prefix runs, keep the unit loop
    for (std::size_t k = 0; k < u.size(); ++k)
      if (k == 0 || !(u[k - 1] == u[k])) prefix_cols->push_back(u[k]);
    loop_cols->push_back(v[0]);
    return;
  }
  // no suffix is constant; keep run starts across prefix and one unrolled
  // period, the second period repeats the same keep pattern
  std::vector<Label> total;
  total.insert(total.end(), u.begin(), u.end());
  total.insert(total.end(), v.begin(), v.end());
  total.insert(total.end(), v.begin(), v.end());
  for (std::size_t k = 0; k < u.size() + v.size(); ++k)
    if (k == 0 || !(total[k - 1] == total[k])) prefix_cols->push_back(total[k]);
  for (std::size_t k = u.size() + v.size(); k < u.size() + 2 * v.size(); ++k)
    if (!(total[k - 1] == total[k])) loop_cols->push_back(total[k]);
}

}  // namespace detail

// The unique stutter-free team stutter-equivalent to T, computed by deleting
// stuttering columns of the normalized snapshot and re-splitting.
inline Team canonical_stutter_free(const Team& team) {
  Snapshot sn = snapshot(team);
  std::vector<Label> pc, lc;
  detail::stutter_free_columns(sn.trace, &pc, &lc);
  Team out = team_from_snapshot_columns(team.alphabet, sn.team_size, pc, lc);
  if (out.size() != team.size()) throw TltlError("stutter canonicalization merged traces");
  return out;
}

inline bool stutter_equivalent(const Team& a, const Team& b) {
  if (a.size() != b.size()) return false;
  Team bb = a.alphabet == b.alphabet ? b : reindex_team(b, a.alphabet);
  return canonical_stutter_free(a).same_traces(canonical_stutter_free(bb));
}

struct MisalignedSpec : TltlError {
  using TltlError::TltlError;
};

// Duplicates snapshot columns according to the spec; the induced function f
// then satisfies expand(T, f)[f] = T.
inline Team expand(const Team& team, const StutterSpec& spec) {
  if (!spec.valid()) throw MisalignedSpec("multiplicities must be positive");
  Snapshot sn = snapshot(team);
  const std::size_t P = sn.trace.prefix.size();
  const std::size_t L = sn.trace.loop.size();
  if (spec.prefix_mults.size() != P || spec.loop_mults.size() != L)
    throw MisalignedSpec("spec does not match the team's canonical columns");
  std::vector<Label> pc, lc;
  for (std::size_t j = 0; j < P; ++j)
    for (std::uint32_t c = 0; c < spec.prefix_mults[j]; ++c) pc.push_back(sn.trace.prefix[j]);
  for (std::size_t j = 0; j < L; ++j)
    for (std::uint32_t c = 0; c < spec.loop_mults[j]; ++c) lc.push_back(sn.trace.loop[j]);
  Team out = team_from_snapshot_columns(team.alphabet, sn.team_size, pc, lc);
  if (out.size() != team.size()) throw TltlError("expansion merged traces");
  return out;
}

// Positions i with column(i) = column(i+1) whose suffix is not constant,
// scanned over one period past the snapshot prefix.
inline std::vector<std::size_t> stuttering_positions(const Team& team) {
  Snapshot sn = snapshot(team);
  const std::size_t P = sn.trace.prefix.size();
  const std::size_t L = sn.trace.loop.size();
  std::vector<std::size_t> out;
  for (std::size_t i = 0; i < P + L; ++i) {
    if (!(at(sn.trace, i) == at(sn.trace, i + 1))) continue;
    bool constant = true;
    for (std::size_t j = i; j < P + L + i + 1 && constant; ++j)
      constant = at(sn.trace, j) == at(sn.trace, j + 1);
    if (!constant) out.push_back(i);
  }
  return out;
}

}  // namespace tltl
