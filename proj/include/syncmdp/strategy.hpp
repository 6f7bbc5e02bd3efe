/*
 * Copyright 2026 The syncmdp authors
 *
 * Licensed under the Apache License, Version 2.0 (the "License");
 * you may not use this file except in compliance with the License.
 * You may obtain a copy of the License at
 *
 *      http://www.apache.org/licenses/LICENSE-2.0
 *
 * Unless required by applicable law or agreed to in writing, software
 * distributed under the License is distributed on an "AS IS" BASIS,
 * WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
 * See the License for the specific language governing permissions and
 * limitations under the License.
 */
#pragma once

#include <cstddef>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "syncmdp/mdp.hpp"
#include "syncmdp/sync.hpp"

namespace syncmdp {

/// Default cap on forward-simulation length during synthesis.
inline constexpr std::size_t kDefaultSynthStepCap = 10000;

/// Finite-memory strategy as an explicit transducer: a finite set of modes,
/// a memory update on the action played and the state observed next, and a
/// move distribution over actions per (mode, state). Pure strategies have
/// Dirac rows. Entries may be left undefined (-1 in update, empty row in
/// next_move) for unreachable pairs; simulation rejects reaching them.
struct Transducer {
    std::vector<std::string> mode_names;
    int initial_mode = 0;
    /// update[mode][action][next_state] = successor mode, or -1 if undefined.
    std::vector<std::vector<std::vector<int>>> update;
    /// next_move[mode][state] = distribution over action indices; an empty
    /// distribution marks an undefined pair.
    std::vector<std::vector<Distribution>> next_move;

    int mode_count() const { return static_cast<int>(mode_names.size()); }
};

/// Structural diagnostics (table shapes, index ranges); empty means OK.
std::vector<std::string> validate(const Transducer& strat, const Mdp& mdp);

/// Sequence of exact state distributions, one per step; element 0 is the
/// initial distribution and every element sums to exactly 1.
using SymbolicOutcome = std::vector<Distribution>;

/// Exact forward propagation of the joint (mode, state) distribution of the
/// strategy product, projected to states, for steps 0..horizon. Throws
/// InputError when a reachable (mode, state) pair has no defined move or
/// memory update.
SymbolicOutcome symbolic_outcome(const Mdp& mdp, const Distribution& mu0,
                                 const Transducer& strat, std::size_t horizon);

/// Checks p-synchronization of an outcome. Eventually: first step whose
/// value reaches p, if any. Always: every computed step must qualify
/// (horizon-bounded check); no witness step is reported.
std::pair<bool, std::optional<std::size_t>> validate_sync(const SymbolicOutcome& outcome,
                                                          const TargetSpec& spec,
                                                          const Rational& p,
                                                          Objective objective);

/// Witness strategy for a sure-eventually verdict with minimal horizon n:
/// a pure counting transducer with n + 1 modes that pushes all mass down the
/// predecessor sequence of t, reaching mass exactly 1 on t at step n.
/// Returns the transducer and n. Throws NotWinningError when not winning.
std::pair<Transducer, std::size_t> synth_sure_eventually(const Mdp& mdp, StateId q0,
                                                         const StateSet& t);

/// Actions whose whole successor support stays one position down the
/// periodic predecessor sequence of Z: post(q, a) ⊆ z_sequence[(i-1) mod r].
/// Empty exactly when q is outside z_sequence[i].
std::vector<ActionId> z_safe_actions(const Mdp& mdp, const std::vector<StateSet>& z_sequence,
                                     StateId q, std::size_t i);

/// Witness strategy for a limit-sure verdict and a given epsilon > 0: a pure
/// counting transducer that cycles through the position product's winning
/// strategy (switching states inside the R-sequence to R-safe moves) until
/// the simulated mass in R at a position-0 step reaches 1 - epsilon, then
/// injects k steps down the predecessor sequences into t and u proper.
/// Returns the transducer and the first step n with mass >= 1 - epsilon on t
/// and mass exactly 1 on u. Throws NotWinningError when the instance is not
/// limit-sure winning and ResourceLimitError past step_cap simulation steps.
std::pair<Transducer, std::size_t> synth_limit_sure(const Mdp& mdp, StateId q0,
                                                    const StateSet& t, const StateSet& u,
                                                    const Rational& epsilon,
                                                    std::size_t step_cap = kDefaultSynthStepCap);

/// One finite stage of an almost-sure witness: running `transducer` for
/// `horizon` steps ends with mass >= 1 - epsilon in the target and support
/// back inside the witness set U, from where the next stage continues.
struct ScheduleSegment {
    Rational epsilon;
    Transducer transducer;
    std::size_t horizon = 0;
};

/// Finite materialization of an infinite-memory almost-sure strategy:
/// segments with strictly decreasing epsilon_i = 2^{-i}. The continuation
/// rule (keep halving epsilon) is documented rather than stored.
struct EpsilonSchedule {
    std::vector<ScheduleSegment> segments;
};

/// Runs the segments back to back; the outcome spans the summed horizons.
SymbolicOutcome simulate_schedule(const Mdp& mdp, const Distribution& mu0,
                                  const EpsilonSchedule& schedule);

/// Witness schedule for an almost-sure verdict: depth segments with
/// epsilon_i = 2^{-i}, each synthesized by synth_limit_sure toward t ∩ U
/// with support in the witness set U, restarted from the previous segment's
/// final distribution. The concatenation peaks at mass >= 1 - 2^{-depth}.
/// Throws NotWinningError when not almost-sure winning.
EpsilonSchedule synth_almost_sure_schedule(const Mdp& mdp, StateId q0, const StateSet& t,
                                           int depth,
                                           std::size_t step_cap = kDefaultSynthStepCap);

/// Witness strategy for always-synchronizing verdicts: a single-mode
/// (memoryless) transducer. For sum it keeps all mass inside the safety
/// region of t; for max it follows probability-1 edges within t forever.
/// Throws NotWinningError when the instance is not always winning.
Transducer synth_always(const Mdp& mdp, const Distribution& mu0, const TargetSpec& spec);

} // namespace syncmdp
