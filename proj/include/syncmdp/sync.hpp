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

#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "syncmdp/mdp.hpp"

namespace syncmdp {

/// Default guard on the subset enumeration of decide_almost_sure.
inline constexpr int kDefaultSubsetStateCap = 20;

enum class TargetFunction { kSum, kMax };
enum class Objective { kAlways, kEventually };

/// What "synchronized" means: total mass (sum) or single-state mass (max)
/// inside the target set.
struct TargetSpec {
    TargetFunction function = TargetFunction::kSum;
    StateSet target;
};

/// Throws InputError on empty targets or universe mismatch.
void require_valid(const TargetSpec& spec, const Mdp& mdp);

/// Witness data for a positive limit-sure verdict. Either the plain sure
/// witness horizon applies (via_sure) or the product construction found a
/// winning seed: pair lasso with prefix k and period r, R = pre^k(t),
/// Z = pre^k(u), and a seeded position t' with (q0, t') almost-sure for
/// reaching R x {0} in the position product.
struct LimitWitness {
    bool via_sure = false;
    std::size_t prefix_len = 0;
    std::size_t period = 0;
    StateSet r_set;
    StateSet z_set;
    std::size_t position = 0;
};

struct Verdict {
    bool sure = false;
    bool almost_sure = false;
    bool limit_sure = false;
    std::optional<std::size_t> sure_witness;
    std::optional<StateSet> almost_witness;
    std::optional<LimitWitness> limit_witness;
    /// Name table for the universe the witness sets live in. Equal to the
    /// input's state names unless the initial distribution was lifted
    /// through a fresh state, in which case that state's name is appended.
    std::vector<std::string> witness_state_names;
    std::vector<std::string> notes;
};

/// Position product M_Z x [r] over Q x {r-1, ..., 1, 0} plus an absorbing
/// sink. An action is Z-safe in (q, i) when its successor support stays in
/// the Z-sequence one position down; everything else is redirected to sink.
struct ProductMdp {
    Mdp mdp;
    std::size_t period = 0;
    int base_state_count = 0;
    StateId sink = -1;
    /// provenance[s] = (original state, position); empty for the sink.
    std::vector<std::optional<std::pair<StateId, int>>> provenance;

    StateId product_state(StateId q, std::size_t position) const;
};

/// Greatest fixpoint W = t ∩ pre(W): initial supports inside W can keep all
/// mass in t forever; anything else cannot even keep it there surely.
StateSet safety_region(const Mdp& mdp, const StateSet& t);

/// Greatest set of states with an infinite path inside t that uses only
/// probability-1 transitions; the winning region core of always-max.
StateSet dirac_survivors(const Mdp& mdp, const StateSet& t);

/// Always-synchronizing in the sum sense. The three winning modes coincide,
/// so one bool answers all of them: Supp(mu0) inside the safety region.
bool decide_always_sum(const Mdp& mdp, const Distribution& mu0, const StateSet& t);

/// Always-synchronizing in the max sense: mu0 Dirac on a state of t from
/// which a cycle inside t is reachable through probability-1 transitions.
/// `notes`, if given, receives a diagnostic when mu0 is not Dirac.
bool decide_always_max(const Mdp& mdp, const Distribution& mu0, const StateSet& t,
                       std::vector<std::string>* notes = nullptr);

/// Sure eventually synchronizing: q0 ∈ pre^n(t) for some n; scans the lasso
/// (prefix plus one period) and reports the minimal witness horizon.
std::pair<bool, std::optional<std::size_t>> decide_sure_eventually(const Mdp& mdp, StateId q0,
                                                                   const StateSet& t);

/// Builds the position product from the periodic part of a pair lasso.
/// Requires pre(periodic[i]) == periodic[(i+1) mod r] componentwise.
ProductMdp build_product(const Mdp& mdp,
                         const std::vector<std::pair<StateSet, StateSet>>& periodic,
                         std::size_t r);

/// Standard almost-sure reachability winning region (iterative pruning).
StateSet almost_sure_reach(const Mdp& mdp, const StateSet& goal);

/// Same fixpoint plus the canonical pure memoryless witness strategy:
/// action[q] is the lowest action that stays inside the region and makes
/// progress toward goal (by backward-BFS level), for q in region \ goal.
struct ReachStrategy {
    StateSet region;
    std::vector<std::optional<ActionId>> action;
};
ReachStrategy almost_sure_reach_strategy(const Mdp& mdp, const StateSet& goal);

struct LimitResult {
    bool winning = false;
    std::optional<LimitWitness> witness;
};

/// Limit-sure eventually synchronizing in t with support inside u at the
/// witnessing steps. Decided as: sure-eventually in t, or some seed position
/// of the position product is almost-sure for reaching R x {0}.
LimitResult decide_limit_sure_with_support(const Mdp& mdp, StateId q0, const StateSet& t,
                                           const StateSet& u);

/// Special case u = Q (no support constraint).
LimitResult decide_limit_sure(const Mdp& mdp, StateId q0, const StateSet& t);

/// Almost-sure eventually synchronizing via witness-support enumeration:
/// some nonempty U with (1) sure-eventually in U from q0 and (2) the uniform
/// distribution on U limit-sure in t ∩ U with support back inside U. Subsets
/// are scanned in ascending bitmask order; the first witness is returned.
std::pair<bool, std::optional<StateSet>> decide_almost_sure(
    const Mdp& mdp, StateId q0, const StateSet& t, int state_cap = kDefaultSubsetStateCap);

/// Which of the three winning modes a classification should compute; skipped
/// modes keep their default (false, no witness) in the verdict.
struct ModeRequest {
    bool sure = true;
    bool almost = true;
    bool limit = true;

    bool all() const { return sure && almost && limit; }
};

/// Full classification of one objective: fills the requested winning modes
/// plus witnesses. max targets are dispatched through singleton sum targets;
/// non-Dirac initial distributions through a fresh initial state. When all
/// three modes are requested the monotonicity invariant is cross-checked.
Verdict classify(const Mdp& mdp, const Distribution& mu0, const TargetSpec& spec,
                 Objective objective, ModeRequest modes = {});

} // namespace syncmdp
