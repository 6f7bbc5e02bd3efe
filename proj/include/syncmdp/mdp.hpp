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
#include <string>
#include <utility>
#include <vector>

#include "syncmdp/rational.hpp"
#include "syncmdp/state_set.hpp"

namespace syncmdp {

using StateId = int;
using ActionId = int;

/// Default guard on predecessor-set iterations. Sequences of subsets are
/// ultimately periodic well before this in practice; the guard exists so a
/// bug surfaces as a distinct error instead of a hang.
inline constexpr std::size_t kDefaultIterationCap = 1000000;

/// Probability distribution with sparse, strictly positive entries that sum
/// to exactly 1. Entries are kept sorted by state index.
class Distribution {
public:
    Distribution() = default;
    explicit Distribution(std::vector<std::pair<StateId, Rational>> entries);

    static Distribution dirac(StateId state);
    static Distribution uniform(const StateSet& support);

    const std::vector<std::pair<StateId, Rational>>& entries() const { return entries_; }
    Rational at(StateId state) const;
    /// Total mass on the given set (the "sum" target function).
    Rational mass(const StateSet& set) const;
    /// Largest single-state mass within the set (the "max" target function).
    Rational max_in(const StateSet& set) const;
    StateSet support(int universe_size) const;
    bool is_dirac() const { return entries_.size() == 1; }
    bool empty() const { return entries_.empty(); }

private:
    std::vector<std::pair<StateId, Rational>> entries_;
};

/// Finite MDP with dense state/action indices and display names. Every
/// (state, action) pair has a transition distribution; actions are global.
struct Mdp {
    std::vector<std::string> state_names;
    std::vector<std::string> action_names;
    /// rows[state][action] = successor distribution.
    std::vector<std::vector<Distribution>> rows;

    int state_count() const { return static_cast<int>(state_names.size()); }
    int action_count() const { return static_cast<int>(action_names.size()); }

    StateId state_index(const std::string& name) const;
    ActionId action_index(const std::string& name) const;
    StateSet set_of_names(const std::vector<std::string>& names) const;
};

/// Structural diagnostics; empty result means the model is well-formed.
std::vector<std::string> validate(const Mdp& mdp);

/// Throws InputError when validate() reports anything.
void require_valid(const Mdp& mdp);

/// Support of the one-step successor distribution.
StateSet post(const Mdp& mdp, StateId state, ActionId action);

/// One-step controllable predecessors: states with some action whose entire
/// successor support lies inside `target`.
StateSet pre(const Mdp& mdp, const StateSet& target);

/// k-fold iteration of pre().
StateSet pre_k(const Mdp& mdp, const StateSet& target, std::size_t k);

/// Ultimately periodic set sequence: items[0..prefix_len+period-1] with
/// items[prefix_len + period] == items[prefix_len]; both parameters minimal.
struct Lasso {
    std::size_t prefix_len = 0;
    std::size_t period = 0;
    std::vector<StateSet> items;
};

struct PairLasso {
    std::size_t prefix_len = 0;
    std::size_t period = 0;
    std::vector<std::pair<StateSet, StateSet>> items;
};

/// Lasso of the sequence pre^n(target), n = 0, 1, ...
Lasso pre_lasso(const Mdp& mdp, const StateSet& target,
                std::size_t iteration_cap = kDefaultIterationCap);

/// Lasso of the componentwise sequence (pre^n(t), pre^n(u)). Requires t to be
/// a subset of u; containment then holds in every item (pre is monotone).
PairLasso pair_lasso(const Mdp& mdp, const StateSet& t, const StateSet& u,
                     std::size_t iteration_cap = kDefaultIterationCap);

/// Append a fresh state whose every action plays mu0; reduces questions about
/// a distribution to questions about a Dirac initial state, one step later.
/// Returns the extended MDP and the fresh state's index.
std::pair<Mdp, StateId> add_initial_state(const Mdp& mdp, const Distribution& mu0);

/// Duplicate every state except `keep`, splitting all probability into the
/// two copies evenly. The result has 2|Q| - 1 states and the same behaviour
/// up to the duplication; it separates sum- from max-synchronization targets.
Mdp twin_duplicate(const Mdp& mdp, StateId keep);

} // namespace syncmdp
