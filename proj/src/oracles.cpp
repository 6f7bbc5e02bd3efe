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
#include "syncmdp/oracles.hpp"

#include <deque>
#include <map>
#include <set>
#include <string>
#include <vector>

#include "syncmdp/errors.hpp"

namespace syncmdp {

bool oracle_sure_eventually(const Mdp& mdp, StateId q0, const StateSet& t, int state_cap) {
    require_valid(mdp);
    if (q0 < 0 || q0 >= mdp.state_count()) throw InputError("initial state out of range");
    if (mdp.state_count() > state_cap) {
        throw ResourceLimitError("support-set search over " +
                                 std::to_string(mdp.state_count()) +
                                 " states, above the cap of " + std::to_string(state_cap));
    }

    StateSet start(mdp.state_count());
    start.set(q0);
    std::set<StateSet> visited{start};
    std::deque<StateSet> frontier{start};
    while (!frontier.empty()) {
        StateSet support = frontier.front();
        frontier.pop_front();
        if (support.is_subset_of(t)) return true;
        for (ActionId a = 0; a < mdp.action_count(); ++a) {
            StateSet next(mdp.state_count());
            for (int q : support.members()) next = next | post(mdp, q, a);
            if (visited.insert(next).second) frontier.push_back(next);
        }
    }
    return false;
}

Rational oracle_bounded_counting_sup(const Mdp& mdp, StateId q0, const StateSet& t,
                                     std::size_t horizon, std::uint64_t budget) {
    require_valid(mdp);
    if (q0 < 0 || q0 >= mdp.state_count()) throw InputError("initial state out of range");

    const std::uint64_t actions = static_cast<std::uint64_t>(mdp.action_count());
    const std::size_t slots = horizon * static_cast<std::size_t>(mdp.state_count());
    std::uint64_t table_count = 1;
    for (std::size_t i = 0; i < slots; ++i) {
        if (table_count > budget / actions) {
            throw ResourceLimitError("counting-strategy enumeration needs more than " +
                                     std::to_string(budget) + " tables");
        }
        table_count *= actions;
    }

    Rational best = Distribution::dirac(q0).mass(t);
    std::vector<ActionId> table(slots, 0);
    for (std::uint64_t index = 0; index < table_count; ++index) {
        std::uint64_t code = index;
        for (std::size_t i = 0; i < slots; ++i) {
            table[i] = static_cast<ActionId>(code % actions);
            code /= actions;
        }
        std::map<StateId, Rational> current{{q0, Rational(1)}};
        for (std::size_t step = 0; step < horizon; ++step) {
            std::map<StateId, Rational> next;
            for (const auto& [q, p] : current) {
                const ActionId a = table[step * mdp.state_count() + q];
                for (const auto& [succ, pq] : mdp.rows[q][a].entries()) {
                    next[succ] += p * pq;
                }
            }
            current.swap(next);
            Rational mass = 0;
            for (const auto& [q, p] : current) {
                if (t.test(q)) mass += p;
            }
            if (mass > best) best = mass;
        }
    }
    return best;
}

} // namespace syncmdp
