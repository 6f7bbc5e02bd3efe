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
#include "syncmdp/afa.hpp"

#include <algorithm>
#include <map>

#include "syncmdp/errors.hpp"

namespace syncmdp {

namespace {

/// First `n` primes, 2, 3, 5, ...
std::vector<int> first_primes(int n) {
    std::vector<int> primes;
    for (int candidate = 2; static_cast<int>(primes.size()) < n; ++candidate) {
        bool prime = true;
        for (int p : primes) {
            if (p * p > candidate) break;
            if (candidate % p == 0) {
                prime = false;
                break;
            }
        }
        if (prime) primes.push_back(candidate);
    }
    return primes;
}

/// Re-home a clause into a larger universe, preserving members.
StateSet widen(const StateSet& clause, int new_universe) {
    StateSet out(new_universe);
    for (int q : clause.members()) out.set(q);
    return out;
}

} // namespace

StateId Afa::state_index(const std::string& name) const {
    for (int i = 0; i < state_count(); ++i) {
        if (state_names[i] == name) return i;
    }
    throw InputError("unknown state '" + name + "'");
}

Afa canonicalize(const Afa& afa) {
    Afa out = afa;
    for (auto& clauses : out.transitions) {
        std::sort(clauses.begin(), clauses.end());
        clauses.erase(std::unique(clauses.begin(), clauses.end()), clauses.end());
    }
    return out;
}

std::vector<std::string> validate(const Afa& afa) {
    std::vector<std::string> issues;
    if (afa.state_names.empty()) issues.push_back("no states");
    if (afa.transitions.size() != afa.state_names.size()) {
        issues.push_back("transition count differs from state count");
        return issues;
    }
    if (afa.accepting.universe_size() != afa.state_count()) {
        issues.push_back("accepting-set universe does not match the state count");
    }
    for (int q = 0; q < afa.state_count(); ++q) {
        if (afa.transitions[q].empty()) {
            issues.push_back("state '" + afa.state_names[q] + "' has no clause");
        }
        for (const auto& clause : afa.transitions[q]) {
            if (clause.universe_size() != afa.state_count()) {
                issues.push_back("state '" + afa.state_names[q] + "': clause universe mismatch");
            } else if (clause.empty()) {
                issues.push_back("state '" + afa.state_names[q] + "': empty clause");
            }
        }
    }
    return issues;
}

void require_valid(const Afa& afa) {
    const auto issues = validate(afa);
    if (!issues.empty()) {
        std::string all = "invalid AFA:";
        for (const auto& issue : issues) all += "\n  " + issue;
        throw InputError(all);
    }
}

namespace {

StateSet acc_step(const Afa& afa, const StateSet& previous) {
    StateSet next(afa.state_count());
    for (int q = 0; q < afa.state_count(); ++q) {
        for (const auto& clause : afa.transitions[q]) {
            if (clause.is_subset_of(previous)) {
                next.set(q);
                break;
            }
        }
    }
    return next;
}

} // namespace

StateSet acc(const Afa& afa, std::size_t n) {
    StateSet current = afa.accepting;
    for (std::size_t i = 0; i < n; ++i) current = acc_step(afa, current);
    return current;
}

Lasso acc_lasso(const Afa& afa, std::size_t iteration_cap) {
    Lasso lasso;
    std::map<StateSet, std::size_t> first_seen;
    StateSet current = afa.accepting;
    for (std::size_t step = 0; step <= iteration_cap; ++step) {
        const auto [it, inserted] = first_seen.emplace(current, step);
        if (!inserted) {
            lasso.prefix_len = it->second;
            lasso.period = step - it->second;
            return lasso;
        }
        lasso.items.push_back(current);
        current = acc_step(afa, current);
    }
    throw ResourceLimitError("acc_lasso exceeded the iteration cap of " +
                             std::to_string(iteration_cap));
}

bool emptiness(const Afa& afa, StateId q) {
    const Lasso lasso = acc_lasso(afa);
    for (const auto& item : lasso.items) {
        if (item.test(q)) return false;
    }
    return true;
}

bool finiteness(const Afa& afa, StateId q) {
    const Lasso lasso = acc_lasso(afa);
    for (std::size_t i = lasso.prefix_len; i < lasso.items.size(); ++i) {
        if (lasso.items[i].test(q)) return false;
    }
    return true;
}

bool universal_finiteness(const Afa& afa) {
    const Lasso lasso = acc_lasso(afa);
    for (const auto& item : lasso.items) {
        if (item.empty()) return true;
    }
    return false;
}

Afa gadget_emptiness_to_finiteness(const Afa& afa, StateId q) {
    if (q < 0 || q >= afa.state_count()) {
        throw InputError("unknown state index " + std::to_string(q));
    }
    Afa out = afa;
    StateSet self(afa.state_count());
    self.set(q);
    auto& clauses = out.transitions[q];
    if (std::find(clauses.begin(), clauses.end(), self) == clauses.end()) {
        clauses.insert(clauses.begin(), self);
    }
    return canonicalize(out);
}

Afa gadget_emptiness_to_universal_finiteness(const Afa& afa, StateId q0) {
    if (q0 < 0 || q0 >= afa.state_count()) {
        throw InputError("unknown state index " + std::to_string(q0));
    }
    const int n = afa.state_count();
    const std::vector<int> primes = first_primes(n);

    Afa out;
    out.state_names = afa.state_names;
    const int hub = n;
    out.state_names.push_back("x");
    // cycle_start[i] = index of c_{i+1}_0.
    std::vector<int> cycle_start(n);
    for (int i = 0; i < n; ++i) {
        cycle_start[i] = static_cast<int>(out.state_names.size());
        for (int j = 0; j < primes[i]; ++j) {
            out.state_names.push_back("c_" + std::to_string(i + 1) + "_" + std::to_string(j));
        }
    }
    const int total = static_cast<int>(out.state_names.size());

    out.transitions.resize(total);
    for (int q = 0; q < n; ++q) {
        for (const auto& clause : afa.transitions[q]) {
            StateSet widened = widen(clause, total);
            widened.set(hub);
            out.transitions[q].push_back(widened);
        }
        if (q == q0) {
            // Self-loop disjunct keeps q0 accepting forever once it accepts.
            StateSet self(total);
            self.set(q0);
            out.transitions[q].insert(out.transitions[q].begin(), self);
        }
    }
    for (int i = 0; i < n; ++i) {
        // Each hub clause requires the hub itself: once the cycle heads all
        // miss the acceptance set simultaneously (first at step p#), the hub
        // drops out permanently instead of being revived by cycle states that
        // still reflect the previous step.
        StateSet head(total);
        head.set(hub);
        head.set(cycle_start[i]);
        out.transitions[hub].push_back(head);
        for (int j = 0; j < primes[i]; ++j) {
            StateSet clause(total);
            clause.set(hub);
            clause.set(cycle_start[i] + (j + 1) % primes[i]);
            out.transitions[cycle_start[i] + j].push_back(clause);
        }
    }

    out.accepting = StateSet(total);
    for (int q : afa.accepting.members()) out.accepting.set(q);
    out.accepting.set(hub);
    for (int i = 0; i < n; ++i) {
        for (int j = 0; j + 1 < primes[i]; ++j) out.accepting.set(cycle_start[i] + j);
    }
    return canonicalize(out);
}

Mdp afa_to_mdp(const Afa& afa) {
    require_valid(afa);
    std::size_t clause_max = 1;
    for (const auto& clauses : afa.transitions) clause_max = std::max(clause_max, clauses.size());

    Mdp mdp;
    mdp.state_names = afa.state_names;
    for (std::size_t k = 0; k < clause_max; ++k) {
        mdp.action_names.push_back("a" + std::to_string(k + 1));
    }
    mdp.rows.resize(afa.state_count());
    for (int q = 0; q < afa.state_count(); ++q) {
        for (std::size_t k = 0; k < clause_max; ++k) {
            // States with fewer clauses repeat their last clause, which
            // leaves the per-action successor supports unchanged as a set.
            const auto& clauses = afa.transitions[q];
            const StateSet& clause = clauses[std::min(k, clauses.size() - 1)];
            mdp.rows[q].push_back(Distribution::uniform(clause));
        }
    }
    return mdp;
}

Afa mdp_to_afa(const Mdp& mdp, const StateSet& t) {
    if (t.universe_size() != mdp.state_count()) {
        throw InputError("target set universe does not match the MDP");
    }
    Afa afa;
    afa.state_names = mdp.state_names;
    afa.transitions.resize(mdp.state_count());
    for (int q = 0; q < mdp.state_count(); ++q) {
        for (int a = 0; a < mdp.action_count(); ++a) {
            afa.transitions[q].push_back(post(mdp, q, a));
        }
    }
    afa.accepting = t;
    return canonicalize(afa);
}

} // namespace syncmdp
