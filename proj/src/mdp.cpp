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
#include "syncmdp/mdp.hpp"

#include <algorithm>
#include <map>

#include "syncmdp/errors.hpp"

namespace syncmdp {

Distribution::Distribution(std::vector<std::pair<StateId, Rational>> entries)
    : entries_(std::move(entries)) {
    std::sort(entries_.begin(), entries_.end(),
              [](const auto& a, const auto& b) { return a.first < b.first; });
    Rational total = 0;
    StateId previous = -1;
    for (const auto& [state, p] : entries_) {
        if (state == previous) throw InputError("duplicate state in distribution");
        previous = state;
        if (p <= 0) throw InputError("non-positive probability entry " + fraction_string(p));
        total += p;
    }
    if (total != 1) {
        throw InputError("distribution mass is " + fraction_string(total) + ", expected 1/1");
    }
}

Distribution Distribution::dirac(StateId state) {
    return Distribution({{state, Rational(1)}});
}

Distribution Distribution::uniform(const StateSet& support) {
    const auto members = support.members();
    if (members.empty()) throw InputError("uniform distribution over empty set");
    std::vector<std::pair<StateId, Rational>> entries;
    const Rational share(1, static_cast<unsigned long>(members.size()));
    for (int q : members) entries.emplace_back(q, share);
    return Distribution(std::move(entries));
}

Rational Distribution::at(StateId state) const {
    for (const auto& [q, p] : entries_) {
        if (q == state) return p;
        if (q > state) break;
    }
    return Rational(0);
}

Rational Distribution::mass(const StateSet& set) const {
    Rational total = 0;
    for (const auto& [q, p] : entries_) {
        if (set.test(q)) total += p;
    }
    return total;
}

Rational Distribution::max_in(const StateSet& set) const {
    Rational best = 0;
    for (const auto& [q, p] : entries_) {
        if (set.test(q) && p > best) best = p;
    }
    return best;
}

StateSet Distribution::support(int universe_size) const {
    StateSet s(universe_size);
    for (const auto& [q, p] : entries_) s.set(q);
    return s;
}

StateId Mdp::state_index(const std::string& name) const {
    for (int i = 0; i < state_count(); ++i) {
        if (state_names[i] == name) return i;
    }
    throw InputError("unknown state '" + name + "'");
}

ActionId Mdp::action_index(const std::string& name) const {
    for (int i = 0; i < action_count(); ++i) {
        if (action_names[i] == name) return i;
    }
    throw InputError("unknown action '" + name + "'");
}

StateSet Mdp::set_of_names(const std::vector<std::string>& names) const {
    StateSet s(state_count());
    for (const auto& name : names) s.set(state_index(name));
    return s;
}

std::vector<std::string> validate(const Mdp& mdp) {
    std::vector<std::string> issues;
    if (mdp.state_names.empty()) issues.push_back("no states");
    if (mdp.action_names.empty()) issues.push_back("no actions");
    for (const auto& names : {mdp.state_names, mdp.action_names}) {
        for (std::size_t i = 0; i < names.size(); ++i) {
            for (std::size_t j = i + 1; j < names.size(); ++j) {
                if (names[i] == names[j]) issues.push_back("duplicate name '" + names[i] + "'");
            }
        }
    }
    if (mdp.rows.size() != mdp.state_names.size()) {
        issues.push_back("row count differs from state count");
        return issues;
    }
    for (int q = 0; q < mdp.state_count(); ++q) {
        if (mdp.rows[q].size() != mdp.action_names.size()) {
            issues.push_back("state '" + mdp.state_names[q] + "' misses action rows");
            continue;
        }
        for (int a = 0; a < mdp.action_count(); ++a) {
            const Distribution& row = mdp.rows[q][a];
            if (row.empty()) {
                issues.push_back("state '" + mdp.state_names[q] + "', action '" +
                                 mdp.action_names[a] + "': empty distribution");
                continue;
            }
            Rational total = 0;
            for (const auto& [target, p] : row.entries()) {
                if (target < 0 || target >= mdp.state_count()) {
                    issues.push_back("state '" + mdp.state_names[q] + "', action '" +
                                     mdp.action_names[a] + "': successor index out of range");
                }
                total += p;
            }
            if (total != 1) {
                issues.push_back("state '" + mdp.state_names[q] + "', action '" +
                                 mdp.action_names[a] + "': mass " + fraction_string(total));
            }
        }
    }
    return issues;
}

void require_valid(const Mdp& mdp) {
    const auto issues = validate(mdp);
    if (!issues.empty()) {
        std::string all = "invalid MDP:";
        for (const auto& issue : issues) all += "\n  " + issue;
        throw InputError(all);
    }
}

StateSet post(const Mdp& mdp, StateId state, ActionId action) {
    if (state < 0 || state >= mdp.state_count()) {
        throw InputError("unknown state index " + std::to_string(state));
    }
    if (action < 0 || action >= mdp.action_count()) {
        throw InputError("unknown action index " + std::to_string(action));
    }
    return mdp.rows[state][action].support(mdp.state_count());
}

StateSet pre(const Mdp& mdp, const StateSet& target) {
    if (target.universe_size() != mdp.state_count()) {
        throw InputError("target set universe does not match the MDP");
    }
    StateSet result(mdp.state_count());
    for (int q = 0; q < mdp.state_count(); ++q) {
        for (int a = 0; a < mdp.action_count(); ++a) {
            if (post(mdp, q, a).is_subset_of(target)) {
                result.set(q);
                break;
            }
        }
    }
    return result;
}

StateSet pre_k(const Mdp& mdp, const StateSet& target, std::size_t k) {
    StateSet current = target;
    for (std::size_t i = 0; i < k; ++i) current = pre(mdp, current);
    return current;
}

Lasso pre_lasso(const Mdp& mdp, const StateSet& target, std::size_t iteration_cap) {
    Lasso lasso;
    std::map<StateSet, std::size_t> first_seen;
    StateSet current = target;
    for (std::size_t step = 0; step <= iteration_cap; ++step) {
        const auto [it, inserted] = first_seen.emplace(current, step);
        if (!inserted) {
            // First repetition of a deterministic iteration: the matched
            // index is the minimal prefix, the gap the minimal period.
            lasso.prefix_len = it->second;
            lasso.period = step - it->second;
            return lasso;
        }
        lasso.items.push_back(current);
        current = pre(mdp, current);
    }
    throw ResourceLimitError("pre_lasso exceeded the iteration cap of " +
                             std::to_string(iteration_cap));
}

PairLasso pair_lasso(const Mdp& mdp, const StateSet& t, const StateSet& u,
                     std::size_t iteration_cap) {
    if (!t.is_subset_of(u)) {
        throw InputError("pair_lasso requires the target to be a subset of the support set");
    }
    PairLasso lasso;
    std::map<std::pair<StateSet, StateSet>, std::size_t> first_seen;
    std::pair<StateSet, StateSet> current{t, u};
    for (std::size_t step = 0; step <= iteration_cap; ++step) {
        const auto [it, inserted] = first_seen.emplace(current, step);
        if (!inserted) {
            lasso.prefix_len = it->second;
            lasso.period = step - it->second;
            return lasso;
        }
        lasso.items.push_back(current);
        current = {pre(mdp, current.first), pre(mdp, current.second)};
    }
    throw ResourceLimitError("pair_lasso exceeded the iteration cap of " +
                             std::to_string(iteration_cap));
}

std::pair<Mdp, StateId> add_initial_state(const Mdp& mdp, const Distribution& mu0) {
    if (mu0.empty()) throw InputError("empty initial distribution");
    for (const auto& [q, p] : mu0.entries()) {
        if (q < 0 || q >= mdp.state_count()) {
            throw InputError("initial distribution mentions unknown state index " +
                             std::to_string(q));
        }
    }
    Mdp out = mdp;
    std::string name = "init";
    while (std::find(out.state_names.begin(), out.state_names.end(), name) !=
           out.state_names.end()) {
        name += "_";
    }
    const StateId fresh = out.state_count();
    out.state_names.push_back(name);
    out.rows.emplace_back(out.action_count(), mu0);
    return {out, fresh};
}

Mdp twin_duplicate(const Mdp& mdp, StateId keep) {
    if (keep < 0 || keep >= mdp.state_count()) {
        throw InputError("unknown state index " + std::to_string(keep));
    }
    Mdp out;
    out.action_names = mdp.action_names;
    // Copy indices: every state except `keep` becomes two adjacent states.
    std::vector<std::pair<StateId, StateId>> copies(mdp.state_count());
    for (int q = 0; q < mdp.state_count(); ++q) {
        if (q == keep) {
            copies[q] = {out.state_count(), out.state_count()};
            out.state_names.push_back(mdp.state_names[q]);
        } else {
            copies[q] = {out.state_count(), out.state_count() + 1};
            out.state_names.push_back(mdp.state_names[q] + "_1");
            out.state_names.push_back(mdp.state_names[q] + "_2");
        }
    }
    const auto duplicated_row = [&](const Distribution& row) {
        std::vector<std::pair<StateId, Rational>> entries;
        for (const auto& [target, p] : row.entries()) {
            const auto [first, second] = copies[target];
            if (first == second) {
                entries.emplace_back(first, p);
            } else {
                entries.emplace_back(first, p / 2);
                entries.emplace_back(second, p / 2);
            }
        }
        return Distribution(std::move(entries));
    };
    out.rows.resize(out.state_count());
    for (int q = 0; q < mdp.state_count(); ++q) {
        std::vector<Distribution> row;
        row.reserve(mdp.action_count());
        for (int a = 0; a < mdp.action_count(); ++a) row.push_back(duplicated_row(mdp.rows[q][a]));
        const auto [first, second] = copies[q];
        out.rows[first] = row;
        if (second != first) out.rows[second] = std::move(row);
    }
    return out;
}

} // namespace syncmdp
