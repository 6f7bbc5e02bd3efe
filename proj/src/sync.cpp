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
#include "syncmdp/sync.hpp"

#include <cassert>
#include <stdexcept>
#include <string>
#include <utility>

#include "syncmdp/errors.hpp"

namespace syncmdp {
namespace {

void check_state(const Mdp& mdp, StateId q, const char* what) {
    if (q < 0 || q >= mdp.state_count()) {
        throw InputError(std::string(what) + " index " + std::to_string(q) +
                         " out of range for " + std::to_string(mdp.state_count()) + " states");
    }
}

void check_universe(const Mdp& mdp, const StateSet& set, const char* what) {
    if (set.universe_size() != mdp.state_count()) {
        throw InputError(std::string(what) + " universe size " +
                         std::to_string(set.universe_size()) + " does not match state count " +
                         std::to_string(mdp.state_count()));
    }
}

/// Re-home a set into a larger universe, preserving members.
StateSet widen(const StateSet& set, int universe_size) {
    StateSet result(universe_size);
    for (int q : set.members()) result.set(q);
    return result;
}

void check_monotone(const Verdict& verdict) {
    if ((verdict.sure && !verdict.almost_sure) || (verdict.almost_sure && !verdict.limit_sure)) {
        throw std::logic_error("internal monotonicity violation: "
                               "sure implies almost-sure implies limit-sure");
    }
}

} // namespace

void require_valid(const TargetSpec& spec, const Mdp& mdp) {
    check_universe(mdp, spec.target, "target");
    if (spec.target.empty()) throw InputError("target set must be nonempty");
}

StateId ProductMdp::product_state(StateId q, std::size_t position) const {
    return static_cast<StateId>(position) * base_state_count + q;
}

StateSet safety_region(const Mdp& mdp, const StateSet& t) {
    check_universe(mdp, t, "target");
    StateSet w = t;
    while (true) {
        StateSet next = t & pre(mdp, w);
        if (next == w) return w;
        w = next;
    }
}

bool decide_always_sum(const Mdp& mdp, const Distribution& mu0, const StateSet& t) {
    StateSet support = mu0.support(mdp.state_count());
    return support.is_subset_of(safety_region(mdp, t));
}

StateSet dirac_survivors(const Mdp& mdp, const StateSet& t) {
    check_universe(mdp, t, "target");
    // Greatest fixpoint of states with a probability-1 transition staying in
    // the candidate set: exactly the sources of infinite Dirac paths in t.
    StateSet survivors = t;
    while (true) {
        StateSet next(mdp.state_count());
        for (int q : survivors.members()) {
            for (ActionId a = 0; a < mdp.action_count(); ++a) {
                const Distribution& row = mdp.rows[q][a];
                if (row.is_dirac() && survivors.test(row.entries().front().first)) {
                    next.set(q);
                    break;
                }
            }
        }
        if (next == survivors) break;
        survivors = next;
    }
    return survivors;
}

bool decide_always_max(const Mdp& mdp, const Distribution& mu0, const StateSet& t,
                       std::vector<std::string>* notes) {
    check_universe(mdp, t, "target");
    mu0.support(mdp.state_count());
    if (!mu0.is_dirac()) {
        if (notes != nullptr) {
            notes->push_back("always-max requires full mass in a single state at step 0; "
                             "the initial distribution is not Dirac");
        }
        return false;
    }
    return dirac_survivors(mdp, t).test(mu0.entries().front().first);
}

std::pair<bool, std::optional<std::size_t>> decide_sure_eventually(const Mdp& mdp, StateId q0,
                                                                   const StateSet& t) {
    check_state(mdp, q0, "initial state");
    Lasso lasso = pre_lasso(mdp, t);
    for (std::size_t n = 0; n < lasso.items.size(); ++n) {
        if (lasso.items[n].test(q0)) return {true, n};
    }
    return {false, std::nullopt};
}

ProductMdp build_product(const Mdp& mdp,
                         const std::vector<std::pair<StateSet, StateSet>>& periodic,
                         std::size_t r) {
    if (r == 0 || periodic.size() != r) {
        throw InputError("product construction needs exactly r periodic items, r >= 1");
    }
    for (const auto& [r_set, z_set] : periodic) {
        check_universe(mdp, r_set, "periodic R item");
        check_universe(mdp, z_set, "periodic Z item");
    }
    for (std::size_t i = 0; i < r; ++i) {
        const auto& next = periodic[(i + 1) % r];
        if (pre(mdp, periodic[i].first) != next.first ||
            pre(mdp, periodic[i].second) != next.second) {
            throw InputError("periodic family is not closed under pre with period " +
                             std::to_string(r));
        }
    }

    const int n = mdp.state_count();
    ProductMdp product;
    product.period = r;
    product.base_state_count = n;
    product.sink = static_cast<StateId>(r) * n;

    const int total = static_cast<int>(r) * n + 1;
    product.mdp.action_names = mdp.action_names;
    product.mdp.state_names.reserve(total);
    product.provenance.reserve(total);
    for (std::size_t pos = 0; pos < r; ++pos) {
        for (StateId q = 0; q < n; ++q) {
            product.mdp.state_names.push_back(mdp.state_names[q] + "@" + std::to_string(pos));
            product.provenance.emplace_back(std::pair<StateId, int>{q, static_cast<int>(pos)});
        }
    }
    product.mdp.state_names.push_back("sink");
    product.provenance.emplace_back(std::nullopt);

    product.mdp.rows.resize(total);
    for (std::size_t pos = 0; pos < r; ++pos) {
        const std::size_t down = (pos + r - 1) % r;
        const StateSet& z_down = periodic[down].second;
        for (StateId q = 0; q < n; ++q) {
            auto& row = product.mdp.rows[product.product_state(q, pos)];
            row.reserve(mdp.action_count());
            for (ActionId a = 0; a < mdp.action_count(); ++a) {
                if (post(mdp, q, a).is_subset_of(z_down)) {
                    std::vector<std::pair<StateId, Rational>> entries;
                    entries.reserve(mdp.rows[q][a].entries().size());
                    for (const auto& [succ, prob] : mdp.rows[q][a].entries()) {
                        entries.emplace_back(product.product_state(succ, down), prob);
                    }
                    row.push_back(Distribution(std::move(entries)));
                } else {
                    row.push_back(Distribution::dirac(product.sink));
                }
            }
        }
    }
    product.mdp.rows[product.sink].assign(mdp.action_count(),
                                          Distribution::dirac(product.sink));
    return product;
}

StateSet almost_sure_reach(const Mdp& mdp, const StateSet& goal) {
    return almost_sure_reach_strategy(mdp, goal).region;
}

ReachStrategy almost_sure_reach_strategy(const Mdp& mdp, const StateSet& goal) {
    check_universe(mdp, goal, "goal");
    const int n = mdp.state_count();

    // Iterative pruning: restrict to a candidate region, keep only states
    // that reach the goal without any action leaking outside the candidate,
    // and repeat until the region is stable.
    StateSet region = StateSet(n).complement();
    while (true) {
        StateSet closure = goal & region;
        bool grew = true;
        while (grew) {
            grew = false;
            for (int q : (region - closure).members()) {
                for (ActionId a = 0; a < mdp.action_count(); ++a) {
                    StateSet successors = post(mdp, q, a);
                    if (successors.is_subset_of(region) && successors.intersects(closure)) {
                        closure.set(q);
                        grew = true;
                        break;
                    }
                }
            }
        }
        if (closure == region) break;
        region = closure;
    }

    // Backward BFS layers inside the final region yield a pure memoryless
    // witness: the chosen action never leaves the region and reduces the
    // layer index with positive probability, so the goal is reached almost
    // surely from everywhere in the region.
    ReachStrategy strategy;
    strategy.region = region;
    strategy.action.assign(n, std::nullopt);
    StateSet labeled = goal & region;
    bool grew = true;
    while (grew) {
        grew = false;
        StateSet next = labeled;
        for (int q : (region - labeled).members()) {
            for (ActionId a = 0; a < mdp.action_count(); ++a) {
                StateSet successors = post(mdp, q, a);
                if (successors.is_subset_of(region) && successors.intersects(labeled)) {
                    strategy.action[q] = a;
                    next.set(q);
                    grew = true;
                    break;
                }
            }
        }
        labeled = next;
    }
    assert(labeled == region);
    return strategy;
}

LimitResult decide_limit_sure_with_support(const Mdp& mdp, StateId q0, const StateSet& t,
                                           const StateSet& u) {
    check_state(mdp, q0, "initial state");
    check_universe(mdp, t, "target");
    check_universe(mdp, u, "support");
    if (!t.is_subset_of(u)) throw InputError("target must be a subset of the support set");

    auto [sure, horizon] = decide_sure_eventually(mdp, q0, t);
    if (sure) {
        LimitWitness witness;
        witness.via_sure = true;
        witness.prefix_len = *horizon;
        return {true, witness};
    }

    PairLasso lasso = pair_lasso(mdp, t, u);
    const std::size_t k = lasso.prefix_len;
    const std::size_t r = lasso.period;
    std::vector<std::pair<StateSet, StateSet>> periodic(lasso.items.begin() + k,
                                                        lasso.items.begin() + k + r);
    ProductMdp product = build_product(mdp, periodic, r);

    StateSet goal(product.mdp.state_count());
    for (int q : periodic[0].first.members()) goal.set(product.product_state(q, 0));
    StateSet winning = almost_sure_reach(product.mdp, goal);

    for (std::size_t seed = 0; seed < r; ++seed) {
        if (winning.test(product.product_state(q0, seed))) {
            LimitWitness witness;
            witness.prefix_len = k;
            witness.period = r;
            witness.r_set = periodic[0].first;
            witness.z_set = periodic[0].second;
            witness.position = seed;
            return {true, witness};
        }
    }
    return {false, std::nullopt};
}

LimitResult decide_limit_sure(const Mdp& mdp, StateId q0, const StateSet& t) {
    return decide_limit_sure_with_support(mdp, q0, t,
                                          StateSet(mdp.state_count()).complement());
}

std::pair<bool, std::optional<StateSet>> decide_almost_sure(const Mdp& mdp, StateId q0,
                                                            const StateSet& t, int state_cap) {
    check_state(mdp, q0, "initial state");
    check_universe(mdp, t, "target");
    const int n = mdp.state_count();
    if (n > state_cap) {
        throw ResourceLimitError("almost-sure decision enumerates subsets of " +
                                 std::to_string(n) + " states, above the cap of " +
                                 std::to_string(state_cap));
    }

    for (std::uint64_t mask = 1; mask < (std::uint64_t{1} << n); ++mask) {
        StateSet u(n);
        for (int q = 0; q < n; ++q) {
            if ((mask >> q) & 1) u.set(q);
        }
        StateSet t_in_u = t & u;
        if (t_in_u.empty()) continue;
        if (!decide_sure_eventually(mdp, q0, u).first) continue;

        auto [lifted, init] = add_initial_state(mdp, Distribution::uniform(u));
        StateSet t_lifted = widen(t_in_u, lifted.state_count());
        StateSet u_lifted = widen(u, lifted.state_count());
        if (decide_limit_sure_with_support(lifted, init, t_lifted, u_lifted).winning) {
            return {true, u};
        }
    }
    return {false, std::nullopt};
}

namespace {

Verdict classify_eventually_sum(const Mdp& mdp, const Distribution& mu0, const StateSet& target,
                                ModeRequest modes) {
    Verdict verdict;
    const Mdp* work = &mdp;
    Mdp lifted;
    StateId q0 = -1;
    std::size_t shift = 0;
    StateSet t = target;

    if (mu0.is_dirac()) {
        q0 = mu0.entries().front().first;
    } else {
        auto [extended, init] = add_initial_state(mdp, mu0);
        lifted = std::move(extended);
        work = &lifted;
        q0 = init;
        shift = 1;
        t = widen(target, lifted.state_count());
        verdict.notes.push_back("initial distribution lifted through fresh state '" +
                                lifted.state_names[init] + "'; horizons shifted back by 1");
    }
    verdict.witness_state_names = work->state_names;

    if (modes.sure) {
        auto [sure, horizon] = decide_sure_eventually(*work, q0, t);
        verdict.sure = sure;
        if (horizon) {
            assert(*horizon >= shift);
            verdict.sure_witness = *horizon - shift;
        }
    }

    if (modes.almost) {
        auto [almost, support] = decide_almost_sure(*work, q0, t);
        verdict.almost_sure = almost;
        verdict.almost_witness = support;
    }

    if (modes.limit) {
        LimitResult limit = decide_limit_sure(*work, q0, t);
        verdict.limit_sure = limit.winning;
        verdict.limit_witness = limit.witness;
        if (verdict.limit_witness && verdict.limit_witness->via_sure) {
            assert(verdict.limit_witness->prefix_len >= shift);
            verdict.limit_witness->prefix_len -= shift;
        }
    }
    return verdict;
}

} // namespace

Verdict classify(const Mdp& mdp, const Distribution& mu0, const TargetSpec& spec,
                 Objective objective, ModeRequest modes) {
    require_valid(mdp);
    require_valid(spec, mdp);
    mu0.support(mdp.state_count());
    if (mu0.empty()) throw InputError("initial distribution must be nonempty");
    if (!modes.sure && !modes.almost && !modes.limit) {
        throw InputError("no winning mode requested");
    }

    Verdict verdict;
    if (objective == Objective::kAlways) {
        bool winning = spec.function == TargetFunction::kSum
                           ? decide_always_sum(mdp, mu0, spec.target)
                           : decide_always_max(mdp, mu0, spec.target, &verdict.notes);
        verdict.sure = verdict.almost_sure = verdict.limit_sure = winning;
        verdict.witness_state_names = mdp.state_names;
        return verdict;
    }

    if (spec.function == TargetFunction::kSum) {
        verdict = classify_eventually_sum(mdp, mu0, spec.target, modes);
        if (modes.all()) check_monotone(verdict);
        return verdict;
    }

    // max over the target is the union of the singleton sum objectives; keep
    // the first realizing state per mode in the notes.
    const auto satisfied = [&modes](const Verdict& v) {
        return (!modes.sure || v.sure) && (!modes.almost || v.almost_sure) &&
               (!modes.limit || v.limit_sure);
    };
    for (int q : spec.target.members()) {
        StateSet singleton(mdp.state_count());
        singleton.set(q);
        Verdict sub = classify_eventually_sum(mdp, mu0, singleton, modes);
        if (verdict.witness_state_names.empty()) {
            verdict.witness_state_names = sub.witness_state_names;
        }
        if (sub.sure && !verdict.sure) {
            verdict.sure = true;
            verdict.sure_witness = sub.sure_witness;
            verdict.notes.push_back("sure mode realized at target state '" +
                                    mdp.state_names[q] + "'");
        }
        if (sub.almost_sure && !verdict.almost_sure) {
            verdict.almost_sure = true;
            verdict.almost_witness = sub.almost_witness;
            verdict.notes.push_back("almost-sure mode realized at target state '" +
                                    mdp.state_names[q] + "'");
        }
        if (sub.limit_sure && !verdict.limit_sure) {
            verdict.limit_sure = true;
            verdict.limit_witness = sub.limit_witness;
            verdict.notes.push_back("limit-sure mode realized at target state '" +
                                    mdp.state_names[q] + "'");
        }
        if (satisfied(verdict)) break;
    }
    if (modes.all()) check_monotone(verdict);
    return verdict;
}

} // namespace syncmdp
