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
#include "syncmdp/strategy.hpp"

#include <cassert>
#include <map>
#include <stdexcept>
#include <string>
#include <utility>

#include "syncmdp/errors.hpp"

namespace syncmdp {
namespace {

std::string join(const std::vector<std::string>& parts) {
    std::string text;
    for (const auto& part : parts) {
        if (!text.empty()) text += "; ";
        text += part;
    }
    return text;
}

/// Lowest action whose whole successor support lies inside `target`.
std::optional<ActionId> action_into(const Mdp& mdp, StateId q, const StateSet& target) {
    for (ActionId a = 0; a < mdp.action_count(); ++a) {
        if (post(mdp, q, a).is_subset_of(target)) return a;
    }
    return std::nullopt;
}

/// Counting skeleton: modes advance linearly and absorb in the last one,
/// independent of the action played and the state observed. Move rows are
/// left for the caller to fill (all of them, so the result is total).
Transducer make_counting(std::size_t mode_count, const Mdp& mdp) {
    Transducer strat;
    strat.mode_names.reserve(mode_count);
    for (std::size_t m = 0; m < mode_count; ++m) {
        strat.mode_names.push_back("m" + std::to_string(m));
    }
    strat.initial_mode = 0;
    const int last = static_cast<int>(mode_count) - 1;
    strat.update.resize(mode_count);
    strat.next_move.resize(mode_count);
    for (std::size_t m = 0; m < mode_count; ++m) {
        const int next = std::min(static_cast<int>(m) + 1, last);
        strat.update[m].assign(mdp.action_count(),
                               std::vector<int>(mdp.state_count(), next));
        strat.next_move[m].resize(mdp.state_count());
    }
    return strat;
}

/// Re-home a set into a larger universe, preserving members.
StateSet widen(const StateSet& set, int universe_size) {
    StateSet result(universe_size);
    for (int q : set.members()) result.set(q);
    return result;
}

/// Drops the first step of a counting transducer built on an MDP extended
/// with a fresh initial state (the last index): the remaining modes form a
/// strategy on the original MDP, started from the distribution the fresh
/// state spreads to. Assumes the counting chain never revisits mode 0.
Transducer strip_initial_step(const Transducer& strat, const Mdp& original) {
    const int modes = strat.mode_count();
    assert(modes >= 2);
    const int after_first = strat.update[strat.initial_mode][0][0];
    assert(after_first >= 1);
    assert(strat.initial_mode == 0);

    Transducer result;
    result.mode_names.assign(strat.mode_names.begin() + 1, strat.mode_names.end());
    result.initial_mode = after_first - 1;
    result.update.resize(modes - 1);
    result.next_move.resize(modes - 1);
    for (int m = 1; m < modes; ++m) {
        result.update[m - 1].resize(original.action_count());
        for (ActionId a = 0; a < original.action_count(); ++a) {
            result.update[m - 1][a].resize(original.state_count());
            for (StateId q = 0; q < original.state_count(); ++q) {
                const int next = strat.update[m][a][q];
                assert(next >= 1);
                result.update[m - 1][a][q] = next - 1;
            }
        }
        result.next_move[m - 1].assign(strat.next_move[m].begin(),
                                       strat.next_move[m].begin() + original.state_count());
    }
    return result;
}

Rational sync_value(const Distribution& dist, const TargetSpec& spec) {
    return spec.function == TargetFunction::kSum ? dist.mass(spec.target)
                                                 : dist.max_in(spec.target);
}

} // namespace

std::vector<std::string> validate(const Transducer& strat, const Mdp& mdp) {
    std::vector<std::string> problems;
    const int modes = strat.mode_count();
    if (modes == 0) problems.push_back("transducer has no modes");
    if (strat.initial_mode < 0 || strat.initial_mode >= modes) {
        problems.push_back("initial mode out of range");
    }
    if (static_cast<int>(strat.update.size()) != modes ||
        static_cast<int>(strat.next_move.size()) != modes) {
        problems.push_back("update/next_move table size differs from mode count");
        return problems;
    }
    for (int m = 0; m < modes; ++m) {
        if (static_cast<int>(strat.update[m].size()) != mdp.action_count()) {
            problems.push_back("update table of mode " + std::to_string(m) +
                               " has wrong action arity");
            continue;
        }
        for (ActionId a = 0; a < mdp.action_count(); ++a) {
            if (static_cast<int>(strat.update[m][a].size()) != mdp.state_count()) {
                problems.push_back("update table of mode " + std::to_string(m) +
                                   " has wrong state arity");
                break;
            }
            for (StateId q = 0; q < mdp.state_count(); ++q) {
                const int next = strat.update[m][a][q];
                if (next < -1 || next >= modes) {
                    problems.push_back("update(" + std::to_string(m) + ", " +
                                       std::to_string(a) + ", " + std::to_string(q) +
                                       ") is out of range");
                }
            }
        }
        if (static_cast<int>(strat.next_move[m].size()) != mdp.state_count()) {
            problems.push_back("move table of mode " + std::to_string(m) +
                               " has wrong state arity");
            continue;
        }
        for (StateId q = 0; q < mdp.state_count(); ++q) {
            for (const auto& [action, weight] : strat.next_move[m][q].entries()) {
                (void)weight;
                if (action < 0 || action >= mdp.action_count()) {
                    problems.push_back("move of mode " + std::to_string(m) + " in state " +
                                       std::to_string(q) + " uses unknown action index " +
                                       std::to_string(action));
                }
            }
        }
    }
    return problems;
}

SymbolicOutcome symbolic_outcome(const Mdp& mdp, const Distribution& mu0,
                                 const Transducer& strat, std::size_t horizon) {
    require_valid(mdp);
    std::vector<std::string> problems = validate(strat, mdp);
    if (!problems.empty()) throw InputError("invalid transducer: " + join(problems));
    mu0.support(mdp.state_count());

    // Joint distribution over (mode, state); exactness of the propagation is
    // guarded by the Distribution constructor, which insists on total mass 1.
    std::map<std::pair<int, StateId>, Rational> joint;
    for (const auto& [q, p] : mu0.entries()) joint[{strat.initial_mode, q}] = p;

    SymbolicOutcome outcome;
    outcome.reserve(horizon + 1);
    outcome.push_back(mu0);
    for (std::size_t step = 1; step <= horizon; ++step) {
        std::map<std::pair<int, StateId>, Rational> next;
        for (const auto& [pair, p] : joint) {
            const auto& [mode, q] = pair;
            const Distribution& move = strat.next_move[mode][q];
            if (move.empty()) {
                throw InputError("transducer has no move for reachable mode '" +
                                 strat.mode_names[mode] + "' in state '" +
                                 mdp.state_names[q] + "'");
            }
            for (const auto& [action, pa] : move.entries()) {
                for (const auto& [succ, pq] : mdp.rows[q][action].entries()) {
                    const int mode2 = strat.update[mode][action][succ];
                    if (mode2 < 0) {
                        throw InputError("transducer memory update undefined at mode '" +
                                         strat.mode_names[mode] + "', action '" +
                                         mdp.action_names[action] + "', state '" +
                                         mdp.state_names[succ] + "'");
                    }
                    next[{mode2, succ}] += p * pa * pq;
                }
            }
        }
        joint.swap(next);
        std::map<StateId, Rational> projected;
        for (const auto& [pair, p] : joint) projected[pair.second] += p;
        outcome.push_back(Distribution(
            std::vector<std::pair<StateId, Rational>>(projected.begin(), projected.end())));
    }
    return outcome;
}

std::pair<bool, std::optional<std::size_t>> validate_sync(const SymbolicOutcome& outcome,
                                                          const TargetSpec& spec,
                                                          const Rational& p,
                                                          Objective objective) {
    if (objective == Objective::kEventually) {
        for (std::size_t step = 0; step < outcome.size(); ++step) {
            if (sync_value(outcome[step], spec) >= p) return {true, step};
        }
        return {false, std::nullopt};
    }
    for (std::size_t step = 0; step < outcome.size(); ++step) {
        if (sync_value(outcome[step], spec) < p) return {false, step};
    }
    return {true, std::nullopt};
}

std::pair<Transducer, std::size_t> synth_sure_eventually(const Mdp& mdp, StateId q0,
                                                         const StateSet& t) {
    require_valid(mdp);
    auto [winning, horizon] = decide_sure_eventually(mdp, q0, t);
    if (!winning) {
        throw NotWinningError("state '" + mdp.state_names[q0] +
                              "' is not sure eventually synchronizing in the target");
    }
    const std::size_t n = *horizon;
    Lasso lasso = pre_lasso(mdp, t);

    // Mode s handles step s; with n - s steps to go, states inside the
    // (n-s)-fold predecessor set move one level down the sequence, so all
    // mass lands exactly in t at step n.
    Transducer strat = make_counting(n + 1, mdp);
    for (std::size_t s = 0; s <= n; ++s) {
        const std::size_t remaining = n - s;
        for (StateId q = 0; q < mdp.state_count(); ++q) {
            ActionId chosen = 0;
            if (remaining >= 1 && lasso.items[remaining].test(q)) {
                chosen = *action_into(mdp, q, lasso.items[remaining - 1]);
            }
            strat.next_move[s][q] = Distribution::dirac(chosen);
        }
    }

    SymbolicOutcome outcome = symbolic_outcome(mdp, Distribution::dirac(q0), strat, n);
    if (outcome[n].mass(t) != 1) {
        throw std::logic_error("sure-eventually synthesis failed its exactness check");
    }
    return {std::move(strat), n};
}

std::vector<ActionId> z_safe_actions(const Mdp& mdp, const std::vector<StateSet>& z_sequence,
                                     StateId q, std::size_t i) {
    require_valid(mdp);
    if (z_sequence.empty()) throw InputError("empty periodic sequence");
    if (i >= z_sequence.size()) {
        throw InputError("position " + std::to_string(i) + " outside period " +
                         std::to_string(z_sequence.size()));
    }
    if (q < 0 || q >= mdp.state_count()) throw InputError("state index out of range");
    const std::size_t r = z_sequence.size();
    const StateSet& down = z_sequence[(i + r - 1) % r];
    std::vector<ActionId> safe;
    for (ActionId a = 0; a < mdp.action_count(); ++a) {
        if (post(mdp, q, a).is_subset_of(down)) safe.push_back(a);
    }
    return safe;
}

std::pair<Transducer, std::size_t> synth_limit_sure(const Mdp& mdp, StateId q0,
                                                    const StateSet& t, const StateSet& u,
                                                    const Rational& epsilon,
                                                    std::size_t step_cap) {
    require_valid(mdp);
    if (epsilon <= 0) throw InputError("epsilon must be positive");
    LimitResult decision = decide_limit_sure_with_support(mdp, q0, t, u);
    if (!decision.winning) {
        throw NotWinningError("state '" + mdp.state_names[q0] +
                              "' is not limit-sure eventually synchronizing in the target "
                              "with the given support");
    }
    if (decision.witness->via_sure) return synth_sure_eventually(mdp, q0, t);

    const std::size_t k = decision.witness->prefix_len;
    const std::size_t r = decision.witness->period;
    const std::size_t seed = decision.witness->position;
    PairLasso lasso = pair_lasso(mdp, t, u);
    assert(lasso.prefix_len == k && lasso.period == r);

    std::vector<std::pair<StateSet, StateSet>> periodic(lasso.items.begin() + k,
                                                        lasso.items.begin() + k + r);
    ProductMdp product = build_product(mdp, periodic, r);
    StateSet goal(product.mdp.state_count());
    for (int q : periodic[0].first.members()) goal.set(product.product_state(q, 0));
    ReachStrategy sigma = almost_sure_reach_strategy(product.mdp, goal);

    // The move at position i: states inside the R-sequence head for R with
    // R-safe actions (re-triggering every step, so they cycle through R
    // forever); everything else follows the product's almost-sure strategy,
    // which plays Z-safe actions only. Unreachable states get action 0.
    auto cycle_move = [&](StateId q, std::size_t position) -> ActionId {
        if (periodic[position].first.test(q)) {
            return *action_into(mdp, q, periodic[(position + r - 1) % r].first);
        }
        const auto& choice = sigma.action[product.product_state(q, position)];
        return choice ? *choice : 0;
    };

    // Find the first position-0 step whose simulated mass in R = pre^k(t)
    // reaches 1 - epsilon; all mass sits in Z = pre^k(u) at such steps.
    const StateSet& big_r = periodic[0].first;
    const Rational threshold = Rational(1) - epsilon;
    std::optional<std::size_t> switch_step;
    Distribution current = Distribution::dirac(q0);
    for (std::size_t s = 0; s <= step_cap; ++s) {
        const std::size_t position = (seed + r - (s % r)) % r;
        if (position == 0 && current.mass(big_r) >= threshold) {
            switch_step = s;
            break;
        }
        std::map<StateId, Rational> next;
        for (const auto& [q, p] : current.entries()) {
            for (const auto& [succ, pq] : mdp.rows[q][cycle_move(q, position)].entries()) {
                next[succ] += p * pq;
            }
        }
        current = Distribution(
            std::vector<std::pair<StateId, Rational>>(next.begin(), next.end()));
    }
    if (!switch_step) {
        throw ResourceLimitError("no qualifying synchronization step within " +
                                 std::to_string(step_cap) + " simulated steps");
    }

    // Counting transducer: cycle modes for steps before the switch, then k
    // injection modes walking both predecessor sequences down to (t, u),
    // then an absorbing mode.
    const std::size_t n_star = *switch_step;
    Transducer strat = make_counting(n_star + k + 1, mdp);
    for (std::size_t s = 0; s < n_star; ++s) {
        strat.mode_names[s] = "cycle" + std::to_string(s);
        const std::size_t position = (seed + r - (s % r)) % r;
        for (StateId q = 0; q < mdp.state_count(); ++q) {
            strat.next_move[s][q] = Distribution::dirac(cycle_move(q, position));
        }
    }
    for (std::size_t j = 0; j < k; ++j) {
        const std::size_t mode = n_star + j;
        const std::size_t remaining = k - j;
        strat.mode_names[mode] = "inject" + std::to_string(remaining);
        const auto& [r_here, z_here] = lasso.items[remaining];
        const auto& [r_down, z_down] = lasso.items[remaining - 1];
        for (StateId q = 0; q < mdp.state_count(); ++q) {
            ActionId chosen = 0;
            if (r_here.test(q)) {
                chosen = *action_into(mdp, q, r_down);
            } else if (z_here.test(q)) {
                chosen = *action_into(mdp, q, z_down);
            }
            strat.next_move[mode][q] = Distribution::dirac(chosen);
        }
    }
    strat.mode_names[n_star + k] = "done";
    for (StateId q = 0; q < mdp.state_count(); ++q) {
        strat.next_move[n_star + k][q] = Distribution::dirac(0);
    }

    SymbolicOutcome outcome =
        symbolic_outcome(mdp, Distribution::dirac(q0), strat, n_star + k);
    for (std::size_t n = 0; n < outcome.size(); ++n) {
        if (outcome[n].mass(t) >= threshold && outcome[n].mass(u) == 1) {
            return {std::move(strat), n};
        }
    }
    throw std::logic_error("limit-sure synthesis failed its validation check");
}

SymbolicOutcome simulate_schedule(const Mdp& mdp, const Distribution& mu0,
                                  const EpsilonSchedule& schedule) {
    SymbolicOutcome total;
    total.push_back(mu0);
    for (const ScheduleSegment& segment : schedule.segments) {
        SymbolicOutcome part =
            symbolic_outcome(mdp, total.back(), segment.transducer, segment.horizon);
        total.insert(total.end(), part.begin() + 1, part.end());
    }
    return total;
}

EpsilonSchedule synth_almost_sure_schedule(const Mdp& mdp, StateId q0, const StateSet& t,
                                           int depth, std::size_t step_cap) {
    require_valid(mdp);
    if (depth < 1) throw InputError("schedule depth must be at least 1");

    Rational last_epsilon(1);
    for (int i = 0; i < depth; ++i) last_epsilon /= 2;

    // Sure-winning start: one exact segment covers every epsilon at once.
    if (decide_sure_eventually(mdp, q0, t).first) {
        auto [strat, n] = synth_sure_eventually(mdp, q0, t);
        EpsilonSchedule schedule;
        schedule.segments.push_back({last_epsilon, std::move(strat), n});
        return schedule;
    }

    auto [winning, u_opt] = decide_almost_sure(mdp, q0, t);
    if (!winning) {
        throw NotWinningError("state '" + mdp.state_names[q0] +
                              "' is not almost-sure eventually synchronizing in the target");
    }
    const StateSet u = *u_opt;
    const StateSet target = t & u;

    // Each stage lifts the current distribution through a fresh initial
    // state, synthesizes a limit-sure witness toward t ∩ U with support in
    // U, and restarts from where that witness ends (support back in U).
    EpsilonSchedule schedule;
    Distribution current = Distribution::dirac(q0);
    Rational epsilon(1);
    for (int i = 1; i <= depth; ++i) {
        epsilon /= 2;
        auto [lifted, init] = add_initial_state(mdp, current);
        auto [lifted_strat, lifted_step] =
            synth_limit_sure(lifted, init, widen(target, lifted.state_count()),
                             widen(u, lifted.state_count()), epsilon, step_cap);
        assert(lifted_step >= 1);
        Transducer segment_strat = strip_initial_step(lifted_strat, mdp);
        const std::size_t horizon = lifted_step - 1;

        SymbolicOutcome outcome = symbolic_outcome(mdp, current, segment_strat, horizon);
        if (outcome[horizon].mass(target) < Rational(1) - epsilon ||
            outcome[horizon].mass(u) != 1) {
            throw std::logic_error("almost-sure schedule segment failed its validation check");
        }
        current = outcome[horizon];
        schedule.segments.push_back({epsilon, std::move(segment_strat), horizon});
    }
    return schedule;
}

Transducer synth_always(const Mdp& mdp, const Distribution& mu0, const TargetSpec& spec) {
    require_valid(mdp);
    require_valid(spec, mdp);

    Transducer strat = make_counting(1, mdp);
    if (spec.function == TargetFunction::kSum) {
        if (!decide_always_sum(mdp, mu0, spec.target)) {
            throw NotWinningError("the initial distribution is not always synchronizing "
                                  "in the target (sum)");
        }
        const StateSet region = safety_region(mdp, spec.target);
        for (StateId q = 0; q < mdp.state_count(); ++q) {
            const auto safe = region.test(q) ? action_into(mdp, q, region) : std::nullopt;
            strat.next_move[0][q] = Distribution::dirac(safe ? *safe : 0);
        }
    } else {
        if (!decide_always_max(mdp, mu0, spec.target)) {
            throw NotWinningError("the initial state is not always synchronizing "
                                  "in the target (max)");
        }
        const StateSet survivors = dirac_survivors(mdp, spec.target);
        for (StateId q = 0; q < mdp.state_count(); ++q) {
            ActionId chosen = 0;
            if (survivors.test(q)) {
                for (ActionId a = 0; a < mdp.action_count(); ++a) {
                    const Distribution& row = mdp.rows[q][a];
                    if (row.is_dirac() && survivors.test(row.entries().front().first)) {
                        chosen = a;
                        break;
                    }
                }
            }
            strat.next_move[0][q] = Distribution::dirac(chosen);
        }
    }
    return strat;
}

} // namespace syncmdp
