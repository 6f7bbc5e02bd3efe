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
#include <doctest.h>

#include <random>
#include <vector>

#include "syncmdp/errors.hpp"
#include "syncmdp/generators.hpp"
#include "syncmdp/sync.hpp"

using namespace syncmdp;

namespace {

StateSet set_of(int universe, std::initializer_list<int> members) {
    return StateSet::of(universe, members);
}

StateSet full_set(int universe) { return StateSet(universe).complement(); }

TargetSpec sum_spec(const StateSet& target) {
    return TargetSpec{TargetFunction::kSum, target};
}

/// Same supports, fresh positive weights: the transition structure that
/// qualitative verdicts may depend on is untouched.
Mdp rescale_probabilities(const Mdp& mdp, std::uint64_t seed) {
    std::mt19937_64 rng(seed);
    Mdp out = mdp;
    for (int q = 0; q < mdp.state_count(); ++q) {
        for (int a = 0; a < mdp.action_count(); ++a) {
            const auto& entries = mdp.rows[q][a].entries();
            if (entries.size() == 1) continue;
            std::vector<unsigned long> weights(entries.size());
            unsigned long total = 0;
            for (auto& w : weights) {
                w = rng() % 8 + 1;
                total += w;
            }
            std::vector<std::pair<StateId, Rational>> fresh;
            for (std::size_t i = 0; i < entries.size(); ++i) {
                Rational p(weights[i], total);
                p.canonicalize();
                fresh.emplace_back(entries[i].first, p);
            }
            out.rows[q][a] = Distribution(std::move(fresh));
        }
    }
    return out;
}

} // namespace

TEST_CASE("safety region and always-sum") {
    const Mdp m = gen_fig1();
    const int n = m.state_count();

    CHECK(safety_region(m, set_of(n, {3})) == set_of(n, {3}));
    CHECK(safety_region(m, set_of(n, {0, 1})) == set_of(n, {0, 1}));
    CHECK(safety_region(m, set_of(n, {0})).empty());
    CHECK(safety_region(m, set_of(n, {2, 3})) == set_of(n, {2, 3}));

    CHECK(decide_always_sum(m, Distribution::dirac(3), set_of(n, {3})));
    CHECK(decide_always_sum(m, Distribution::dirac(0), set_of(n, {0, 1})));
    CHECK(decide_always_sum(m, Distribution::uniform(set_of(n, {0, 1})), set_of(n, {0, 1})));
    CHECK_FALSE(decide_always_sum(m, Distribution::dirac(0), set_of(n, {0})));
    CHECK_FALSE(decide_always_sum(m, Distribution::dirac(0), set_of(n, {1, 2, 3})));
}

TEST_CASE("dirac survivors and always-max") {
    const Mdp m = gen_fig1();
    const int n = m.state_count();

    CHECK(dirac_survivors(m, set_of(n, {1, 3})) == set_of(n, {1, 3}));
    CHECK(dirac_survivors(m, set_of(n, {0, 1})) == set_of(n, {1}));
    CHECK(dirac_survivors(m, set_of(n, {0})).empty());
    // q2 only passes through; no cycle stays inside {q2}.
    CHECK(dirac_survivors(m, set_of(n, {2})).empty());

    CHECK(decide_always_max(m, Distribution::dirac(1), set_of(n, {0, 1})));
    CHECK_FALSE(decide_always_max(m, Distribution::dirac(0), set_of(n, {0, 1})));

    // A spread-out initial distribution can never keep max-mass 1.
    std::vector<std::string> notes;
    CHECK_FALSE(decide_always_max(m, Distribution::uniform(set_of(n, {1, 3})),
                                  set_of(n, {0, 1, 2, 3}), &notes));
    REQUIRE(notes.size() == 1);
}

TEST_CASE("sure-eventually with minimal horizons") {
    const Mdp m = gen_fig1();
    const int n = m.state_count();

    const auto [win_q1, horizon_q1] = decide_sure_eventually(m, 0, set_of(n, {1}));
    CHECK_FALSE(win_q1);
    CHECK_FALSE(horizon_q1.has_value());

    const auto [win_self, horizon_self] = decide_sure_eventually(m, 1, set_of(n, {1}));
    CHECK(win_self);
    CHECK(horizon_self == 0);

    const auto [win_q3, horizon_q3] = decide_sure_eventually(m, 1, set_of(n, {3}));
    CHECK(win_q3);
    CHECK(horizon_q3 == 2);

    CHECK_FALSE(decide_sure_eventually(m, 0, set_of(n, {3})).first);
}

TEST_CASE("sure-eventually horizon of the two-cycle family") {
    const Mdp m = gen_mn(2);
    const StateSet target = set_of(m.state_count(), {m.state_index("qT")});
    const auto [winning, horizon] = decide_sure_eventually(m, 0, target);
    CHECK(winning);
    CHECK(horizon == 7);
}

TEST_CASE("almost-sure reachability region and strategy") {
    const Mdp m = gen_fig1();
    const int n = m.state_count();

    const StateSet region = almost_sure_reach(m, set_of(n, {1}));
    CHECK(region == set_of(n, {0, 1}));
    CHECK(almost_sure_reach(m, set_of(n, {3})) == full_set(n));

    const ReachStrategy strat = almost_sure_reach_strategy(m, set_of(n, {1}));
    CHECK(strat.region == set_of(n, {0, 1}));
    REQUIRE(strat.action[0].has_value());
    // The chosen action must stay inside the region.
    CHECK(post(m, 0, *strat.action[0]).is_subset_of(strat.region));
    CHECK_FALSE(strat.action[2].has_value());
}

TEST_CASE("position product structure") {
    const Mdp m = gen_fig1();
    const int n = m.state_count();

    // Pair lasso of ({q2}, {q0,q1,q2}) has period 1 with R = {q1},
    // Z = {q0,q1}; only q0 (both actions) and q1 (first action) are Z-safe.
    const PairLasso lasso = pair_lasso(m, set_of(n, {2}), set_of(n, {0, 1, 2}));
    REQUIRE(lasso.period == 1);
    const std::vector<std::pair<StateSet, StateSet>> periodic(
        lasso.items.begin() + static_cast<std::ptrdiff_t>(lasso.prefix_len), lasso.items.end());
    CHECK(periodic[0].first == set_of(n, {1}));
    CHECK(periodic[0].second == set_of(n, {0, 1}));

    const ProductMdp product = build_product(m, periodic, lasso.period);
    CHECK(product.period == 1);
    CHECK(product.base_state_count == n);
    CHECK(product.mdp.state_count() == n + 1);
    REQUIRE(validate(product.mdp).empty());
    CHECK_FALSE(product.provenance[static_cast<std::size_t>(product.sink)].has_value());

    const StateId q0_at_0 = product.product_state(0, 0);
    const StateId q1_at_0 = product.product_state(1, 0);
    CHECK(product.provenance[static_cast<std::size_t>(q1_at_0)] ==
          std::make_pair(StateId{1}, 0));
    CHECK(post(product.mdp, q0_at_0, 0) ==
          set_of(n + 1, {static_cast<int>(q0_at_0), static_cast<int>(q1_at_0)}));
    // q1 under the second action leaves Z: redirected to the sink.
    CHECK(product.mdp.rows[static_cast<std::size_t>(q1_at_0)][1].entries().front().first ==
          product.sink);
    // The sink absorbs.
    CHECK(post(product.mdp, product.sink, 0) ==
          set_of(n + 1, {static_cast<int>(product.sink)}));
}

TEST_CASE("position product respects the predecessor wrap-around") {
    const Mdp m = gen_mn(2);
    const StateSet target = set_of(m.state_count(), {m.state_index("qT")});
    const PairLasso lasso = pair_lasso(m, target, full_set(m.state_count()));
    REQUIRE(lasso.period == 6);
    const std::vector<std::pair<StateSet, StateSet>> periodic(
        lasso.items.begin() + static_cast<std::ptrdiff_t>(lasso.prefix_len), lasso.items.end());
    const ProductMdp product = build_product(m, periodic, lasso.period);

    // Every non-sink transition steps one position down (mod r) and projects
    // onto the original successor support.
    for (int q = 0; q < m.state_count(); ++q) {
        for (std::size_t pos = 0; pos < product.period; ++pos) {
            const StateId s = product.product_state(q, pos);
            const std::size_t down = (pos + product.period - 1) % product.period;
            for (int a = 0; a < m.action_count(); ++a) {
                const auto& row = product.mdp.rows[static_cast<std::size_t>(s)]
                                                  [static_cast<std::size_t>(a)];
                if (row.is_dirac() && row.entries().front().first == product.sink) continue;
                StateSet projected(m.state_count());
                for (const auto& [succ, p] : row.entries()) {
                    const auto& origin = product.provenance[static_cast<std::size_t>(succ)];
                    REQUIRE(origin.has_value());
                    CHECK(static_cast<std::size_t>(origin->second) == down);
                    projected.set(origin->first);
                    CHECK(p == m.rows[q][a].at(origin->first));
                }
                CHECK(projected == post(m, q, a));
            }
        }
    }

    CHECK_THROWS_AS(build_product(m, periodic, 5), InputError);
}

TEST_CASE("limit-sure verdicts on the chain") {
    const Mdp m = gen_fig1();
    const int n = m.state_count();

    const LimitResult q2 = decide_limit_sure(m, 0, set_of(n, {2}));
    CHECK(q2.winning);
    REQUIRE(q2.witness.has_value());
    CHECK_FALSE(q2.witness->via_sure);
    CHECK(q2.witness->prefix_len == 1);
    CHECK(q2.witness->period == 1);
    CHECK(q2.witness->r_set == set_of(n, {1}));
    CHECK(q2.witness->z_set == full_set(n));
    CHECK(q2.witness->position == 0);

    CHECK(decide_limit_sure(m, 0, set_of(n, {3})).winning);
    CHECK(decide_limit_sure(m, 0, set_of(n, {1})).winning);

    // The initial distribution is already fully synchronized in {q0}, so the
    // instance is trivially sure-winning with horizon 0.
    const LimitResult q0_case = decide_limit_sure(m, 0, set_of(n, {0}));
    CHECK(q0_case.winning);
    REQUIRE(q0_case.witness.has_value());
    CHECK(q0_case.witness->via_sure);
    CHECK(q0_case.witness->prefix_len == 0);

    // From q2 the only reachable states are q2 and the sink q3, so no mass
    // ever returns to q1.
    CHECK_FALSE(decide_limit_sure(m, 2, set_of(n, {1})).winning);
    CHECK_FALSE(decide_limit_sure(m, 3, set_of(n, {1})).winning);

    // A sure instance short-circuits through the sure witness.
    const LimitResult sure_case = decide_limit_sure(m, 1, set_of(n, {3}));
    CHECK(sure_case.winning);
    REQUIRE(sure_case.witness.has_value());
    CHECK(sure_case.witness->via_sure);
    CHECK(sure_case.witness->prefix_len == 2);
}

TEST_CASE("limit-sure with support constraints") {
    const Mdp m = gen_fig5();
    const int n = m.state_count();

    CHECK(decide_limit_sure(m, 0, set_of(n, {2})).winning);
    // Keeping all mass inside {q0, q2} at the witness step is impossible:
    // waiting mass must sit in q1.
    CHECK_FALSE(decide_limit_sure_with_support(m, 0, set_of(n, {2}), set_of(n, {0, 2})).winning);
    CHECK(decide_limit_sure_with_support(m, 0, set_of(n, {2}), full_set(n)).winning);

    CHECK_THROWS_AS(decide_limit_sure_with_support(m, 0, set_of(n, {2}), set_of(n, {0, 1})),
                    InputError); // t must lie inside u
}

TEST_CASE("almost-sure decision with witness supports") {
    const Mdp fig1 = gen_fig1();
    const int n1 = fig1.state_count();

    const auto [q1_win, q1_witness] = decide_almost_sure(fig1, 0, set_of(n1, {1}));
    CHECK(q1_win);
    CHECK(q1_witness == set_of(n1, {0, 1}));

    const auto [q2_win, q2_witness] = decide_almost_sure(fig1, 0, set_of(n1, {2}));
    CHECK_FALSE(q2_win);
    CHECK_FALSE(q2_witness.has_value());

    const auto [q3_win, q3_witness] = decide_almost_sure(fig1, 0, set_of(n1, {3}));
    CHECK(q3_win);
    CHECK(q3_witness == set_of(n1, {0, 1, 3}));

    const Mdp fig5 = gen_fig5();
    const int n5 = fig5.state_count();
    const auto [f5_win, f5_witness] = decide_almost_sure(fig5, 0, set_of(n5, {2}));
    CHECK(f5_win);
    // The waiting state q1 is part of every winning support here.
    CHECK(f5_witness == set_of(n5, {0, 1, 2}));
}

TEST_CASE("almost-sure enumeration cap") {
    InstanceSpec spec;
    spec.seed = 5;
    spec.state_count = kDefaultSubsetStateCap + 1;
    spec.action_count = 1;
    const Mdp big = random_mdp(spec);
    CHECK_THROWS_AS(decide_almost_sure(big, 0, set_of(big.state_count(), {0})),
                    ResourceLimitError);
}

TEST_CASE("classify separates the three modes on the chain") {
    const Mdp m = gen_fig1();
    const int n = m.state_count();

    const Verdict q1 = classify(m, Distribution::dirac(0), sum_spec(set_of(n, {1})),
                                Objective::kEventually);
    CHECK_FALSE(q1.sure);
    CHECK(q1.almost_sure);
    CHECK(q1.limit_sure);
    CHECK_FALSE(q1.sure_witness.has_value());
    CHECK(q1.almost_witness == set_of(n, {0, 1}));

    const Verdict q2 = classify(m, Distribution::dirac(0), sum_spec(set_of(n, {2})),
                                Objective::kEventually);
    CHECK_FALSE(q2.sure);
    CHECK_FALSE(q2.almost_sure);
    CHECK(q2.limit_sure);
}

TEST_CASE("classify handles always objectives mode-uniformly") {
    const Mdp m = gen_fig1();
    const int n = m.state_count();

    const Verdict win = classify(m, Distribution::dirac(3), sum_spec(set_of(n, {3})),
                                 Objective::kAlways);
    CHECK(win.sure);
    CHECK(win.almost_sure);
    CHECK(win.limit_sure);

    const Verdict lose = classify(m, Distribution::dirac(0), sum_spec(set_of(n, {2})),
                                  Objective::kAlways);
    CHECK_FALSE(lose.sure);
    CHECK_FALSE(lose.almost_sure);
    CHECK_FALSE(lose.limit_sure);
}

TEST_CASE("classify lifts non-Dirac initial distributions") {
    const Mdp m = gen_fig1();
    const int n = m.state_count();
    const Distribution mu0 = Distribution::uniform(set_of(n, {0, 1}));

    const Verdict v = classify(m, mu0, sum_spec(set_of(n, {1})), Objective::kEventually);
    CHECK_FALSE(v.sure);
    CHECK(v.almost_sure);
    CHECK(v.limit_sure);
    REQUIRE(v.witness_state_names.size() == static_cast<std::size_t>(n) + 1);
    CHECK(v.witness_state_names.back() == "init");
    REQUIRE(v.almost_witness.has_value());
    CHECK(v.almost_witness->universe_size() == n + 1);
    CHECK(v.almost_witness->members() == std::vector<int>{0, 1});
    REQUIRE_FALSE(v.notes.empty());
}

TEST_CASE("classify max targets through singletons") {
    const Mdp m = gen_fig5();
    const int n = m.state_count();

    const Verdict v = classify(m, Distribution::dirac(0),
                               TargetSpec{TargetFunction::kMax, set_of(n, {1, 2})},
                               Objective::kEventually);
    CHECK_FALSE(v.sure);
    CHECK(v.almost_sure);
    CHECK(v.limit_sure);
    bool mentions_realizing_state = false;
    for (const auto& note : v.notes) {
        if (note.find("realized at target state") != std::string::npos) {
            mentions_realizing_state = true;
        }
    }
    CHECK(mentions_realizing_state);
}

TEST_CASE("classify honors the mode request") {
    const Mdp m = gen_fig1();
    const int n = m.state_count();

    ModeRequest only_sure{true, false, false};
    const Verdict v = classify(m, Distribution::dirac(0), sum_spec(set_of(n, {1})),
                               Objective::kEventually, only_sure);
    CHECK_FALSE(v.sure);
    CHECK_FALSE(v.almost_sure); // not computed, stays default
    CHECK_FALSE(v.limit_sure);
    CHECK_FALSE(v.almost_witness.has_value());

    ModeRequest none{false, false, false};
    CHECK_THROWS_AS(classify(m, Distribution::dirac(0), sum_spec(set_of(n, {1})),
                             Objective::kEventually, none),
                    InputError);
}

TEST_CASE("classify validates inputs") {
    const Mdp m = gen_fig1();
    const int n = m.state_count();
    CHECK_THROWS_AS(classify(m, Distribution::dirac(0), sum_spec(StateSet(n)),
                             Objective::kEventually),
                    InputError);
    CHECK_THROWS_AS(classify(m, Distribution::dirac(0), sum_spec(set_of(3, {1})),
                             Objective::kEventually),
                    InputError);
    CHECK_THROWS_AS(classify(m, Distribution::dirac(9), sum_spec(set_of(n, {1})),
                             Objective::kEventually),
                    InputError);
}

TEST_CASE("mode monotonicity on random instances") {
    for (std::uint64_t seed = 0; seed < 60; ++seed) {
        InstanceSpec spec;
        spec.seed = seed;
        spec.state_count = 1 + static_cast<int>(seed % 4);
        spec.action_count = 2;
        const Mdp m = random_mdp(spec);
        const int n = m.state_count();
        std::mt19937_64 rng(seed ^ 0x5eed);
        StateSet target(n);
        for (int q = 0; q < n; ++q) {
            if (rng() % 2 == 0) target.set(q);
        }
        if (target.empty()) target.set(static_cast<int>(rng() % n));
        const StateId q0 = static_cast<StateId>(rng() % n);
        const auto function = rng() % 2 == 0 ? TargetFunction::kSum : TargetFunction::kMax;

        const Verdict ev = classify(m, Distribution::dirac(q0), TargetSpec{function, target},
                                    Objective::kEventually);
        if (ev.sure) CHECK(ev.almost_sure);
        if (ev.almost_sure) CHECK(ev.limit_sure);

        const Verdict al = classify(m, Distribution::dirac(q0), TargetSpec{function, target},
                                    Objective::kAlways);
        CHECK(al.sure == al.almost_sure);
        CHECK(al.almost_sure == al.limit_sure);
    }
}

TEST_CASE("verdicts are invariant under probability rescaling") {
    for (std::uint64_t seed = 100; seed < 130; ++seed) {
        InstanceSpec spec;
        spec.seed = seed;
        spec.state_count = 2 + static_cast<int>(seed % 3);
        spec.action_count = 2;
        const Mdp m = random_mdp(spec);
        const Mdp rescaled = rescale_probabilities(m, seed * 31 + 7);
        const int n = m.state_count();
        std::mt19937_64 rng(seed);
        StateSet target(n);
        target.set(static_cast<int>(rng() % n));
        const StateId q0 = static_cast<StateId>(rng() % n);

        const Verdict a = classify(m, Distribution::dirac(q0), sum_spec(target),
                                   Objective::kEventually);
        const Verdict b = classify(rescaled, Distribution::dirac(q0), sum_spec(target),
                                   Objective::kEventually);
        CHECK(a.sure == b.sure);
        CHECK(a.almost_sure == b.almost_sure);
        CHECK(a.limit_sure == b.limit_sure);
    }
}

TEST_CASE("target spec validation") {
    const Mdp m = gen_fig1();
    CHECK_THROWS_AS(require_valid(sum_spec(StateSet(4)), m), InputError);
    CHECK_THROWS_AS(require_valid(sum_spec(set_of(3, {0})), m), InputError);
    CHECK_NOTHROW(require_valid(sum_spec(set_of(4, {0})), m));
}
