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
#include "syncmdp/generators.hpp"

#include <algorithm>
#include <random>
#include <string>
#include <vector>

#include "syncmdp/errors.hpp"

namespace syncmdp {
namespace {

std::string fresh_name(const std::vector<std::string>& taken, std::string base) {
    while (std::find(taken.begin(), taken.end(), base) != taken.end()) base += "_";
    return base;
}

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

/// Exact Bernoulli draw with rational success probability.
bool draw(std::mt19937_64& rng, const Rational& p) {
    const unsigned long den = p.get_den().get_ui();
    const unsigned long num = p.get_num().get_ui();
    return rng() % den < num;
}

void check_spec(const InstanceSpec& spec) {
    if (spec.state_count < 1 || spec.action_count < 1) {
        throw InputError("instance spec needs at least one state and one action");
    }
    if (spec.density <= 0 || spec.density > 1) {
        throw InputError("instance density must lie in (0, 1]");
    }
}

} // namespace

Mdp gen_fig1() {
    Mdp m;
    m.state_names = {"q0", "q1", "q2", "q3"};
    m.action_names = {"a", "b"};
    const Rational half(1, 2);
    Distribution coin({{0, half}, {1, half}});
    m.rows = {
        {coin, coin},
        {Distribution::dirac(1), Distribution::dirac(2)},
        {Distribution::dirac(3), Distribution::dirac(3)},
        {Distribution::dirac(3), Distribution::dirac(3)},
    };
    return m;
}

Mdp gen_fig5() {
    Mdp m;
    m.state_names = {"q0", "q1", "q2"};
    m.action_names = {"a", "b"};
    const Rational half(1, 2);
    Distribution coin({{0, half}, {1, half}});
    m.rows = {
        {coin, coin},
        {Distribution::dirac(1), Distribution::dirac(2)},
        {Distribution::dirac(0), Distribution::dirac(0)},
    };
    return m;
}

Mdp gen_mn(int n) {
    if (n < 1) throw InputError("the synchronizing family needs n >= 1");
    const std::vector<int> primes = first_primes(n);

    Mdp m;
    m.action_names = {"a", "b"};
    m.state_names.push_back("q0");
    std::vector<int> cycle_start(n);
    for (int i = 0; i < n; ++i) {
        cycle_start[i] = m.state_count();
        for (int j = 1; j <= primes[i]; ++j) {
            m.state_names.push_back("c_" + std::to_string(i + 1) + "_" + std::to_string(j));
        }
    }
    const StateId target = m.state_count();
    m.state_names.push_back("qT");
    const StateId bottom = m.state_count();
    m.state_names.push_back("qbot");

    m.rows.resize(m.state_count());
    StateSet heads(m.state_count());
    for (int i = 0; i < n; ++i) heads.set(cycle_start[i]);
    m.rows[0] = {Distribution::uniform(heads), Distribution::uniform(heads)};
    for (int i = 0; i < n; ++i) {
        for (int j = 0; j < primes[i]; ++j) {
            const StateId here = cycle_start[i] + j;
            const bool last = j == primes[i] - 1;
            const StateId around = last ? cycle_start[i] : here + 1;
            m.rows[here] = {Distribution::dirac(around),
                            Distribution::dirac(last ? target : bottom)};
        }
    }
    m.rows[target] = {Distribution::dirac(bottom), Distribution::dirac(bottom)};
    m.rows[bottom] = {Distribution::dirac(bottom), Distribution::dirac(bottom)};
    return m;
}

std::pair<Mdp, StateId> gen_almost_hardness(const Mdp& mdp, StateId q_hat) {
    require_valid(mdp);
    if (q_hat < 0 || q_hat >= mdp.state_count()) {
        throw InputError("unknown state index " + std::to_string(q_hat));
    }

    Mdp out = mdp;
    const StateId phat = out.state_count();
    out.state_names.push_back(fresh_name(out.state_names, "phat"));
    const StateId sink = out.state_count();
    out.state_names.push_back(fresh_name(out.state_names, "sink"));
    out.action_names.push_back(fresh_name(out.action_names, "#"));

    for (StateId q = 0; q < mdp.state_count(); ++q) {
        out.rows[q].push_back(Distribution::dirac(q == q_hat ? phat : sink));
    }
    out.rows.push_back(
        std::vector<Distribution>(out.action_count(), Distribution::dirac(sink)));
    out.rows.push_back(
        std::vector<Distribution>(out.action_count(), Distribution::dirac(sink)));
    return {out, phat};
}

std::pair<Mdp, StateId> gen_limit_hardness(const Mdp& mdp) {
    require_valid(mdp);

    Mdp out = mdp;
    const StateId init = out.state_count();
    out.state_names.push_back(fresh_name(out.state_names, "qinit"));
    out.action_names.push_back(fresh_name(out.action_names, "#"));

    for (StateId q = 0; q < mdp.state_count(); ++q) {
        out.rows[q].push_back(Distribution::dirac(init));
    }
    StateSet originals(out.state_count());
    for (StateId q = 0; q < mdp.state_count(); ++q) originals.set(q);
    std::vector<Distribution> init_row(mdp.action_count(), Distribution::dirac(init));
    init_row.push_back(Distribution::uniform(originals));
    out.rows.push_back(std::move(init_row));
    return {out, init};
}

Mdp random_mdp(const InstanceSpec& spec) {
    check_spec(spec);
    std::mt19937_64 rng(spec.seed);

    Mdp m;
    for (int q = 0; q < spec.state_count; ++q) m.state_names.push_back("s" + std::to_string(q));
    for (int a = 0; a < spec.action_count; ++a) {
        m.action_names.push_back("a" + std::to_string(a));
    }
    m.rows.resize(spec.state_count);
    for (int q = 0; q < spec.state_count; ++q) {
        for (int a = 0; a < spec.action_count; ++a) {
            std::vector<StateId> support;
            for (int succ = 0; succ < spec.state_count; ++succ) {
                if (draw(rng, spec.density)) support.push_back(succ);
            }
            if (support.empty()) {
                support.push_back(static_cast<StateId>(rng() % spec.state_count));
            }
            std::vector<unsigned long> weights;
            unsigned long total = 0;
            for (std::size_t i = 0; i < support.size(); ++i) {
                weights.push_back(rng() % 8 + 1);
                total += weights.back();
            }
            std::vector<std::pair<StateId, Rational>> entries;
            for (std::size_t i = 0; i < support.size(); ++i) {
                Rational weight(weights[i], total);
                weight.canonicalize();
                entries.emplace_back(support[i], std::move(weight));
            }
            m.rows[q].push_back(Distribution(std::move(entries)));
        }
    }
    return m;
}

Afa random_afa(const InstanceSpec& spec) {
    check_spec(spec);
    std::mt19937_64 rng(spec.seed);

    Afa afa;
    for (int q = 0; q < spec.state_count; ++q) {
        afa.state_names.push_back("s" + std::to_string(q));
    }
    afa.transitions.resize(spec.state_count);
    for (int q = 0; q < spec.state_count; ++q) {
        const int clauses = static_cast<int>(rng() % 3) + 1;
        for (int c = 0; c < clauses; ++c) {
            StateSet clause(spec.state_count);
            for (int member = 0; member < spec.state_count; ++member) {
                if (draw(rng, spec.density)) clause.set(member);
            }
            if (clause.empty()) clause.set(static_cast<int>(rng() % spec.state_count));
            afa.transitions[q].push_back(clause);
        }
    }
    afa.accepting = StateSet(spec.state_count);
    for (int q = 0; q < spec.state_count; ++q) {
        if (draw(rng, Rational(1, 2))) afa.accepting.set(q);
    }
    return canonicalize(afa);
}

} // namespace syncmdp
