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

#include <cstdint>
#include <utility>

#include "syncmdp/afa.hpp"
#include "syncmdp/mdp.hpp"

namespace syncmdp {

/// Parameters for seed-deterministic random instances.
struct InstanceSpec {
    std::uint64_t seed = 0;
    int state_count = 1;
    int action_count = 1;
    /// Probability that a state joins a successor support / clause.
    Rational density = Rational(1, 2);
};

/// Four-state chain q0 -> q1 -> q2 -> q3 with a coin at q0 (both actions
/// move to q1 with probability 1/2, else stay), a at q1 loops, b at q1 moves
/// on. Separates the sure, almost-sure and limit-sure eventually modes.
Mdp gen_fig1();

/// Three-state loop q0 -> q1 -> q2 -> q0 with the same coin at q0; the
/// canonical instance where almost-sure winning needs infinite memory.
Mdp gen_fig5();

/// Synchronizing family with exponentially long minimal sure horizons:
/// q0 splits uniformly into n disjoint a-cycles whose lengths are the first
/// n primes; b moves the last state of each cycle to qT and every other
/// cycle state to qbot; qT drains to the absorbing qbot. The minimal sure
/// horizon for target qT is 1 + (product of the first n primes).
Mdp gen_mn(int n);

/// Hardness reduction from sure-eventually to almost-sure-eventually:
/// a copy of the input plus fresh states phat and sink, reachable only by a
/// fresh action #; # moves q_hat to phat and every other original state to
/// sink, and phat drains to sink. From any initial state, sure-eventually
/// synchronizing in q_hat (input) iff almost-sure in phat (output).
/// Returns the extended MDP and the index of phat.
std::pair<Mdp, StateId> gen_almost_hardness(const Mdp& mdp, StateId q_hat);

/// Hardness reduction from predecessor-sequence nonemptiness to limit-sure:
/// a copy of the input plus a fresh state qinit with self-loops on original
/// actions; the fresh action # maps qinit uniformly onto the original
/// states and every original state back to qinit. For any target t inside
/// the original states: pre^n(t) is nonempty for all n (input) iff qinit is
/// limit-sure eventually synchronizing in t (output).
/// Returns the extended MDP and the index of qinit.
std::pair<Mdp, StateId> gen_limit_hardness(const Mdp& mdp);

/// Seed-deterministic random MDP: every row gets a nonempty support drawn
/// with the given density and exact rational weights from small integers.
Mdp random_mdp(const InstanceSpec& spec);

/// Seed-deterministic random 1L-AFA with 1 to 3 clauses per state.
Afa random_afa(const InstanceSpec& spec);

} // namespace syncmdp
