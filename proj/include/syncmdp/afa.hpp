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

#include <string>
#include <vector>

#include "syncmdp/mdp.hpp"
#include "syncmdp/state_set.hpp"

namespace syncmdp {

/// One-letter alternating finite automaton. The transition formula of each
/// state is kept in disjunctive normal form: a list of clauses, each clause a
/// non-empty conjunction of states. Words are unary, so the only question
/// about a word is its length; acceptance-set iteration answers everything.
struct Afa {
    std::vector<std::string> state_names;
    /// transitions[q] = DNF clause list; canonical form is sorted + deduped.
    std::vector<std::vector<StateSet>> transitions;
    StateSet accepting;

    int state_count() const { return static_cast<int>(state_names.size()); }
    StateId state_index(const std::string& name) const;
};

/// Sort each clause list and remove duplicate clauses. Clause order carries
/// no meaning; canonical form makes equality and serialization stable.
Afa canonicalize(const Afa& afa);

std::vector<std::string> validate(const Afa& afa);
void require_valid(const Afa& afa);

/// States accepting the unary word of length n: Acc(0) = F and
/// Acc(n) = { q | some clause of q is contained in Acc(n-1) }.
StateSet acc(const Afa& afa, std::size_t n);

/// Lasso of the acceptance-set sequence Acc(0), Acc(1), ...
Lasso acc_lasso(const Afa& afa, std::size_t iteration_cap = kDefaultIterationCap);

/// True iff the language of the automaton started in q is empty, i.e. q lies
/// in no acceptance set at all.
bool emptiness(const Afa& afa, StateId q);

/// True iff the language started in q is finite, i.e. q lies in no
/// acceptance set of the periodic part.
bool finiteness(const Afa& afa, StateId q);

/// True iff the languages of all states are finite. Acceptance sets are
/// monotone under emptiness: once some Acc(n) is empty all later ones are,
/// so this holds iff an empty item appears in the lasso.
bool universal_finiteness(const Afa& afa);

/// Add the self-loop clause {q} to state q (if not already present):
/// the language of q in the result is finite iff it was empty before.
Afa gadget_emptiness_to_finiteness(const Afa& afa, StateId q);

/// Prime-cycle gadget: adds a hub state "x" and one cycle C_i of length p_i
/// (the i-th prime, p_1 = 2) per original state. Every original clause is
/// augmented with x, q0 gets a self-loop disjunct, the hub feeds the cycle
/// heads, and all cycle states except each cycle's last are accepting. The
/// hub stays accepting for exactly p_1 * ... * p_n steps unless the original
/// automaton keeps q0 accepting somewhere: the language of q0 is empty iff
/// every state of the result has a finite language.
Afa gadget_emptiness_to_universal_finiteness(const Afa& afa, StateId q0);

/// Interpret clauses as uniform distributions: action a_k plays the k-th
/// clause (states with fewer clauses repeat their last one). Acceptance sets
/// of the automaton coincide with controllable predecessors of F in the
/// result: Acc(n) = pre^n(F).
Mdp afa_to_mdp(const Afa& afa);

/// Inverse direction: clause list of q = { post(q, a) | a }; accepting = t.
Afa mdp_to_afa(const Mdp& mdp, const StateSet& t);

} // namespace syncmdp
