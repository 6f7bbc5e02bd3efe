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

#include "syncmdp/mdp.hpp"

namespace syncmdp {

/// Size guard for the forward support-set search.
inline constexpr int kDefaultOracleStateCap = 12;

/// Guard on the number of counting strategies the enumeration oracle visits.
inline constexpr std::uint64_t kDefaultEnumerationBudget = 1000000;

/// Independent check of sure-eventually synchronization: breadth-first
/// search over support sets from {q0}, stepping S to the union of the
/// successors of its members under one common action; true iff some
/// reachable support lies inside t. Never uses predecessor computations.
bool oracle_sure_eventually(const Mdp& mdp, StateId q0, const StateSet& t,
                            int state_cap = kDefaultOracleStateCap);

/// Exact supremum, over all pure counting strategies (step, state) -> action
/// up to the horizon and over all steps within it, of the mass inside t.
/// A lower bound on the unrestricted supremum; the enumeration size
/// |A|^(horizon * |Q|) must stay within the budget.
Rational oracle_bounded_counting_sup(const Mdp& mdp, StateId q0, const StateSet& t,
                                     std::size_t horizon,
                                     std::uint64_t budget = kDefaultEnumerationBudget);

} // namespace syncmdp
