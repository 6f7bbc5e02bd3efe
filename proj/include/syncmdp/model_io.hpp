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

#include <optional>
#include <string>
#include <variant>
#include <vector>

#include "syncmdp/afa.hpp"
#include "syncmdp/mdp.hpp"
#include "syncmdp/strategy.hpp"

namespace syncmdp {

/// An MDP as stored on disk, together with its optional initial distribution.
struct ModelFile {
    Mdp mdp;
    std::optional<Distribution> initial;
};

/// Parses a model document:
///   {"states": [names], "actions": [names],
///    "transitions": {state: {action: {state: "num/den"}}},
///    "initial": {state: "num/den"}}        // optional
/// Throws InputError on malformed JSON, unknown names, or bad distributions.
ModelFile parse_model(const std::string& text);

/// Canonical serialization; parse_model(serialize_model(m)) reproduces m
/// exactly and the output is byte-stable for a fixed input.
std::string serialize_model(const ModelFile& model);

/// Parses an alternating automaton document:
///   {"states": [names], "accepting": [names],
///    "delta": {state: [[clause states], ...]}}
Afa parse_afa_file(const std::string& text);

std::string serialize_afa_file(const Afa& afa);

/// A strategy artifact: either a single transducer or an epsilon schedule,
/// always carrying the state/action name tables of the model it was built
/// for, so simulation can reject a mismatched model.
struct StrategyFile {
    std::vector<std::string> state_names;
    std::vector<std::string> action_names;
    std::variant<Transducer, EpsilonSchedule> payload;
};

StrategyFile parse_strategy(const std::string& text);

std::string serialize_strategy(const Mdp& mdp, const Transducer& strat);

std::string serialize_schedule(const Mdp& mdp, const EpsilonSchedule& schedule);

/// Whole-file helpers; both throw InputError on I/O failure.
std::string read_text_file(const std::string& path);
void write_text_file(const std::string& path, const std::string& content);

} // namespace syncmdp
