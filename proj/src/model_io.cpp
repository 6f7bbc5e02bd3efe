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
#include "syncmdp/model_io.hpp"

#include <fstream>
#include <map>
#include <sstream>

#include <json.hpp>

#include "syncmdp/errors.hpp"

namespace syncmdp {
namespace {

using nlohmann::json;

json parse_document(const std::string& text) {
    try {
        return json::parse(text);
    } catch (const json::parse_error& err) {
        throw InputError(std::string("malformed JSON: ") + err.what());
    }
}

const json& expect(const json& doc, const char* key, const char* context) {
    if (!doc.is_object()) {
        throw InputError(std::string(context) + ": expected a JSON object");
    }
    auto it = doc.find(key);
    if (it == doc.end()) {
        throw InputError(std::string(context) + ": missing key \"" + key + "\"");
    }
    return *it;
}

std::vector<std::string> parse_name_array(const json& value, const char* context) {
    if (!value.is_array()) {
        throw InputError(std::string(context) + ": expected an array of names");
    }
    std::vector<std::string> names;
    names.reserve(value.size());
    for (const auto& item : value) {
        if (!item.is_string()) {
            throw InputError(std::string(context) + ": names must be strings");
        }
        names.push_back(item.get<std::string>());
    }
    return names;
}

/// Name -> dense index map, rejecting duplicates.
std::map<std::string, int> index_names(const std::vector<std::string>& names,
                                       const char* context) {
    std::map<std::string, int> index;
    for (int i = 0; i < static_cast<int>(names.size()); ++i) {
        if (!index.emplace(names[i], i).second) {
            throw InputError(std::string(context) + ": duplicate name \"" + names[i] + "\"");
        }
    }
    return index;
}

int lookup(const std::map<std::string, int>& index, const std::string& name,
           const char* context) {
    auto it = index.find(name);
    if (it == index.end()) {
        throw InputError(std::string(context) + ": unknown name \"" + name + "\"");
    }
    return it->second;
}

Distribution parse_distribution(const json& value, const std::map<std::string, int>& states,
                                const char* context) {
    if (!value.is_object()) {
        throw InputError(std::string(context) + ": expected {state: \"num/den\"}");
    }
    std::vector<std::pair<StateId, Rational>> entries;
    entries.reserve(value.size());
    for (const auto& [name, weight] : value.items()) {
        if (!weight.is_string()) {
            throw InputError(std::string(context) + ": probabilities must be \"num/den\" strings");
        }
        entries.emplace_back(lookup(states, name, context),
                             parse_fraction(weight.get<std::string>()));
    }
    return Distribution(std::move(entries));
}

json distribution_to_json(const Distribution& dist, const std::vector<std::string>& names) {
    json object = json::object();
    for (const auto& [state, p] : dist.entries()) {
        object[names[static_cast<std::size_t>(state)]] = fraction_string(p);
    }
    return object;
}

std::string dump_document(const json& doc) {
    return doc.dump(2) + "\n";
}

/// Transducer body shared by strategy and schedule documents: mode list,
/// initial mode by name, sparse next-move and update tables keyed by names.
json transducer_to_json(const Transducer& strat, const Mdp& mdp) {
    json body = json::object();
    body["modes"] = strat.mode_names;
    body["initial_mode"] = strat.mode_names[static_cast<std::size_t>(strat.initial_mode)];

    json moves = json::object();
    for (int m = 0; m < strat.mode_count(); ++m) {
        json row = json::object();
        for (int q = 0; q < mdp.state_count(); ++q) {
            const Distribution& move = strat.next_move[static_cast<std::size_t>(m)]
                                                      [static_cast<std::size_t>(q)];
            if (move.empty()) continue;
            row[mdp.state_names[static_cast<std::size_t>(q)]] =
                distribution_to_json(move, mdp.action_names);
        }
        if (!row.empty()) moves[strat.mode_names[static_cast<std::size_t>(m)]] = row;
    }
    body["next_move"] = moves;

    json update = json::object();
    for (int m = 0; m < strat.mode_count(); ++m) {
        json by_action = json::object();
        for (int a = 0; a < mdp.action_count(); ++a) {
            json by_state = json::object();
            for (int q = 0; q < mdp.state_count(); ++q) {
                int next = strat.update[static_cast<std::size_t>(m)]
                                       [static_cast<std::size_t>(a)]
                                       [static_cast<std::size_t>(q)];
                if (next < 0) continue;
                by_state[mdp.state_names[static_cast<std::size_t>(q)]] =
                    strat.mode_names[static_cast<std::size_t>(next)];
            }
            if (!by_state.empty()) {
                by_action[mdp.action_names[static_cast<std::size_t>(a)]] = by_state;
            }
        }
        if (!by_action.empty()) update[strat.mode_names[static_cast<std::size_t>(m)]] = by_action;
    }
    body["update"] = update;
    return body;
}

Transducer transducer_from_json(const json& body, const std::vector<std::string>& state_names,
                                const std::vector<std::string>& action_names,
                                const char* context) {
    Transducer strat;
    strat.mode_names = parse_name_array(expect(body, "modes", context), context);
    if (strat.mode_names.empty()) {
        throw InputError(std::string(context) + ": a transducer needs at least one mode");
    }
    const auto modes = index_names(strat.mode_names, context);
    const auto states = index_names(state_names, context);
    const auto actions = index_names(action_names, context);

    const json& initial = expect(body, "initial_mode", context);
    if (!initial.is_string()) {
        throw InputError(std::string(context) + ": initial_mode must be a mode name");
    }
    strat.initial_mode = lookup(modes, initial.get<std::string>(), context);

    const std::size_t mode_count = strat.mode_names.size();
    strat.next_move.assign(mode_count, std::vector<Distribution>(state_names.size()));
    strat.update.assign(mode_count,
                        std::vector<std::vector<int>>(
                            action_names.size(), std::vector<int>(state_names.size(), -1)));

    const json& moves = expect(body, "next_move", context);
    if (!moves.is_object()) {
        throw InputError(std::string(context) + ": next_move must be an object");
    }
    for (const auto& [mode_name, row] : moves.items()) {
        const int m = lookup(modes, mode_name, context);
        if (!row.is_object()) {
            throw InputError(std::string(context) + ": next_move rows must be objects");
        }
        for (const auto& [state_name, move] : row.items()) {
            const int q = lookup(states, state_name, context);
            strat.next_move[static_cast<std::size_t>(m)][static_cast<std::size_t>(q)] =
                parse_distribution(move, actions, context);
        }
    }

    const json& update = expect(body, "update", context);
    if (!update.is_object()) {
        throw InputError(std::string(context) + ": update must be an object");
    }
    for (const auto& [mode_name, by_action] : update.items()) {
        const int m = lookup(modes, mode_name, context);
        if (!by_action.is_object()) {
            throw InputError(std::string(context) + ": update rows must be objects");
        }
        for (const auto& [action_name, by_state] : by_action.items()) {
            const int a = lookup(actions, action_name, context);
            if (!by_state.is_object()) {
                throw InputError(std::string(context) + ": update cells must be objects");
            }
            for (const auto& [state_name, next_mode] : by_state.items()) {
                const int q = lookup(states, state_name, context);
                if (!next_mode.is_string()) {
                    throw InputError(std::string(context) + ": update targets must be mode names");
                }
                strat.update[static_cast<std::size_t>(m)][static_cast<std::size_t>(a)]
                            [static_cast<std::size_t>(q)] =
                    lookup(modes, next_mode.get<std::string>(), context);
            }
        }
    }
    return strat;
}

json strategy_header(const Mdp& mdp, const char* type) {
    json doc = json::object();
    doc["type"] = type;
    doc["states"] = mdp.state_names;
    doc["actions"] = mdp.action_names;
    return doc;
}

} // namespace

ModelFile parse_model(const std::string& text) {
    const json doc = parse_document(text);
    ModelFile model;
    model.mdp.state_names = parse_name_array(expect(doc, "states", "model"), "model states");
    model.mdp.action_names = parse_name_array(expect(doc, "actions", "model"), "model actions");
    const auto states = index_names(model.mdp.state_names, "model states");
    const auto actions = index_names(model.mdp.action_names, "model actions");
    if (model.mdp.state_names.empty()) throw InputError("model: empty state list");
    if (model.mdp.action_names.empty()) throw InputError("model: empty action list");

    model.mdp.rows.assign(model.mdp.state_names.size(),
                          std::vector<Distribution>(model.mdp.action_names.size()));
    const json& transitions = expect(doc, "transitions", "model");
    if (!transitions.is_object()) throw InputError("model transitions: expected an object");
    for (const auto& [state_name, row] : transitions.items()) {
        const int q = lookup(states, state_name, "model transitions");
        if (!row.is_object()) {
            throw InputError("model transitions: row for \"" + state_name +
                             "\" must be an object");
        }
        for (const auto& [action_name, dist] : row.items()) {
            const int a = lookup(actions, action_name, "model transitions");
            model.mdp.rows[static_cast<std::size_t>(q)][static_cast<std::size_t>(a)] =
                parse_distribution(dist, states,
                                   ("model transitions for \"" + state_name + "\"").c_str());
        }
    }
    require_valid(model.mdp);

    if (doc.contains("initial")) {
        model.initial = parse_distribution(doc.at("initial"), states, "model initial");
    }
    return model;
}

std::string serialize_model(const ModelFile& model) {
    json doc = json::object();
    doc["states"] = model.mdp.state_names;
    doc["actions"] = model.mdp.action_names;
    json transitions = json::object();
    for (int q = 0; q < model.mdp.state_count(); ++q) {
        json row = json::object();
        for (int a = 0; a < model.mdp.action_count(); ++a) {
            row[model.mdp.action_names[static_cast<std::size_t>(a)]] = distribution_to_json(
                model.mdp.rows[static_cast<std::size_t>(q)][static_cast<std::size_t>(a)],
                model.mdp.state_names);
        }
        transitions[model.mdp.state_names[static_cast<std::size_t>(q)]] = row;
    }
    doc["transitions"] = transitions;
    if (model.initial) {
        doc["initial"] = distribution_to_json(*model.initial, model.mdp.state_names);
    }
    return dump_document(doc);
}

Afa parse_afa_file(const std::string& text) {
    const json doc = parse_document(text);
    Afa afa;
    afa.state_names = parse_name_array(expect(doc, "states", "automaton"), "automaton states");
    if (afa.state_names.empty()) throw InputError("automaton: empty state list");
    const auto states = index_names(afa.state_names, "automaton states");
    const int n = static_cast<int>(afa.state_names.size());

    afa.accepting = StateSet(n);
    for (const auto& name :
         parse_name_array(expect(doc, "accepting", "automaton"), "automaton accepting")) {
        afa.accepting.set(lookup(states, name, "automaton accepting"));
    }

    afa.transitions.assign(afa.state_names.size(), {});
    const json& delta = expect(doc, "delta", "automaton");
    if (!delta.is_object()) throw InputError("automaton delta: expected an object");
    for (const auto& [state_name, clauses] : delta.items()) {
        const int q = lookup(states, state_name, "automaton delta");
        if (!clauses.is_array()) {
            throw InputError("automaton delta: clauses for \"" + state_name +
                             "\" must be an array");
        }
        for (const auto& clause : clauses) {
            StateSet members(n);
            for (const auto& name : parse_name_array(clause, "automaton delta clause")) {
                members.set(lookup(states, name, "automaton delta clause"));
            }
            afa.transitions[static_cast<std::size_t>(q)].push_back(members);
        }
    }
    const auto problems = validate(afa);
    if (!problems.empty()) throw InputError("automaton: " + problems.front());
    return afa;
}

std::string serialize_afa_file(const Afa& afa) {
    json doc = json::object();
    doc["states"] = afa.state_names;
    json accepting = json::array();
    for (int q : afa.accepting.members()) {
        accepting.push_back(afa.state_names[static_cast<std::size_t>(q)]);
    }
    doc["accepting"] = accepting;
    json delta = json::object();
    for (std::size_t q = 0; q < afa.state_names.size(); ++q) {
        json clauses = json::array();
        for (const StateSet& clause : afa.transitions[q]) {
            json names = json::array();
            for (int member : clause.members()) {
                names.push_back(afa.state_names[static_cast<std::size_t>(member)]);
            }
            clauses.push_back(names);
        }
        delta[afa.state_names[q]] = clauses;
    }
    doc["delta"] = delta;
    return dump_document(doc);
}

StrategyFile parse_strategy(const std::string& text) {
    const json doc = parse_document(text);
    const json& type = expect(doc, "type", "strategy");
    if (!type.is_string()) throw InputError("strategy: type must be a string");
    StrategyFile file;
    file.state_names = parse_name_array(expect(doc, "states", "strategy"), "strategy states");
    file.action_names = parse_name_array(expect(doc, "actions", "strategy"), "strategy actions");

    const std::string kind = type.get<std::string>();
    if (kind == "transducer") {
        file.payload = transducer_from_json(doc, file.state_names, file.action_names, "strategy");
    } else if (kind == "schedule") {
        const json& segments = expect(doc, "segments", "schedule");
        if (!segments.is_array() || segments.empty()) {
            throw InputError("schedule: segments must be a non-empty array");
        }
        EpsilonSchedule schedule;
        for (const auto& segment : segments) {
            ScheduleSegment parsed;
            const json& epsilon = expect(segment, "epsilon", "schedule segment");
            if (!epsilon.is_string()) {
                throw InputError("schedule segment: epsilon must be a \"num/den\" string");
            }
            parsed.epsilon = parse_fraction(epsilon.get<std::string>());
            const json& horizon = expect(segment, "horizon", "schedule segment");
            if (!horizon.is_number_unsigned()) {
                throw InputError("schedule segment: horizon must be a non-negative integer");
            }
            parsed.horizon = horizon.get<std::size_t>();
            parsed.transducer = transducer_from_json(segment, file.state_names,
                                                     file.action_names, "schedule segment");
            schedule.segments.push_back(std::move(parsed));
        }
        file.payload = std::move(schedule);
    } else {
        throw InputError("strategy: unknown type \"" + kind + "\"");
    }
    return file;
}

std::string serialize_strategy(const Mdp& mdp, const Transducer& strat) {
    json doc = strategy_header(mdp, "transducer");
    doc.update(transducer_to_json(strat, mdp));
    return dump_document(doc);
}

std::string serialize_schedule(const Mdp& mdp, const EpsilonSchedule& schedule) {
    json doc = strategy_header(mdp, "schedule");
    json segments = json::array();
    for (const ScheduleSegment& segment : schedule.segments) {
        json entry = transducer_to_json(segment.transducer, mdp);
        entry["epsilon"] = fraction_string(segment.epsilon);
        entry["horizon"] = segment.horizon;
        segments.push_back(entry);
    }
    doc["segments"] = segments;
    return dump_document(doc);
}

std::string read_text_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw InputError("cannot open file: " + path);
    std::ostringstream buffer;
    buffer << in.rdbuf();
    if (in.bad()) throw InputError("cannot read file: " + path);
    return buffer.str();
}

void write_text_file(const std::string& path, const std::string& content) {
    std::ofstream out(path, std::ios::binary | std::ios::trunc);
    if (!out) throw InputError("cannot open file for writing: " + path);
    out << content;
    out.flush();
    if (!out) throw InputError("cannot write file: " + path);
}

} // namespace syncmdp
