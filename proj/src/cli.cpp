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
#include "syncmdp/cli.hpp"

#include <cstdint>
#include <sstream>
#include <string>
#include <variant>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "syncmdp/errors.hpp"
#include "syncmdp/generators.hpp"
#include "syncmdp/model_io.hpp"
#include "syncmdp/strategy.hpp"
#include "syncmdp/sync.hpp"

namespace syncmdp {
namespace {

using ordered = nlohmann::ordered_json;

/// Initial distribution: --from (state name, or "state=num/den,..." list),
/// falling back to the model file's "initial" entry.
Distribution initial_from(const ModelFile& model, const std::string& from) {
    if (!from.empty()) {
        if (from.find('=') == std::string::npos) {
            return Distribution::dirac(model.mdp.state_index(from));
        }
        std::vector<std::pair<StateId, Rational>> entries;
        std::stringstream stream(from);
        std::string item;
        while (std::getline(stream, item, ',')) {
            const auto eq = item.find('=');
            if (eq == std::string::npos || eq == 0) {
                throw InputError("--from entries must look like state=num/den");
            }
            entries.emplace_back(model.mdp.state_index(item.substr(0, eq)),
                                 parse_fraction(item.substr(eq + 1)));
        }
        return Distribution(std::move(entries));
    }
    if (model.initial) return *model.initial;
    throw InputError("no initial distribution: give --from or an \"initial\" model entry");
}

ordered name_array(const StateSet& set, const std::vector<std::string>& names) {
    ordered array = ordered::array();
    for (int q : set.members()) array.push_back(names[static_cast<std::size_t>(q)]);
    return array;
}

TargetFunction parse_function(const std::string& text) {
    return text == "sum" ? TargetFunction::kSum : TargetFunction::kMax;
}

Objective parse_objective(const std::string& text) {
    return text == "always" ? Objective::kAlways : Objective::kEventually;
}

struct DecideArgs {
    std::string model_path;
    std::string objective;
    std::string mode;
    std::string function;
    std::vector<std::string> target;
    std::string from;
};

int cmd_decide(const DecideArgs& args, std::ostream& out) {
    const ModelFile model = parse_model(read_text_file(args.model_path));
    const Distribution mu0 = initial_from(model, args.from);
    const TargetSpec spec{parse_function(args.function), model.mdp.set_of_names(args.target)};

    ModeRequest modes;
    if (args.mode != "all") {
        modes = ModeRequest{args.mode == "sure", args.mode == "almost", args.mode == "limit"};
    }
    const Verdict verdict = classify(model.mdp, mu0, spec, parse_objective(args.objective), modes);

    ordered doc = ordered::object();
    if (modes.sure) {
        doc["sure"] = verdict.sure;
        if (verdict.sure_witness) doc["sure_horizon"] = *verdict.sure_witness;
    }
    if (modes.almost) {
        doc["almost"] = verdict.almost_sure;
        if (verdict.almost_witness) {
            doc["almost_witness"] = name_array(*verdict.almost_witness,
                                               verdict.witness_state_names);
        }
    }
    if (modes.limit) {
        doc["limit"] = verdict.limit_sure;
        if (verdict.limit_witness) {
            const LimitWitness& witness = *verdict.limit_witness;
            ordered entry = ordered::object();
            entry["via_sure"] = witness.via_sure;
            if (witness.via_sure) {
                entry["horizon"] = witness.prefix_len;
            } else {
                entry["prefix"] = witness.prefix_len;
                entry["period"] = witness.period;
                entry["position"] = witness.position;
                entry["r_set"] = name_array(witness.r_set, verdict.witness_state_names);
                entry["z_set"] = name_array(witness.z_set, verdict.witness_state_names);
            }
            doc["limit_witness"] = entry;
        }
    }
    if (!verdict.notes.empty()) doc["notes"] = verdict.notes;
    out << doc.dump(2) << "\n";
    return kExitOk;
}

struct SynthesizeArgs {
    std::string model_path;
    std::string objective;
    std::string mode;
    std::string function;
    std::vector<std::string> target;
    std::string from;
    std::string epsilon;
    int depth = 3;
    std::string out_path;
};

/// max synchronization wins through a single target state; pick the first
/// one winning in the requested mode and synthesize toward it.
StateSet resolve_max_target(const Mdp& mdp, StateId q0, const StateSet& target,
                            const std::string& mode) {
    for (int q : target.members()) {
        StateSet singleton(mdp.state_count());
        singleton.set(q);
        bool winning = false;
        if (mode == "sure") {
            winning = decide_sure_eventually(mdp, q0, singleton).first;
        } else if (mode == "almost") {
            winning = decide_almost_sure(mdp, q0, singleton).first;
        } else {
            winning = decide_limit_sure(mdp, q0, singleton).winning;
        }
        if (winning) return singleton;
    }
    throw NotWinningError("no single target state is " + mode +
                          " winning, so max synchronization fails");
}

int cmd_synthesize(const SynthesizeArgs& args, std::ostream& out) {
    const ModelFile model = parse_model(read_text_file(args.model_path));
    const Distribution mu0 = initial_from(model, args.from);
    const TargetFunction function = parse_function(args.function);
    const StateSet target = model.mdp.set_of_names(args.target);
    const TargetSpec spec{function, target};
    const Objective objective = parse_objective(args.objective);

    std::string artifact;
    ordered report = ordered::object();

    if (objective == Objective::kAlways) {
        const Transducer strat = synth_always(model.mdp, mu0, spec);
        const Rational value =
            function == TargetFunction::kSum ? mu0.mass(target) : mu0.max_in(target);
        artifact = serialize_strategy(model.mdp, strat);
        report["kind"] = "transducer";
        report["modes"] = strat.mode_count();
        report["step"] = 0;
        report["mass"] = fraction_string(value);
    } else {
        if (!mu0.is_dirac()) {
            throw InputError("eventually-mode synthesis starts from a single state; "
                             "give --from with one state name");
        }
        const StateId q0 = mu0.entries().front().first;
        StateSet t = target;
        if (function == TargetFunction::kMax) {
            t = resolve_max_target(model.mdp, q0, target, args.mode);
            report["target_state"] =
                model.mdp.state_names[static_cast<std::size_t>(t.members().front())];
        }

        if (args.mode == "sure") {
            const auto [strat, step] = synth_sure_eventually(model.mdp, q0, t);
            const SymbolicOutcome outcome =
                symbolic_outcome(model.mdp, Distribution::dirac(q0), strat, step);
            artifact = serialize_strategy(model.mdp, strat);
            report["kind"] = "transducer";
            report["modes"] = strat.mode_count();
            report["step"] = step;
            report["mass"] = fraction_string(outcome.back().mass(t));
        } else if (args.mode == "limit") {
            if (args.epsilon.empty()) {
                throw InputError("--epsilon is required for limit-mode synthesis");
            }
            const Rational epsilon = parse_fraction(args.epsilon);
            StateSet everything(model.mdp.state_count());
            everything = everything.complement();
            const auto [strat, step] =
                synth_limit_sure(model.mdp, q0, t, everything, epsilon);
            const SymbolicOutcome outcome =
                symbolic_outcome(model.mdp, Distribution::dirac(q0), strat, step);
            artifact = serialize_strategy(model.mdp, strat);
            report["kind"] = "transducer";
            report["modes"] = strat.mode_count();
            report["step"] = step;
            report["mass"] = fraction_string(outcome.back().mass(t));
        } else if (args.mode == "almost") {
            const EpsilonSchedule schedule =
                synth_almost_sure_schedule(model.mdp, q0, t, args.depth);
            const SymbolicOutcome outcome =
                simulate_schedule(model.mdp, Distribution::dirac(q0), schedule);
            artifact = serialize_schedule(model.mdp, schedule);
            ordered peaks = ordered::array();
            ordered horizons = ordered::array();
            std::size_t cumulative = 0;
            for (const ScheduleSegment& segment : schedule.segments) {
                cumulative += segment.horizon;
                peaks.push_back(fraction_string(outcome[cumulative].mass(t)));
                horizons.push_back(segment.horizon);
            }
            report["kind"] = "schedule";
            report["segments"] = schedule.segments.size();
            report["peaks"] = peaks;
            report["horizons"] = horizons;
        } else {
            throw InputError("synthesize needs one mode: sure, almost, or limit");
        }
    }

    write_text_file(args.out_path, artifact);
    report["out"] = args.out_path;
    out << report.dump(2) << "\n";
    return kExitOk;
}

struct SimulateArgs {
    std::string model_path;
    std::string strategy_path;
    std::size_t steps = 0;
    bool steps_given = false;
    std::string trace_path;
    std::string from;
};

std::string trace_csv(const Mdp& mdp, const SymbolicOutcome& outcome) {
    std::ostringstream csv;
    csv << "step";
    for (const std::string& name : mdp.state_names) csv << "," << name;
    csv << ",total\n";
    for (std::size_t step = 0; step < outcome.size(); ++step) {
        csv << step;
        Rational total = 0;
        for (StateId q = 0; q < mdp.state_count(); ++q) {
            const Rational value = outcome[step].at(q);
            total += value;
            csv << "," << fraction_string(value);
        }
        csv << "," << fraction_string(total) << "\n";
    }
    return csv.str();
}

int cmd_simulate(const SimulateArgs& args, std::ostream& out) {
    const ModelFile model = parse_model(read_text_file(args.model_path));
    const StrategyFile strategy = parse_strategy(read_text_file(args.strategy_path));
    if (strategy.state_names != model.mdp.state_names ||
        strategy.action_names != model.mdp.action_names) {
        throw InputError("strategy was built for a different model "
                         "(state/action name tables differ)");
    }
    const Distribution mu0 = initial_from(model, args.from);

    SymbolicOutcome outcome;
    if (std::holds_alternative<Transducer>(strategy.payload)) {
        if (!args.steps_given) {
            throw InputError("--steps is required when simulating a transducer");
        }
        outcome = symbolic_outcome(model.mdp, mu0, std::get<Transducer>(strategy.payload),
                                   args.steps);
    } else {
        outcome = simulate_schedule(model.mdp, mu0, std::get<EpsilonSchedule>(strategy.payload));
        if (args.steps_given) {
            if (args.steps >= outcome.size()) {
                throw InputError("the schedule defines only " +
                                 std::to_string(outcome.size() - 1) + " steps");
            }
            outcome.resize(args.steps + 1);
        }
    }

    const std::string csv = trace_csv(model.mdp, outcome);
    if (args.trace_path.empty()) {
        out << csv;
    } else {
        write_text_file(args.trace_path, csv);
    }
    return kExitOk;
}

struct AfaArgs {
    std::string afa_path;
    std::string operation;
    std::string state;
};

int cmd_afa(const AfaArgs& args, std::ostream& out) {
    const Afa afa = parse_afa_file(read_text_file(args.afa_path));
    ordered doc = ordered::object();
    if (args.operation == "unifinite") {
        doc["unifinite"] = universal_finiteness(afa);
    } else {
        if (args.state.empty()) {
            throw InputError("--state is required for the " + args.operation + " question");
        }
        const StateId q = afa.state_index(args.state);
        doc[args.operation] = args.operation == "empty" ? emptiness(afa, q) : finiteness(afa, q);
    }
    out << doc.dump(2) << "\n";
    return kExitOk;
}

struct GenArgs {
    std::string family;
    int n = 0;
    bool n_given = false;
    std::uint64_t seed = 0;
    int states = 3;
    int actions = 2;
    std::string density = "1/2";
    std::string q_hat;
    std::string out_path;
};

int cmd_gen(const GenArgs& args, std::ostream& out) {
    InstanceSpec spec;
    spec.seed = args.seed;
    spec.state_count = args.states;
    spec.action_count = args.actions;
    spec.density = parse_fraction(args.density);

    ModelFile model;
    if (args.family == "fig1") {
        model.mdp = gen_fig1();
        model.initial = Distribution::dirac(0);
    } else if (args.family == "fig5") {
        model.mdp = gen_fig5();
        model.initial = Distribution::dirac(0);
    } else if (args.family == "mn") {
        if (!args.n_given || args.n < 1) {
            throw InputError("--n (number of cycles, at least 1) is required for --family mn");
        }
        model.mdp = gen_mn(args.n);
        model.initial = Distribution::dirac(0);
    } else if (args.family == "random") {
        model.mdp = random_mdp(spec);
    } else if (args.family == "almost-hard") {
        const Mdp base = random_mdp(spec);
        const StateId q_hat = args.q_hat.empty() ? 0 : base.state_index(args.q_hat);
        auto [mdp, p_hat] = gen_almost_hardness(base, q_hat);
        static_cast<void>(p_hat);
        // The reduced question targets the fresh pivot successor; runs start
        // in the embedded original model.
        model.initial = Distribution::dirac(0);
        model.mdp = std::move(mdp);
    } else { // limit-hard
        auto [mdp, q_init] = gen_limit_hardness(random_mdp(spec));
        model.initial = Distribution::dirac(q_init);
        model.mdp = std::move(mdp);
    }

    const std::string text = serialize_model(model);
    if (args.out_path.empty()) {
        out << text;
    } else {
        write_text_file(args.out_path, text);
    }
    return kExitOk;
}

} // namespace

int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
    CLI::App app{"Decision and synthesis tool for synchronizing objectives in MDPs", "syncmdp"};
    app.require_subcommand(1);

    DecideArgs decide_args;
    CLI::App* decide = app.add_subcommand("decide", "Classify a synchronization objective");
    decide->add_option("model", decide_args.model_path, "model JSON file")->required();
    decide->add_option("--objective", decide_args.objective, "always or eventually")
        ->required()
        ->check(CLI::IsMember({"always", "eventually"}));
    decide->add_option("--mode", decide_args.mode, "sure, almost, limit, or all")
        ->required()
        ->check(CLI::IsMember({"sure", "almost", "limit", "all"}));
    decide->add_option("--function", decide_args.function, "sum or max")
        ->required()
        ->check(CLI::IsMember({"sum", "max"}));
    decide->add_option("--target", decide_args.target, "target states (comma separated)")
        ->required()
        ->delimiter(',');
    decide->add_option("--from", decide_args.from,
                       "initial state name or state=num/den list (default: model initial)");

    SynthesizeArgs synth_args;
    CLI::App* synthesize = app.add_subcommand("synthesize", "Produce a witness strategy");
    synthesize->add_option("model", synth_args.model_path, "model JSON file")->required();
    synthesize->add_option("--objective", synth_args.objective, "always or eventually")
        ->required()
        ->check(CLI::IsMember({"always", "eventually"}));
    synthesize->add_option("--mode", synth_args.mode, "sure, almost, or limit")
        ->required()
        ->check(CLI::IsMember({"sure", "almost", "limit"}));
    synthesize->add_option("--function", synth_args.function, "sum or max")
        ->required()
        ->check(CLI::IsMember({"sum", "max"}));
    synthesize->add_option("--target", synth_args.target, "target states (comma separated)")
        ->required()
        ->delimiter(',');
    synthesize->add_option("--from", synth_args.from,
                           "initial state name or state=num/den list (default: model initial)");
    synthesize->add_option("--epsilon", synth_args.epsilon,
                           "mass defect num/den for limit-mode synthesis");
    synthesize->add_option("--depth", synth_args.depth,
                           "schedule depth for almost-mode synthesis (epsilon halves per segment)")
        ->check(CLI::PositiveNumber);
    synthesize->add_option("--out", synth_args.out_path, "strategy JSON output file")->required();

    SimulateArgs sim_args;
    CLI::App* simulate = app.add_subcommand("simulate", "Trace a strategy symbolically");
    simulate->add_option("model", sim_args.model_path, "model JSON file")->required();
    simulate->add_option("strategy", sim_args.strategy_path, "strategy JSON file")->required();
    CLI::Option* steps_option =
        simulate->add_option("--steps", sim_args.steps, "number of steps to simulate");
    simulate->add_option("--trace", sim_args.trace_path, "trace CSV output file (default: stdout)");
    simulate->add_option("--from", sim_args.from,
                         "initial state name or state=num/den list (default: model initial)");

    AfaArgs afa_args;
    CLI::App* afa = app.add_subcommand("afa", "One-letter alternating automaton questions");
    afa->add_option("automaton", afa_args.afa_path, "automaton JSON file")->required();
    afa->add_option("operation", afa_args.operation, "empty, finite, or unifinite")
        ->required()
        ->check(CLI::IsMember({"empty", "finite", "unifinite"}));
    afa->add_option("--state", afa_args.state, "state the question is asked for");

    GenArgs gen_args;
    CLI::App* gen = app.add_subcommand("gen", "Generate a model from a named family");
    gen->add_option("--family", gen_args.family,
                    "fig1, fig5, mn, almost-hard, limit-hard, or random")
        ->required()
        ->check(CLI::IsMember({"fig1", "fig5", "mn", "almost-hard", "limit-hard", "random"}));
    CLI::Option* n_option = gen->add_option("--n", gen_args.n, "cycle count for the mn family");
    gen->add_option("--seed", gen_args.seed, "random seed");
    gen->add_option("--states", gen_args.states, "state count for random bases")
        ->check(CLI::PositiveNumber);
    gen->add_option("--actions", gen_args.actions, "action count for random bases")
        ->check(CLI::PositiveNumber);
    gen->add_option("--density", gen_args.density, "support density num/den in (0, 1]");
    gen->add_option("--q-hat", gen_args.q_hat,
                    "pivot state for the almost-hard family (default: first state)");
    gen->add_option("--out", gen_args.out_path, "model JSON output file (default: stdout)");

    std::vector<const char*> argv;
    argv.reserve(args.size() + 1);
    argv.push_back("syncmdp");
    for (const std::string& arg : args) argv.push_back(arg.c_str());
    try {
        app.parse(static_cast<int>(argv.size()), argv.data());
    } catch (const CLI::ParseError& e) {
        return app.exit(e, out, err) == 0 ? kExitOk : kExitInput;
    }

    sim_args.steps_given = steps_option->count() > 0;
    gen_args.n_given = n_option->count() > 0;

    try {
        if (app.got_subcommand(decide)) return cmd_decide(decide_args, out);
        if (app.got_subcommand(synthesize)) return cmd_synthesize(synth_args, out);
        if (app.got_subcommand(simulate)) return cmd_simulate(sim_args, out);
        if (app.got_subcommand(afa)) return cmd_afa(afa_args, out);
        if (app.got_subcommand(gen)) return cmd_gen(gen_args, out);
        err << "input error: no command given\n";
        return kExitInput;
    } catch (const NotWinningError& e) {
        err << "not winning: " << e.what() << "\n";
        return kExitNotWinning;
    } catch (const ResourceLimitError& e) {
        err << "resource limit: " << e.what() << "\n";
        return kExitResource;
    } catch (const InputError& e) {
        err << "input error: " << e.what() << "\n";
        return kExitInput;
    } catch (const std::exception& e) {
        err << "internal error: " << e.what() << "\n";
        return kExitInternal;
    }
}

} // namespace syncmdp
