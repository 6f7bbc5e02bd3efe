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

#include <algorithm>
#include <filesystem>
#include <sstream>
#include <string>
#include <variant>
#include <vector>

#include <json.hpp>

#include "syncmdp/cli.hpp"
#include "syncmdp/generators.hpp"
#include "syncmdp/model_io.hpp"
#include "syncmdp/strategy.hpp"

using namespace syncmdp;
using nlohmann::json;

namespace {

struct CliResult {
    int code = 0;
    std::string out;
    std::string err;
};

CliResult run(const std::vector<std::string>& args) {
    std::ostringstream out;
    std::ostringstream err;
    const int code = run_cli(args, out, err);
    return {code, out.str(), err.str()};
}

/// Per-process scratch directory for generated files.
std::filesystem::path scratch() {
    static const std::filesystem::path dir = [] {
        auto path = std::filesystem::temp_directory_path() / "syncmdp_cli_tests";
        std::filesystem::remove_all(path);
        std::filesystem::create_directories(path);
        return path;
    }();
    return dir;
}

std::string make_model(const std::string& family, const std::string& name,
                       const std::vector<std::string>& extra = {}) {
    const std::string path = (scratch() / name).string();
    std::vector<std::string> args{"gen", "--family", family, "--out", path};
    args.insert(args.end(), extra.begin(), extra.end());
    const CliResult result = run(args);
    REQUIRE(result.code == kExitOk);
    return path;
}

} // namespace

TEST_CASE("decide classifies the chain example and is byte-stable") {
    const std::string model = make_model("fig1", "fig1.json");

    const std::vector<std::string> args{"decide",     model,        "--objective",
                                        "eventually", "--mode",     "all",
                                        "--function", "sum",        "--target",
                                        "q1",         "--from",     "q0"};
    const CliResult first = run(args);
    REQUIRE(first.code == kExitOk);
    CHECK(first.err.empty());
    CHECK(first.out.back() == '\n');
    CHECK(run(args).out == first.out); // canonical output, byte for byte

    const json verdict = json::parse(first.out);
    CHECK(verdict["sure"] == false);
    CHECK(verdict["almost"] == true);
    CHECK(verdict["limit"] == true);
    CHECK(verdict["almost_witness"] == json::array({"q0", "q1"}));

    // The model file carries its own initial distribution; --from is optional.
    std::vector<std::string> no_from(args.begin(), args.end() - 2);
    CHECK(run(no_from).out == first.out);
}

TEST_CASE("decide reports the limit witness for the harder chain target") {
    const std::string model = make_model("fig1", "fig1_q2.json");
    const CliResult result =
        run({"decide", model, "--objective", "eventually", "--mode", "all", "--function",
             "sum", "--target", "q2"});
    REQUIRE(result.code == kExitOk);

    const json verdict = json::parse(result.out);
    CHECK(verdict["sure"] == false);
    CHECK(verdict["almost"] == false);
    CHECK(verdict["limit"] == true);
    const json& witness = verdict["limit_witness"];
    CHECK(witness["via_sure"] == false);
    CHECK(witness["prefix"] == 1);
    CHECK(witness["period"] == 1);
    CHECK(witness["position"] == 0);
    CHECK(witness["r_set"] == json::array({"q1"}));
    CHECK(witness["z_set"] == json::array({"q0", "q1", "q2", "q3"}));
}

TEST_CASE("decide computes only the requested mode") {
    const std::string model = make_model("mn", "m2.json", {"--n", "2"});
    const CliResult result =
        run({"decide", model, "--objective", "eventually", "--mode", "sure", "--function",
             "sum", "--target", "qT", "--from", "q0"});
    REQUIRE(result.code == kExitOk);

    const json verdict = json::parse(result.out);
    CHECK(verdict.size() == 2);
    CHECK(verdict["sure"] == true);
    CHECK(verdict["sure_horizon"] == 7);
}

TEST_CASE("decide collapses modes under the always objective") {
    const std::string model = make_model("fig1", "fig1_always.json");
    const CliResult result =
        run({"decide", model, "--objective", "always", "--mode", "all", "--function", "sum",
             "--target", "q3", "--from", "q3"});
    REQUIRE(result.code == kExitOk);

    const json verdict = json::parse(result.out);
    CHECK(verdict["sure"] == true);
    CHECK(verdict["almost"] == true);
    CHECK(verdict["limit"] == true);
}

TEST_CASE("decide input failures exit with code 2 and print no verdict") {
    const std::string model = make_model("fig1", "fig1_errors.json");

    // Missing required --target.
    const CliResult missing = run({"decide", model, "--objective", "eventually", "--mode",
                                   "all", "--function", "sum"});
    CHECK(missing.code == kExitInput);
    CHECK(missing.out.empty());
    CHECK_FALSE(missing.err.empty());

    // Unknown target state name.
    const CliResult unknown = run({"decide", model, "--objective", "eventually", "--mode",
                                   "all", "--function", "sum", "--target", "q9"});
    CHECK(unknown.code == kExitInput);
    CHECK(unknown.out.empty());

    // Nonexistent and malformed model files.
    CHECK(run({"decide", (scratch() / "missing.json").string(), "--objective", "eventually",
               "--mode", "all", "--function", "sum", "--target", "q1"})
              .code == kExitInput);
    const std::string broken = (scratch() / "broken.json").string();
    write_text_file(broken, "not json at all\n");
    CHECK(run({"decide", broken, "--objective", "eventually", "--mode", "all", "--function",
               "sum", "--target", "q1"})
              .code == kExitInput);
}

TEST_CASE("help requests succeed") {
    const CliResult help = run({"--help"});
    CHECK(help.code == kExitOk);
    CHECK(help.out.find("decide") != std::string::npos);
}

TEST_CASE("synthesize writes a sure witness for the prime-cycle family") {
    const std::string model = make_model("mn", "m2_synth.json", {"--n", "2"});
    const std::string strat_path = (scratch() / "m2_sure.json").string();

    const CliResult result =
        run({"synthesize", model, "--objective", "eventually", "--mode", "sure", "--function",
             "sum", "--target", "qT", "--from", "q0", "--out", strat_path});
    REQUIRE(result.code == kExitOk);

    const json report = json::parse(result.out);
    CHECK(report["kind"] == "transducer");
    CHECK(report["modes"] == 8);
    CHECK(report["step"] == 7);
    CHECK(report["mass"] == "1/1");
    CHECK(report["out"] == strat_path);

    const StrategyFile strategy = parse_strategy(read_text_file(strat_path));
    REQUIRE(std::holds_alternative<Transducer>(strategy.payload));
    CHECK(std::get<Transducer>(strategy.payload).mode_count() == 8);
    CHECK(strategy.state_names == gen_mn(2).state_names);
}

TEST_CASE("synthesize and simulate a limit witness on the chain") {
    const std::string model = make_model("fig1", "fig1_limit.json");
    const std::string strat_path = (scratch() / "fig1_limit_strategy.json").string();

    const CliResult synth =
        run({"synthesize", model, "--objective", "eventually", "--mode", "limit", "--function",
             "sum", "--target", "q2", "--from", "q0", "--epsilon", "1/8", "--out", strat_path});
    REQUIRE(synth.code == kExitOk);
    const json report = json::parse(synth.out);
    CHECK(report["step"] == 4);
    CHECK(report["mass"] == "7/8");

    const CliResult trace = run({"simulate", model, strat_path, "--steps", "4"});
    REQUIRE(trace.code == kExitOk);
    std::istringstream lines(trace.out);
    std::string line;
    std::getline(lines, line);
    CHECK(line == "step,q0,q1,q2,q3,total");
    std::getline(lines, line);
    CHECK(line == "0,1/1,0/1,0/1,0/1,1/1");
    std::string last;
    while (std::getline(lines, line)) last = line;
    CHECK(last == "4,1/16,1/16,7/8,0/1,1/1");

    // Limit-mode synthesis without --epsilon is an input error.
    CHECK(run({"synthesize", model, "--objective", "eventually", "--mode", "limit",
               "--function", "sum", "--target", "q2", "--from", "q0", "--out", strat_path})
              .code == kExitInput);
}

TEST_CASE("synthesize reports schedule peaks for the cycle example") {
    const std::string model = make_model("fig5", "fig5.json");
    const std::string strat_path = (scratch() / "fig5_schedule.json").string();

    const CliResult result =
        run({"synthesize", model, "--objective", "eventually", "--mode", "almost", "--function",
             "sum", "--target", "q2", "--from", "q0", "--depth", "3", "--out", strat_path});
    REQUIRE(result.code == kExitOk);

    const json report = json::parse(result.out);
    CHECK(report["kind"] == "schedule");
    CHECK(report["segments"] == 3);
    CHECK(report["peaks"] == json::array({"1/2", "27/32", "911/1024"}));
    CHECK(report["horizons"] == json::array({2, 4, 5}));

    const StrategyFile strategy = parse_strategy(read_text_file(strat_path));
    REQUIRE(std::holds_alternative<EpsilonSchedule>(strategy.payload));
    CHECK(std::get<EpsilonSchedule>(strategy.payload).segments.size() == 3);

    // Full-schedule simulation spans the summed horizons; --steps truncates
    // and may not exceed the defined range.
    const CliResult full = run({"simulate", model, strat_path});
    REQUIRE(full.code == kExitOk);
    CHECK(std::count(full.out.begin(), full.out.end(), '\n') == 13); // header + steps 0..11
    const CliResult cut = run({"simulate", model, strat_path, "--steps", "2"});
    CHECK(std::count(cut.out.begin(), cut.out.end(), '\n') == 4);
    CHECK(run({"simulate", model, strat_path, "--steps", "20"}).code == kExitInput);
}

TEST_CASE("synthesize refuses losing instances without side effects") {
    const std::string model = make_model("fig1", "fig1_losing.json");
    const std::string strat_path = (scratch() / "never_written.json").string();

    const CliResult result =
        run({"synthesize", model, "--objective", "eventually", "--mode", "sure", "--function",
             "sum", "--target", "q1", "--from", "q0", "--out", strat_path});
    CHECK(result.code == kExitNotWinning);
    CHECK(result.out.empty());
    CHECK_FALSE(result.err.empty());
    CHECK_FALSE(std::filesystem::exists(strat_path));
}

TEST_CASE("simulate supports hand-written transducers and step zero") {
    const std::string model = make_model("fig1", "fig1_sim.json");

    // Memoryless all-a strategy, serialized through the library.
    const Mdp m = gen_fig1();
    Transducer always_a;
    always_a.mode_names = {"m0"};
    always_a.update.assign(1, std::vector<std::vector<int>>(2, std::vector<int>(4, 0)));
    always_a.next_move.assign(1, std::vector<Distribution>(4, Distribution::dirac(0)));
    const std::string strat_path = (scratch() / "always_a.json").string();
    write_text_file(strat_path, serialize_strategy(m, always_a));

    const CliResult zero = run({"simulate", model, strat_path, "--steps", "0"});
    REQUIRE(zero.code == kExitOk);
    CHECK(zero.out == "step,q0,q1,q2,q3,total\n0,1/1,0/1,0/1,0/1,1/1\n");

    const CliResult three = run({"simulate", model, strat_path, "--steps", "3"});
    REQUIRE(three.code == kExitOk);
    CHECK(three.out.find("1,1/2,1/2,0/1,0/1,1/1") != std::string::npos);
    CHECK(three.out.find("2,1/4,3/4,0/1,0/1,1/1") != std::string::npos);
    CHECK(three.out.find("3,1/8,7/8,0/1,0/1,1/1") != std::string::npos);

    // Transducers have no intrinsic horizon: --steps is mandatory.
    CHECK(run({"simulate", model, strat_path}).code == kExitInput);

    // --trace writes the same CSV to a file instead of stdout.
    const std::string trace_path = (scratch() / "trace.csv").string();
    const CliResult traced =
        run({"simulate", model, strat_path, "--steps", "3", "--trace", trace_path});
    REQUIRE(traced.code == kExitOk);
    CHECK(traced.out.empty());
    CHECK(read_text_file(trace_path) == three.out);
}

TEST_CASE("afa questions answer in one-key documents") {
    const std::string empty_afa = (scratch() / "empty.json").string();
    write_text_file(empty_afa, R"({
  "states": ["s0", "s1"],
  "accepting": [],
  "delta": {"s0": [["s1"]], "s1": [["s1"]]}
})");
    CHECK(json::parse(run({"afa", empty_afa, "empty", "--state", "s0"}).out) ==
          json{{"empty", true}});
    CHECK(json::parse(run({"afa", empty_afa, "finite", "--state", "s0"}).out) ==
          json{{"finite", true}});
    CHECK(json::parse(run({"afa", empty_afa, "unifinite"}).out) == json{{"unifinite", true}});

    const std::string live_afa = (scratch() / "live.json").string();
    write_text_file(live_afa, R"({
  "states": ["s0", "s1"],
  "accepting": ["s1"],
  "delta": {"s0": [["s1"]], "s1": [["s1"]]}
})");
    CHECK(json::parse(run({"afa", live_afa, "empty", "--state", "s1"}).out) ==
          json{{"empty", false}});
    CHECK(json::parse(run({"afa", live_afa, "unifinite"}).out) == json{{"unifinite", false}});

    // State-specific questions need --state.
    CHECK(run({"afa", live_afa, "empty"}).code == kExitInput);
}

TEST_CASE("gen families, determinism, and round-trip stability") {
    const CliResult m2 = run({"gen", "--family", "mn", "--n", "2"});
    REQUIRE(m2.code == kExitOk);
    CHECK(json::parse(m2.out)["states"].size() == 8);

    // mn needs --n.
    CHECK(run({"gen", "--family", "mn"}).code == kExitInput);

    const CliResult random7a = run({"gen", "--family", "random", "--seed", "7"});
    const CliResult random7b = run({"gen", "--family", "random", "--seed", "7"});
    const CliResult random8 = run({"gen", "--family", "random", "--seed", "8"});
    REQUIRE(random7a.code == kExitOk);
    CHECK(random7a.out == random7b.out);
    CHECK(random7a.out != random8.out);

    // parse -> serialize reproduces generated files byte for byte.
    for (const std::string& text : {m2.out, random7a.out}) {
        CHECK(serialize_model(parse_model(text)) == text);
    }

    // The limit-hard family starts at the fresh scatter state.
    const CliResult hard = run({"gen", "--family", "limit-hard", "--seed", "3", "--states", "3"});
    REQUIRE(hard.code == kExitOk);
    const ModelFile parsed = parse_model(hard.out);
    REQUIRE(parsed.initial.has_value());
    CHECK(parsed.initial->is_dirac());
    CHECK(parsed.initial->entries().front().first == parsed.mdp.state_index("qinit"));

    // Density is validated.
    CHECK(run({"gen", "--family", "random", "--density", "3/2"}).code == kExitInput);
}
