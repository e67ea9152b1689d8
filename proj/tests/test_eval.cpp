#include <catch2/catch_amalgamated.hpp>

#include <deque>
#include <filesystem>
#include <fstream>
#include <memory>
#include <stdexcept>
#include <string>
#include <unistd.h>
#include <vector>

#include "support/potato_spec.hpp"
#include "support/scripted_policy.hpp"
#include "textchef/builtin_tips.hpp"
#include "textchef/eval.hpp"

using namespace textchef;
using textchef::test::potato_spec;
using textchef::test::ScriptedPolicy;

namespace {

const std::vector<std::string> kQuickLoss = {
    "open(fridge)", "take(purple potato)", "eat(purple potato)",
};

const std::vector<std::string> kStoveLoss = {
    "examine(cookbook)", "open(fridge)",  "take(purple potato)",
    "take(knife)",       "dice(purple potato, knife)", "cook(purple potato, stove)",
};

const std::vector<std::string> kOvenWin = {
    "examine(cookbook)", "open(fridge)",  "take(purple potato)",     "take(knife)",
    "dice(purple potato, knife)", "cook(purple potato, oven)", "prepare_meal()", "eat(meal)",
};

PolicyFactory scripted_factory(std::vector<std::string> script) {
    return [script](const GameSpec&) -> std::unique_ptr<Policy> {
        return std::make_unique<ScriptedPolicy>(script);
    };
}

std::string read_file(const std::filesystem::path& path) {
    std::ifstream in(path, std::ios::binary);
    REQUIRE(in);
    std::ostringstream buf;
    buf << in.rdbuf();
    return buf.str();
}

}  // namespace

TEST_CASE("make_suite generates consecutive seeds at one level") {
    auto specs = make_suite(1, 5, 100);
    REQUIRE(specs.size() == 5);
    for (std::size_t i = 0; i < specs.size(); ++i) {
        CHECK(specs[i].level == 1);
        CHECK(specs[i].seed == 100 + i);
    }
}

TEST_CASE("the expert clears zero-shot suites at every level") {
    std::vector<GameSpec> specs;
    for (int level = 0; level < kLevelCount; ++level)
        for (const auto& spec : make_suite(level, 4, 50)) specs.push_back(spec);

    BackendConfig backend;
    backend.kind = BackendKind::Expert;
    EvalReport report = evaluate_suite(specs, backend, TipSet{});

    REQUIRE(report.per_level.size() == static_cast<std::size_t>(kLevelCount));
    for (const auto& [level, point] : report.per_level) {
        CAPTURE(level);
        CHECK(point.normalized_points == 1.0);
        CHECK(point.success_rate == 1.0);
        CHECK(point.episodes == 4);
    }
    CHECK(report.backend == "expert");
    CHECK(report.backend_failures == 0);
    CHECK(report.seeds.size() == specs.size());
    CHECK(report.per_trial_curve.empty());
    CHECK(report.metric_mode == "cumulative");
    CHECK(report.tool_version == std::string(kVersion));
}

TEST_CASE("partial scores average into normalized points") {
    std::vector<GameSpec> specs = {potato_spec()};
    EvalReport report = evaluate_suite(specs, scripted_factory(kStoveLoss));
    REQUIRE(report.per_level.count(2) == 1);
    // take + correct cut = 2 of 5 points, and the episode is not a success.
    CHECK(report.per_level[2].normalized_points == Catch::Approx(0.4));
    CHECK(report.per_level[2].success_rate == 0.0);
    CHECK(report.backend_failures == 0);
}

TEST_CASE("a policy failure counts as a zero-point loss and is flagged") {
    std::vector<GameSpec> specs = {potato_spec(), potato_spec()};
    int calls = 0;
    PolicyFactory factory = [&calls](const GameSpec&) -> std::unique_ptr<Policy> {
        // First episode plays the win; the second has no script and aborts.
        ++calls;
        return std::make_unique<ScriptedPolicy>(calls == 1 ? kOvenWin
                                                           : std::vector<std::string>{});
    };
    EvalReport report = evaluate_suite(specs, factory);
    CHECK(report.backend_failures == 1);
    CHECK(report.per_level[2].normalized_points == Catch::Approx(0.5));
    CHECK(report.per_level[2].success_rate == Catch::Approx(0.5));
    CHECK(report.per_level[2].episodes == 2);
}

TEST_CASE("parallel evaluation returns the same report as serial") {
    std::vector<GameSpec> specs;
    for (const auto& spec : make_suite(0, 6, 7)) specs.push_back(spec);
    for (const auto& spec : make_suite(1, 6, 7)) specs.push_back(spec);

    BackendConfig backend;
    backend.kind = BackendKind::Expert;
    SuiteOptions serial;
    serial.workers = 1;
    SuiteOptions parallel;
    parallel.workers = 4;
    EvalReport a = evaluate_suite(specs, backend, TipSet{}, serial);
    EvalReport b = evaluate_suite(specs, backend, TipSet{}, parallel);
    CHECK(report_to_string(a) == report_to_string(b));
    CHECK(a.per_level[0].normalized_points == 1.0);
    CHECK(a.per_level[1].success_rate == 1.0);
}

TEST_CASE("suite tips reach every episode prompt") {
    struct ProbePolicy : Policy {
        ProbePolicy(std::shared_ptr<std::vector<std::string>> sink,
                    std::vector<std::string> script)
            : sink_(std::move(sink)), script_(script.begin(), script.end()) {}
        std::string next_action(const PromptBundle& bundle) override {
            sink_->push_back(bundle_to_text(bundle));
            if (script_.empty()) throw PolicyError("script exhausted");
            std::string out = script_.front();
            script_.pop_front();
            return out;
        }
        std::shared_ptr<std::vector<std::string>> sink_;
        std::deque<std::string> script_;
    };

    auto sink = std::make_shared<std::vector<std::string>>();
    PolicyFactory factory = [sink](const GameSpec&) -> std::unique_ptr<Policy> {
        return std::make_unique<ProbePolicy>(sink, kQuickLoss);
    };
    SuiteOptions options;
    options.tips = builtin_human_tips();
    options.tip_source = "builtin:human";
    options.backend_label = "probe";
    EvalReport report = evaluate_suite({potato_spec()}, factory, options);

    CHECK(report.tip_source == "builtin:human");
    CHECK(report.backend == "probe");
    REQUIRE(sink->size() == 3);
    for (const auto& prompt : *sink) {
        CHECK(prompt.find(kTipsHeader) != std::string::npos);
        CHECK(prompt.find("Dice, chop, and slice are different.") != std::string::npos);
    }
}

TEST_CASE("the few-shot curve accumulates the best result so far") {
    std::vector<std::string> script;
    script.insert(script.end(), kQuickLoss.begin(), kQuickLoss.end());
    script.push_back(std::string(kTipsHeader) + "\n1. Do not eat raw ingredients.");
    script.insert(script.end(), kOvenWin.begin(), kOvenWin.end());

    std::vector<std::pair<std::string, int>> observed;
    FewShotOptions options;
    options.loop.max_trials = 3;
    options.loop.scenario = Scenario::SelfHistory;
    options.tip_source = "self";
    options.backend_label = "scripted";
    options.on_game = [&observed](const GameSpec& spec, const TrialRun& run) {
        observed.emplace_back(spec.game_id(), run.solved_trial);
    };

    EvalReport report = few_shot_curve({potato_spec()}, scripted_factory(script), options);

    REQUIRE(report.per_trial_curve.size() == 3);
    // Trial 1: ate the potato after taking it, 1 of 5 points, no success.
    CHECK(report.per_trial_curve[1].normalized_points == Catch::Approx(0.2));
    CHECK(report.per_trial_curve[1].success_rate == 0.0);
    // Trial 2 wins; trial 3 never runs but the cumulative curve carries on.
    CHECK(report.per_trial_curve[2].normalized_points == 1.0);
    CHECK(report.per_trial_curve[2].success_rate == 1.0);
    CHECK(report.per_trial_curve[3].normalized_points == 1.0);
    CHECK(report.per_trial_curve[3].success_rate == 1.0);

    REQUIRE(report.per_level.count(2) == 1);
    CHECK(report.per_level[2].normalized_points == 1.0);
    CHECK(report.per_level[2].success_rate == 1.0);

    CHECK(report.scenario == "self_history");
    CHECK(report.metric_mode == "cumulative");
    REQUIRE(observed.size() == 1);
    CHECK(observed[0].first == "level2-seed0");
    CHECK(observed[0].second == 2);
}

TEST_CASE("the few-shot convenience overload runs the expert in one trial") {
    auto specs = make_suite(3, 2, 11);
    BackendConfig backend;
    backend.kind = BackendKind::Expert;
    EvalReport report = few_shot_curve(specs, backend, Scenario::SelfHistory, 2);
    CHECK(report.backend == "expert");
    CHECK(report.per_trial_curve[1].normalized_points == 1.0);
    CHECK(report.per_trial_curve[1].success_rate == 1.0);
    CHECK(report.per_trial_curve[2].success_rate == 1.0);
    CHECK(report.per_level[3].episodes == 2);
}

TEST_CASE("empty suites are rejected") {
    BackendConfig backend;
    backend.kind = BackendKind::Expert;
    CHECK_THROWS_AS(evaluate_suite({}, backend, TipSet{}), std::invalid_argument);
    CHECK_THROWS_AS(few_shot_curve({}, backend, Scenario::SelfHistory, 2),
                    std::invalid_argument);
}

TEST_CASE("report serialization is structured and byte-stable") {
    std::vector<GameSpec> specs = {potato_spec()};
    EvalReport report = evaluate_suite(specs, scripted_factory(kStoveLoss));
    report.backend = "scripted";
    report.tip_source = "none";

    nlohmann::json j = report_to_json(report);
    CHECK(j.at("format_version") == 1);
    CHECK(j.at("metadata").at("backend") == "scripted");
    CHECK(j.at("metadata").at("scenario") == "");
    CHECK(j.at("metadata").at("metric_mode") == "cumulative");
    CHECK(j.at("metadata").at("tool_version") == std::string(kVersion));
    CHECK(j.at("metadata").at("backend_failures") == 0);
    CHECK(j.at("metadata").at("seeds") == nlohmann::json::array({0}));
    CHECK(j.at("per_level").at("2").at("episodes") == 1);
    CHECK(j.at("per_level").at("2").at("normalized_points") == 0.4);
    CHECK(j.at("per_trial_curve") == nlohmann::json::object());

    std::string csv = report_to_csv(report);
    CHECK(csv.find("level,trial,normalized_points,success_rate,episodes\n") == 0);
    CHECK(csv.find("2,,0.4,0,1\n") != std::string::npos);

    // Same inputs serialize to the same bytes.
    EvalReport again = evaluate_suite(specs, scripted_factory(kStoveLoss));
    again.backend = "scripted";
    CHECK(report_to_string(again) == report_to_string(report));
    CHECK(report_to_csv(again) == csv);
}

TEST_CASE("reports persist as paired JSON and CSV files") {
    auto specs = make_suite(0, 2, 1);
    BackendConfig backend;
    backend.kind = BackendKind::Expert;
    EvalReport report = evaluate_suite(specs, backend, builtin_general_tips());

    auto dir = std::filesystem::temp_directory_path() /
               ("textchef-eval-" + std::to_string(::getpid()));
    std::filesystem::create_directories(dir);
    auto json_path = dir / "report.json";
    auto csv_path = dir / "report.csv";
    save_report(report, json_path.string(), csv_path.string());

    CHECK(read_file(json_path) == report_to_string(report));
    CHECK(read_file(csv_path) == report_to_csv(report));

    nlohmann::json loaded = nlohmann::json::parse(read_file(json_path));
    CHECK(loaded.at("per_level").at("0").at("success_rate") == 1.0);
    std::filesystem::remove_all(dir);

    CHECK_THROWS_AS(save_report(report, "/nonexistent/dir/report.json",
                                (dir / "x.csv").string()),
                    std::runtime_error);
}

TEST_CASE("few-shot per-trial curves flatten into CSV rows") {
    EvalReport report;
    report.per_trial_curve[1] = {0.25, 0.0, 4};
    report.per_trial_curve[2] = {1.0, 1.0, 4};
    report.per_level[0] = {1.0, 1.0, 4};
    std::string csv = report_to_csv(report);
    CHECK(csv ==
          "level,trial,normalized_points,success_rate,episodes\n"
          "0,,1,1,4\n"
          ",1,0.25,0,4\n"
          ",2,1,1,4\n");
}
