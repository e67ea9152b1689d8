#pragma once

#include <algorithm>
#include <fstream>
#include <functional>
#include <map>
#include <memory>
#include <sstream>
#include <stdexcept>
#include <string>
#include <thread>
#include <utility>
#include <vector>

#include <nlohmann/json.hpp>

#include "textchef/episode.hpp"
#include "textchef/generator.hpp"
#include "textchef/policy.hpp"
#include "textchef/tips_loop.hpp"
#include "textchef/version.hpp"

namespace textchef {

struct MetricPoint {
    double normalized_points = 0.0;
    double success_rate = 0.0;
    int episodes = 0;

    bool operator==(const MetricPoint&) const = default;
};

struct EvalReport {
    std::map<int, MetricPoint> per_level;
    std::map<int, MetricPoint> per_trial_curve;  // few-shot runs only
    // run metadata
    std::string backend;
    std::string scenario;  // empty for zero-shot suites
    std::vector<std::uint64_t> seeds;
    std::string tip_source = "none";
    std::string metric_mode = "cumulative";
    std::string tool_version = kVersion;
    int backend_failures = 0;  // episodes aborted by transport errors, flagged distinctly
};

using PolicyFactory = std::function<std::unique_ptr<Policy>(const GameSpec&)>;

inline PolicyFactory factory_for(const BackendConfig& config, const PolicyContext& ctx = {}) {
    return [config, ctx](const GameSpec& spec) {
        PolicyContext bound = ctx;
        if (bound.spec == nullptr) bound.spec = &spec;
        return make_policy(config, bound);
    };
}

/// Builds the default evaluation suite for a level: `count` games with
/// seeds seed_base .. seed_base+count-1.
inline std::vector<GameSpec> make_suite(int level, int count, std::uint64_t seed_base) {
    std::vector<GameSpec> specs;
    for (int i = 0; i < count; ++i)
        specs.push_back(generate(level, seed_base + static_cast<std::uint64_t>(i)));
    return specs;
}

struct SuiteOptions {
    TipSet tips;
    int workers = 1;  // zero-shot episodes may run concurrently
    std::size_t char_budget = kDefaultCharBudget;
    std::string backend_label;
    std::string tip_source = "none";
};

/// Zero-shot protocol: one episode per game with a fixed tip set in the
/// prompt. A backend failure marks its episode Lost with 0 points and is
/// counted separately in the report.
inline EvalReport evaluate_suite(const std::vector<GameSpec>& specs, const PolicyFactory& factory,
                                 SuiteOptions options = {}) {
    if (specs.empty()) throw std::invalid_argument("evaluation suite is empty");

    struct Outcome {
        double normalized = 0.0;
        bool success = false;
        bool backend_failure = false;
    };
    std::vector<Outcome> outcomes(specs.size());

    auto run_one = [&](std::size_t i) {
        auto policy = factory(specs[i]);
        EpisodeOptions ep;
        ep.context.tips = options.tips;
        ep.char_budget = options.char_budget;
        auto [traj, result] = run_episode(specs[i], *policy, std::move(ep));
        (void)traj;
        Outcome& out = outcomes[i];
        if (!result.diagnostic.empty()) {
            out.backend_failure = true;  // flagged; scored as a 0-point loss
        } else {
            out.normalized = result.normalized;
            out.success = result.success;
        }
    };

    int workers = options.workers > 1 ? options.workers : 1;
    if (workers == 1) {
        for (std::size_t i = 0; i < specs.size(); ++i) run_one(i);
    } else {
        std::vector<std::thread> pool;
        std::size_t stride = static_cast<std::size_t>(workers);
        for (std::size_t w = 0; w < stride; ++w)
            pool.emplace_back([&, w] {
                for (std::size_t i = w; i < specs.size(); i += stride) run_one(i);
            });
        for (auto& t : pool) t.join();
    }

    EvalReport report;
    report.backend = options.backend_label;
    report.tip_source = options.tip_source;
    std::map<int, std::vector<std::size_t>> by_level;
    for (std::size_t i = 0; i < specs.size(); ++i) {
        report.seeds.push_back(specs[i].seed);
        by_level[specs[i].level].push_back(i);
    }
    for (const auto& [level, idx] : by_level) {
        MetricPoint point;
        point.episodes = static_cast<int>(idx.size());
        for (std::size_t i : idx) {
            point.normalized_points += outcomes[i].normalized;
            point.success_rate += outcomes[i].success ? 1.0 : 0.0;
            if (outcomes[i].backend_failure) ++report.backend_failures;
        }
        point.normalized_points /= static_cast<double>(idx.size());
        point.success_rate /= static_cast<double>(idx.size());
        report.per_level[level] = point;
    }
    return report;
}

inline EvalReport evaluate_suite(const std::vector<GameSpec>& specs, const BackendConfig& config,
                                 const TipSet& tips, SuiteOptions options = {}) {
    options.tips = tips;
    if (options.backend_label.empty()) options.backend_label = to_string(config.kind);
    return evaluate_suite(specs, factory_for(config), std::move(options));
}

struct FewShotOptions {
    TrialLoopConfig loop;
    std::string backend_label;
    std::string tip_source = "none";
    // Invoked after each game's trial loop, e.g. to persist artifacts.
    std::function<void(const GameSpec&, const TrialRun&)> on_game;
};

/// Few-shot protocol: run_trials per game, metrics reported cumulatively: a
/// game counts as solved at trial k if any trial <= k succeeded, and its
/// points at k are the best achieved so far.
inline EvalReport few_shot_curve(const std::vector<GameSpec>& specs, const PolicyFactory& factory,
                                 FewShotOptions options = {}) {
    if (specs.empty()) throw std::invalid_argument("evaluation suite is empty");
    const int max_trials = options.loop.max_trials;

    EvalReport report;
    report.backend = options.backend_label;
    report.scenario = to_string(options.loop.scenario);
    report.tip_source = options.tip_source;

    // best_normalized[g][k], solved_at[g][k] for trial index k+1
    std::vector<std::vector<double>> best_normalized;
    std::vector<std::vector<bool>> solved_at;
    std::map<int, std::vector<std::size_t>> by_level;

    for (std::size_t g = 0; g < specs.size(); ++g) {
        const GameSpec& spec = specs[g];
        report.seeds.push_back(spec.seed);
        by_level[spec.level].push_back(g);
        auto policy = factory(spec);
        TrialRun run = run_trials(spec, *policy, options.loop);
        if (!run.diagnostic.empty()) ++report.backend_failures;
        if (options.on_game) options.on_game(spec, run);

        std::vector<double> best(static_cast<std::size_t>(max_trials), 0.0);
        std::vector<bool> solved(static_cast<std::size_t>(max_trials), false);
        double best_so_far = 0.0;
        bool solved_so_far = false;
        for (int k = 0; k < max_trials; ++k) {
            if (k < static_cast<int>(run.records.size())) {
                const auto& rec = run.records[static_cast<std::size_t>(k)];
                if (rec.result.diagnostic.empty())
                    best_so_far = std::max(best_so_far, rec.result.normalized);
                solved_so_far = solved_so_far || rec.result.success;
            }
            best[static_cast<std::size_t>(k)] = best_so_far;
            solved[static_cast<std::size_t>(k)] = solved_so_far;
        }
        best_normalized.push_back(std::move(best));
        solved_at.push_back(std::move(solved));
    }

    for (int k = 1; k <= max_trials; ++k) {
        MetricPoint point;
        point.episodes = static_cast<int>(specs.size());
        for (std::size_t g = 0; g < specs.size(); ++g) {
            point.normalized_points += best_normalized[g][static_cast<std::size_t>(k - 1)];
            point.success_rate += solved_at[g][static_cast<std::size_t>(k - 1)] ? 1.0 : 0.0;
        }
        point.normalized_points /= static_cast<double>(specs.size());
        point.success_rate /= static_cast<double>(specs.size());
        report.per_trial_curve[k] = point;
    }
    for (const auto& [level, idx] : by_level) {
        MetricPoint point;
        point.episodes = static_cast<int>(idx.size());
        for (std::size_t g : idx) {
            point.normalized_points += best_normalized[g].back();
            point.success_rate += solved_at[g].back() ? 1.0 : 0.0;
        }
        point.normalized_points /= static_cast<double>(idx.size());
        point.success_rate /= static_cast<double>(idx.size());
        report.per_level[level] = point;
    }
    return report;
}

inline EvalReport few_shot_curve(const std::vector<GameSpec>& specs, const BackendConfig& config,
                                 Scenario scenario, int max_trials, FewShotOptions options = {}) {
    options.loop.scenario = scenario;
    options.loop.max_trials = max_trials;
    if (options.backend_label.empty()) options.backend_label = to_string(config.kind);
    return few_shot_curve(specs, factory_for(config), std::move(options));
}

// --- Report files (canonical JSON + CSV flattening) ---

inline nlohmann::json report_to_json(const EvalReport& report) {
    nlohmann::json j;
    j["format_version"] = 1;
    j["metadata"]["backend"] = report.backend;
    j["metadata"]["scenario"] = report.scenario;
    j["metadata"]["seeds"] = report.seeds;
    j["metadata"]["tip_source"] = report.tip_source;
    j["metadata"]["metric_mode"] = report.metric_mode;
    j["metadata"]["tool_version"] = report.tool_version;
    j["metadata"]["backend_failures"] = report.backend_failures;
    j["per_level"] = nlohmann::json::object();
    for (const auto& [level, point] : report.per_level)
        j["per_level"][std::to_string(level)] = {{"normalized_points", point.normalized_points},
                                                 {"success_rate", point.success_rate},
                                                 {"episodes", point.episodes}};
    j["per_trial_curve"] = nlohmann::json::object();
    for (const auto& [trial, point] : report.per_trial_curve)
        j["per_trial_curve"][std::to_string(trial)] = {
            {"normalized_points", point.normalized_points},
            {"success_rate", point.success_rate},
            {"episodes", point.episodes}};
    return j;
}

inline std::string report_to_string(const EvalReport& report) {
    return report_to_json(report).dump(2) + "\n";
}

inline std::string report_to_csv(const EvalReport& report) {
    std::ostringstream out;
    out << "level,trial,normalized_points,success_rate,episodes\n";
    for (const auto& [level, point] : report.per_level)
        out << level << ",," << point.normalized_points << "," << point.success_rate << ","
            << point.episodes << "\n";
    for (const auto& [trial, point] : report.per_trial_curve)
        out << "," << trial << "," << point.normalized_points << "," << point.success_rate << ","
            << point.episodes << "\n";
    return out.str();
}

inline void save_report(const EvalReport& report, const std::string& json_path,
                        const std::string& csv_path) {
    {
        std::ofstream out(json_path, std::ios::binary);
        if (!out) throw std::runtime_error("cannot open for writing: " + json_path);
        out << report_to_string(report);
    }
    {
        std::ofstream out(csv_path, std::ios::binary);
        if (!out) throw std::runtime_error("cannot open for writing: " + csv_path);
        out << report_to_csv(report);
    }
}

}  // namespace textchef
