#pragma once

#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "textchef/episode.hpp"
#include "textchef/policy.hpp"
#include "textchef/prompt.hpp"
#include "textchef/tipset.hpp"
#include "textchef/trajectory.hpp"

namespace textchef {

/// One attempt at a game plus the reflection it triggered, if any.
struct TrialRecord {
    int trial_index = 1;
    TipSet tips_in;
    Trajectory trajectory;
    EpisodeResult result;
    TipSet tips_out;
    std::string reflection_prompt;  // serialized prompt sent for tip generation
    std::string reflection_output;  // raw model reply it produced
};

struct TrialLoopConfig {
    Scenario scenario = Scenario::SelfHistory;
    int max_trials = 6;  // expert-guided learning reaches zero error within 6
    bool tips_from_success = false;
    bool raw_replay_baseline = false;  // inject past trajectories verbatim, no tips
    int replay_trajectory_cap = 3;
    int requested_tip_cap = 8;
    std::size_t char_budget = kDefaultCharBudget;
    TipSet initial_tips;  // e.g. aggregated or human tips
    std::vector<std::string> expert_failed_trajectories;  // optional extra contrast input
};

struct TrialRun {
    std::vector<TrialRecord> records;
    TipSet final_tips;  // tips_in of the first successful trial
    bool solved = false;
    int solved_trial = 0;       // 1-based; 0 when unsolved
    std::string diagnostic;     // reflection backend failure, records preserved
};

inline constexpr const char* kMoreEffectiveTipsRequest =
    "The tips you were given did not lead to a win, so generate more effective tips.";

namespace detail {

inline std::string reflection_preamble() {
    return "You are an agent playing in a text-based game. All of your available actions are in "
           "the ActionList:\n" +
           action_list_text() +
           "\nYou will be shown how the game begins and which of your actions led to failure. "
           "Reflect on them and answer with tips, not with an action.";
}

inline std::string tips_request(int cap) {
    return "Reply with at most " + std::to_string(cap) +
           " numbered tips under the header \"" + kTipsHeader + "\".";
}

}  // namespace detail

/// "Trial 2 (Lost, score 1 of 4): open(fridge) -> take(carrot) -> ..."
/// One line per failed trial: action texts and the outcome, never the full
/// feedback transcript.
inline std::string failed_trial_line(const TrialRecord& record) {
    std::string line = "Trial " + std::to_string(record.trial_index) + " (" +
                       to_string(record.trajectory.final_status()) + ", score " +
                       std::to_string(record.result.points) + " of " +
                       std::to_string(record.trajectory.spec.max_score) + "): ";
    for (std::size_t i = 0; i < record.trajectory.turns.size(); ++i) {
        if (i > 0) line += " -> ";
        line += record.trajectory.turns[i].action_text;
    }
    return line;
}

/// Full interleaved text of one past episode, for the raw-replay baseline.
inline std::string trajectory_block(const Trajectory& traj) {
    std::string out = traj.initial_observation;
    for (const auto& turn : traj.turns) out += "\n> " + turn.action_text + "\n" + turn.feedback;
    return out;
}

/// Builds the tip-generation prompt. self_history: prior tips plus every
/// failed trial's action line. expert_contrast: additionally the expert
/// action sequence and an instruction to contrast failures against it.
inline PromptBundle build_reflection_prompt(Scenario scenario,
                                            const std::string& spec_observation,
                                            const std::vector<TrialRecord>& failed_trials,
                                            const std::vector<std::string>& expert_actions,
                                            int requested_tip_cap = 8) {
    if (scenario != Scenario::SelfHistory && scenario != Scenario::ExpertContrast)
        throw std::invalid_argument("reflection runs in self_history or expert_contrast only");
    if (failed_trials.empty())
        throw std::invalid_argument("reflection needs at least one failed trial");
    if (scenario == Scenario::ExpertContrast && expert_actions.empty())
        throw std::invalid_argument("expert_contrast needs the expert walkthrough");

    PromptBundle bundle;
    bundle.system_preamble = detail::reflection_preamble();
    bundle.tips = failed_trials.back().tips_in;
    for (const auto& record : failed_trials) bundle.failed_actions.push_back(failed_trial_line(record));
    if (scenario == Scenario::ExpertContrast) bundle.expert_walkthrough = expert_actions;

    std::string request = "The game began as follows:\n" + spec_observation + "\n\n";
    if (scenario == Scenario::ExpertContrast)
        request +=
            "Contrast the actions of your failed attempts with the expert walkthrough above. ";
    if (bundle.tips.empty())
        request += "You lost this game. Write tips that will help you win it next time. ";
    else
        request += std::string(kMoreEffectiveTipsRequest) + " ";
    request += detail::tips_request(requested_tip_cap);
    bundle.transcript.push_back({request, ""});
    return bundle;
}

/// The few-shot loop: play, and after each failure reflect into tips that
/// are injected into the next attempt. Stops at the first success or after
/// max_trials. The FINAL tip set is the tips_in of the first success.
inline TrialRun run_trials(const GameSpec& spec, Policy& policy, TrialLoopConfig config = {}) {
    if (config.max_trials < 1) throw std::invalid_argument("max_trials must be >= 1");

    TrialRun run;
    TipSet tips = config.initial_tips;
    std::vector<std::string> past_blocks;
    std::string first_observation;
    const Scenario reflect_scenario = config.scenario == Scenario::ExpertContrast
                                          ? Scenario::ExpertContrast
                                          : Scenario::SelfHistory;

    std::vector<std::string> expert_actions;
    if (config.scenario == Scenario::ExpertContrast) {
        for (const auto& action : spec.walkthrough) expert_actions.push_back(render(action));
        for (const auto& block : config.expert_failed_trajectories)
            expert_actions.push_back(block);
    }

    for (int trial = 1; trial <= config.max_trials; ++trial) {
        TrialRecord record;
        record.trial_index = trial;
        record.tips_in = tips;

        EpisodeOptions options;
        options.char_budget = config.char_budget;
        if (config.raw_replay_baseline) {
            std::size_t cap = static_cast<std::size_t>(config.replay_trajectory_cap);
            std::size_t begin = past_blocks.size() > cap ? past_blocks.size() - cap : 0;
            options.context.past_trajectories.assign(past_blocks.begin() +
                                                         static_cast<std::ptrdiff_t>(begin),
                                                     past_blocks.end());
        } else {
            options.context.tips = tips;
        }

        auto [trajectory, result] = run_episode(spec, policy, std::move(options));
        record.trajectory = std::move(trajectory);
        record.result = std::move(result);
        if (trial == 1) first_observation = record.trajectory.initial_observation;

        if (record.result.success) {
            run.solved = true;
            run.solved_trial = trial;
            run.final_tips = record.tips_in;
        }

        const bool reflect = !config.raw_replay_baseline &&
                             (!record.result.success || config.tips_from_success);
        if (reflect) {
            std::vector<TrialRecord> failed;
            for (const auto& r : run.records)
                if (!r.result.success) failed.push_back(r);
            if (!record.result.success) failed.push_back(record);
            // Distilling from a success reuses the same prompt shape over
            // the successful trial alone.
            if (failed.empty()) failed.push_back(record);
            PromptBundle reflection =
                build_reflection_prompt(reflect_scenario, first_observation, failed,
                                        expert_actions, config.requested_tip_cap);
            record.reflection_prompt = bundle_to_text(reflection, config.char_budget);
            try {
                record.reflection_output = policy.next_action(reflection);
                record.tips_out = extract_tips(record.reflection_output,
                                               {spec.game_id(), trial, reflect_scenario});
                tips = record.tips_out;
            } catch (const NoTipsFound&) {
                // Keep the previous tips; the next trial retries with them.
            } catch (const PolicyError& e) {
                run.diagnostic = e.what();
                run.records.push_back(std::move(record));
                return run;
            }
        }
        if (config.raw_replay_baseline) past_blocks.push_back(trajectory_block(record.trajectory));

        bool done = record.result.success;
        run.records.push_back(std::move(record));
        if (done) break;
    }
    return run;
}

/// Convenience overload matching the config-first call shape.
inline TrialRun run_trials(const GameSpec& spec, const BackendConfig& policy_config,
                           Scenario scenario, int max_trials,
                           const PolicyContext& ctx = {}) {
    PolicyContext context = ctx;
    if (context.spec == nullptr) context.spec = &spec;
    auto policy = make_policy(policy_config, context);
    TrialLoopConfig config;
    config.scenario = scenario;
    config.max_trials = max_trials;
    return run_trials(spec, *policy, std::move(config));
}

/// Sends every FINAL tip set to the backend with a summarization
/// instruction and extracts the general tip set it answers with.
inline TipSet aggregate_tips(const std::vector<TipSet>& final_tipsets, Policy& policy,
                             int requested_tip_cap = 8) {
    if (final_tipsets.empty())
        throw std::invalid_argument("aggregation needs at least one final tip set");

    std::string corpus;
    for (const auto& set : final_tipsets) {
        if (!corpus.empty()) corpus += "\n\n";
        corpus += "Final tips from game " + set.provenance.game_id + ":";
        for (const auto& tip : set.tips)
            corpus += "\n" + std::to_string(tip.index) + ". " + tip.text;
    }

    PromptBundle bundle;
    bundle.system_preamble =
        "You have played several text-based cooking games. Each list below contains the final "
        "tips that led to a winning trial in one game. Summarize them into general tips that "
        "make an agent an expert across such games.";
    bundle.transcript.push_back(
        {corpus + "\n\n" + detail::tips_request(requested_tip_cap), ""});

    std::string output = policy.next_action(bundle);
    return extract_tips(output, {"aggregate", 0, Scenario::Aggregated});
}

}  // namespace textchef
