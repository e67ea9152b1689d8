#pragma once

#include <string>
#include <utility>
#include <vector>

#include "textchef/engine.hpp"
#include "textchef/policy.hpp"
#include "textchef/prompt.hpp"
#include "textchef/trajectory.hpp"

namespace textchef {

struct EpisodeResult {
    int points = 0;
    double normalized = 0.0;
    bool success = false;
    int turns = 0;
    std::string diagnostic;  // non-empty when a policy failure aborted the episode

    bool operator==(const EpisodeResult&) const = default;
};

/// Context blocks injected into every prompt of the episode. The transcript
/// field is managed by the runner and ignored here; an empty preamble means
/// the standard one.
struct EpisodeOptions {
    PromptBundle context;
    std::size_t char_budget = kDefaultCharBudget;
};

/// Plays one episode to completion: query policy, parse, step, repeat until
/// the game ends. Unparseable replies consume a turn with "Invalid action.".
/// A PolicyError aborts the episode as Lost and carries its message in the
/// result's diagnostic.
inline std::pair<Trajectory, EpisodeResult> run_episode(const GameSpec& spec, Policy& policy,
                                                        EpisodeOptions options = {}) {
    auto [state, observation] = new_episode(spec);
    policy.reset();

    PromptBundle bundle = std::move(options.context);
    if (bundle.system_preamble.empty()) bundle.system_preamble = make_system_preamble();
    bundle.transcript.clear();
    bundle.transcript.push_back({observation, ""});

    Trajectory traj;
    traj.spec = spec;
    traj.initial_observation = observation;

    EpisodeResult result;
    while (state.status == Status::Running) {
        std::string raw;
        try {
            raw = policy.next_action(bundle);
        } catch (const PolicyError& e) {
            state.status = Status::Lost;
            result.diagnostic = e.what();
            break;
        }
        std::string action_line = first_nonempty_line(raw);
        ParseResult parsed = parse(action_line);
        Feedback fb = parsed.ok() ? step(state, *parsed.action) : invalid_input(state);
        bundle.transcript.back().action = action_line;
        bundle.transcript.push_back({fb.text, ""});
        traj.turns.push_back({action_line, fb.text, state.score, state.status});
    }

    result.points = state.score;
    result.normalized = spec.max_score > 0
                            ? static_cast<double>(state.score) / static_cast<double>(spec.max_score)
                            : 0.0;
    result.success = state.status == Status::Won;
    result.turns = state.turn;
    return {std::move(traj), std::move(result)};
}

}  // namespace textchef
