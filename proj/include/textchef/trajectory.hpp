#pragma once

#include <fstream>
#include <sstream>
#include <stdexcept>
#include <string>
#include <vector>

#include <nlohmann/json.hpp>

#include "textchef/engine.hpp"
#include "textchef/spec_json.hpp"
#include "textchef/version.hpp"

namespace textchef {

struct TrajectoryFormatError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

/// One executed turn: the raw policy output and what the engine said back.
struct TrajectoryTurn {
    std::string action_text;
    std::string feedback;
    int score = 0;  // cumulative, after the turn
    Status status = Status::Running;

    bool operator==(const TrajectoryTurn&) const = default;
};

struct Trajectory {
    GameSpec spec;
    std::string initial_observation;
    std::vector<TrajectoryTurn> turns;

    int final_score() const { return turns.empty() ? 0 : turns.back().score; }
    Status final_status() const { return turns.empty() ? Status::Running : turns.back().status; }
    double normalized_points() const {
        if (spec.max_score <= 0) return 0.0;
        return static_cast<double>(final_score()) / static_cast<double>(spec.max_score);
    }
};

// --- JSONL serialization ---
// Line 1 is a header record embedding the full game spec, so a trajectory
// file replays without any side channel. Then one record per turn, then an
// end record with the episode outcome.

inline void write_trajectory(const Trajectory& traj, std::ostream& out) {
    nlohmann::ordered_json header;
    header["record"] = "header";
    header["format_version"] = kSpecFormatVersion;
    header["feedback_template_version"] = kFeedbackTemplateVersion;
    header["game"] = to_json(traj.spec);
    header["initial_observation"] = traj.initial_observation;
    out << nlohmann::json(header).dump() << "\n";
    int turn = 0;
    for (const auto& t : traj.turns) {
        nlohmann::ordered_json rec;
        rec["record"] = "turn";
        rec["turn"] = ++turn;
        rec["action"] = t.action_text;
        rec["feedback"] = t.feedback;
        rec["score"] = t.score;
        rec["status"] = to_string(t.status);
        out << nlohmann::json(rec).dump() << "\n";
    }
    nlohmann::ordered_json end;
    end["record"] = "end";
    end["turns"] = static_cast<int>(traj.turns.size());
    end["final_score"] = traj.final_score();
    end["normalized_points"] = traj.normalized_points();
    end["status"] = to_string(traj.final_status());
    out << nlohmann::json(end).dump() << "\n";
}

inline std::string trajectory_to_string(const Trajectory& traj) {
    std::ostringstream out;
    write_trajectory(traj, out);
    return out.str();
}

inline Trajectory read_trajectory(std::istream& in) {
    Trajectory traj;
    std::string line;
    bool saw_header = false;
    bool saw_end = false;
    while (std::getline(in, line)) {
        if (line.empty()) continue;
        nlohmann::json rec;
        try {
            rec = nlohmann::json::parse(line);
        } catch (const nlohmann::json::exception& e) {
            throw TrajectoryFormatError(std::string("bad trajectory line: ") + e.what());
        }
        const std::string kind = rec.value("record", "");
        if (kind == "header") {
            if (saw_header) throw TrajectoryFormatError("duplicate header record");
            saw_header = true;
            if (!rec.contains("game")) throw TrajectoryFormatError("header missing game spec");
            traj.spec = spec_from_json(rec.at("game"));
            traj.initial_observation = rec.value("initial_observation", "");
        } else if (kind == "turn") {
            if (!saw_header) throw TrajectoryFormatError("turn record before header");
            TrajectoryTurn t;
            t.action_text = rec.at("action").get<std::string>();
            t.feedback = rec.at("feedback").get<std::string>();
            t.score = rec.at("score").get<int>();
            auto status = status_from_string(rec.at("status").get<std::string>());
            if (!status) throw TrajectoryFormatError("unknown status in turn record");
            t.status = *status;
            traj.turns.push_back(std::move(t));
        } else if (kind == "end") {
            saw_end = true;
        } else {
            throw TrajectoryFormatError("unknown record kind: " + kind);
        }
    }
    if (!saw_header) throw TrajectoryFormatError("trajectory has no header record");
    if (!saw_end) throw TrajectoryFormatError("trajectory has no end record");
    return traj;
}

inline void save_trajectory(const Trajectory& traj, const std::string& path) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw TrajectoryFormatError("cannot open for writing: " + path);
    write_trajectory(traj, out);
}

inline Trajectory load_trajectory(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw TrajectoryFormatError("cannot open: " + path);
    return read_trajectory(in);
}

// --- Replay verification ---

struct ReplayResult {
    bool ok = true;
    int mismatch_turn = 0;  // 1-based; 0 when ok
    std::string message;
};

/// Re-executes a trajectory in a fresh engine and demands byte-equal
/// feedback, equal scores and equal statuses at every turn.
inline ReplayResult verify_trajectory(const Trajectory& traj) {
    auto [state, observation] = new_episode(traj.spec);
    if (observation != traj.initial_observation)
        return {false, 0, "initial observation differs"};
    int turn = 0;
    for (const auto& recorded : traj.turns) {
        ++turn;
        ParseResult parsed = parse(recorded.action_text);
        Feedback fb = parsed.ok() ? step(state, *parsed.action) : invalid_input(state);
        if (fb.text != recorded.feedback)
            return {false, turn,
                    "feedback differs at turn " + std::to_string(turn) + ": expected \"" +
                        recorded.feedback + "\", got \"" + fb.text + "\""};
        if (state.score != recorded.score)
            return {false, turn, "score differs at turn " + std::to_string(turn)};
        if (state.status != recorded.status)
            return {false, turn, "status differs at turn " + std::to_string(turn)};
    }
    return {};
}

}  // namespace textchef
