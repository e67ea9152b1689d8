#include <catch2/catch_amalgamated.hpp>

#include <cstdint>
#include <cstdio>
#include <filesystem>
#include <sstream>
#include <string>
#include <unistd.h>

#include "textchef/episode.hpp"
#include "textchef/generator.hpp"
#include "textchef/policy.hpp"
#include "textchef/trajectory.hpp"
#include "support/scripted_policy.hpp"

using namespace textchef;

namespace {

Trajectory won_trajectory(int level, uint64_t seed) {
    GameSpec spec = generate(level, seed);
    ExpertPolicy policy(spec);
    auto [traj, result] = run_episode(spec, policy);
    REQUIRE(result.success);
    return traj;
}

struct TempDir {
    std::filesystem::path path;
    TempDir() {
        path = std::filesystem::temp_directory_path() /
               ("textchef-test-" + std::to_string(::getpid()) + "-" +
                std::to_string(reinterpret_cast<std::uintptr_t>(this)));
        std::filesystem::create_directories(path);
    }
    ~TempDir() { std::filesystem::remove_all(path); }
    std::string file(const std::string& name) const { return (path / name).string(); }
};

}  // namespace

TEST_CASE("episodes record cumulative scores and final outcome") {
    Trajectory traj = won_trajectory(2, 3);
    REQUIRE_FALSE(traj.turns.empty());
    CHECK(traj.final_status() == Status::Won);
    CHECK(traj.final_score() == traj.spec.max_score);
    CHECK(traj.normalized_points() == 1.0);

    int previous = 0;
    for (const auto& turn : traj.turns) {
        CHECK(turn.score >= previous);
        previous = turn.score;
    }
    // Every turn before the last is still mid-game.
    for (std::size_t i = 0; i + 1 < traj.turns.size(); ++i)
        CHECK(traj.turns[i].status == Status::Running);
}

TEST_CASE("trajectory files round-trip byte for byte") {
    TempDir dir;
    Trajectory traj = won_trajectory(4, 17);
    const std::string path = dir.file("episode.jsonl");
    save_trajectory(traj, path);

    Trajectory loaded = load_trajectory(path);
    CHECK(loaded.spec == traj.spec);
    CHECK(loaded.initial_observation == traj.initial_observation);
    CHECK(loaded.turns == traj.turns);
    CHECK(trajectory_to_string(loaded) == trajectory_to_string(traj));
}

TEST_CASE("jsonl records carry the expected structure") {
    Trajectory traj = won_trajectory(0, 1);
    std::istringstream in(trajectory_to_string(traj));
    std::string line;

    REQUIRE(std::getline(in, line));
    nlohmann::json header = nlohmann::json::parse(line);
    CHECK(header.at("record") == "header");
    CHECK(header.at("feedback_template_version") == "fb-v1");
    CHECK(header.at("game").at("level") == 0);
    CHECK(header.contains("initial_observation"));

    int turns = 0;
    nlohmann::json last;
    while (std::getline(in, line)) {
        last = nlohmann::json::parse(line);
        if (last.at("record") == "turn") {
            ++turns;
            CHECK(last.at("turn") == turns);
            CHECK(last.contains("action"));
            CHECK(last.contains("feedback"));
        }
    }
    CHECK(last.at("record") == "end");
    CHECK(last.at("turns") == turns);
    CHECK(last.at("status") == "Won");
    CHECK(turns == static_cast<int>(traj.turns.size()));
}

TEST_CASE("replay verification accepts faithful trajectories") {
    for (int level = 0; level < kLevelCount; ++level) {
        Trajectory traj = won_trajectory(level, 23);
        ReplayResult result = verify_trajectory(traj);
        CAPTURE(level, result.message);
        CHECK(result.ok);
    }
}

TEST_CASE("trajectories with invalid actions still replay bitwise") {
    GameSpec spec = generate(2, 9);
    std::vector<std::string> script = {"roast the potato", "examine(cookbook)",
                                       "open(fridge)", "gibberish", "look()"};
    test::ScriptedPolicy policy(script);
    auto [traj, result] = run_episode(spec, policy);
    (void)result;  // the script exhausts and loses; that is fine here
    REQUIRE(traj.turns.size() >= script.size());
    CHECK(traj.turns[0].feedback == kInvalidAction);

    ReplayResult replay = verify_trajectory(traj);
    CAPTURE(replay.message);
    CHECK(replay.ok);

    // ReplayPolicy drives the same episode to the same transcript.
    ReplayPolicy echo(traj);
    auto [traj2, result2] = run_episode(spec, echo);
    (void)result2;
    CHECK(traj2.turns == traj.turns);
}

TEST_CASE("replay verification pinpoints tampering") {
    Trajectory traj = won_trajectory(1, 4);

    SECTION("feedback text") {
        traj.turns[2].feedback += "!";
        ReplayResult result = verify_trajectory(traj);
        REQUIRE_FALSE(result.ok);
        CHECK(result.mismatch_turn == 3);
        CHECK(result.message.find("feedback differs") != std::string::npos);
    }
    SECTION("score") {
        traj.turns.back().score -= 1;
        ReplayResult result = verify_trajectory(traj);
        REQUIRE_FALSE(result.ok);
        CHECK(result.message.find("score differs") != std::string::npos);
    }
    SECTION("status") {
        traj.turns.back().status = Status::Lost;
        ReplayResult result = verify_trajectory(traj);
        REQUIRE_FALSE(result.ok);
        CHECK(result.message.find("status differs") != std::string::npos);
    }
    SECTION("initial observation") {
        traj.initial_observation = "-= Somewhere Else =-";
        ReplayResult result = verify_trajectory(traj);
        REQUIRE_FALSE(result.ok);
        CHECK(result.message == "initial observation differs");
    }
    SECTION("action text") {
        traj.turns[1].action_text = "look()";
        ReplayResult result = verify_trajectory(traj);
        CHECK_FALSE(result.ok);
    }
}

TEST_CASE("malformed trajectory files are rejected with clear errors") {
    Trajectory traj = won_trajectory(0, 2);
    const std::string good = trajectory_to_string(traj);

    auto parse_text = [](const std::string& text) {
        std::istringstream in(text);
        return read_trajectory(in);
    };

    CHECK_THROWS_AS(parse_text(""), TrajectoryFormatError);
    CHECK_THROWS_AS(parse_text("{\"record\":\"turn\"}"), TrajectoryFormatError);
    CHECK_THROWS_AS(parse_text("not json at all"), TrajectoryFormatError);
    CHECK_THROWS_AS(parse_text("{\"record\":\"mystery\"}"), TrajectoryFormatError);

    // Header but no end record: drop the final line.
    REQUIRE(good.back() == '\n');
    std::string no_end = good.substr(0, good.rfind('\n', good.size() - 2) + 1);
    CHECK_THROWS_AS(parse_text(no_end), TrajectoryFormatError);

    // Duplicate header.
    std::string first_line = good.substr(0, good.find('\n') + 1);
    CHECK_THROWS_AS(parse_text(first_line + good), TrajectoryFormatError);

    // Unknown status value inside a turn record (same-length splice).
    std::string bad_status = good;
    const std::string running = "\"status\":\"Running\"";
    std::size_t pos = bad_status.find(running);
    REQUIRE(pos != std::string::npos);
    bad_status.replace(pos, running.size(), "\"status\":\"Jogging\"");
    CHECK_THROWS_AS(parse_text(bad_status), TrajectoryFormatError);

    CHECK_THROWS_AS(load_trajectory("/nonexistent/path/episode.jsonl"),
                    TrajectoryFormatError);
}

TEST_CASE("normalized points degrade gracefully") {
    Trajectory traj;
    CHECK(traj.final_score() == 0);
    CHECK(traj.final_status() == Status::Running);
    CHECK(traj.normalized_points() == 0.0);

    traj.spec.max_score = 4;
    traj.turns.push_back({"look()", "whatever", 3, Status::Lost});
    CHECK(traj.normalized_points() == 0.75);
}
