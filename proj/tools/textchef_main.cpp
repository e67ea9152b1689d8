// Command-line entry point: generate games, play them, run the tip loops,
// aggregate tips, evaluate suites, and verify stored trajectories.

#include <chrono>
#include <cstdio>
#include <ctime>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <map>
#include <memory>
#include <optional>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <nlohmann/json.hpp>

#include "textchef/textchef.hpp"

namespace fs = std::filesystem;
using nlohmann::json;

namespace {

constexpr int kExitOk = 0;
constexpr int kExitUsage = 1;
constexpr int kExitRuntime = 2;
constexpr int kExitBackend = 3;

struct UsageError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

std::string utc_stamp() {
    auto now = std::chrono::system_clock::now();
    std::time_t t = std::chrono::system_clock::to_time_t(now);
    std::tm tm{};
    gmtime_r(&t, &tm);
    char buf[32];
    std::strftime(buf, sizeof(buf), "%Y%m%dT%H%M%SZ", &tm);
    return buf;
}

// Run artifacts go in a fresh timestamped directory unless --out-dir says
// otherwise; directory names carry the timestamp, file contents never do.
std::string resolve_run_dir(const std::string& out_dir, const std::string& subcommand) {
    if (!out_dir.empty()) {
        fs::create_directories(out_dir);
        return out_dir;
    }
    std::string dir = "runs/" + subcommand + "-" + utc_stamp();
    std::string candidate = dir;
    for (int i = 2; fs::exists(candidate); ++i) candidate = dir + "-" + std::to_string(i);
    fs::create_directories(candidate);
    return candidate;
}

void write_file(const std::string& path, const std::string& content) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw std::runtime_error("cannot open for writing: " + path);
    out << content;
}

std::string read_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw std::runtime_error("cannot open: " + path);
    std::ostringstream buf;
    buf << in.rdbuf();
    return buf.str();
}

void write_manifest(const std::string& dir, const std::string& command, const json& config) {
    json manifest;
    manifest["tool_version"] = textchef::kVersion;
    manifest["rng_algorithm"] = textchef::kRngAlgorithmId;
    manifest["feedback_template_version"] = textchef::kFeedbackTemplateVersion;
    manifest["command"] = command;
    manifest["config"] = config;
    write_file(dir + "/manifest.json", manifest.dump(2) + "\n");
}

// Shared backend flags and their resolution into a BackendConfig.
struct BackendFlags {
    std::string backend = "expert";
    std::string endpoint;
    std::string model;
    double temperature = 0.0;
    int timeout_ms = 10000;
    int retries = 2;
    std::string api_key_env = "TEXTCHEF_API_KEY";
    int char_budget = static_cast<int>(textchef::kDefaultCharBudget);
    int inflight_cap = 4;
    std::string replay_file;  // replay backend input
    std::uint64_t random_seed = 0;

    void attach(CLI::App* cmd) {
        cmd->add_option("--backend", backend,
                        "Policy backend: remote_chat|expert|replay|random_valid|human_repl");
        cmd->add_option("--endpoint", endpoint, "Chat-completion endpoint URL (remote_chat)");
        cmd->add_option("--model", model, "Model name sent to the endpoint (remote_chat)");
        cmd->add_option("--temperature", temperature, "Sampling temperature (remote_chat)");
        cmd->add_option("--timeout", timeout_ms, "Per-request timeout in milliseconds");
        cmd->add_option("--retries", retries, "Max retries for transient backend failures");
        cmd->add_option("--api-key-env", api_key_env, "Env var holding the API key");
        cmd->add_option("--char-budget", char_budget, "Prompt character budget");
        cmd->add_option("--inflight-cap", inflight_cap, "Max concurrent remote requests");
        cmd->add_option("--replay-file", replay_file, "Trajectory file (replay backend)");
        cmd->add_option("--random-seed", random_seed, "Seed (random_valid backend)");
    }

    void apply_config(const json& cfg) {
        if (cfg.contains("backend")) backend = cfg["backend"].get<std::string>();
        if (cfg.contains("endpoint")) endpoint = cfg["endpoint"].get<std::string>();
        if (cfg.contains("model")) model = cfg["model"].get<std::string>();
        if (cfg.contains("temperature")) temperature = cfg["temperature"].get<double>();
        if (cfg.contains("timeout")) timeout_ms = cfg["timeout"].get<int>();
        if (cfg.contains("retries")) retries = cfg["retries"].get<int>();
        if (cfg.contains("api_key_env")) api_key_env = cfg["api_key_env"].get<std::string>();
        if (cfg.contains("char_budget")) char_budget = cfg["char_budget"].get<int>();
        if (cfg.contains("inflight_cap")) inflight_cap = cfg["inflight_cap"].get<int>();
    }

    textchef::BackendConfig resolve() const {
        auto kind = textchef::backend_kind_from_string(backend);
        if (!kind) throw UsageError("unknown backend: " + backend);
        textchef::BackendConfig config;
        config.kind = *kind;
        config.endpoint = endpoint;
        config.model_name = model;
        config.temperature = temperature;
        config.timeout = std::chrono::milliseconds(timeout_ms);
        config.max_retries = retries;
        config.api_key_env_var = api_key_env;
        if (config.kind == textchef::BackendKind::RemoteChat &&
            (config.endpoint.empty() || config.model_name.empty()))
            throw UsageError("remote_chat requires --endpoint and --model");
        return config;
    }

    json describe() const {
        return {{"backend", backend},           {"endpoint", endpoint},
                {"model", model},               {"temperature", temperature},
                {"timeout_ms", timeout_ms},     {"retries", retries},
                {"api_key_env", api_key_env},   {"char_budget", char_budget},
                {"inflight_cap", inflight_cap}, {"replay_file", replay_file},
                {"random_seed", random_seed}};
    }
};

textchef::TipSet load_tip_source(const std::string& source) {
    if (source.empty() || source == "none") return {};
    return textchef::resolve_tips_source(source);
}

std::vector<textchef::GameSpec> load_suite_dir(const std::string& dir) {
    std::vector<fs::path> files;
    for (const auto& entry : fs::directory_iterator(dir)) {
        if (!entry.is_regular_file()) continue;
        if (entry.path().extension() != ".json") continue;
        if (entry.path().filename() == "manifest.json") continue;
        files.push_back(entry.path());
    }
    std::sort(files.begin(), files.end());
    if (files.empty()) throw std::runtime_error("no game spec files in " + dir);
    std::vector<textchef::GameSpec> specs;
    for (const auto& path : files) specs.push_back(textchef::load_spec(path.string()));
    return specs;
}

// Suite selection shared by fewshot and eval: either an existing directory
// of specs or (level, count, seed-base) generation.
struct SuiteFlags {
    std::string suite_dir;
    int level = 0;
    int count = 20;
    std::uint64_t seed_base = 0;
    bool level_set = false;

    void attach(CLI::App* cmd) {
        cmd->add_option("--suite", suite_dir, "Directory of game spec JSON files");
        cmd->add_option("--level", level, "Difficulty level 0-4 (generates the suite)")
            ->check(CLI::Range(0, 4))
            ->each([this](const std::string&) { level_set = true; });
        cmd->add_option("--count", count, "Games in a generated suite");
        cmd->add_option("--seed-base", seed_base, "First seed of a generated suite");
    }

    std::vector<textchef::GameSpec> resolve() const {
        if (!suite_dir.empty()) return load_suite_dir(suite_dir);
        if (!level_set) throw UsageError("need --suite DIR or --level L");
        return textchef::make_suite(level, count, seed_base);
    }

    json describe() const {
        return {{"suite", suite_dir},
                {"level", level},
                {"count", count},
                {"seed_base", seed_base}};
    }
};

void save_trial_artifacts(const std::string& dir, const textchef::GameSpec& spec,
                          const textchef::TrialRun& run) {
    std::string base = dir + "/" + spec.game_id();
    fs::create_directories(base);
    for (const auto& record : run.records) {
        std::string prefix = base + "/trial-" + std::to_string(record.trial_index);
        textchef::save_trajectory(record.trajectory, prefix + ".jsonl");
        if (!record.tips_out.empty())
            textchef::save_tips(record.tips_out, prefix + "-tips.json");
        if (!record.reflection_prompt.empty())
            write_file(prefix + "-reflection-prompt.txt", record.reflection_prompt + "\n");
        if (!record.reflection_output.empty())
            write_file(prefix + "-reflection-output.txt", record.reflection_output + "\n");
    }
    if (run.solved && !run.final_tips.empty())
        textchef::save_tips(run.final_tips, base + "/final-tips.json");
    json summary;
    summary["solved"] = run.solved;
    summary["solved_trial"] = run.solved_trial;
    summary["trials"] = run.records.size();
    summary["diagnostic"] = run.diagnostic;
    write_file(base + "/summary.json", summary.dump(2) + "\n");
}

// --- Subcommands ---

int cmd_gen(int level, std::uint64_t seed, const std::string& out, bool suite, int count,
            std::uint64_t seed_base, const std::string& out_dir, const json& cfg_echo) {
    if (suite) {
        std::string dir = resolve_run_dir(out_dir, "suite");
        auto specs = textchef::make_suite(level, count, seed_base);
        for (const auto& spec : specs)
            textchef::save_spec(spec, dir + "/" + spec.game_id() + ".json");
        write_manifest(dir, "gen", cfg_echo);
        std::cout << dir << "\n";
        return kExitOk;
    }
    if (out.empty()) throw UsageError("gen needs --out FILE (or --suite with --out-dir)");
    textchef::save_spec(textchef::generate(level, seed), out);
    return kExitOk;
}

int cmd_play(const std::string& spec_file, int level, std::uint64_t seed,
             const BackendFlags& backend, const std::string& tips_source,
             const std::string& save_trajectory) {
    textchef::GameSpec spec =
        spec_file.empty() ? textchef::generate(level, seed) : textchef::load_spec(spec_file);

    textchef::PolicyContext ctx;
    ctx.spec = &spec;
    ctx.random_seed = backend.random_seed;
    ctx.char_budget = static_cast<std::size_t>(backend.char_budget);
    textchef::Trajectory replay_source;
    if (!backend.replay_file.empty()) {
        replay_source = textchef::load_trajectory(backend.replay_file);
        ctx.replay = &replay_source;
    }
    auto policy = textchef::make_policy(backend.resolve(), ctx);

    textchef::EpisodeOptions options;
    options.context.tips = load_tip_source(tips_source);
    options.char_budget = static_cast<std::size_t>(backend.char_budget);
    auto [trajectory, result] = textchef::run_episode(spec, *policy, std::move(options));

    if (!save_trajectory.empty()) textchef::save_trajectory(trajectory, save_trajectory);
    if (!result.diagnostic.empty()) {
        std::cerr << "policy failure: " << result.diagnostic << "\n";
        return kExitBackend;
    }
    std::cout << "*** " << (result.success ? "You won!" : "You lost.") << " Score " << result.points
              << " of " << spec.max_score << " in " << result.turns << " turns. ***\n";
    return kExitOk;
}

int cmd_fewshot(const SuiteFlags& suite, const BackendFlags& backend,
                const std::string& scenario_name, int max_trials, const std::string& tips_source,
                bool raw_replay, bool tips_from_success, const std::string& out_dir,
                const json& cfg_echo) {
    auto scenario = textchef::scenario_from_string(scenario_name);
    if (!scenario) throw UsageError("unknown scenario: " + scenario_name);

    std::string dir = resolve_run_dir(out_dir, "fewshot");
    auto specs = suite.resolve();
    auto config = backend.resolve();
    textchef::set_remote_inflight_cap(backend.inflight_cap);

    textchef::FewShotOptions options;
    options.loop.scenario = *scenario;
    options.loop.max_trials = max_trials;
    options.loop.raw_replay_baseline = raw_replay;
    options.loop.tips_from_success = tips_from_success;
    options.loop.char_budget = static_cast<std::size_t>(backend.char_budget);
    options.loop.initial_tips = load_tip_source(tips_source);
    options.backend_label = backend.backend;
    options.tip_source = tips_source.empty() ? "none" : tips_source;

    std::vector<textchef::TipSet> final_tipsets;
    options.on_game = [&](const textchef::GameSpec& spec, const textchef::TrialRun& run) {
        save_trial_artifacts(dir, spec, run);
        if (run.solved && !run.final_tips.empty()) final_tipsets.push_back(run.final_tips);
    };

    textchef::Trajectory replay_source;
    textchef::PolicyContext ctx;
    ctx.random_seed = backend.random_seed;
    ctx.log_dir = dir;
    ctx.char_budget = static_cast<std::size_t>(backend.char_budget);
    if (!backend.replay_file.empty()) {
        replay_source = textchef::load_trajectory(backend.replay_file);
        ctx.replay = &replay_source;
    }
    textchef::EvalReport report =
        textchef::few_shot_curve(specs, textchef::factory_for(config, ctx), options);

    for (std::size_t i = 0; i < final_tipsets.size(); ++i)
        textchef::save_tips(final_tipsets[i], dir + "/final-tips-" + std::to_string(i + 1) + ".json");
    textchef::save_report(report, dir + "/report.json", dir + "/report.csv");
    write_manifest(dir, "fewshot", cfg_echo);
    std::cout << dir << "\n";
    return report.backend_failures > 0 ? kExitBackend : kExitOk;
}

int cmd_aggregate(const std::vector<std::string>& tips_in, const std::string& from_dir,
                  const BackendFlags& backend, const std::string& out, const std::string& out_dir,
                  const json& cfg_echo) {
    std::vector<textchef::TipSet> final_tipsets;
    for (const auto& path : tips_in) final_tipsets.push_back(textchef::load_tips(path));
    if (!from_dir.empty()) {
        std::vector<fs::path> files;
        for (const auto& entry : fs::recursive_directory_iterator(from_dir))
            if (entry.is_regular_file() && entry.path().filename() == "final-tips.json")
                files.push_back(entry.path());
        std::sort(files.begin(), files.end());
        for (const auto& path : files) final_tipsets.push_back(textchef::load_tips(path.string()));
    }
    if (final_tipsets.empty()) throw UsageError("aggregate needs --tips-in FILE... or --from-dir DIR");

    std::string dir = resolve_run_dir(out_dir, "aggregate");
    textchef::PolicyContext ctx;
    ctx.log_dir = dir;
    ctx.char_budget = static_cast<std::size_t>(backend.char_budget);
    auto policy = textchef::make_policy(backend.resolve(), ctx);
    textchef::set_remote_inflight_cap(backend.inflight_cap);

    textchef::TipSet aggregated = textchef::aggregate_tips(final_tipsets, *policy);
    std::string out_path = out.empty() ? dir + "/aggregated-tips.json" : out;
    textchef::save_tips(aggregated, out_path);
    write_manifest(dir, "aggregate", cfg_echo);
    std::cout << out_path << "\n";
    return kExitOk;
}

int cmd_eval(const SuiteFlags& suite, const BackendFlags& backend, const std::string& tips_source,
             int workers, const std::string& out_dir, const json& cfg_echo) {
    std::string dir = resolve_run_dir(out_dir, "eval");
    auto specs = suite.resolve();
    auto config = backend.resolve();
    textchef::set_remote_inflight_cap(backend.inflight_cap);

    textchef::SuiteOptions options;
    options.tips = load_tip_source(tips_source);
    options.workers = workers;
    options.char_budget = static_cast<std::size_t>(backend.char_budget);
    options.backend_label = backend.backend;
    options.tip_source = tips_source.empty() ? "none" : tips_source;

    textchef::PolicyContext ctx;
    ctx.log_dir = dir;
    ctx.random_seed = backend.random_seed;
    ctx.char_budget = static_cast<std::size_t>(backend.char_budget);
    textchef::EvalReport report =
        textchef::evaluate_suite(specs, textchef::factory_for(config, ctx), options);

    textchef::save_report(report, dir + "/report.json", dir + "/report.csv");
    write_manifest(dir, "eval", cfg_echo);
    std::cout << dir << "\n";
    for (const auto& [level, point] : report.per_level)
        std::cout << "level " << level << ": normalized_points " << point.normalized_points
                  << ", success_rate " << point.success_rate << " over " << point.episodes
                  << " episodes\n";
    return report.backend_failures > 0 ? kExitBackend : kExitOk;
}

int cmd_replay(const std::string& trajectory_file, const std::string& spec_file) {
    if (!trajectory_file.empty()) {
        textchef::Trajectory traj = textchef::load_trajectory(trajectory_file);
        textchef::ReplayResult result = textchef::verify_trajectory(traj);
        if (!result.ok) {
            std::cerr << "replay mismatch: " << result.message << "\n";
            return kExitRuntime;
        }
        std::cout << "replay verified: " << traj.turns.size() << " turns, score "
                  << traj.final_score() << " of " << traj.spec.max_score << ", "
                  << textchef::to_string(traj.final_status()) << "\n";
        return kExitOk;
    }
    if (!spec_file.empty()) {
        textchef::GameSpec spec = textchef::load_spec(spec_file);
        textchef::ExpertPolicy policy(spec);
        auto [trajectory, result] = textchef::run_episode(spec, policy);
        (void)trajectory;
        std::cout << "walkthrough: score " << result.points << " of " << spec.max_score << ", "
                  << (result.success ? "Won" : "Lost") << " in " << result.turns << " turns\n";
        return result.success && result.points == spec.max_score ? kExitOk : kExitRuntime;
    }
    throw UsageError("replay needs --trajectory FILE or --spec FILE");
}

json load_config_file(int argc, char** argv) {
    std::string path;
    for (int i = 1; i < argc; ++i) {
        std::string arg = argv[i];
        if (arg == "--config" && i + 1 < argc) path = argv[i + 1];
        else if (arg.rfind("--config=", 0) == 0) path = arg.substr(9);
    }
    if (path.empty()) return json::object();
    json cfg = json::parse(read_file(path));
    if (!cfg.is_object()) throw std::runtime_error("config file must hold a JSON object");
    return cfg;
}

}  // namespace

int main(int argc, char** argv) {
    try {
        json cfg = load_config_file(argc, argv);

        CLI::App app{"Deterministic cooking-game harness with a tip-learning agent loop"};
        app.require_subcommand(1);
        std::string config_path;
        app.add_option("--config", config_path, "JSON config file; flags override its values");
        app.set_version_flag("--version", std::string(textchef::kVersion));

        // gen
        auto* gen = app.add_subcommand("gen", "Generate a game spec or a suite");
        int gen_level = 0;
        std::uint64_t gen_seed = 0;
        std::string gen_out;
        bool gen_suite = false;
        int gen_count = 20;
        std::uint64_t gen_seed_base = 0;
        std::string gen_out_dir;
        if (cfg.contains("level")) gen_level = cfg["level"].get<int>();
        if (cfg.contains("seed")) gen_seed = cfg["seed"].get<std::uint64_t>();
        gen->add_option("--level", gen_level, "Difficulty level 0-4")->check(CLI::Range(0, 4));
        gen->add_option("--seed", gen_seed, "Generation seed");
        gen->add_option("--out", gen_out, "Output spec file");
        gen->add_flag("--suite", gen_suite, "Generate a numbered suite instead");
        gen->add_option("--count", gen_count, "Suite size");
        gen->add_option("--seed-base", gen_seed_base, "First suite seed");
        gen->add_option("--out-dir", gen_out_dir, "Suite output directory");

        // play
        auto* play = app.add_subcommand("play", "Play one episode (human REPL by default)");
        std::string play_spec;
        int play_level = 0;
        std::uint64_t play_seed = 0;
        std::string play_tips;
        std::string play_save;
        BackendFlags play_backend;
        play_backend.backend = "human_repl";
        play_backend.apply_config(cfg);
        play->add_option("--spec", play_spec, "Game spec file (else --level/--seed)");
        play->add_option("--level", play_level, "Difficulty level 0-4")->check(CLI::Range(0, 4));
        play->add_option("--seed", play_seed, "Generation seed");
        play->add_option("--tips", play_tips, "Tip source: FILE | builtin:human | builtin:general");
        play->add_option("--save-trajectory", play_save, "Write the episode trajectory here");
        play_backend.attach(play);

        // fewshot
        auto* fewshot = app.add_subcommand("fewshot", "Multi-trial tip-learning loop over a suite");
        SuiteFlags fewshot_suite;
        BackendFlags fewshot_backend;
        fewshot_backend.apply_config(cfg);
        std::string fewshot_scenario = "self_history";
        int fewshot_max_trials = 6;
        std::string fewshot_tips;
        bool fewshot_raw_replay = false;
        bool fewshot_tips_from_success = false;
        std::string fewshot_out_dir;
        if (cfg.contains("scenario")) fewshot_scenario = cfg["scenario"].get<std::string>();
        if (cfg.contains("max_trials")) fewshot_max_trials = cfg["max_trials"].get<int>();
        fewshot_suite.attach(fewshot);
        fewshot_backend.attach(fewshot);
        fewshot->add_option("--scenario", fewshot_scenario,
                            "self_history | expert_contrast");
        fewshot->add_option("--max-trials", fewshot_max_trials, "Trial cap per game");
        fewshot->add_option("--tips", fewshot_tips, "Initial tip source");
        fewshot->add_flag("--raw-replay-baseline", fewshot_raw_replay,
                          "Inject past trajectories verbatim instead of tips");
        fewshot->add_flag("--tips-from-success", fewshot_tips_from_success,
                          "Also distill tips from successful trials");
        fewshot->add_option("--out-dir", fewshot_out_dir, "Run directory (default timestamped)");

        // aggregate
        auto* aggregate = app.add_subcommand("aggregate", "Summarize final tips across games");
        std::vector<std::string> agg_tips_in;
        std::string agg_from_dir;
        std::string agg_out;
        std::string agg_out_dir;
        BackendFlags agg_backend;
        agg_backend.apply_config(cfg);
        aggregate->add_option("--tips-in", agg_tips_in, "Final tip files to aggregate");
        aggregate->add_option("--from-dir", agg_from_dir,
                              "Collect final-tips.json files under this directory");
        aggregate->add_option("--out", agg_out, "Aggregated tip output file");
        aggregate->add_option("--out-dir", agg_out_dir, "Run directory (default timestamped)");
        agg_backend.attach(aggregate);

        // eval
        auto* eval = app.add_subcommand("eval", "Zero-shot evaluation of a suite");
        SuiteFlags eval_suite;
        BackendFlags eval_backend;
        eval_backend.apply_config(cfg);
        std::string eval_tips;
        int eval_workers = 1;
        std::string eval_out_dir;
        if (cfg.contains("tips")) eval_tips = cfg["tips"].get<std::string>();
        if (cfg.contains("workers")) eval_workers = cfg["workers"].get<int>();
        eval_suite.attach(eval);
        eval_backend.attach(eval);
        eval->add_option("--tips", eval_tips, "Tip source: FILE | builtin:human | builtin:general");
        eval->add_option("--workers", eval_workers, "Concurrent episodes");
        eval->add_option("--out-dir", eval_out_dir, "Run directory (default timestamped)");

        // replay
        auto* replay = app.add_subcommand("replay", "Verify a trajectory or run a walkthrough");
        std::string replay_trajectory;
        std::string replay_spec;
        replay->add_option("--trajectory", replay_trajectory, "Trajectory file to verify");
        replay->add_option("--spec", replay_spec, "Game spec whose walkthrough to run");

        try {
            app.parse(argc, argv);
        } catch (const CLI::ParseError& e) {
            int code = app.exit(e);
            return code == 0 ? kExitOk : kExitUsage;
        }

        if (gen->parsed())
            return cmd_gen(gen_level, gen_seed, gen_out, gen_suite, gen_count, gen_seed_base,
                           gen_out_dir,
                           json{{"level", gen_level},
                                {"seed", gen_seed},
                                {"suite", gen_suite},
                                {"count", gen_count},
                                {"seed_base", gen_seed_base}});
        if (play->parsed())
            return cmd_play(play_spec, play_level, play_seed, play_backend, play_tips, play_save);
        if (fewshot->parsed()) {
            json echo = fewshot_suite.describe();
            echo.update(fewshot_backend.describe());
            echo["scenario"] = fewshot_scenario;
            echo["max_trials"] = fewshot_max_trials;
            echo["tips"] = fewshot_tips;
            echo["raw_replay_baseline"] = fewshot_raw_replay;
            echo["tips_from_success"] = fewshot_tips_from_success;
            return cmd_fewshot(fewshot_suite, fewshot_backend, fewshot_scenario,
                               fewshot_max_trials, fewshot_tips, fewshot_raw_replay,
                               fewshot_tips_from_success, fewshot_out_dir, echo);
        }
        if (aggregate->parsed()) {
            json echo = agg_backend.describe();
            echo["tips_in"] = agg_tips_in;
            echo["from_dir"] = agg_from_dir;
            return cmd_aggregate(agg_tips_in, agg_from_dir, agg_backend, agg_out, agg_out_dir,
                                 echo);
        }
        if (eval->parsed()) {
            json echo = eval_suite.describe();
            echo.update(eval_backend.describe());
            echo["tips"] = eval_tips;
            echo["workers"] = eval_workers;
            return cmd_eval(eval_suite, eval_backend, eval_tips, eval_workers, eval_out_dir, echo);
        }
        if (replay->parsed()) return cmd_replay(replay_trajectory, replay_spec);
        throw UsageError("no subcommand given");
    } catch (const UsageError& e) {
        std::cerr << "usage error: " << e.what() << "\n";
        return kExitUsage;
    } catch (const textchef::PolicyError& e) {
        std::cerr << "backend failure: " << e.what() << "\n";
        return kExitBackend;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitRuntime;
    }
}
