#pragma once

#include <chrono>
#include <condition_variable>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <memory>
#include <mutex>
#include <optional>
#include <stdexcept>
#include <string>
#include <thread>
#include <utility>
#include <vector>

#include <httplib.h>
#include <nlohmann/json.hpp>

#include "textchef/game_model.hpp"
#include "textchef/parser.hpp"
#include "textchef/prompt.hpp"
#include "textchef/rng.hpp"
#include "textchef/trajectory.hpp"

namespace textchef {

struct PolicyError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

enum class BackendKind { RemoteChat, Expert, Replay, RandomValid, HumanRepl };

inline const char* to_string(BackendKind k) {
    switch (k) {
        case BackendKind::RemoteChat: return "remote_chat";
        case BackendKind::Expert: return "expert";
        case BackendKind::Replay: return "replay";
        case BackendKind::RandomValid: return "random_valid";
        case BackendKind::HumanRepl: return "human_repl";
    }
    return "expert";
}

inline std::optional<BackendKind> backend_kind_from_string(const std::string& s) {
    if (s == "remote_chat") return BackendKind::RemoteChat;
    if (s == "expert") return BackendKind::Expert;
    if (s == "replay") return BackendKind::Replay;
    if (s == "random_valid") return BackendKind::RandomValid;
    if (s == "human_repl") return BackendKind::HumanRepl;
    return std::nullopt;
}

struct BackendConfig {
    BackendKind kind = BackendKind::Expert;
    std::string endpoint;    // remote_chat only
    std::string model_name;  // remote_chat only
    double temperature = 0.0;
    std::chrono::milliseconds timeout{10000};
    int max_retries = 2;
    std::string api_key_env_var = "TEXTCHEF_API_KEY";
};

/// One decision maker. next_action sees the full prompt bundle and answers
/// with raw action text; the same interface also serves reflection calls
/// (tip generation), where the "action" is a tips document.
class Policy {
  public:
    virtual ~Policy() = default;

    /// Called at the start of every episode.
    virtual void reset() {}

    virtual std::string next_action(const PromptBundle& bundle) = 0;
};

// --- Remote chat transport ---

namespace detail {

/// Caps concurrent remote calls process-wide.
class InflightGate {
  public:
    static InflightGate& instance() {
        static InflightGate gate;
        return gate;
    }

    void set_cap(int cap) {
        std::lock_guard<std::mutex> lock(mutex_);
        cap_ = cap > 0 ? cap : 1;
        released_.notify_all();
    }

    void acquire() {
        std::unique_lock<std::mutex> lock(mutex_);
        released_.wait(lock, [this] { return active_ < cap_; });
        ++active_;
    }

    void release() {
        {
            std::lock_guard<std::mutex> lock(mutex_);
            --active_;
        }
        released_.notify_one();
    }

  private:
    std::mutex mutex_;
    std::condition_variable released_;
    int active_ = 0;
    int cap_ = 4;
};

struct InflightTicket {
    InflightTicket() { InflightGate::instance().acquire(); }
    ~InflightTicket() { InflightGate::instance().release(); }
    InflightTicket(const InflightTicket&) = delete;
    InflightTicket& operator=(const InflightTicket&) = delete;
};

inline std::pair<std::string, std::string> split_url(const std::string& url) {
    auto scheme_end = url.find("://");
    if (scheme_end == std::string::npos) throw PolicyError("endpoint is not a URL: " + url);
    auto path_begin = url.find('/', scheme_end + 3);
    if (path_begin == std::string::npos) return {url, "/"};
    return {url.substr(0, path_begin), url.substr(path_begin)};
}

inline std::string redact(std::string text, const std::string& secret) {
    if (secret.empty()) return text;
    std::size_t pos = 0;
    while ((pos = text.find(secret, pos)) != std::string::npos) {
        text.replace(pos, secret.size(), "[REDACTED]");
        pos += 10;
    }
    return text;
}

/// Appends one redacted event line to <dir>/remote_log.jsonl.
inline void log_remote_event(const std::string& dir, const std::string& secret,
                             nlohmann::json event) {
    if (dir.empty()) return;
    std::error_code ec;
    std::filesystem::create_directories(dir, ec);
    std::string line = redact(event.dump(), secret);
    static std::mutex log_mutex;
    std::lock_guard<std::mutex> lock(log_mutex);
    std::ofstream out(dir + "/remote_log.jsonl", std::ios::app | std::ios::binary);
    out << line << "\n";
}

}  // namespace detail

inline void set_remote_inflight_cap(int cap) { detail::InflightGate::instance().set_cap(cap); }

inline constexpr std::chrono::milliseconds kRetryBackoffBase{100};

/// Sends role-tagged messages to a chat-completion endpoint and returns the
/// completion text. Wire format: POST {endpoint} with JSON body
/// {"model", "temperature", "messages":[{"role","content"}...]}, bearer key
/// from the configured env var, response {"choices":[{"message":{"content"}}]}.
/// Transient failures (connect errors, timeouts, HTTP 429/5xx) are retried
/// with exponential backoff up to max_retries; everything logged under
/// log_dir has the key redacted.
inline std::string complete(const std::vector<Message>& messages, const BackendConfig& config,
                            const std::string& log_dir = {}) {
    if (config.kind != BackendKind::RemoteChat)
        throw PolicyError("complete() requires a remote_chat backend config");
    if (config.endpoint.empty() || config.model_name.empty())
        throw PolicyError("remote_chat requires endpoint and model_name");

    std::string api_key;
    if (!config.api_key_env_var.empty())
        if (const char* raw = std::getenv(config.api_key_env_var.c_str())) api_key = raw;

    nlohmann::json body;
    body["model"] = config.model_name;
    body["temperature"] = config.temperature;
    body["messages"] = nlohmann::json::array();
    for (const auto& m : messages)
        body["messages"].push_back({{"role", m.role}, {"content", m.content}});
    const std::string body_text = body.dump();

    auto [base, path] = detail::split_url(config.endpoint);
    httplib::Client client(base);
    const auto timeout = config.timeout;
    client.set_connection_timeout(timeout);
    client.set_read_timeout(timeout);
    client.set_write_timeout(timeout);
    httplib::Headers headers;
    if (!api_key.empty()) headers.emplace("Authorization", "Bearer " + api_key);

    std::string last_error;
    for (int attempt = 0; attempt <= config.max_retries; ++attempt) {
        if (attempt > 0)
            std::this_thread::sleep_for(kRetryBackoffBase * (1 << (attempt - 1)));
        detail::log_remote_event(log_dir, api_key,
                                 {{"event", "request"},
                                  {"attempt", attempt},
                                  {"endpoint", config.endpoint},
                                  {"body", body_text}});
        httplib::Result res = [&] {
            detail::InflightTicket ticket;
            return client.Post(path, headers, body_text, "application/json");
        }();
        if (!res) {
            last_error = "transport error: " + httplib::to_string(res.error());
            detail::log_remote_event(log_dir, api_key,
                                     {{"event", "transport_error"},
                                      {"attempt", attempt},
                                      {"error", last_error}});
            continue;
        }
        detail::log_remote_event(log_dir, api_key,
                                 {{"event", "response"},
                                  {"attempt", attempt},
                                  {"status", res->status},
                                  {"body", res->body}});
        if (res->status >= 200 && res->status < 300) {
            try {
                nlohmann::json parsed = nlohmann::json::parse(res->body);
                return parsed.at("choices").at(0).at("message").at("content").get<std::string>();
            } catch (const nlohmann::json::exception& e) {
                throw PolicyError(std::string("malformed response body: ") + e.what());
            }
        }
        if (res->status == 429 || res->status >= 500) {
            last_error = "http " + std::to_string(res->status);
            continue;
        }
        throw PolicyError("backend rejected request: http " + std::to_string(res->status));
    }
    throw PolicyError("backend unreachable after " + std::to_string(config.max_retries + 1) +
                      " attempts (" + last_error + ")");
}

// --- Backends ---

class RemoteChatPolicy : public Policy {
  public:
    RemoteChatPolicy(BackendConfig config, std::string log_dir = {},
                     std::size_t char_budget = kDefaultCharBudget)
        : config_(std::move(config)), log_dir_(std::move(log_dir)), char_budget_(char_budget) {}

    std::string next_action(const PromptBundle& bundle) override {
        return complete(serialize_bundle(bundle, char_budget_), config_, log_dir_);
    }

  private:
    BackendConfig config_;
    std::string log_dir_;
    std::size_t char_budget_;
};

/// Plays the walkthrough, one action per turn.
class ExpertPolicy : public Policy {
  public:
    explicit ExpertPolicy(const GameSpec& spec) {
        for (const auto& action : spec.walkthrough) actions_.push_back(render(action));
    }
    explicit ExpertPolicy(std::vector<std::string> actions) : actions_(std::move(actions)) {}

    void reset() override { cursor_ = 0; }

    std::string next_action(const PromptBundle&) override {
        if (cursor_ >= actions_.size()) throw PolicyError("expert walkthrough exhausted");
        return actions_[cursor_++];
    }

  private:
    std::vector<std::string> actions_;
    std::size_t cursor_ = 0;
};

/// Replays the action texts of a stored trajectory.
class ReplayPolicy : public Policy {
  public:
    explicit ReplayPolicy(const Trajectory& trajectory) {
        for (const auto& turn : trajectory.turns) actions_.push_back(turn.action_text);
    }

    void reset() override { cursor_ = 0; }

    std::string next_action(const PromptBundle&) override {
        if (cursor_ >= actions_.size()) throw PolicyError("replay trajectory exhausted");
        return actions_[cursor_++];
    }

  private:
    std::vector<std::string> actions_;
    std::size_t cursor_ = 0;
};

/// Emits uniformly random grammar-valid actions (valid against the parser,
/// not against the world).
class RandomValidPolicy : public Policy {
  public:
    explicit RandomValidPolicy(std::uint64_t seed) : rng_(seed) {}

    std::string next_action(const PromptBundle&) override {
        static const std::vector<std::string> directions = {"north", "east", "south", "west"};
        static const std::vector<std::string> entities = {
            "fridge", "counter", "stove",         "oven",  "cookbook",
            "knife",  "meal",    "purple potato", "apple",
        };
        const ActionFormInfo& info = kActionForms[rng_.index(std::size(kActionForms))];
        Action action;
        action.form = info.form;
        for (int i = 0; i < info.arity; ++i) {
            if (action.form == ActionForm::Go)
                action.args.push_back(rng_.pick(directions));
            else if (i == 1 && action.form == ActionForm::Cook)
                action.args.push_back(rng_.pick<std::string>({"stove", "oven"}));
            else if (i == 1 && (action.form == ActionForm::Slice ||
                                action.form == ActionForm::Chop ||
                                action.form == ActionForm::Dice))
                action.args.push_back("knife");
            else
                action.args.push_back(rng_.pick(entities));
        }
        return render(action);
    }

  private:
    SplitMix64 rng_;
};

/// Interactive backend: prints the latest feedback, reads one action line.
class HumanReplPolicy : public Policy {
  public:
    explicit HumanReplPolicy(std::istream& in = std::cin, std::ostream& out = std::cout)
        : in_(&in), out_(&out) {}

    std::string next_action(const PromptBundle& bundle) override {
        if (bundle.transcript.size() == 1 && !bundle.tips.empty())
            *out_ << render_tips(bundle.tips) << "\n\n";
        if (!bundle.transcript.empty()) *out_ << bundle.transcript.back().feedback << "\n";
        *out_ << "> " << std::flush;
        std::string line;
        if (!std::getline(*in_, line)) throw PolicyError("interactive input closed");
        return line;
    }

  private:
    std::istream* in_;
    std::ostream* out_;
};

struct PolicyContext {
    const GameSpec* spec = nullptr;      // expert
    const Trajectory* replay = nullptr;  // replay
    std::uint64_t random_seed = 0;       // random_valid
    std::istream* in = nullptr;          // human_repl
    std::ostream* out = nullptr;
    std::string log_dir;  // remote_chat request/response log
    std::size_t char_budget = kDefaultCharBudget;
};

inline std::unique_ptr<Policy> make_policy(const BackendConfig& config,
                                           const PolicyContext& ctx = {}) {
    switch (config.kind) {
        case BackendKind::RemoteChat:
            return std::make_unique<RemoteChatPolicy>(config, ctx.log_dir, ctx.char_budget);
        case BackendKind::Expert:
            if (ctx.spec == nullptr) throw PolicyError("expert backend needs a game spec");
            return std::make_unique<ExpertPolicy>(*ctx.spec);
        case BackendKind::Replay:
            if (ctx.replay == nullptr) throw PolicyError("replay backend needs a trajectory");
            return std::make_unique<ReplayPolicy>(*ctx.replay);
        case BackendKind::RandomValid:
            return std::make_unique<RandomValidPolicy>(ctx.random_seed);
        case BackendKind::HumanRepl:
            return std::make_unique<HumanReplPolicy>(ctx.in ? *ctx.in : std::cin,
                                                     ctx.out ? *ctx.out : std::cout);
    }
    throw PolicyError("unknown backend kind");
}

}  // namespace textchef
