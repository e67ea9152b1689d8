#pragma once

#include <cctype>
#include <fstream>
#include <optional>
#include <sstream>
#include <stdexcept>
#include <string>
#include <vector>

#include <nlohmann/json.hpp>

namespace textchef {

struct NoTipsFound : std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct TipFormatError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

/// Where a tip set came from: the agent's own failures, contrast against an
/// expert walkthrough, aggregation across games, or a human author.
enum class Scenario { SelfHistory, ExpertContrast, Aggregated, Human };

inline const char* to_string(Scenario s) {
    switch (s) {
        case Scenario::SelfHistory: return "self_history";
        case Scenario::ExpertContrast: return "expert_contrast";
        case Scenario::Aggregated: return "aggregated";
        case Scenario::Human: return "human";
    }
    return "self_history";
}

inline std::optional<Scenario> scenario_from_string(const std::string& s) {
    if (s == "self_history") return Scenario::SelfHistory;
    if (s == "expert_contrast") return Scenario::ExpertContrast;
    if (s == "aggregated") return Scenario::Aggregated;
    if (s == "human") return Scenario::Human;
    return std::nullopt;
}

struct Tip {
    int index = 1;
    std::string text;

    bool operator==(const Tip&) const = default;
};

struct TipProvenance {
    std::string game_id;
    int trial_index = 0;
    Scenario scenario = Scenario::SelfHistory;

    bool operator==(const TipProvenance&) const = default;
};

struct TipSet {
    std::vector<Tip> tips;
    TipProvenance provenance;

    bool empty() const { return tips.empty(); }
    std::size_t size() const { return tips.size(); }

    bool operator==(const TipSet&) const = default;
};

inline constexpr const char* kTipsHeader = "Tips to win the game next time:";

namespace detail {

inline std::string strip(const std::string& s) {
    std::size_t begin = s.find_first_not_of(" \t\r\n");
    if (begin == std::string::npos) return {};
    std::size_t end = s.find_last_not_of(" \t\r\n");
    return s.substr(begin, end - begin + 1);
}

inline bool contains_word_tips(const std::string& line) {
    std::string lower;
    lower.reserve(line.size());
    for (char c : line) lower += static_cast<char>(std::tolower(static_cast<unsigned char>(c)));
    std::size_t pos = 0;
    while ((pos = lower.find("tips", pos)) != std::string::npos) {
        bool left_ok = pos == 0 || !std::isalpha(static_cast<unsigned char>(lower[pos - 1]));
        std::size_t after = pos + 4;
        bool right_ok =
            after >= lower.size() || !std::isalpha(static_cast<unsigned char>(lower[after]));
        if (left_ok && right_ok) return true;
        pos += 1;
    }
    return false;
}

/// A tips marker is a line that mentions "tips" and ends with a colon,
/// e.g. "Tips to win the game next time:" or just "Tips:".
inline bool is_tips_marker(const std::string& line) {
    std::string t = strip(line);
    return !t.empty() && t.back() == ':' && contains_word_tips(t);
}

/// "1. text" / "2) text" / "3; text" -> text; empty optional otherwise.
inline std::optional<std::string> numbered_item_text(const std::string& line) {
    std::string t = strip(line);
    std::size_t i = 0;
    while (i < t.size() && std::isdigit(static_cast<unsigned char>(t[i]))) ++i;
    if (i == 0 || i >= t.size()) return std::nullopt;
    char sep = t[i];
    if (sep != '.' && sep != ')' && sep != ';') return std::nullopt;
    return strip(t.substr(i + 1));
}

inline std::vector<std::string> split_lines(const std::string& text) {
    std::vector<std::string> lines;
    std::istringstream in(text);
    std::string line;
    while (std::getline(in, line)) {
        if (!line.empty() && line.back() == '\r') line.pop_back();
        lines.push_back(line);
    }
    return lines;
}

}  // namespace detail

/// Pulls numbered tips out of raw model output. Looks for the last tips
/// marker line first (reflection outputs often quote earlier tips above the
/// fresh list); without one, accepts a bare leading numbered list. Items are
/// renumbered 1..n. Throws NoTipsFound when no numbered items exist.
inline TipSet extract_tips(const std::string& model_output, TipProvenance provenance) {
    auto lines = detail::split_lines(model_output);
    std::size_t begin = 0;
    for (std::size_t i = 0; i < lines.size(); ++i)
        if (detail::is_tips_marker(lines[i])) begin = i + 1;

    TipSet out;
    out.provenance = std::move(provenance);
    std::string current;
    auto flush = [&] {
        std::string text = detail::strip(current);
        if (!text.empty())
            out.tips.push_back({static_cast<int>(out.tips.size()) + 1, std::move(text)});
        current.clear();
    };
    bool in_list = false;
    for (std::size_t i = begin; i < lines.size(); ++i) {
        auto item = detail::numbered_item_text(lines[i]);
        if (item) {
            flush();
            in_list = true;
            current = *item;
            continue;
        }
        std::string t = detail::strip(lines[i]);
        if (!in_list) {
            if (t.empty()) continue;
            if (begin == 0) continue;  // prose between a marker and the list is skipped too
            continue;
        }
        if (t.empty()) {
            flush();
            in_list = false;  // blank line ends the list body
            continue;
        }
        current += " " + t;  // continuation line of a multi-line tip
    }
    flush();
    if (out.tips.empty()) throw NoTipsFound("no numbered tips in model output");
    return out;
}

/// Canonical prompt block for a tip set; extract_tips(render_tips(s)) == s.tips.
inline std::string render_tips(const TipSet& set) {
    std::string out = kTipsHeader;
    for (const auto& tip : set.tips)
        out += "\n" + std::to_string(tip.index) + ". " + tip.text;
    return out;
}

// --- Canonical JSON persistence ---

inline nlohmann::json tips_to_json(const TipSet& set) {
    nlohmann::json j;
    j["format_version"] = 1;
    j["provenance"]["game_id"] = set.provenance.game_id;
    j["provenance"]["trial_index"] = set.provenance.trial_index;
    j["provenance"]["scenario"] = to_string(set.provenance.scenario);
    j["tips"] = nlohmann::json::array();
    for (const auto& tip : set.tips) j["tips"].push_back({{"index", tip.index}, {"text", tip.text}});
    return j;
}

inline TipSet tips_from_json(const nlohmann::json& j) {
    try {
        TipSet set;
        set.provenance.game_id = j.at("provenance").at("game_id").get<std::string>();
        set.provenance.trial_index = j.at("provenance").at("trial_index").get<int>();
        auto scenario = scenario_from_string(j.at("provenance").at("scenario").get<std::string>());
        if (!scenario) throw TipFormatError("unknown scenario");
        set.provenance.scenario = *scenario;
        for (const auto& t : j.at("tips"))
            set.tips.push_back({t.at("index").get<int>(), t.at("text").get<std::string>()});
        for (std::size_t i = 0; i < set.tips.size(); ++i) {
            if (set.tips[i].index != static_cast<int>(i) + 1)
                throw TipFormatError("tip indices must be contiguous from 1");
            if (set.tips[i].text.empty()) throw TipFormatError("tip text must be non-empty");
        }
        return set;
    } catch (const nlohmann::json::exception& e) {
        throw TipFormatError(std::string("bad tip file: ") + e.what());
    }
}

inline std::string tips_to_string(const TipSet& set) { return tips_to_json(set).dump(2) + "\n"; }

inline void save_tips(const TipSet& set, const std::string& path) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw TipFormatError("cannot open for writing: " + path);
    out << tips_to_string(set);
}

inline TipSet load_tips(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw TipFormatError("cannot open: " + path);
    nlohmann::json j;
    try {
        in >> j;
    } catch (const nlohmann::json::exception& e) {
        throw TipFormatError(std::string("bad tip file: ") + e.what());
    }
    return tips_from_json(j);
}

}  // namespace textchef
