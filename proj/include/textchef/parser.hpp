#pragma once

#include <algorithm>
#include <array>
#include <cctype>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

namespace textchef {

// The 20 command forms the game accepts.
enum class ActionForm {
    Look,
    Goal,
    Inventory,
    Go,
    Examine,
    Eat,
    Open,
    Close,
    Drop,
    Take,
    Put,
    TakeFrom,
    Insert,
    Lock,
    Unlock,
    Cook,
    Slice,
    Chop,
    Dice,
    PrepareMeal,
};

inline constexpr std::size_t kActionFormCount = 20;

struct ActionFormInfo {
    ActionForm form;
    const char* name;   // canonical lower-case name
    int arity;          // exact argument count
};

inline constexpr std::array<ActionFormInfo, kActionFormCount> kActionForms{{
    {ActionForm::Look, "look", 0},
    {ActionForm::Goal, "goal", 0},
    {ActionForm::Inventory, "inventory", 0},
    {ActionForm::Go, "go", 1},
    {ActionForm::Examine, "examine", 1},
    {ActionForm::Eat, "eat", 1},
    {ActionForm::Open, "open", 1},
    {ActionForm::Close, "close", 1},
    {ActionForm::Drop, "drop", 1},
    {ActionForm::Take, "take", 1},
    {ActionForm::Put, "put", 2},
    {ActionForm::TakeFrom, "take_from", 2},
    {ActionForm::Insert, "insert", 2},
    {ActionForm::Lock, "lock", 2},
    {ActionForm::Unlock, "unlock", 2},
    {ActionForm::Cook, "cook", 2},
    {ActionForm::Slice, "slice", 2},
    {ActionForm::Chop, "chop", 2},
    {ActionForm::Dice, "dice", 2},
    {ActionForm::PrepareMeal, "prepare_meal", 0},
}};

inline const ActionFormInfo& form_info(ActionForm form) {
    for (const auto& info : kActionForms) {
        if (info.form == form) return info;
    }
    return kActionForms[0];  // unreachable for valid enum values
}

inline const char* form_name(ActionForm form) { return form_info(form).name; }
inline int form_arity(ActionForm form) { return form_info(form).arity; }

/// A parsed command. Argument texts are kept verbatim (trimmed only);
/// resolution against world entities happens in the engine.
struct Action {
    ActionForm form = ActionForm::Look;
    std::vector<std::string> args;

    bool operator==(const Action&) const = default;
};

struct ParseError {
    std::string reason;
};

/// Outcome of parse(): exactly one of action/error is set.
struct ParseResult {
    std::optional<Action> action;
    std::optional<ParseError> error;

    bool ok() const { return action.has_value(); }
};

namespace detail {

inline std::string_view trim_view(std::string_view text) {
    const auto is_space = [](char c) { return std::isspace(static_cast<unsigned char>(c)) != 0; };
    while (!text.empty() && is_space(text.front())) text.remove_prefix(1);
    while (!text.empty() && is_space(text.back())) text.remove_suffix(1);
    return text;
}

inline std::string to_lower(std::string_view text) {
    std::string out(text);
    std::transform(out.begin(), out.end(), out.begin(),
                   [](unsigned char c) { return static_cast<char>(std::tolower(c)); });
    return out;
}

}  // namespace detail

/// First non-empty line of a (possibly multi-line) reply, trimmed.
/// Empty result means the whole text was blank.
inline std::string first_nonempty_line(std::string_view text) {
    std::size_t pos = 0;
    while (pos <= text.size()) {
        std::size_t end = text.find('\n', pos);
        std::string_view line = text.substr(pos, end == std::string_view::npos ? end : end - pos);
        line = detail::trim_view(line);
        if (!line.empty()) return std::string(line);
        if (end == std::string_view::npos) break;
        pos = end + 1;
    }
    return {};
}

/// Parses one agent reply into an Action.
///
/// Accepted: canonical call syntax `name(arg1, arg2)` with case-insensitive
/// form names and whitespace tolerance, plus the documented loose zero-arg
/// forms without parentheses (`look`, `goal`, `inventory`, `prepare meal`,
/// `prepare_meal`). Multi-line input is reduced to its first non-empty line.
/// Never throws, regardless of input.
inline ParseResult parse(std::string_view text) {
    const auto fail = [](std::string reason) {
        ParseResult r;
        r.error = ParseError{std::move(reason)};
        return r;
    };

    std::string line = first_nonempty_line(text);
    if (line.empty()) return fail("empty input");

    std::size_t open = line.find('(');
    if (open == std::string::npos) {
        // Loose zero-arg forms only.
        std::string word = detail::to_lower(detail::trim_view(line));
        ActionForm form;
        if (word == "look") form = ActionForm::Look;
        else if (word == "goal") form = ActionForm::Goal;
        else if (word == "inventory") form = ActionForm::Inventory;
        else if (word == "prepare meal" || word == "prepare_meal") form = ActionForm::PrepareMeal;
        else return fail("not a command: " + line);
        return ParseResult{Action{form, {}}, std::nullopt};
    }

    std::size_t close = line.rfind(')');
    if (close == std::string::npos || close < open)
        return fail("malformed syntax: missing ')'");
    if (!detail::trim_view(std::string_view(line).substr(close + 1)).empty())
        return fail("malformed syntax: trailing text after ')'");

    std::string name = detail::to_lower(detail::trim_view(std::string_view(line).substr(0, open)));
    if (name.empty()) return fail("malformed syntax: missing command name");

    const ActionFormInfo* info = nullptr;
    for (const auto& candidate : kActionForms) {
        if (name == candidate.name) {
            info = &candidate;
            break;
        }
    }
    if (info == nullptr) return fail("unknown command: " + name);

    std::vector<std::string> args;
    std::string_view inside = std::string_view(line).substr(open + 1, close - open - 1);
    if (!detail::trim_view(inside).empty()) {
        std::size_t start = 0;
        while (true) {
            std::size_t comma = inside.find(',', start);
            std::string_view piece =
                inside.substr(start, comma == std::string_view::npos ? comma : comma - start);
            piece = detail::trim_view(piece);
            if (piece.empty()) return fail("malformed syntax: empty argument");
            args.emplace_back(piece);
            if (comma == std::string_view::npos) break;
            start = comma + 1;
        }
    }

    if (static_cast<int>(args.size()) != info->arity)
        return fail("wrong arity for " + std::string(info->name) + ": expected " +
                    std::to_string(info->arity) + ", got " + std::to_string(args.size()));

    return ParseResult{Action{info->form, std::move(args)}, std::nullopt};
}

/// Canonical lower-case call syntax with ", " separators.
inline std::string render(const Action& action) {
    std::string out = form_name(action.form);
    out += '(';
    for (std::size_t i = 0; i < action.args.size(); ++i) {
        if (i > 0) out += ", ";
        out += action.args[i];
    }
    out += ')';
    return out;
}

}  // namespace textchef
