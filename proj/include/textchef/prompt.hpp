#pragma once

#include <string>
#include <vector>

#include "textchef/parser.hpp"
#include "textchef/tipset.hpp"

namespace textchef {

/// One chat message; role is "system", "user" or "assistant".
struct Message {
    std::string role;
    std::string content;

    bool operator==(const Message&) const = default;
};

/// One game turn as seen by the policy: what the game said, what the policy
/// answered. An empty action marks the pending turn awaiting a decision.
struct TranscriptTurn {
    std::string feedback;
    std::string action;

    bool operator==(const TranscriptTurn&) const = default;
};

/// Everything a policy may see for one decision. Serialization order is
/// fixed: preamble, tips, failure block, expert block, past trajectories,
/// then the transcript.
struct PromptBundle {
    std::string system_preamble;
    TipSet tips;
    std::vector<std::string> failed_actions;      // one compressed line per failed trial
    std::vector<std::string> expert_walkthrough;  // rendered expert actions, in order
    std::vector<std::string> past_trajectories;   // raw replay baseline, capped by the caller
    std::vector<TranscriptTurn> transcript;

    bool operator==(const PromptBundle&) const = default;
};

inline constexpr std::size_t kDefaultCharBudget = 16000;

/// The action list shown to the policy, one "name(args) # description" line
/// per action.
inline std::string action_list_text() {
    return
        "look() # describe the current room\n"
        "goal() # print the goal of this game\n"
        "inventory() # print player's inventory\n"
        "go(direction) # move the player north, east, south, or west\n"
        "examine(item) # examine something more closely\n"
        "eat(food) # eat edible food\n"
        "open(item) # open a door or a container\n"
        "close(item) # close a door or a container\n"
        "drop(item) # drop an item on the floor\n"
        "take(item) # take an item that is on the floor\n"
        "put(item, supporter) # place an item on a supporter\n"
        "take_from(item, container) # take an item from a container or a supporter\n"
        "insert(item, container) # place an item into a container\n"
        "lock(item, key) # lock a door or a container with a key\n"
        "unlock(item, key) # unlock a door or a container with a key\n"
        "cook(food, heat_source) # cook cookable food with something providing heat\n"
        "slice(food, sharp_object) # slice cuttable food with something sharp\n"
        "chop(food, sharp_object) # chop cuttable food with something sharp\n"
        "dice(food, sharp_object) # dice cuttable food with something sharp\n"
        "prepare_meal() # combine ingredients from inventory into a meal";
}

inline std::string make_system_preamble() {
    return "You are an agent playing in a text-based game. All of your available actions are in "
           "the ActionList:\n" +
           action_list_text() +
           "\nBased on the game's description that I give you, provide me with only one action "
           "per step in the action list and wait for my response. (Following is the description "
           "of the first state in a TextWorld game.)";
}

inline constexpr const char* kFailedActionsHeader = "Actions from your previous failed attempts:";
inline constexpr const char* kExpertHeader =
    "Expert walkthrough (the expert agent's actions, in order):";

namespace detail {

inline std::string join_lines(const std::vector<std::string>& lines) {
    std::string out;
    for (std::size_t i = 0; i < lines.size(); ++i) {
        if (i > 0) out += "\n";
        out += lines[i];
    }
    return out;
}

}  // namespace detail

/// Renders the bundle as an ordered chat-message list. When the total
/// content size exceeds char_budget, the oldest transcript turns are
/// dropped first; the preamble, tips and the other context blocks are never
/// dropped, and the most recent transcript turn always survives.
inline std::vector<Message> serialize_bundle(const PromptBundle& bundle,
                                             std::size_t char_budget = kDefaultCharBudget) {
    std::vector<Message> fixed;
    fixed.push_back({"system", bundle.system_preamble});
    if (!bundle.tips.empty()) fixed.push_back({"system", render_tips(bundle.tips)});
    if (!bundle.failed_actions.empty())
        fixed.push_back({"system", std::string(kFailedActionsHeader) + "\n" +
                                       detail::join_lines(bundle.failed_actions)});
    if (!bundle.expert_walkthrough.empty())
        fixed.push_back({"system", std::string(kExpertHeader) + "\n" +
                                       detail::join_lines(bundle.expert_walkthrough)});
    for (std::size_t i = 0; i < bundle.past_trajectories.size(); ++i)
        fixed.push_back({"system", "Past trajectory " + std::to_string(i + 1) + ":\n" +
                                       bundle.past_trajectories[i]});

    std::size_t fixed_chars = 0;
    for (const auto& m : fixed) fixed_chars += m.content.size();
    auto turn_chars = [](const TranscriptTurn& t) { return t.feedback.size() + t.action.size(); };
    std::size_t total = fixed_chars;
    for (const auto& t : bundle.transcript) total += turn_chars(t);

    std::size_t first_kept = 0;
    while (total > char_budget && !bundle.transcript.empty() &&
           first_kept + 1 < bundle.transcript.size()) {
        total -= turn_chars(bundle.transcript[first_kept]);
        ++first_kept;
    }

    std::vector<Message> messages = std::move(fixed);
    for (std::size_t i = first_kept; i < bundle.transcript.size(); ++i) {
        const TranscriptTurn& t = bundle.transcript[i];
        messages.push_back({"user", t.feedback});
        if (!t.action.empty()) messages.push_back({"assistant", t.action});
    }
    return messages;
}

/// Flat single-string rendering, used for logs and the single-prompt wire
/// fallback.
inline std::string messages_to_text(const std::vector<Message>& messages) {
    std::string out;
    for (const auto& m : messages) {
        if (!out.empty()) out += "\n\n";
        out += "[" + m.role + "]\n" + m.content;
    }
    return out;
}

inline std::string bundle_to_text(const PromptBundle& bundle,
                                  std::size_t char_budget = kDefaultCharBudget) {
    return messages_to_text(serialize_bundle(bundle, char_budget));
}

}  // namespace textchef
