#pragma once

#include <cstddef>
#include <deque>
#include <string>
#include <utility>
#include <vector>

#include "textchef/policy.hpp"
#include "textchef/prompt.hpp"

namespace textchef::test {

/// Plays back a fixed queue of replies, one per next_action() call, across
/// episodes and reflection requests alike. Records every prompt it received
/// so tests can assert on prompt contents after the fact.
class ScriptedPolicy : public Policy {
public:
    explicit ScriptedPolicy(std::vector<std::string> outputs)
        : outputs_(outputs.begin(), outputs.end()) {}

    void reset() override {}  // the script deliberately spans episodes

    std::string next_action(const PromptBundle& bundle) override {
        prompts.push_back(bundle_to_text(bundle));
        bundles.push_back(bundle);
        if (outputs_.empty()) throw PolicyError("script exhausted");
        std::string out = std::move(outputs_.front());
        outputs_.pop_front();
        return out;
    }

    std::size_t remaining() const { return outputs_.size(); }

    std::vector<std::string> prompts;   // serialized form of each bundle seen
    std::vector<PromptBundle> bundles;  // structured copy of each bundle seen

private:
    std::deque<std::string> outputs_;
};

}  // namespace textchef::test
