#pragma once

namespace textchef {

inline constexpr const char* kVersion = "0.1.0";

// Frozen feedback-template set emitted by the engine. Bump only when any
// engine-visible text changes; golden transcripts and replay files depend
// on it.
inline constexpr const char* kFeedbackTemplateVersion = "fb-v1";

}  // namespace textchef
