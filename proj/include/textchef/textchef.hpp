#pragma once

// Umbrella header: the whole library in dependency order.

#include "textchef/version.hpp"
#include "textchef/rng.hpp"
#include "textchef/parser.hpp"
#include "textchef/game_model.hpp"
#include "textchef/spec_json.hpp"
#include "textchef/engine.hpp"
#include "textchef/trajectory.hpp"
#include "textchef/generator.hpp"
#include "textchef/tipset.hpp"
#include "textchef/builtin_tips.hpp"
#include "textchef/prompt.hpp"
#include "textchef/policy.hpp"
#include "textchef/episode.hpp"
#include "textchef/tips_loop.hpp"
#include "textchef/eval.hpp"
