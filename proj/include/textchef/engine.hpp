#pragma once

#include <algorithm>
#include <cctype>
#include <map>
#include <set>
#include <string>
#include <utility>
#include <vector>

#include "textchef/game_model.hpp"
#include "textchef/parser.hpp"

namespace textchef {

enum class Status { Running, Won, Lost };

inline const char* to_string(Status s) {
    switch (s) {
        case Status::Running: return "Running";
        case Status::Won: return "Won";
        case Status::Lost: return "Lost";
    }
    return "Running";
}

inline std::optional<Status> status_from_string(const std::string& s) {
    if (s == "Running") return Status::Running;
    if (s == "Won") return Status::Won;
    if (s == "Lost") return Status::Lost;
    return std::nullopt;
}

struct ItemState {
    ItemKind kind = ItemKind::Food;
    CutState cut = CutState::Uncut;
    CookState cook = CookState::Raw;
    LocationRef location;
    bool edible = false;

    bool operator==(const ItemState&) const = default;
};

/// Mutable state of one episode. Owned by exactly one episode at a time;
/// copyable for search and what-if evaluation.
struct WorldState {
    const GameSpec* spec = nullptr;
    std::string player_room;
    std::vector<std::string> inventory;  // acquisition order
    std::map<std::string, bool> container_open;
    std::map<std::string, bool> door_open;  // keyed by door name
    std::map<std::string, ItemState> items;
    bool recipe_revealed = false;
    bool meal_prepared = false;
    std::set<std::string> scored_steps;
    int score = 0;
    int turn = 0;
    Status status = Status::Running;

    bool operator==(const WorldState&) const = default;
};

struct Feedback {
    std::string text;
    int score_delta = 0;
    Status status_after = Status::Running;
};

inline constexpr const char* kInvalidAction = "Invalid action.";
inline constexpr const char* kScoreLine = "Your score has just gone up by one point.";
inline constexpr const char* kGoalText =
    "You are hungry! Let's cook a delicious meal. Check the cookbook in the kitchen "
    "for the recipe, gather the ingredients, prepare the meal and eat it.";

// --- Text helpers (frozen templates; see README for the full list) ---

namespace detail {

inline std::string lower(const std::string& s) { return to_lower(std::string_view(s)); }

inline bool iequals(const std::string& a, const std::string& b) { return lower(a) == lower(b); }

inline std::string capitalize(std::string s) {
    if (!s.empty()) s[0] = static_cast<char>(std::toupper(static_cast<unsigned char>(s[0])));
    return s;
}

inline std::string with_article(const std::string& noun) {
    static constexpr const char* vowels = "aeiouAEIOU";
    if (!noun.empty() && std::string(vowels).find(noun[0]) != std::string::npos)
        return "an " + noun;
    return "a " + noun;
}

inline std::string join_list(const std::vector<std::string>& parts) {
    std::string out;
    for (std::size_t i = 0; i < parts.size(); ++i) {
        if (i > 0) out += (i + 1 == parts.size()) ? " and " : ", ";
        out += parts[i];
    }
    return out;
}

}  // namespace detail

/// "a purple potato (diced, fried)": cut adjective first, then cook;
/// default states carry no adjectives.
inline std::string display_name(const std::string& name, const ItemState& item) {
    std::vector<std::string> adjectives;
    if (item.cut != CutState::Uncut) adjectives.push_back(to_string(item.cut));
    if (item.cook != CookState::Raw) adjectives.push_back(to_string(item.cook));
    std::string out = detail::with_article(name);
    if (!adjectives.empty()) {
        out += " (";
        for (std::size_t i = 0; i < adjectives.size(); ++i) {
            if (i > 0) out += ", ";
            out += adjectives[i];
        }
        out += ")";
    }
    return out;
}

// --- World queries ---

inline bool is_kitchen(const WorldState& state) {
    return state.player_room == state.spec->map.kitchen;
}

enum class FixtureKind { None, Container, Supporter, Stove, Oven, Cookbook };

/// Fixture lookup within a room. All fixtures live in the kitchen.
inline FixtureKind fixture_in_room(const WorldState& state, const std::string& room,
                                   const std::string& name_lower) {
    if (room != state.spec->map.kitchen) return FixtureKind::None;
    if (name_lower == kFridge) return FixtureKind::Container;
    if (name_lower == kCounter) return FixtureKind::Supporter;
    if (name_lower == kStove) return FixtureKind::Stove;
    if (name_lower == kOven) return FixtureKind::Oven;
    if (name_lower == kCookbook) return FixtureKind::Cookbook;
    return FixtureKind::None;
}

/// Canonical item name for a case-insensitive query, or empty.
inline std::string find_item(const WorldState& state, const std::string& query) {
    std::string q = detail::lower(query);
    for (const auto& [name, item] : state.items)
        if (detail::lower(name) == q) return name;
    return {};
}

inline std::vector<std::string> items_at(const WorldState& state, LocationRef::Kind kind,
                                         const std::string& ref) {
    std::vector<std::string> names;  // std::map iteration => sorted, deterministic
    for (const auto& [name, item] : state.items)
        if (item.location.kind == kind && item.location.ref == ref) names.push_back(name);
    return names;
}

inline bool in_inventory(const WorldState& state, const std::string& name) {
    auto it = state.items.find(name);
    return it != state.items.end() && it->second.location.kind == LocationRef::Kind::Inventory;
}

/// An item is reachable if carried, on the current room's floor, on a
/// supporter here, or inside an open container here.
inline bool item_reachable(const WorldState& state, const std::string& name) {
    auto it = state.items.find(name);
    if (it == state.items.end()) return false;
    const LocationRef& loc = it->second.location;
    switch (loc.kind) {
        case LocationRef::Kind::Inventory: return true;
        case LocationRef::Kind::RoomFloor: return loc.ref == state.player_room;
        case LocationRef::Kind::Supporter:
            return fixture_in_room(state, state.player_room, loc.ref) == FixtureKind::Supporter;
        case LocationRef::Kind::Container:
            return fixture_in_room(state, state.player_room, loc.ref) == FixtureKind::Container &&
                   state.container_open.count(loc.ref) && state.container_open.at(loc.ref);
        case LocationRef::Kind::Consumed: return false;
    }
    return false;
}

// --- Room description ---

inline std::string describe_room(const WorldState& state) {
    const GameSpec& spec = *state.spec;
    std::string text = "-= " + detail::capitalize(state.player_room) + " =-";

    bool kitchen = state.player_room == spec.map.kitchen;
    if (kitchen) {
        text += "\nYou see a cookbook, a counter, a fridge, an oven and a stove here.";
        bool fridge_open = state.container_open.count(kFridge) && state.container_open.at(kFridge);
        if (!fridge_open) {
            text += "\nThe fridge is closed.";
        } else {
            auto contents = items_at(state, LocationRef::Kind::Container, kFridge);
            if (contents.empty()) {
                text += "\nThe fridge is open. It is empty.";
            } else {
                std::vector<std::string> shown;
                for (const auto& name : contents)
                    shown.push_back(display_name(name, state.items.at(name)));
                text += "\nThe fridge is open. Inside it you see " + detail::join_list(shown) + ".";
            }
        }
        auto on_counter = items_at(state, LocationRef::Kind::Supporter, kCounter);
        if (!on_counter.empty()) {
            std::vector<std::string> shown;
            for (const auto& name : on_counter)
                shown.push_back(display_name(name, state.items.at(name)));
            text += "\nOn the counter you see " + detail::join_list(shown) + ".";
        }
    }

    auto on_floor = items_at(state, LocationRef::Kind::RoomFloor, state.player_room);
    if (!on_floor.empty()) {
        std::vector<std::string> shown;
        for (const auto& name : on_floor)
            shown.push_back(display_name(name, state.items.at(name)));
        text += "\nOn the floor you see " + detail::join_list(shown) + ".";
    } else if (!kitchen) {
        text += "\nThere is nothing of interest here.";
    }

    const Room* room = spec.map.find(state.player_room);
    std::vector<std::string> exits;
    if (room != nullptr)
        for (Direction d : kAllDirections)
            if (room->exits.count(d)) exits.push_back(to_string(d));
    text += "\nExits: " + (exits.empty() ? std::string("none") : detail::join_list(exits)) + ".";
    return text;
}

inline std::string describe_inventory(const WorldState& state) {
    if (state.inventory.empty()) return "You are carrying nothing.";
    std::string text = "You are carrying:";
    for (const auto& name : state.inventory)
        text += "\n  " + display_name(name, state.items.at(name));
    return text;
}

inline std::string describe_recipe(const GameSpec& spec) {
    std::string text =
        "You open the cookbook and read the recipe:\n\nRecipe #1\n---------\n"
        "Gather all following ingredients and follow the directions to prepare this tasty meal.\n\n"
        "Ingredients:";
    for (const auto& ing : spec.recipe.ingredients) text += "\n  " + ing.name;
    text += "\n\nDirections:";
    for (const auto& ing : spec.recipe.ingredients) {
        if (ing.cut == CutState::Sliced) text += "\n  slice the " + ing.name;
        if (ing.cut == CutState::Diced) text += "\n  dice the " + ing.name;
        if (ing.cut == CutState::Chopped) text += "\n  chop the " + ing.name;
        if (ing.cook == CookState::Fried) text += "\n  fry the " + ing.name;
        if (ing.cook == CookState::Roasted) text += "\n  roast the " + ing.name;
    }
    text += "\n  prepare meal";
    return text;
}

// --- Episode lifecycle ---

/// Fresh state at turn 0 plus the starting-room observation.
inline std::pair<WorldState, std::string> new_episode(const GameSpec& spec) {
    WorldState state;
    state.spec = &spec;
    state.player_room = spec.map.start;
    state.container_open[kFridge] = false;
    for (const auto& room : spec.map.rooms)
        for (const auto& [dir, exit] : room.exits)
            if (exit.has_door) state.door_open[exit.door_name] = exit.door_open;
    for (const auto& placed : spec.entity_placement) {
        ItemState item;
        item.kind = placed.kind;
        item.location = placed.location;
        item.edible = placed.kind == ItemKind::Food;
        state.items[placed.name] = item;
        if (placed.location.kind == LocationRef::Kind::Inventory)
            state.inventory.push_back(placed.name);
    }
    std::string observation = describe_room(state);
    return {std::move(state), std::move(observation)};
}

namespace detail {

inline Feedback refuse() { return {kInvalidAction, 0, Status::Running}; }

// First-time satisfaction of a scored step earns one point.
inline bool score_step(WorldState& state, const ScoredStep& step) {
    auto [it, inserted] = state.scored_steps.insert(step.key());
    (void)it;
    if (inserted) state.score += 1;
    return inserted;
}

inline void append_score_line(Feedback& fb) {
    fb.text += std::string("\n") + kScoreLine;
    fb.score_delta = 1;
}

inline const RecipeIngredient* required_ingredient(const WorldState& state,
                                                   const std::string& name) {
    return state.spec->recipe.find(name);
}

// A required ingredient reached a state the recipe can never accept.
inline void ruin(WorldState& state) { state.status = Status::Lost; }

inline void move_item(WorldState& state, const std::string& name, LocationRef target) {
    ItemState& item = state.items.at(name);
    if (item.location.kind == LocationRef::Kind::Inventory) {
        auto it = std::find(state.inventory.begin(), state.inventory.end(), name);
        if (it != state.inventory.end()) state.inventory.erase(it);
    }
    item.location = std::move(target);
    if (item.location.kind == LocationRef::Kind::Inventory) state.inventory.push_back(name);
}

inline Feedback take_into_inventory(WorldState& state, const std::string& name,
                                    const std::string& from) {
    move_item(state, name, {LocationRef::Kind::Inventory, ""});
    Feedback fb;
    fb.text = from.empty() ? "You take the " + name + "."
                           : "You take the " + name + " from the " + from + ".";
    const RecipeIngredient* required = required_ingredient(state, name);
    if (required != nullptr &&
        score_step(state, {ScoredStep::Kind::TakeIngredient, name}))
        append_score_line(fb);
    return fb;
}

inline Feedback apply_cut(WorldState& state, const Action& action, CutState target,
                          const char* past_tense) {
    std::string food = find_item(state, action.args[0]);
    std::string sharp = find_item(state, action.args[1]);
    if (food.empty() || sharp.empty()) return refuse();
    if (!in_inventory(state, food) || !in_inventory(state, sharp)) return refuse();
    ItemState& food_item = state.items.at(food);
    const ItemState& sharp_item = state.items.at(sharp);
    if (sharp_item.kind != ItemKind::Tool || sharp != kKnife) return refuse();
    if (food_item.kind != ItemKind::Food) return refuse();
    if (!cut_transition_allowed(food_item.cut, target)) return refuse();  // already cut: refused
    food_item.cut = target;

    Feedback fb;
    fb.text = std::string("You ") + past_tense + " the " + food + ".";
    const RecipeIngredient* required = required_ingredient(state, food);
    if (required != nullptr) {
        if (required->cut == target) {
            if (score_step(state, {ScoredStep::Kind::CutIngredient, food})) append_score_line(fb);
        } else {
            ruin(state);  // wrong cut type is irrecoverable
        }
    }
    return fb;
}

inline Feedback apply_cook(WorldState& state, const Action& action) {
    std::string food = find_item(state, action.args[0]);
    if (food.empty() || !in_inventory(state, food)) return refuse();
    ItemState& food_item = state.items.at(food);
    if (food_item.kind != ItemKind::Food) return refuse();

    FixtureKind heat = fixture_in_room(state, state.player_room, lower(action.args[1]));
    if (heat != FixtureKind::Stove && heat != FixtureKind::Oven) return refuse();

    Feedback fb;
    const RecipeIngredient* required = required_ingredient(state, food);
    if (food_item.cook == CookState::Raw) {
        CookState result = heat == FixtureKind::Stove ? CookState::Fried : CookState::Roasted;
        food_item.cook = result;
        fb.text = (result == CookState::Fried ? "You fried the " : "You roasted the ") + food + ".";
        if (required != nullptr) {
            if (required->cook == result) {
                if (score_step(state, {ScoredStep::Kind::CookIngredient, food}))
                    append_score_line(fb);
            } else {
                ruin(state);  // fried instead of roasted (or cooked at all): irrecoverable
            }
        }
    } else if (food_item.cook == CookState::Fried || food_item.cook == CookState::Roasted) {
        food_item.cook = CookState::Burned;
        fb.text = "You burned the " + food + ".";
        if (required != nullptr) ruin(state);
    } else {
        return refuse();  // already burned
    }
    return fb;
}

inline Feedback apply_open_close(WorldState& state, const Action& action, bool opening) {
    std::string target = lower(action.args[0]);
    // Containers first.
    if (fixture_in_room(state, state.player_room, target) == FixtureKind::Container) {
        bool& open = state.container_open[target];
        if (open == opening) return refuse();
        open = opening;
        Feedback fb;
        if (!opening) {
            fb.text = "You close the " + target + ".";
            return fb;
        }
        auto contents = items_at(state, LocationRef::Kind::Container, target);
        if (contents.empty()) {
            fb.text = "You open the " + target + ".";
        } else {
            std::vector<std::string> shown;
            for (const auto& name : contents)
                shown.push_back(display_name(name, state.items.at(name)));
            fb.text = "You open the " + target + ", revealing " + join_list(shown) + ".";
        }
        return fb;
    }
    // Doors on exits of the current room.
    const Room* room = state.spec->map.find(state.player_room);
    if (room != nullptr) {
        for (const auto& [dir, exit] : room->exits) {
            if (exit.has_door && lower(exit.door_name) == target) {
                bool& open = state.door_open[exit.door_name];
                if (open == opening) return refuse();
                open = opening;
                return {(opening ? "You open the " : "You close the ") + exit.door_name + ".", 0,
                        Status::Running};
            }
        }
    }
    return refuse();
}

inline Feedback apply_action(WorldState& state, const Action& action) {
    switch (action.form) {
        case ActionForm::Look:
            return {describe_room(state), 0, Status::Running};

        case ActionForm::Goal:
            return {kGoalText, 0, Status::Running};

        case ActionForm::Inventory:
            return {describe_inventory(state), 0, Status::Running};

        case ActionForm::Go: {
            auto dir = direction_from_string(lower(action.args[0]));
            if (!dir) return refuse();
            const Room* room = state.spec->map.find(state.player_room);
            if (room == nullptr || !room->exits.count(*dir)) return refuse();
            const Exit& exit = room->exits.at(*dir);
            if (exit.has_door && !state.door_open[exit.door_name]) return refuse();
            state.player_room = exit.to;
            return {describe_room(state), 0, Status::Running};
        }

        case ActionForm::Examine: {
            std::string target = lower(action.args[0]);
            FixtureKind fixture = fixture_in_room(state, state.player_room, target);
            if (fixture == FixtureKind::Cookbook) {
                state.recipe_revealed = true;
                return {describe_recipe(*state.spec), 0, Status::Running};
            }
            if (fixture != FixtureKind::None)
                return {"You see nothing special about the " + target + ".", 0, Status::Running};
            std::string item = find_item(state, action.args[0]);
            if (item.empty() || !item_reachable(state, item)) return refuse();
            return {"You see nothing special about the " + item + ".", 0, Status::Running};
        }

        case ActionForm::Eat: {
            std::string item = find_item(state, action.args[0]);
            if (item.empty() || !in_inventory(state, item)) return refuse();
            ItemState& it = state.items.at(item);
            if (!it.edible) return refuse();
            move_item(state, item, {LocationRef::Kind::Consumed, ""});
            Feedback fb;
            fb.text = "You eat the " + item + ".";
            if (it.kind == ItemKind::Meal) {
                if (score_step(state, {ScoredStep::Kind::EatMeal, ""})) append_score_line(fb);
                state.status = Status::Won;
            } else if (required_ingredient(state, item) != nullptr) {
                ruin(state);  // a required ingredient is gone for good
            }
            return fb;
        }

        case ActionForm::Open:
            return apply_open_close(state, action, true);
        case ActionForm::Close:
            return apply_open_close(state, action, false);

        case ActionForm::Drop: {
            std::string item = find_item(state, action.args[0]);
            if (item.empty() || !in_inventory(state, item)) return refuse();
            move_item(state, item, {LocationRef::Kind::RoomFloor, state.player_room});
            return {"You drop the " + item + ".", 0, Status::Running};
        }

        case ActionForm::Take: {
            std::string item = find_item(state, action.args[0]);
            if (item.empty() || in_inventory(state, item) || !item_reachable(state, item))
                return refuse();
            return take_into_inventory(state, item, "");
        }

        case ActionForm::TakeFrom: {
            std::string item = find_item(state, action.args[0]);
            std::string source = lower(action.args[1]);
            FixtureKind fixture = fixture_in_room(state, state.player_room, source);
            if (item.empty()) return refuse();
            const LocationRef& loc = state.items.at(item).location;
            if (fixture == FixtureKind::Container) {
                if (!state.container_open[source]) return refuse();
                if (loc.kind != LocationRef::Kind::Container || loc.ref != source) return refuse();
            } else if (fixture == FixtureKind::Supporter) {
                if (loc.kind != LocationRef::Kind::Supporter || loc.ref != source) return refuse();
            } else {
                return refuse();
            }
            return take_into_inventory(state, item, source);
        }

        case ActionForm::Put: {
            std::string item = find_item(state, action.args[0]);
            std::string target = lower(action.args[1]);
            if (item.empty() || !in_inventory(state, item)) return refuse();
            if (fixture_in_room(state, state.player_room, target) != FixtureKind::Supporter)
                return refuse();
            move_item(state, item, {LocationRef::Kind::Supporter, target});
            return {"You put the " + item + " on the " + target + ".", 0, Status::Running};
        }

        case ActionForm::Insert: {
            std::string item = find_item(state, action.args[0]);
            std::string target = lower(action.args[1]);
            if (item.empty() || !in_inventory(state, item)) return refuse();
            if (fixture_in_room(state, state.player_room, target) != FixtureKind::Container ||
                !state.container_open[target])
                return refuse();
            move_item(state, item, {LocationRef::Kind::Container, target});
            return {"You insert the " + item + " into the " + target + ".", 0, Status::Running};
        }

        case ActionForm::Lock:
        case ActionForm::Unlock:
            return refuse();  // nothing in this world has a lock

        case ActionForm::Cook:
            return apply_cook(state, action);
        case ActionForm::Slice:
            return apply_cut(state, action, CutState::Sliced, "sliced");
        case ActionForm::Chop:
            return apply_cut(state, action, CutState::Chopped, "chopped");
        case ActionForm::Dice:
            return apply_cut(state, action, CutState::Diced, "diced");

        case ActionForm::PrepareMeal: {
            if (!is_kitchen(state) || !state.recipe_revealed || state.meal_prepared) return refuse();
            for (const auto& ing : state.spec->recipe.ingredients) {
                auto it = state.items.find(ing.name);
                if (it == state.items.end()) return refuse();
                const ItemState& item = it->second;
                if (item.location.kind != LocationRef::Kind::Inventory) return refuse();
                if (item.cut != ing.cut || item.cook != ing.cook) return refuse();
            }
            for (const auto& ing : state.spec->recipe.ingredients)
                move_item(state, ing.name, {LocationRef::Kind::Consumed, ""});
            ItemState meal;
            meal.kind = ItemKind::Meal;
            meal.edible = true;
            meal.location = {LocationRef::Kind::Inventory, ""};
            state.items[kMeal] = meal;
            state.inventory.push_back(kMeal);
            state.meal_prepared = true;
            Feedback fb;
            fb.text = "You prepare the meal.";
            if (score_step(state, {ScoredStep::Kind::PrepareMeal, ""})) append_score_line(fb);
            return fb;
        }
    }
    return refuse();
}

}  // namespace detail

/// Executes one action. Always consumes a turn; infeasible actions change
/// nothing else and come back as "Invalid action.". Equal (state, action)
/// pairs produce equal (state, feedback) pairs.
inline Feedback step(WorldState& state, const Action& action) {
    if (state.status != Status::Running) return {"The game has already ended.", 0, state.status};
    Feedback fb = detail::apply_action(state, action);
    state.turn += 1;
    if (state.status == Status::Running && state.turn >= state.spec->max_turns)
        state.status = Status::Lost;
    fb.status_after = state.status;
    return fb;
}

/// Unparseable policy output: the turn is consumed, nothing else changes.
inline Feedback invalid_input(WorldState& state) {
    if (state.status != Status::Running) return {"The game has already ended.", 0, state.status};
    state.turn += 1;
    if (state.turn >= state.spec->max_turns) state.status = Status::Lost;
    return {kInvalidAction, 0, state.status};
}

}  // namespace textchef
