#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "textchef/parser.hpp"

namespace textchef {

// --- Ingredient state machines ---

// uncut -> {sliced, diced, chopped}; cut states are terminal.
enum class CutState { Uncut, Sliced, Diced, Chopped };

// raw -> {fried, roasted}; fried/roasted -> burned; burned is terminal.
enum class CookState { Raw, Fried, Roasted, Burned };

inline bool cut_transition_allowed(CutState from, CutState to) {
    return from == CutState::Uncut && to != CutState::Uncut;
}

inline bool cook_transition_allowed(CookState from, CookState to) {
    switch (from) {
        case CookState::Raw: return to == CookState::Fried || to == CookState::Roasted;
        case CookState::Fried:
        case CookState::Roasted: return to == CookState::Burned;
        case CookState::Burned: return false;
    }
    return false;
}

inline const char* to_string(CutState s) {
    switch (s) {
        case CutState::Uncut: return "none";
        case CutState::Sliced: return "sliced";
        case CutState::Diced: return "diced";
        case CutState::Chopped: return "chopped";
    }
    return "none";
}

inline const char* to_string(CookState s) {
    switch (s) {
        case CookState::Raw: return "none";
        case CookState::Fried: return "fried";
        case CookState::Roasted: return "roasted";
        case CookState::Burned: return "burned";
    }
    return "none";
}

inline std::optional<CutState> cut_from_string(const std::string& s) {
    if (s == "none") return CutState::Uncut;
    if (s == "sliced") return CutState::Sliced;
    if (s == "diced") return CutState::Diced;
    if (s == "chopped") return CutState::Chopped;
    return std::nullopt;
}

inline std::optional<CookState> cook_from_string(const std::string& s) {
    if (s == "none") return CookState::Raw;
    if (s == "fried") return CookState::Fried;
    if (s == "roasted") return CookState::Roasted;
    if (s == "burned") return CookState::Burned;
    return std::nullopt;
}

// --- Recipe ---

/// One required ingredient. cut == Uncut / cook == Raw mean "no requirement".
struct RecipeIngredient {
    std::string name;
    CutState cut = CutState::Uncut;
    CookState cook = CookState::Raw;

    bool operator==(const RecipeIngredient&) const = default;
};

struct Recipe {
    std::vector<RecipeIngredient> ingredients;

    bool operator==(const Recipe&) const = default;

    const RecipeIngredient* find(const std::string& name) const {
        for (const auto& ing : ingredients)
            if (ing.name == name) return &ing;
        return nullptr;
    }
};

// --- Rooms ---

enum class Direction { North, East, South, West };

inline constexpr Direction kAllDirections[4] = {Direction::North, Direction::East,
                                                Direction::South, Direction::West};

inline const char* to_string(Direction d) {
    switch (d) {
        case Direction::North: return "north";
        case Direction::East: return "east";
        case Direction::South: return "south";
        case Direction::West: return "west";
    }
    return "north";
}

inline std::optional<Direction> direction_from_string(const std::string& s) {
    if (s == "north") return Direction::North;
    if (s == "east") return Direction::East;
    if (s == "south") return Direction::South;
    if (s == "west") return Direction::West;
    return std::nullopt;
}

inline Direction opposite(Direction d) {
    switch (d) {
        case Direction::North: return Direction::South;
        case Direction::East: return Direction::West;
        case Direction::South: return Direction::North;
        case Direction::West: return Direction::East;
    }
    return Direction::South;
}

struct Exit {
    std::string to;
    bool has_door = false;
    std::string door_name;
    bool door_open = true;  // initial state; live state is tracked per episode

    bool operator==(const Exit&) const = default;
};

struct Room {
    std::string name;
    std::map<Direction, Exit> exits;

    bool operator==(const Room&) const = default;
};

struct RoomMap {
    std::vector<Room> rooms;
    std::string kitchen;
    std::string start;

    bool operator==(const RoomMap&) const = default;

    const Room* find(const std::string& name) const {
        for (const auto& room : rooms)
            if (room.name == name) return &room;
        return nullptr;
    }
};

// --- Entity placement ---

enum class ItemKind { Food, Tool, Meal };

inline const char* to_string(ItemKind k) {
    switch (k) {
        case ItemKind::Food: return "food";
        case ItemKind::Tool: return "tool";
        case ItemKind::Meal: return "meal";
    }
    return "food";
}

inline std::optional<ItemKind> item_kind_from_string(const std::string& s) {
    if (s == "food") return ItemKind::Food;
    if (s == "tool") return ItemKind::Tool;
    if (s == "meal") return ItemKind::Meal;
    return std::nullopt;
}

struct LocationRef {
    enum class Kind { RoomFloor, Container, Supporter, Inventory, Consumed };
    Kind kind = Kind::RoomFloor;
    std::string ref;  // room name, or container/supporter name

    bool operator==(const LocationRef&) const = default;
};

inline const char* to_string(LocationRef::Kind k) {
    switch (k) {
        case LocationRef::Kind::RoomFloor: return "floor";
        case LocationRef::Kind::Container: return "container";
        case LocationRef::Kind::Supporter: return "supporter";
        case LocationRef::Kind::Inventory: return "inventory";
        case LocationRef::Kind::Consumed: return "consumed";
    }
    return "floor";
}

inline std::optional<LocationRef::Kind> location_kind_from_string(const std::string& s) {
    if (s == "floor") return LocationRef::Kind::RoomFloor;
    if (s == "container") return LocationRef::Kind::Container;
    if (s == "supporter") return LocationRef::Kind::Supporter;
    if (s == "inventory") return LocationRef::Kind::Inventory;
    if (s == "consumed") return LocationRef::Kind::Consumed;
    return std::nullopt;
}

struct PlacedItem {
    std::string name;
    ItemKind kind = ItemKind::Food;
    LocationRef location;

    bool operator==(const PlacedItem&) const = default;
};

// Fixed kitchen fixtures. Every kitchen has all of these; other rooms have none.
inline constexpr const char* kFridge = "fridge";
inline constexpr const char* kCounter = "counter";
inline constexpr const char* kStove = "stove";
inline constexpr const char* kOven = "oven";
inline constexpr const char* kCookbook = "cookbook";
inline constexpr const char* kKnife = "knife";
inline constexpr const char* kMeal = "meal";

// --- GameSpec ---

/// Immutable, seed-derived description of one game. Safe to share across
/// concurrent episodes.
struct GameSpec {
    int level = 0;
    uint64_t seed = 0;
    std::string rng_algorithm;
    RoomMap map;
    Recipe recipe;
    std::vector<PlacedItem> entity_placement;
    int max_score = 0;
    int max_turns = 0;
    std::vector<Action> walkthrough;

    bool operator==(const GameSpec&) const = default;

    std::string game_id() const {
        return "level" + std::to_string(level) + "-seed" + std::to_string(seed);
    }
};

// --- Scored steps ---

/// One point-earning step derived from the recipe.
struct ScoredStep {
    enum class Kind { TakeIngredient, CutIngredient, CookIngredient, PrepareMeal, EatMeal };
    Kind kind = Kind::TakeIngredient;
    std::string ingredient;  // empty for PrepareMeal / EatMeal

    bool operator==(const ScoredStep&) const = default;

    std::string key() const {
        switch (kind) {
            case Kind::TakeIngredient: return "take:" + ingredient;
            case Kind::CutIngredient: return "cut:" + ingredient;
            case Kind::CookIngredient: return "cook:" + ingredient;
            case Kind::PrepareMeal: return "prepare_meal";
            case Kind::EatMeal: return "eat_meal";
        }
        return "";
    }
};

/// Derives the scored steps from a recipe, one point each, in canonical
/// order: per ingredient take / cut (if required) / cook (if required),
/// then prepare_meal, then eat_meal.
inline std::vector<ScoredStep> required_steps(const Recipe& recipe) {
    std::vector<ScoredStep> steps;
    for (const auto& ing : recipe.ingredients) {
        steps.push_back({ScoredStep::Kind::TakeIngredient, ing.name});
        if (ing.cut != CutState::Uncut)
            steps.push_back({ScoredStep::Kind::CutIngredient, ing.name});
        if (ing.cook != CookState::Raw)
            steps.push_back({ScoredStep::Kind::CookIngredient, ing.name});
    }
    steps.push_back({ScoredStep::Kind::PrepareMeal, ""});
    steps.push_back({ScoredStep::Kind::EatMeal, ""});
    return steps;
}

}  // namespace textchef
