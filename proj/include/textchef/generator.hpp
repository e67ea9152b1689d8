#pragma once

#include <algorithm>
#include <map>
#include <set>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "textchef/engine.hpp"
#include "textchef/game_model.hpp"
#include "textchef/rng.hpp"

namespace textchef {

struct GeneratorError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

/// Per-level statistics the generator must reproduce exactly.
struct LevelStats {
    int ingredients;
    int rooms;
    int max_score;
    bool needs_cook;
    bool needs_cut;
    bool needs_open;
};

inline constexpr LevelStats kLevelStats[5] = {
    {1, 1, 3, false, false, true},   // level 0
    {1, 1, 4, false, true, true},    // level 1
    {1, 1, 5, true, true, true},     // level 2
    {1, 9, 3, false, false, true},   // level 3
    {3, 6, 11, true, true, true},    // level 4
};

inline constexpr int kLevelCount = 5;

inline const LevelStats& level_stats(int level) {
    if (level < 0 || level >= kLevelCount)
        throw GeneratorError("level out of range: " + std::to_string(level));
    return kLevelStats[level];
}

struct GeneratorConfig {
    int level = 0;
    std::uint64_t seed = 0;
    std::string rng_algorithm_id = kRngAlgorithmId;
};

// Fixed vocabularies. Shipping them inside the library keeps generated
// games reproducible across machines with no data files to lose.
inline const std::vector<std::string>& food_vocabulary() {
    static const std::vector<std::string> foods = {
        "purple potato", "red apple",         "block of cheese", "carrot",
        "white onion",   "red hot pepper",    "orange bell pepper", "banana",
        "pork chop",     "chicken leg",       "yellow potato",   "red tomato",
        "green cucumber", "red onion",        "lettuce",         "parsley",
    };
    return foods;
}

inline const std::vector<std::string>& room_vocabulary() {
    static const std::vector<std::string> rooms = {
        "pantry",   "livingroom", "bedroom", "bathroom",    "corridor", "backyard",
        "garden",   "driveway",   "street",  "supermarket", "shed",     "basement",
    };
    return rooms;
}

namespace detail {

inline std::vector<std::string> sample_distinct(const std::vector<std::string>& pool,
                                                std::size_t count, SplitMix64& rng) {
    if (count > pool.size()) throw GeneratorError("vocabulary too small");
    std::vector<std::string> shuffled = pool;
    rng.shuffle(shuffled);
    shuffled.resize(count);
    return shuffled;
}

// Uniform spanning tree over a width x height grid (Wilson's algorithm:
// loop-erased random walks). Cells are indexed row-major.
inline std::set<std::pair<int, int>> spanning_tree_edges(int width, int height, SplitMix64& rng) {
    const int n = width * height;
    auto neighbors = [&](int cell) {
        std::vector<int> out;
        int x = cell % width;
        int y = cell / width;
        if (y > 0) out.push_back(cell - width);
        if (x + 1 < width) out.push_back(cell + 1);
        if (y + 1 < height) out.push_back(cell + width);
        if (x > 0) out.push_back(cell - 1);
        return out;
    };
    std::set<std::pair<int, int>> edges;
    std::vector<bool> in_tree(static_cast<std::size_t>(n), false);
    in_tree[rng.index(static_cast<std::size_t>(n))] = true;
    for (int start = 0; start < n; ++start) {
        if (in_tree[static_cast<std::size_t>(start)]) continue;
        std::vector<int> path = {start};
        std::map<int, std::size_t> seen = {{start, 0}};
        int cur = start;
        while (!in_tree[static_cast<std::size_t>(cur)]) {
            auto nb = neighbors(cur);
            cur = nb[rng.index(nb.size())];
            auto it = seen.find(cur);
            if (it != seen.end()) {
                for (std::size_t i = it->second + 1; i < path.size(); ++i) seen.erase(path[i]);
                path.resize(it->second + 1);
            } else {
                seen[cur] = path.size();
                path.push_back(cur);
            }
        }
        for (std::size_t i = 0; i + 1 < path.size(); ++i) {
            edges.insert(std::minmax(path[i], path[i + 1]));
            in_tree[static_cast<std::size_t>(path[i])] = true;
        }
    }
    return edges;
}

inline RoomMap build_map(int level, const LevelStats& stats, SplitMix64& rng) {
    RoomMap map;
    map.kitchen = "kitchen";
    if (stats.rooms == 1) {
        map.rooms.push_back(Room{"kitchen", {}});
        map.start = "kitchen";
        return map;
    }
    const int width = 3;
    const int height = stats.rooms / width;
    auto edges = spanning_tree_edges(width, height, rng);

    std::vector<std::string> names =
        sample_distinct(room_vocabulary(), static_cast<std::size_t>(stats.rooms) - 1, rng);
    names.insert(names.begin(), "kitchen");
    rng.shuffle(names);  // kitchen lands on a random cell

    std::vector<Room> rooms(names.size());
    for (std::size_t i = 0; i < names.size(); ++i) rooms[i].name = names[i];
    for (const auto& [a, b] : edges) {
        // b is a or a+1 (east) or a+width (south)
        Direction ab = (b == a + 1) ? Direction::East : Direction::South;
        Exit forward;
        forward.to = names[static_cast<std::size_t>(b)];
        Exit back;
        back.to = names[static_cast<std::size_t>(a)];
        rooms[static_cast<std::size_t>(a)].exits[ab] = forward;
        rooms[static_cast<std::size_t>(b)].exits[opposite(ab)] = back;
    }
    map.rooms = std::move(rooms);

    std::vector<std::string> non_kitchen;
    for (const auto& room : map.rooms)
        if (room.name != map.kitchen) non_kitchen.push_back(room.name);
    map.start = level >= 3 ? non_kitchen[rng.index(non_kitchen.size())] : map.kitchen;
    return map;
}

}  // namespace detail

/// Shortest direction sequence between two rooms (breadth-first, ties broken
/// in north/east/south/west order). Empty when from == to.
inline std::vector<Direction> bfs_path(const RoomMap& map, const std::string& from,
                                       const std::string& to) {
    if (from == to) return {};
    std::map<std::string, std::pair<std::string, Direction>> parent;
    std::vector<std::string> frontier = {from};
    parent[from] = {from, Direction::North};
    while (!frontier.empty()) {
        std::vector<std::string> next;
        for (const auto& name : frontier) {
            const Room* room = map.find(name);
            if (room == nullptr) continue;
            for (Direction d : kAllDirections) {
                auto it = room->exits.find(d);
                if (it == room->exits.end() || parent.count(it->second.to)) continue;
                parent[it->second.to] = {name, d};
                if (it->second.to == to) {
                    std::vector<Direction> path;
                    std::string cur = to;
                    while (cur != from) {
                        path.push_back(parent[cur].second);
                        cur = parent[cur].first;
                    }
                    std::reverse(path.begin(), path.end());
                    return path;
                }
                next.push_back(it->second.to);
            }
        }
        frontier = std::move(next);
    }
    throw GeneratorError("no path between rooms: " + from + " -> " + to);
}

/// Expert action sequence that wins the game with the maximum score.
/// Convention: route to any remote ingredient first, then the kitchen;
/// cookbook before fridge; cut before cook.
inline std::vector<Action> solve_walkthrough(const GameSpec& spec) {
    std::vector<Action> plan;
    auto go_along = [&plan](const std::vector<Direction>& path) {
        for (Direction d : path) plan.push_back({ActionForm::Go, {to_string(d)}});
    };

    std::string here = spec.map.start;
    // Remote ingredients sit on room floors; pick them up en route.
    for (const auto& placed : spec.entity_placement) {
        if (placed.kind != ItemKind::Food) continue;
        if (placed.location.kind != LocationRef::Kind::RoomFloor) continue;
        if (spec.recipe.find(placed.name) == nullptr) continue;
        go_along(bfs_path(spec.map, here, placed.location.ref));
        here = placed.location.ref;
        plan.push_back({ActionForm::Take, {placed.name}});
    }
    go_along(bfs_path(spec.map, here, spec.map.kitchen));

    plan.push_back({ActionForm::Examine, {kCookbook}});
    plan.push_back({ActionForm::Open, {kFridge}});
    for (const auto& placed : spec.entity_placement) {
        if (spec.recipe.find(placed.name) == nullptr) continue;
        if (placed.location.kind == LocationRef::Kind::Container ||
            placed.location.kind == LocationRef::Kind::Supporter)
            plan.push_back({ActionForm::Take, {placed.name}});
    }
    bool any_cut = std::any_of(spec.recipe.ingredients.begin(), spec.recipe.ingredients.end(),
                               [](const RecipeIngredient& i) { return i.cut != CutState::Uncut; });
    if (any_cut) plan.push_back({ActionForm::Take, {kKnife}});
    for (const auto& ing : spec.recipe.ingredients) {
        if (ing.cut == CutState::Sliced) plan.push_back({ActionForm::Slice, {ing.name, kKnife}});
        if (ing.cut == CutState::Diced) plan.push_back({ActionForm::Dice, {ing.name, kKnife}});
        if (ing.cut == CutState::Chopped) plan.push_back({ActionForm::Chop, {ing.name, kKnife}});
    }
    for (const auto& ing : spec.recipe.ingredients) {
        if (ing.cook == CookState::Fried) plan.push_back({ActionForm::Cook, {ing.name, kStove}});
        if (ing.cook == CookState::Roasted) plan.push_back({ActionForm::Cook, {ing.name, kOven}});
    }
    plan.push_back({ActionForm::PrepareMeal, {}});
    plan.push_back({ActionForm::Eat, {kMeal}});
    return plan;
}

/// Builds the full game for (level, seed). Pure: identical configs yield
/// identical specs, byte for byte once serialized.
inline GameSpec generate(const GeneratorConfig& config) {
    const LevelStats& stats = level_stats(config.level);
    if (config.rng_algorithm_id != kRngAlgorithmId)
        throw GeneratorError("unknown rng algorithm: " + config.rng_algorithm_id);

    SplitMix64 rng(config.seed ^
                   (static_cast<std::uint64_t>(config.level) + 1) * 0x9E3779B97F4A7C15ULL);

    GameSpec spec;
    spec.level = config.level;
    spec.seed = config.seed;
    spec.rng_algorithm = config.rng_algorithm_id;
    spec.map = detail::build_map(config.level, stats, rng);

    auto foods = detail::sample_distinct(food_vocabulary(),
                                         static_cast<std::size_t>(stats.ingredients) + 2, rng);
    for (int i = 0; i < stats.ingredients; ++i) {
        RecipeIngredient ing;
        ing.name = foods[static_cast<std::size_t>(i)];
        if (stats.needs_cut)
            ing.cut = rng.pick<CutState>({CutState::Sliced, CutState::Diced, CutState::Chopped});
        if (stats.needs_cook)
            ing.cook = rng.pick<CookState>({CookState::Fried, CookState::Roasted});
        spec.recipe.ingredients.push_back(std::move(ing));
    }

    // Placement: first required ingredient waits in the closed fridge (that
    // is what the Open flag means), the second on the counter, any further
    // ones on random non-kitchen floors. Two extra foods are distractors.
    auto place = [&spec](const std::string& name, ItemKind kind, LocationRef loc) {
        spec.entity_placement.push_back({name, kind, std::move(loc)});
    };
    std::vector<std::string> non_kitchen;
    for (const auto& room : spec.map.rooms)
        if (room.name != spec.map.kitchen) non_kitchen.push_back(room.name);
    for (int i = 0; i < stats.ingredients; ++i) {
        const std::string& name = spec.recipe.ingredients[static_cast<std::size_t>(i)].name;
        if (i == 0) {
            place(name, ItemKind::Food, {LocationRef::Kind::Container, kFridge});
        } else if (i == 1) {
            place(name, ItemKind::Food, {LocationRef::Kind::Supporter, kCounter});
        } else {
            place(name, ItemKind::Food,
                  {LocationRef::Kind::RoomFloor, non_kitchen[rng.index(non_kitchen.size())]});
        }
    }
    place(foods[static_cast<std::size_t>(stats.ingredients)], ItemKind::Food,
          {LocationRef::Kind::Container, kFridge});
    place(foods[static_cast<std::size_t>(stats.ingredients) + 1], ItemKind::Food,
          {LocationRef::Kind::Supporter, kCounter});
    place(kKnife, ItemKind::Tool, {LocationRef::Kind::Supporter, kCounter});

    spec.max_score = static_cast<int>(required_steps(spec.recipe).size());
    spec.walkthrough = solve_walkthrough(spec);
    spec.max_turns = std::max(30, 5 * static_cast<int>(spec.walkthrough.size()));
    return spec;
}

inline GameSpec generate(int level, std::uint64_t seed) {
    return generate(GeneratorConfig{level, seed, kRngAlgorithmId});
}

}  // namespace textchef
