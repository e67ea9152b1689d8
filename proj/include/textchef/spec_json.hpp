#pragma once

#include <fstream>
#include <sstream>
#include <stdexcept>
#include <string>

#include <nlohmann/json.hpp>

#include "textchef/game_model.hpp"

namespace textchef {

using json = nlohmann::json;

struct SpecFormatError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

inline constexpr int kSpecFormatVersion = 1;

// --- GameSpec -> JSON ---

inline json to_json(const GameSpec& spec) {
    json rooms = json::array();
    for (const auto& room : spec.map.rooms) {
        json exits = json::object();
        for (const auto& [dir, exit] : room.exits) {
            json e{{"to", exit.to}};
            if (exit.has_door) {
                e["door"] = exit.door_name;
                e["door_open"] = exit.door_open;
            }
            exits[to_string(dir)] = e;
        }
        rooms.push_back({{"name", room.name}, {"exits", exits}});
    }

    json ingredients = json::array();
    for (const auto& ing : spec.recipe.ingredients) {
        ingredients.push_back({
            {"name", ing.name},
            {"cut", to_string(ing.cut)},
            {"cook", to_string(ing.cook)},
        });
    }

    json placement = json::array();
    for (const auto& item : spec.entity_placement) {
        placement.push_back({
            {"name", item.name},
            {"kind", to_string(item.kind)},
            {"location", {{"kind", to_string(item.location.kind)}, {"ref", item.location.ref}}},
        });
    }

    json walkthrough = json::array();
    for (const auto& action : spec.walkthrough) walkthrough.push_back(render(action));

    // nlohmann::json keeps keys sorted, which is the canonical order.
    return json{
        {"version", kSpecFormatVersion},
        {"level", spec.level},
        {"seed", spec.seed},
        {"rng_algorithm", spec.rng_algorithm},
        {"map", {{"rooms", rooms}, {"kitchen", spec.map.kitchen}, {"start", spec.map.start}}},
        {"recipe", {{"ingredients", ingredients}}},
        {"entity_placement", placement},
        {"max_score", spec.max_score},
        {"max_turns", spec.max_turns},
        {"walkthrough", walkthrough},
    };
}

/// Canonical serialized form: sorted keys, two-space indent, trailing newline.
/// Identical specs serialize byte-identically.
inline std::string spec_to_string(const GameSpec& spec) { return to_json(spec).dump(2) + "\n"; }

// --- JSON -> GameSpec ---

inline GameSpec spec_from_json(const json& j) {
    try {
        GameSpec spec;
        if (j.at("version").get<int>() != kSpecFormatVersion)
            throw SpecFormatError("unsupported spec version");
        spec.level = j.at("level").get<int>();
        spec.seed = j.at("seed").get<uint64_t>();
        spec.rng_algorithm = j.at("rng_algorithm").get<std::string>();
        spec.max_score = j.at("max_score").get<int>();
        spec.max_turns = j.at("max_turns").get<int>();

        const json& map = j.at("map");
        spec.map.kitchen = map.at("kitchen").get<std::string>();
        spec.map.start = map.at("start").get<std::string>();
        for (const auto& jr : map.at("rooms")) {
            Room room;
            room.name = jr.at("name").get<std::string>();
            for (const auto& [key, je] : jr.at("exits").items()) {
                auto dir = direction_from_string(key);
                if (!dir) throw SpecFormatError("bad direction: " + key);
                Exit exit;
                exit.to = je.at("to").get<std::string>();
                if (je.contains("door")) {
                    exit.has_door = true;
                    exit.door_name = je.at("door").get<std::string>();
                    exit.door_open = je.at("door_open").get<bool>();
                }
                room.exits[*dir] = exit;
            }
            spec.map.rooms.push_back(std::move(room));
        }

        for (const auto& ji : j.at("recipe").at("ingredients")) {
            RecipeIngredient ing;
            ing.name = ji.at("name").get<std::string>();
            auto cut = cut_from_string(ji.at("cut").get<std::string>());
            auto cook = cook_from_string(ji.at("cook").get<std::string>());
            if (!cut || !cook) throw SpecFormatError("bad recipe state for " + ing.name);
            ing.cut = *cut;
            ing.cook = *cook;
            spec.recipe.ingredients.push_back(std::move(ing));
        }

        for (const auto& jp : j.at("entity_placement")) {
            PlacedItem item;
            item.name = jp.at("name").get<std::string>();
            auto kind = item_kind_from_string(jp.at("kind").get<std::string>());
            auto loc_kind = location_kind_from_string(jp.at("location").at("kind").get<std::string>());
            if (!kind || !loc_kind) throw SpecFormatError("bad placement for " + item.name);
            item.kind = *kind;
            item.location.kind = *loc_kind;
            item.location.ref = jp.at("location").at("ref").get<std::string>();
            spec.entity_placement.push_back(std::move(item));
        }

        for (const auto& jw : j.at("walkthrough")) {
            ParseResult parsed = parse(jw.get<std::string>());
            if (!parsed.ok())
                throw SpecFormatError("bad walkthrough action: " + jw.get<std::string>());
            spec.walkthrough.push_back(*parsed.action);
        }
        return spec;
    } catch (const json::exception& e) {
        throw SpecFormatError(std::string("malformed spec json: ") + e.what());
    }
}

inline GameSpec spec_from_string(const std::string& text) {
    json j;
    try {
        j = json::parse(text);
    } catch (const json::exception& e) {
        throw SpecFormatError(std::string("spec is not valid json: ") + e.what());
    }
    return spec_from_json(j);
}

inline void save_spec(const GameSpec& spec, const std::string& path) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw SpecFormatError("cannot write spec file: " + path);
    out << spec_to_string(spec);
}

inline GameSpec load_spec(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw SpecFormatError("cannot read spec file: " + path);
    std::ostringstream buffer;
    buffer << in.rdbuf();
    return spec_from_string(buffer.str());
}

}  // namespace textchef
