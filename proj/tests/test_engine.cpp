#include <catch2/catch_amalgamated.hpp>

#include <string>
#include <vector>

#include "support/potato_spec.hpp"
#include "textchef/engine.hpp"
#include "textchef/generator.hpp"
#include "textchef/rng.hpp"

using namespace textchef;
using textchef::test::potato_spec;

namespace {

Feedback act(WorldState& state, const std::string& text) {
    ParseResult parsed = parse(text);
    REQUIRE(parsed.ok());
    return step(state, *parsed.action);
}

// Reaches the point where only cooking remains: potato diced and in hand.
WorldState ready_to_cook(const GameSpec& spec) {
    auto [state, observation] = new_episode(spec);
    (void)observation;
    act(state, "examine(cookbook)");
    act(state, "open(fridge)");
    act(state, "take(purple potato)");
    act(state, "take(knife)");
    act(state, "dice(purple potato, knife)");
    REQUIRE(state.status == Status::Running);
    REQUIRE(state.score == 2);  // take + correct cut
    return state;
}

}  // namespace

TEST_CASE("initial observation text is frozen") {
    GameSpec spec = potato_spec();
    auto [state, observation] = new_episode(spec);
    CHECK(observation ==
          "-= Kitchen =-\n"
          "You see a cookbook, a counter, a fridge, an oven and a stove here.\n"
          "The fridge is closed.\n"
          "On the counter you see a carrot and a knife.\n"
          "Exits: none.");
    CHECK(state.turn == 0);
    CHECK(state.score == 0);
    CHECK(state.status == Status::Running);
    CHECK(act(state, "look()").text == observation);
}

TEST_CASE("goal and inventory texts are frozen") {
    GameSpec spec = potato_spec();
    auto [state, observation] = new_episode(spec);
    (void)observation;
    CHECK(act(state, "goal()").text ==
          "You are hungry! Let's cook a delicious meal. Check the cookbook in the kitchen "
          "for the recipe, gather the ingredients, prepare the meal and eat it.");
    CHECK(act(state, "inventory()").text == "You are carrying nothing.");
    act(state, "open(fridge)");
    act(state, "take(purple potato)");
    act(state, "take(knife)");
    CHECK(act(state, "inventory()").text ==
          "You are carrying:\n  a purple potato\n  a knife");
}

TEST_CASE("examining the cookbook reveals the recipe and unlocks preparation") {
    GameSpec spec = potato_spec();
    auto [state, observation] = new_episode(spec);
    (void)observation;
    CHECK_FALSE(state.recipe_revealed);
    Feedback fb = act(state, "examine(cookbook)");
    CHECK(state.recipe_revealed);
    CHECK(fb.text ==
          "You open the cookbook and read the recipe:\n"
          "\n"
          "Recipe #1\n"
          "---------\n"
          "Gather all following ingredients and follow the directions to prepare "
          "this tasty meal.\n"
          "\n"
          "Ingredients:\n"
          "  purple potato\n"
          "\n"
          "Directions:\n"
          "  dice the purple potato\n"
          "  roast the purple potato\n"
          "  prepare meal");
}

TEST_CASE("opening the fridge reveals its contents") {
    GameSpec spec = potato_spec();
    auto [state, observation] = new_episode(spec);
    (void)observation;
    Feedback fb = act(state, "open(fridge)");
    CHECK(fb.text == "You open the fridge, revealing a purple potato and a red apple.");
    CHECK(act(state, "open(fridge)").text == kInvalidAction);  // already open
    CHECK(act(state, "close(fridge)").text == "You close the fridge.");
    CHECK(act(state, "close(fridge)").text == kInvalidAction);  // already closed

    act(state, "open(fridge)");
    act(state, "take(purple potato)");
    act(state, "take(red apple)");
    CHECK(act(state, "close(fridge)").text == "You close the fridge.");
    CHECK(act(state, "open(fridge)").text == "You open the fridge.");  // now empty
    CHECK(act(state, "look()").text ==
          "-= Kitchen =-\n"
          "You see a cookbook, a counter, a fridge, an oven and a stove here.\n"
          "The fridge is open. It is empty.\n"
          "On the counter you see a carrot and a knife.\n"
          "Exits: none.");
}

TEST_CASE("taking scores required ingredients exactly once") {
    GameSpec spec = potato_spec();
    auto [state, observation] = new_episode(spec);
    (void)observation;
    CHECK(act(state, "take(purple potato)").text == kInvalidAction);  // fridge closed
    act(state, "open(fridge)");

    Feedback fb = act(state, "take(purple potato)");
    CHECK(fb.text ==
          "You take the purple potato.\nYour score has just gone up by one point.");
    CHECK(fb.score_delta == 1);
    CHECK(state.score == 1);

    // Dropping and retaking never scores again.
    CHECK(act(state, "drop(purple potato)").text == "You drop the purple potato.");
    CHECK(act(state, "take(purple potato)").text == "You take the purple potato.");
    CHECK(state.score == 1);

    // Same through the container route.
    act(state, "insert(purple potato, fridge)");
    Feedback again = act(state, "take_from(purple potato, fridge)");
    CHECK(again.text == "You take the purple potato from the fridge.");
    CHECK(state.score == 1);

    // Distractors never score.
    CHECK(act(state, "take(carrot)").text == "You take the carrot.");
    CHECK(state.score == 1);
}

TEST_CASE("take_from respects container and supporter placement") {
    GameSpec spec = potato_spec();
    auto [state, observation] = new_episode(spec);
    (void)observation;
    CHECK(act(state, "take_from(purple potato, fridge)").text == kInvalidAction);  // closed
    CHECK(act(state, "take_from(carrot, fridge)").text == kInvalidAction);  // wrong source
    act(state, "open(fridge)");
    CHECK(act(state, "take_from(purple potato, counter)").text == kInvalidAction);
    CHECK(act(state, "take_from(purple potato, fridge)").text ==
          "You take the purple potato from the fridge.\n"
          "Your score has just gone up by one point.");
    CHECK(act(state, "take_from(carrot, counter)").text ==
          "You take the carrot from the counter.");
}

TEST_CASE("put and insert move items and respect reachability") {
    GameSpec spec = potato_spec();
    auto [state, observation] = new_episode(spec);
    (void)observation;
    act(state, "take(knife)");
    CHECK(act(state, "put(knife, counter)").text == "You put the knife on the counter.");
    CHECK_FALSE(in_inventory(state, "knife"));
    act(state, "take(knife)");
    CHECK(act(state, "insert(knife, fridge)").text == kInvalidAction);  // closed fridge
    act(state, "open(fridge)");
    CHECK(act(state, "insert(knife, fridge)").text == "You insert the knife into the fridge.");
    CHECK(act(state, "put(knife, counter)").text == kInvalidAction);  // no longer held
}

TEST_CASE("cutting requires the knife in hand and matches the recipe") {
    GameSpec spec = potato_spec();
    auto [state, observation] = new_episode(spec);
    (void)observation;
    act(state, "open(fridge)");
    act(state, "take(purple potato)");
    CHECK(act(state, "dice(purple potato, knife)").text == kInvalidAction);  // knife on counter
    act(state, "take(knife)");

    Feedback fb = act(state, "dice(purple potato, knife)");
    CHECK(fb.text ==
          "You diced the purple potato.\nYour score has just gone up by one point.");
    CHECK(state.status == Status::Running);

    // A second cut of any kind is refused, not fatal.
    CHECK(act(state, "slice(purple potato, knife)").text == kInvalidAction);
    CHECK(act(state, "dice(purple potato, knife)").text == kInvalidAction);
    CHECK(state.status == Status::Running);
}

TEST_CASE("the wrong cut on a required ingredient loses the game") {
    GameSpec spec = potato_spec();
    auto [state, observation] = new_episode(spec);
    (void)observation;
    act(state, "open(fridge)");
    act(state, "take(purple potato)");
    act(state, "take(knife)");
    Feedback fb = act(state, "slice(purple potato, knife)");
    CHECK(fb.text == "You sliced the purple potato.");  // recipe wanted diced
    CHECK(fb.status_after == Status::Lost);
    CHECK(state.status == Status::Lost);
    CHECK(act(state, "look()").text == "The game has already ended.");
}

TEST_CASE("cutting a distractor is harmless and unscored") {
    GameSpec spec = potato_spec();
    auto [state, observation] = new_episode(spec);
    (void)observation;
    act(state, "take(carrot)");
    act(state, "take(knife)");
    Feedback fb = act(state, "chop(carrot, knife)");
    CHECK(fb.text == "You chopped the carrot.");
    CHECK(state.status == Status::Running);
    CHECK(state.score == 0);
}

TEST_CASE("cooking on the wrong heat source loses the game") {
    GameSpec spec = potato_spec();
    WorldState state = ready_to_cook(spec);
    Feedback fb = act(state, "cook(purple potato, stove)");
    CHECK(fb.text == "You fried the purple potato.");  // recipe wanted roasted
    CHECK(fb.score_delta == 0);
    CHECK(fb.status_after == Status::Lost);
}

TEST_CASE("cooking on the right heat source scores") {
    GameSpec spec = potato_spec();
    WorldState state = ready_to_cook(spec);
    Feedback fb = act(state, "cook(purple potato, oven)");
    CHECK(fb.text ==
          "You roasted the purple potato.\nYour score has just gone up by one point.");
    CHECK(state.status == Status::Running);
    CHECK(state.score == 3);
}

TEST_CASE("re-cooking burns and burning a required ingredient loses") {
    GameSpec spec = potato_spec();
    WorldState state = ready_to_cook(spec);
    act(state, "cook(purple potato, oven)");
    Feedback fb = act(state, "cook(purple potato, oven)");
    CHECK(fb.text == "You burned the purple potato.");
    CHECK(fb.status_after == Status::Lost);
}

TEST_CASE("distractors fry, burn and vanish without ending the game") {
    GameSpec spec = potato_spec();
    auto [state, observation] = new_episode(spec);
    (void)observation;
    act(state, "take(carrot)");
    CHECK(act(state, "cook(carrot, stove)").text == "You fried the carrot.");
    CHECK(act(state, "cook(carrot, stove)").text == "You burned the carrot.");
    CHECK(act(state, "cook(carrot, stove)").text == kInvalidAction);  // burned is terminal
    CHECK(act(state, "eat(carrot)").text == "You eat the carrot.");
    CHECK(state.status == Status::Running);
    CHECK(state.score == 0);
}

TEST_CASE("eating a required ingredient loses the game") {
    GameSpec spec = potato_spec();
    auto [state, observation] = new_episode(spec);
    (void)observation;
    act(state, "open(fridge)");
    act(state, "take(purple potato)");
    Feedback fb = act(state, "eat(purple potato)");
    CHECK(fb.text == "You eat the purple potato.");
    CHECK(fb.status_after == Status::Lost);
}

TEST_CASE("preparing the meal requires the revealed recipe and exact states") {
    GameSpec spec = potato_spec();

    // Everything correct except the cookbook was never examined.
    auto [state, observation] = new_episode(spec);
    (void)observation;
    act(state, "open(fridge)");
    act(state, "take(purple potato)");
    act(state, "take(knife)");
    act(state, "dice(purple potato, knife)");
    act(state, "cook(purple potato, oven)");
    CHECK(act(state, "prepare_meal()").text == kInvalidAction);
    CHECK(act(state, "examine(cookbook)").text.substr(0, 8) == "You open");
    CHECK(act(state, "prepare_meal()").text ==
          "You prepare the meal.\nYour score has just gone up by one point.");

    // Undiced potato: preparation refused.
    auto [raw_state, raw_obs] = new_episode(spec);
    (void)raw_obs;
    act(raw_state, "examine(cookbook)");
    act(raw_state, "open(fridge)");
    act(raw_state, "take(purple potato)");
    CHECK(act(raw_state, "prepare_meal()").text == kInvalidAction);
}

TEST_CASE("a full win earns every point and consumes the ingredients") {
    GameSpec spec = potato_spec();
    auto [state, observation] = new_episode(spec);
    (void)observation;
    act(state, "examine(cookbook)");
    act(state, "open(fridge)");
    act(state, "take(purple potato)");
    act(state, "take(knife)");
    act(state, "dice(purple potato, knife)");
    act(state, "cook(purple potato, oven)");
    act(state, "prepare_meal()");
    CHECK(state.items.at("purple potato").location.kind == LocationRef::Kind::Consumed);
    CHECK(in_inventory(state, kMeal));

    Feedback fb = act(state, "eat(meal)");
    CHECK(fb.text == "You eat the meal.\nYour score has just gone up by one point.");
    CHECK(fb.status_after == Status::Won);
    CHECK(state.score == 5);
    CHECK(state.score == spec.max_score);
    CHECK(act(state, "look()").text == "The game has already ended.");
}

TEST_CASE("the generated walkthrough for this recipe shape wins as scripted") {
    GameSpec spec = potato_spec();
    auto [state, observation] = new_episode(spec);
    (void)observation;
    for (const auto& action : spec.walkthrough) {
        Feedback fb = step(state, action);
        REQUIRE(fb.text != kInvalidAction);
    }
    CHECK(state.status == Status::Won);
    CHECK(state.score == spec.max_score);
}

TEST_CASE("locks, closed doors and absent exits refuse politely") {
    GameSpec spec = potato_spec();
    auto [state, observation] = new_episode(spec);
    (void)observation;
    CHECK(act(state, "lock(fridge, knife)").text == kInvalidAction);
    CHECK(act(state, "unlock(fridge, knife)").text == kInvalidAction);
    CHECK(act(state, "go(north)").text == kInvalidAction);
    CHECK(act(state, "go(nowhere)").text == kInvalidAction);
    CHECK(act(state, "open(oven)").text == kInvalidAction);      // not a container
    CHECK(act(state, "examine(ghost)").text == kInvalidAction);  // unknown entity
    CHECK(act(state, "eat(knife)").text == kInvalidAction);      // not edible
    CHECK(act(state, "cook(knife, stove)").text == kInvalidAction);
    CHECK(act(state, "slice(knife, knife)").text == kInvalidAction);
    CHECK(state.status == Status::Running);
}

TEST_CASE("unparseable input consumes a turn and nothing else") {
    GameSpec spec = potato_spec();
    auto [state, observation] = new_episode(spec);
    (void)observation;
    WorldState before = state;
    Feedback fb = invalid_input(state);
    CHECK(fb.text == kInvalidAction);
    CHECK(state.turn == before.turn + 1);
    before.turn = state.turn;
    CHECK(state == before);  // only the turn moved
}

TEST_CASE("the turn cap loses the game") {
    GameSpec spec = potato_spec();
    auto [state, observation] = new_episode(spec);
    (void)observation;
    for (int i = 0; i < spec.max_turns - 1; ++i) {
        Feedback fb = act(state, "look()");
        REQUIRE(fb.status_after == Status::Running);
    }
    Feedback last = act(state, "look()");
    CHECK(last.status_after == Status::Lost);
    CHECK(state.turn == spec.max_turns);
}

TEST_CASE("navigation between generated rooms emits room descriptions") {
    GameSpec spec = generate(3, 11);
    auto [state, observation] = new_episode(spec);
    REQUIRE(observation.substr(0, 3) == "-= ");
    REQUIRE(state.player_room != spec.map.kitchen);

    const Room* room = spec.map.find(state.player_room);
    REQUIRE(room != nullptr);
    REQUIRE_FALSE(room->exits.empty());
    Direction dir = room->exits.begin()->first;
    Feedback fb = act(state, "go(" + std::string(to_string(dir)) + ")");
    CHECK(fb.text.substr(0, 3) == "-= ");
    CHECK(state.player_room == room->exits.begin()->second.to);

    // Fixtures are kitchen-only: nothing to open or cook with elsewhere.
    if (state.player_room != spec.map.kitchen) {
        CHECK(act(state, "open(fridge)").text == kInvalidAction);
        CHECK(act(state, "examine(cookbook)").text == kInvalidAction);
    }
}

TEST_CASE("identical action sequences produce identical transcripts") {
    GameSpec spec = generate(4, 5);
    std::vector<std::string> feedback_a;
    std::vector<std::string> feedback_b;
    for (auto* out : {&feedback_a, &feedback_b}) {
        auto [state, observation] = new_episode(spec);
        out->push_back(observation);
        for (const auto& action : spec.walkthrough) out->push_back(step(state, action).text);
    }
    CHECK(feedback_a == feedback_b);
}

TEST_CASE("random action storms keep the bookkeeping consistent") {
    GameSpec spec = potato_spec();
    SplitMix64 rng{42};
    std::vector<std::string> entities = {"purple potato", "red apple", "carrot",   "knife",
                                         "meal",          "fridge",    "counter",  "stove",
                                         "oven",          "cookbook",  "nothing"};
    for (int episode = 0; episode < 20; ++episode) {
        auto [state, observation] = new_episode(spec);
        (void)observation;
        while (state.status == Status::Running) {
            const ActionFormInfo& info = kActionForms[rng.index(kActionFormCount)];
            Action action{info.form, {}};
            for (int a = 0; a < info.arity; ++a)
                action.args.push_back(entities[rng.index(entities.size())]);
            int score_before = state.score;
            step(state, action);

            // Score only ever grows, one point at a time, bounded by max.
            REQUIRE(state.score >= score_before);
            REQUIRE(state.score <= score_before + 1);
            REQUIRE(state.score <= spec.max_score);
            REQUIRE(state.score == static_cast<int>(state.scored_steps.size()));

            // The inventory list mirrors the item locations.
            for (const auto& name : state.inventory)
                REQUIRE(state.items.at(name).location.kind == LocationRef::Kind::Inventory);
            std::size_t carried = 0;
            for (const auto& [name, item] : state.items)
                if (item.location.kind == LocationRef::Kind::Inventory) ++carried;
            REQUIRE(carried == state.inventory.size());

            REQUIRE(state.turn <= spec.max_turns);
        }
    }
}
