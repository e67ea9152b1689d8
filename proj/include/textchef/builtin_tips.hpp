#pragma once

#include <string>

#include "textchef/tipset.hpp"

namespace textchef {

/// General tips distilled across games; loadable as `builtin:general`.
inline const TipSet& builtin_general_tips() {
    static const TipSet set = {
        {
            {1,
             "Always double-check the recipe before performing any actions, and follow the "
             "instructions closely."},
            {2,
             "Make sure to gather all required ingredients and tools before starting to cook. "
             "Use the \"examine(item)\" and \"take(item)\" actions to interact with items in the "
             "environment."},
            {3,
             "Pay attention to the cooking methods mentioned in the recipe, such as roasting or "
             "frying, and use the appropriate appliances like the oven and stove. To operate an "
             "appliance, use actions from the ActionList, such as \"cook(food, heat_source)\"."},
            {4,
             "Use the correct actions from the ActionList to prepare the ingredients, such as "
             "\"slice(food, sharp_object)\", \"dice(food, sharp_object)\", or \"chop(food, "
             "sharp_object)\"."},
            {5,
             "Keep track of your inventory and the state of each item to avoid making mistakes "
             "in the preparation process. Use the \"inventory()\" action to check your "
             "inventory."},
            {6,
             "Follow the steps in the recipe in the correct order, ensuring each ingredient is "
             "prepared as instructed."},
            {7,
             "Once all ingredients are prepared according to the recipe, use the "
             "\"prepare_meal()\" action to combine them into a meal."},
            {8,
             "If you encounter any difficulties or errors, refer back to the ActionList and the "
             "environment description to make sure you're using the correct actions and items."},
        },
        {"builtin:general", 0, Scenario::Aggregated},
    };
    return set;
}

/// Hand-written tips; loadable as `builtin:human`.
inline const TipSet& builtin_human_tips() {
    static const TipSet set = {
        {
            {1,
             "If you get stuck, use the actions goal(), examine(cookbook), inventory() and "
             "look() to figure out what you have and what you need to do."},
            {2,
             "Before cooking an ingredient, always use inventory() first to check current state "
             "of the ingredient. If an ingredient is already in the desired state(roasted or "
             "fried) as per the recipe, there is no need to perform the actions (roast or fry) "
             "mentioned in the recipe."},
            {3,
             "Try take(food) before you prepare(meal). After you take(food), use inventory() to "
             "check the status of the food."},
            {4,
             "Make sure the food is in your inventory before you prepare(meal). Try eat(meal) "
             "when the meal is prepared."},
            {5, "Dice, chop, and slice are different."},
            {6,
             "Fry and Roast are different. Use correct heat_source to cook the ingredient. Oven "
             "is for roasting something, not frying something."},
            {7,
             "Use cook(food, oven) to roast something, instead of putting the food into the oven "
             "and wait."},
            {8,
             "Be careful when you cook(food, stove) or cook(food, oven),  make sure the food is "
             "not fried or roasted before. Otherwise you may burn the food and lose the game."},
        },
        {"builtin:human", 0, Scenario::Human},
    };
    return set;
}

/// Maps a --tips argument to a TipSet: the two builtin names or a JSON file.
inline TipSet resolve_tips_source(const std::string& source) {
    if (source == "builtin:general") return builtin_general_tips();
    if (source == "builtin:human") return builtin_human_tips();
    return load_tips(source);
}

}  // namespace textchef
