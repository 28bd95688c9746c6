#pragma once

#include <array>
#include <cstdint>
#include <map>
#include <set>
#include <string>
#include <vector>

#include "coevo/wellbeing/catalog.hpp"

namespace coevo::wellbeing {

enum class Goal { lose_weight, maintain, gain_muscle };

const char* goal_name(Goal g);
Goal goal_from_name(const std::string& name);

struct UserProfile {
    std::string id;
    double daily_kcal = 2000;
    Goal goal = Goal::maintain;
    bool vegetarian = false;
    bool vegan = false;
    double session_minutes = 60;
    std::array<double, kCategoryCount> food_prefs{};   // rating in [0,1] per category
    std::map<std::string, double> exercise_prefs;      // exercise id -> rating in [0,1]
    std::set<std::string> disallowed_exercises;

    bool allows_food(const FoodItem& f) const {
        if (vegan) return f.vegan;
        if (vegetarian) return f.vegetarian;
        return true;
    }
    bool allows_exercise(const std::string& exercise_id) const {
        return !disallowed_exercises.count(exercise_id);
    }
    double exercise_rating(const std::string& exercise_id) const {
        auto it = exercise_prefs.find(exercise_id);
        return it == exercise_prefs.end() ? 0.0 : it->second;
    }
};

// Deterministic stand-in pool for the original participant data. Exercise
// preferences cover every exercise in the catalog.
std::vector<UserProfile> generate_synthetic_users(std::size_t k, std::uint64_t seed,
                                                  const Catalog& catalog);

// Pool member (excluding `user` itself, by id) with the highest cosine
// similarity over concatenated food/exercise preference vectors; ties go to
// the lowest id.
const UserProfile& nearest_neighbour(const UserProfile& user,
                                     const std::vector<UserProfile>& pool);

std::vector<UserProfile> load_users(const std::string& path);
void save_users(const std::vector<UserProfile>& users, const std::string& path);

}  // namespace coevo::wellbeing
