#pragma once

#include <cstddef>
#include <cstdint>
#include <stdexcept>
#include <string>
#include <unordered_map>
#include <vector>

namespace coevo::wellbeing {

struct CatalogError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

enum class FoodCategory { vegetable, fruit, grain, meat, fish, dairy, legume, nut, egg, other };
constexpr std::size_t kCategoryCount = 10;

const char* category_name(FoodCategory c);
FoodCategory category_from_name(const std::string& name);

enum class FoodSlot { main, side };
enum class Intensity { low, moderate, high };

// Nutrient masses are grams per serving; kcal is per serving.
struct FoodItem {
    std::string id;
    std::string name;
    FoodSlot slot = FoodSlot::side;
    FoodCategory category = FoodCategory::other;
    bool vegetarian = false;
    bool vegan = false;
    double serving_g = 0;
    double kcal_per_serving = 0;
    double protein_g = 0;
    double carbs_g = 0;
    double sugar_g = 0;
    double fibre_g = 0;
    double fat_g = 0;
    double satfat_g = 0;
    double sodium_g = 0;
};

struct ExerciseItem {
    std::string id;
    std::string name;
    Intensity intensity = Intensity::moderate;
    double met = 0;
};

struct Catalog {
    std::vector<FoodItem> foods;
    std::vector<ExerciseItem> exercises;

    // built by finalize()
    std::vector<std::size_t> mains;
    std::vector<std::size_t> sides;
    std::unordered_map<std::string, std::size_t> food_index;
    std::unordered_map<std::string, std::size_t> exercise_index;

    // Validates every item invariant and rebuilds the lookup tables.
    void finalize();

    std::size_t food_at(const std::string& id) const;
    std::size_t exercise_at(const std::string& id) const;
};

Catalog load_catalog(const std::string& path);

// FNV-1a over the raw file bytes; recorded in run manifests for replay checks.
std::uint64_t file_hash(const std::string& path);

}  // namespace coevo::wellbeing
