#include "coevo/wellbeing/catalog.hpp"

#include <cstdint>
#include <fstream>
#include <sstream>

#include <json.hpp>

namespace coevo::wellbeing {

namespace {

const char* const kCategoryNames[kCategoryCount] = {
    "vegetable", "fruit", "grain", "meat", "fish",
    "dairy",     "legume", "nut",  "egg",  "other"};

double require_number(const nlohmann::json& j, const std::string& id, const char* field) {
    if (!j.contains(field))
        throw CatalogError("item '" + id + "': missing field '" + field + "'");
    if (!j[field].is_number())
        throw CatalogError("item '" + id + "': field '" + field + "' must be a number");
    return j[field].get<double>();
}

std::string require_string(const nlohmann::json& j, const std::string& id, const char* field) {
    if (!j.contains(field))
        throw CatalogError("item '" + id + "': missing field '" + field + "'");
    return j[field].get<std::string>();
}

}  // namespace

const char* category_name(FoodCategory c) {
    return kCategoryNames[static_cast<std::size_t>(c)];
}

FoodCategory category_from_name(const std::string& name) {
    for (std::size_t i = 0; i < kCategoryCount; ++i)
        if (name == kCategoryNames[i]) return static_cast<FoodCategory>(i);
    throw CatalogError("unknown food category: " + name);
}

void Catalog::finalize() {
    mains.clear();
    sides.clear();
    food_index.clear();
    exercise_index.clear();

    if (foods.empty()) throw CatalogError("catalog has no foods");
    if (exercises.empty()) throw CatalogError("catalog has no exercises");

    for (std::size_t i = 0; i < foods.size(); ++i) {
        const auto& f = foods[i];
        if (f.id.empty()) throw CatalogError("food with empty id");
        if (!food_index.emplace(f.id, i).second)
            throw CatalogError("duplicate food id: " + f.id);
        if (f.serving_g <= 0) throw CatalogError("food '" + f.id + "': serving_g must be > 0");
        if (f.kcal_per_serving <= 0)
            throw CatalogError("food '" + f.id + "': kcal_per_serving must be > 0");
        for (double v : {f.protein_g, f.carbs_g, f.sugar_g, f.fibre_g, f.fat_g, f.satfat_g,
                         f.sodium_g})
            if (v < 0) throw CatalogError("food '" + f.id + "': negative nutrient mass");
        if (f.satfat_g > f.fat_g)
            throw CatalogError("food '" + f.id + "': satfat_g exceeds fat_g");
        if (f.sugar_g > f.carbs_g)
            throw CatalogError("food '" + f.id + "': sugar_g exceeds carbs_g");
        if (f.vegan && !f.vegetarian)
            throw CatalogError("food '" + f.id + "': vegan item must also be vegetarian");
        (f.slot == FoodSlot::main ? mains : sides).push_back(i);
    }
    if (mains.empty()) throw CatalogError("catalog has no main-slot foods");
    if (sides.empty()) throw CatalogError("catalog has no side-slot foods");

    for (std::size_t i = 0; i < exercises.size(); ++i) {
        const auto& e = exercises[i];
        if (e.id.empty()) throw CatalogError("exercise with empty id");
        if (!exercise_index.emplace(e.id, i).second)
            throw CatalogError("duplicate exercise id: " + e.id);
        if (e.met <= 0.9 || e.met > 20)
            throw CatalogError("exercise '" + e.id + "': met must lie in (0.9, 20]");
    }
}

std::size_t Catalog::food_at(const std::string& id) const {
    auto it = food_index.find(id);
    if (it == food_index.end()) throw CatalogError("unknown food id: " + id);
    return it->second;
}

std::size_t Catalog::exercise_at(const std::string& id) const {
    auto it = exercise_index.find(id);
    if (it == exercise_index.end()) throw CatalogError("unknown exercise id: " + id);
    return it->second;
}

Catalog load_catalog(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw CatalogError("cannot open catalog file: " + path);

    nlohmann::json root;
    try {
        root = nlohmann::json::parse(in);
    } catch (const nlohmann::json::parse_error& e) {
        throw CatalogError("catalog parse error in " + path + ": " + e.what());
    }

    if (root.value("schema", 0) != 1)
        throw CatalogError("catalog file " + path + ": expected schema 1");
    if (!root.contains("foods") || !root.contains("exercises"))
        throw CatalogError("catalog file " + path + ": missing 'foods' or 'exercises'");

    Catalog cat;
    for (const auto& j : root["foods"]) {
        FoodItem f;
        f.id = j.value("id", "");
        f.name = require_string(j, f.id, "name");
        std::string slot = require_string(j, f.id, "slot");
        if (slot == "main")
            f.slot = FoodSlot::main;
        else if (slot == "side")
            f.slot = FoodSlot::side;
        else
            throw CatalogError("food '" + f.id + "': slot must be 'main' or 'side'");
        f.category = category_from_name(require_string(j, f.id, "category"));
        f.vegetarian = j.value("vegetarian", false);
        f.vegan = j.value("vegan", false);
        f.serving_g = require_number(j, f.id, "serving_g");
        f.kcal_per_serving = require_number(j, f.id, "kcal_per_serving");
        f.protein_g = require_number(j, f.id, "protein_g");
        f.carbs_g = require_number(j, f.id, "carbs_g");
        f.sugar_g = require_number(j, f.id, "sugar_g");
        f.fibre_g = require_number(j, f.id, "fibre_g");
        f.fat_g = require_number(j, f.id, "fat_g");
        f.satfat_g = require_number(j, f.id, "satfat_g");
        f.sodium_g = require_number(j, f.id, "sodium_g");
        cat.foods.push_back(std::move(f));
    }
    for (const auto& j : root["exercises"]) {
        ExerciseItem e;
        e.id = j.value("id", "");
        e.name = require_string(j, e.id, "name");
        std::string intensity = require_string(j, e.id, "intensity");
        if (intensity == "low")
            e.intensity = Intensity::low;
        else if (intensity == "moderate")
            e.intensity = Intensity::moderate;
        else if (intensity == "high")
            e.intensity = Intensity::high;
        else
            throw CatalogError("exercise '" + e.id + "': bad intensity '" + intensity + "'");
        e.met = require_number(j, e.id, "met");
        cat.exercises.push_back(std::move(e));
    }

    cat.finalize();
    return cat;
}

std::uint64_t file_hash(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw CatalogError("cannot open file for hashing: " + path);
    std::uint64_t h = 0xcbf29ce484222325ULL;
    char c;
    while (in.get(c)) {
        h ^= static_cast<unsigned char>(c);
        h *= 0x100000001b3ULL;
    }
    return h;
}

}  // namespace coevo::wellbeing
