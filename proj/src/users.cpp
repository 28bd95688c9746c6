#include "coevo/wellbeing/users.hpp"

#include <cmath>
#include <fstream>

#include <json.hpp>

#include "coevo/rng.hpp"

namespace coevo::wellbeing {

const char* goal_name(Goal g) {
    switch (g) {
        case Goal::lose_weight: return "lose_weight";
        case Goal::maintain: return "maintain";
        case Goal::gain_muscle: return "gain_muscle";
    }
    return "maintain";
}

Goal goal_from_name(const std::string& name) {
    if (name == "lose_weight") return Goal::lose_weight;
    if (name == "maintain") return Goal::maintain;
    if (name == "gain_muscle") return Goal::gain_muscle;
    throw CatalogError("unknown goal: " + name);
}

std::vector<UserProfile> generate_synthetic_users(std::size_t k, std::uint64_t seed,
                                                  const Catalog& catalog) {
    if (k == 0) throw CatalogError("user pool size must be at least 1");
    Rng rng(mix_seed({seed, 0x75736572ULL}));  // "user"
    std::vector<UserProfile> pool;
    pool.reserve(k);
    for (std::size_t i = 0; i < k; ++i) {
        UserProfile u;
        u.id = "u" + std::to_string(i);
        u.daily_kcal = rng.uniform(1600.0, 2800.0);
        u.session_minutes = 30.0 + 15.0 * static_cast<double>(rng.index(7));
        u.goal = static_cast<Goal>(rng.index(3));
        u.vegetarian = rng.bernoulli(0.15);
        u.vegan = u.vegetarian && rng.bernoulli(1.0 / 3.0);
        for (auto& p : u.food_prefs) p = rng.beta22();
        for (const auto& e : catalog.exercises) u.exercise_prefs[e.id] = rng.beta22();
        std::size_t banned = rng.index(3);
        for (std::size_t b = 0; b < banned; ++b)
            u.disallowed_exercises.insert(catalog.exercises[rng.index(catalog.exercises.size())].id);
        pool.push_back(std::move(u));
    }
    return pool;
}

const UserProfile& nearest_neighbour(const UserProfile& user,
                                     const std::vector<UserProfile>& pool) {
    const UserProfile* best = nullptr;
    double best_sim = -2.0;
    for (const auto& cand : pool) {
        if (cand.id == user.id) continue;
        // shared key ordering: category order, then sorted union of exercise ids
        std::set<std::string> keys;
        for (const auto& [id, _] : user.exercise_prefs) keys.insert(id);
        for (const auto& [id, _] : cand.exercise_prefs) keys.insert(id);

        double dot = 0, na = 0, nb = 0;
        auto accumulate = [&](double a, double b) {
            dot += a * b;
            na += a * a;
            nb += b * b;
        };
        for (std::size_t c = 0; c < kCategoryCount; ++c)
            accumulate(user.food_prefs[c], cand.food_prefs[c]);
        for (const auto& key : keys)
            accumulate(user.exercise_rating(key), cand.exercise_rating(key));

        double denom = std::sqrt(na) * std::sqrt(nb);
        double sim = denom > 0 ? dot / denom : 0.0;
        if (sim > best_sim || (sim == best_sim && best && cand.id < best->id)) {
            best_sim = sim;
            best = &cand;
        }
    }
    if (!best) throw CatalogError("nearest_neighbour: pool has no user other than '" + user.id + "'");
    return *best;
}

std::vector<UserProfile> load_users(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw CatalogError("cannot open users file: " + path);
    nlohmann::json root;
    try {
        root = nlohmann::json::parse(in);
    } catch (const nlohmann::json::parse_error& e) {
        throw CatalogError("users parse error in " + path + ": " + e.what());
    }
    if (root.value("schema", 0) != 1)
        throw CatalogError("users file " + path + ": expected schema 1");
    if (!root.contains("users")) throw CatalogError("users file " + path + ": missing 'users'");

    std::vector<UserProfile> pool;
    for (const auto& j : root["users"]) {
        UserProfile u;
        u.id = j.at("id").get<std::string>();
        u.daily_kcal = j.at("daily_kcal").get<double>();
        u.goal = goal_from_name(j.at("goal").get<std::string>());
        u.vegetarian = j.value("vegetarian", false);
        u.vegan = j.value("vegan", false);
        u.session_minutes = j.at("session_minutes").get<double>();
        for (auto it = j.at("food_prefs").begin(); it != j.at("food_prefs").end(); ++it)
            u.food_prefs[static_cast<std::size_t>(category_from_name(it.key()))] =
                it.value().get<double>();
        for (auto it = j.at("exercise_prefs").begin(); it != j.at("exercise_prefs").end(); ++it)
            u.exercise_prefs[it.key()] = it.value().get<double>();
        if (j.contains("disallowed_exercises"))
            for (const auto& id : j["disallowed_exercises"])
                u.disallowed_exercises.insert(id.get<std::string>());
        if (u.daily_kcal <= 0)
            throw CatalogError("user '" + u.id + "': daily_kcal must be > 0");
        if (u.session_minutes <= 0)
            throw CatalogError("user '" + u.id + "': session_minutes must be > 0");
        if (u.vegan && !u.vegetarian)
            throw CatalogError("user '" + u.id + "': vegan implies vegetarian");
        pool.push_back(std::move(u));
    }
    if (pool.empty()) throw CatalogError("users file " + path + " has no users");
    return pool;
}

void save_users(const std::vector<UserProfile>& users, const std::string& path) {
    nlohmann::json root;
    root["schema"] = 1;
    root["users"] = nlohmann::json::array();
    for (const auto& u : users) {
        nlohmann::json j;
        j["id"] = u.id;
        j["daily_kcal"] = u.daily_kcal;
        j["goal"] = goal_name(u.goal);
        j["vegetarian"] = u.vegetarian;
        j["vegan"] = u.vegan;
        j["session_minutes"] = u.session_minutes;
        nlohmann::json fp;
        for (std::size_t c = 0; c < kCategoryCount; ++c)
            fp[category_name(static_cast<FoodCategory>(c))] = u.food_prefs[c];
        j["food_prefs"] = fp;
        nlohmann::json ep;
        for (const auto& [id, r] : u.exercise_prefs) ep[id] = r;
        j["exercise_prefs"] = ep;
        j["disallowed_exercises"] = u.disallowed_exercises;
        root["users"].push_back(std::move(j));
    }
    std::ofstream out(path);
    if (!out) throw CatalogError("cannot write users file: " + path);
    out << root.dump(2) << "\n";
}

}  // namespace coevo::wellbeing
