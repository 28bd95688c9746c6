#include "coevo/wellbeing/operators.hpp"

#include <cmath>
#include <string>

#include "coevo/wellbeing/users.hpp"

namespace coevo::wellbeing {

namespace {

// Weighted pick over catalog food indices; weight is the user's rating for
// the item's category, diet-incompatible items carry weight 0.
std::size_t pick_food(const UserProfile& user, const Catalog& catalog,
                      const std::vector<std::size_t>& slot_pool, const char* slot_name,
                      Rng& rng) {
    double total = 0;
    for (std::size_t idx : slot_pool) {
        const FoodItem& f = catalog.foods[idx];
        if (user.allows_food(f))
            total += user.food_prefs[static_cast<std::size_t>(f.category)];
    }
    if (total <= 0)
        throw CatalogError(std::string("no admissible ") + slot_name + " food for user '" +
                           user.id + "'");
    double target = rng.uniform() * total;
    double acc = 0;
    for (std::size_t idx : slot_pool) {
        const FoodItem& f = catalog.foods[idx];
        if (!user.allows_food(f)) continue;
        acc += user.food_prefs[static_cast<std::size_t>(f.category)];
        if (target < acc) return idx;
    }
    return slot_pool.back();
}

std::size_t pick_exercise(const UserProfile& user, const Catalog& catalog, Rng& rng) {
    double total = 0;
    for (const auto& e : catalog.exercises)
        if (user.allows_exercise(e.id)) total += user.exercise_rating(e.id);
    if (total <= 0)
        throw CatalogError("no admissible exercise for user '" + user.id + "'");
    double target = rng.uniform() * total;
    double acc = 0;
    for (std::size_t i = 0; i < catalog.exercises.size(); ++i) {
        const auto& e = catalog.exercises[i];
        if (!user.allows_exercise(e.id)) continue;
        acc += user.exercise_rating(e.id);
        if (target < acc) return i;
    }
    return catalog.exercises.size() - 1;
}

// grams so the item contributes an equal quarter of the meal's kcal budget
double grams_for_share(const FoodItem& f, double meal_kcal) {
    return (meal_kcal / static_cast<double>(kFoodsPerBundle)) * f.serving_g /
           f.kcal_per_serving;
}

FoodServing preference_serving(const UserProfile& user, const Catalog& catalog,
                               std::size_t item, double meal_kcal) {
    return {item, grams_for_share(catalog.foods[item], meal_kcal)};
}

}  // namespace

WellbeingPlan init_host(const Catalog& catalog, Rng& rng) {
    WellbeingPlan plan;
    for (auto& b : plan.bundles) {
        b.main.item = catalog.mains[rng.index(catalog.mains.size())];
        b.main.grams = rng.uniform(kMinServingG, kMaxServingG);
        for (auto& s : b.sides) {
            s.item = catalog.sides[rng.index(catalog.sides.size())];
            s.grams = rng.uniform(kMinServingG, kMaxServingG);
        }
        b.exercise.item = rng.index(catalog.exercises.size());
        b.exercise.minutes = rng.uniform(kMinDurationMin, kMaxDurationMin);
    }
    return plan;
}

WellbeingPlan init_parasite(const UserProfile& user, const Catalog& catalog, Rng& rng) {
    WellbeingPlan plan;
    for (auto& b : plan.bundles) {
        std::size_t main = pick_food(user, catalog, catalog.mains, "main", rng);
        std::size_t sides[kSidesPerBundle];
        for (auto& s : sides) s = pick_food(user, catalog, catalog.sides, "side", rng);

        // expected meal kcal equals the user's per-meal intake share
        double meal_kcal = (user.daily_kcal / 3.0) * rng.uniform(0.8, 1.2);
        b.main = preference_serving(user, catalog, main, meal_kcal);
        for (std::size_t i = 0; i < kSidesPerBundle; ++i)
            b.sides[i] = preference_serving(user, catalog, sides[i], meal_kcal);

        b.exercise.item = pick_exercise(user, catalog, rng);
        b.exercise.minutes = user.session_minutes * rng.uniform(0.8, 1.2);
    }
    return plan;
}

WellbeingPlan crossover(WellbeingPlan child, const WellbeingPlan& other,
                        const OperatorConfig& cfg, Rng& rng) {
    if (!rng.bernoulli(cfg.p_c)) return child;
    for (std::size_t k = 0; k < kBundlesPerPlan; ++k) {
        if (!rng.bernoulli(cfg.p_b)) continue;
        double u = rng.uniform();
        if (u < cfg.inject_main) {
            child.bundles[k].main = other.bundles[k].main;
        } else if (u < cfg.inject_main + cfg.inject_side) {
            std::size_t s = rng.index(kSidesPerBundle);
            child.bundles[k].sides[s] = other.bundles[k].sides[s];
        } else {
            child.bundles[k].exercise = other.bundles[k].exercise;
        }
    }
    return child;
}

WellbeingPlan cf_mutate_with(WellbeingPlan child, const UserProfile& neighbour,
                             const Catalog& catalog, const OperatorConfig& cfg, Rng& rng) {
    if (!rng.bernoulli(cfg.p_m)) return child;
    std::size_t slot = rng.index(kSlotsPerPlan);
    Bundle& b = child.bundles[slot / (kFoodsPerBundle + 1)];
    std::size_t pos = slot % (kFoodsPerBundle + 1);

    if (pos == kFoodsPerBundle) {
        b.exercise.item = pick_exercise(neighbour, catalog, rng);
        b.exercise.minutes = neighbour.session_minutes * rng.uniform(0.8, 1.2);
        return child;
    }
    const auto& slot_pool = pos == 0 ? catalog.mains : catalog.sides;
    const char* slot_name = pos == 0 ? "main" : "side";
    std::size_t item = pick_food(neighbour, catalog, slot_pool, slot_name, rng);
    double meal_kcal = (neighbour.daily_kcal / 3.0) * rng.uniform(0.8, 1.2);
    FoodServing serving = preference_serving(neighbour, catalog, item, meal_kcal);
    if (pos == 0)
        b.main = serving;
    else
        b.sides[pos - 1] = serving;
    return child;
}

WellbeingPlan cf_mutate(WellbeingPlan child, const UserProfile& user,
                        const std::vector<UserProfile>& pool, const Catalog& catalog,
                        const OperatorConfig& cfg, Rng& rng) {
    return cf_mutate_with(std::move(child), nearest_neighbour(user, pool), catalog, cfg, rng);
}

}  // namespace coevo::wellbeing
