#include "coevo/wellbeing/fitness.hpp"

#include <algorithm>
#include <cmath>
#include <set>

namespace coevo::wellbeing {

namespace {

double clip01(double x) { return std::clamp(x, 0.0, 1.0); }

// |actual - target| / target, clipped
double ratio_term(double actual, double target) {
    return clip01(std::abs(actual - target) / target);
}

// 0 when actual <= cap, otherwise overshoot relative to the cap
double cap_term(double actual, double cap) {
    return actual <= cap ? 0.0 : clip01((actual - cap) / cap);
}

// 0 when actual >= floor, otherwise shortfall relative to the floor
double floor_term(double actual, double floor) {
    return actual >= floor ? 0.0 : clip01((floor - actual) / floor);
}

struct MealTotals {
    double kcal = 0, protein = 0, carbs = 0, sugar = 0, fibre = 0, fat = 0, satfat = 0,
           sodium = 0;
};

MealTotals meal_totals(const Bundle& bundle, const Catalog& catalog) {
    MealTotals t;
    auto add = [&](const FoodServing& s) {
        const FoodItem& f = catalog.foods[s.item];
        double scale = s.grams / f.serving_g;
        t.kcal += f.kcal_per_serving * scale;
        t.protein += f.protein_g * scale;
        t.carbs += f.carbs_g * scale;
        t.sugar += f.sugar_g * scale;
        t.fibre += f.fibre_g * scale;
        t.fat += f.fat_g * scale;
        t.satfat += f.satfat_g * scale;
        t.sodium += f.sodium_g * scale;
    };
    add(bundle.main);
    for (const auto& s : bundle.sides) add(s);
    return t;
}

}  // namespace

double goal_factor(Goal g) {
    switch (g) {
        case Goal::lose_weight: return 0.85;
        case Goal::maintain: return 1.0;
        case Goal::gain_muscle: return 1.10;
    }
    return 1.0;
}

double meal_kcal_target(const UserProfile& user) {
    return goal_factor(user.goal) * user.daily_kcal / 3.0;
}

double hf_error(const Bundle& bundle, const UserProfile& user, const Catalog& catalog) {
    MealTotals t = meal_totals(bundle, catalog);
    double cm = meal_kcal_target(user);

    // Energy split targets per meal: 15% protein, 50% carbohydrate, 35% fat;
    // caps of 11% saturated fat and 5% sugar; at least 10 g fibre and at most
    // 0.8 g sodium.
    double sum = 0;
    sum += ratio_term(t.kcal, cm);
    sum += ratio_term(t.protein, 0.15 * cm / 4.0);
    sum += ratio_term(t.carbs, 0.50 * cm / 4.0);
    sum += ratio_term(t.fat, 0.35 * cm / 9.0);
    sum += cap_term(t.satfat, 0.11 * cm / 9.0);
    sum += cap_term(t.sugar, 0.05 * cm / 4.0);
    sum += floor_term(t.fibre, 10.0);
    sum += cap_term(t.sodium, 0.8);
    return sum / 8.0;
}

double ea_error(const Bundle& bundle, const UserProfile& user) {
    return std::min(1.0, std::abs(bundle.exercise.minutes - user.session_minutes) /
                             user.session_minutes);
}

double cd_error(const WellbeingPlan& plan, const Catalog& catalog) {
    std::set<std::size_t> items, categories, exercises;
    for (const auto& b : plan.bundles) {
        items.insert(b.main.item);
        categories.insert(static_cast<std::size_t>(catalog.foods[b.main.item].category));
        for (const auto& s : b.sides) {
            items.insert(s.item);
            categories.insert(static_cast<std::size_t>(catalog.foods[s.item].category));
        }
        exercises.insert(b.exercise.item);
    }

    double item_term =
        1.0 - static_cast<double>(items.size()) / static_cast<double>(kFoodSlotsPerPlan);
    double cat_term = 1.0 - static_cast<double>(categories.size()) /
                                static_cast<double>(std::min(kFoodSlotsPerPlan, kCategoryCount));
    double ex_term =
        1.0 - static_cast<double>(exercises.size()) / static_cast<double>(kBundlesPerPlan);

    double prop_sum = 0;
    for (const auto& b : plan.bundles) {
        double grams[kFoodsPerBundle] = {b.main.grams, b.sides[0].grams, b.sides[1].grams,
                                         b.sides[2].grams};
        bool abnormal = false;
        double mean = 0;
        for (double g : grams) {
            if (g < kMinServingG || g > kMaxServingG) abnormal = true;
            mean += g;
        }
        mean /= kFoodsPerBundle;
        if (abnormal || mean <= 0) {
            prop_sum += 1.0;
            continue;
        }
        double var = 0;
        for (double g : grams) var += (g - mean) * (g - mean);
        var /= kFoodsPerBundle;
        prop_sum += std::min(1.0, std::sqrt(var) / mean);
    }
    double prop_term = prop_sum / kBundlesPerPlan;

    return (item_term + cat_term + prop_term + ex_term) / 4.0;
}

double psi_error(const WellbeingPlan& plan, const UserProfile& user, const Catalog& catalog) {
    double like_sum = 0;
    auto food_like = [&](const FoodServing& s) {
        const FoodItem& f = catalog.foods[s.item];
        if (!user.allows_food(f)) return 0.0;
        return user.food_prefs[static_cast<std::size_t>(f.category)];
    };
    for (const auto& b : plan.bundles) {
        like_sum += food_like(b.main);
        for (const auto& s : b.sides) like_sum += food_like(s);
        const ExerciseItem& e = catalog.exercises[b.exercise.item];
        like_sum += user.allows_exercise(e.id) ? user.exercise_rating(e.id) : 0.0;
    }
    return 1.0 - like_sum / static_cast<double>(kSlotsPerPlan);
}

WellbeingFitness phi_error(const WellbeingPlan& plan, const UserProfile& user,
                           const Catalog& catalog) {
    WellbeingFitness fit;
    double hf_sum = 0, ea_sum = 0;
    for (const auto& b : plan.bundles) {
        hf_sum += hf_error(b, user, catalog);
        ea_sum += ea_error(b, user);
    }
    fit.hf = hf_sum / kBundlesPerPlan;
    fit.ea = ea_sum / kBundlesPerPlan;
    fit.cd = cd_error(plan, catalog);
    fit.psi_pref = psi_error(plan, user, catalog);
    fit.phi = (fit.hf + fit.ea + fit.cd + fit.psi_pref) / 4.0;
    return fit;
}

double compare_error(double phi_a, double phi_b) {
    if (phi_a < phi_b) return 1.0;
    if (phi_a > phi_b) return 0.0;
    return 0.5;
}

double diversity_error_any(const std::vector<WellbeingPlan>& plans, const Catalog& catalog) {
    if (plans.empty()) throw CatalogError("diversity_error: no plans");
    std::set<std::size_t> items, categories;
    for (const auto& plan : plans)
        for (const auto& b : plan.bundles) {
            items.insert(b.main.item);
            categories.insert(static_cast<std::size_t>(catalog.foods[b.main.item].category));
            for (const auto& s : b.sides) {
                items.insert(s.item);
                categories.insert(static_cast<std::size_t>(catalog.foods[s.item].category));
            }
        }
    double slots = static_cast<double>(plans.size() * kFoodSlotsPerPlan);
    double item_term = 1.0 - static_cast<double>(items.size()) / slots;
    double cat_denom = std::min(slots, static_cast<double>(kCategoryCount));
    double cat_term = 1.0 - static_cast<double>(categories.size()) / cat_denom;
    return std::clamp(0.5 * item_term + 0.5 * cat_term, 0.0, 1.0);
}

double diversity_error(const std::vector<WellbeingPlan>& plans, const Catalog& catalog) {
    if (plans.size() != 28)
        throw CatalogError("diversity_error: expected exactly 28 plans, got " +
                           std::to_string(plans.size()));
    return diversity_error_any(plans, catalog);
}

}  // namespace coevo::wellbeing
