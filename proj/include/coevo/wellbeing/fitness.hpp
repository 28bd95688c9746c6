#pragma once

#include <vector>

#include "coevo/wellbeing/catalog.hpp"
#include "coevo/wellbeing/plan.hpp"
#include "coevo/wellbeing/users.hpp"

namespace coevo::wellbeing {

struct WellbeingFitness {
    double hf = 0;
    double ea = 0;
    double cd = 0;
    double psi_pref = 0;
    double phi = 0;
};

// Serving sizes outside this range are treated as abnormal by the
// consistency term.
constexpr double kMinServingG = 10.0;
constexpr double kMaxServingG = 500.0;
constexpr double kMinDurationMin = 10.0;
constexpr double kMaxDurationMin = 180.0;

double goal_factor(Goal g);

// Per-meal calorie target: goal factor times a third of the daily intake.
double meal_kcal_target(const UserProfile& user);

// Nutritional error of one meal against per-meal targets derived from the
// user's calorie budget: kcal plus seven nutrient terms, each normalized and
// clipped to [0,1], averaged.
double hf_error(const Bundle& bundle, const UserProfile& user, const Catalog& catalog);

// min(1, |duration - usual| / usual)
double ea_error(const Bundle& bundle, const UserProfile& user);

// Consistency-and-diversity error over the whole plan: item repetition,
// category repetition, serving proportionality, exercise repetition.
double cd_error(const WellbeingPlan& plan, const Catalog& catalog);

// 1 minus mean likeability over all 15 slots; diet-violating foods and
// disallowed exercises are forced to likeability 0.
double psi_error(const WellbeingPlan& plan, const UserProfile& user, const Catalog& catalog);

WellbeingFitness phi_error(const WellbeingPlan& plan, const UserProfile& user,
                           const Catalog& catalog);

// 1 if a < b (lower error wins), 0.5 on tie, 0 otherwise.
double compare_error(double phi_a, double phi_b);

// Month-level diversity error over exactly 28 plans (item and category
// repetition across all 336 food slots).
double diversity_error(const std::vector<WellbeingPlan>& plans, const Catalog& catalog);

// Same measure for an arbitrary number of plans; used by sweep summaries
// when fewer than 28 trials are run.
double diversity_error_any(const std::vector<WellbeingPlan>& plans, const Catalog& catalog);

}  // namespace coevo::wellbeing
