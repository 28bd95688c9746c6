#pragma once

#include <vector>

#include "coevo/population.hpp"
#include "coevo/rng.hpp"
#include "coevo/wellbeing/fitness.hpp"
#include "coevo/wellbeing/plan.hpp"

namespace coevo::wellbeing {

struct OperatorConfig {
    double p_c = 0.8;  // crossover probability per child
    double p_m = 0.1;  // mutation probability per child
    double p_b = 0.9;  // per-bundle injection probability within a crossover
    double inject_main = 0.2;
    double inject_side = 0.6;
    double inject_exercise = 0.2;

    void validate() const {
        for (double p : {p_c, p_m, p_b})
            if (p < 0 || p > 1) throw ConfigError("operator probabilities must lie in [0, 1]");
        if (std::abs(inject_main + inject_side + inject_exercise - 1.0) > 1e-12)
            throw ConfigError("injection split must sum to 1");
    }
};

// Random initialization over the whole catalog; user data is not consulted.
WellbeingPlan init_host(const Catalog& catalog, Rng& rng);

// Preference-aware initialization: items sampled proportionally to the user's
// ratings among diet-compatible choices, servings scaled to the user's
// per-meal calorie share, duration near the usual session length.
WellbeingPlan init_parasite(const UserProfile& user, const Catalog& catalog, Rng& rng);

// With probability p_c, injects one slot per bundle (with probability p_b)
// from the same-position bundle of `other`.
WellbeingPlan crossover(WellbeingPlan child, const WellbeingPlan& other,
                        const OperatorConfig& cfg, Rng& rng);

// Collaborative-filtering mutation: with probability p_m, one of the 15 slots
// is replaced by a choice drawn under the nearest neighbour's preferences.
WellbeingPlan cf_mutate(WellbeingPlan child, const UserProfile& user,
                        const std::vector<UserProfile>& pool, const Catalog& catalog,
                        const OperatorConfig& cfg, Rng& rng);

// cf_mutate with the neighbour already resolved; what the domain adapter uses
// since the neighbour is fixed for a given (user, pool).
WellbeingPlan cf_mutate_with(WellbeingPlan child, const UserProfile& neighbour,
                             const Catalog& catalog, const OperatorConfig& cfg, Rng& rng);

}  // namespace coevo::wellbeing
