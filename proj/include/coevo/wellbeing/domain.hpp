#pragma once

#include <vector>

#include "coevo/population.hpp"
#include "coevo/rng.hpp"
#include "coevo/wellbeing/fitness.hpp"
#include "coevo/wellbeing/operators.hpp"
#include "coevo/wellbeing/users.hpp"

namespace coevo::wellbeing {

// Engine adapter for the recommendation problem. Hosts initialize at random,
// parasites with the user-aware routine; both breed via clone + bundle
// crossover + collaborative-filtering mutation. Objective is the phi error,
// lower is better.
class WellbeingDomain {
public:
    using Genome = WellbeingPlan;

    WellbeingDomain(const Catalog* catalog, const std::vector<UserProfile>* pool,
                    std::size_t user_index, OperatorConfig op = {})
        : catalog_(catalog), pool_(pool), user_(&(*pool)[user_index]), op_(op) {
        op_.validate();
        neighbour_ = pool_->size() > 1 ? &nearest_neighbour(*user_, *pool_) : user_;
    }

    const UserProfile& user() const { return *user_; }
    const Catalog& catalog() const { return *catalog_; }
    const OperatorConfig& operators() const { return op_; }

    Genome init_genome(Role role, Rng& rng) const {
        return role == Role::host ? init_host(*catalog_, rng)
                                  : init_parasite(*user_, *catalog_, rng);
    }

    double objective(const Genome& plan) const {
        return phi_error(plan, *user_, *catalog_).phi;
    }

    double duel(double phi_own, double phi_other) const {
        return compare_error(phi_own, phi_other);
    }

    double normalized_objective(double phi) const { return 1.0 - phi; }

    bool better(double a, double b) const { return a < b; }

    bool is_optimum(double) const { return false; }  // no finite optimum

    Genome breed(const std::vector<Individual<Genome>>& pop, std::size_t parent, Role,
                 Rng& rng) const {
        Genome child = pop[parent].genome;
        std::size_t partner = rng.index(pop.size());
        child = crossover(std::move(child), pop[partner].genome, op_, rng);
        return cf_mutate_with(std::move(child), *neighbour_, *catalog_, op_, rng);
    }

private:
    const Catalog* catalog_;
    const std::vector<UserProfile>* pool_;
    const UserProfile* user_;
    const UserProfile* neighbour_;
    OperatorConfig op_;
};

}  // namespace coevo::wellbeing
