#pragma once

#include <cstdint>
#include <vector>

#include "coevo/population.hpp"
#include "coevo/rng.hpp"

namespace coevo {

using BitGenome = std::vector<std::uint8_t>;

struct GtConfig {
    std::size_t l = 100;      // genome length
    double m = 0.005;         // per-bit mutation probability
    double beta_host = 0.5;   // P(mutated bit becomes 1), host population
    double beta_parasite = 0.5;

    void validate() const {
        if (l < 1) throw ConfigError("genome length must be at least 1");
        if (m < 0.0 || m > 1.0) throw ConfigError("mutation probability must lie in [0, 1]");
        if (beta_host < 0.0 || beta_host > 1.0 || beta_parasite < 0.0 || beta_parasite > 1.0)
            throw ConfigError("mutation bias must lie in [0, 1]");
    }
};

int scalar_value(const BitGenome& g);

// 1 if a > b, 0.5 on equality, 0 otherwise (by scalar value).
double gt_score(const BitGenome& a, const BitGenome& b);

// Each bit independently mutates with probability m; a mutated bit is
// reassigned to 1 with probability beta (possibly equal to its old value).
BitGenome biased_mutate(const BitGenome& g, double m, double beta, Rng& rng);

BitGenome init_all_zero(std::size_t l);

// Engine adapter for the greater-than game: maximize the count of ones,
// observable only through pairwise comparisons. Asexual reproduction.
class GreaterThanDomain {
public:
    using Genome = BitGenome;

    explicit GreaterThanDomain(GtConfig cfg = {}) : cfg_(cfg) { cfg_.validate(); }

    const GtConfig& config() const { return cfg_; }

    Genome init_genome(Role, Rng&) const { return init_all_zero(cfg_.l); }

    double objective(const Genome& g) const { return static_cast<double>(scalar_value(g)); }

    double duel(double oa, double ob) const {
        if (oa > ob) return 1.0;
        if (oa < ob) return 0.0;
        return 0.5;
    }

    double normalized_objective(double obj) const { return obj / static_cast<double>(cfg_.l); }

    bool better(double a, double b) const { return a > b; }

    bool is_optimum(double obj) const { return obj >= static_cast<double>(cfg_.l); }

    Genome breed(const std::vector<Individual<Genome>>& pop, std::size_t parent, Role role,
                 Rng& rng) const {
        double beta = role == Role::host ? cfg_.beta_host : cfg_.beta_parasite;
        return biased_mutate(pop[parent].genome, cfg_.m, beta, rng);
    }

private:
    GtConfig cfg_;
};

}  // namespace coevo
