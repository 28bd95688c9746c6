#pragma once

#include <cstdint>
#include <limits>
#include <vector>

#include "coevo/mitigation.hpp"
#include "coevo/population.hpp"
#include "coevo/rng.hpp"

namespace coevo {

// A Domain D plugs the problem into the generational loop. Required surface:
//   typename D::Genome
//   Genome init_genome(Role, Rng&) const
//   double objective(const Genome&) const            // raw domain objective
//   double duel(double oa, double ob) const          // 0 / 0.5 / 1, anti-symmetric
//   double normalized_objective(double) const        // [0,1], higher is better
//   bool   better(double a, double b) const          // a strictly better than b
//   bool   is_optimum(double) const
//   Genome breed(const std::vector<Individual<Genome>>&, std::size_t parent,
//                Role, Rng&) const
enum class EngineMode { coevolution, single_population };

struct EngineConfig {
    std::size_t n = 25;
    std::size_t S = 5;
    std::size_t T = 2;
    int generations = 1000;
    EngineMode mode = EngineMode::coevolution;
    MitigationStrategy mitigation;
    std::uint64_t seed = 1;

    void validate() const {
        if (n < 2) throw ConfigError("population size must be at least 2");
        if (S < 1 || S > n) throw ConfigError("opponent sample size must satisfy 1 <= S <= n");
        if (T != 2) throw ConfigError("tournament size must be 2");
        if (generations < 1) throw ConfigError("generations must be at least 1");
        if (mode == EngineMode::single_population &&
            mitigation.kind != MitigationStrategy::Kind::baseline)
            throw ConfigError("single-population mode supports baseline mitigation only");
    }
};

struct GenerationStats {
    int gen = 0;
    double sigma_host = 0.0;
    double sigma_parasite = 0.0;
    double delta = 0.0;
    bool disengaged = false;
    std::size_t kappa_applied = 0;
    double virulence_host = 1.0;
    double virulence_parasite = 1.0;
    double best_objective_host = 0.0;
    double best_objective_parasite = 0.0;
    double mean_objective_host = 0.0;
    double mean_objective_parasite = 0.0;
};

template <class G>
struct TrialResult {
    std::vector<GenerationStats> per_generation;
    G best_genome_host{};
    G best_genome_parasite{};
    struct Summary {
        bool ever_disengaged = false;
        int disengaged_generation_count = 0;
        bool reached_optimum = false;
        double best_objective_overall = 0.0;  // best host objective over the run
    } summary;
};

constexpr double kDisengagedEps = 1e-12;

// Refresh psi of both populations from sampled competitions: each member
// meets S opponents drawn uniformly with replacement from the other side.
template <class D>
void evaluate_subjective(Population<typename D::Genome>& pop_a,
                         Population<typename D::Genome>& pop_b, const D& domain,
                         std::size_t S, Rng& rng,
                         const std::vector<double>& obj_a,
                         const std::vector<double>& obj_b) {
    if (S == 0) throw ConfigError("opponent sample size must be positive");
    auto eval_side = [&](Population<typename D::Genome>& pop, const std::vector<double>& own,
                         const std::vector<double>& other) {
        for (std::size_t i = 0; i < pop.members.size(); ++i) {
            double sum = 0.0;
            for (std::size_t s = 0; s < S; ++s)
                sum += domain.duel(own[i], other[rng.index(other.size())]);
            pop.members[i].psi = sum / static_cast<double>(S);
        }
        pop.recompute_sigma();
    };
    eval_side(pop_a, obj_a, obj_b);
    eval_side(pop_b, obj_b, obj_a);
}

// Size-two tournament over distinct members; higher psi wins, ties are broken
// uniformly at random.
template <class G>
std::size_t tournament_select(const Population<G>& pop, Rng& rng) {
    auto [a, b] = rng.distinct_pair(pop.members.size());
    double pa = pop.members[a].psi;
    double pb = pop.members[b].psi;
    if (pa > pb) return a;
    if (pb > pa) return b;
    return rng.bernoulli(0.5) ? a : b;
}

namespace detail {

template <class D>
std::vector<double> objectives(const D& domain,
                               const Population<typename D::Genome>& pop) {
    std::vector<double> obj(pop.members.size());
    for (std::size_t i = 0; i < pop.members.size(); ++i)
        obj[i] = domain.objective(pop.members[i].genome);
    return obj;
}

inline double mean_of(const std::vector<double>& v) {
    double sum = 0.0;
    for (double x : v) sum += x;
    return v.empty() ? 0.0 : sum / static_cast<double>(v.size());
}

template <class D>
std::size_t best_index(const D& domain, const std::vector<double>& obj) {
    std::size_t best = 0;
    for (std::size_t i = 1; i < obj.size(); ++i)
        if (domain.better(obj[i], obj[best])) best = i;
    return best;
}

template <class D>
void breed_replace(const D& domain, Population<typename D::Genome>& pop, Role role, Rng& rng) {
    std::vector<Individual<typename D::Genome>> offspring;
    offspring.reserve(pop.members.size());
    for (std::size_t c = 0; c < pop.members.size(); ++c) {
        std::size_t parent = tournament_select(pop, rng);
        offspring.push_back({domain.breed(pop.members, parent, role, rng), 0.0});
    }
    pop.members = std::move(offspring);
}

template <class D>
void track_best(const D& domain, const Population<typename D::Genome>& pop,
                const std::vector<double>& obj, double& best_obj,
                typename D::Genome& best_genome, bool& have_best) {
    std::size_t idx = best_index(domain, obj);
    if (!have_best || domain.better(obj[idx], best_obj)) {
        best_obj = obj[idx];
        best_genome = pop.members[idx].genome;
        have_best = true;
    }
}

}  // namespace detail

// Two-population coevolutionary trial. Per generation, in fixed RNG order:
// evaluation, mitigation, breeding; stats are captured after mitigation so
// the recorded psi is what selection saw. Full generational replacement.
template <class D>
TrialResult<typename D::Genome> run_trial(const EngineConfig& config, const D& domain, Rng& rng) {
    config.validate();
    using G = typename D::Genome;

    Population<G> host{Role::host, {}, 0.0};
    Population<G> parasite{Role::parasite, {}, 0.0};
    for (std::size_t i = 0; i < config.n; ++i)
        host.members.push_back({domain.init_genome(Role::host, rng), 0.0});
    for (std::size_t i = 0; i < config.n; ++i)
        parasite.members.push_back({domain.init_genome(Role::parasite, rng), 0.0});

    MitigationRuntime<G> mitigation(config.mitigation);
    TrialResult<G> result;
    result.per_generation.reserve(static_cast<std::size_t>(config.generations));

    double best_host_obj = 0.0, best_parasite_obj = 0.0;
    bool have_best_host = false, have_best_parasite = false;

    for (int t = 1; t <= config.generations; ++t) {
        auto obj_host = detail::objectives(domain, host);
        auto obj_parasite = detail::objectives(domain, parasite);
        evaluate_subjective(host, parasite, domain, config.S, rng, obj_host, obj_parasite);

        double delta = compute_delta(host.sigma, parasite.sigma);
        std::size_t kappa = mitigation.apply(host, parasite, delta, t);

        GenerationStats stats;
        stats.gen = t;
        stats.sigma_host = host.sigma;
        stats.sigma_parasite = parasite.sigma;
        stats.delta = compute_delta(host.sigma, parasite.sigma);
        stats.disengaged = stats.delta >= 1.0 - kDisengagedEps;
        stats.kappa_applied = kappa;
        stats.virulence_host = mitigation.virulence(Role::host);
        stats.virulence_parasite = mitigation.virulence(Role::parasite);

        // SF may have substituted genomes; refresh objectives before reporting.
        if (kappa > 0) {
            obj_host = detail::objectives(domain, host);
            obj_parasite = detail::objectives(domain, parasite);
        }
        stats.best_objective_host = obj_host[detail::best_index(domain, obj_host)];
        stats.best_objective_parasite = obj_parasite[detail::best_index(domain, obj_parasite)];
        stats.mean_objective_host = detail::mean_of(obj_host);
        stats.mean_objective_parasite = detail::mean_of(obj_parasite);
        detail::track_best(domain, host, obj_host, best_host_obj, result.best_genome_host,
                           have_best_host);
        detail::track_best(domain, parasite, obj_parasite, best_parasite_obj,
                           result.best_genome_parasite, have_best_parasite);

        if (stats.disengaged) {
            result.summary.ever_disengaged = true;
            ++result.summary.disengaged_generation_count;
        }
        if (domain.is_optimum(stats.best_objective_host)) result.summary.reached_optimum = true;
        result.per_generation.push_back(stats);

        detail::breed_replace(domain, host, Role::host, rng);
        detail::breed_replace(domain, parasite, Role::parasite, rng);
    }

    result.summary.best_objective_overall = best_host_obj;
    return result;
}

// Single-population evolution: fitness is the domain objective directly
// (normalized so higher psi is better), no competition, no mitigation.
// Initialization and breeding use the parasite role, the domain's canonical
// user-aware routine.
template <class D>
TrialResult<typename D::Genome> run_single_population(const EngineConfig& config, const D& domain,
                                                      Rng& rng) {
    config.validate();
    if (config.mitigation.kind != MitigationStrategy::Kind::baseline)
        throw ConfigError("single-population mode supports baseline mitigation only");
    using G = typename D::Genome;

    Population<G> pop{Role::host, {}, 0.0};
    for (std::size_t i = 0; i < config.n; ++i)
        pop.members.push_back({domain.init_genome(Role::parasite, rng), 0.0});

    TrialResult<G> result;
    result.per_generation.reserve(static_cast<std::size_t>(config.generations));
    double best_obj = 0.0;
    bool have_best = false;

    for (int t = 1; t <= config.generations; ++t) {
        auto obj = detail::objectives(domain, pop);
        for (std::size_t i = 0; i < pop.members.size(); ++i)
            pop.members[i].psi = domain.normalized_objective(obj[i]);
        pop.recompute_sigma();

        GenerationStats stats;
        stats.gen = t;
        stats.sigma_host = pop.sigma;
        stats.sigma_parasite = pop.sigma;
        stats.delta = 0.0;
        stats.best_objective_host = obj[detail::best_index(domain, obj)];
        stats.best_objective_parasite = stats.best_objective_host;
        stats.mean_objective_host = detail::mean_of(obj);
        stats.mean_objective_parasite = stats.mean_objective_host;
        detail::track_best(domain, pop, obj, best_obj, result.best_genome_host, have_best);
        if (domain.is_optimum(stats.best_objective_host)) result.summary.reached_optimum = true;
        result.per_generation.push_back(stats);

        detail::breed_replace(domain, pop, Role::parasite, rng);
    }

    result.best_genome_parasite = result.best_genome_host;
    result.summary.best_objective_overall = best_obj;
    return result;
}

}  // namespace coevo
