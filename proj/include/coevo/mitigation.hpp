#pragma once

#include <algorithm>
#include <cstddef>
#include <numeric>
#include <string>
#include <vector>

#include "coevo/population.hpp"

namespace coevo {

enum class RvTarget { host, parasite, both };

struct RvConfig {
    double upsilon = 0.75;
    RvTarget target = RvTarget::parasite;
};

struct AvaConfig {
    double alpha = 0.0125;
    double mu = 0.3;
    double tau = 0.56;
    double upsilon0 = 0.75;
};

struct MitigationStrategy {
    enum class Kind { baseline, rv, ava, sf };
    Kind kind = Kind::baseline;
    RvConfig rv;
    AvaConfig ava;

    static MitigationStrategy baseline() { return {}; }
    static MitigationStrategy reduced_virulence(double upsilon, RvTarget target = RvTarget::parasite) {
        MitigationStrategy s;
        s.kind = Kind::rv;
        s.rv = {upsilon, target};
        return s;
    }
    static MitigationStrategy ava_adaptive(AvaConfig cfg = {}) {
        MitigationStrategy s;
        s.kind = Kind::ava;
        s.ava = cfg;
        return s;
    }
    static MitigationStrategy substitution_of_fittest() {
        MitigationStrategy s;
        s.kind = Kind::sf;
        return s;
    }
};

const char* mitigation_name(MitigationStrategy::Kind kind);
MitigationStrategy::Kind mitigation_kind_from_name(const std::string& name);

// f(x, v) = 2x/v - x^2/v^2, clipped to [0,1].
double rv_transform(double x, double upsilon);

// kappa = ceil(n * delta^(1/delta)); 0 at delta = 0.
std::size_t sf_kappa(std::size_t n, double delta);

// Virulence update. For t < 5 the warm-up rule Delta_t = (0.5 - x_bar)/t
// applies; afterwards Delta_t = mu*Delta_{t-1} + alpha*(1-mu)*(tau - x_bar).
struct AvaState {
    AvaConfig cfg;
    double upsilon;
    double delta_prev = 0.0;

    explicit AvaState(AvaConfig c = {}) : cfg(c), upsilon(c.upsilon0) {}

    void update(double x_bar, int t) {
        double d;
        if (t < 5)
            d = (0.5 - x_bar) / static_cast<double>(t);
        else
            d = cfg.mu * delta_prev + cfg.alpha * (1.0 - cfg.mu) * (cfg.tau - x_bar);
        upsilon = std::clamp(upsilon + d, 0.5, 1.0);
        delta_prev = d;
    }
};

struct SfState {
    double delta_prev = 0.0;
    std::size_t kappa_last = 0;
};

namespace detail {
// Member indices ranked by psi; ties resolved by lower member index.
template <class G>
std::vector<std::size_t> rank_indices(const Population<G>& pop, bool best_first) {
    std::vector<std::size_t> idx(pop.members.size());
    std::iota(idx.begin(), idx.end(), std::size_t{0});
    std::stable_sort(idx.begin(), idx.end(), [&](std::size_t a, std::size_t b) {
        return best_first ? pop.members[a].psi > pop.members[b].psi
                          : pop.members[a].psi < pop.members[b].psi;
    });
    return idx;
}
}  // namespace detail

// SF substitution step. Works from a pre-substitution snapshot: in the losing
// population the i-th-worst member is overwritten by a copy of the i-th-best
// (genome and psi), then all psi shift up by delta; the winning population is
// treated symmetrically with a downward shift.
template <class G>
void sf_apply(Population<G>& pop_low, Population<G>& pop_high, double delta, std::size_t kappa) {
    auto low_best = detail::rank_indices(pop_low, true);
    auto low_worst = detail::rank_indices(pop_low, false);
    auto high_best = detail::rank_indices(pop_high, true);
    auto high_worst = detail::rank_indices(pop_high, false);

    std::vector<Individual<G>> low_snap = pop_low.members;
    std::vector<Individual<G>> high_snap = pop_high.members;

    for (std::size_t i = 0; i < kappa; ++i) {
        pop_low.members[low_worst[i]] = low_snap[low_best[i]];
        pop_high.members[high_best[i]] = high_snap[high_worst[i]];
    }
    for (auto& m : pop_low.members) m.psi = std::min(m.psi + delta, 1.0);
    for (auto& m : pop_high.members) m.psi = std::max(m.psi - delta, 0.0);
    pop_low.recompute_sigma();
    pop_high.recompute_sigma();
}

// Per-trial mitigation runtime: owns the AVA/SF state and applies the
// configured transform between evaluation and selection.
template <class G>
class MitigationRuntime {
public:
    explicit MitigationRuntime(MitigationStrategy strategy)
        : strategy_(strategy), ava_host_(strategy.ava), ava_parasite_(strategy.ava) {}

    // delta is the post-evaluation engagement gap; t is the 1-based generation.
    // Returns the number of individuals substituted (0 unless SF fired).
    std::size_t apply(Population<G>& host, Population<G>& parasite, double delta, int t) {
        switch (strategy_.kind) {
            case MitigationStrategy::Kind::baseline:
                return 0;
            case MitigationStrategy::Kind::rv: {
                const auto target = strategy_.rv.target;
                if (target == RvTarget::host || target == RvTarget::both)
                    transform_psi(host, strategy_.rv.upsilon);
                if (target == RvTarget::parasite || target == RvTarget::both)
                    transform_psi(parasite, strategy_.rv.upsilon);
                return 0;
            }
            case MitigationStrategy::Kind::ava: {
                ava_host_.update(host.sigma, t);
                ava_parasite_.update(parasite.sigma, t);
                transform_psi(host, ava_host_.upsilon);
                transform_psi(parasite, ava_parasite_.upsilon);
                return 0;
            }
            case MitigationStrategy::Kind::sf: {
                std::size_t kappa = 0;
                if (delta > sf_.delta_prev) {
                    kappa = sf_kappa(host.members.size(), delta);
                    if (kappa > 0) {
                        if (host.sigma <= parasite.sigma)
                            sf_apply(host, parasite, delta, kappa);
                        else
                            sf_apply(parasite, host, delta, kappa);
                    }
                }
                sf_.delta_prev = delta;
                sf_.kappa_last = kappa;
                return kappa;
            }
        }
        return 0;
    }

    // Virulence currently applied to each population; 1.0 when inapplicable.
    double virulence(Role role) const {
        switch (strategy_.kind) {
            case MitigationStrategy::Kind::rv: {
                const auto target = strategy_.rv.target;
                bool applies = (target == RvTarget::both) ||
                               (target == RvTarget::host && role == Role::host) ||
                               (target == RvTarget::parasite && role == Role::parasite);
                return applies ? strategy_.rv.upsilon : 1.0;
            }
            case MitigationStrategy::Kind::ava:
                return role == Role::host ? ava_host_.upsilon : ava_parasite_.upsilon;
            default:
                return 1.0;
        }
    }

    const MitigationStrategy& strategy() const { return strategy_; }

private:
    static void transform_psi(Population<G>& pop, double upsilon) {
        for (auto& m : pop.members) m.psi = rv_transform(m.psi, upsilon);
        pop.recompute_sigma();
    }

    MitigationStrategy strategy_;
    AvaState ava_host_;
    AvaState ava_parasite_;
    SfState sf_;
};

}  // namespace coevo
