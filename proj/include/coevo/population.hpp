#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>
#include <vector>

namespace coevo {

enum class Role { host, parasite };

inline const char* role_name(Role r) { return r == Role::host ? "host" : "parasite"; }

struct ConfigError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

template <class G>
struct Individual {
    G genome;
    double psi = 0.0;  // subjective fitness in [0,1]
};

template <class G>
struct Population {
    Role role = Role::host;
    std::vector<Individual<G>> members;
    double sigma = 0.0;  // mean psi

    void recompute_sigma() {
        double sum = 0.0;
        for (const auto& m : members) sum += m.psi;
        sigma = members.empty() ? 0.0 : sum / static_cast<double>(members.size());
    }
};

inline double compute_delta(double sigma_a, double sigma_b) {
    double d = sigma_a - sigma_b;
    return d < 0 ? -d : d;
}

}  // namespace coevo
