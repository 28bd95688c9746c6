#include "coevo/mitigation.hpp"

#include <cmath>

namespace coevo {

const char* mitigation_name(MitigationStrategy::Kind kind) {
    switch (kind) {
        case MitigationStrategy::Kind::baseline: return "baseline";
        case MitigationStrategy::Kind::rv: return "rv";
        case MitigationStrategy::Kind::ava: return "ava";
        case MitigationStrategy::Kind::sf: return "sf";
    }
    return "baseline";
}

MitigationStrategy::Kind mitigation_kind_from_name(const std::string& name) {
    if (name == "baseline") return MitigationStrategy::Kind::baseline;
    if (name == "rv") return MitigationStrategy::Kind::rv;
    if (name == "ava") return MitigationStrategy::Kind::ava;
    if (name == "sf") return MitigationStrategy::Kind::sf;
    throw ConfigError("unknown mitigation technique: " + name);
}

double rv_transform(double x, double upsilon) {
    if (upsilon < 0.5 || upsilon > 1.0)
        throw ConfigError("virulence must lie in [0.5, 1.0]");
    double f = 2.0 * x / upsilon - (x * x) / (upsilon * upsilon);
    return std::clamp(f, 0.0, 1.0);
}

std::size_t sf_kappa(std::size_t n, double delta) {
    if (delta <= 0.0) return 0;
    double frac = std::pow(delta, 1.0 / delta);
    auto kappa = static_cast<std::size_t>(std::ceil(static_cast<double>(n) * frac));
    // delta^(1/delta) can underflow to zero for tiny delta; the ceiling of a
    // positive quantity is still at least 1.
    return std::clamp<std::size_t>(kappa, 1, n);
}

}  // namespace coevo
