#include "coevo/greater_than.hpp"

#include <numeric>

namespace coevo {

int scalar_value(const BitGenome& g) {
    return std::accumulate(g.begin(), g.end(), 0);
}

double gt_score(const BitGenome& a, const BitGenome& b) {
    if (a.size() != b.size())
        throw std::invalid_argument("gt_score: genome lengths differ");
    int va = scalar_value(a), vb = scalar_value(b);
    if (va > vb) return 1.0;
    if (va < vb) return 0.0;
    return 0.5;
}

BitGenome biased_mutate(const BitGenome& g, double m, double beta, Rng& rng) {
    BitGenome child = g;
    for (auto& bit : child)
        if (rng.bernoulli(m)) bit = rng.bernoulli(beta) ? 1 : 0;
    return child;
}

BitGenome init_all_zero(std::size_t l) {
    return BitGenome(l, 0);
}

}  // namespace coevo
