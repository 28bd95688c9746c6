#pragma once

#include <algorithm>
#include <cstdint>
#include <initializer_list>
#include <random>
#include <utility>

namespace coevo {

inline std::uint64_t splitmix64(std::uint64_t& state) {
    std::uint64_t z = (state += 0x9e3779b97f4a7c15ULL);
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
    return z ^ (z >> 31);
}

// Deterministic seed mixer: H(base, k1, k2, ...). Adding later keys never
// changes the stream produced by a shorter prefix with different keys.
inline std::uint64_t mix_seed(std::initializer_list<std::uint64_t> keys) {
    std::uint64_t state = 0x6a09e667f3bcc908ULL;
    for (std::uint64_t k : keys) {
        state ^= splitmix64(state) ^ k;
        splitmix64(state);
    }
    return splitmix64(state);
}

// Thin wrapper over mt19937_64 with explicit value mappings, so a trial's
// stream depends only on the seed and the documented consumption order.
class Rng {
public:
    explicit Rng(std::uint64_t seed) : eng_(seed) {}

    std::uint64_t next_u64() { return eng_(); }

    // uniform in [0, 1)
    double uniform() {
        return static_cast<double>(eng_() >> 11) * 0x1.0p-53;
    }

    double uniform(double lo, double hi) { return lo + (hi - lo) * uniform(); }

    // uniform index in [0, n)
    std::size_t index(std::size_t n) {
        return static_cast<std::size_t>(
            (static_cast<unsigned __int128>(eng_()) * n) >> 64);
    }

    bool bernoulli(double p) { return uniform() < p; }

    // two distinct indices in [0, n), n >= 2
    std::pair<std::size_t, std::size_t> distinct_pair(std::size_t n) {
        std::size_t a = index(n);
        std::size_t b = index(n - 1);
        if (b >= a) ++b;
        return {a, b};
    }

    // Beta(2,2) sample: median of three uniforms.
    double beta22() {
        double a = uniform(), b = uniform(), c = uniform();
        double lo = std::min(a, std::min(b, c));
        double hi = std::max(a, std::max(b, c));
        return a + b + c - lo - hi;
    }

private:
    std::mt19937_64 eng_;
};

}  // namespace coevo
