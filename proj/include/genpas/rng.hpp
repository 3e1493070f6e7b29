#pragma once

#include <cstdint>
#include <random>
#include <vector>

namespace genpas {

/** SplitMix64 mixing step; used to derive independent stream seeds. */
std::uint64_t splitmix64(std::uint64_t x);

/** Seed for a named substream; hash(seed, stream) so streams never collide. */
std::uint64_t derive_seed(std::uint64_t seed, std::uint64_t stream);

/**
 * Deterministic random source. All draws go through uniform01()/below() so the
 * produced values depend only on the seed, never on the standard library's
 * distribution implementations.
 */
class Rng {
public:
    explicit Rng(std::uint64_t seed) : gen_(seed) {}

    /** Uniform double in [0, 1) with 53 random bits. */
    double uniform01() { return static_cast<double>(gen_() >> 11) * 0x1.0p-53; }

    /** Uniform integer in [0, n); n must be positive. Rejection sampled, unbiased. */
    std::uint64_t below(std::uint64_t n);

    /** Standard normal via Box-Muller (one spare cached). */
    double normal();

    /** Gamma(shape, 1) via Marsaglia-Tsang; shape > 0. */
    double gamma(double shape);

    /** In-place Fisher-Yates shuffle. */
    template <typename T>
    void shuffle(std::vector<T>& v) {
        for (std::size_t i = v.size(); i > 1; --i) {
            std::size_t j = static_cast<std::size_t>(below(i));
            std::swap(v[i - 1], v[j]);
        }
    }

    std::uint64_t raw() { return gen_(); }

private:
    std::mt19937_64 gen_;
    double spare_ = 0.0;
    bool has_spare_ = false;
};

}  // namespace genpas
