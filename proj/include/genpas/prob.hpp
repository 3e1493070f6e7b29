#pragma once

#include <cstdint>
#include <utility>
#include <vector>

#include "genpas/exponent.hpp"
#include "genpas/rng.hpp"

namespace genpas {

/**
 * Discrete distribution over integer domain values. Entries are ordered by
 * domain value; absent values carry probability zero.
 */
struct ProbVector {
    std::vector<std::pair<std::uint32_t, double>> entries;  // (domain value, probability)

    /** Probability of a domain value (0 when absent). */
    double prob(std::uint32_t v) const;

    /** Throws if entries are negative or do not sum to 1 within 1e-12. */
    void validate() const;

    /** Inverse-CDF draw; consumes exactly one uniform from rng. */
    std::uint32_t sample(Rng& rng) const;
};

/**
 * Normalized power-law weights over (value, base) pairs with all bases > 0:
 * p(value) ∝ base^e for finite e. Symbolic infinities give a uniform
 * distribution over the arg-max (+inf) or arg-min (-inf) base set. Large
 * exponents or bases are handled in log-space with one max-subtraction.
 */
ProbVector power_weights(const std::vector<std::pair<std::uint32_t, double>>& bases,
                         const ExtExponent& e);

}  // namespace genpas
