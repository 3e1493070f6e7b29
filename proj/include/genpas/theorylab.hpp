#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "genpas/corpus.hpp"
#include "genpas/exponent.hpp"
#include "genpas/histogram.hpp"
#include "genpas/rng.hpp"

namespace genpas {

/**
 * Position-wise item distributions for synthetic populations: every user draws
 * item k independently from p_k; p_{n+1} is the held-out target distribution.
 */
struct PositionModel {
    std::uint32_t n = 0;           // training-sequence length
    std::uint32_t item_count = 0;  // universe size
    std::vector<std::vector<double>> p;  // n+1 rows, each a distribution over items

    /** TV(p_k, p_{n+1}) — the recency bias at position k (1-based, k <= n). */
    double delta(std::uint32_t k) const;
    void validate() const;
};

enum class BiasKind { UniformIdentical, LinearRecency, RandomDirichlet };

BiasKind parse_bias_kind(const std::string& name);
std::string bias_kind_name(BiasKind k);

struct BiasProfile {
    BiasKind kind = BiasKind::UniformIdentical;
    double strength = 0.0;
};

/**
 * Weight convention for position k under exponent beta. The derivation weights
 * positions by k^beta while the sampling step uses (k-1)^beta; both are
 * exposed and must be chosen explicitly.
 */
enum class WeightConvention { Theorem, Sampling };

WeightConvention parse_convention(const std::string& name);

/**
 * uniform-identical: all n+1 rows uniform. linear-recency with strength s:
 * p_k = (1-c_k)·base + c_k·q with c_k = s(n+1-k)/n, base(i) ∝ i+1 and q uniform
 * over the low-mass half of the items, so delta decreases strictly in k.
 * random-dirichlet: independent Dirichlet rows (concentration = strength,
 * 0 treated as 1).
 */
PositionModel make_position_model(std::uint32_t n, std::uint32_t item_count,
                                  const BiasProfile& profile, Rng& rng);

/**
 * m i.i.d. users: positions 1..n fill the training sequence, position n+1
 * draws both the validation and the test target. Vocabulary covers the whole
 * universe (items "i0".."i{N-1}" by index).
 */
SplitCorpus sample_population(const PositionModel& model, std::uint32_t m, Rng& rng);

/** Normalized position weights ω_k over k = 2..n for the given beta. */
std::vector<double> position_weights(const ExtExponent& beta, std::uint32_t n,
                                     WeightConvention convention);

/** Expected training-target distribution Σ_k ω_k · p_k (dense over the universe). */
std::vector<double> expected_train_target_dist(const ExtExponent& beta, const PositionModel& model,
                                               WeightConvention convention);

/**
 * Empirical weighted target histogram of one sampled population: each user
 * contributes ω_k at its realized position-k item, divided by m.
 */
std::vector<double> empirical_target_dist(const PositionModel& model, const SplitCorpus& population,
                                          const ExtExponent& beta, WeightConvention convention);

struct TvTrial {
    double tv_empirical = 0.0;
    double tv_expected = 0.0;
};

struct TvSummary {
    std::vector<TvTrial> trials;
    double mean_empirical = 0.0;
    double std_empirical = 0.0;
    double tv_expected = 0.0;  // identical across trials (bias term)
};

/**
 * trials independent populations of m users each; per trial the TV between the
 * empirical weighted target histogram and p_{n+1}, plus the exact bias-only TV.
 */
TvSummary tv_experiment(const ExtExponent& beta, const PositionModel& model, std::uint32_t m,
                        std::uint32_t trials, std::uint64_t seed, WeightConvention convention);

}  // namespace genpas
