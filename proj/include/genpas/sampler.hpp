#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "genpas/corpus.hpp"
#include "genpas/histogram.hpp"
#include "genpas/prob.hpp"

namespace genpas {

/**
 * One (input subsequence, target item) training sample. The tuple
 * (user_index, k, j) identifies it uniquely: the input is the user's items at
 * 1-based positions j..k-1 and the target is the item at position k.
 */
struct TrainingPair {
    std::uint32_t user_index = 0;
    std::uint32_t k = 0;  // target position, 2 <= k <= |s|
    std::uint32_t j = 0;  // input start, 1 <= j <= k-1
    std::vector<ItemId> input;
    ItemId target = 0;
    double weight = 1.0;
};

enum class Strategy { LT, MT, SW };

Strategy parse_strategy(const std::string& name);
std::string strategy_name(Strategy s);

/** The (alpha, beta, gamma) triple equivalent to a classical strategy. */
AugConfig recast_config(Strategy s);

/**
 * User step: p(u) ∝ (|s_u|-1)^alpha over users with at least 2 items; shorter
 * users never appear (weight 0). alpha=+inf is uniform over maximal-length
 * users, alpha=-inf uniform over minimal eligible length.
 */
ProbVector user_weights(const std::vector<UserSequence>& seqs, const ExtExponent& alpha);

/** Target-position step: p(k) ∝ (k-1)^beta over k in {2..seq_len}. */
ProbVector target_weights(std::uint32_t seq_len, const ExtExponent& beta);

/** Input-start step: p(j) ∝ j^gamma over j in {1..k-1}. */
ProbVector input_weights(std::uint32_t k, const ExtExponent& gamma);

/**
 * Joint probability of the tuple (u, k, j): product of the three steps.
 * Length-1 users are legal inputs and return 0 for any (k, j); for eligible
 * users, k or j outside their valid ranges is an error.
 */
double joint_probability(const AugConfig& config, const std::vector<UserSequence>& seqs,
                         std::uint32_t u, std::uint32_t k, std::uint32_t j);

/** Draws u, then k, then j by inverse CDF; weight 1. */
TrainingPair sample_pair(const AugConfig& config, const std::vector<UserSequence>& seqs, Rng& rng);

/** Volume convention: sum of (|s_u|-1), the in-sequence target count. */
std::uint64_t default_epoch_size(const std::vector<UserSequence>& seqs);

/** count independent draws in draw order; deterministic given the rng seed. */
std::vector<TrainingPair> sample_epoch(const AugConfig& config,
                                       const std::vector<UserSequence>& seqs,
                                       std::uint64_t count, Rng& rng);

/**
 * Exhaustive pair list for a classical strategy, ordered by (user, k, j)
 * ascending, each pair weighted 1/list size.
 */
std::vector<TrainingPair> enumerate_strategy(const std::vector<UserSequence>& seqs, Strategy s);

/**
 * Marginal target distribution p(y) = Σ_u p_alpha(u) Σ_k p_beta(k|u)·1[s_u[k]=y].
 * Independent of gamma by construction.
 */
TargetHistogram exact_target_distribution(const AugConfig& config,
                                          const std::vector<UserSequence>& seqs);

}  // namespace genpas
