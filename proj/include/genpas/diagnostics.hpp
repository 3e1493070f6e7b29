#pragma once

#include <cstdint>
#include <map>
#include <vector>

#include "genpas/histogram.hpp"
#include "genpas/sampler.hpp"

namespace genpas {

/** One distinct training input with its within-target normalized weight. */
struct WeightedInput {
    std::vector<ItemId> items;
    double weight = 0.0;
};

/**
 * Training set as the diagnostics see it: the raw weighted pair list plus a
 * per-target view where identical inputs are merged and weights normalized to
 * sum 1 within each target (the uniform case realizes 1/|C_y| averaging).
 */
struct TrainRepresentation {
    std::vector<TrainingPair> pairs;  // source order preserved
    std::map<ItemId, std::vector<WeightedInput>> by_target;

    std::size_t distinct_targets() const { return by_target.size(); }
};

/** Sampling budgets; all draws are taken from the caller-provided rng. */
struct DiagBudgets {
    std::uint32_t eval_pairs = 500;      // eval pairs scored per metric
    std::uint32_t negatives = 100;       // negative targets per eval pair
    std::uint64_t rep_samples = 0;       // Monte-Carlo pair count; 0 = MT pair count
};

struct DiagReport {
    AugConfig config;
    double kl = 0.0;
    double alignment = 0.0;
    double discrimination = 0.0;
    double ad_ratio = 0.0;
    double coverage = 0.0;  // fraction of scored eval pairs with a known target
    std::uint64_t seed = 0;
    DiagBudgets budgets;
    double epsilon = 0.0;
};

/** Merges identical (input, target) pairs and normalizes weights per target. */
TrainRepresentation build_train_representation(const std::vector<TrainingPair>& pairs);

/**
 * KL(p || q) over an item universe of the given size, with additive smoothing
 * of q: q'(y) = (q(y)+eps)/(1+eps*universe). eps=0 demands q > 0 wherever
 * p > 0 (otherwise the divergence is infinite and an error is raised).
 */
double kl_divergence(const TargetHistogram& p, const TargetHistogram& q, double epsilon,
                     std::uint64_t universe_size);

/**
 * Mean over up to budget seeded-uniformly chosen eval pairs of the weighted
 * similarity to the training inputs sharing the pair's target. Pairs whose
 * target has no training inputs are skipped; the covered fraction is returned
 * alongside. Throws when nothing is covered.
 */
std::pair<double, double> alignment(const TrainRepresentation& rep,
                                    const std::vector<TrainingPair>& eval_pairs,
                                    std::uint32_t budget, Rng& rng);

/**
 * Mean weighted similarity to training inputs of sampled targets different
 * from the eval pair's own. Requires at least 2 distinct training targets.
 */
double discrimination(const TrainRepresentation& rep, const std::vector<TrainingPair>& eval_pairs,
                      std::uint32_t neg_targets_per_eval, std::uint32_t budget, Rng& rng);

/**
 * Fraction of eval pairs whose nearest training input's target (smallest
 * normalized edit distance; ties to the earliest pair, then smaller target)
 * appears in the pair's top-K prediction list. predictions[i] belongs to
 * eval_pairs[i] and must hold at least K items.
 */
double nn_recall_at_k(const std::vector<std::vector<ItemId>>& predictions,
                      const TrainRepresentation& rep, const std::vector<TrainingPair>& eval_pairs,
                      std::uint32_t K);

enum class EvalStage { Val, Test };

EvalStage parse_stage(const std::string& name);

/** Eval pairs at a stage: full train prefix -> val target, or prefix+val -> test. */
std::vector<TrainingPair> stage_eval_pairs(const SplitCorpus& split, EvalStage stage);

/** Empirical histogram of the stage's target column. */
TargetHistogram stage_target_histogram(const SplitCorpus& split, EvalStage stage);

/**
 * Full diagnostic record for one configuration: KL of the exact training-target
 * distribution against the stage's target histogram, plus alignment and
 * discrimination of a Monte-Carlo sampled representation.
 */
DiagReport diagnostics_report(const AugConfig& config, const SplitCorpus& split,
                              const DiagBudgets& budgets, double epsilon, std::uint64_t seed,
                              EvalStage stage = EvalStage::Val);

}  // namespace genpas
