#pragma once

#include <cstdint>
#include <map>
#include <string>
#include <vector>

#include "genpas/diagnostics.hpp"

namespace genpas {

enum class ModelKind { Popularity, Markov1, Knn };

ModelKind parse_model_kind(const std::string& name);
std::string model_kind_name(ModelKind k);

/**
 * Closed-form next-item recommenders: global popularity, first-order item
 * transitions with popularity backoff, and a nearest-neighbor scorer over the
 * training representation.
 */
struct ReferenceModel {
    ModelKind kind = ModelKind::Popularity;
    TargetHistogram popularity;                 // kept for every kind (backoff, grouping)
    std::map<ItemId, TargetHistogram> rows;     // markov1: last input item -> targets
    TrainRepresentation rep;                    // knn
    std::uint32_t neighbor_count = 10;
};

struct EvalResult {
    std::map<std::uint32_t, std::pair<double, double>> metrics;  // K -> (ndcg, recall)
    std::uint64_t n_eval = 0;
};

ReferenceModel train_reference_model(ModelKind kind, const std::vector<TrainingPair>& pairs,
                                     std::uint32_t neighbor_count = 10);

/** Ranked predictions, at most K items (fewer when the candidate pool is small). */
std::vector<ItemId> predict_top_k(const ReferenceModel& model, const std::vector<ItemId>& x,
                                  std::uint32_t K);

/** Model scores for an explicit candidate list (used by sampled-negative ranking). */
std::vector<double> score_items(const ReferenceModel& model, const std::vector<ItemId>& x,
                                const std::vector<ItemId>& candidates);

/** Single-relevant-item metrics: recall@K is a hit flag, ndcg@K = 1/log2(rank+1). */
std::map<std::uint32_t, std::pair<double, double>> ndcg_recall(const std::vector<ItemId>& predictions,
                                                               ItemId truth,
                                                               const std::vector<std::uint32_t>& Ks);

/**
 * Leave-one-out evaluation. Queries are the training prefix (val stage) or the
 * prefix plus validation item (test stage). negative_sample_count 0 ranks
 * against the full universe; otherwise the truth is ranked among that many
 * seeded distinct negatives.
 */
EvalResult evaluate(const ReferenceModel& model, const SplitCorpus& split, EvalStage stage,
                    const std::vector<std::uint32_t>& Ks, std::uint32_t negative_sample_count,
                    std::uint64_t seed);

struct GroupedEvalResult {
    EvalResult overall;
    std::vector<EvalResult> groups;  // least popular first
};

/**
 * evaluate() plus per-group metrics, items cut into group_count equal-sized
 * popularity groups by training-target frequency (ties by item index).
 */
GroupedEvalResult evaluate_grouped(const ReferenceModel& model, const SplitCorpus& split,
                                   EvalStage stage, const std::vector<std::uint32_t>& Ks,
                                   std::uint32_t negative_sample_count, std::uint64_t seed,
                                   std::uint32_t group_count);

}  // namespace genpas
