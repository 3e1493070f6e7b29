#include "genpas/evaluator.hpp"

#include <algorithm>
#include <cmath>
#include <unordered_set>

#include "genpas/editdist.hpp"
#include "genpas/parallel.hpp"

namespace genpas {

namespace {

/** Flattened knn neighbor pool in canonical (target, insertion) order. */
struct NeighborPool {
    std::vector<const WeightedInput*> inputs;
    std::vector<ItemId> targets;
};

NeighborPool flatten(const TrainRepresentation& rep) {
    NeighborPool pool;
    for (const auto& [target, inputs] : rep.by_target)
        for (const auto& wi : inputs) {
            pool.inputs.push_back(&wi);
            pool.targets.push_back(target);
        }
    return pool;
}

/** Target scores from the neighbor_count most similar pool entries. */
std::map<ItemId, double> knn_scores(const ReferenceModel& model, const NeighborPool& pool,
                                    const std::vector<ItemId>& x) {
    std::vector<std::pair<double, std::size_t>> sims;  // (similarity, pool index)
    sims.reserve(pool.inputs.size());
    for (std::size_t i = 0; i < pool.inputs.size(); ++i)
        sims.emplace_back(similarity(pool.inputs[i]->items, x), i);
    const std::size_t keep = std::min<std::size_t>(model.neighbor_count, sims.size());
    std::partial_sort(sims.begin(), sims.begin() + keep, sims.end(),
                      [](const auto& a, const auto& b) {
                          if (a.first != b.first) return a.first > b.first;
                          return a.second < b.second;  // canonical pool order breaks ties
                      });
    std::map<ItemId, double> scores;
    for (std::size_t i = 0; i < keep; ++i) {
        const std::size_t p = sims[i].second;
        scores[pool.targets[p]] += sims[i].first * pool.inputs[p]->weight;
    }
    return scores;
}

std::vector<ItemId> top_k_from_hist(const TargetHistogram& hist, std::uint32_t K) {
    std::vector<std::pair<ItemId, double>> entries = hist.probs;
    std::sort(entries.begin(), entries.end(), [](const auto& a, const auto& b) {
        if (a.second != b.second) return a.second > b.second;
        return a.first < b.first;
    });
    std::vector<ItemId> out;
    out.reserve(std::min<std::size_t>(K, entries.size()));
    for (const auto& [item, p] : entries) {
        if (out.size() == K) break;
        out.push_back(item);
    }
    return out;
}

const TargetHistogram* markov_row(const ReferenceModel& model, const std::vector<ItemId>& x) {
    auto it = model.rows.find(x.back());
    return it == model.rows.end() ? nullptr : &it->second;
}

}  // namespace

ModelKind parse_model_kind(const std::string& name) {
    if (name == "popularity") return ModelKind::Popularity;
    if (name == "markov1") return ModelKind::Markov1;
    if (name == "knn") return ModelKind::Knn;
    throw UsageError("unknown model '" + name + "' (expected popularity, markov1 or knn)");
}

std::string model_kind_name(ModelKind k) {
    switch (k) {
        case ModelKind::Popularity: return "popularity";
        case ModelKind::Markov1: return "markov1";
        default: return "knn";
    }
}

ReferenceModel train_reference_model(ModelKind kind, const std::vector<TrainingPair>& pairs,
                                     std::uint32_t neighbor_count) {
    if (pairs.empty()) throw Error("train_reference_model: empty pair set");
    if (neighbor_count < 1) throw Error("train_reference_model: neighbor_count must be positive");
    ReferenceModel model;
    model.kind = kind;
    model.neighbor_count = neighbor_count;
    std::map<ItemId, double> pop;
    for (const auto& p : pairs) pop[p.target] += p.weight;
    model.popularity = TargetHistogram::from_weights(pop);
    if (kind == ModelKind::Markov1) {
        std::map<ItemId, std::map<ItemId, double>> rows;
        for (const auto& p : pairs) rows[p.input.back()][p.target] += p.weight;
        for (const auto& [last, weights] : rows)
            model.rows.emplace(last, TargetHistogram::from_weights(weights));
    } else if (kind == ModelKind::Knn) {
        model.rep = build_train_representation(pairs);
    }
    return model;
}

std::vector<ItemId> predict_top_k(const ReferenceModel& model, const std::vector<ItemId>& x,
                                  std::uint32_t K) {
    if (K < 1) throw Error("predict_top_k: K must be at least 1");
    if (x.empty()) throw Error("predict_top_k: query must be nonempty");
    switch (model.kind) {
        case ModelKind::Popularity:
            return top_k_from_hist(model.popularity, K);
        case ModelKind::Markov1: {
            const TargetHistogram* row = markov_row(model, x);
            return top_k_from_hist(row ? *row : model.popularity, K);
        }
        default: {
            const NeighborPool pool = flatten(model.rep);
            const auto scores = knn_scores(model, pool, x);
            std::vector<std::pair<ItemId, double>> entries(scores.begin(), scores.end());
            std::sort(entries.begin(), entries.end(), [](const auto& a, const auto& b) {
                if (a.second != b.second) return a.second > b.second;
                return a.first < b.first;
            });
            std::vector<ItemId> out;
            for (const auto& [item, s] : entries) {
                if (out.size() == K) break;
                out.push_back(item);
            }
            return out;
        }
    }
}

std::vector<double> score_items(const ReferenceModel& model, const std::vector<ItemId>& x,
                                const std::vector<ItemId>& candidates) {
    if (x.empty()) throw Error("score_items: query must be nonempty");
    std::vector<double> out(candidates.size(), 0.0);
    switch (model.kind) {
        case ModelKind::Popularity: {
            for (std::size_t i = 0; i < candidates.size(); ++i)
                out[i] = model.popularity.prob(candidates[i]);
            break;
        }
        case ModelKind::Markov1: {
            const TargetHistogram* row = markov_row(model, x);
            const TargetHistogram& hist = row ? *row : model.popularity;
            for (std::size_t i = 0; i < candidates.size(); ++i) out[i] = hist.prob(candidates[i]);
            break;
        }
        default: {
            const NeighborPool pool = flatten(model.rep);
            const auto scores = knn_scores(model, pool, x);
            for (std::size_t i = 0; i < candidates.size(); ++i) {
                auto it = scores.find(candidates[i]);
                out[i] = it == scores.end() ? 0.0 : it->second;
            }
            break;
        }
    }
    return out;
}

std::map<std::uint32_t, std::pair<double, double>> ndcg_recall(const std::vector<ItemId>& predictions,
                                                               ItemId truth,
                                                               const std::vector<std::uint32_t>& Ks) {
    std::size_t rank = 0;  // 0 = absent
    for (std::size_t i = 0; i < predictions.size(); ++i)
        if (predictions[i] == truth) {
            rank = i + 1;
            break;
        }
    std::map<std::uint32_t, std::pair<double, double>> out;
    for (std::uint32_t K : Ks) {
        if (rank >= 1 && rank <= K)
            out[K] = {1.0 / std::log2(static_cast<double>(rank) + 1.0), 1.0};
        else
            out[K] = {0.0, 0.0};
    }
    return out;
}

namespace {

/** Per-user metric row; queries and ranking per the configured protocol. */
std::map<std::uint32_t, std::pair<double, double>> eval_one_user(
    const ReferenceModel& model, const SplitCorpus& split, EvalStage stage,
    const std::vector<std::uint32_t>& Ks, std::uint32_t neg_count, std::uint64_t seed,
    std::size_t u) {
    std::vector<ItemId> query = split.train[u].items;
    ItemId truth;
    if (stage == EvalStage::Val) {
        truth = split.val_target[u];
    } else {
        query.push_back(split.val_target[u]);
        truth = split.test_target[u];
    }
    if (neg_count == 0) {
        const std::uint32_t max_k = *std::max_element(Ks.begin(), Ks.end());
        return ndcg_recall(predict_top_k(model, query, max_k), truth, Ks);
    }
    // Sampled-negatives protocol: rank the truth among seeded distinct negatives.
    const auto universe = static_cast<ItemId>(split.vocabulary.size());
    if (universe < 2) throw Error("evaluate: sampled negatives need at least 2 items");
    Rng rng(derive_seed(seed, 0x5eed0000ull + u));
    const std::uint32_t want = std::min<std::uint32_t>(neg_count, universe - 1);
    std::unordered_set<ItemId> chosen;
    std::vector<ItemId> candidates{truth};
    candidates.reserve(want + 1);
    while (chosen.size() < want) {
        const auto item = static_cast<ItemId>(rng.below(universe));
        if (item == truth || !chosen.insert(item).second) continue;
        candidates.push_back(item);
    }
    const auto scores = score_items(model, query, candidates);
    const double truth_score = scores[0];
    std::size_t rank = 1;
    for (std::size_t i = 1; i < candidates.size(); ++i)
        if (scores[i] > truth_score || (scores[i] == truth_score && candidates[i] < truth)) ++rank;
    std::map<std::uint32_t, std::pair<double, double>> out;
    for (std::uint32_t K : Ks) {
        if (rank <= K)
            out[K] = {1.0 / std::log2(static_cast<double>(rank) + 1.0), 1.0};
        else
            out[K] = {0.0, 0.0};
    }
    return out;
}

}  // namespace

EvalResult evaluate(const ReferenceModel& model, const SplitCorpus& split, EvalStage stage,
                    const std::vector<std::uint32_t>& Ks, std::uint32_t negative_sample_count,
                    std::uint64_t seed) {
    if (Ks.empty()) throw Error("evaluate: at least one K required");
    const std::size_t m = split.n_users();
    std::vector<std::map<std::uint32_t, std::pair<double, double>>> rows(m);
    parallel_for(m, [&](std::size_t u) {
        rows[u] = eval_one_user(model, split, stage, Ks, negative_sample_count, seed, u);
    });
    EvalResult result;
    result.n_eval = m;
    for (std::uint32_t K : Ks) result.metrics[K] = {0.0, 0.0};
    for (const auto& row : rows)  // index order: bit-stable across thread counts
        for (const auto& [K, v] : row) {
            result.metrics[K].first += v.first;
            result.metrics[K].second += v.second;
        }
    for (auto& [K, v] : result.metrics) {
        v.first /= static_cast<double>(m);
        v.second /= static_cast<double>(m);
    }
    return result;
}

GroupedEvalResult evaluate_grouped(const ReferenceModel& model, const SplitCorpus& split,
                                   EvalStage stage, const std::vector<std::uint32_t>& Ks,
                                   std::uint32_t negative_sample_count, std::uint64_t seed,
                                   std::uint32_t group_count) {
    if (group_count < 1) throw Error("evaluate_grouped: group_count must be positive");
    if (group_count > split.vocabulary.size())
        throw Error("evaluate_grouped: more groups than items");
    const std::size_t m = split.n_users();
    std::vector<std::map<std::uint32_t, std::pair<double, double>>> rows(m);
    parallel_for(m, [&](std::size_t u) {
        rows[u] = eval_one_user(model, split, stage, Ks, negative_sample_count, seed, u);
    });

    // Items ranked by training-target popularity ascending, ties by index.
    const std::size_t n_items = split.vocabulary.size();
    std::vector<std::pair<double, ItemId>> ranked(n_items);
    for (std::size_t i = 0; i < n_items; ++i)
        ranked[i] = {model.popularity.prob(static_cast<ItemId>(i)), static_cast<ItemId>(i)};
    std::sort(ranked.begin(), ranked.end(), [](const auto& a, const auto& b) {
        if (a.first != b.first) return a.first < b.first;
        return a.second < b.second;
    });
    // Equal-sized groups; the first (least popular) groups absorb the remainder.
    std::vector<std::uint32_t> group_of(n_items, 0);
    const std::size_t base = n_items / group_count, extra = n_items % group_count;
    std::size_t pos = 0;
    for (std::uint32_t g = 0; g < group_count; ++g) {
        const std::size_t size = base + (g < extra ? 1 : 0);
        for (std::size_t i = 0; i < size; ++i) group_of[ranked[pos++].second] = g;
    }

    GroupedEvalResult out;
    out.overall.n_eval = m;
    out.groups.assign(group_count, EvalResult{});
    for (std::uint32_t K : Ks) {
        out.overall.metrics[K] = {0.0, 0.0};
        for (auto& g : out.groups) g.metrics[K] = {0.0, 0.0};
    }
    for (std::size_t u = 0; u < m; ++u) {
        const ItemId truth = stage == EvalStage::Val ? split.val_target[u] : split.test_target[u];
        EvalResult& g = out.groups[group_of[truth]];
        ++g.n_eval;
        for (const auto& [K, v] : rows[u]) {
            out.overall.metrics[K].first += v.first;
            out.overall.metrics[K].second += v.second;
            g.metrics[K].first += v.first;
            g.metrics[K].second += v.second;
        }
    }
    for (auto& [K, v] : out.overall.metrics) {
        v.first /= static_cast<double>(m);
        v.second /= static_cast<double>(m);
    }
    for (auto& g : out.groups)
        if (g.n_eval > 0)
            for (auto& [K, v] : g.metrics) {
                v.first /= static_cast<double>(g.n_eval);
                v.second /= static_cast<double>(g.n_eval);
            }
    return out;
}

}  // namespace genpas
