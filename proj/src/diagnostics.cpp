#include "genpas/diagnostics.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <unordered_map>

#include "genpas/editdist.hpp"

namespace genpas {

namespace {

/** Seeded choice of `budget` indices out of n, returned in ascending order. */
std::vector<std::uint32_t> pick_indices(std::size_t n, std::uint32_t budget, Rng& rng) {
    std::vector<std::uint32_t> idx(n);
    for (std::size_t i = 0; i < n; ++i) idx[i] = static_cast<std::uint32_t>(i);
    if (budget >= n) return idx;
    for (std::uint32_t i = 0; i < budget; ++i) {
        const auto j = i + static_cast<std::size_t>(rng.below(n - i));
        std::swap(idx[i], idx[j]);
    }
    idx.resize(budget);
    std::sort(idx.begin(), idx.end());  // fixed-order reduction downstream
    return idx;
}

double weighted_similarity(const std::vector<WeightedInput>& inputs,
                           const std::vector<ItemId>& query) {
    double acc = 0.0;
    for (const auto& wi : inputs) acc += wi.weight * similarity(wi.items, query);
    return acc;
}

}  // namespace

TrainRepresentation build_train_representation(const std::vector<TrainingPair>& pairs) {
    if (pairs.empty()) throw Error("build_train_representation: empty pair source");
    TrainRepresentation rep;
    rep.pairs = pairs;
    // Merge identical inputs per target before normalizing, so duplicated
    // sources renormalize to the same representation.
    std::map<ItemId, std::unordered_map<std::string, std::size_t>> seen;  // input bytes -> slot
    for (const auto& p : pairs) {
        auto& slots = rep.by_target[p.target];
        auto& lookup = seen[p.target];
        std::string key(reinterpret_cast<const char*>(p.input.data()),
                        p.input.size() * sizeof(ItemId));
        auto [it, inserted] = lookup.emplace(std::move(key), slots.size());
        if (inserted)
            slots.push_back(WeightedInput{p.input, p.weight});
        else
            slots[it->second].weight += p.weight;
    }
    for (auto& [target, inputs] : rep.by_target) {
        double total = 0.0;
        for (const auto& wi : inputs) total += wi.weight;
        if (!(total > 0.0)) throw Error("build_train_representation: zero weight for a target");
        for (auto& wi : inputs) wi.weight /= total;
    }
    return rep;
}

double kl_divergence(const TargetHistogram& p, const TargetHistogram& q, double epsilon,
                     std::uint64_t universe_size) {
    if (epsilon < 0.0) throw Error("kl_divergence: epsilon must be non-negative");
    const double denom = 1.0 + epsilon * static_cast<double>(universe_size);
    double sum = 0.0;
    for (const auto& [item, pv] : p.probs) {
        const double qv = (q.prob(item) + epsilon) / denom;
        if (!(qv > 0.0))
            throw Error("infinite divergence: target has probability 0 under q and epsilon is 0");
        sum += pv * std::log(pv / qv);
    }
    if (sum < 0.0 && sum > -1e-9) sum = 0.0;  // rounding guard; KL is non-negative
    return sum;
}

std::pair<double, double> alignment(const TrainRepresentation& rep,
                                    const std::vector<TrainingPair>& eval_pairs,
                                    std::uint32_t budget, Rng& rng) {
    if (budget < 1) throw Error("alignment: budget must be at least 1");
    if (eval_pairs.empty()) throw Error("alignment: no eval pairs");
    const auto idx = pick_indices(eval_pairs.size(), budget, rng);
    double acc = 0.0;
    std::size_t covered = 0;
    for (std::uint32_t i : idx) {
        const auto& ev = eval_pairs[i];
        auto it = rep.by_target.find(ev.target);
        if (it == rep.by_target.end()) continue;  // unseen target: skipped, counted below
        acc += weighted_similarity(it->second, ev.input);
        ++covered;
    }
    if (covered == 0) throw Error("no overlapping targets between training and eval pairs");
    return {acc / static_cast<double>(covered),
            static_cast<double>(covered) / static_cast<double>(idx.size())};
}

double discrimination(const TrainRepresentation& rep, const std::vector<TrainingPair>& eval_pairs,
                      std::uint32_t neg_targets_per_eval, std::uint32_t budget, Rng& rng) {
    if (rep.distinct_targets() < 2)
        throw Error("discrimination: at least 2 distinct training targets required");
    if (neg_targets_per_eval < 1) throw Error("discrimination: negative budget must be at least 1");
    if (eval_pairs.empty()) throw Error("discrimination: no eval pairs");
    std::vector<ItemId> targets;
    targets.reserve(rep.by_target.size());
    for (const auto& [t, inputs] : rep.by_target) targets.push_back(t);

    const auto idx = pick_indices(eval_pairs.size(), budget, rng);
    double acc = 0.0;
    for (std::uint32_t i : idx) {
        const auto& ev = eval_pairs[i];
        std::vector<ItemId> negs;
        negs.reserve(targets.size());
        for (ItemId t : targets)
            if (t != ev.target) negs.push_back(t);
        if (negs.size() > neg_targets_per_eval) {
            for (std::uint32_t a = 0; a < neg_targets_per_eval; ++a) {
                const auto b = a + static_cast<std::size_t>(rng.below(negs.size() - a));
                std::swap(negs[a], negs[b]);
            }
            negs.resize(neg_targets_per_eval);
            std::sort(negs.begin(), negs.end());
        }
        double per_pair = 0.0;
        for (ItemId t : negs) per_pair += weighted_similarity(rep.by_target.at(t), ev.input);
        acc += per_pair / static_cast<double>(negs.size());
    }
    return acc / static_cast<double>(idx.size());
}

double nn_recall_at_k(const std::vector<std::vector<ItemId>>& predictions,
                      const TrainRepresentation& rep, const std::vector<TrainingPair>& eval_pairs,
                      std::uint32_t K) {
    if (K < 1) throw Error("nn_recall_at_k: K must be at least 1");
    if (predictions.size() != eval_pairs.size())
        throw Error("nn_recall_at_k: missing prediction (one list per eval pair required)");
    if (rep.pairs.empty()) throw Error("nn_recall_at_k: empty representation");
    std::size_t hits = 0;
    for (std::size_t i = 0; i < eval_pairs.size(); ++i) {
        if (predictions[i].size() < K) throw Error("nn_recall_at_k: missing prediction entries");
        double best = std::numeric_limits<double>::infinity();
        ItemId best_target = 0;
        for (const auto& p : rep.pairs) {
            const double d = 1.0 - similarity(p.input, eval_pairs[i].input);
            if (d < best) {  // ties keep the earliest pair in source order
                best = d;
                best_target = p.target;
            }
        }
        const auto* top = predictions[i].data();
        for (std::uint32_t r = 0; r < K; ++r)
            if (top[r] == best_target) {
                ++hits;
                break;
            }
    }
    return static_cast<double>(hits) / static_cast<double>(eval_pairs.size());
}

EvalStage parse_stage(const std::string& name) {
    if (name == "val") return EvalStage::Val;
    if (name == "test") return EvalStage::Test;
    throw UsageError("unknown stage '" + name + "' (expected val or test)");
}

std::vector<TrainingPair> stage_eval_pairs(const SplitCorpus& split, EvalStage stage) {
    std::vector<TrainingPair> out;
    out.reserve(split.n_users());
    for (std::size_t u = 0; u < split.n_users(); ++u) {
        TrainingPair p;
        p.user_index = static_cast<std::uint32_t>(u);
        p.j = 1;
        p.input = split.train[u].items;
        if (stage == EvalStage::Val) {
            p.target = split.val_target[u];
        } else {
            p.input.push_back(split.val_target[u]);
            p.target = split.test_target[u];
        }
        p.k = static_cast<std::uint32_t>(p.input.size()) + 1;
        p.weight = 1.0;
        out.push_back(std::move(p));
    }
    return out;
}

TargetHistogram stage_target_histogram(const SplitCorpus& split, EvalStage stage) {
    const auto& col = stage == EvalStage::Val ? split.val_target : split.test_target;
    std::map<ItemId, double> counts;
    for (ItemId t : col) counts[t] += 1.0;
    return TargetHistogram::from_weights(counts);
}

DiagReport diagnostics_report(const AugConfig& config, const SplitCorpus& split,
                              const DiagBudgets& budgets, double epsilon, std::uint64_t seed,
                              EvalStage stage) {
    DiagReport report;
    report.config = config;
    report.seed = seed;
    report.budgets = budgets;
    report.epsilon = epsilon;

    const TargetHistogram p_train = exact_target_distribution(config, split.train);
    const TargetHistogram q = stage_target_histogram(split, stage);
    report.kl = kl_divergence(p_train, q, epsilon, split.vocabulary.size());

    std::uint64_t n_rep = budgets.rep_samples;
    if (n_rep == 0) n_rep = default_epoch_size(split.train);
    Rng rep_rng(derive_seed(seed, 1));
    const auto sampled = sample_epoch(config, split.train, n_rep, rep_rng);
    const TrainRepresentation rep = build_train_representation(sampled);

    const auto eval_pairs = stage_eval_pairs(split, stage);
    Rng align_rng(derive_seed(seed, 2));
    const auto [a, coverage] = alignment(rep, eval_pairs, budgets.eval_pairs, align_rng);
    report.alignment = a;
    report.coverage = coverage;
    Rng disc_rng(derive_seed(seed, 3));
    report.discrimination =
        discrimination(rep, eval_pairs, budgets.negatives, budgets.eval_pairs, disc_rng);
    report.ad_ratio = report.discrimination > 0.0
                          ? report.alignment / report.discrimination
                          : std::numeric_limits<double>::quiet_NaN();
    return report;
}

}  // namespace genpas
