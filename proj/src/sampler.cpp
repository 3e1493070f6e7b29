#include "genpas/sampler.hpp"

#include <map>

namespace genpas {

namespace {

/** Bases (u, |s_u|-1) for eligible users; empty when none are eligible. */
std::vector<std::pair<std::uint32_t, double>> eligible_bases(const std::vector<UserSequence>& seqs) {
    std::vector<std::pair<std::uint32_t, double>> bases;
    bases.reserve(seqs.size());
    for (std::uint32_t u = 0; u < seqs.size(); ++u)
        if (seqs[u].items.size() >= 2)
            bases.emplace_back(u, static_cast<double>(seqs[u].items.size() - 1));
    return bases;
}

TrainingPair make_pair(const UserSequence& seq, std::uint32_t k, std::uint32_t j, double weight) {
    TrainingPair p;
    p.user_index = seq.user_index;
    p.k = k;
    p.j = j;
    p.input.assign(seq.items.begin() + (j - 1), seq.items.begin() + (k - 1));
    p.target = seq.items[k - 1];
    p.weight = weight;
    return p;
}

}  // namespace

Strategy parse_strategy(const std::string& name) {
    if (name == "LT" || name == "lt") return Strategy::LT;
    if (name == "MT" || name == "mt") return Strategy::MT;
    if (name == "SW" || name == "sw") return Strategy::SW;
    throw UsageError("unknown strategy '" + name + "' (expected LT, MT or SW)");
}

std::string strategy_name(Strategy s) {
    switch (s) {
        case Strategy::LT: return "LT";
        case Strategy::MT: return "MT";
        default: return "SW";
    }
}

AugConfig recast_config(Strategy s) {
    switch (s) {
        case Strategy::LT:
            return AugConfig{ExtExponent::finite(0), ExtExponent::pos_inf(), ExtExponent::neg_inf()};
        case Strategy::MT:
            return AugConfig{ExtExponent::finite(1), ExtExponent::finite(0), ExtExponent::neg_inf()};
        default:
            return AugConfig{ExtExponent::finite(2), ExtExponent::finite(1), ExtExponent::finite(0)};
    }
}

ProbVector user_weights(const std::vector<UserSequence>& seqs, const ExtExponent& alpha) {
    auto bases = eligible_bases(seqs);
    if (bases.empty()) throw Error("no eligible user (every sequence has fewer than 2 items)");
    return power_weights(bases, alpha);
}

ProbVector target_weights(std::uint32_t seq_len, const ExtExponent& beta) {
    if (seq_len < 2) throw Error("target_weights: sequence length must be at least 2");
    std::vector<std::pair<std::uint32_t, double>> bases;
    bases.reserve(seq_len - 1);
    for (std::uint32_t k = 2; k <= seq_len; ++k)
        bases.emplace_back(k, static_cast<double>(k - 1));
    return power_weights(bases, beta);
}

ProbVector input_weights(std::uint32_t k, const ExtExponent& gamma) {
    if (k < 2) throw Error("input_weights: k must be at least 2");
    std::vector<std::pair<std::uint32_t, double>> bases;
    bases.reserve(k - 1);
    for (std::uint32_t j = 1; j <= k - 1; ++j)
        bases.emplace_back(j, static_cast<double>(j));
    return power_weights(bases, gamma);
}

double joint_probability(const AugConfig& config, const std::vector<UserSequence>& seqs,
                         std::uint32_t u, std::uint32_t k, std::uint32_t j) {
    if (u >= seqs.size()) throw Error("joint_probability: user index out of range");
    const auto len = static_cast<std::uint32_t>(seqs[u].items.size());
    if (len < 2) return 0.0;  // ineligible user: never sampled, whatever (k, j)
    if (k < 2 || k > len) throw Error("joint_probability: k out of range");
    if (j < 1 || j > k - 1) throw Error("joint_probability: j out of range");
    const double pu = user_weights(seqs, config.alpha).prob(u);
    if (pu == 0.0) return 0.0;
    const double pk = target_weights(len, config.beta).prob(k);
    if (pk == 0.0) return 0.0;
    const double pj = input_weights(k, config.gamma).prob(j);
    return pu * pk * pj;
}

TrainingPair sample_pair(const AugConfig& config, const std::vector<UserSequence>& seqs, Rng& rng) {
    const ProbVector users = user_weights(seqs, config.alpha);
    const std::uint32_t u = users.sample(rng);
    const auto len = static_cast<std::uint32_t>(seqs[u].items.size());
    const std::uint32_t k = target_weights(len, config.beta).sample(rng);
    const std::uint32_t j = input_weights(k, config.gamma).sample(rng);
    return make_pair(seqs[u], k, j, 1.0);
}

std::uint64_t default_epoch_size(const std::vector<UserSequence>& seqs) {
    std::uint64_t total = 0;
    for (const auto& seq : seqs)
        if (seq.items.size() >= 2) total += seq.items.size() - 1;
    return total;
}

std::vector<TrainingPair> sample_epoch(const AugConfig& config,
                                       const std::vector<UserSequence>& seqs,
                                       std::uint64_t count, Rng& rng) {
    if (count < 1) throw UsageError("sample_epoch: count must be at least 1");
    const ProbVector users = user_weights(seqs, config.alpha);
    // Step distributions depend only on the sequence length / target position;
    // cache them so an epoch costs O(draws), not O(draws * length).
    std::map<std::uint32_t, ProbVector> by_len;
    std::map<std::uint32_t, ProbVector> by_k;
    std::vector<TrainingPair> out;
    out.reserve(count);
    for (std::uint64_t i = 0; i < count; ++i) {
        const std::uint32_t u = users.sample(rng);
        const auto len = static_cast<std::uint32_t>(seqs[u].items.size());
        auto [kit, kin] = by_len.try_emplace(len);
        if (kin) kit->second = target_weights(len, config.beta);
        const std::uint32_t k = kit->second.sample(rng);
        auto [jit, jin] = by_k.try_emplace(k);
        if (jin) jit->second = input_weights(k, config.gamma);
        const std::uint32_t j = jit->second.sample(rng);
        out.push_back(make_pair(seqs[u], k, j, 1.0));
    }
    return out;
}

std::vector<TrainingPair> enumerate_strategy(const std::vector<UserSequence>& seqs, Strategy s) {
    std::vector<TrainingPair> out;
    std::uint64_t total = 0;
    for (const auto& seq : seqs) {
        const std::uint64_t n = seq.items.size();
        if (n < 2) continue;
        switch (s) {
            case Strategy::LT: total += 1; break;
            case Strategy::MT: total += n - 1; break;
            case Strategy::SW: total += n * (n - 1) / 2; break;
        }
    }
    if (total == 0) throw Error("no eligible user (every sequence has fewer than 2 items)");
    out.reserve(total);
    const double w = 1.0 / static_cast<double>(total);
    for (const auto& seq : seqs) {
        const auto len = static_cast<std::uint32_t>(seq.items.size());
        if (len < 2) continue;
        switch (s) {
            case Strategy::LT:
                out.push_back(make_pair(seq, len, 1, w));
                break;
            case Strategy::MT:
                for (std::uint32_t k = 2; k <= len; ++k) out.push_back(make_pair(seq, k, 1, w));
                break;
            case Strategy::SW:
                for (std::uint32_t k = 2; k <= len; ++k)
                    for (std::uint32_t j = 1; j <= k - 1; ++j) out.push_back(make_pair(seq, k, j, w));
                break;
        }
    }
    return out;
}

TargetHistogram exact_target_distribution(const AugConfig& config,
                                          const std::vector<UserSequence>& seqs) {
    const ProbVector users = user_weights(seqs, config.alpha);
    std::map<ItemId, double> mass;
    for (const auto& [u, pu] : users.entries) {
        if (pu == 0.0) continue;
        const auto& items = seqs[u].items;
        const ProbVector ks = target_weights(static_cast<std::uint32_t>(items.size()), config.beta);
        for (const auto& [k, pk] : ks.entries)
            if (pk > 0.0) mass[items[k - 1]] += pu * pk;
    }
    return TargetHistogram::from_weights(mass);
}

}  // namespace genpas
