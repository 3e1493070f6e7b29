#include "genpas/theorylab.hpp"

#include <algorithm>
#include <cmath>

#include "genpas/prob.hpp"

namespace genpas {

namespace {

std::vector<double> uniform_row(std::uint32_t n_items) {
    return std::vector<double>(n_items, 1.0 / static_cast<double>(n_items));
}

/** Inverse-CDF draw from a dense distribution via its cumulative sums. */
std::uint32_t draw_from_cdf(const std::vector<double>& cdf, Rng& rng) {
    const double u = rng.uniform01();
    auto it = std::upper_bound(cdf.begin(), cdf.end(), u);
    if (it == cdf.end()) --it;
    return static_cast<std::uint32_t>(it - cdf.begin());
}

}  // namespace

double PositionModel::delta(std::uint32_t k) const {
    if (k < 1 || k > n) throw Error("PositionModel::delta: position out of range");
    return tv_distance(p[k - 1], p[n]);
}

void PositionModel::validate() const {
    if (p.size() != static_cast<std::size_t>(n) + 1) throw Error("PositionModel: row count != n+1");
    for (const auto& row : p) {
        if (row.size() != item_count) throw Error("PositionModel: row size != item_count");
        double sum = 0.0;
        for (double x : row) {
            if (x < 0.0) throw Error("PositionModel: negative probability");
            sum += x;
        }
        if (std::fabs(sum - 1.0) > 1e-12) throw Error("PositionModel: row sums to " + format_double(sum));
    }
}

BiasKind parse_bias_kind(const std::string& name) {
    if (name == "uniform-identical") return BiasKind::UniformIdentical;
    if (name == "linear-recency") return BiasKind::LinearRecency;
    if (name == "random-dirichlet") return BiasKind::RandomDirichlet;
    throw UsageError("unknown profile '" + name + "'");
}

std::string bias_kind_name(BiasKind k) {
    switch (k) {
        case BiasKind::UniformIdentical: return "uniform-identical";
        case BiasKind::LinearRecency: return "linear-recency";
        default: return "random-dirichlet";
    }
}

WeightConvention parse_convention(const std::string& name) {
    if (name == "theorem") return WeightConvention::Theorem;
    if (name == "sampling") return WeightConvention::Sampling;
    throw UsageError("unknown weight convention '" + name + "' (expected theorem or sampling)");
}

PositionModel make_position_model(std::uint32_t n, std::uint32_t item_count,
                                  const BiasProfile& profile, Rng& rng) {
    if (n < 2) throw Error("make_position_model: n must be at least 2");
    if (item_count < 2) throw Error("make_position_model: item_count must be at least 2");
    PositionModel model;
    model.n = n;
    model.item_count = item_count;
    model.p.resize(n + 1);

    switch (profile.kind) {
        case BiasKind::UniformIdentical: {
            for (auto& row : model.p) row = uniform_row(item_count);
            break;
        }
        case BiasKind::LinearRecency: {
            // Target distribution: linear ramp, mass increasing with the index.
            std::vector<double> base(item_count);
            const double norm = static_cast<double>(item_count) * (item_count + 1.0) / 2.0;
            for (std::uint32_t i = 0; i < item_count; ++i) base[i] = (i + 1.0) / norm;
            // Contaminant q: uniform over the low-mass half of the ramp.
            const std::uint32_t half = item_count / 2;
            std::vector<double> q(item_count, 0.0);
            for (std::uint32_t i = 0; i < half; ++i) q[i] = 1.0 / static_cast<double>(half);
            const double s = profile.strength;
            if (s < 0.0) throw Error("linear-recency: strength must be non-negative");
            if (s > 1.0)
                throw Error("linear-recency: strength " + format_double(s) +
                            " makes the position-1 mixing weight exceed 1");
            for (std::uint32_t k = 1; k <= n; ++k) {
                const double c = s * static_cast<double>(n + 1 - k) / static_cast<double>(n);
                auto& row = model.p[k - 1];
                row.resize(item_count);
                for (std::uint32_t i = 0; i < item_count; ++i)
                    row[i] = (1.0 - c) * base[i] + c * q[i];
            }
            model.p[n] = base;
            break;
        }
        case BiasKind::RandomDirichlet: {
            const double conc = profile.strength > 0.0 ? profile.strength : 1.0;
            for (auto& row : model.p) {
                row.resize(item_count);
                double sum = 0.0;
                for (auto& x : row) {
                    x = rng.gamma(conc);
                    sum += x;
                }
                for (auto& x : row) x /= sum;
            }
            break;
        }
    }
    model.validate();
    return model;
}

SplitCorpus sample_population(const PositionModel& model, std::uint32_t m, Rng& rng) {
    if (m < 1) throw Error("sample_population: m must be at least 1");
    std::vector<std::vector<double>> cdf(model.p.size());
    for (std::size_t r = 0; r < model.p.size(); ++r) {
        cdf[r].resize(model.item_count);
        double acc = 0.0;
        for (std::uint32_t i = 0; i < model.item_count; ++i) {
            acc += model.p[r][i];
            cdf[r][i] = acc;
        }
        cdf[r].back() = 1.0;  // close the last bucket against rounding
    }

    SplitCorpus split;
    for (std::uint32_t i = 0; i < model.item_count; ++i)
        split.vocabulary.intern("i" + std::to_string(i));
    split.train.reserve(m);
    for (std::uint32_t u = 0; u < m; ++u) {
        UserSequence seq;
        seq.user_index = u;
        seq.items.reserve(model.n);
        for (std::uint32_t k = 1; k <= model.n; ++k)
            seq.items.push_back(draw_from_cdf(cdf[k - 1], rng));
        split.train.push_back(std::move(seq));
        split.val_target.push_back(draw_from_cdf(cdf[model.n], rng));
        split.test_target.push_back(draw_from_cdf(cdf[model.n], rng));
        split.users.push_back("u" + std::to_string(u));
    }
    return split;
}

std::vector<double> position_weights(const ExtExponent& beta, std::uint32_t n,
                                     WeightConvention convention) {
    if (n < 2) throw Error("position_weights: n must be at least 2");
    std::vector<std::pair<std::uint32_t, double>> bases;
    bases.reserve(n - 1);
    for (std::uint32_t k = 2; k <= n; ++k)
        bases.emplace_back(k, convention == WeightConvention::Theorem ? static_cast<double>(k)
                                                                      : static_cast<double>(k - 1));
    const ProbVector pv = power_weights(bases, beta);
    std::vector<double> w(n - 1, 0.0);
    for (const auto& [k, p] : pv.entries) w[k - 2] = p;
    return w;
}

std::vector<double> expected_train_target_dist(const ExtExponent& beta, const PositionModel& model,
                                               WeightConvention convention) {
    const auto w = position_weights(beta, model.n, convention);
    std::vector<double> out(model.item_count, 0.0);
    for (std::uint32_t k = 2; k <= model.n; ++k)
        for (std::uint32_t i = 0; i < model.item_count; ++i)
            out[i] += w[k - 2] * model.p[k - 1][i];
    return out;
}

std::vector<double> empirical_target_dist(const PositionModel& model, const SplitCorpus& population,
                                          const ExtExponent& beta, WeightConvention convention) {
    const auto w = position_weights(beta, model.n, convention);
    std::vector<double> hist(model.item_count, 0.0);
    const double inv_m = 1.0 / static_cast<double>(population.n_users());
    for (const auto& seq : population.train) {
        if (seq.items.size() != model.n) throw Error("empirical_target_dist: sequence length != n");
        for (std::uint32_t k = 2; k <= model.n; ++k) hist[seq.items[k - 1]] += w[k - 2] * inv_m;
    }
    return hist;
}

TvSummary tv_experiment(const ExtExponent& beta, const PositionModel& model, std::uint32_t m,
                        std::uint32_t trials, std::uint64_t seed, WeightConvention convention) {
    if (trials < 1) throw Error("tv_experiment: trials must be at least 1");
    TvSummary summary;
    const auto expected = expected_train_target_dist(beta, model, convention);
    summary.tv_expected = tv_distance(expected, model.p[model.n]);
    summary.trials.resize(trials);
    for (std::uint32_t t = 0; t < trials; ++t) {
        Rng rng(derive_seed(seed, t));
        const SplitCorpus population = sample_population(model, m, rng);
        const auto emp = empirical_target_dist(model, population, beta, convention);
        summary.trials[t] = TvTrial{tv_distance(emp, model.p[model.n]), summary.tv_expected};
    }
    double mean = 0.0;
    for (const auto& tr : summary.trials) mean += tr.tv_empirical;
    mean /= trials;
    double var = 0.0;
    for (const auto& tr : summary.trials) var += (tr.tv_empirical - mean) * (tr.tv_empirical - mean);
    summary.mean_empirical = mean;
    summary.std_empirical = std::sqrt(var / trials);
    return summary;
}

}  // namespace genpas
