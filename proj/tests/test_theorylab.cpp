#include <doctest.h>

#include <cmath>
#include <vector>

#include "genpas/theorylab.hpp"
#include "oracle.hpp"

using namespace genpas;

namespace {

bool row_is_distribution(const std::vector<double>& row) {
    double sum = 0.0;
    for (double p : row) {
        if (p < 0.0) return false;
        sum += p;
    }
    return std::fabs(sum - 1.0) < 1e-9;
}

}  // namespace

TEST_CASE("uniform-identical model has zero bias everywhere") {
    Rng rng(51);
    const PositionModel model =
        make_position_model(6, 10, {BiasKind::UniformIdentical, 0.0}, rng);
    model.validate();
    REQUIRE(model.p.size() == 7);
    for (const auto& row : model.p)
        for (double p : row) CHECK(p == doctest::Approx(0.1).epsilon(1e-12));
    for (std::uint32_t k = 1; k <= 6; ++k) CHECK(model.delta(k) == doctest::Approx(0.0));
    CHECK_THROWS_AS(model.delta(0), Error);
    CHECK_THROWS_AS(model.delta(7), Error);
}

TEST_CASE("linear-recency bias decreases strictly toward the target position") {
    Rng rng(52);
    const PositionModel model =
        make_position_model(8, 12, {BiasKind::LinearRecency, 0.9}, rng);
    model.validate();
    for (std::uint32_t k = 1; k < 8; ++k) CHECK(model.delta(k) > model.delta(k + 1));
    CHECK(model.delta(8) > 0.0);  // still biased at the last input position

    // Zero strength collapses every row onto the target distribution.
    const PositionModel flat = make_position_model(5, 8, {BiasKind::LinearRecency, 0.0}, rng);
    for (std::uint32_t k = 1; k <= 5; ++k) CHECK(flat.delta(k) == doctest::Approx(0.0));

    CHECK_THROWS_WITH_AS(make_position_model(5, 8, {BiasKind::LinearRecency, 1.2}, rng),
                         doctest::Contains("strength"), Error);
}

TEST_CASE("random-dirichlet rows are independent valid distributions") {
    Rng rng(53);
    const PositionModel model =
        make_position_model(5, 9, {BiasKind::RandomDirichlet, 2.0}, rng);
    model.validate();
    for (const auto& row : model.p) CHECK(row_is_distribution(row));
    // Adjacent rows should differ (probability ~1 under a continuous draw).
    bool differs = false;
    for (std::size_t i = 0; i < 9; ++i) differs |= std::fabs(model.p[0][i] - model.p[1][i]) > 1e-6;
    CHECK(differs);

    CHECK(parse_bias_kind("uniform-identical") == BiasKind::UniformIdentical);
    CHECK(parse_bias_kind("linear-recency") == BiasKind::LinearRecency);
    CHECK(parse_bias_kind("random-dirichlet") == BiasKind::RandomDirichlet);
    CHECK_THROWS_AS(parse_bias_kind("zipf"), UsageError);
    CHECK(bias_kind_name(BiasKind::LinearRecency) == std::string("linear-recency"));
    CHECK_THROWS_AS(make_position_model(1, 8, {BiasKind::UniformIdentical, 0.0}, rng), Error);
    CHECK_THROWS_AS(make_position_model(5, 1, {BiasKind::UniformIdentical, 0.0}, rng), Error);
}

TEST_CASE("position weights under both conventions") {
    const auto uniform = position_weights(ExtExponent::finite(0.0), 5, WeightConvention::Theorem);
    REQUIRE(uniform.size() == 4);  // k = 2..5
    for (double w : uniform) CHECK(w == doctest::Approx(0.25).epsilon(1e-12));

    // n=4, beta=1: theorem weighs k itself, sampling weighs k-1.
    const auto theorem = position_weights(ExtExponent::finite(1.0), 4, WeightConvention::Theorem);
    CHECK(theorem[0] == doctest::Approx(2.0 / 9.0).epsilon(1e-12));
    CHECK(theorem[1] == doctest::Approx(3.0 / 9.0).epsilon(1e-12));
    CHECK(theorem[2] == doctest::Approx(4.0 / 9.0).epsilon(1e-12));
    const auto sampling = position_weights(ExtExponent::finite(1.0), 4, WeightConvention::Sampling);
    CHECK(sampling[0] == doctest::Approx(1.0 / 6.0).epsilon(1e-12));
    CHECK(sampling[1] == doctest::Approx(2.0 / 6.0).epsilon(1e-12));
    CHECK(sampling[2] == doctest::Approx(3.0 / 6.0).epsilon(1e-12));

    // Infinite exponents concentrate on the extreme position.
    const auto last = position_weights(ExtExponent::pos_inf(), 6, WeightConvention::Theorem);
    CHECK(last.back() == doctest::Approx(1.0));
    const auto first = position_weights(ExtExponent::neg_inf(), 6, WeightConvention::Sampling);
    CHECK(first.front() == doctest::Approx(1.0));

    CHECK(parse_convention("theorem") == WeightConvention::Theorem);
    CHECK(parse_convention("sampling") == WeightConvention::Sampling);
    CHECK_THROWS_AS(parse_convention("paper"), UsageError);
    CHECK_THROWS_AS(position_weights(ExtExponent::finite(0.0), 1, WeightConvention::Theorem),
                    Error);
}

TEST_CASE("expected target distribution is the weighted row mixture") {
    Rng rng(54);
    for (int iter = 0; iter < 100; ++iter) {
        const PositionModel model =
            make_position_model(4 + rng.below(4), 5 + rng.below(6),
                                {BiasKind::RandomDirichlet, 1.0}, rng);
        const ExtExponent beta = oracle::random_exponent(rng);
        for (WeightConvention conv : {WeightConvention::Theorem, WeightConvention::Sampling}) {
            const auto got = expected_train_target_dist(beta, model, conv);
            const auto w = position_weights(beta, model.n, conv);
            REQUIRE(got.size() == model.item_count);
            for (std::size_t i = 0; i < got.size(); ++i) {
                double want = 0.0;
                for (std::uint32_t k = 2; k <= model.n; ++k)
                    want += w[k - 2] * model.p[k - 1][i];
                CHECK(got[i] == doctest::Approx(want).epsilon(1e-12));
            }
        }
    }
}

TEST_CASE("property: expected bias is bounded by the weighted per-position bias") {
    Rng rng(55);
    for (int iter = 0; iter < 1000; ++iter) {
        const PositionModel model =
            make_position_model(3 + rng.below(5), 4 + rng.below(8),
                                {BiasKind::RandomDirichlet, 0.8}, rng);
        const ExtExponent beta = oracle::random_exponent(rng);
        const WeightConvention conv =
            rng.below(2) ? WeightConvention::Theorem : WeightConvention::Sampling;
        const auto expected = expected_train_target_dist(beta, model, conv);
        const auto w = position_weights(beta, model.n, conv);
        const double tv = tv_distance(expected, model.p[model.n]);
        double bound = 0.0;
        for (std::uint32_t k = 2; k <= model.n; ++k) bound += w[k - 2] * model.delta(k);
        CHECK(tv <= bound + 1e-12);
    }
}

TEST_CASE("sampled populations follow the position model") {
    Rng model_rng(56);
    const PositionModel model =
        make_position_model(4, 6, {BiasKind::LinearRecency, 0.8}, model_rng);
    Rng rng(57);
    const SplitCorpus pop = sample_population(model, 4000, rng);
    REQUIRE(pop.n_users() == 4000);
    CHECK(pop.vocabulary.size() == 6);
    CHECK(pop.users[0] == "u0");
    CHECK(pop.vocabulary.name(0) == "i0");
    for (const auto& seq : pop.train) REQUIRE(seq.items.size() == 4);

    // Chi-square per training position and for both held-out draws.
    for (std::uint32_t k = 1; k <= 4; ++k) {
        std::vector<std::uint64_t> counts(6, 0);
        for (const auto& seq : pop.train) ++counts[seq.items[k - 1]];
        CHECK(oracle::chi2_gof_pvalue(counts, model.p[k - 1]) > 0.001);
    }
    std::vector<std::uint64_t> val_counts(6, 0), test_counts(6, 0);
    for (std::size_t u = 0; u < pop.n_users(); ++u) {
        ++val_counts[pop.val_target[u]];
        ++test_counts[pop.test_target[u]];
    }
    CHECK(oracle::chi2_gof_pvalue(val_counts, model.p[4]) > 0.001);
    CHECK(oracle::chi2_gof_pvalue(test_counts, model.p[4]) > 0.001);

    CHECK_THROWS_AS(sample_population(model, 0, rng), Error);
}

TEST_CASE("empirical target distribution matches a hand computation") {
    Rng model_rng(58);
    const PositionModel model =
        make_position_model(3, 4, {BiasKind::UniformIdentical, 0.0}, model_rng);

    SplitCorpus pop;
    pop.train = oracle::seqs_from({{0, 1, 2}, {3, 1, 0}});
    pop.val_target = {0, 1};
    pop.test_target = {2, 2};
    for (int i = 0; i < 4; ++i) pop.vocabulary.intern("i" + std::to_string(i));
    pop.users = {"u0", "u1"};

    // beta=1, sampling convention: omega proportional to (1, 2) over k = 2, 3.
    const auto dist = empirical_target_dist(model, pop, ExtExponent::finite(1.0),
                                            WeightConvention::Sampling);
    REQUIRE(dist.size() == 4);
    // user 0 positions 2,3 hold items 1,2; user 1 holds 1,0.
    CHECK(dist[1] == doctest::Approx((1.0 / 3.0 + 1.0 / 3.0) / 2.0).epsilon(1e-12));
    CHECK(dist[2] == doctest::Approx((2.0 / 3.0) / 2.0).epsilon(1e-12));
    CHECK(dist[0] == doctest::Approx((2.0 / 3.0) / 2.0).epsilon(1e-12));
    CHECK(dist[3] == doctest::Approx(0.0).epsilon(1e-12));

    SplitCorpus bad = pop;
    bad.train[0].items.push_back(3);
    CHECK_THROWS_AS(
        empirical_target_dist(model, bad, ExtExponent::finite(1.0), WeightConvention::Sampling),
        Error);
}

TEST_CASE("property: empirical histograms stay normalized") {
    Rng rng(59);
    for (int iter = 0; iter < 250; ++iter) {
        const PositionModel model =
            make_position_model(3 + rng.below(4), 4 + rng.below(5),
                                {BiasKind::RandomDirichlet, 1.5}, rng);
        const SplitCorpus pop = sample_population(model, 1 + rng.below(40), rng);
        for (WeightConvention conv : {WeightConvention::Theorem, WeightConvention::Sampling}) {
            const auto dist = empirical_target_dist(model, pop, oracle::random_exponent(rng),
                                                    conv);
            double sum = 0.0;
            for (double p : dist) {
                CHECK(p >= 0.0);
                sum += p;
            }
            CHECK(sum == doctest::Approx(1.0).epsilon(1e-9));
        }
    }
}

TEST_CASE("tv_experiment summarizes reproducible trials") {
    Rng model_rng(60);
    const PositionModel model =
        make_position_model(5, 8, {BiasKind::LinearRecency, 0.6}, model_rng);
    const ExtExponent beta = ExtExponent::finite(0.5);

    const TvSummary a = tv_experiment(beta, model, 150, 12, 99, WeightConvention::Theorem);
    const TvSummary b = tv_experiment(beta, model, 150, 12, 99, WeightConvention::Theorem);
    REQUIRE(a.trials.size() == 12);
    for (std::size_t t = 0; t < 12; ++t) {
        CHECK(a.trials[t].tv_empirical == b.trials[t].tv_empirical);
        CHECK(a.trials[t].tv_expected == a.tv_expected);
    }

    // Summary statistics recomputed from the trial list.
    double mean = 0.0;
    for (const auto& t : a.trials) mean += t.tv_empirical;
    mean /= 12.0;
    double var = 0.0;
    for (const auto& t : a.trials) var += (t.tv_empirical - mean) * (t.tv_empirical - mean);
    var /= 12.0;
    CHECK(a.mean_empirical == doctest::Approx(mean).epsilon(1e-12));
    CHECK(a.std_empirical == doctest::Approx(std::sqrt(var)).epsilon(1e-12));

    // The constant bias term is the exact mixture-vs-target distance.
    const double want_bias =
        tv_distance(expected_train_target_dist(beta, model, WeightConvention::Theorem),
                    model.p[5]);
    CHECK(a.tv_expected == doctest::Approx(want_bias).epsilon(1e-12));

    // Per-trial triangle inequality: the trial populations are reproducible
    // from the experiment's per-trial seed stream.
    for (std::uint32_t t = 0; t < 12; ++t) {
        Rng trial_rng(derive_seed(99, t));
        const SplitCorpus pop = sample_population(model, 150, trial_rng);
        const auto emp =
            empirical_target_dist(model, pop, beta, WeightConvention::Theorem);
        CHECK(tv_distance(emp, model.p[5]) == doctest::Approx(a.trials[t].tv_empirical));
        const auto expected =
            expected_train_target_dist(beta, model, WeightConvention::Theorem);
        CHECK(a.trials[t].tv_empirical <= tv_distance(emp, expected) + a.tv_expected + 1e-12);
    }

    CHECK_THROWS_AS(tv_experiment(beta, model, 100, 0, 1, WeightConvention::Theorem), Error);
}

TEST_CASE("zero-bias deviation shrinks with the population size") {
    Rng model_rng(61);
    const PositionModel model =
        make_position_model(6, 10, {BiasKind::UniformIdentical, 0.0}, model_rng);
    const TvSummary small = tv_experiment(ExtExponent::finite(0.0), model, 200, 20, 7,
                                          WeightConvention::Theorem);
    const TvSummary big = tv_experiment(ExtExponent::finite(0.0), model, 3200, 20, 7,
                                        WeightConvention::Theorem);
    CHECK(small.tv_expected == doctest::Approx(0.0).epsilon(1e-12));
    CHECK(big.mean_empirical < 0.9 * small.mean_empirical);
}
