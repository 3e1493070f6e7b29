#include <doctest.h>

#include <cmath>
#include <set>
#include <string>
#include <vector>

#include "genpas/search.hpp"
#include "oracle.hpp"

using namespace genpas;

namespace {

SplitCorpus random_split(Rng& rng, std::uint32_t users, ItemId universe) {
    std::vector<std::vector<ItemId>> rows;
    std::vector<ItemId> val, test;
    for (std::uint32_t u = 0; u < users; ++u) {
        const std::uint64_t len = 2 + rng.below(4);
        std::vector<ItemId> row;
        for (std::uint64_t i = 0; i < len; ++i)
            row.push_back(static_cast<ItemId>(rng.below(universe)));
        rows.push_back(std::move(row));
        val.push_back(static_cast<ItemId>(rng.below(universe)));
        test.push_back(static_cast<ItemId>(rng.below(universe)));
    }
    return oracle::split_from(rows, val, test, universe);
}

// A ten-configuration grid whose (alpha, beta) groups are interleaved, so the
// grouping logic cannot rely on adjacency.
std::vector<AugConfig> interleaved_grid() {
    const auto F = [](double v) { return ExtExponent::finite(v); };
    const ExtExponent inf = ExtExponent::pos_inf();
    const ExtExponent ninf = ExtExponent::neg_inf();
    return {
        {F(0), F(0), F(0)},  {F(0), F(0), F(1)}, {F(1), F(0), F(0)}, {F(0), inf, ninf},
        {F(1), F(0), F(1)},  {F(0), F(0), ninf}, {F(2), F(1), F(0)}, {F(1), F(0), ninf},
        {F(2), F(1), F(1)},  {F(0), inf, F(0)},
    };
}

struct BruteRows {
    std::vector<double> kl, a, d;
    std::vector<std::uint32_t> ra, rd, score;
    std::vector<bool> s1, s2;
    std::uint32_t stage1_count = 0;
};

// Reference two-stage filter, written as a straight selection loop over whole
// (alpha, beta) groups plus distinct-value counting for the dense ranks.
BruteRows brute_filter(const std::vector<AugConfig>& grid, const SplitCorpus& split,
                       double r_pct, std::uint32_t top_k, const DiagBudgets& budgets,
                       double epsilon, std::uint64_t seed) {
    const std::size_t n = grid.size();
    const double nan = std::numeric_limits<double>::quiet_NaN();
    BruteRows r;
    r.kl.assign(n, 0.0);
    r.a.assign(n, nan);
    r.d.assign(n, nan);
    r.ra.assign(n, 0);
    r.rd.assign(n, 0);
    r.score.assign(n, 0);
    r.s1.assign(n, false);
    r.s2.assign(n, false);

    std::vector<std::vector<std::size_t>> members;
    std::vector<int> group_of(n, -1);
    for (std::size_t i = 0; i < n; ++i) {
        for (std::size_t g = 0; g < members.size(); ++g) {
            const AugConfig& probe = grid[members[g].front()];
            if (probe.alpha == grid[i].alpha && probe.beta == grid[i].beta) {
                group_of[i] = static_cast<int>(g);
                members[g].push_back(i);
                break;
            }
        }
        if (group_of[i] < 0) {
            group_of[i] = static_cast<int>(members.size());
            members.push_back({i});
        }
    }

    const TargetHistogram val_hist = stage_target_histogram(split, EvalStage::Val);
    std::vector<double> group_kl(members.size());
    for (std::size_t g = 0; g < members.size(); ++g) {
        const TargetHistogram dist =
            exact_target_distribution(grid[members[g].front()], split.train);
        group_kl[g] = kl_divergence(dist, val_hist, epsilon, split.vocabulary.size());
    }
    for (std::size_t i = 0; i < n; ++i) r.kl[i] = group_kl[group_of[i]];

    const auto n1 = static_cast<std::uint32_t>(std::ceil(double(n) * r_pct / 100.0));
    std::vector<bool> admitted(members.size(), false);
    std::uint32_t count = 0;
    while (count < n1) {
        int best = -1;
        for (std::size_t g = 0; g < members.size(); ++g) {
            if (admitted[g]) continue;
            if (best < 0 || group_kl[g] < group_kl[best] ||
                (group_kl[g] == group_kl[best] &&
                 members[g].front() < members[best].front()))
                best = static_cast<int>(g);
        }
        admitted[best] = true;
        for (std::size_t i : members[best]) r.s1[i] = true;
        count += static_cast<std::uint32_t>(members[best].size());
    }
    r.stage1_count = count;

    std::vector<std::size_t> survivors;
    for (std::size_t i = 0; i < n; ++i)
        if (r.s1[i]) survivors.push_back(i);
    for (std::size_t i : survivors) {
        const DiagReport diag = diagnostics_report(grid[i], split, budgets, epsilon,
                                                   derive_seed(seed, i), EvalStage::Val);
        r.a[i] = diag.alignment;
        r.d[i] = diag.discrimination;
    }
    for (std::size_t i : survivors) {
        std::set<double> better_a, better_d;
        for (std::size_t j : survivors) {
            if (r.a[j] > r.a[i]) better_a.insert(r.a[j]);
            if (r.d[j] < r.d[i]) better_d.insert(r.d[j]);
        }
        r.ra[i] = static_cast<std::uint32_t>(better_a.size()) + 1;
        r.rd[i] = static_cast<std::uint32_t>(better_d.size()) + 1;
        r.score[i] = std::max(r.ra[i], r.rd[i]);
    }

    std::vector<std::size_t> order = survivors;
    std::sort(order.begin(), order.end(), [&](std::size_t x, std::size_t y) {
        if (r.score[x] != r.score[y]) return r.score[x] < r.score[y];
        if (r.kl[x] != r.kl[y]) return r.kl[x] < r.kl[y];
        return x < y;
    });
    for (std::size_t s = 0; s < order.size() && s < top_k; ++s) r.s2[order[s]] = true;
    return r;
}

bool same_double(double x, double y) {
    return (std::isnan(x) && std::isnan(y)) || x == y;
}

}  // namespace

TEST_CASE("grid construction") {
    const auto F = [](double v) { return ExtExponent::finite(v); };
    const auto grid = make_grid({F(0), F(1)}, {F(2)}, {F(3), F(4), F(5)});
    REQUIRE(grid.size() == 6);
    CHECK(grid[0].str() == "(0,2,3)");
    CHECK(grid[2].str() == "(0,2,5)");  // gamma varies fastest
    CHECK(grid[3].str() == "(1,2,3)");
    CHECK_THROWS_AS(make_grid({}, {F(0)}, {F(0)}), UsageError);
    CHECK_THROWS_AS(make_grid({F(0)}, {F(0)}, {}), UsageError);

    const auto full = default_grid();
    REQUIRE(full.size() == 100);
    CHECK(full[0].str() == "(-2,-1,-inf)");
    CHECK(full[3].str() == "(-2,-1,1)");
    CHECK(full[4].str() == "(-2,0,-inf)");
    CHECK(full[99].str() == "(2,inf,1)");
    std::set<std::string> groups;
    for (const auto& c : full) groups.insert(c.alpha.str() + "," + c.beta.str());
    CHECK(groups.size() == 25);
}

TEST_CASE("filter argument validation") {
    Rng rng(70);
    const SplitCorpus split = random_split(rng, 8, 6);
    const DiagBudgets budgets{20, 8, 200};
    const auto grid = interleaved_grid();
    CHECK_THROWS_AS(filter_configs({}, split, 20.0, 1, budgets, 1e-9, 1), UsageError);
    CHECK_THROWS_AS(filter_configs(grid, split, 0.0, 1, budgets, 1e-9, 1), UsageError);
    CHECK_THROWS_AS(filter_configs(grid, split, 100.5, 1, budgets, 1e-9, 1), UsageError);
    CHECK_THROWS_AS(filter_configs(grid, split, 20.0, 0, budgets, 1e-9, 1), UsageError);
    // r = 10% of 10 rows admits at least one row; top_k beyond that cap is refused.
    CHECK_THROWS_AS(filter_configs(grid, split, 10.0, 2, budgets, 1e-9, 1), UsageError);
}

TEST_CASE("property: filter matches the reference implementation row for row") {
    Rng rng(71);
    const DiagBudgets budgets{30, 10, 300};
    const auto grid = interleaved_grid();
    std::uint64_t dominance_checks = 0;
    for (int iter = 0; iter < 500; ++iter) {
        const SplitCorpus split = random_split(rng, 10 + rng.below(11), 6);
        const double r_pct = 30.0 + 10.0 * rng.below(4);  // 30..60%
        const std::uint32_t top_k = 1 + rng.below(3);
        const std::uint64_t seed = 1000 + iter;
        const SearchReport got =
            filter_configs(grid, split, r_pct, top_k, budgets, 1e-9, seed);
        const BruteRows want = brute_filter(grid, split, r_pct, top_k, budgets, 1e-9, seed);

        REQUIRE(got.rows.size() == grid.size());
        CHECK(got.stage1_count == want.stage1_count);
        CHECK(got.top_k == top_k);
        std::uint32_t kept2 = 0;
        for (std::size_t i = 0; i < grid.size(); ++i) {
            const SearchRow& row = got.rows[i];
            CHECK(row.config == grid[i]);
            CHECK(row.kl == want.kl[i]);
            CHECK(row.kept_stage1 == want.s1[i]);
            CHECK(same_double(row.alignment, want.a[i]));
            CHECK(same_double(row.discrimination, want.d[i]));
            CHECK(row.rank_a == want.ra[i]);
            CHECK(row.rank_d == want.rd[i]);
            CHECK(row.score == want.score[i]);
            CHECK(row.kept_stage2 == want.s2[i]);
            kept2 += row.kept_stage2 ? 1 : 0;
            if (!row.kept_stage1) {
                CHECK(std::isnan(row.alignment));
                CHECK(std::isnan(row.discrimination));
                CHECK(row.score == 0);
                CHECK(!row.kept_stage2);
            }
        }
        CHECK(kept2 == top_k);

        // Members of one (alpha, beta) group share KL and stage-1 fate.
        for (std::size_t i = 0; i < grid.size(); ++i)
            for (std::size_t j = i + 1; j < grid.size(); ++j)
                if (grid[i].alpha == grid[j].alpha && grid[i].beta == grid[j].beta) {
                    CHECK(got.rows[i].kl == got.rows[j].kl);
                    CHECK(got.rows[i].kept_stage1 == got.rows[j].kept_stage1);
                }

        // Dominance: at least as aligned and at least as discriminating can
        // never score worse (higher).
        for (std::size_t i = 0; i < grid.size(); ++i) {
            if (!got.rows[i].kept_stage1) continue;
            for (std::size_t j = 0; j < grid.size(); ++j) {
                if (i == j || !got.rows[j].kept_stage1) continue;
                if (got.rows[i].alignment >= got.rows[j].alignment &&
                    got.rows[i].discrimination <= got.rows[j].discrimination) {
                    CHECK(got.rows[i].score <= got.rows[j].score);
                    ++dominance_checks;
                }
            }
        }
    }
    CHECK(dominance_checks > 1000);
}

TEST_CASE("stage 1 admits whole groups past the survivor target") {
    Rng rng(72);
    const SplitCorpus split = random_split(rng, 15, 6);
    const auto F = [](double v) { return ExtExponent::finite(v); };
    // Two groups of three; 60% of 6 rows targets 4 survivors, so the cut lands
    // mid-group and the second group must come along whole.
    const auto grid = make_grid({F(0), F(1)}, {F(0.5)}, {F(-1), F(0), F(1)});
    const SearchReport report =
        filter_configs(grid, split, 60.0, 2, DiagBudgets{20, 8, 200}, 1e-9, 5);
    CHECK(report.stage1_count == 6);
    for (const auto& row : report.rows) CHECK(row.kept_stage1);
}

TEST_CASE("reordering the gamma axis never changes the stage-1 selection") {
    Rng rng(73);
    const auto F = [](double v) { return ExtExponent::finite(v); };
    const std::vector<ExtExponent> alphas = {F(-1), F(0), F(1)};
    const std::vector<ExtExponent> betas = {F(0), F(1), ExtExponent::pos_inf()};
    const std::vector<ExtExponent> fwd = {ExtExponent::neg_inf(), F(0), F(1)};
    const std::vector<ExtExponent> rev = {F(1), ExtExponent::neg_inf(), F(0)};
    const DiagBudgets budgets{20, 8, 200};
    for (int iter = 0; iter < 10; ++iter) {
        const SplitCorpus split = random_split(rng, 12, 6);
        const SearchReport a =
            filter_configs(make_grid(alphas, betas, fwd), split, 40.0, 2, budgets, 1e-9, 9);
        const SearchReport b =
            filter_configs(make_grid(alphas, betas, rev), split, 40.0, 2, budgets, 1e-9, 9);
        std::set<std::string> kept_a, kept_b;
        std::map<std::string, double> kl_a, kl_b;
        for (const auto& row : a.rows) {
            if (row.kept_stage1) kept_a.insert(row.config.str());
            kl_a[row.config.str()] = row.kl;
        }
        for (const auto& row : b.rows) {
            if (row.kept_stage1) kept_b.insert(row.config.str());
            kl_b[row.config.str()] = row.kl;
        }
        CHECK(kept_a == kept_b);
        CHECK(kl_a == kl_b);  // KL is a pure (alpha, beta) group property
        CHECK(a.stage1_count == b.stage1_count);
    }
}

TEST_CASE("repeated runs are bit-identical") {
    Rng rng(74);
    const SplitCorpus split = random_split(rng, 14, 6);
    const auto grid = interleaved_grid();
    const DiagBudgets budgets{30, 10, 300};
    const SearchReport a = filter_configs(grid, split, 50.0, 3, budgets, 1e-9, 77);
    const SearchReport b = filter_configs(grid, split, 50.0, 3, budgets, 1e-9, 77);
    REQUIRE(a.rows.size() == b.rows.size());
    CHECK(a.stage1_count == b.stage1_count);
    for (std::size_t i = 0; i < a.rows.size(); ++i) {
        CHECK(a.rows[i].kl == b.rows[i].kl);
        CHECK(same_double(a.rows[i].alignment, b.rows[i].alignment));
        CHECK(same_double(a.rows[i].discrimination, b.rows[i].discrimination));
        CHECK(a.rows[i].rank_a == b.rows[i].rank_a);
        CHECK(a.rows[i].rank_d == b.rows[i].rank_d);
        CHECK(a.rows[i].score == b.rows[i].score);
        CHECK(a.rows[i].kept_stage1 == b.rows[i].kept_stage1);
        CHECK(a.rows[i].kept_stage2 == b.rows[i].kept_stage2);
    }
}

TEST_CASE("default grid run keeps the documented counts") {
    Rng rng(75);
    const SplitCorpus split = random_split(rng, 20, 8);
    const SearchReport report = filter_configs(default_grid(), split, 20.0, 10,
                                               DiagBudgets{50, 20, 400}, 1e-9, 123);
    // 20% of 100 rows is five whole four-row groups: the target is hit exactly.
    CHECK(report.stage1_count == 20);
    std::vector<std::size_t> survivors;
    std::uint32_t kept2 = 0;
    for (std::size_t i = 0; i < report.rows.size(); ++i) {
        if (report.rows[i].kept_stage1) survivors.push_back(i);
        kept2 += report.rows[i].kept_stage2 ? 1 : 0;
    }
    REQUIRE(survivors.size() == 20);
    CHECK(kept2 == 10);

    // The stage-2 winners are exactly the best ten by (score, kl, grid order).
    std::vector<std::size_t> order = survivors;
    std::sort(order.begin(), order.end(), [&](std::size_t x, std::size_t y) {
        const auto& rx = report.rows[x];
        const auto& ry = report.rows[y];
        if (rx.score != ry.score) return rx.score < ry.score;
        if (rx.kl != ry.kl) return rx.kl < ry.kl;
        return x < y;
    });
    for (std::size_t s = 0; s < order.size(); ++s)
        CHECK(report.rows[order[s]].kept_stage2 == (s < 10));
}
