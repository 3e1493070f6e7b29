#include "genpas/search.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <map>

#include "genpas/parallel.hpp"
#include "genpas/sampler.hpp"

namespace genpas {

std::vector<AugConfig> make_grid(const std::vector<ExtExponent>& alphas,
                                 const std::vector<ExtExponent>& betas,
                                 const std::vector<ExtExponent>& gammas) {
    if (alphas.empty() || betas.empty() || gammas.empty())
        throw UsageError("make_grid: every axis needs at least one value");
    std::vector<AugConfig> grid;
    grid.reserve(alphas.size() * betas.size() * gammas.size());
    for (const auto& a : alphas)
        for (const auto& b : betas)
            for (const auto& g : gammas) grid.push_back(AugConfig{a, b, g});
    return grid;
}

std::vector<AugConfig> default_grid() {
    const auto F = [](double v) { return ExtExponent::finite(v); };
    return make_grid({F(-2), F(-1), F(0), F(1), F(2)},
                     {F(-1), F(0), F(1), F(2), ExtExponent::pos_inf()},
                     {ExtExponent::neg_inf(), F(-1), F(0), F(1)});
}

SearchReport filter_configs(const std::vector<AugConfig>& grid, const SplitCorpus& split,
                            double r_pct, std::uint32_t top_k, const DiagBudgets& budgets,
                            double epsilon, std::uint64_t seed) {
    if (grid.empty()) throw UsageError("filter_configs: empty grid");
    if (!(r_pct > 0.0 && r_pct <= 100.0)) throw UsageError("filter_configs: r_pct must be in (0, 100]");
    const auto n1 = static_cast<std::uint32_t>(
        std::ceil(static_cast<double>(grid.size()) * r_pct / 100.0));
    if (top_k < 1 || top_k > n1)
        throw UsageError("filter_configs: top_k must be in [1, " + std::to_string(n1) + "]");

    SearchReport report;
    report.top_k = top_k;
    report.rows.resize(grid.size());
    for (std::size_t i = 0; i < grid.size(); ++i) {
        report.rows[i].config = grid[i];
        report.rows[i].alignment = std::numeric_limits<double>::quiet_NaN();
        report.rows[i].discrimination = std::numeric_limits<double>::quiet_NaN();
    }

    // Group rows sharing (alpha, beta): their target distribution is identical.
    std::map<std::string, std::size_t> group_lookup;
    struct Group {
        std::vector<std::size_t> members;  // grid indices, ascending
        double kl = 0.0;
    };
    std::vector<Group> groups;
    for (std::size_t i = 0; i < grid.size(); ++i) {
        const std::string key = grid[i].alpha.str() + "," + grid[i].beta.str();
        auto [it, inserted] = group_lookup.emplace(key, groups.size());
        if (inserted) groups.emplace_back();
        groups[it->second].members.push_back(i);
    }

    const TargetHistogram val_hist = stage_target_histogram(split, EvalStage::Val);
    std::vector<std::size_t> group_order(groups.size());
    for (std::size_t g = 0; g < groups.size(); ++g) group_order[g] = g;
    parallel_for(groups.size(), [&](std::size_t g) {
        const AugConfig& probe = grid[groups[g].members.front()];
        const TargetHistogram dist = exact_target_distribution(probe, split.train);
        groups[g].kl = kl_divergence(dist, val_hist, epsilon, split.vocabulary.size());
    });
    for (const auto& group : groups)
        for (std::size_t i : group.members) report.rows[i].kl = group.kl;

    // Stage 1: admit whole groups by ascending KL until n1 rows survive.
    std::sort(group_order.begin(), group_order.end(), [&](std::size_t a, std::size_t b) {
        if (groups[a].kl != groups[b].kl) return groups[a].kl < groups[b].kl;
        return groups[a].members.front() < groups[b].members.front();
    });
    std::vector<std::size_t> survivors;
    for (std::size_t g : group_order) {
        if (survivors.size() >= n1) break;
        for (std::size_t i : groups[g].members) {
            survivors.push_back(i);
            report.rows[i].kept_stage1 = true;
        }
    }
    std::sort(survivors.begin(), survivors.end());
    report.stage1_count = static_cast<std::uint32_t>(survivors.size());

    // Stage 2: alignment / discrimination per survivor, seeded by grid position.
    parallel_for(survivors.size(), [&](std::size_t s) {
        const std::size_t i = survivors[s];
        const DiagReport diag = diagnostics_report(grid[i], split, budgets, epsilon,
                                                   derive_seed(seed, i), EvalStage::Val);
        report.rows[i].alignment = diag.alignment;
        report.rows[i].discrimination = diag.discrimination;
    });

    // Dense ranks: alignment descending, discrimination ascending.
    std::vector<double> a_values, d_values;
    for (std::size_t i : survivors) {
        a_values.push_back(report.rows[i].alignment);
        d_values.push_back(report.rows[i].discrimination);
    }
    std::sort(a_values.begin(), a_values.end(), std::greater<double>());
    a_values.erase(std::unique(a_values.begin(), a_values.end()), a_values.end());
    std::sort(d_values.begin(), d_values.end());
    d_values.erase(std::unique(d_values.begin(), d_values.end()), d_values.end());
    for (std::size_t i : survivors) {
        auto& row = report.rows[i];
        row.rank_a = static_cast<std::uint32_t>(
            std::lower_bound(a_values.begin(), a_values.end(), row.alignment,
                             std::greater<double>()) - a_values.begin() + 1);
        row.rank_d = static_cast<std::uint32_t>(
            std::lower_bound(d_values.begin(), d_values.end(), row.discrimination) -
            d_values.begin() + 1);
        row.score = std::max(row.rank_a, row.rank_d);
    }

    std::vector<std::size_t> final_order = survivors;
    std::sort(final_order.begin(), final_order.end(), [&](std::size_t a, std::size_t b) {
        const auto& ra = report.rows[a];
        const auto& rb = report.rows[b];
        if (ra.score != rb.score) return ra.score < rb.score;
        if (ra.kl != rb.kl) return ra.kl < rb.kl;
        return a < b;
    });
    for (std::size_t s = 0; s < final_order.size() && s < top_k; ++s)
        report.rows[final_order[s]].kept_stage2 = true;
    return report;
}

}  // namespace genpas
