#pragma once

#include <cstdint>
#include <vector>

#include "genpas/diagnostics.hpp"

namespace genpas {

struct SearchRow {
    AugConfig config;
    double kl = 0.0;
    double alignment = 0.0;       // NaN unless the row survived stage 1
    double discrimination = 0.0;  // NaN unless the row survived stage 1
    std::uint32_t rank_a = 0;     // dense rank, alignment descending (survivors only)
    std::uint32_t rank_d = 0;     // dense rank, discrimination ascending (survivors only)
    std::uint32_t score = 0;      // max(rank_a, rank_d)
    bool kept_stage1 = false;
    bool kept_stage2 = false;
};

struct SearchReport {
    std::vector<SearchRow> rows;  // grid order
    std::uint32_t stage1_count = 0;
    std::uint32_t top_k = 0;
};

/** Cartesian grid in (alpha, beta, gamma) nesting order. */
std::vector<AugConfig> make_grid(const std::vector<ExtExponent>& alphas,
                                 const std::vector<ExtExponent>& betas,
                                 const std::vector<ExtExponent>& gammas);

/** α ∈ {−2..2}, β ∈ {−1..2, inf}, γ ∈ {−inf, −1, 0, 1}: 100 configurations. */
std::vector<AugConfig> default_grid();

/**
 * Two-step filter. Stage 1 ranks (alpha, beta) groups by the KL of their exact
 * training-target distribution against the validation targets (gamma never
 * changes targets, so each group is computed once and kept or dropped whole)
 * and keeps groups until ⌈|grid|·r_pct/100⌉ configurations survive. Stage 2
 * scores survivors by max(dense rank of alignment desc, dense rank of
 * discrimination asc) and keeps the top_k lowest, ties by lower KL then grid
 * order.
 */
SearchReport filter_configs(const std::vector<AugConfig>& grid, const SplitCorpus& split,
                            double r_pct, std::uint32_t top_k, const DiagBudgets& budgets,
                            double epsilon, std::uint64_t seed);

}  // namespace genpas
