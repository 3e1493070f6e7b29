#pragma once

#include <map>
#include <utility>
#include <vector>

#include "genpas/common.hpp"

namespace genpas {

/**
 * Probability distribution over items observed as prediction targets.
 * Entries are sorted by item index, strictly positive, and sum to 1.
 */
struct TargetHistogram {
    std::vector<std::pair<ItemId, double>> probs;

    std::size_t support_size() const { return probs.size(); }

    /** Probability of an item (0 when outside the support). */
    double prob(ItemId item) const;

    /** Normalizes a weight map, dropping non-positive entries. Throws on zero total. */
    static TargetHistogram from_weights(const std::map<ItemId, double>& weights);

    /** Throws unless entries are positive, sorted, and sum to 1 within 1e-12. */
    void validate() const;
};

/** Total variation distance ½·Σ|p−q| between two histograms. */
double tv_distance(const TargetHistogram& p, const TargetHistogram& q);

/** Total variation distance between two dense distributions of equal size. */
double tv_distance(const std::vector<double>& p, const std::vector<double>& q);

}  // namespace genpas
