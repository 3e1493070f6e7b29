#include "genpas/histogram.hpp"

#include <algorithm>
#include <cmath>

namespace genpas {

double TargetHistogram::prob(ItemId item) const {
    auto it = std::lower_bound(probs.begin(), probs.end(), item,
                               [](const auto& e, ItemId x) { return e.first < x; });
    if (it == probs.end() || it->first != item) return 0.0;
    return it->second;
}

TargetHistogram TargetHistogram::from_weights(const std::map<ItemId, double>& weights) {
    double total = 0.0;
    for (const auto& [item, w] : weights) {
        if (w < 0.0) throw Error("TargetHistogram: negative weight");
        total += w;
    }
    if (!(total > 0.0)) throw Error("TargetHistogram: zero total weight");
    TargetHistogram h;
    h.probs.reserve(weights.size());
    for (const auto& [item, w] : weights)
        if (w > 0.0) h.probs.emplace_back(item, w / total);
    return h;
}

void TargetHistogram::validate() const {
    double sum = 0.0;
    ItemId prev = 0;
    bool first = true;
    for (const auto& [item, p] : probs) {
        if (!first && item <= prev) throw Error("TargetHistogram: entries not sorted");
        if (!(p > 0.0)) throw Error("TargetHistogram: non-positive entry");
        prev = item;
        first = false;
        sum += p;
    }
    if (std::fabs(sum - 1.0) > 1e-12)
        throw Error("TargetHistogram: probabilities sum to " + format_double(sum));
}

double tv_distance(const TargetHistogram& p, const TargetHistogram& q) {
    double acc = 0.0;
    std::size_t i = 0, j = 0;
    while (i < p.probs.size() || j < q.probs.size()) {
        if (j == q.probs.size() || (i < p.probs.size() && p.probs[i].first < q.probs[j].first)) {
            acc += p.probs[i++].second;
        } else if (i == p.probs.size() || q.probs[j].first < p.probs[i].first) {
            acc += q.probs[j++].second;
        } else {
            acc += std::fabs(p.probs[i].second - q.probs[j].second);
            ++i;
            ++j;
        }
    }
    return 0.5 * acc;
}

double tv_distance(const std::vector<double>& p, const std::vector<double>& q) {
    if (p.size() != q.size()) throw Error("tv_distance: size mismatch");
    double acc = 0.0;
    for (std::size_t i = 0; i < p.size(); ++i) acc += std::fabs(p[i] - q[i]);
    return 0.5 * acc;
}

}  // namespace genpas
