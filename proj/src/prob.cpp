#include "genpas/prob.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "genpas/common.hpp"

namespace genpas {

double ProbVector::prob(std::uint32_t v) const {
    auto it = std::lower_bound(entries.begin(), entries.end(), v,
                               [](const auto& e, std::uint32_t x) { return e.first < x; });
    if (it == entries.end() || it->first != v) return 0.0;
    return it->second;
}

void ProbVector::validate() const {
    double sum = 0.0;
    for (const auto& [v, p] : entries) {
        if (p < 0.0) throw Error("ProbVector: negative probability");
        sum += p;
    }
    if (std::fabs(sum - 1.0) > 1e-12) throw Error("ProbVector: probabilities sum to " + format_double(sum));
}

std::uint32_t ProbVector::sample(Rng& rng) const {
    if (entries.empty()) throw Error("ProbVector: sampling from empty distribution");
    const double u = rng.uniform01();
    double acc = 0.0;
    for (const auto& [v, p] : entries) {
        acc += p;
        if (u < acc) return v;
    }
    return entries.back().first;  // guard against accumulated rounding
}

ProbVector power_weights(const std::vector<std::pair<std::uint32_t, double>>& bases,
                         const ExtExponent& e) {
    if (bases.empty()) throw Error("power_weights: empty base set");
    ProbVector out;
    out.entries.reserve(bases.size());
    for (const auto& [v, b] : bases)
        if (!(b > 0.0)) throw Error("power_weights: bases must be positive");

    if (!e.is_finite()) {
        // Symbolic limit: uniform over the arg-max (+inf) or arg-min (-inf) bases.
        const bool take_max = e.kind() == ExtExponent::Kind::PosInf;
        double best = bases.front().second;
        for (const auto& [v, b] : bases) best = take_max ? std::max(best, b) : std::min(best, b);
        std::size_t hits = 0;
        for (const auto& [v, b] : bases)
            if (b == best) ++hits;
        for (const auto& [v, b] : bases)
            if (b == best) out.entries.emplace_back(v, 1.0 / static_cast<double>(hits));
        return out;
    }

    const double exp_v = e.value();
    double max_base = 0.0;
    for (const auto& [v, b] : bases) max_base = std::max(max_base, b);
    const bool log_space = std::fabs(exp_v) > 8.0 || max_base > 1e3;

    std::vector<double> w(bases.size());
    if (log_space) {
        double max_log = -std::numeric_limits<double>::infinity();
        for (std::size_t i = 0; i < bases.size(); ++i) {
            w[i] = exp_v * std::log(bases[i].second);
            max_log = std::max(max_log, w[i]);
        }
        for (double& x : w) x = std::exp(x - max_log);
    } else {
        for (std::size_t i = 0; i < bases.size(); ++i) w[i] = std::pow(bases[i].second, exp_v);
    }
    double sum = 0.0;
    for (double x : w) sum += x;
    if (!(sum > 0.0)) throw Error("power_weights: degenerate weight sum");
    for (std::size_t i = 0; i < bases.size(); ++i) out.entries.emplace_back(bases[i].first, w[i] / sum);
    return out;
}

}  // namespace genpas
