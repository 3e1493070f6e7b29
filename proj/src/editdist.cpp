#include "genpas/editdist.hpp"

#include <algorithm>
#include <vector>

namespace genpas {

std::size_t edit_distance(std::span<const ItemId> a, std::span<const ItemId> b) {
    if (a.size() > b.size()) std::swap(a, b);  // keep the rows short
    const std::size_t n = a.size(), m = b.size();
    if (n == 0) return m;
    std::vector<std::uint32_t> row(n + 1);
    for (std::size_t i = 0; i <= n; ++i) row[i] = static_cast<std::uint32_t>(i);
    for (std::size_t j = 1; j <= m; ++j) {
        std::uint32_t diag = row[0];
        row[0] = static_cast<std::uint32_t>(j);
        const ItemId bj = b[j - 1];
        for (std::size_t i = 1; i <= n; ++i) {
            const std::uint32_t sub = diag + (a[i - 1] != bj ? 1u : 0u);
            diag = row[i];
            row[i] = std::min({row[i] + 1u, row[i - 1] + 1u, sub});
        }
    }
    return row[n];
}

double similarity(std::span<const ItemId> a, std::span<const ItemId> b, std::size_t cap) {
    if (a.empty() || b.empty()) throw Error("similarity: sequences must be nonempty");
    if (cap == 0) throw Error("similarity: cap must be positive");
    if (a.size() > cap) a = a.subspan(a.size() - cap);
    if (b.size() > cap) b = b.subspan(b.size() - cap);
    const std::size_t d = edit_distance(a, b);
    const std::size_t longer = std::max(a.size(), b.size());
    return 1.0 - static_cast<double>(d) / static_cast<double>(longer);
}

}  // namespace genpas
