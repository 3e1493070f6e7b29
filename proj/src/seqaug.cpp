#include "genpas/seqaug.hpp"

#include <algorithm>

namespace genpas {

SeqAugKind parse_seqaug_kind(const std::string& name) {
    if (name == "insert") return SeqAugKind::Insert;
    if (name == "delete") return SeqAugKind::Delete;
    if (name == "replace") return SeqAugKind::Replace;
    if (name == "reorder") return SeqAugKind::Reorder;
    if (name == "sample") return SeqAugKind::Sample;
    throw UsageError("unknown augmentation op '" + name + "'");
}

std::string seqaug_kind_name(SeqAugKind k) {
    switch (k) {
        case SeqAugKind::Insert: return "insert";
        case SeqAugKind::Delete: return "delete";
        case SeqAugKind::Replace: return "replace";
        case SeqAugKind::Reorder: return "reorder";
        default: return "sample";
    }
}

std::uint32_t default_delta(std::size_t input_len) {
    return std::max<std::uint32_t>(2, static_cast<std::uint32_t>(input_len / 5));
}

std::vector<ItemId> aug_insert(const std::vector<ItemId>& x, ItemId universe, Rng& rng) {
    if (x.empty()) throw Error("insert: input must be nonempty");
    if (universe == 0) throw Error("insert: empty item universe");
    // Gap convention: position p in {1..|x|} inserts before element p.
    const auto pos = static_cast<std::size_t>(rng.below(x.size()));
    const auto item = static_cast<ItemId>(rng.below(universe));
    std::vector<ItemId> out;
    out.reserve(x.size() + 1);
    out.insert(out.end(), x.begin(), x.begin() + pos);
    out.push_back(item);
    out.insert(out.end(), x.begin() + pos, x.end());
    return out;
}

std::vector<ItemId> aug_delete(const std::vector<ItemId>& x, Rng& rng, std::uint64_t* warn_count) {
    if (x.empty()) throw Error("delete: input must be nonempty");
    if (x.size() == 1) {
        if (warn_count) ++*warn_count;
        return x;  // deleting would leave an empty input
    }
    const auto pos = static_cast<std::size_t>(rng.below(x.size()));
    std::vector<ItemId> out;
    out.reserve(x.size() - 1);
    out.insert(out.end(), x.begin(), x.begin() + pos);
    out.insert(out.end(), x.begin() + pos + 1, x.end());
    return out;
}

std::vector<ItemId> aug_replace(const std::vector<ItemId>& x, ItemId universe, Rng& rng) {
    if (x.empty()) throw Error("replace: input must be nonempty");
    if (universe == 0) throw Error("replace: empty item universe");
    const auto pos = static_cast<std::size_t>(rng.below(x.size()));
    const auto item = static_cast<ItemId>(rng.below(universe));
    std::vector<ItemId> out = x;
    out[pos] = item;
    return out;
}

std::vector<ItemId> aug_reorder(const std::vector<ItemId>& x, std::uint32_t delta, Rng& rng) {
    if (x.empty()) throw Error("reorder: input must be nonempty");
    if (delta < 1 || delta > x.size()) throw Error("reorder: delta must be in [1, input length]");
    const auto start = static_cast<std::size_t>(rng.below(x.size() - delta + 1));
    std::vector<ItemId> out = x;
    // Fisher-Yates over the window only.
    for (std::size_t i = delta; i > 1; --i) {
        const auto j = static_cast<std::size_t>(rng.below(i));
        std::swap(out[start + i - 1], out[start + j]);
    }
    return out;
}

std::vector<ItemId> aug_sample(const std::vector<ItemId>& x, double omega, Rng& rng) {
    if (x.empty()) throw Error("sample: input must be nonempty");
    if (!(omega > 0.0 && omega < 1.0)) throw Error("sample: omega must lie strictly in (0,1)");
    for (int attempt = 0; attempt < 8; ++attempt) {
        std::vector<ItemId> out;
        out.reserve(x.size());
        for (ItemId item : x)
            if (rng.uniform01() < omega) out.push_back(item);
        if (!out.empty()) return out;
    }
    return {x[static_cast<std::size_t>(rng.below(x.size()))]};
}

std::vector<ItemId> apply_seqaug(const SeqAugSpec& spec, const std::vector<ItemId>& x,
                                 ItemId universe, Rng& rng, std::uint64_t* warn_count) {
    switch (spec.kind) {
        case SeqAugKind::Insert: return aug_insert(x, universe, rng);
        case SeqAugKind::Delete: return aug_delete(x, rng, warn_count);
        case SeqAugKind::Replace: return aug_replace(x, universe, rng);
        case SeqAugKind::Reorder: {
            std::uint32_t d = spec.delta;
            if (d == 0)  // per-input default, clipped to short inputs
                d = std::min<std::uint32_t>(default_delta(x.size()),
                                            static_cast<std::uint32_t>(x.size()));
            return aug_reorder(x, d, rng);
        }
        default: return aug_sample(x, spec.omega, rng);
    }
}

}  // namespace genpas
