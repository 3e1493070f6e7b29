#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "genpas/common.hpp"
#include "genpas/rng.hpp"

namespace genpas {

enum class SeqAugKind { Insert, Delete, Replace, Reorder, Sample };

SeqAugKind parse_seqaug_kind(const std::string& name);
std::string seqaug_kind_name(SeqAugKind k);

/** Operator selection plus its parameters (delta for reorder, omega for sample). */
struct SeqAugSpec {
    SeqAugKind kind = SeqAugKind::Insert;
    std::uint32_t delta = 0;  // 0 = per-input default max(2, |x|/5)
    double omega = 0.9;
};

/** Default reorder window for an input of the given length. */
std::uint32_t default_delta(std::size_t input_len);

/** Inserts one uniform item from [0, universe) at a uniform gap in {1..|x|}. */
std::vector<ItemId> aug_insert(const std::vector<ItemId>& x, ItemId universe, Rng& rng);

/**
 * Removes the item at a uniform position. Length-1 inputs are returned
 * unchanged (an empty input cannot form a training pair); when warn_count is
 * given it is incremented on that degenerate path.
 */
std::vector<ItemId> aug_delete(const std::vector<ItemId>& x, Rng& rng,
                               std::uint64_t* warn_count = nullptr);

/** Substitutes the item at a uniform position with a uniform item. */
std::vector<ItemId> aug_replace(const std::vector<ItemId>& x, ItemId universe, Rng& rng);

/** Shuffles one uniformly placed window of length delta; 1 <= delta <= |x|. */
std::vector<ItemId> aug_reorder(const std::vector<ItemId>& x, std::uint32_t delta, Rng& rng);

/**
 * Keeps each item independently with probability omega in (0,1). An empty
 * result is retried up to 8 times, then one uniform item is kept.
 */
std::vector<ItemId> aug_sample(const std::vector<ItemId>& x, double omega, Rng& rng);

/** Applies the selected operator to one input sequence. */
std::vector<ItemId> apply_seqaug(const SeqAugSpec& spec, const std::vector<ItemId>& x,
                                 ItemId universe, Rng& rng, std::uint64_t* warn_count = nullptr);

}  // namespace genpas
