#pragma once

#include <cstddef>
#include <span>

#include "genpas/common.hpp"

namespace genpas {

/** Levenshtein distance with unit costs (two-row dynamic program). */
std::size_t edit_distance(std::span<const ItemId> a, std::span<const ItemId> b);

inline constexpr std::size_t kSimilarityCap = 512;

/**
 * 1 − EditDist(a, b) / max(|a|, |b|). Sequences longer than cap items are
 * truncated to their most recent cap items first. Both inputs must be nonempty.
 */
double similarity(std::span<const ItemId> a, std::span<const ItemId> b,
                  std::size_t cap = kSimilarityCap);

}  // namespace genpas
