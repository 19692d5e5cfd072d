#pragma once

// Concept enumeration kernels. Both return the set of all intents of a classification
// (unsorted for the parallel kernel); ConceptLattice sorts them into canonical order.

#include "lot/exec.hpp"
#include "lot/fca/classification.hpp"

#include <cstddef>
#include <functional>
#include <optional>
#include <vector>

namespace lot::fca {

inline constexpr std::size_t default_concept_cap = 100000;

/// Serial reference: NextClosure, intents produced in lectic order.
std::vector<Bits> intents_next_closure(const Classification& ctx, std::size_t cap = default_concept_cap);

/// OpenMP Close-by-One; top-level branches run as independent tasks.
std::vector<Bits> intents_close_by_one(const Classification& ctx, std::size_t cap = default_concept_cap);

inline std::vector<Bits> enumerate_intents(const Classification& ctx, Exec exec,
                                           std::size_t cap = default_concept_cap) {
    return exec == Exec::serial ? intents_next_closure(ctx, cap) : intents_close_by_one(ctx, cap);
}

/// Smallest index in [0, n) for which `fails` returns true. The parallel variant checks
/// chunks concurrently and still reports the minimum.
std::optional<std::size_t> find_first(std::size_t n, const std::function<bool(std::size_t)>& fails, Exec exec);

}  // namespace lot::fca
