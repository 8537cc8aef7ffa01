#pragma once

#include <cstdint>
#include <span>

#include "paletteforge/cooccurrence.hpp"
#include "paletteforge/image.hpp"

namespace paletteforge::kernels {

/// Effective worker count. PALETTE_FORGE_THREADS caps it; 0 or unset means
/// the OpenMP default. Always >= 1.
int worker_count();

/// Serial reference: costs[i] = matrix.evaluate(genomes[i]).
void evaluate_costs_serial(const CooccurrenceMatrix& matrix,
                           std::span<const Permutation> genomes,
                           std::span<std::int64_t> costs);

/// OpenMP variant. Output order matches input order, so results are
/// identical to the serial reference for any worker count.
void evaluate_costs_parallel(const CooccurrenceMatrix& matrix,
                             std::span<const Permutation> genomes,
                             std::span<std::int64_t> costs, int workers);

/// Dispatches to the parallel variant when it is worth it and we are not
/// already inside a parallel region.
void evaluate_costs(const CooccurrenceMatrix& matrix, std::span<const Permutation> genomes,
                    std::span<std::int64_t> costs);

struct SearchResult {
    Permutation best;
    std::int64_t cost = 0;
};

/// Serial reference: enumerates all M! permutations in lexicographic order
/// and keeps the cheapest, ties resolved toward the lexicographically
/// smallest map.
SearchResult exhaustive_best_serial(const CooccurrenceMatrix& matrix);

/// OpenMP variant partitioned by the leading symbol. The (cost, map) total
/// order makes the reduction independent of the partitioning.
SearchResult exhaustive_best_parallel(const CooccurrenceMatrix& matrix, int workers);

SearchResult exhaustive_best(const CooccurrenceMatrix& matrix);

}  // namespace paletteforge::kernels
