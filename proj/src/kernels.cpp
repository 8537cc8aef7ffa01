#include "paletteforge/kernels.hpp"

#include <algorithm>
#include <cstdlib>
#include <string>

#ifdef _OPENMP
#include <omp.h>
#endif

namespace paletteforge::kernels {

int worker_count() {
#ifdef _OPENMP
    int workers = omp_get_max_threads();
#else
    int workers = 1;
#endif
    if (const char* env = std::getenv("PALETTE_FORGE_THREADS"); env && *env) {
        char* end = nullptr;
        const long parsed = std::strtol(env, &end, 10);
        if (end != env && parsed > 0) workers = int(std::min(parsed, 1024L));
        // 0 (or junk) keeps the OpenMP default
    }
    return std::max(workers, 1);
}

namespace {

bool inside_parallel_region() {
#ifdef _OPENMP
    return omp_in_parallel() != 0;
#else
    return false;
#endif
}

}  // namespace

void evaluate_costs_serial(const CooccurrenceMatrix& matrix, std::span<const Permutation> genomes,
                           std::span<std::int64_t> costs) {
    for (std::size_t i = 0; i < genomes.size(); ++i) costs[i] = matrix.evaluate(genomes[i]);
}

void evaluate_costs_parallel(const CooccurrenceMatrix& matrix,
                             std::span<const Permutation> genomes, std::span<std::int64_t> costs,
                             int workers) {
#ifdef _OPENMP
#pragma omp parallel for schedule(static) num_threads(workers)
    for (std::int64_t i = 0; i < std::int64_t(genomes.size()); ++i)
        costs[std::size_t(i)] = matrix.evaluate(genomes[std::size_t(i)]);
#else
    (void)workers;
    evaluate_costs_serial(matrix, genomes, costs);
#endif
}

void evaluate_costs(const CooccurrenceMatrix& matrix, std::span<const Permutation> genomes,
                    std::span<std::int64_t> costs) {
    const int workers = worker_count();
    if (workers <= 1 || genomes.size() < 2 || inside_parallel_region())
        evaluate_costs_serial(matrix, genomes, costs);
    else
        evaluate_costs_parallel(matrix, genomes, costs, workers);
}

namespace {

// Strict total order on candidates; the global minimum is independent of
// how the enumeration is partitioned.
bool better(std::int64_t cost, const Permutation& map, const SearchResult& best) {
    if (cost != best.cost) return cost < best.cost;
    return map.map < best.best.map;
}

// Cheapest permutation with the given leading symbol, tails visited in
// lexicographic order.
SearchResult best_with_leading(const CooccurrenceMatrix& matrix, std::uint8_t leading) {
    const std::size_t m = matrix.palette_size();
    Permutation perm;
    perm.map.reserve(m);
    perm.map.push_back(leading);
    for (std::size_t v = 0; v < m; ++v)
        if (v != leading) perm.map.push_back(std::uint8_t(v));

    SearchResult best{perm, matrix.evaluate(perm)};
    while (std::next_permutation(perm.map.begin() + 1, perm.map.end())) {
        const std::int64_t cost = matrix.evaluate(perm);
        if (better(cost, perm, best)) best = SearchResult{perm, cost};
    }
    return best;
}

}  // namespace

SearchResult exhaustive_best_serial(const CooccurrenceMatrix& matrix) {
    const std::size_t m = matrix.palette_size();
    Permutation perm = Permutation::identity(m);
    SearchResult best{perm, matrix.evaluate(perm)};
    while (std::next_permutation(perm.map.begin(), perm.map.end())) {
        const std::int64_t cost = matrix.evaluate(perm);
        if (better(cost, perm, best)) best = SearchResult{perm, cost};
    }
    return best;
}

SearchResult exhaustive_best_parallel(const CooccurrenceMatrix& matrix, int workers) {
    const std::size_t m = matrix.palette_size();
    if (m <= 2) return exhaustive_best_serial(matrix);

    std::vector<SearchResult> per_leading(m);
#ifdef _OPENMP
#pragma omp parallel for schedule(dynamic) num_threads(workers)
#else
    (void)workers;
#endif
    for (std::int64_t v = 0; v < std::int64_t(m); ++v)
        per_leading[std::size_t(v)] = best_with_leading(matrix, std::uint8_t(v));

    SearchResult best = per_leading[0];
    for (std::size_t v = 1; v < m; ++v)
        if (better(per_leading[v].cost, per_leading[v].best, best)) best = per_leading[v];
    return best;
}

SearchResult exhaustive_best(const CooccurrenceMatrix& matrix) {
    const int workers = worker_count();
    if (workers <= 1 || matrix.palette_size() < 4 || inside_parallel_region())
        return exhaustive_best_serial(matrix);
    return exhaustive_best_parallel(matrix, workers);
}

}  // namespace paletteforge::kernels
