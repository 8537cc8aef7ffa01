// Timing harness for the parallel kernels against their serial references.
// Synthetic inputs only; correctness of the pairs is covered by the tests.

#include <chrono>
#include <cstdio>
#include <string>
#include <vector>

#include "paletteforge/cooccurrence.hpp"
#include "paletteforge/ica.hpp"
#include "paletteforge/kernels.hpp"
#include "paletteforge/rng.hpp"

namespace pf = paletteforge;

namespace {

double seconds_since(std::chrono::steady_clock::time_point start) {
    return std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
}

// Random smooth-ish index field so the co-occurrence matrix is dense enough
// to resemble real images.
pf::CooccurrenceMatrix synthetic_matrix(std::size_t palette_size, std::size_t side,
                                        std::uint64_t seed) {
    pf::Rng rng(seed);
    pf::ScanSequence seq;
    seq.values.reserve(side * side);
    int level = int(pf::uniform_below(rng, palette_size));
    for (std::size_t i = 0; i < side * side; ++i) {
        const int step = int(pf::uniform_below(rng, 7)) - 3;
        level = std::clamp(level + step, 0, int(palette_size) - 1);
        seq.values.push_back(std::uint8_t(level));
    }
    return pf::CooccurrenceMatrix::from_sequence(seq, palette_size);
}

void bench_evaluate(std::size_t palette_size, std::size_t population, int repeats) {
    const pf::CooccurrenceMatrix matrix = synthetic_matrix(palette_size, 255, 7);

    pf::Rng rng(11);
    std::vector<pf::Permutation> genomes;
    genomes.reserve(population);
    for (std::size_t i = 0; i < population; ++i)
        genomes.push_back(pf::random_permutation(palette_size, rng));
    std::vector<std::int64_t> serial_costs(population), parallel_costs(population);

    auto start = std::chrono::steady_clock::now();
    for (int r = 0; r < repeats; ++r)
        pf::kernels::evaluate_costs_serial(matrix, genomes, serial_costs);
    const double serial_s = seconds_since(start);

    const int workers = pf::kernels::worker_count();
    start = std::chrono::steady_clock::now();
    for (int r = 0; r < repeats; ++r)
        pf::kernels::evaluate_costs_parallel(matrix, genomes, parallel_costs, workers);
    const double parallel_s = seconds_since(start);

    const bool match = serial_costs == parallel_costs;
    std::printf("evaluate_costs   M=%-3zu pop=%-5zu reps=%-4d serial %8.3f ms   omp(%d) %8.3f ms   "
                "speedup %.2fx   %s\n",
                palette_size, population, repeats, serial_s * 1e3, workers, parallel_s * 1e3,
                serial_s / parallel_s, match ? "match" : "MISMATCH");
}

void bench_exhaustive(std::size_t palette_size) {
    const pf::CooccurrenceMatrix matrix = synthetic_matrix(palette_size, 127, 13);

    auto start = std::chrono::steady_clock::now();
    const auto serial = pf::kernels::exhaustive_best_serial(matrix);
    const double serial_s = seconds_since(start);

    const int workers = pf::kernels::worker_count();
    start = std::chrono::steady_clock::now();
    const auto parallel = pf::kernels::exhaustive_best_parallel(matrix, workers);
    const double parallel_s = seconds_since(start);

    const bool match = serial.cost == parallel.cost && serial.best.map == parallel.best.map;
    std::printf("exhaustive_best  M=%-3zu %-15s serial %8.3f ms   omp(%d) %8.3f ms   "
                "speedup %.2fx   %s\n",
                palette_size, "", serial_s * 1e3, workers, parallel_s * 1e3,
                serial_s / parallel_s, match ? "match" : "MISMATCH");
}

void bench_optimizer(std::size_t palette_size) {
    const pf::CooccurrenceMatrix matrix = synthetic_matrix(palette_size, 255, 29);
    pf::ica::IcaParams params;
    params.max_iters = 120;
    params.stall_window = 120;  // fixed-length run for a fair timing

    auto start = std::chrono::steady_clock::now();
    const auto trace = pf::ica::optimize(matrix, params);
    const double total_s = seconds_since(start);
    std::printf("ica::optimize    M=%-3zu iters=%-4zu workers=%d   %8.3f ms   best=%lld\n",
                palette_size, trace.iterations_run, pf::kernels::worker_count(), total_s * 1e3,
                (long long)trace.best.cost);
}

}  // namespace

int main(int argc, char** argv) {
    int repeats = 200;
    if (argc > 1) repeats = std::max(1, std::atoi(argv[1]));

    std::printf("workers: %d (PALETTE_FORGE_THREADS=%s)\n\n", pf::kernels::worker_count(),
                std::getenv("PALETTE_FORGE_THREADS") ? std::getenv("PALETTE_FORGE_THREADS") : "");

    bench_evaluate(16, 512, repeats);
    bench_evaluate(64, 512, repeats);
    bench_evaluate(256, 256, repeats / 2);
    bench_exhaustive(8);
    bench_exhaustive(10);
    bench_optimizer(64);
    bench_optimizer(256);
    return 0;
}
