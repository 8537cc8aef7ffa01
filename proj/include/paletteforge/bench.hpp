#pragma once

#include <cstdint>
#include <filesystem>
#include <iosfwd>
#include <string>
#include <vector>

#include "paletteforge/baselines.hpp"
#include "paletteforge/ica.hpp"
#include "paletteforge/scan.hpp"

namespace paletteforge::bench {

/// Benchmark grid description, parsed from flat "key = value" text.
struct ExperimentConfig {
    std::vector<std::filesystem::path> images;
    std::vector<std::size_t> colors = {16, 64};
    std::vector<baselines::Strategy> strategies = {
        baselines::Strategy::identity,    baselines::Strategy::random,
        baselines::Strategy::luminance,   baselines::Strategy::greedy_chain,
        baselines::Strategy::ica,
    };
    std::size_t repetitions = 1;  // seeds base_seed .. base_seed + repetitions - 1
    std::uint64_t base_seed = 1;
    std::filesystem::path output_dir = "bench_out";
    ScanMode scan_mode = ScanMode::serpentine;
    ica::IcaParams ica_params;
};

ExperimentConfig parse_config(std::istream& in);                       // throws BadParams
ExperimentConfig parse_config_file(const std::filesystem::path& path); // throws IoError too

/// One grid cell result. Timing is kept out of this row so the CSV reports
/// stay byte-reproducible; it is written to a separate timings file.
struct BenchRow {
    std::string image;
    std::size_t colors = 0;
    std::string strategy;
    std::uint64_t seed = 0;
    std::int64_t cost = 0;
    double entropy = 0.0;
    std::uint64_t compressed_bits = 0;
    double compression_rate = 0.0;
    std::size_t iterations = 0;  // optimizer iterations; 0 for closed-form strategies
    std::string error;           // empty on success
};

struct SummaryRow {
    std::string image;
    std::size_t colors = 0;
    std::string strategy;
    std::int64_t mean_cost = 0;  // rounded to nearest
    std::int64_t best_cost = 0;
    double mean_entropy = 0.0;
    double mean_compression_rate = 0.0;
    double best_compression_rate = 0.0;
};

struct TimingRow {
    std::string image;
    std::size_t colors = 0;
    std::string strategy;
    std::uint64_t seed = 0;
    std::int64_t wall_ms = 0;
};

struct BenchResult {
    std::vector<BenchRow> rows;        // sorted by (image, colors, strategy, seed)
    std::vector<SummaryRow> summary;   // sorted by (image, colors, strategy)
    std::vector<TimingRow> timings;
    bool all_ok = true;
};

/// Runs the whole grid. Cells execute independently (parallel when workers
/// allow) and are merged in sorted order, so the result is deterministic
/// for a given config.
BenchResult run_bench(const ExperimentConfig& config);

std::string to_csv(const std::vector<BenchRow>& rows);
std::string to_csv(const std::vector<SummaryRow>& rows);
std::string to_csv(const std::vector<TimingRow>& rows);

/// Writes bench.csv, summary.csv and timings.csv into config.output_dir.
void write_reports(const BenchResult& result, const std::filesystem::path& dir);

}  // namespace paletteforge::bench
