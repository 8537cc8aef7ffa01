// Command-line front end: compress/decompress indexed images, search palette
// orders, and run the benchmark grid.

#include <cstdio>
#include <fstream>
#include <iostream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "paletteforge/baselines.hpp"
#include "paletteforge/bench.hpp"
#include "paletteforge/codec.hpp"
#include "paletteforge/ica.hpp"
#include "paletteforge/ppm.hpp"
#include "paletteforge/quantize.hpp"

namespace pf = paletteforge;

namespace {

constexpr int kExitFailure = 1;
constexpr int kExitUsage = 2;
constexpr int kExitCorruptChecksum = 3;
constexpr int kExitMalformedHeader = 4;
constexpr int kExitTruncatedPayload = 5;

std::vector<std::uint8_t> read_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw pf::IoError("cannot open " + path);
    std::vector<std::uint8_t> bytes((std::istreambuf_iterator<char>(in)),
                                    std::istreambuf_iterator<char>());
    return bytes;
}

void write_file(const std::string& path, const std::vector<std::uint8_t>& bytes) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw pf::IoError("cannot open " + path + " for writing");
    out.write(reinterpret_cast<const char*>(bytes.data()), std::streamsize(bytes.size()));
    if (!out) throw pf::IoError("write failed for " + path);
}

pf::IndexedImage prepare_indexed(const pf::RgbImage& rgb, std::size_t colors) {
    if (pf::distinct_color_count(rgb) <= colors) return pf::extract_indexed(rgb);
    return pf::quantize_median_cut(rgb, colors);
}

pf::Permutation make_order(const pf::IndexedImage& img, pf::baselines::Strategy strategy,
                           std::uint64_t seed, pf::ScanMode mode) {
    using pf::baselines::Strategy;
    switch (strategy) {
        case Strategy::identity: return pf::baselines::identity_order(img);
        case Strategy::random: {
            pf::Rng rng(seed);
            return pf::baselines::random_order(img, rng);
        }
        case Strategy::luminance: return pf::baselines::luminance_order(img);
        case Strategy::greedy_chain: return pf::baselines::greedy_chain_order(img);
        case Strategy::brute_force: return pf::baselines::brute_force_optimal(img, mode).first;
        case Strategy::ica: {
            pf::ica::IcaParams params;
            params.seed = seed;
            return pf::ica::run(img, params, mode).best.genome;
        }
    }
    throw pf::BadParams("unhandled strategy");
}

int cmd_compress(const std::string& input, const std::string& output, std::size_t colors,
                 const std::string& strategy_name, std::uint64_t seed,
                 const std::string& scan_name) {
    const auto strategy = pf::baselines::parse_strategy(strategy_name);
    const auto mode = pf::parse_scan_mode(scan_name);

    const pf::RgbImage rgb = pf::load_ppm(input);
    const pf::IndexedImage indexed = prepare_indexed(rgb, colors);
    const pf::Permutation perm = make_order(indexed, strategy, seed, mode);

    const std::vector<std::uint8_t> blob = pf::codec::encode(pf::apply_permutation(indexed, perm), mode);
    write_file(output, blob);

    const pf::codec::SizeReport report = pf::codec::size_report(indexed, perm, mode);
    std::printf("%llu,%llu,%.6f,%.6f\n", (unsigned long long)report.raw_bits,
                (unsigned long long)report.compressed_bits, report.entropy_bound_bits,
                report.compression_rate);
    return 0;
}

int cmd_decompress(const std::string& input, const std::string& output) {
    const std::vector<std::uint8_t> blob = read_file(input);
    const pf::IndexedImage img = pf::codec::decode(blob);
    pf::write_ppm(output, pf::render(img));
    return 0;
}

int cmd_oracle(const std::string& input, std::size_t colors, const std::string& scan_name) {
    const auto mode = pf::parse_scan_mode(scan_name);
    const pf::RgbImage rgb = pf::load_ppm(input);
    const pf::IndexedImage indexed = prepare_indexed(rgb, colors);

    const auto [perm, cost] = pf::baselines::brute_force_optimal(indexed, mode);
    const std::int64_t identity_cost =
        pf::CooccurrenceMatrix::from_image(indexed, mode).evaluate(
            pf::baselines::identity_order(indexed));

    std::printf("optimal_cost=%lld identity_cost=%lld map=", (long long)cost,
                (long long)identity_cost);
    for (std::size_t i = 0; i < perm.size(); ++i)
        std::printf(i + 1 == perm.size() ? "%u\n" : "%u ", unsigned(perm.map[i]));
    return 0;
}

int cmd_bench(const std::string& config_path, const std::string& out_override) {
    pf::bench::ExperimentConfig config = pf::bench::parse_config_file(config_path);
    if (!out_override.empty()) config.output_dir = out_override;

    const pf::bench::BenchResult result = pf::bench::run_bench(config);
    pf::bench::write_reports(result, config.output_dir);

    std::size_t failed = 0;
    for (const auto& row : result.rows)
        if (!row.error.empty()) ++failed;
    std::printf("bench: %zu cells, %zu failed, reports in %s\n", result.rows.size(), failed,
                config.output_dir.string().c_str());
    return result.all_ok ? 0 : kExitFailure;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Lossless indexed-color compressor with palette-order search"};
    app.require_subcommand(1);

    std::string input, output, config_path, out_dir;
    std::size_t colors = 64;
    std::string strategy = "ica";
    std::string scan = "serpentine";
    std::uint64_t seed = 1;

    CLI::App* compress = app.add_subcommand("compress", "Compress a P6 PPM into a .pfz container");
    compress->add_option("input", input, "input .ppm")->required();
    compress->add_option("output", output, "output .pfz")->required();
    compress->add_option("--colors", colors, "palette size (quantizes when needed)");
    compress->add_option("--strategy", strategy,
                         "identity|random|luminance|greedy_chain|brute_force|ica");
    compress->add_option("--seed", seed, "RNG seed for seeded strategies");
    compress->add_option("--scan", scan, "serpentine|rowmajor");

    CLI::App* decompress = app.add_subcommand("decompress", "Recover the PPM from a .pfz container");
    decompress->add_option("input", input, "input .pfz")->required();
    decompress->add_option("output", output, "output .ppm")->required();

    CLI::App* oracle = app.add_subcommand("oracle", "Exhaustive optimum for palettes of <= 8 colors");
    oracle->add_option("input", input, "input .ppm")->required();
    oracle->add_option("--colors", colors, "palette size");
    oracle->add_option("--scan", scan, "serpentine|rowmajor");

    CLI::App* bench = app.add_subcommand("bench", "Run the benchmark grid from a config file");
    bench->add_option("--config", config_path, "key = value config file")->required();
    bench->add_option("--out", out_dir, "output directory (overrides config)");

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        std::cerr << e.what() << "\n";
        return kExitUsage;
    }

    try {
        if (compress->parsed()) return cmd_compress(input, output, colors, strategy, seed, scan);
        if (decompress->parsed()) return cmd_decompress(input, output);
        if (oracle->parsed()) return cmd_oracle(input, colors, scan);
        if (bench->parsed()) return cmd_bench(config_path, out_dir);
    } catch (const pf::BadParams& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitUsage;
    } catch (const pf::CorruptChecksum& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitCorruptChecksum;
    } catch (const pf::MalformedHeader& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitMalformedHeader;
    } catch (const pf::TruncatedPayload& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitTruncatedPayload;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitFailure;
    }
    return kExitUsage;
}
