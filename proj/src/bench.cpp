#include "paletteforge/bench.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <map>
#include <sstream>
#include <tuple>

#include "paletteforge/codec.hpp"
#include "paletteforge/kernels.hpp"
#include "paletteforge/ppm.hpp"
#include "paletteforge/quantize.hpp"

#ifdef _OPENMP
#include <omp.h>
#endif

namespace paletteforge::bench {

namespace {

std::string trim(const std::string& s) {
    const auto begin = s.find_first_not_of(" \t\r\n");
    if (begin == std::string::npos) return "";
    const auto end = s.find_last_not_of(" \t\r\n");
    return s.substr(begin, end - begin + 1);
}

std::vector<std::string> split_list(const std::string& s) {
    std::vector<std::string> items;
    std::stringstream stream(s);
    std::string item;
    while (std::getline(stream, item, ',')) {
        item = trim(item);
        if (!item.empty()) items.push_back(item);
    }
    return items;
}

std::uint64_t parse_uint(const std::string& key, const std::string& value) {
    try {
        std::size_t used = 0;
        const unsigned long long v = std::stoull(value, &used);
        if (used != value.size()) throw BadParams("");
        return v;
    } catch (const std::exception&) {
        throw BadParams("config: bad integer for " + key + ": " + value);
    }
}

double parse_real(const std::string& key, const std::string& value) {
    try {
        std::size_t used = 0;
        const double v = std::stod(value, &used);
        if (used != value.size()) throw BadParams("");
        return v;
    } catch (const std::exception&) {
        throw BadParams("config: bad number for " + key + ": " + value);
    }
}

std::string format_real(double v) {
    char buf[64];
    std::snprintf(buf, sizeof buf, "%.6f", v);
    return buf;
}

std::string sanitize(std::string message) {
    for (char& c : message)
        if (c == ',' || c == '\n' || c == '\r') c = ';';
    return message;
}

}  // namespace

ExperimentConfig parse_config(std::istream& in) {
    ExperimentConfig config;
    std::string line;
    std::size_t line_no = 0;
    while (std::getline(in, line)) {
        ++line_no;
        const std::string text = trim(line);
        if (text.empty() || text[0] == '#') continue;

        const auto eq = text.find('=');
        if (eq == std::string::npos)
            throw BadParams("config: line " + std::to_string(line_no) + " is not key = value");
        const std::string key = trim(text.substr(0, eq));
        const std::string value = trim(text.substr(eq + 1));

        if (key == "images") {
            config.images.clear();
            for (const std::string& item : split_list(value)) config.images.emplace_back(item);
        } else if (key == "colors") {
            config.colors.clear();
            for (const std::string& item : split_list(value)) {
                const std::uint64_t m = parse_uint(key, item);
                if (m < 2 || m > 256) throw BadParams("config: colors must be in [2, 256]");
                config.colors.push_back(std::size_t(m));
            }
        } else if (key == "strategies") {
            config.strategies.clear();
            for (const std::string& item : split_list(value))
                config.strategies.push_back(baselines::parse_strategy(item));
        } else if (key == "repetitions") {
            config.repetitions = std::size_t(parse_uint(key, value));
            if (config.repetitions < 1) throw BadParams("config: repetitions must be >= 1");
        } else if (key == "seed") {
            config.base_seed = parse_uint(key, value);
        } else if (key == "output") {
            config.output_dir = value;
        } else if (key == "scan") {
            config.scan_mode = parse_scan_mode(value);
        } else if (key == "ica.n_country") {
            config.ica_params.n_country = std::size_t(parse_uint(key, value));
        } else if (key == "ica.n_imp") {
            config.ica_params.n_imp = std::size_t(parse_uint(key, value));
        } else if (key == "ica.alpha") {
            config.ica_params.alpha = parse_real(key, value);
        } else if (key == "ica.attraction_prob") {
            config.ica_params.attraction_prob = parse_real(key, value);
        } else if (key == "ica.revolution_prob") {
            config.ica_params.revolution_prob = parse_real(key, value);
        } else if (key == "ica.max_iters") {
            config.ica_params.max_iters = std::size_t(parse_uint(key, value));
        } else if (key == "ica.stall_window") {
            config.ica_params.stall_window = std::size_t(parse_uint(key, value));
        } else {
            throw BadParams("config: unknown key: " + key);
        }
    }
    if (config.images.empty()) throw BadParams("config: no images listed");
    if (config.colors.empty()) throw BadParams("config: no color counts listed");
    if (config.strategies.empty()) throw BadParams("config: no strategies listed");
    config.ica_params.validate();
    return config;
}

ExperimentConfig parse_config_file(const std::filesystem::path& path) {
    std::ifstream in(path);
    if (!in) throw IoError("config: cannot open " + path.string());
    return parse_config(in);
}

namespace {

// Shared per-(image, colors) inputs, prepared once before the grid runs.
struct PreparedImage {
    IndexedImage indexed;
    CooccurrenceMatrix matrix;
    std::string error;  // set when loading or quantizing failed
};

struct Cell {
    std::size_t image_idx;
    std::size_t color_idx;
    baselines::Strategy strategy;
    std::uint64_t seed;
};

Permutation order_for(const Cell& cell, const PreparedImage& prepared,
                      const ExperimentConfig& config, std::size_t* iterations) {
    switch (cell.strategy) {
        case baselines::Strategy::identity:
            return baselines::identity_order(prepared.indexed);
        case baselines::Strategy::random: {
            Rng rng(cell.seed);
            return baselines::random_order(prepared.indexed, rng);
        }
        case baselines::Strategy::luminance:
            return baselines::luminance_order(prepared.indexed);
        case baselines::Strategy::greedy_chain:
            return baselines::greedy_chain_order(prepared.indexed);
        case baselines::Strategy::brute_force: {
            return baselines::brute_force_optimal(prepared.indexed, config.scan_mode).first;
        }
        case baselines::Strategy::ica: {
            ica::IcaParams params = config.ica_params;
            params.seed = cell.seed;
            ica::RunTrace trace = ica::optimize(prepared.matrix, params);
            *iterations = trace.iterations_run;
            return std::move(trace.best.genome);
        }
    }
    throw BadParams("bench: unhandled strategy");
}

}  // namespace

BenchResult run_bench(const ExperimentConfig& config) {
    config.ica_params.validate();

    // Load and quantize each (image, colors) pair up front; cells share the
    // prepared data read-only.
    std::vector<std::vector<PreparedImage>> prepared(config.images.size());
    for (std::size_t i = 0; i < config.images.size(); ++i) {
        prepared[i].resize(config.colors.size());
        RgbImage rgb;
        std::string load_error;
        try {
            rgb = load_ppm(config.images[i]);
        } catch (const std::exception& e) {
            load_error = e.what();
        }
        for (std::size_t c = 0; c < config.colors.size(); ++c) {
            PreparedImage& slot = prepared[i][c];
            if (!load_error.empty()) {
                slot.error = load_error;
                continue;
            }
            try {
                const std::size_t m = config.colors[c];
                slot.indexed = distinct_color_count(rgb) <= m ? extract_indexed(rgb)
                                                              : quantize_median_cut(rgb, m);
                slot.matrix = CooccurrenceMatrix::from_image(slot.indexed, config.scan_mode);
            } catch (const std::exception& e) {
                slot.error = e.what();
            }
        }
    }

    std::vector<Cell> cells;
    for (std::size_t i = 0; i < config.images.size(); ++i)
        for (std::size_t c = 0; c < config.colors.size(); ++c)
            for (const baselines::Strategy s : config.strategies)
                for (std::size_t r = 0; r < config.repetitions; ++r)
                    cells.push_back(Cell{i, c, s, config.base_seed + r});

    BenchResult result;
    result.rows.resize(cells.size());
    result.timings.resize(cells.size());

    const int workers = kernels::worker_count();
#ifdef _OPENMP
#pragma omp parallel for schedule(dynamic) num_threads(workers) if (workers > 1)
#endif
    for (std::int64_t k = 0; k < std::int64_t(cells.size()); ++k) {
        const Cell& cell = cells[std::size_t(k)];
        const PreparedImage& image = prepared[cell.image_idx][cell.color_idx];

        BenchRow row;
        row.image = config.images[cell.image_idx].stem().string();
        row.colors = config.colors[cell.color_idx];
        row.strategy = baselines::to_string(cell.strategy);
        row.seed = cell.seed;

        const auto start = std::chrono::steady_clock::now();
        if (!image.error.empty()) {
            row.error = sanitize(image.error);
        } else {
            try {
                std::size_t iterations = 0;
                const Permutation perm = order_for(cell, image, config, &iterations);
                row.cost = image.matrix.evaluate(perm);
                const codec::SizeReport report =
                    codec::size_report(image.indexed, perm, config.scan_mode);
                const ResidualSequence res =
                    residuals(scan(apply_permutation(image.indexed, perm), config.scan_mode));
                row.entropy = first_order_entropy(res);
                row.compressed_bits = report.compressed_bits;
                row.compression_rate = report.compression_rate;
                row.iterations = iterations;
            } catch (const std::exception& e) {
                row.error = sanitize(e.what());
            }
        }
        const auto elapsed = std::chrono::steady_clock::now() - start;

        result.rows[std::size_t(k)] = std::move(row);
        result.timings[std::size_t(k)] = TimingRow{
            result.rows[std::size_t(k)].image, result.rows[std::size_t(k)].colors,
            result.rows[std::size_t(k)].strategy, cell.seed,
            std::chrono::duration_cast<std::chrono::milliseconds>(elapsed).count()};
    }

    const auto row_key = [](const BenchRow& r) {
        return std::tie(r.image, r.colors, r.strategy, r.seed);
    };
    std::sort(result.rows.begin(), result.rows.end(),
              [&](const BenchRow& a, const BenchRow& b) { return row_key(a) < row_key(b); });
    const auto timing_key = [](const TimingRow& r) {
        return std::tie(r.image, r.colors, r.strategy, r.seed);
    };
    std::sort(result.timings.begin(), result.timings.end(),
              [&](const TimingRow& a, const TimingRow& b) { return timing_key(a) < timing_key(b); });

    for (const BenchRow& row : result.rows)
        if (!row.error.empty()) result.all_ok = false;

    // Per-(image, colors, strategy) aggregates over the seed axis.
    std::map<std::tuple<std::string, std::size_t, std::string>, std::vector<const BenchRow*>>
        groups;
    for (const BenchRow& row : result.rows)
        if (row.error.empty()) groups[{row.image, row.colors, row.strategy}].push_back(&row);
    for (const auto& [key, rows] : groups) {
        SummaryRow s;
        s.image = std::get<0>(key);
        s.colors = std::get<1>(key);
        s.strategy = std::get<2>(key);
        double cost_sum = 0.0;
        s.best_cost = rows.front()->cost;
        s.best_compression_rate = rows.front()->compression_rate;
        for (const BenchRow* row : rows) {
            cost_sum += double(row->cost);
            s.mean_entropy += row->entropy;
            s.mean_compression_rate += row->compression_rate;
            s.best_cost = std::min(s.best_cost, row->cost);
            s.best_compression_rate = std::max(s.best_compression_rate, row->compression_rate);
        }
        s.mean_cost = std::int64_t(std::llround(cost_sum / double(rows.size())));
        s.mean_entropy /= double(rows.size());
        s.mean_compression_rate /= double(rows.size());
        result.summary.push_back(std::move(s));
    }
    return result;
}

std::string to_csv(const std::vector<BenchRow>& rows) {
    std::string out = "image,colors,strategy,seed,cost,entropy,compressed_bits,"
                      "compression_rate,iterations,error\n";
    for (const BenchRow& r : rows) {
        out += r.image + ',' + std::to_string(r.colors) + ',' + r.strategy + ',' +
               std::to_string(r.seed) + ',' + std::to_string(r.cost) + ',' +
               format_real(r.entropy) + ',' + std::to_string(r.compressed_bits) + ',' +
               format_real(r.compression_rate) + ',' + std::to_string(r.iterations) + ',' +
               r.error + '\n';
    }
    return out;
}

std::string to_csv(const std::vector<SummaryRow>& rows) {
    std::string out = "image,colors,strategy,mean_cost,best_cost,mean_entropy,"
                      "mean_compression_rate,best_compression_rate\n";
    for (const SummaryRow& r : rows) {
        out += r.image + ',' + std::to_string(r.colors) + ',' + r.strategy + ',' +
               std::to_string(r.mean_cost) + ',' + std::to_string(r.best_cost) + ',' +
               format_real(r.mean_entropy) + ',' + format_real(r.mean_compression_rate) + ',' +
               format_real(r.best_compression_rate) + '\n';
    }
    return out;
}

std::string to_csv(const std::vector<TimingRow>& rows) {
    std::string out = "image,colors,strategy,seed,wall_ms\n";
    for (const TimingRow& r : rows) {
        out += r.image + ',' + std::to_string(r.colors) + ',' + r.strategy + ',' +
               std::to_string(r.seed) + ',' + std::to_string(r.wall_ms) + '\n';
    }
    return out;
}

void write_reports(const BenchResult& result, const std::filesystem::path& dir) {
    std::filesystem::create_directories(dir);
    const auto write = [&](const char* name, const std::string& content) {
        std::ofstream out(dir / name, std::ios::binary);
        if (!out) throw IoError(std::string("bench: cannot write ") + name);
        out << content;
    };
    write("bench.csv", to_csv(result.rows));
    write("summary.csv", to_csv(result.summary));
    write("timings.csv", to_csv(result.timings));
}

}  // namespace paletteforge::bench
