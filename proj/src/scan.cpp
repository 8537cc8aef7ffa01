#include "paletteforge/scan.hpp"

#include <array>
#include <cmath>
#include <cstdlib>

namespace paletteforge {

std::string to_string(ScanMode mode) {
    return mode == ScanMode::serpentine ? "serpentine" : "rowmajor";
}

ScanMode parse_scan_mode(const std::string& name) {
    if (name == "serpentine") return ScanMode::serpentine;
    if (name == "rowmajor" || name == "row-major") return ScanMode::row_major;
    throw BadParams("unknown scan mode: " + name);
}

ScanSequence scan(const IndexedImage& img, ScanMode mode) {
    ScanSequence seq;
    seq.values.reserve(img.pixel_count());
    for (std::size_t r = 0; r < img.rows; ++r) {
        const std::uint8_t* row = img.indices.data() + r * img.cols;
        if (mode == ScanMode::serpentine && (r & 1)) {
            for (std::size_t c = img.cols; c-- > 0;) seq.values.push_back(row[c]);
        } else {
            seq.values.insert(seq.values.end(), row, row + img.cols);
        }
    }
    return seq;
}

ScanSequence serpentine_scan(const IndexedImage& img) {
    return scan(img, ScanMode::serpentine);
}

std::vector<std::uint8_t> unscan(const std::vector<std::uint8_t>& values, std::size_t rows,
                                 std::size_t cols, ScanMode mode) {
    std::vector<std::uint8_t> indices(values.size());
    std::size_t pos = 0;
    for (std::size_t r = 0; r < rows; ++r) {
        std::uint8_t* row = indices.data() + r * cols;
        if (mode == ScanMode::serpentine && (r & 1)) {
            for (std::size_t c = cols; c-- > 0;) row[c] = values[pos++];
        } else {
            for (std::size_t c = 0; c < cols; ++c) row[c] = values[pos++];
        }
    }
    return indices;
}

std::int64_t neighbor_cost(const ScanSequence& seq) {
    std::int64_t total = 0;
    for (std::size_t i = 1; i < seq.values.size(); ++i)
        total += std::abs(int(seq.values[i]) - int(seq.values[i - 1]));
    return total;
}

ResidualSequence residuals(const ScanSequence& seq) {
    ResidualSequence res;
    res.first = seq.values.empty() ? 0 : seq.values[0];
    if (seq.values.size() > 1) {
        res.deltas.reserve(seq.values.size() - 1);
        for (std::size_t i = 1; i < seq.values.size(); ++i)
            res.deltas.push_back(std::int16_t(int(seq.values[i]) - int(seq.values[i - 1])));
    }
    return res;
}

ScanSequence reconstruct(const ResidualSequence& res) {
    ScanSequence seq;
    seq.values.reserve(res.deltas.size() + 1);
    int value = res.first;
    seq.values.push_back(std::uint8_t(value));
    for (const std::int16_t d : res.deltas) {
        value += d;
        seq.values.push_back(std::uint8_t(value));
    }
    return seq;
}

double first_order_entropy(const ResidualSequence& res) {
    if (res.deltas.empty()) return 0.0;  // single-pixel image

    std::array<std::uint64_t, 511> histogram{};  // delta range [-255, 255]
    for (const std::int16_t d : res.deltas) ++histogram[std::size_t(d + 255)];

    const double n = double(res.deltas.size());
    double entropy = 0.0;
    for (const std::uint64_t count : histogram) {
        if (count == 0) continue;
        const double q = double(count) / n;
        entropy -= q * std::log2(q);
    }
    return entropy < 0.0 ? 0.0 : entropy;
}

}  // namespace paletteforge
