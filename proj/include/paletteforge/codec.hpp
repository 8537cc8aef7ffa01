#pragma once

#include <cstdint>
#include <span>
#include <vector>

#include "paletteforge/image.hpp"
#include "paletteforge/scan.hpp"

namespace paletteforge::codec {

// Container layout, all integers little-endian:
//   magic "PFZ1" | u8 version=1 | u32 width | u32 height | u16 M |
//   u8 scan mode (0=serpentine, 1=row-major) | 3M palette bytes |
//   u16 alphabet size | per-symbol u8 code lengths | u8 s_0 |
//   u64 delta count | prefix-coded deltas, zero-padded to a byte |
//   u32 CRC over everything before it.

inline constexpr char kMagic[4] = {'P', 'F', 'Z', '1'};
inline constexpr std::uint8_t kVersion = 1;

struct BlobHeader {
    std::uint32_t width = 0;
    std::uint32_t height = 0;
    std::uint16_t palette_size = 0;
    ScanMode scan_mode = ScanMode::serpentine;
};

/// Maps a signed delta to its interleaved symbol (0, -1, 1, -2, 2, ...).
constexpr std::uint32_t delta_to_symbol(std::int32_t d) {
    return d > 0 ? std::uint32_t(2 * d) : std::uint32_t(-2 * d) - (d < 0 ? 1 : 0);
}

constexpr std::int32_t symbol_to_delta(std::uint32_t s) {
    return (s & 1u) ? -std::int32_t((s + 1) / 2) : std::int32_t(s / 2);
}

std::vector<std::uint8_t> encode(const IndexedImage& img, ScanMode mode = ScanMode::serpentine);

/// Exact inverse of encode. Throws MalformedHeader, CorruptChecksum,
/// TruncatedPayload or CorruptPayload depending on the failing section.
IndexedImage decode(std::span<const std::uint8_t> blob);

/// Parses the fixed header fields without touching the payload.
BlobHeader peek_header(std::span<const std::uint8_t> blob);

/// Bits spent on the prefix-coded delta stream (before byte padding).
std::uint64_t payload_bits(std::span<const std::uint8_t> blob);

struct SizeReport {
    std::uint64_t raw_bits = 0;            // 8 per index + 24 per palette entry
    std::uint64_t compressed_bits = 0;     // whole container
    double entropy_bound_bits = 0.0;       // (mn-1) * H(deltas) + 8 for s_0
    double compression_rate = 0.0;         // 1 - compressed/raw
};

/// Encodes the image reindexed by `perm` and reports the sizes.
SizeReport size_report(const IndexedImage& img, const Permutation& perm,
                       ScanMode mode = ScanMode::serpentine);

}  // namespace paletteforge::codec
