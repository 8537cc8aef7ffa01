#pragma once

#include <cstdint>
#include <span>
#include <vector>

#include "paletteforge/bitio.hpp"

namespace paletteforge {

/// Optimal prefix-code lengths for the given symbol frequencies. Symbols
/// with zero frequency get length 0 (no code); a single-symbol alphabet
/// gets a 1-bit code. Heap ties break on node id, so the result is
/// deterministic.
std::vector<std::uint8_t> huffman_code_lengths(std::span<const std::uint64_t> freq);

/// Canonical code assignment: codes ordered by (length, symbol).
struct CanonicalCode {
    std::vector<std::uint8_t> lengths;
    std::vector<std::uint64_t> codes;
};

CanonicalCode canonical_code(std::vector<std::uint8_t> lengths);

/// Decoder for a canonical code built from lengths alone.
class CanonicalDecoder {
public:
    explicit CanonicalDecoder(std::span<const std::uint8_t> lengths);

    /// Reads one symbol. Throws CorruptPayload when the bit pattern matches
    /// no code, TruncatedPayload when bits run out.
    std::uint32_t decode(BitReader& reader) const;

    bool empty() const { return sorted_symbols_.empty(); }

private:
    // Per length L in [1, max]: first canonical code value and the offset of
    // that code's symbol in sorted_symbols_.
    std::vector<std::uint64_t> first_code_;
    std::vector<std::uint32_t> first_symbol_index_;
    std::vector<std::uint32_t> count_;
    std::vector<std::uint32_t> sorted_symbols_;
    unsigned max_length_ = 0;
};

}  // namespace paletteforge
