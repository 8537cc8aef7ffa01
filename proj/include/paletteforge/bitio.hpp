#pragma once

#include <cstdint>
#include <span>
#include <vector>

#include "paletteforge/image.hpp"

namespace paletteforge {

/// MSB-first bit packer.
class BitWriter {
public:
    void put(std::uint64_t code, unsigned bits) {
        for (unsigned i = bits; i-- > 0;) put_bit(unsigned(code >> i) & 1u);
    }

    void put_bit(unsigned bit) {
        acc_ = std::uint8_t((acc_ << 1) | (bit & 1u));
        if (++filled_ == 8) {
            bytes_.push_back(acc_);
            acc_ = 0;
            filled_ = 0;
        }
        ++bit_count_;
    }

    /// Pads the last byte with zero bits.
    void align_to_byte() {
        while (filled_ != 0) put_bit(0);
        bit_count_ = (bit_count_ + 7) / 8 * 8;
    }

    std::uint64_t bit_count() const { return bit_count_; }
    const std::vector<std::uint8_t>& bytes() const { return bytes_; }

private:
    std::vector<std::uint8_t> bytes_;
    std::uint8_t acc_ = 0;
    unsigned filled_ = 0;
    std::uint64_t bit_count_ = 0;
};

/// MSB-first bit reader over a byte span. Throws TruncatedPayload on
/// overrun.
class BitReader {
public:
    explicit BitReader(std::span<const std::uint8_t> bytes) : bytes_(bytes) {}

    unsigned read_bit() {
        const std::uint64_t byte = pos_ >> 3;
        if (byte >= bytes_.size()) throw TruncatedPayload("payload: bit stream exhausted");
        const unsigned bit = (bytes_[byte] >> (7 - (pos_ & 7))) & 1u;
        ++pos_;
        return bit;
    }

    std::uint64_t bits_read() const { return pos_; }
    std::uint64_t bits_available() const { return std::uint64_t(bytes_.size()) * 8 - pos_; }

private:
    std::span<const std::uint8_t> bytes_;
    std::uint64_t pos_ = 0;
};

}  // namespace paletteforge
