#include "paletteforge/codec.hpp"

#include <cstring>
#include <unordered_set>

#include <zlib.h>

#include "paletteforge/bitio.hpp"
#include "paletteforge/huffman.hpp"

namespace paletteforge::codec {

namespace {

std::uint32_t crc32_of(std::span<const std::uint8_t> bytes) {
    return std::uint32_t(::crc32(0UL, bytes.data(), uInt(bytes.size())));
}

void put_u16(std::vector<std::uint8_t>& out, std::uint16_t v) {
    out.push_back(std::uint8_t(v));
    out.push_back(std::uint8_t(v >> 8));
}

void put_u32(std::vector<std::uint8_t>& out, std::uint32_t v) {
    for (int i = 0; i < 4; ++i) out.push_back(std::uint8_t(v >> (8 * i)));
}

void put_u64(std::vector<std::uint8_t>& out, std::uint64_t v) {
    for (int i = 0; i < 8; ++i) out.push_back(std::uint8_t(v >> (8 * i)));
}

// Sequential little-endian reader with section-aware errors.
class Cursor {
public:
    Cursor(std::span<const std::uint8_t> bytes, const char* section)
        : bytes_(bytes), section_(section) {}

    void section(const char* name) { section_ = name; }
    std::size_t position() const { return pos_; }
    std::size_t remaining() const { return bytes_.size() - pos_; }

    std::uint8_t u8() {
        need(1);
        return bytes_[pos_++];
    }
    std::uint16_t u16() {
        need(2);
        const std::uint16_t v = std::uint16_t(bytes_[pos_]) | std::uint16_t(bytes_[pos_ + 1]) << 8;
        pos_ += 2;
        return v;
    }
    std::uint32_t u32() {
        need(4);
        std::uint32_t v = 0;
        for (int i = 0; i < 4; ++i) v |= std::uint32_t(bytes_[pos_ + std::size_t(i)]) << (8 * i);
        pos_ += 4;
        return v;
    }
    std::uint64_t u64() {
        need(8);
        std::uint64_t v = 0;
        for (int i = 0; i < 8; ++i) v |= std::uint64_t(bytes_[pos_ + std::size_t(i)]) << (8 * i);
        pos_ += 8;
        return v;
    }
    std::span<const std::uint8_t> take(std::size_t n) {
        need(n);
        auto out = bytes_.subspan(pos_, n);
        pos_ += n;
        return out;
    }

private:
    void need(std::size_t n) {
        if (remaining() < n)
            throw MalformedHeader(std::string(section_) + ": container ends early");
    }

    std::span<const std::uint8_t> bytes_;
    std::size_t pos_ = 0;
    const char* section_;
};

struct ParsedBlob {
    BlobHeader header;
    Palette palette;
    std::vector<std::uint8_t> code_lengths;
    std::uint8_t first_index = 0;
    std::uint64_t delta_count = 0;
    std::span<const std::uint8_t> payload;
};

// Structural parse and CRC check; payload bits stay undecoded.
ParsedBlob parse(std::span<const std::uint8_t> blob) {
    Cursor cur(blob, "header");

    const auto magic = cur.take(4);
    if (std::memcmp(magic.data(), kMagic, 4) != 0)
        throw MalformedHeader("header: bad magic");
    if (cur.u8() != kVersion) throw MalformedHeader("header: unsupported version");

    ParsedBlob parsed;
    parsed.header.width = cur.u32();
    parsed.header.height = cur.u32();
    parsed.header.palette_size = cur.u16();
    const std::uint8_t mode = cur.u8();
    if (mode > 1) throw MalformedHeader("header: unknown scan mode");
    parsed.header.scan_mode = ScanMode(mode);

    if (parsed.header.width == 0 || parsed.header.height == 0)
        throw MalformedHeader("header: zero image dimension");
    if (parsed.header.palette_size == 0 || parsed.header.palette_size > 256)
        throw MalformedHeader("header: palette size out of range");

    cur.section("palette");
    const auto palette_bytes = cur.take(std::size_t(parsed.header.palette_size) * 3);
    std::unordered_set<std::uint32_t> seen;
    for (std::size_t k = 0; k < parsed.header.palette_size; ++k) {
        const ColorTriple c{palette_bytes[3 * k], palette_bytes[3 * k + 1],
                            palette_bytes[3 * k + 2]};
        if (!seen.insert(pack_rgb(c)).second)
            throw MalformedHeader("palette: duplicate entry");
        parsed.palette.colors.push_back(c);
    }

    cur.section("code table");
    const std::uint16_t alphabet = cur.u16();
    if (alphabet > 2 * parsed.header.palette_size - 1)
        throw MalformedHeader("code table: alphabet larger than delta range");
    const auto length_bytes = cur.take(alphabet);
    parsed.code_lengths.assign(length_bytes.begin(), length_bytes.end());

    cur.section("payload");
    parsed.first_index = cur.u8();
    if (parsed.first_index >= parsed.header.palette_size)
        throw MalformedHeader("payload: first index out of palette range");
    parsed.delta_count = cur.u64();

    const std::uint64_t pixels =
        std::uint64_t(parsed.header.width) * std::uint64_t(parsed.header.height);
    if (parsed.delta_count != pixels - 1)
        throw MalformedHeader("payload: delta count does not match dimensions");

    if (cur.remaining() < 4) throw TruncatedPayload("payload: missing data before checksum");
    parsed.payload = cur.take(cur.remaining() - 4);
    if (parsed.delta_count > std::uint64_t(parsed.payload.size()) * 8)
        throw TruncatedPayload("payload: fewer bits than coded deltas");

    cur.section("checksum");
    const std::uint32_t stored = cur.u32();
    if (crc32_of(blob.first(blob.size() - 4)) != stored)
        throw CorruptChecksum("checksum: container CRC mismatch");
    return parsed;
}

}  // namespace

std::vector<std::uint8_t> encode(const IndexedImage& img, ScanMode mode) {
    if (img.pixel_count() == 0 || img.palette_size() == 0 || img.palette_size() > 256)
        throw BadParams("encode: empty image or palette size out of range");
    const ScanSequence seq = scan(img, mode);
    const ResidualSequence res = residuals(seq);

    std::uint32_t alphabet = 0;
    for (const std::int16_t d : res.deltas)
        alphabet = std::max(alphabet, delta_to_symbol(d) + 1);

    std::vector<std::uint64_t> freq(alphabet, 0);
    for (const std::int16_t d : res.deltas) ++freq[delta_to_symbol(d)];
    const CanonicalCode code = canonical_code(huffman_code_lengths(freq));

    std::vector<std::uint8_t> out;
    out.reserve(32 + img.palette_size() * 3 + res.deltas.size() / 2);
    out.insert(out.end(), kMagic, kMagic + 4);
    out.push_back(kVersion);
    put_u32(out, std::uint32_t(img.cols));
    put_u32(out, std::uint32_t(img.rows));
    put_u16(out, std::uint16_t(img.palette_size()));
    out.push_back(std::uint8_t(mode));
    for (const ColorTriple c : img.palette.colors) {
        out.push_back(c.r);
        out.push_back(c.g);
        out.push_back(c.b);
    }
    put_u16(out, std::uint16_t(alphabet));
    out.insert(out.end(), code.lengths.begin(), code.lengths.end());
    out.push_back(res.first);
    put_u64(out, res.deltas.size());

    BitWriter writer;
    for (const std::int16_t d : res.deltas) {
        const std::uint32_t s = delta_to_symbol(d);
        writer.put(code.codes[s], code.lengths[s]);
    }
    writer.align_to_byte();
    out.insert(out.end(), writer.bytes().begin(), writer.bytes().end());

    put_u32(out, crc32_of(out));
    return out;
}

IndexedImage decode(std::span<const std::uint8_t> blob) {
    const ParsedBlob parsed = parse(blob);
    const std::size_t m = parsed.header.palette_size;

    std::vector<std::uint8_t> values;
    values.reserve(parsed.delta_count + 1);
    int value = parsed.first_index;
    values.push_back(std::uint8_t(value));

    if (parsed.delta_count > 0) {
        const CanonicalDecoder decoder(parsed.code_lengths);
        BitReader reader(parsed.payload);
        for (std::uint64_t i = 0; i < parsed.delta_count; ++i) {
            value += symbol_to_delta(decoder.decode(reader));
            if (value < 0 || value >= int(m))
                throw CorruptPayload("payload: reconstructed index out of range");
            values.push_back(std::uint8_t(value));
        }
        const std::uint64_t used_bytes = (reader.bits_read() + 7) / 8;
        if (used_bytes != parsed.payload.size())
            throw MalformedHeader("payload: stored length does not match bit stream");
        if (reader.bits_available() > 0) {
            BitReader pad = reader;
            while (pad.bits_available() > 0)
                if (pad.read_bit() != 0)
                    throw CorruptPayload("payload: nonzero padding bits");
        }
    } else if (!parsed.payload.empty()) {
        throw MalformedHeader("payload: unexpected bytes after empty delta stream");
    }

    IndexedImage img;
    img.rows = parsed.header.height;
    img.cols = parsed.header.width;
    img.palette = parsed.palette;
    img.indices = unscan(values, img.rows, img.cols, parsed.header.scan_mode);
    return img;
}

BlobHeader peek_header(std::span<const std::uint8_t> blob) {
    Cursor cur(blob, "header");
    const auto magic = cur.take(4);
    if (std::memcmp(magic.data(), kMagic, 4) != 0)
        throw MalformedHeader("header: bad magic");
    if (cur.u8() != kVersion) throw MalformedHeader("header: unsupported version");
    BlobHeader header;
    header.width = cur.u32();
    header.height = cur.u32();
    header.palette_size = cur.u16();
    const std::uint8_t mode = cur.u8();
    if (mode > 1) throw MalformedHeader("header: unknown scan mode");
    header.scan_mode = ScanMode(mode);
    return header;
}

std::uint64_t payload_bits(std::span<const std::uint8_t> blob) {
    const ParsedBlob parsed = parse(blob);
    if (parsed.delta_count == 0) return 0;

    const CanonicalDecoder decoder(parsed.code_lengths);
    BitReader reader(parsed.payload);
    for (std::uint64_t i = 0; i < parsed.delta_count; ++i) decoder.decode(reader);
    return reader.bits_read();
}

SizeReport size_report(const IndexedImage& img, const Permutation& perm, ScanMode mode) {
    const IndexedImage permuted = apply_permutation(img, perm);
    const std::vector<std::uint8_t> blob = encode(permuted, mode);

    SizeReport report;
    report.raw_bits = 8 * std::uint64_t(img.pixel_count()) + 24 * std::uint64_t(img.palette_size());
    report.compressed_bits = 8 * std::uint64_t(blob.size());
    const ResidualSequence res = residuals(scan(permuted, mode));
    report.entropy_bound_bits =
        double(res.deltas.size()) * first_order_entropy(res) + 8.0;
    report.compression_rate =
        1.0 - double(report.compressed_bits) / double(report.raw_bits);
    return report;
}

}  // namespace paletteforge::codec
