#pragma once

#include <compare>
#include <cstddef>
#include <cstdint>
#include <stdexcept>
#include <string>
#include <vector>

namespace paletteforge {

class Error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

class TooManyColors : public Error {
public:
    using Error::Error;
};
class LengthMismatch : public Error {
public:
    using Error::Error;
};
class BadParams : public Error {
public:
    using Error::Error;
};
class PaletteTooLarge : public Error {
public:
    using Error::Error;
};
class IoError : public Error {
public:
    using Error::Error;
};
class UnsupportedFormat : public Error {
public:
    using Error::Error;
};
class MalformedHeader : public Error {
public:
    using Error::Error;
};
class CorruptChecksum : public Error {
public:
    using Error::Error;
};
class TruncatedPayload : public Error {
public:
    using Error::Error;
};
class CorruptPayload : public Error {
public:
    using Error::Error;
};

/// One 8-bit RGB color.
struct ColorTriple {
    std::uint8_t r = 0;
    std::uint8_t g = 0;
    std::uint8_t b = 0;

    friend auto operator<=>(const ColorTriple&, const ColorTriple&) = default;
};

/// Packs a color into a single integer key (useful for hashing/sorting).
constexpr std::uint32_t pack_rgb(ColorTriple c) {
    return (std::uint32_t(c.r) << 16) | (std::uint32_t(c.g) << 8) | std::uint32_t(c.b);
}

constexpr ColorTriple unpack_rgb(std::uint32_t v) {
    return ColorTriple{std::uint8_t(v >> 16), std::uint8_t(v >> 8), std::uint8_t(v)};
}

/// Ordered color table. At most 256 entries, all distinct.
struct Palette {
    std::vector<ColorTriple> colors;

    std::size_t size() const { return colors.size(); }

    friend bool operator==(const Palette&, const Palette&) = default;
};

/// Plain RGB raster, row-major.
struct RgbImage {
    std::size_t rows = 0;
    std::size_t cols = 0;
    std::vector<ColorTriple> pixels;  // rows * cols

    ColorTriple at(std::size_t r, std::size_t c) const { return pixels[r * cols + c]; }
    ColorTriple& at(std::size_t r, std::size_t c) { return pixels[r * cols + c]; }
    std::size_t pixel_count() const { return rows * cols; }

    friend bool operator==(const RgbImage&, const RgbImage&) = default;
};

/// Palette-indexed raster: every pixel stores an index into `palette`.
struct IndexedImage {
    std::size_t rows = 0;
    std::size_t cols = 0;
    std::vector<std::uint8_t> indices;  // rows * cols, each < palette.size()
    Palette palette;

    std::uint8_t index(std::size_t r, std::size_t c) const { return indices[r * cols + c]; }
    std::size_t pixel_count() const { return rows * cols; }
    std::size_t palette_size() const { return palette.size(); }

    friend bool operator==(const IndexedImage&, const IndexedImage&) = default;
};

/// Bijection on palette indices: map[old_index] = new_index.
struct Permutation {
    std::vector<std::uint8_t> map;

    std::size_t size() const { return map.size(); }
    std::uint8_t operator[](std::size_t i) const { return map[i]; }

    static Permutation identity(std::size_t n);
    bool is_valid() const;

    friend auto operator<=>(const Permutation&, const Permutation&) = default;
};

Permutation inverse(const Permutation& p);

/// Number of distinct colors in an RGB raster.
std::size_t distinct_color_count(const RgbImage& img);

/// Builds the indexed representation of `img`. Palette order is first
/// appearance in row-major order. Throws TooManyColors above 256 colors.
IndexedImage extract_indexed(const RgbImage& img);

/// Expands indices back to RGB through the palette.
RgbImage render(const IndexedImage& img);

/// Reindexes the image: pixel indices are mapped through `perm` and palette
/// rows move to their new positions, so render() output is unchanged.
IndexedImage apply_permutation(const IndexedImage& img, const Permutation& perm);

/// Checks the IndexedImage invariants (index range, palette distinctness,
/// every palette entry referenced). Throws Error on violation.
void validate(const IndexedImage& img);

}  // namespace paletteforge
